//! Symbolic derivations (vector fields) on polynomial rings: Lie brackets,
//! local-nilpotency detection, exponential flows, the standard fields on the
//! coefficient space, their pushforwards through the balanced chart, and the
//! Danielewski-surface demonstration.

use crate::configspace::chart_blc_symbolic;
use crate::multipoly::MultiPoly;
use crate::scalar::Scalar;
use crate::unipoly::UniPoly;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DerivationError {
    #[error("derivation does not cover variable {0}")]
    UnknownVariable(String),
    #[error("derivation not nilpotent on {0} within {1} iterations")]
    NotNilpotent(String, usize),
}

/// A derivation of a polynomial ring, given by the images of the generators
/// and extended to all polynomials by linearity and the Leibniz rule.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    images: BTreeMap<String, MultiPoly>,
}

/// The verdict of the nilpotency check on one generator.
#[derive(Clone, Debug, PartialEq)]
pub enum NilpotencyReport {
    /// Every generator dies; the map gives the first vanishing power per generator.
    Nilpotent(BTreeMap<String, usize>),
    /// A generator x with ∂x = c·x, c ≠ 0 — a semisimple witness.
    EigenWitness { var: String, eigenvalue: Scalar },
    /// Some generator survived the iteration bound.
    Unresolved { var: String, bound: usize },
}

impl Derivation {
    pub fn new(images: BTreeMap<String, MultiPoly>) -> Self {
        Derivation { images }
    }

    pub fn vars(&self) -> impl Iterator<Item = &String> {
        self.images.keys()
    }

    pub fn image(&self, var: &str) -> Option<&MultiPoly> {
        self.images.get(var)
    }

    /// Apply by the Leibniz rule: ∂f = Σ_v (∂v) · ∂f/∂v.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (v, img) in &self.images {
            let pd = f.partial_derivative(v);
            if !pd.is_zero() {
                acc = acc.add(&img.mul(&pd));
            }
        }
        acc
    }

    /// Multiply every generator image by `f` (a replica when f ∈ ker ∂).
    pub fn replica(&self, f: &MultiPoly) -> Derivation {
        Derivation {
            images: self
                .images
                .iter()
                .map(|(v, img)| (v.clone(), img.mul(f)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Derivation {
        self.replica(&MultiPoly::constant(c.clone()))
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        let mut images = self.images.clone();
        for (v, img) in &other.images {
            let entry = images.entry(v.clone()).or_insert_with(MultiPoly::zero);
            *entry = entry.add(img);
        }
        Derivation { images }
    }

    /// The Lie bracket [∂₁, ∂₂], with images ∂₁(∂₂ v) − ∂₂(∂₁ v).
    pub fn bracket(&self, other: &Derivation) -> Derivation {
        let vars: std::collections::BTreeSet<String> = self
            .images
            .keys()
            .chain(other.images.keys())
            .cloned()
            .collect();
        let zero = MultiPoly::zero();
        let images = vars
            .into_iter()
            .map(|v| {
                let img1 = other.images.get(&v).unwrap_or(&zero);
                let img2 = self.images.get(&v).unwrap_or(&zero);
                (v, self.apply(img1).sub(&other.apply(img2)))
            })
            .collect();
        Derivation { images }
    }

    pub fn is_zero(&self) -> bool {
        self.images.values().all(MultiPoly::is_zero)
    }

    /// Iterate ∂ on each generator up to `bound` times. Reports per-generator
    /// nilpotency depth, or an eigenvector witness ∂x = c·x, or gives up.
    pub fn nilpotency(&self, bound: usize) -> NilpotencyReport {
        let mut depths = BTreeMap::new();
        for v in self.images.keys() {
            let x = MultiPoly::var(v);
            // Eigenvector detection on the generator itself.
            let img = &self.images[v];
            if !img.is_zero() {
                if let Some(q) = img.exact_div(&x) {
                    if let Some(c) = q.as_scalar() {
                        return NilpotencyReport::EigenWitness {
                            var: v.clone(),
                            eigenvalue: c,
                        };
                    }
                }
            }
            let mut cur = x;
            let mut depth = None;
            for k in 1..=bound {
                cur = self.apply(&cur);
                if cur.is_zero() {
                    depth = Some(k);
                    break;
                }
            }
            match depth {
                Some(k) => {
                    depths.insert(v.clone(), k);
                }
                None => {
                    return NilpotencyReport::Unresolved {
                        var: v.clone(),
                        bound,
                    }
                }
            }
        }
        NilpotencyReport::Nilpotent(depths)
    }

    /// The exponential flow exp(λ∂)f = Σ λᵏ ∂ᵏf / k! for a locally nilpotent
    /// derivation; λ may be any polynomial (a formal variable gives the exact
    /// one-parameter group).
    pub fn exp_flow(
        &self,
        lambda: &MultiPoly,
        f: &MultiPoly,
        bound: usize,
    ) -> Result<MultiPoly, DerivationError> {
        let mut acc = f.clone();
        let mut term = f.clone();
        let mut factorial = Scalar::one();
        let mut lampow = MultiPoly::one();
        for k in 1..=bound {
            term = self.apply(&term);
            if term.is_zero() {
                return Ok(acc);
            }
            factorial = factorial.mul(&Scalar::from_int(k as i64));
            lampow = lampow.mul(lambda);
            acc = acc.add(&lampow.mul(&term).scale(&factorial.inv()));
        }
        Err(DerivationError::NotNilpotent("exp_flow".into(), bound))
    }
}

fn zvar(i: usize) -> MultiPoly {
    MultiPoly::var(&format!("z{i}"))
}

/// The index-lowering field on the coefficient space:
/// z_i ↦ (n−i+1)·z_{i−1} with z₀ = 1.
pub fn d_tau(n: usize) -> Derivation {
    let images = (1..=n)
        .map(|i| {
            let prev = if i == 1 {
                MultiPoly::one()
            } else {
                zvar(i - 1)
            };
            (
                format!("z{i}"),
                prev.scale(&Scalar::from_int((n - i + 1) as i64)),
            )
        })
        .collect();
    Derivation::new(images)
}

/// The barycenter replica (−z₁/n)·∂_τ.
pub fn d_t(n: usize) -> Derivation {
    d_tau(n).replica(&zvar(1).scale(&Scalar::ratio(-1, n as i64)))
}

/// The Euler field Σ k·z_k ∂/∂z_k.
pub fn euler(n: usize) -> Derivation {
    let images = (1..=n)
        .map(|k| (format!("z{k}"), zvar(k).scale(&Scalar::from_int(k as i64))))
        .collect();
    Derivation::new(images)
}

/// The semisimple complement ∂_s = Σ k·z_k ∂/∂z_k − ∂_t.
pub fn d_s(n: usize) -> Derivation {
    euler(n).add(&d_t(n).scale(&Scalar::from_int(-1)))
}

/// The balanced coefficients w₂,…,w_n as polynomials in z₁,…,z_n: the
/// non-leading coefficients of P(λ + bc) with bc = −z₁/n (the first one,
/// which is identically zero, is dropped).
pub fn balanced_coeffs_symbolic(n: usize) -> Vec<MultiPoly> {
    let tail: Vec<MultiPoly> = (1..=n).map(zvar).collect();
    let p = UniPoly::monic_from_descending("lambda", &tail);
    let bc = zvar(1).scale(&Scalar::ratio(-1, n as i64));
    p.shift(&bc).descending_tail()[1..].to_vec()
}

/// The generators of the Lie algebra in the normalization where the bracket
/// relations close: the flow generators of translation, barycenter scaling,
/// and balanced scaling. In the chart these are ∂/∂y, y·∂/∂y, and
/// Σ_j j·w_j ∂/∂w_j; in the z-coordinates they are −∂_τ, −∂_t, and
/// Σ_k k·z_k ∂/∂z_k + ∂_t (the coordinate formulas of [`d_tau`], [`d_t`],
/// [`d_s`] generate the opposite flows — the global sign ε of
/// [`chart_pushforward_check`]).
pub fn lie_generators(n: usize) -> (Derivation, Derivation, Derivation) {
    let neg = Scalar::from_int(-1);
    let tau = d_tau(n).scale(&neg);
    let t = d_t(n).scale(&neg);
    let s = euler(n).add(&d_t(n));
    (tau, t, s)
}

/// Check the bracket relations [∂_s, ∂_t] = 0, [∂_s, b∂_τ] = (∂_s b)∂_τ, and
/// [b∂_τ, ∂_t] = b∂_τ with b running over all balanced-coefficient monomials
/// of weight ≤ `max_weight` (w_j has weight j), pulled back to z-coordinates.
pub fn lie_relations_check(n: usize, max_weight: u32) -> bool {
    let (tau, t, s) = lie_generators(n);
    if !s.bracket(&t).is_zero() {
        return false;
    }
    let w = balanced_coeffs_symbolic(n);
    for exps in weighted_monomials(n, max_weight) {
        let mut b = MultiPoly::one();
        for (i, &e) in exps.iter().enumerate() {
            b = b.mul(&w[i].pow(e));
        }
        let b_tau = tau.replica(&b);
        let lhs = s.bracket(&b_tau);
        let rhs = tau.replica(&s.apply(&b));
        if !lhs.add(&rhs.scale(&Scalar::from_int(-1))).is_zero() {
            return false;
        }
        let lhs = b_tau.bracket(&t);
        if !lhs.add(&b_tau.scale(&Scalar::from_int(-1))).is_zero() {
            return false;
        }
    }
    true
}

/// All exponent vectors (e₂,…,e_n) with Σ j·e_j ≤ max_weight.
fn weighted_monomials(n: usize, max_weight: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; n - 1]];
    for j in 2..=n {
        let mut next = Vec::new();
        for base in &out {
            let used: u32 = base
                .iter()
                .enumerate()
                .map(|(i, &e)| (i as u32 + 2) * e)
                .sum();
            let mut e = 0;
            while used + e * j as u32 <= max_weight {
                let mut v = base.clone();
                v[j - 2] = e;
                next.push(v);
                e += 1;
            }
        }
        out = next;
    }
    out
}

/// Check that the exponential flow of ∂_τ with a formal parameter ζ realizes
/// the root shift: exp(ζ∂_τ)(z_k) equals the k-th coefficient of P(λ + ζ)
/// (the flow moves every root by −ζ; the geometric generator −∂_τ moves them
/// by +ζ).
pub fn flow_shift_check(n: usize) -> Result<bool, DerivationError> {
    let zeta = MultiPoly::var("zeta");
    let tau = d_tau(n);
    let tail: Vec<MultiPoly> = (1..=n).map(zvar).collect();
    let shifted = UniPoly::monic_from_descending("lambda", &tail)
        .shift(&zeta)
        .descending_tail();
    for k in 1..=n {
        let flowed = tau.exp_flow(&zeta, &zvar(k), 2 * n + 2)?;
        if flowed != shifted[k - 1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The symbolic discriminant d_n of λⁿ + z₁λⁿ⁻¹ + … + z_n.
pub fn disc_symbolic(n: usize) -> MultiPoly {
    let tail: Vec<MultiPoly> = (1..=n).map(zvar).collect();
    let f = UniPoly::monic_from_descending("lambda", &tail);
    crate::unipoly::discriminant(&f).expect("monic by construction")
}

/// The outcome of matching a coefficient-space field against a chart-side
/// field through the balanced chart z = z(w, y).
#[derive(Clone, Debug, PartialEq)]
pub struct ChartReport {
    /// The single global sign ε such that (∂_τ z_k)∘chart = ε·∂/∂y(z_k∘chart)
    /// and (∂_t z_k)∘chart = ε·y·∂/∂y(z_k∘chart) for all k.
    pub epsilon: i64,
    /// Whether ∂_s matches the weighted field Σ j·w_j ∂/∂w_j + (1−ε)·y·∂/∂y.
    pub s_matches: bool,
}

/// Determine the chart-side form of the three standard fields. The check is a
/// symbolic polynomial identity in ℚ[w₂,…,w_n, y] for each coefficient z_k.
pub fn chart_pushforward_check(n: usize) -> Result<ChartReport, DerivationError> {
    let chart = chart_blc_symbolic(n);
    let subs: BTreeMap<String, MultiPoly> = (1..=n)
        .map(|k| (format!("z{k}"), chart[k - 1].clone()))
        .collect();
    let through = |field: &Derivation, k: usize| -> MultiPoly {
        field
            .image(&format!("z{k}"))
            .expect("standard field covers z_k")
            .substitute_all(&subs)
    };

    let dy = |p: &MultiPoly| p.partial_derivative("y");
    let tau = d_tau(n);
    let t = d_t(n);

    let mut epsilon = None;
    for eps in [1i64, -1] {
        let e = Scalar::from_int(eps);
        let ok = (1..=n).all(|k| {
            through(&tau, k) == dy(&chart[k - 1]).scale(&e)
                && through(&t, k) == dy(&chart[k - 1]).mul(&MultiPoly::var("y")).scale(&e)
        });
        if ok {
            epsilon = Some(eps);
            break;
        }
    }
    let Some(eps) = epsilon else {
        return Err(DerivationError::NotNilpotent(
            "no consistent chart sign".into(),
            0,
        ));
    };

    // Chart-side candidate for ∂_s: the weighted Euler field on w plus
    // (1 − ε)·y ∂/∂y.
    let s = d_s(n);
    let s_matches = (1..=n).all(|k| {
        let lhs = through(&s, k);
        let mut rhs = dy(&chart[k - 1])
            .mul(&MultiPoly::var("y"))
            .scale(&Scalar::from_int(1 - eps));
        for j in 2..=n {
            let wj = format!("w{j}");
            rhs = rhs.add(
                &chart[k - 1]
                    .partial_derivative(&wj)
                    .mul(&MultiPoly::var(&wj))
                    .scale(&Scalar::from_int(j as i64)),
            );
        }
        lhs == rhs
    });
    Ok(ChartReport {
        epsilon: eps,
        s_matches,
    })
}

/// The outcome of the Danielewski-surface demonstration.
#[derive(Clone, Debug, PartialEq)]
pub struct DanielewskiReport {
    /// ∂(xⁿy − z² + 1) = 0 for ∂ = 2z ∂/∂y + xⁿ ∂/∂z.
    pub kills_surface: bool,
    /// exp(u∂) maps the surface polynomial to itself symbolically.
    pub preserves_surface: bool,
    /// The image of (x,y,z,u) = (0,0,1,1) under the flow.
    pub moved_point: Vec<Scalar>,
}

/// Verify the explicit unipotent flow on the surface xⁿy − z² + 1 = 0.
pub fn danielewski_demo(n: u32) -> DanielewskiReport {
    let (x, y, z, u) = (
        MultiPoly::var("x"),
        MultiPoly::var("y"),
        MultiPoly::var("z"),
        MultiPoly::var("u"),
    );
    let surface = x.pow(n).mul(&y).sub(&z.pow(2)).add(&MultiPoly::one());
    let d = Derivation::new(BTreeMap::from([
        ("x".to_string(), MultiPoly::zero()),
        ("y".to_string(), z.scale(&Scalar::from_int(2))),
        ("z".to_string(), x.pow(n)),
        ("u".to_string(), MultiPoly::zero()),
    ]));
    let kills_surface = d.apply(&surface).is_zero();
    let flowed = d
        .exp_flow(&u, &surface, 8)
        .expect("the flow terminates: the derivation is locally nilpotent");
    let preserves_surface = flowed == surface;
    let env = BTreeMap::from([
        ("x".to_string(), Scalar::zero()),
        ("y".to_string(), Scalar::zero()),
        ("z".to_string(), Scalar::one()),
        ("u".to_string(), Scalar::one()),
    ]);
    let moved_point = ["x", "y", "z", "u"]
        .iter()
        .map(|v| {
            d.exp_flow(&u, &MultiPoly::var(v), 8)
                .expect("locally nilpotent")
                .eval(&env)
        })
        .collect();
    DanielewskiReport {
        kills_surface,
        preserves_surface,
        moved_point,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_field_images() {
        // n = 3: z1 ↦ 3, z2 ↦ 2z1, z3 ↦ z2.
        let tau = d_tau(3);
        assert_eq!(tau.image("z1").unwrap(), &MultiPoly::from_int(3));
        assert_eq!(
            tau.image("z2").unwrap(),
            &zvar(1).scale(&Scalar::from_int(2))
        );
        assert_eq!(tau.image("z3").unwrap(), &zvar(2));
    }

    #[test]
    fn tau_and_t_annihilate_the_discriminant() {
        for n in 2..=4 {
            let d = disc_symbolic(n);
            assert!(d_tau(n).apply(&d).is_zero(), "d_tau d_{n} != 0");
            assert!(d_t(n).apply(&d).is_zero(), "d_t d_{n} != 0");
        }
    }

    #[test]
    fn degree_three_discriminant_is_the_classical_one() {
        // 18 z1 z2 z3 − 4 z1³z3 + z1²z2² − 4 z2³ − 27 z3².
        let expect = zvar(1)
            .mul(&zvar(2))
            .mul(&zvar(3))
            .scale(&Scalar::from_int(18))
            .sub(&zvar(1).pow(3).mul(&zvar(3)).scale(&Scalar::from_int(4)))
            .add(&zvar(1).pow(2).mul(&zvar(2).pow(2)))
            .sub(&zvar(2).pow(3).scale(&Scalar::from_int(4)))
            .sub(&zvar(3).pow(2).scale(&Scalar::from_int(27)));
        assert_eq!(disc_symbolic(3), expect);
    }

    #[test]
    fn nilpotency_and_eigen_witness() {
        // The index-lowering field kills z_k after k+1 steps... in fact after
        // exactly k steps z_k reaches a constant, one more step kills it.
        match d_tau(4).nilpotency(10) {
            NilpotencyReport::Nilpotent(depths) => {
                for k in 1..=4 {
                    assert_eq!(depths[&format!("z{k}")], k + 1);
                }
            }
            other => panic!("expected nilpotent, got {other:?}"),
        }
        // ∂_t z1 = −z1 is an eigenvector witness.
        match d_t(3).nilpotency(10) {
            NilpotencyReport::EigenWitness { var, eigenvalue } => {
                assert_eq!(var, "z1");
                assert_eq!(eigenvalue, Scalar::from_int(-1));
            }
            other => panic!("expected eigen witness, got {other:?}"),
        }
    }

    #[test]
    fn flow_on_degree_two() {
        // exp(ζ∂_τ) for n = 2: z1 ↦ z1 + 2ζ, z2 ↦ z2 + ζz1 + ζ².
        let tau = d_tau(2);
        let zeta = MultiPoly::var("zeta");
        let f1 = tau.exp_flow(&zeta, &zvar(1), 8).unwrap();
        assert_eq!(f1, zvar(1).add(&zeta.scale(&Scalar::from_int(2))));
        let f2 = tau.exp_flow(&zeta, &zvar(2), 8).unwrap();
        assert_eq!(f2, zvar(2).add(&zeta.mul(&zvar(1))).add(&zeta.pow(2)));
    }

    #[test]
    fn bracket_relations_small() {
        assert!(lie_relations_check(2, 4));
        assert!(lie_relations_check(3, 4));
    }

    #[test]
    fn flow_realizes_root_shift() {
        for n in 2..=4 {
            assert!(flow_shift_check(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn euler_decomposition() {
        for n in 2..=4 {
            assert_eq!(d_s(n).add(&d_t(n)), euler(n));
        }
    }

    #[test]
    fn chart_sign_is_negative() {
        for n in 2..=4 {
            let report = chart_pushforward_check(n).unwrap();
            assert_eq!(report.epsilon, -1);
            assert!(report.s_matches);
        }
    }

    #[test]
    fn danielewski_example() {
        let report = danielewski_demo(1);
        assert!(report.kills_surface);
        assert!(report.preserves_surface);
        assert_eq!(
            report.moved_point,
            vec![
                Scalar::zero(),
                Scalar::from_int(2),
                Scalar::one(),
                Scalar::one()
            ]
        );
    }
}

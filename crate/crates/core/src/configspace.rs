//! Configurations of points in ℂ, the Vieta correspondence, barycenter and
//! balanced charts, discriminant-level membership, and the explicit chart
//! isomorphisms, involutions, and the Möbius model of the S(n+2)-action.
//!
//! A configuration is a finite multiset {q₁,…,q_n} ⊂ ℂ, represented as a
//! vector of scalars. Ordered operations act on the vector as a tuple;
//! unordered comparisons go through [`same_multiset`].

use crate::multipoly::MultiPoly;
use crate::scalar::{Cplx, Scalar};
use crate::unipoly::{self, UniPoly};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("operation requires all points distinct")]
    RepeatedPoint,
    #[error("operation requires all points nonzero")]
    ZeroPoint,
    #[error("point is not on the required space: {0}")]
    Membership(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

/// The spaces whose membership is decidable from the coefficient vector:
/// configurations with distinct points (nonzero discriminant), the
/// discriminant level one surface, the discriminant zero locus, their
/// balanced (barycenter zero) slices, and configurations avoiding the origin.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceTag {
    Cn,
    Sigma,
    Sc,
    CnBlc,
    SigmaBlc,
    ScBlc,
    CnCstar,
}

/// z_i = (−1)^i σ_i(Q): the coefficient vector (z₁,…,z_n) of ∏(λ − qᵢ).
pub fn vieta_map(points: &[Scalar]) -> Vec<Scalar> {
    // Incrementally multiply the monic coefficient vector (ascending) by (λ − q).
    let mut coeffs: Vec<Scalar> = vec![Scalar::one()];
    for q in points {
        let mut next = vec![Scalar::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            // c·λ^k · λ  and  c·λ^k · (−q)
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].sub(&c.mul(q));
        }
        coeffs = next;
    }
    // coeffs is ascending: z_i is the coefficient of λ^{n−i}.
    let n = points.len();
    (1..=n).map(|i| coeffs[n - i].clone()).collect()
}

/// The monic polynomial λⁿ + z₁λⁿ⁻¹ + … + z_n as a univariate value.
pub fn monic_from_coeffs(z: &[Scalar]) -> UniPoly {
    let tail: Vec<MultiPoly> = z.iter().cloned().map(MultiPoly::constant).collect();
    UniPoly::monic_from_descending("lambda", &tail)
}

/// D_n(Q) = ∏_{i<j}(qᵢ − qⱼ)².
pub fn disc_config(points: &[Scalar]) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = points[i].sub(&points[j]);
            acc = acc.mul(&d).mul(&d);
        }
    }
    acc
}

/// The discriminant d_n evaluated on a coefficient vector.
pub fn disc_coeffs(z: &[Scalar]) -> Scalar {
    unipoly::discriminant(&monic_from_coeffs(z))
        .expect("monic by construction")
        .as_scalar()
        .expect("scalar coefficients give a scalar discriminant")
}

/// bc(Q) = (1/n)Σq = −z₁/n, and the balanced representative Q° = Q − bc.
pub fn barycenter_project(points: &[Scalar]) -> (Scalar, Vec<Scalar>) {
    let n = points.len() as i64;
    let sum = points.iter().fold(Scalar::zero(), |a, q| a.add(q));
    let bc = sum.div(&Scalar::from_int(n));
    let balanced = points.iter().map(|q| q.sub(&bc)).collect();
    (bc, balanced)
}

/// Shift every point by the same scalar.
pub fn shift_all(points: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    points.iter().map(|q| q.add(c)).collect()
}

/// Scale every point by the same scalar.
pub fn scale_all(points: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    points.iter().map(|q| q.mul(c)).collect()
}

/// Multiset equality: exact matching on exact scalars, greedy minimal-distance
/// matching within `tol` otherwise.
pub fn same_multiset(a: &[Scalar], b: &[Scalar], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut unused: Vec<&Scalar> = b.iter().collect();
    for x in a {
        let best = unused
            .iter()
            .enumerate()
            .min_by(|(_, p), (_, q)| x.dist(p).total_cmp(&x.dist(q)));
        match best {
            Some((i, y)) if x.close(y, tol) => {
                unused.remove(i);
            }
            _ => return false,
        }
    }
    true
}

/// All roots of the monic polynomial with coefficient vector z, as floats.
pub fn roots_numeric(z: &[Scalar], tol: f64) -> Result<Vec<Cplx>, unipoly::UniPolyError> {
    let n = z.len();
    let mut ascending: Vec<Cplx> = (0..n).map(|k| z[n - 1 - k].to_cplx()).collect();
    ascending.push(Cplx::ONE);
    unipoly::roots(&ascending, tol)
}

/// Forward balanced chart: from (w₂,…,w_n; y) to the coefficient vector of
/// P_blc(λ − y), where P_blc(μ) = μⁿ + w₂μⁿ⁻² + … + w_n.
pub fn chart_blc(w: &[Scalar], y: &Scalar) -> Vec<Scalar> {
    let mut tail: Vec<MultiPoly> = vec![MultiPoly::zero()];
    tail.extend(w.iter().cloned().map(MultiPoly::constant));
    let p = UniPoly::monic_from_descending("lambda", &tail);
    let shifted = p.shift(&MultiPoly::constant(y.neg()));
    shifted
        .descending_tail()
        .into_iter()
        .map(|c| c.as_scalar().expect("scalar input gives scalar output"))
        .collect()
}

/// Inverse balanced chart: y = −z₁/n and (w₂,…,w_n) = the coefficients of
/// P(λ + y), whose λⁿ⁻¹ coefficient vanishes.
pub fn chart_blc_inv(z: &[Scalar]) -> (Vec<Scalar>, Scalar) {
    let n = z.len() as i64;
    let y = z[0].neg().div(&Scalar::from_int(n));
    let p = monic_from_coeffs(z);
    let shifted = p.shift(&MultiPoly::constant(y.clone()));
    let tail = shifted.descending_tail();
    debug_assert!(tail[0].is_zero(), "balanced shift must kill z1");
    let w = tail[1..]
        .iter()
        .map(|c| c.as_scalar().expect("scalar input gives scalar output"))
        .collect();
    (w, y)
}

/// The chart expressed symbolically: z_k as polynomials in w₂,…,w_n and y.
pub fn chart_blc_symbolic(n: usize) -> Vec<MultiPoly> {
    let mut tail: Vec<MultiPoly> = vec![MultiPoly::zero()];
    for j in 2..=n {
        tail.push(MultiPoly::var(&format!("w{j}")));
    }
    let p = UniPoly::monic_from_descending("lambda", &tail);
    p.shift(&MultiPoly::var("y").neg()).descending_tail()
}

/// Membership of a coefficient vector in one of the tagged spaces. Exact
/// verdicts on exact input; tolerance comparison when floats are involved.
pub fn membership(z: &[Scalar], tag: SpaceTag, tol: f64) -> bool {
    let d = disc_coeffs(z);
    let exact = z.iter().all(Scalar::is_exact);
    let is = |s: &Scalar, v: i64| {
        if exact {
            *s == Scalar::from_int(v)
        } else {
            s.close(&Scalar::from_int(v), tol)
        }
    };
    let nonzero = |s: &Scalar| {
        if exact {
            !s.is_zero()
        } else {
            s.to_cplx().abs() > tol
        }
    };
    let balanced = is(&z[0], 0);
    match tag {
        SpaceTag::Cn => nonzero(&d),
        SpaceTag::Sigma => is(&d, 0),
        SpaceTag::Sc => is(&d, 1),
        SpaceTag::CnBlc => nonzero(&d) && balanced,
        SpaceTag::SigmaBlc => is(&d, 0) && balanced,
        SpaceTag::ScBlc => is(&d, 1) && balanced,
        SpaceTag::CnCstar => nonzero(&d) && nonzero(&z[z.len() - 1]),
    }
}

/// h_n(Q) = D_n(Q) / (q₁·…·q_n)^{n−1}; invariant under Q ↦ cQ and Q ↦ Q⁻¹.
pub fn h_n(points: &[Scalar]) -> Result<Scalar, ConfigError> {
    if points.iter().any(Scalar::is_zero) {
        return Err(ConfigError::ZeroPoint);
    }
    let d = disc_config(points);
    if d.is_zero() {
        return Err(ConfigError::RepeatedPoint);
    }
    let prod = points.iter().fold(Scalar::one(), |a, q| a.mul(q));
    let n = points.len() as i64;
    Ok(d.div(&prod.pow(n - 1)))
}

/// φ: a balanced configuration {q₁,…,q_{n−2}, u, u} with exactly one doubled
/// point u = −½Σqᵢ maps to {q₁−u, …, q_{n−2}−u}, a configuration of n−2
/// distinct nonzero points.
pub fn sigma_blc_phi(points: &[Scalar]) -> Result<Vec<Scalar>, ConfigError> {
    let n = points.len();
    // Locate the doubled point.
    let mut pair: Option<(usize, usize)> = None;
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                if pair.is_some() {
                    return Err(ConfigError::Degenerate("more than one repetition".into()));
                }
                pair = Some((i, j));
            }
        }
    }
    let (i, j) = pair.ok_or(ConfigError::Membership("no repeated point".into()))?;
    let u = points[i].clone();
    let rest: Vec<Scalar> = points
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i && *k != j)
        .map(|(_, q)| q.clone())
        .collect();
    let sum = rest.iter().fold(Scalar::zero(), |a, q| a.add(q));
    if u.mul(&Scalar::from_int(-2)) != sum {
        return Err(ConfigError::Membership("barycenter is not zero".into()));
    }
    let out: Vec<Scalar> = rest.iter().map(|q| q.sub(&u)).collect();
    if out.iter().any(Scalar::is_zero) {
        return Err(ConfigError::ZeroPoint);
    }
    Ok(out)
}

/// ψ, the inverse of φ: from n−2 points q′ᵢ build v = −(1/n)Σq′ᵢ and return
/// {q′₁+v, …, q′_{n−2}+v, v, v}.
pub fn sigma_blc_psi(points: &[Scalar]) -> Vec<Scalar> {
    let n = (points.len() + 2) as i64;
    let sum = points.iter().fold(Scalar::zero(), |a, q| a.add(q));
    let v = sum.neg().div(&Scalar::from_int(n));
    let mut out: Vec<Scalar> = points.iter().map(|q| q.add(&v)).collect();
    out.push(v.clone());
    out.push(v);
    out
}

/// η: an ordered configuration of nonzero points maps to the ratios
/// (q₁/q_n, …, q_{n−1}/q_n) together with q_n; equivariant under scaling.
pub fn eta(points: &[Scalar]) -> Result<(Vec<Scalar>, Scalar), ConfigError> {
    if points.iter().any(Scalar::is_zero) {
        return Err(ConfigError::ZeroPoint);
    }
    let last = points.last().unwrap().clone();
    let ratios = points[..points.len() - 1]
        .iter()
        .map(|q| q.div(&last))
        .collect();
    Ok((ratios, last))
}

pub fn eta_inv(ratios: &[Scalar], y: &Scalar) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = ratios.iter().map(|q| q.mul(y)).collect();
    out.push(y.clone());
    out
}

/// φ̃: append the rescaled barycenter as a new point, producing a balanced
/// ordered configuration of n+1 points.
pub fn phi_tilde(points: &[Scalar]) -> Vec<Scalar> {
    let n = points.len() as i64;
    let (bc, _) = barycenter_project(points);
    let c = bc
        .mul(&Scalar::from_int(n))
        .div(&Scalar::from_int(n + 1))
        .neg();
    let mut out = shift_all(points, &c);
    out.push(c);
    out
}

/// The inverse of φ̃: subtract the last point from the others.
pub fn phi_tilde_inv(points: &[Scalar]) -> Vec<Scalar> {
    let last = points.last().unwrap();
    points[..points.len() - 1]
        .iter()
        .map(|q| q.sub(last))
        .collect()
}

/// The involutions of ordered configurations of nonzero points, and the
/// coefficient-plane involution `U`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// Q ↦ Q⁻¹, pointwise inversion.
    Iota,
    /// Q ↦ q_n⁻²·Q.
    TauInv,
    /// The commuting product of the previous two.
    Upsilon,
    /// Q ↦ (q_{n−1}⁻¹q_n) · (Q with the last two slots swapped).
    SigmaPrime,
    /// Q ↦ (q₁−q_n, …, q_{n−1}−q_n, −q_n).
    Rho,
}

pub fn involution(points: &[Scalar], which: Involution) -> Result<Vec<Scalar>, ConfigError> {
    let n = points.len();
    match which {
        Involution::Iota => {
            if points.iter().any(Scalar::is_zero) {
                return Err(ConfigError::ZeroPoint);
            }
            Ok(points.iter().map(Scalar::inv).collect())
        }
        Involution::TauInv => {
            let qn = points.last().unwrap();
            if qn.is_zero() {
                return Err(ConfigError::ZeroPoint);
            }
            Ok(scale_all(points, &qn.pow(-2)))
        }
        Involution::Upsilon => {
            involution(&involution(points, Involution::Iota)?, Involution::TauInv)
        }
        Involution::SigmaPrime => {
            if n < 2 {
                return Err(ConfigError::Degenerate("need at least two points".into()));
            }
            let c = points[n - 1].div(&points[n - 2]);
            let mut swapped = points.to_vec();
            swapped.swap(n - 2, n - 1);
            Ok(scale_all(&swapped, &c))
        }
        Involution::Rho => {
            let qn = points.last().unwrap().clone();
            let mut out: Vec<Scalar> = points[..n - 1].iter().map(|q| q.sub(&qn)).collect();
            out.push(qn.neg());
            Ok(out)
        }
    }
}

/// U: (z₁, z₂) ↦ (z₁, z₁²/4 − z₂); an involution of the coefficient plane
/// fixing (4, 2) and swapping the curves {z₂ = 0} and {z₁² − 4z₂ = 0}.
pub fn u_involution(z1: &Scalar, z2: &Scalar) -> (Scalar, Scalar) {
    let z2_new = z1.mul(z1).div(&Scalar::from_int(4)).sub(z2);
    (z1.clone(), z2_new)
}

/// A point of the projective line over the scalar tower.
#[derive(Clone, Debug, PartialEq)]
pub enum PPoint {
    Finite(Scalar),
    Inf,
}

impl PPoint {
    fn homogeneous(&self) -> (Scalar, Scalar) {
        match self {
            PPoint::Finite(s) => (s.clone(), Scalar::one()),
            PPoint::Inf => (Scalar::one(), Scalar::zero()),
        }
    }
}

/// The action of a permutation of n+2 slots on ordered configurations of n−1
/// points avoiding {0, 1}: extend with (0, 1, ∞), permute the slots, and
/// renormalize by the Möbius map sending the last three slots back to
/// (0, 1, ∞). `perm` lists the 1-based images: slot i goes to slot perm[i−1].
pub fn mobius_action(perm: &[usize], q: &[Scalar]) -> Result<Vec<Scalar>, ConfigError> {
    let total = q.len() + 3;
    assert_eq!(perm.len(), total, "permutation degree must be n+2");
    let mut slots: Vec<PPoint> = q.iter().cloned().map(PPoint::Finite).collect();
    slots.push(PPoint::Finite(Scalar::zero()));
    slots.push(PPoint::Finite(Scalar::one()));
    slots.push(PPoint::Inf);

    let mut permuted: Vec<PPoint> = vec![PPoint::Inf; total];
    for (i, p) in slots.into_iter().enumerate() {
        permuted[perm[i] - 1] = p;
    }

    // The Möbius map with a ↦ 0, b ↦ 1, c ↦ ∞ in homogeneous coordinates:
    // M(z) = L_a(z)·L_c(b) / (L_c(z)·L_a(b)) with L_p(z) = p_y·z_x − p_x·z_y.
    let a = permuted[total - 3].homogeneous();
    let b = permuted[total - 2].homogeneous();
    let c = permuted[total - 1].homogeneous();
    let lform = |p: &(Scalar, Scalar), z: &(Scalar, Scalar)| p.1.mul(&z.0).sub(&p.0.mul(&z.1));
    let kn = lform(&c, &b);
    let kd = lform(&a, &b);
    if kn.is_zero() || kd.is_zero() {
        return Err(ConfigError::Degenerate("coincident anchor points".into()));
    }
    let mut out = Vec::with_capacity(q.len());
    for p in &permuted[..total - 3] {
        let z = p.homogeneous();
        let num = lform(&a, &z).mul(&kn);
        let den = lform(&c, &z).mul(&kd);
        if den.is_zero() {
            return Err(ConfigError::Degenerate("image at infinity".into()));
        }
        out.push(num.div(&den));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&k| Scalar::from_int(k)).collect()
    }

    #[test]
    fn vieta_examples() {
        assert_eq!(vieta_map(&ints(&[1, 2, 3])), ints(&[-6, 11, -6]));
        assert_eq!(vieta_map(&ints(&[1, -1])), ints(&[0, -1]));
        let u = Scalar::ratio(3, 2);
        assert_eq!(
            vieta_map(&[u.clone(), u.clone()]),
            vec![u.mul(&Scalar::from_int(-2)), u.mul(&u)]
        );
    }

    #[test]
    fn disc_examples() {
        assert_eq!(disc_config(&ints(&[1, -1])), Scalar::from_int(4));
        assert_eq!(disc_config(&ints(&[0, 1, 2])), Scalar::from_int(4));
        let i = Scalar::quad_int(-1, 0, 1);
        let q = vec![
            Scalar::from_int(1),
            Scalar::from_int(-1),
            i.clone(),
            i.neg(),
        ];
        assert_eq!(disc_config(&q), Scalar::from_int(-256));
        // The chain agrees with the univariate discriminant.
        assert_eq!(disc_coeffs(&vieta_map(&q)), Scalar::from_int(-256));
    }

    #[test]
    fn barycenter_examples() {
        let (bc, q0) = barycenter_project(&ints(&[1, 2, 3]));
        assert_eq!(bc, Scalar::from_int(2));
        assert_eq!(q0, ints(&[-1, 0, 1]));
        let (bc2, q02) = barycenter_project(&q0);
        assert!(bc2.is_zero());
        assert_eq!(q02, q0);
    }

    #[test]
    fn chart_roundtrip_small() {
        // n = 2: (w2; y) ↦ (−2y, w2 + y²).
        let w2 = Scalar::ratio(5, 3);
        let y = Scalar::from_int(2);
        let z = chart_blc(std::slice::from_ref(&w2), &y);
        assert_eq!(z[0], Scalar::from_int(-4));
        assert_eq!(z[1], w2.add(&y.mul(&y)));
        let (w_back, y_back) = chart_blc_inv(&z);
        assert_eq!(w_back, vec![w2]);
        assert_eq!(y_back, y);
        // n = 3: (w2,w3; y) ↦ (−3y, 3y² + w2, −y³ − w2 y + w3).
        let w = [Scalar::from_int(4), Scalar::from_int(-7)];
        let y3 = Scalar::from_int(3);
        let z3 = chart_blc(&w, &y3);
        assert_eq!(z3, ints(&[-9, 31, -46]));
    }

    #[test]
    fn membership_examples() {
        let z = vieta_map(&ints(&[-1, 0, 1]));
        assert!(membership(&z, SpaceTag::Cn, 0.0));
        assert!(membership(&z, SpaceTag::CnBlc, 0.0));
        assert!(!membership(&z, SpaceTag::ScBlc, 0.0)); // discriminant is 4, not 1
        let zz = vieta_map(&ints(&[2, 2, 5]));
        assert!(membership(&zz, SpaceTag::Sigma, 0.0));
    }

    #[test]
    fn h_n_example() {
        // h({1,2}) = (1−2)²/2 = 1/2.
        assert_eq!(h_n(&ints(&[1, 2])).unwrap(), Scalar::ratio(1, 2));
    }

    #[test]
    fn sigma_iso_worked_example() {
        let q = ints(&[2, -4, 1, 1]);
        let img = sigma_blc_phi(&q).unwrap();
        assert_eq!(img, ints(&[1, -5]));
        assert_eq!(sigma_blc_psi(&img), ints(&[2, -4, 1, 1]));
    }

    #[test]
    fn eta_example() {
        let (r, y) = eta(&ints(&[2, 4])).unwrap();
        assert_eq!(r, vec![Scalar::ratio(1, 2)]);
        assert_eq!(y, Scalar::from_int(4));
        assert_eq!(eta_inv(&r, &y), ints(&[2, 4]));
    }

    #[test]
    fn u_involution_example() {
        let (a, b) = u_involution(&Scalar::from_int(4), &Scalar::from_int(2));
        assert_eq!((a, b), (Scalar::from_int(4), Scalar::from_int(2)));
    }

    #[test]
    fn mobius_transposition_is_one_minus_z() {
        // The transposition of slots n and n+1 acts coordinatewise as z ↦ 1−z.
        let q = vec![Scalar::ratio(1, 3), Scalar::from_int(5)];
        let n = q.len() + 1; // slots: q (n−1 of them), then 0, 1, ∞
        let total = n + 2;
        let mut perm: Vec<usize> = (1..=total).collect();
        perm.swap(n - 1, n); // swap slots n and n+1 (1-based)
        let out = mobius_action(&perm, &q).unwrap();
        let expect: Vec<Scalar> = q.iter().map(|z| Scalar::one().sub(z)).collect();
        assert_eq!(out, expect);
    }
}

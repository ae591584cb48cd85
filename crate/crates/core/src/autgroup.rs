//! Parametrized automorphisms of configuration spaces: construction and
//! application, exact group law (composition, inversion, commutators), torsion
//! and closed-form powers, the tame affine representation, canonical torus and
//! shift actions, the scaling/inversion automorphisms of configurations of
//! nonzero points, and covering-degree computations.
//!
//! An automorphism is the data (s, a, b) acting by
//! F(Q) = s·Q° + a(Q°)·bc(Q) + b(Q°), where Q° = Q − bc(Q), a(Q°) = t·Dᵏ(Q°)
//! for the discriminant D, and b is a balanced function (see
//! [`BalancedFunction`]). Composition stays inside this family because b may
//! be evaluated at the rescaled argument s·Q° by pure weight bookkeeping:
//! w_j has weight j, the power sum S_{2r} has weight 2r, and D has weight
//! n(n−1).

use crate::configspace::{barycenter_project, disc_config, same_multiset, vieta_map};
use crate::multipoly::MultiPoly;
use crate::scalar::{Cplx, Scalar};
use crate::unipoly::UniPoly;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AutError {
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
    #[error("automorphisms act on different spaces or degrees")]
    SpaceMismatch,
    #[error("balanced function has a pole: negative discriminant power at a repeated point")]
    Pole,
    #[error("configuration is outside the declared space: {0}")]
    OutsideSpace(String),
    #[error("malformed automorphism data: {0}")]
    Parse(String),
}

/// The spaces an automorphism may be declared on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutSpace {
    /// Configurations with distinct points; D is invertible, so k is free.
    Cn,
    /// The discriminant level one surface; requires k = 0 and s^{n(n−1)} = 1.
    Sc,
    /// The discriminant zero locus; requires k = 0 and no D-powers in b.
    Sigma,
    /// The ambient coefficient space preserving the discriminant locus;
    /// requires k = 0 and b polynomial (no negative powers).
    CnSigmaPair,
}

impl AutSpace {
    pub fn name(self) -> &'static str {
        match self {
            AutSpace::Cn => "Cn",
            AutSpace::Sc => "SC",
            AutSpace::Sigma => "Sigma",
            AutSpace::CnSigmaPair => "pair",
        }
    }

    pub fn from_name(s: &str) -> Result<Self, AutError> {
        match s {
            "Cn" => Ok(AutSpace::Cn),
            "SC" => Ok(AutSpace::Sc),
            "Sigma" => Ok(AutSpace::Sigma),
            "pair" => Ok(AutSpace::CnSigmaPair),
            other => Err(AutError::Parse(format!("unknown space {other}"))),
        }
    }
}

/// One primitive of a balanced function: a monomial in the balanced
/// coefficients w₂,…,w_n, or a power sum S_{2r}(Q°) = Σ_{q′,q″}(q′−q″)^{2r},
/// times an integer power of the discriminant D.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TermKey {
    /// Exponents of w₂,…,w_n (length n−1).
    pub w_exp: Vec<u32>,
    /// When present, the even power 2r of the power-sum factor.
    pub s_pow: Option<u32>,
    /// The discriminant exponent.
    pub m: i64,
}

/// A finite sum of primitives with scalar coefficients, evaluated on balanced
/// configurations. Canonical representation: a map from [`TermKey`] to the
/// (nonzero) coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct BalancedFunction {
    n: usize,
    terms: BTreeMap<TermKey, Scalar>,
}

impl BalancedFunction {
    pub fn zero(n: usize) -> Self {
        BalancedFunction {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// c · w₂^{e₂}…w_n^{e_n} · D^m. `w_exp` lists (e₂,…,e_n).
    pub fn monomial(n: usize, w_exp: Vec<u32>, m: i64, c: Scalar) -> Self {
        assert_eq!(w_exp.len(), n - 1, "w exponents must cover w2..wn");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(
                TermKey {
                    w_exp,
                    s_pow: None,
                    m,
                },
                c,
            );
        }
        BalancedFunction { n, terms }
    }

    /// c · S_{2r} · D^m.
    pub fn power_sum(n: usize, two_r: u32, m: i64, c: Scalar) -> Self {
        assert!(
            two_r.is_multiple_of(2) && two_r > 0,
            "power sum exponent must be even"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(
                TermKey {
                    w_exp: vec![0; n - 1],
                    s_pow: Some(two_r),
                    m,
                },
                c,
            );
        }
        BalancedFunction { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// All discriminant exponents are ≥ `min` (regularity checks).
    pub fn min_disc_power(&self) -> i64 {
        self.terms.keys().map(|k| k.m).min().unwrap_or(0)
    }

    /// The scaling weight of a primitive: w_j carries weight j, S_{2r} carries
    /// 2r, D carries n(n−1). Forced by homogeneity of symmetric functions.
    fn weight(&self, key: &TermKey) -> i64 {
        let wpart: i64 = key
            .w_exp
            .iter()
            .enumerate()
            .map(|(i, &e)| ((i + 2) as i64) * e as i64)
            .sum();
        let spart = key.s_pow.unwrap_or(0) as i64;
        let nn1 = (self.n * (self.n - 1)) as i64;
        wpart + spart + key.m * nn1
    }

    /// Evaluate at a balanced configuration.
    pub fn eval(&self, q0: &[Scalar]) -> Result<Scalar, AutError> {
        if self.terms.is_empty() {
            return Ok(Scalar::zero());
        }
        let z = vieta_map(q0);
        let d = disc_config(q0);
        let mut acc = Scalar::zero();
        for (key, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in key.w_exp.iter().enumerate() {
                if e > 0 {
                    // w_j = z_j on the balanced slice (z₁ = 0), j = i + 2.
                    t = t.mul(&z[i + 1].pow(e as i64));
                }
            }
            if let Some(two_r) = key.s_pow {
                let mut s = Scalar::zero();
                for a in 0..q0.len() {
                    for b in 0..q0.len() {
                        if a != b {
                            s = s.add(&q0[a].sub(&q0[b]).pow(two_r as i64));
                        }
                    }
                }
                t = t.mul(&s);
            }
            if key.m != 0 {
                if d.is_zero() && key.m < 0 {
                    return Err(AutError::Pole);
                }
                if d.is_zero() {
                    continue; // D^m with m > 0 kills the term
                }
                t = t.mul(&d.pow(key.m));
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// The function Q° ↦ b(s·Q°), computed by weight rewriting.
    pub fn scale_arg(&self, s: &Scalar) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (k.clone(), c.mul(&s.pow(self.weight(k)))))
            .collect();
        BalancedFunction { n: self.n, terms }
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            for (k, v) in &self.terms {
                terms.insert(k.clone(), v.mul(c));
            }
        }
        BalancedFunction { n: self.n, terms }
    }

    /// Multiply by D^k: shift every discriminant exponent.
    pub fn mul_disc_power(&self, k: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(key, c)| {
                let mut key = key.clone();
                key.m += k;
                (key, c.clone())
            })
            .collect();
        BalancedFunction { n: self.n, terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            let entry = terms.entry(k.clone()).or_insert_with(Scalar::zero);
            *entry = entry.add(c);
        }
        terms.retain(|_, c| !c.is_zero());
        BalancedFunction { n: self.n, terms }
    }

    pub fn neg(&self) -> Self {
        self.mul_scalar(&Scalar::from_int(-1))
    }

    /// Every coefficient vanishes (exactly, or within tol for floats).
    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.close(&Scalar::zero(), tol))
    }

    /// Evaluate symbolically: substitute polynomial expressions for the w's
    /// and the discriminant (only valid when all m ≥ 0).
    pub fn eval_symbolic(&self, w: &[MultiPoly], d: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (key, c) in &self.terms {
            assert!(key.m >= 0, "symbolic evaluation needs regular terms");
            assert!(
                key.s_pow.is_none(),
                "symbolic evaluation covers w-monomials"
            );
            let mut t = MultiPoly::constant(c.clone());
            for (i, &e) in key.w_exp.iter().enumerate() {
                t = t.mul(&w[i].pow(e));
            }
            t = t.mul(&d.pow(key.m as u32));
            acc = acc.add(&t);
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| match k.s_pow {
                Some(two_r) => json!({"c": c.to_json(), "S": two_r, "m": k.m}),
                None => json!({"c": c.to_json(), "w_exp": k.w_exp, "m": k.m}),
            })
            .collect();
        Value::Array(terms)
    }

    pub fn from_json(n: usize, v: &Value) -> Result<Self, AutError> {
        let arr = v
            .as_array()
            .ok_or_else(|| AutError::Parse("b must be an array of terms".into()))?;
        let mut b = BalancedFunction::zero(n);
        for t in arr {
            let c = Scalar::from_json(
                t.get("c")
                    .ok_or_else(|| AutError::Parse("term without c".into()))?,
            )
            .map_err(|e| AutError::Parse(e.to_string()))?;
            let m = t.get("m").and_then(Value::as_i64).unwrap_or(0);
            let term = if let Some(s) = t.get("S").and_then(Value::as_u64) {
                BalancedFunction::power_sum(n, s as u32, m, c)
            } else {
                let we: Vec<u32> = t
                    .get("w_exp")
                    .and_then(Value::as_array)
                    .map(|a| a.iter().map(|x| x.as_u64().unwrap_or(0) as u32).collect())
                    .unwrap_or_else(|| vec![0; n - 1]);
                if we.len() != n - 1 {
                    return Err(AutError::Parse("w_exp must have n-1 entries".into()));
                }
                BalancedFunction::monomial(n, we, m, c)
            };
            b = b.add(&term);
        }
        Ok(b)
    }
}

/// A parametrized automorphism F(Q) = s·Q° + t·Dᵏ(Q°)·bc(Q) + b(Q°).
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularAut {
    pub space: AutSpace,
    pub n: usize,
    pub s: Scalar,
    pub t: Scalar,
    pub k: i64,
    pub b: BalancedFunction,
}

impl TriangularAut {
    /// Validated construction; rejects parameters with the violated clause.
    pub fn make(
        space: AutSpace,
        n: usize,
        s: Scalar,
        t: Scalar,
        k: i64,
        b: BalancedFunction,
    ) -> Result<Self, AutError> {
        if n < 2 {
            return Err(AutError::Constraint("n must be at least 2".into()));
        }
        if s.is_zero() || t.is_zero() {
            return Err(AutError::Constraint("s and t must be nonzero".into()));
        }
        if b.n() != n {
            return Err(AutError::Constraint(
                "balanced function degree mismatch".into(),
            ));
        }
        let nn1 = (n * (n - 1)) as i64;
        match space {
            AutSpace::Cn => {}
            AutSpace::Sc => {
                if k != 0 {
                    return Err(AutError::Constraint("SC requires k = 0".into()));
                }
                if !s.pow(nn1).close(&Scalar::one(), 1e-9) {
                    return Err(AutError::Constraint("SC requires s^{n(n-1)} = 1".into()));
                }
            }
            AutSpace::Sigma => {
                if k != 0 {
                    return Err(AutError::Constraint("Sigma requires k = 0".into()));
                }
                if b.terms.keys().any(|key| key.m != 0) {
                    return Err(AutError::Constraint(
                        "Sigma requires b without discriminant powers".into(),
                    ));
                }
            }
            AutSpace::CnSigmaPair => {
                if k != 0 {
                    return Err(AutError::Constraint("the pair requires k = 0".into()));
                }
                if b.min_disc_power() < 0 {
                    return Err(AutError::Constraint(
                        "the pair requires b regular (no negative discriminant powers)".into(),
                    ));
                }
            }
        }
        Ok(TriangularAut {
            space,
            n,
            s,
            t,
            k,
            b,
        })
    }

    pub fn identity(space: AutSpace, n: usize) -> Self {
        TriangularAut {
            space,
            n,
            s: Scalar::one(),
            t: Scalar::one(),
            k: 0,
            b: BalancedFunction::zero(n),
        }
    }

    fn nn1(&self) -> i64 {
        (self.n * (self.n - 1)) as i64
    }

    /// Check that a configuration lies on the declared space.
    fn check_domain(&self, q: &[Scalar]) -> Result<(), AutError> {
        if q.len() != self.n {
            return Err(AutError::OutsideSpace(format!(
                "expected {} points, got {}",
                self.n,
                q.len()
            )));
        }
        let d = disc_config(q);
        let exact = q.iter().all(Scalar::is_exact);
        match self.space {
            AutSpace::Cn => {
                let ok = if exact {
                    !d.is_zero()
                } else {
                    d.to_cplx().abs() > 1e-12
                };
                if !ok {
                    return Err(AutError::OutsideSpace("repeated point".into()));
                }
            }
            AutSpace::Sigma => {
                let ok = if exact {
                    d.is_zero()
                } else {
                    d.to_cplx().abs() <= 1e-9
                };
                if !ok {
                    return Err(AutError::OutsideSpace("discriminant must vanish".into()));
                }
            }
            AutSpace::Sc => {
                if !d.close(&Scalar::one(), 1e-9) {
                    return Err(AutError::OutsideSpace("discriminant must equal one".into()));
                }
            }
            AutSpace::CnSigmaPair => {}
        }
        Ok(())
    }

    /// Apply: F(Q) = s·Q° + (t·Dᵏ(Q°))·bc(Q) + b(Q°).
    pub fn apply(&self, q: &[Scalar]) -> Result<Vec<Scalar>, AutError> {
        self.check_domain(q)?;
        let (bc, q0) = barycenter_project(q);
        let d = disc_config(&q0);
        let a = if self.k == 0 {
            self.t.clone()
        } else {
            if d.is_zero() {
                return Err(AutError::Pole);
            }
            self.t.mul(&d.pow(self.k))
        };
        let shift = a.mul(&bc).add(&self.b.eval(&q0)?);
        Ok(q0.iter().map(|p| p.mul(&self.s).add(&shift)).collect())
    }

    /// Compose: `self` applied after `inner` (self ∘ inner).
    pub fn compose(&self, inner: &TriangularAut) -> Result<TriangularAut, AutError> {
        if self.space != inner.space || self.n != inner.n {
            return Err(AutError::SpaceMismatch);
        }
        let nn1 = self.nn1();
        let s2 = self.s.mul(&inner.s);
        let k2 = self.k + inner.k;
        let t2 = self.t.mul(&inner.t).mul(&inner.s.pow(self.k * nn1));
        // b″(x) = a′(s·x)·b(x) + b′(s·x) with a′(s·x) = t′·s^{k′ n(n−1)}·Dᵏ′(x).
        let factor = self.t.mul(&inner.s.pow(self.k * nn1));
        let b2 = inner
            .b
            .mul_scalar(&factor)
            .mul_disc_power(self.k)
            .add(&self.b.scale_arg(&inner.s));
        Ok(TriangularAut {
            space: self.space,
            n: self.n,
            s: s2,
            t: t2,
            k: k2,
            b: b2,
        })
    }

    pub fn invert(&self) -> TriangularAut {
        let nn1 = self.nn1();
        let s_inv = self.s.inv();
        let t_star = self.t.inv().mul(&self.s.pow(self.k * nn1));
        let b_star = self
            .b
            .scale_arg(&s_inv)
            .mul_disc_power(-self.k)
            .mul_scalar(&t_star)
            .neg();
        TriangularAut {
            space: self.space,
            n: self.n,
            s: s_inv,
            t: t_star,
            k: -self.k,
            b: b_star,
        }
    }

    /// The commutator [F′, F] = F′⁻¹ ∘ F⁻¹ ∘ F′ ∘ F with `self` as F′.
    pub fn commutator(&self, f: &TriangularAut) -> Result<TriangularAut, AutError> {
        self.invert()
            .compose(&f.invert())?
            .compose(self)?
            .compose(f)
    }

    pub fn pow(&self, m: u32) -> Result<TriangularAut, AutError> {
        let mut acc = TriangularAut::identity(self.space, self.n);
        for _ in 0..m {
            acc = self.compose(&acc)?;
        }
        Ok(acc)
    }

    /// The closed-form m-th power for the torsion family a = t, k = 0:
    /// F^m(Q) = s^m·Q° + t^m·bc + Σ_{j=0}^{m−1} t^{m−j−1}·b(s^j·Q°).
    pub fn closed_form_power(&self, m: u32) -> TriangularAut {
        assert_eq!(self.k, 0, "closed form applies to the k = 0 family");
        let mut b = BalancedFunction::zero(self.n);
        for j in 0..m {
            b = b.add(
                &self
                    .b
                    .scale_arg(&self.s.pow(j as i64))
                    .mul_scalar(&self.t.pow((m - j - 1) as i64)),
            );
        }
        TriangularAut {
            space: self.space,
            n: self.n,
            s: self.s.pow(m as i64),
            t: self.t.pow(m as i64),
            k: 0,
            b,
        }
    }

    pub fn is_identity_within(&self, tol: f64) -> bool {
        self.k == 0
            && self.s.close(&Scalar::one(), tol)
            && self.t.close(&Scalar::one(), tol)
            && self.b.is_zero_within(tol)
    }

    /// Detect the order by iteration, up to the given bound.
    pub fn order(&self, bound: u32, tol: f64) -> Option<u32> {
        let mut acc = self.clone();
        for m in 1..=bound {
            if acc.is_identity_within(tol) {
                return Some(m);
            }
            acc = self.compose(&acc).ok()?;
        }
        None
    }

    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.name(),
            "n": self.n,
            "s": self.s.to_json(),
            "t": self.t.to_json(),
            "k": self.k,
            "b": self.b.to_json(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, AutError> {
        let space = AutSpace::from_name(
            v.get("space")
                .and_then(Value::as_str)
                .ok_or_else(|| AutError::Parse("missing space".into()))?,
        )?;
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| AutError::Parse("missing n".into()))? as usize;
        let s = Scalar::from_json(
            v.get("s")
                .ok_or_else(|| AutError::Parse("missing s".into()))?,
        )
        .map_err(|e| AutError::Parse(e.to_string()))?;
        let t = Scalar::from_json(
            v.get("t")
                .ok_or_else(|| AutError::Parse("missing t".into()))?,
        )
        .map_err(|e| AutError::Parse(e.to_string()))?;
        let k = v.get("k").and_then(Value::as_i64).unwrap_or(0);
        let b = match v.get("b") {
            Some(bv) => BalancedFunction::from_json(n, bv)?,
            None => BalancedFunction::zero(n),
        };
        TriangularAut::make(space, n, s, t, k, b)
    }
}

/// The semisimple model F(Q) = s·Q° + t·bc + t·b(Q°) − b(s·Q°); its m-th power
/// is the identity precisely when s^m = t^m = 1.
pub fn semisimple_build(
    space: AutSpace,
    n: usize,
    s: Scalar,
    t: Scalar,
    b: &BalancedFunction,
) -> Result<TriangularAut, AutError> {
    let b_ss = b.mul_scalar(&t).add(&b.scale_arg(&s).neg());
    TriangularAut::make(space, n, s, t, 0, b_ss)
}

/// Reconstruct b̃ with b = t·b̃ − b̃∘s from a solution b of the finite-order
/// constraint Σ_{j} t^{m−1−j} b(s^j·) = 0:
/// b̃ = Σ_{j=0}^{m−1} ((m−j)/m) · t^{m−j−1} · b(s^j·).
pub fn inversion_reconstruct(
    s: &Scalar,
    t: &Scalar,
    m: u32,
    b: &BalancedFunction,
) -> BalancedFunction {
    let mut acc = BalancedFunction::zero(b.n());
    for j in 0..m {
        let coeff = Scalar::ratio((m - j) as i64, m as i64).mul(&t.pow((m - j - 1) as i64));
        acc = acc.add(&b.scale_arg(&s.pow(j as i64)).mul_scalar(&coeff));
    }
    acc
}

/// An invertible affine map of the line, ζ ↦ a·ζ + b.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineMapOfLine {
    pub a: Scalar,
    pub b: Scalar,
}

impl AffineMapOfLine {
    pub fn apply(&self, z: &Scalar) -> Scalar {
        self.a.mul(z).add(&self.b)
    }
}

/// The tame representation: the affine map T(Q) with T(Q)·Q = F(Q) pointwise,
/// T(Q): ζ ↦ s·(ζ − bc(Q)) + a(Q°)·bc(Q) + b(Q°).
pub fn tame_affine_map(f: &TriangularAut, q: &[Scalar]) -> Result<AffineMapOfLine, AutError> {
    let (bc, q0) = barycenter_project(q);
    let d = disc_config(&q0);
    let a = if f.k == 0 {
        f.t.clone()
    } else {
        if d.is_zero() {
            return Err(AutError::Pole);
        }
        f.t.mul(&d.pow(f.k))
    };
    let offset = a.mul(&bc).add(&f.b.eval(&q0)?).sub(&f.s.mul(&bc));
    Ok(AffineMapOfLine {
        a: f.s.clone(),
        b: offset,
    })
}

/// The two-torus action ν(s,t): Q ↦ s·(Q − bc) + t·bc.
pub fn nu_torus(s: &Scalar, t: &Scalar, q: &[Scalar]) -> Vec<Scalar> {
    let (bc, q0) = barycenter_project(q);
    let shift = t.mul(&bc);
    q0.iter().map(|p| p.mul(s).add(&shift)).collect()
}

/// The shift action Q ↦ Q + λ·b(Q°); b = 1 is the translation flow.
pub fn shift_action(
    lambda: &Scalar,
    b: &BalancedFunction,
    q: &[Scalar],
) -> Result<Vec<Scalar>, AutError> {
    let (_, q0) = barycenter_project(q);
    let c = lambda.mul(&b.eval(&q0)?);
    Ok(q.iter().map(|p| p.add(&c)).collect())
}

/// An automorphism of configurations of nonzero distinct points:
/// F(Q) = s · h^k(Q) · Q^ε, where h(Q) = D(Q)/(∏q)^{n−1} and ε = ±1.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleInvAut {
    pub s: Scalar,
    pub k: i64,
    pub eps: i8,
}

impl ScaleInvAut {
    pub fn identity() -> Self {
        ScaleInvAut {
            s: Scalar::one(),
            k: 0,
            eps: 1,
        }
    }

    pub fn apply(&self, q: &[Scalar]) -> Result<Vec<Scalar>, crate::configspace::ConfigError> {
        let h = crate::configspace::h_n(q)?;
        let factor = self.s.mul(&h.pow(self.k));
        let powered: Vec<Scalar> = if self.eps == 1 {
            q.to_vec()
        } else {
            q.iter().map(Scalar::inv).collect()
        };
        Ok(powered.iter().map(|p| p.mul(&factor)).collect())
    }

    /// `self` applied after `inner`: (s,k,ε)∘(s′,k′,ε′) = (s·s′^ε, k+εk′, εε′).
    pub fn compose(&self, inner: &ScaleInvAut) -> ScaleInvAut {
        ScaleInvAut {
            s: self.s.mul(&inner.s.pow(self.eps as i64)),
            k: self.k + (self.eps as i64) * inner.k,
            eps: self.eps * inner.eps,
        }
    }

    pub fn invert(&self) -> ScaleInvAut {
        ScaleInvAut {
            s: self.s.pow(-(self.eps as i64)),
            k: -(self.eps as i64) * self.k,
            eps: self.eps,
        }
    }
}

/// For the endomorphism f(Q°) = c·D^m(Q°)·Q° of balanced configurations, the
/// full preimage fiber of Q°: the N = m·n(n−1)+1 rescalings ω·Q° with
/// ω^N · c · D^m(Q°) = 1. Each preimage is verified to map back within `tol`.
pub fn covering_preimages(
    c: Cplx,
    m: u32,
    q0: &[Scalar],
    tol: f64,
) -> Result<Vec<Vec<Cplx>>, AutError> {
    let n = q0.len();
    let nn1 = (n * (n - 1)) as u32;
    let nn = (m * nn1 + 1) as i64;
    let pts: Vec<Cplx> = q0.iter().map(Scalar::to_cplx).collect();
    let d: Cplx = {
        let mut acc = Cplx::ONE;
        for i in 0..n {
            for j in i + 1..n {
                let diff = pts[i] - pts[j];
                acc = acc * diff * diff;
            }
        }
        acc
    };
    if d.abs() < 1e-12 || pts.iter().all(|p| p.abs() < 1e-12) {
        return Err(AutError::OutsideSpace("degenerate configuration".into()));
    }
    let target = (c * d.powi(m as i64)).recip();
    let base = target.powf(1.0 / nn as f64);
    let apply_f = |qs: &[Cplx]| -> Vec<Cplx> {
        let mut dd = Cplx::ONE;
        for i in 0..n {
            for j in i + 1..n {
                let diff = qs[i] - qs[j];
                dd = dd * diff * diff;
            }
        }
        let factor = c * dd.powi(m as i64);
        qs.iter().map(|&p| p * factor).collect()
    };
    let mut out = Vec::with_capacity(nn as usize);
    for j in 0..nn {
        let omega = base * Cplx::root_of_unity(j, nn);
        let pre: Vec<Cplx> = pts.iter().map(|&p| p * omega).collect();
        let image = apply_f(&pre);
        let img_s: Vec<Scalar> = image.iter().map(|&z| Scalar::Complex(z)).collect();
        let q_s: Vec<Scalar> = pts.iter().map(|&z| Scalar::Complex(z)).collect();
        if !same_multiset(&img_s, &q_s, tol) {
            return Err(AutError::OutsideSpace(
                "preimage residual exceeds tolerance".into(),
            ));
        }
        out.push(pre);
    }
    // Distinct preimages witness a trivial scaling stabilizer.
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            let a: Vec<Scalar> = out[i].iter().map(|&z| Scalar::Complex(z)).collect();
            let b: Vec<Scalar> = out[j].iter().map(|&z| Scalar::Complex(z)).collect();
            if same_multiset(&a, &b, tol) {
                return Err(AutError::OutsideSpace(
                    "nontrivial scaling stabilizer".into(),
                ));
            }
        }
    }
    Ok(out)
}

/// The pair of automorphisms whose commutator realizes the pure shift
/// Q ↦ Q + b(Q°): F′ = (s=1, t=−1, b′=−b/2) and F″ = (s=1, t=1, b″=b/2).
/// In the barycenter coordinate these are y ↦ −y − b/2 and y ↦ y + b/2.
pub struct ShiftWitness {
    pub f_prime: TriangularAut,
    pub f_second: TriangularAut,
    pub commutator: TriangularAut,
}

pub fn shift_witness(b: &BalancedFunction, n: usize) -> Result<ShiftWitness, AutError> {
    let half = Scalar::ratio(1, 2);
    let f_prime = TriangularAut::make(
        AutSpace::Cn,
        n,
        Scalar::one(),
        Scalar::from_int(-1),
        0,
        b.mul_scalar(&half.neg()),
    )?;
    let f_second = TriangularAut::make(
        AutSpace::Cn,
        n,
        Scalar::one(),
        Scalar::one(),
        0,
        b.mul_scalar(&half),
    )?;
    let commutator = f_prime.commutator(&f_second)?;
    Ok(ShiftWitness {
        f_prime,
        f_second,
        commutator,
    })
}

/// The pair of automorphisms whose commutator realizes the pure scaling
/// Q ↦ Q° + t·bc: F̃ = (s, s, 0) with s the principal n(n−1)-th root of t,
/// and F̃′ = (1, 1, 1).
pub struct CommutatorWitness {
    pub f_tilde: TriangularAut,
    pub f_tilde_prime: TriangularAut,
    pub commutator: TriangularAut,
}

pub fn commutator_witness(t: Cplx, n: usize) -> Result<CommutatorWitness, AutError> {
    let nn1 = (n * (n - 1)) as f64;
    let s = Scalar::Complex(t.powf(1.0 / nn1));
    let f_tilde = TriangularAut::make(AutSpace::Cn, n, s.clone(), s, 0, BalancedFunction::zero(n))?;
    let f_tilde_prime = TriangularAut::make(
        AutSpace::Cn,
        n,
        Scalar::one(),
        Scalar::one(),
        1,
        BalancedFunction::zero(n),
    )?;
    let commutator = f_tilde_prime.commutator(&f_tilde)?;
    Ok(CommutatorWitness {
        f_tilde,
        f_tilde_prime,
        commutator,
    })
}

/// Apply a k = 0 automorphism to the coefficient vector symbolically: returns
/// the images of z₁,…,z_n as polynomials in z₁,…,z_n, s, t. Requires b to be
/// polynomial in the w's (the relative/pair case).
pub fn symbolic_coefficient_action(f: &TriangularAut) -> Vec<MultiPoly> {
    assert_eq!(f.k, 0, "symbolic action covers the k = 0 family");
    let n = f.n;
    let zvars: Vec<MultiPoly> = (1..=n).map(|i| MultiPoly::var(&format!("z{i}"))).collect();
    let bc = zvars[0].scale(&Scalar::ratio(-1, n as i64));
    // Balanced coefficients: the tail of P(λ + bc).
    let p = UniPoly::monic_from_descending("lambda", &zvars);
    let tail = p.shift(&bc).descending_tail();
    let w: Vec<MultiPoly> = tail[1..].to_vec();
    let d = crate::derivations::disc_symbolic(n).substitute_all(&sub_map(n, &tail_to_full(&tail)));
    let b_sym = f.b.eval_symbolic(&w, &d);
    // Scalars s, t as formal variables unless they are concrete.
    let s_poly = scalar_or_var(&f.s, "s");
    let t_poly = scalar_or_var(&f.t, "t");
    // Pointwise affine map q ↦ s·q + β gives P_new(λ) = Σ z_i sⁱ (λ − β)^{n−i}.
    let beta = t_poly.sub(&s_poly).mul(&bc).add(&b_sym);
    let mut coeffs_desc = vec![MultiPoly::one()];
    for (i, zi) in zvars.iter().enumerate() {
        coeffs_desc.push(zi.mul(&s_poly.pow((i + 1) as u32)));
    }
    let q_poly = UniPoly::monic_from_descending("lambda", &coeffs_desc[1..]);
    q_poly.shift(&beta.neg()).descending_tail()
}

fn scalar_or_var(s: &Scalar, name: &str) -> MultiPoly {
    if s.is_one() {
        MultiPoly::one()
    } else {
        MultiPoly::var(name)
    }
}

fn tail_to_full(tail: &[MultiPoly]) -> Vec<MultiPoly> {
    tail.to_vec()
}

fn sub_map(n: usize, imgs: &[MultiPoly]) -> BTreeMap<String, MultiPoly> {
    (1..=n)
        .map(|i| (format!("z{i}"), imgs[i - 1].clone()))
        .collect()
}

/// Verify symbolically that a k = 0 automorphism with polynomial b rescales
/// the discriminant: d_n(F(z)) = s^{n(n−1)}·d_n(z) in ℚ[z, s, t].
pub fn relative_aut_disc_identity(f: &TriangularAut) -> bool {
    let n = f.n;
    let imgs = symbolic_coefficient_action(f);
    let d = crate::derivations::disc_symbolic(n);
    let lhs = d.substitute_all(&sub_map(n, &imgs));
    let s_poly = scalar_or_var(&f.s, "s");
    let rhs = d.mul(&s_poly.pow((n * (n - 1)) as u32));
    lhs.sub(&rhs).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&k| Scalar::from_int(k)).collect()
    }

    fn scaling(n: usize, c: i64) -> TriangularAut {
        TriangularAut::make(
            AutSpace::Cn,
            n,
            Scalar::from_int(c),
            Scalar::from_int(c),
            0,
            BalancedFunction::zero(n),
        )
        .unwrap()
    }

    #[test]
    fn apply_worked_example() {
        // s = 2, a = 1, b = 0 on {0,1,2}: Q° = {−1,0,1}, bc = 1 → {−1,1,3}.
        let f = TriangularAut::make(
            AutSpace::Cn,
            3,
            Scalar::from_int(2),
            Scalar::one(),
            0,
            BalancedFunction::zero(3),
        )
        .unwrap();
        assert_eq!(f.apply(&ints(&[0, 1, 2])).unwrap(), ints(&[-1, 1, 3]));
        // The identity is the identity.
        let id = TriangularAut::identity(AutSpace::Cn, 3);
        assert_eq!(id.apply(&ints(&[0, 1, 2])).unwrap(), ints(&[0, 1, 2]));
    }

    #[test]
    fn constraint_validation() {
        // Sigma rejects k ≠ 0.
        assert!(TriangularAut::make(
            AutSpace::Sigma,
            3,
            Scalar::one(),
            Scalar::one(),
            1,
            BalancedFunction::zero(3),
        )
        .is_err());
        // SC accepts a sixth root of unity for n = 3 (s = −1 works: (−1)⁶ = 1).
        assert!(TriangularAut::make(
            AutSpace::Sc,
            3,
            Scalar::from_int(-1),
            Scalar::one(),
            0,
            BalancedFunction::zero(3),
        )
        .is_ok());
        // SC rejects s = 2.
        assert!(TriangularAut::make(
            AutSpace::Sc,
            3,
            Scalar::from_int(2),
            Scalar::one(),
            0,
            BalancedFunction::zero(3),
        )
        .is_err());
    }

    #[test]
    fn scalings_compose() {
        let f = scaling(3, 2);
        let g = scaling(3, 3);
        let fg = f.compose(&g).unwrap();
        assert_eq!(fg.s, Scalar::from_int(6));
        assert_eq!(fg.t, Scalar::from_int(6));
    }

    #[test]
    fn inverse_is_pointwise_inverse() {
        let b = BalancedFunction::monomial(3, vec![1, 0], 1, Scalar::ratio(2, 5));
        let f = TriangularAut::make(
            AutSpace::Cn,
            3,
            Scalar::from_int(2),
            Scalar::from_int(3),
            2,
            b,
        )
        .unwrap();
        let q = ints(&[0, 1, 3]);
        let round = f.invert().apply(&f.apply(&q).unwrap()).unwrap();
        assert_eq!(round, q);
        assert!(f.compose(&f.invert()).unwrap().is_identity_within(0.0));
    }

    #[test]
    fn composition_matches_pointwise() {
        let b1 = BalancedFunction::power_sum(3, 2, 0, Scalar::ratio(1, 7));
        let b2 = BalancedFunction::monomial(3, vec![0, 1], -1, Scalar::from_int(2));
        let f = TriangularAut::make(
            AutSpace::Cn,
            3,
            Scalar::from_int(2),
            Scalar::from_int(-1),
            1,
            b1,
        )
        .unwrap();
        let g = TriangularAut::make(
            AutSpace::Cn,
            3,
            Scalar::ratio(1, 2),
            Scalar::from_int(3),
            -1,
            b2,
        )
        .unwrap();
        let q = ints(&[1, 2, 4]);
        let lhs = f.compose(&g).unwrap().apply(&q).unwrap();
        let rhs = f.apply(&g.apply(&q).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_scales_by_the_weight() {
        let b = BalancedFunction::monomial(4, vec![1, 0, 0], 0, Scalar::from_int(5));
        let f = TriangularAut::make(
            AutSpace::Cn,
            4,
            Scalar::from_int(3),
            Scalar::from_int(2),
            0,
            b,
        )
        .unwrap();
        let q = ints(&[0, 1, 2, 5]);
        let d_before = disc_config(&q);
        let d_after = disc_config(&f.apply(&q).unwrap());
        assert_eq!(d_after, d_before.mul(&Scalar::from_int(3).pow(12)));
    }

    #[test]
    fn torsion_examples() {
        // (a) s = 1, t = −1, b arbitrary: an involution.
        let b = BalancedFunction::monomial(3, vec![1, 0], 0, Scalar::from_int(7));
        let f = TriangularAut::make(AutSpace::Cn, 3, Scalar::one(), Scalar::from_int(-1), 0, b)
            .unwrap();
        assert_eq!(f.order(24, 0.0), Some(2));
        // (c) Q ↦ −Q + S₂(Q°): an involution.
        let b = BalancedFunction::power_sum(3, 2, 0, Scalar::one());
        let f = TriangularAut::make(
            AutSpace::Cn,
            3,
            Scalar::from_int(-1),
            Scalar::from_int(-1),
            0,
            b,
        )
        .unwrap();
        assert_eq!(f.order(24, 0.0), Some(2));
    }

    #[test]
    fn closed_form_power_matches_iteration() {
        let b = BalancedFunction::power_sum(3, 2, 0, Scalar::ratio(1, 3));
        let i = Scalar::quad_int(-1, 0, 1);
        let f = TriangularAut::make(AutSpace::Cn, 3, i.clone(), i.neg(), 0, b).unwrap();
        for m in 1..=6 {
            assert_eq!(f.closed_form_power(m), f.pow(m).unwrap(), "power {m}");
        }
    }

    #[test]
    fn semisimple_orders() {
        // b = 0, s = t a primitive sixth root of unity (in Q(sqrt-3)):
        // ζ₆ = 1/2 + (1/2)δ with δ = i√3.
        let zeta6 = Scalar::quad(
            -3,
            num_rational::BigRational::new(1.into(), 2.into()),
            num_rational::BigRational::new(1.into(), 2.into()),
        );
        let f = semisimple_build(
            AutSpace::Cn,
            3,
            zeta6.clone(),
            zeta6,
            &BalancedFunction::zero(3),
        )
        .unwrap();
        assert_eq!(f.order(24, 0.0), Some(6));
        // s = t = 1 with any b gives the identity.
        let b = BalancedFunction::monomial(3, vec![2, 1], 0, Scalar::from_int(9));
        let id = semisimple_build(AutSpace::Cn, 3, Scalar::one(), Scalar::one(), &b).unwrap();
        assert!(id.is_identity_within(0.0));
    }

    #[test]
    fn inversion_formula_identity() {
        // For b solving the finite-order constraint, b̃ satisfies
        // b = t·b̃ − b̃∘s. Take s = i, t = −1, m = 4, and the scale-invariant
        // primitive b = S₄·D^{... }: weight 0 needs 2r = k·n(n−1) with D^{−k};
        // for n = 3, k = 1: b = S₆·D⁻¹.
        let s = Scalar::quad_int(-1, 0, 1);
        let t = Scalar::from_int(-1);
        let b = BalancedFunction::power_sum(3, 6, -1, Scalar::from_int(5));
        // Scale-invariant b: the constraint Σ t^{m−1−j} b(s^j·) = (Σ t^j)·b = 0.
        let btilde = inversion_reconstruct(&s, &t, 4, &b);
        let lhs = btilde.mul_scalar(&t).add(&btilde.scale_arg(&s).neg());
        assert_eq!(lhs, b);
    }

    #[test]
    fn tame_map_reproduces_apply() {
        let f = TriangularAut::make(
            AutSpace::Cn,
            3,
            Scalar::from_int(2),
            Scalar::one(),
            0,
            BalancedFunction::zero(3),
        )
        .unwrap();
        let q = ints(&[0, 1, 2]);
        let t_map = tame_affine_map(&f, &q).unwrap();
        // T(Q): ζ ↦ 2(ζ − 1) + 1.
        assert_eq!(t_map.a, Scalar::from_int(2));
        assert_eq!(t_map.b, Scalar::from_int(-1));
        let image: Vec<Scalar> = q.iter().map(|p| t_map.apply(p)).collect();
        assert_eq!(image, f.apply(&q).unwrap());
    }

    #[test]
    fn scale_inv_composition_example() {
        // (1,1,−1)∘(1,1,−1) = (1,0,+1).
        let f = ScaleInvAut {
            s: Scalar::one(),
            k: 1,
            eps: -1,
        };
        let sq = f.compose(&f);
        assert_eq!(sq, ScaleInvAut::identity());
    }

    #[test]
    fn covering_preimage_count() {
        // n = 3, m = 1, c = 1 on {−1,0,1}: D = 4, so ω⁷·4 = 1 and N = 7.
        let q0 = ints(&[-1, 0, 1]);
        let pre = covering_preimages(Cplx::ONE, 1, &q0, 1e-8).unwrap();
        assert_eq!(pre.len(), 7);
        let expected_radius = 0.25f64.powf(1.0 / 7.0);
        for p in &pre {
            let omega = p[2]; // the image of the point 1
            assert!((omega.abs() - expected_radius).abs() < 1e-9);
        }
        // m = 0, c = 1: the identity, one preimage.
        let pre0 = covering_preimages(Cplx::ONE, 0, &q0, 1e-8).unwrap();
        assert_eq!(pre0.len(), 1);
    }

    #[test]
    fn commutator_witness_scales_barycenter() {
        let t = Cplx::new(-1.0, 0.0);
        let w = commutator_witness(t, 3).unwrap();
        let q: Vec<Scalar> = ints(&[1, 2, 4]);
        let out = w.commutator.apply(&q).unwrap();
        // Q ↦ Q° + t·bc with bc = 7/3: expect Q° − bc.
        let (bc, q0) = barycenter_project(&q);
        let expect: Vec<Scalar> = q0.iter().map(|p| p.sub(&bc)).collect();
        for (a, b) in out.iter().zip(&expect) {
            assert!(a.close(b, 1e-9), "{a} vs {b}");
        }
    }

    #[test]
    fn shift_witness_is_pure_shift() {
        let b = BalancedFunction::monomial(3, vec![2, 1], 0, Scalar::ratio(3, 7));
        let w = shift_witness(&b, 3).unwrap();
        let expected =
            TriangularAut::make(AutSpace::Cn, 3, Scalar::one(), Scalar::one(), 0, b.clone())
                .unwrap();
        assert_eq!(w.commutator, expected);
        // Pointwise: Q ↦ Q + b(Q°).
        let q = ints(&[0, 2, 7]);
        let (_, q0) = barycenter_project(&q);
        let bval = b.eval(&q0).unwrap();
        let expect: Vec<Scalar> = q.iter().map(|p| p.add(&bval)).collect();
        assert_eq!(w.commutator.apply(&q).unwrap(), expect);
    }

    #[test]
    fn relative_symbolic_discriminant_identity() {
        // b = w₂, generic s, t: d₃(F(z)) = s⁶·d₃(z).
        let b = BalancedFunction::monomial(3, vec![1, 0], 0, Scalar::one());
        let f = TriangularAut::make(
            AutSpace::CnSigmaPair,
            3,
            Scalar::from_int(2),
            Scalar::from_int(3),
            0,
            b,
        )
        .unwrap();
        assert!(relative_aut_disc_identity(&f));
    }
}

//! Dense univariate polynomials with polynomial coefficients, Sylvester
//! resultants computed by fraction-free (Bareiss) elimination, discriminants,
//! Taylor shifts, and floating-point root finding.

use crate::multipoly::MultiPoly;
use crate::scalar::{Cplx, Scalar};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum UniPolyError {
    #[error("resultant of a zero polynomial")]
    ZeroPolynomial,
    #[error("discriminant requires a monic polynomial")]
    NotMonic,
    #[error("discriminant requires degree at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("root finding did not converge after {0} iterations")]
    NoConvergence(usize),
}

/// A univariate polynomial in a distinguished variable, with coefficients in
/// the multivariate polynomial ring over the remaining variables. Coefficients
/// are stored in ascending order; the leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    pub var: String,
    coeffs: Vec<MultiPoly>,
}

impl UniPoly {
    pub fn new(var: &str, mut coeffs: Vec<MultiPoly>) -> Self {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(MultiPoly::zero());
        }
        UniPoly {
            var: var.to_string(),
            coeffs,
        }
    }

    pub fn from_scalars(var: &str, coeffs: Vec<Scalar>) -> Self {
        UniPoly::new(var, coeffs.into_iter().map(MultiPoly::constant).collect())
    }

    /// The monic polynomial λⁿ + z₁λⁿ⁻¹ + … + z_n from its non-leading
    /// coefficients listed as (z₁, …, z_n).
    pub fn monic_from_descending(var: &str, z: &[MultiPoly]) -> Self {
        let mut coeffs: Vec<MultiPoly> = z.iter().rev().cloned().collect();
        coeffs.push(MultiPoly::one());
        UniPoly::new(var, coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(MultiPoly::zero)
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().unwrap().as_scalar().map(|s| s.is_one()) == Some(true)
    }

    /// The non-leading coefficients (z₁, …, z_n) of a monic polynomial, in
    /// descending order of the power they accompany.
    pub fn descending_tail(&self) -> Vec<MultiPoly> {
        self.coeffs[..self.degree()].iter().rev().cloned().collect()
    }

    pub fn derivative(&self) -> UniPoly {
        if self.degree() == 0 {
            return UniPoly::new(&self.var, vec![MultiPoly::zero()]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Scalar::from_int(k as i64)))
            .collect();
        UniPoly::new(&self.var, coeffs)
    }

    /// Expand into a single multivariate polynomial including the distinguished
    /// variable.
    pub fn expand(&self) -> MultiPoly {
        let x = MultiPoly::var(&self.var);
        let mut acc = MultiPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc.add(&c.mul(&x.pow(k as u32)));
        }
        acc
    }

    /// Taylor shift: the coefficients of P(λ + c), computed by the in-place
    /// Horner scheme (exact over the coefficient ring).
    pub fn shift(&self, c: &MultiPoly) -> UniPoly {
        let n = self.degree();
        let mut a = self.coeffs.clone();
        for i in 0..n {
            for j in (i..n).rev() {
                a[j] = a[j].add(&c.mul(&a[j + 1]));
            }
        }
        UniPoly::new(&self.var, a)
    }

    pub fn eval_scalar(&self, x: &Scalar) -> MultiPoly {
        // Horner evaluation at a scalar point of the distinguished variable.
        let mut acc = MultiPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(x).add(c);
        }
        acc
    }
}

/// The Sylvester resultant of `f` and `g` with respect to their common
/// variable, computed exactly by Bareiss elimination over the coefficient ring.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<MultiPoly, UniPolyError> {
    if f.is_zero() || g.is_zero() {
        return Err(UniPolyError::ZeroPolynomial);
    }
    let (n, m) = (f.degree(), g.degree());
    let size = n + m;
    let mut mat = vec![vec![MultiPoly::zero(); size]; size];
    // m rows of f's coefficients (descending), then n rows of g's.
    for (r, row) in mat.iter_mut().enumerate().take(m) {
        for k in 0..=n {
            row[r + k] = f.coeff(n - k);
        }
    }
    for r in 0..n {
        for k in 0..=m {
            mat[m + r][r + k] = g.coeff(m - k);
        }
    }
    Ok(bareiss_determinant(mat))
}

/// Fraction-free determinant: every division below is exact in the
/// coefficient ring, so no fractions of polynomials ever appear.
pub fn bareiss_determinant(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut sign = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss division is always exact");
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Naive determinant by fraction-full Gaussian elimination over the scalar
/// field; the independent oracle for `bareiss_determinant` on scalar matrices.
pub fn naive_determinant(mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = Scalar::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    det = det.neg();
                }
                None => return Scalar::zero(),
            }
        }
        let pivot = m[k][k].clone();
        det = det.mul(&pivot);
        for i in k + 1..n {
            let factor = m[i][k].div(&pivot);
            #[allow(clippy::needless_range_loop)] // rows i and k are borrowed together
            for j in k..n {
                let sub = factor.mul(&m[k][j]);
                m[i][j] = m[i][j].sub(&sub);
            }
        }
    }
    det
}

/// The discriminant of a monic polynomial of degree n ≥ 2:
/// (−1)^{n(n−1)/2} · Res(f, f′). With this sign the result equals
/// ∏_{i<j}(qᵢ − qⱼ)² on the roots; in degree two it is z₁² − 4z₂.
pub fn discriminant(f: &UniPoly) -> Result<MultiPoly, UniPolyError> {
    if !f.is_monic() {
        return Err(UniPolyError::NotMonic);
    }
    let n = f.degree();
    if n < 2 {
        return Err(UniPolyError::DegreeTooSmall(n));
    }
    let res = resultant(f, &f.derivative())?;
    if (n * (n - 1) / 2) % 2 == 1 {
        Ok(res.neg())
    } else {
        Ok(res)
    }
}

/// All complex roots of a monic polynomial given by its scalar coefficients in
/// ascending order (constant first, leading 1 last). Aberth–Ehrlich iteration
/// with a Durand–Kerner fallback; every returned root is Newton-polished.
pub fn roots(coeffs_ascending: &[Cplx], tol: f64) -> Result<Vec<Cplx>, UniPolyError> {
    let n = coeffs_ascending.len() - 1;
    if n == 0 {
        return Ok(vec![]);
    }
    let lead = coeffs_ascending[n];
    let a: Vec<Cplx> = coeffs_ascending.iter().map(|c| *c / lead).collect();

    let eval = |x: Cplx| -> (Cplx, Cplx) {
        // Horner for P and P'.
        let mut p = Cplx::ZERO;
        let mut dp = Cplx::ZERO;
        for c in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + *c;
        }
        (p, dp)
    };

    let radius = 1.0 + a.iter().take(n).map(|c| c.abs()).fold(0.0, f64::max);
    let initial = |offset: f64| -> Vec<Cplx> {
        (0..n)
            .map(|k| {
                let th = std::f64::consts::TAU * (k as f64) / (n as f64) + offset;
                Cplx::new(radius * th.cos(), radius * th.sin())
            })
            .collect()
    };

    let aberth = |mut zs: Vec<Cplx>| -> Option<Vec<Cplx>> {
        for _ in 0..400 {
            let mut done = true;
            for i in 0..n {
                let (p, dp) = eval(zs[i]);
                if p.abs() <= tol * 1e-3 {
                    continue;
                }
                let newton = if dp.abs() > 0.0 { p / dp } else { p };
                let mut s = Cplx::ZERO;
                for j in 0..n {
                    if j != i {
                        s = s + (zs[i] - zs[j]).recip();
                    }
                }
                let denom = Cplx::ONE - newton * s;
                let step = if denom.abs() > 1e-300 {
                    newton / denom
                } else {
                    newton
                };
                zs[i] = zs[i] - step;
                if step.abs() > tol * 1e-3 {
                    done = false;
                }
            }
            if done {
                return Some(zs);
            }
        }
        None
    };

    let durand_kerner = |mut zs: Vec<Cplx>| -> Option<Vec<Cplx>> {
        for _ in 0..2000 {
            let mut maxstep = 0.0f64;
            for i in 0..n {
                let (p, _) = eval(zs[i]);
                let mut denom = Cplx::ONE;
                for j in 0..n {
                    if j != i {
                        denom = denom * (zs[i] - zs[j]);
                    }
                }
                if denom.abs() < 1e-300 {
                    continue;
                }
                let step = p / denom;
                zs[i] = zs[i] - step;
                maxstep = maxstep.max(step.abs());
            }
            if maxstep <= tol * 1e-3 {
                return Some(zs);
            }
        }
        None
    };

    let polished = |mut zs: Vec<Cplx>| -> Option<Vec<Cplx>> {
        for z in zs.iter_mut() {
            for _ in 0..50 {
                let (p, dp) = eval(*z);
                if p.abs() <= tol || dp.abs() == 0.0 {
                    break;
                }
                *z = *z - p / dp;
            }
        }
        if zs.iter().all(|&z| eval(z).0.abs() <= tol) {
            Some(zs)
        } else {
            None
        }
    };

    for offset in [0.4, 1.1, 1.9] {
        if let Some(zs) = aberth(initial(offset)).and_then(&polished) {
            return Ok(zs);
        }
        if let Some(zs) = durand_kerner(initial(offset)).and_then(&polished) {
            return Ok(zs);
        }
    }
    Err(UniPolyError::NoConvergence(400))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zvar(i: usize) -> MultiPoly {
        MultiPoly::var(&format!("z{i}"))
    }

    #[test]
    fn resultant_linear_case() {
        // Res(λ − a, λ − b) = a − b.
        let f = UniPoly::new("l", vec![MultiPoly::var("a").neg(), MultiPoly::one()]);
        let g = UniPoly::new("l", vec![MultiPoly::var("b").neg(), MultiPoly::one()]);
        let r = resultant(&f, &g).unwrap();
        assert_eq!(r, MultiPoly::var("a").sub(&MultiPoly::var("b")));
    }

    #[test]
    fn resultant_quadratic_with_derivative() {
        // Res(λ² + z1λ + z2, 2λ + z1) = 4z2 − z1².
        let f = UniPoly::monic_from_descending("l", &[zvar(1), zvar(2)]);
        let r = resultant(&f, &f.derivative()).unwrap();
        let expect = zvar(2).scale(&Scalar::from_int(4)).sub(&zvar(1).pow(2));
        assert_eq!(r, expect);
    }

    #[test]
    fn resultant_of_two_quadratics() {
        // Res(λ²−1, λ²−4) = ∏(qᵢ − rⱼ) over roots {±1} × {±2} = 9.
        let f = UniPoly::from_scalars(
            "l",
            vec![Scalar::from_int(-1), Scalar::zero(), Scalar::one()],
        );
        let g = UniPoly::from_scalars(
            "l",
            vec![Scalar::from_int(-4), Scalar::zero(), Scalar::one()],
        );
        assert_eq!(
            resultant(&f, &g).unwrap().as_scalar().unwrap(),
            Scalar::from_int(9)
        );
    }

    #[test]
    fn discriminant_examples() {
        // Symbolic degree two: z1² − 4z2.
        let f = UniPoly::monic_from_descending("l", &[zvar(1), zvar(2)]);
        let d = discriminant(&f).unwrap();
        assert_eq!(d, zvar(1).pow(2).sub(&zvar(2).scale(&Scalar::from_int(4))));
        // Roots {1,2,3}: discriminant 4.
        let g = UniPoly::from_scalars(
            "l",
            vec![
                Scalar::from_int(-6),
                Scalar::from_int(11),
                Scalar::from_int(-6),
                Scalar::one(),
            ],
        );
        assert_eq!(
            discriminant(&g).unwrap().as_scalar().unwrap(),
            Scalar::from_int(4)
        );
        // λ⁴ − 1: discriminant −256.
        let h = UniPoly::from_scalars(
            "l",
            vec![
                Scalar::from_int(-1),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::zero(),
                Scalar::one(),
            ],
        );
        assert_eq!(
            discriminant(&h).unwrap().as_scalar().unwrap(),
            Scalar::from_int(-256)
        );
    }

    #[test]
    fn taylor_shift() {
        // (λ + 1)² from λ² shifted by 1.
        let f = UniPoly::from_scalars("l", vec![Scalar::zero(), Scalar::zero(), Scalar::one()]);
        let s = f.shift(&MultiPoly::one());
        assert_eq!(
            s.coeffs(),
            &[MultiPoly::one(), MultiPoly::from_int(2), MultiPoly::one()]
        );
    }

    #[test]
    fn roots_of_quartic_unity() {
        // λ⁴ = 1.
        let c: Vec<Cplx> = vec![
            Cplx::new(-1.0, 0.0),
            Cplx::ZERO,
            Cplx::ZERO,
            Cplx::ZERO,
            Cplx::ONE,
        ];
        let rs = roots(&c, 1e-12).unwrap();
        assert_eq!(rs.len(), 4);
        for r in rs {
            assert!((r.powi(4) - Cplx::ONE).abs() < 1e-9);
        }
    }
}

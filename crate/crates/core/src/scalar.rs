//! The scalar tower: exact rationals, quadratic extensions ℚ(δ) with
//! δ² ∈ {−1, −3}, and double-precision complex numbers.
//!
//! ℚ(i) and ℚ(i√3) are the only extensions the exact identities need: ℚ(i)
//! houses Gaussian points and fourth roots of unity, ℚ(i√3) houses sixth roots
//! of unity and the constants a³ = (3/2)δ, b² = 3δ of the quartic endomorphism.
//! Anything requiring roots of unity of order > 6 lives in `Complex`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::fmt;
use thiserror::Error;

/// Errors raised by scalar parsing and field-compatibility checks.
#[derive(Debug, Error)]
pub enum ScalarError {
    #[error("cannot mix the exact fields Q(sqrt{0}) and Q(sqrt{1})")]
    FieldMismatch(i32, i32),
    #[error("malformed scalar: {0}")]
    Parse(String),
    #[error("division by zero scalar")]
    DivisionByZero,
}

/// A lightweight complex number for the floating-point paths.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl Cplx {
    pub const ZERO: Cplx = Cplx { re: 0.0, im: 0.0 };
    pub const ONE: Cplx = Cplx { re: 1.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Cplx { re, im }
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(self) -> Self {
        Cplx::new(self.re, -self.im)
    }

    pub fn recip(self) -> Self {
        let n = self.re * self.re + self.im * self.im;
        Cplx::new(self.re / n, -self.im / n)
    }

    /// Principal branch of the complex power with a real exponent.
    pub fn powf(self, p: f64) -> Self {
        if self.abs() == 0.0 {
            return Cplx::ZERO;
        }
        let r = self.abs().powf(p);
        let th = self.im.atan2(self.re) * p;
        Cplx::new(r * th.cos(), r * th.sin())
    }

    pub fn powi(self, mut k: i64) -> Self {
        let mut base = if k < 0 {
            k = -k;
            self.recip()
        } else {
            self
        };
        let mut acc = Cplx::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// e^{2πi k/n}, the n-th roots of unity.
    pub fn root_of_unity(k: i64, n: i64) -> Self {
        let th = std::f64::consts::TAU * (k as f64) / (n as f64);
        Cplx::new(th.cos(), th.sin())
    }
}

impl std::ops::Add for Cplx {
    type Output = Cplx;
    fn add(self, o: Cplx) -> Cplx {
        Cplx::new(self.re + o.re, self.im + o.im)
    }
}
impl std::ops::Sub for Cplx {
    type Output = Cplx;
    fn sub(self, o: Cplx) -> Cplx {
        Cplx::new(self.re - o.re, self.im - o.im)
    }
}
impl std::ops::Mul for Cplx {
    type Output = Cplx;
    fn mul(self, o: Cplx) -> Cplx {
        Cplx::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}
impl std::ops::Div for Cplx {
    type Output = Cplx;
    #[allow(clippy::suspicious_arithmetic_impl)] // division as multiplication by the reciprocal
    fn div(self, o: Cplx) -> Cplx {
        self * o.recip()
    }
}
impl std::ops::Neg for Cplx {
    type Output = Cplx;
    fn neg(self) -> Cplx {
        Cplx::new(-self.re, -self.im)
    }
}

/// A scalar: exact rational, exact quadratic-extension element a + bδ with
/// δ² = d ∈ {−1, −3}, or a double-precision complex number.
///
/// Invariants: rationals are kept in lowest terms with positive denominator
/// (enforced by `BigRational`), and a quadratic element with b = 0 is demoted
/// to `Rational`, so structural equality is canonical on the exact levels.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Quad {
        d: i32,
        a: BigRational,
        b: BigRational,
    },
    Complex(Cplx),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(k: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// a + bδ with δ² = d; demotes to `Rational` when b = 0.
    pub fn quad(d: i32, a: BigRational, b: BigRational) -> Self {
        assert!(d == -1 || d == -3, "only Q(i) and Q(sqrt-3) are supported");
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Quad { d, a, b }
        }
    }

    /// Convenient integer-entry constructor for a + bδ.
    pub fn quad_int(d: i32, a: i64, b: i64) -> Self {
        Scalar::quad(
            d,
            BigRational::from_integer(BigInt::from(a)),
            BigRational::from_integer(BigInt::from(b)),
        )
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Complex(Cplx::new(re, im))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Quad { a, b, .. } => a.is_zero() && b.is_zero(),
            Scalar::Complex(c) => c.re == 0.0 && c.im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
            || matches!(self, Scalar::Complex(c) if c.re == 1.0 && c.im == 0.0)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Complex(_))
    }

    /// The quadratic field tag, if the value genuinely lives in an extension.
    pub fn quad_field(&self) -> Option<i32> {
        match self {
            Scalar::Quad { d, .. } => Some(*d),
            _ => None,
        }
    }

    pub fn to_cplx(&self) -> Cplx {
        match self {
            Scalar::Rational(r) => Cplx::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Quad { d, a, b } => {
                let s = (-(*d) as f64).sqrt();
                Cplx::new(
                    a.to_f64().unwrap_or(f64::NAN),
                    b.to_f64().unwrap_or(f64::NAN) * s,
                )
            }
            Scalar::Complex(c) => *c,
        }
    }

    fn rat_parts(&self) -> Option<(i32, BigRational, BigRational)> {
        match self {
            Scalar::Rational(r) => Some((0, r.clone(), BigRational::zero())),
            Scalar::Quad { d, a, b } => Some((*d, a.clone(), b.clone())),
            Scalar::Complex(_) => None,
        }
    }

    /// Promote a pair to a common level. Mixing the two distinct exact
    /// extensions is a contract violation and panics; callers that accept
    /// external input validate field compatibility first.
    fn promoted(x: &Scalar, y: &Scalar) -> PromotedPair {
        match (x.rat_parts(), y.rat_parts()) {
            (Some((d1, a1, b1)), Some((d2, a2, b2))) => {
                let d = match (d1, d2) {
                    (0, d) | (d, 0) => d,
                    (d1, d2) if d1 == d2 => d1,
                    (d1, d2) => panic!("{}", ScalarError::FieldMismatch(d1, d2)),
                };
                PromotedPair::Exact(d, a1, b1, a2, b2)
            }
            _ => PromotedPair::Float(x.to_cplx(), y.to_cplx()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quad { d, a, b } => Scalar::Quad {
                d: *d,
                a: -a,
                b: -b,
            },
            Scalar::Complex(c) => Scalar::Complex(-*c),
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match Scalar::promoted(self, o) {
            PromotedPair::Exact(d, a1, b1, a2, b2) => Scalar::quad_or_rat(d, a1 + a2, b1 + b2),
            PromotedPair::Float(x, y) => Scalar::Complex(x + y),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match Scalar::promoted(self, o) {
            PromotedPair::Exact(d, a1, b1, a2, b2) => {
                let dd = BigRational::from_integer(BigInt::from(d));
                Scalar::quad_or_rat(d, &a1 * &a2 + &b1 * &b2 * dd, &a1 * &b2 + &b1 * &a2)
            }
            PromotedPair::Float(x, y) => Scalar::Complex(x * y),
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "{}", ScalarError::DivisionByZero);
        match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Quad { d, a, b } => {
                // (a + bδ)⁻¹ = (a − bδ) / (a² − d b²)
                let dd = BigRational::from_integer(BigInt::from(*d));
                let n = a * a - dd * (b * b);
                Scalar::quad(*d, a / &n, -(b / &n))
            }
            Scalar::Complex(c) => Scalar::Complex(c.recip()),
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    pub fn pow(&self, k: i64) -> Scalar {
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Scalar::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    fn quad_or_rat(d: i32, a: BigRational, b: BigRational) -> Scalar {
        if d == 0 || b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Quad { d, a, b }
        }
    }

    /// Distance in ℂ after conversion; the float-mode comparison primitive.
    pub fn dist(&self, o: &Scalar) -> f64 {
        (self.to_cplx() - o.to_cplx()).abs()
    }

    /// Exact equality on the exact levels; distance ≤ tol when a float is involved.
    pub fn close(&self, o: &Scalar, tol: f64) -> bool {
        if self.is_exact() && o.is_exact() {
            self == o
        } else {
            self.dist(o) <= tol
        }
    }

    /// Serialize per the external contract: rationals as "p" or "p/q" strings,
    /// quadratic elements as {"field": "Q(i)"|"Q(sqrt-3)", "value": "a+b*d"},
    /// complex values as [re, im].
    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Rational(r) => Value::String(fmt_rat(r)),
            Scalar::Quad { d, a, b } => json!({
                "field": if *d == -1 { "Q(i)" } else { "Q(sqrt-3)" },
                "value": format!("{}+{}*d", fmt_rat(a), fmt_rat(b)),
            }),
            Scalar::Complex(c) => json!([c.re, c.im]),
        }
    }

    /// Parse the formats produced by [`Scalar::to_json`]; also accepts bare
    /// JSON integers (rationals) and non-integer numbers (complex).
    pub fn from_json(v: &Value) -> Result<Scalar, ScalarError> {
        match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Scalar::from_int(i))
                } else {
                    Ok(Scalar::complex(n.as_f64().unwrap(), 0.0))
                }
            }
            Value::String(s) => Ok(Scalar::Rational(parse_rat(s)?)),
            Value::Array(a) if a.len() == 2 => {
                let re = a[0]
                    .as_f64()
                    .ok_or_else(|| ScalarError::Parse(v.to_string()))?;
                let im = a[1]
                    .as_f64()
                    .ok_or_else(|| ScalarError::Parse(v.to_string()))?;
                Ok(Scalar::complex(re, im))
            }
            Value::Object(o) => {
                let field = o
                    .get("field")
                    .and_then(|f| f.as_str())
                    .ok_or_else(|| ScalarError::Parse(v.to_string()))?;
                let d = match field {
                    "Q(i)" => -1,
                    "Q(sqrt-3)" => -3,
                    _ => return Err(ScalarError::Parse(format!("unknown field {field}"))),
                };
                let val = o
                    .get("value")
                    .and_then(|f| f.as_str())
                    .ok_or_else(|| ScalarError::Parse(v.to_string()))?;
                let body = val
                    .strip_suffix("*d")
                    .ok_or_else(|| ScalarError::Parse(val.to_string()))?;
                let cut = body[1..]
                    .rfind('+')
                    .map(|i| i + 1)
                    .or_else(|| body[1..].rfind('-').map(|i| i + 1))
                    .ok_or_else(|| ScalarError::Parse(val.to_string()))?;
                let a = parse_rat(&body[..cut])?;
                let mut bstr = &body[cut..];
                let mut sign = BigRational::one();
                if let Some(rest) = bstr.strip_prefix('+') {
                    bstr = rest;
                } else if let Some(rest) = bstr.strip_prefix('-') {
                    bstr = rest;
                    sign = -sign;
                }
                Ok(Scalar::quad(d, a, sign * parse_rat(bstr)?))
            }
            _ => Err(ScalarError::Parse(v.to_string())),
        }
    }
}

#[allow(clippy::large_enum_variant)]
enum PromotedPair {
    Exact(i32, BigRational, BigRational, BigRational, BigRational),
    Float(Cplx, Cplx),
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rat(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
    let q: BigInt = den.parse().map_err(|_| ScalarError::Parse(s.to_string()))?;
    if q.is_zero() {
        return Err(ScalarError::Parse(s.to_string()));
    }
    Ok(BigRational::new(p, q))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (
                Scalar::Quad { d, a, b },
                Scalar::Quad {
                    d: d2,
                    a: a2,
                    b: b2,
                },
            ) => d == d2 && a == a2 && b == b2,
            (Scalar::Complex(a), Scalar::Complex(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rat(r)),
            Scalar::Quad { d, a, b } => {
                let tag = if *d == -1 { "i" } else { "i*sqrt(3)" };
                let babs = fmt_rat(&b.abs());
                let sgn = if b.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}*{}", fmt_rat(a), sgn, babs, tag)
            }
            Scalar::Complex(c) => write!(f, "({}+{}i)", c.re, c.im),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(self, rhs)
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar::$method(&self, &rhs)
            }
        }
    };
}
scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

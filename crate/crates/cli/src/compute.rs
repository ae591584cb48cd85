//! The compute subcommands: each reads one JSON value and produces one JSON
//! value, mapping core errors onto the exit-code contract.

use crate::{CliError, Mode};
use confspace_core::autgroup::{covering_preimages, tame_affine_map, AutError, TriangularAut};
use confspace_core::configspace::{self, ConfigError, Involution};
use confspace_core::elliptic::{
    cubic_resolvent, j_invariant, mu12_base, mu12_quartic, tschirnhausen, BasePoint, EllipticError,
    Quartic,
};
use confspace_core::scalar::{Cplx, ScalarError};
use confspace_core::Scalar;
use serde_json::{json, Value};

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<AutError> for CliError {
    fn from(e: AutError) -> Self {
        match e {
            AutError::Parse(m) => CliError::Malformed(m),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<EllipticError> for CliError {
    fn from(e: EllipticError) -> Self {
        match e {
            EllipticError::Parse(m) => CliError::Malformed(m),
            other => CliError::Domain(other.to_string()),
        }
    }
}

fn field(input: &Value, key: &str) -> Result<Value, CliError> {
    input
        .get(key)
        .cloned()
        .ok_or_else(|| CliError::Malformed(format!("missing field \"{key}\"")))
}

fn scalar_field(input: &Value, key: &str) -> Result<Scalar, CliError> {
    Ok(Scalar::from_json(&field(input, key)?)?)
}

fn scalar_list(input: &Value, key: &str) -> Result<Vec<Scalar>, CliError> {
    let arr = field(input, key)?;
    let arr = arr
        .as_array()
        .ok_or_else(|| CliError::Malformed(format!("\"{key}\" must be an array")))?;
    arr.iter().map(|v| Ok(Scalar::from_json(v)?)).collect()
}

fn scalars_json(points: &[Scalar]) -> Value {
    Value::Array(points.iter().map(Scalar::to_json).collect())
}

pub fn discriminant(input: &Value) -> Result<Value, CliError> {
    let d = if input.get("points").is_some() {
        configspace::disc_config(&scalar_list(input, "points")?)
    } else {
        configspace::disc_coeffs(&scalar_list(input, "z")?)
    };
    Ok(json!({"D": d.to_json()}))
}

pub fn vieta(input: &Value) -> Result<Value, CliError> {
    let z = configspace::vieta_map(&scalar_list(input, "points")?);
    Ok(json!({"z": scalars_json(&z)}))
}

pub fn roots(input: &Value, tol: f64) -> Result<Value, CliError> {
    let z = scalar_list(input, "z")?;
    let mut rts =
        configspace::roots_numeric(&z, tol).map_err(|e| CliError::Domain(e.to_string()))?;
    rts.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    let out: Vec<Value> = rts.iter().map(|r| json!([r.re, r.im])).collect();
    Ok(json!({"roots": out}))
}

pub fn apply_aut(input: &Value) -> Result<Value, CliError> {
    let f = TriangularAut::from_json(&field(input, "aut")?)?;
    let q = scalar_list(input, "points")?;
    let image = f.apply(&q)?;
    Ok(json!({"points": scalars_json(&image)}))
}

pub fn compose_aut(input: &Value) -> Result<Value, CliError> {
    let outer = TriangularAut::from_json(&field(input, "outer")?)?;
    let inner = TriangularAut::from_json(&field(input, "inner")?)?;
    Ok(outer.compose(&inner)?.to_json())
}

pub fn aut_order(input: &Value, tol: f64) -> Result<Value, CliError> {
    let f = TriangularAut::from_json(&field(input, "aut")?)?;
    let bound = input.get("bound").and_then(Value::as_u64).unwrap_or(24) as u32;
    Ok(json!({"order": f.order(bound, tol), "bound": bound}))
}

pub fn tame_map(input: &Value) -> Result<Value, CliError> {
    let f = TriangularAut::from_json(&field(input, "aut")?)?;
    let q = scalar_list(input, "points")?;
    let m = tame_affine_map(&f, &q)?;
    Ok(json!({"a": m.a.to_json(), "b": m.b.to_json()}))
}

fn quartic_from(input: &Value) -> Result<Quartic, CliError> {
    Ok(Quartic::new(
        scalar_field(input, "z2")?,
        scalar_field(input, "z3")?,
        scalar_field(input, "z4")?,
    ))
}

pub fn resolvent(input: &Value) -> Result<Value, CliError> {
    let f = quartic_from(input)?;
    let (a, b, c) = cubic_resolvent(&f);
    Ok(json!({"cubic": [a.to_json(), b.to_json(), c.to_json()]}))
}

pub fn tschirnhausen_cmd(input: &Value) -> Result<Value, CliError> {
    let f = quartic_from(input)?;
    Ok(tschirnhausen(&f).to_json())
}

pub fn j_invariant_cmd(input: &Value) -> Result<Value, CliError> {
    let p = BasePoint::new(scalar_field(input, "u2")?, scalar_field(input, "u3")?);
    let rep = j_invariant(&p)?;
    Ok(json!({
        "j": rep.oracle.to_json(),
        "stated": rep.stated.to_json(),
        "sign_mismatch": rep.sign_mismatch,
    }))
}

/// ζ₁₂^j as an exact scalar, when the power lies in ℚ, ℚ(i), or ℚ(i√3).
fn exact_zeta12_pow(j: i64) -> Option<Scalar> {
    let half = |a: i64, b: i64| Scalar::quad_int(-3, a, b).mul(&Scalar::ratio(1, 2));
    match j.rem_euclid(12) {
        0 => Some(Scalar::one()),
        6 => Some(Scalar::from_int(-1)),
        3 => Some(Scalar::quad_int(-1, 0, 1)),
        9 => Some(Scalar::quad_int(-1, 0, -1)),
        2 => Some(half(1, 1)),
        4 => Some(half(-1, 1)),
        8 => Some(half(-1, -1)),
        10 => Some(half(1, -1)),
        _ => None,
    }
}

/// Multiply a scalar by ζ₁₂^j exactly, refusing field mixtures.
fn exact_zeta_mul(z: &Scalar, j: i64) -> Result<Scalar, CliError> {
    let zeta = exact_zeta12_pow(j).ok_or_else(|| {
        CliError::Domain("exact mode requires a root of unity of order at most 6".into())
    })?;
    match (z.quad_field(), zeta.quad_field()) {
        (Some(a), Some(b)) if a != b => Err(CliError::Domain(
            "cannot mix the two quadratic extensions exactly; use --mode float".into(),
        )),
        _ => {
            if !z.is_exact() {
                return Err(CliError::Domain(
                    "exact mode requires exact coordinates; use --mode float".into(),
                ));
            }
            Ok(z.mul(&zeta))
        }
    }
}

pub fn mu12(input: &Value, mode: Mode) -> Result<Value, CliError> {
    let k = field(input, "k")?
        .as_i64()
        .ok_or_else(|| CliError::Malformed("\"k\" must be an integer".into()))?;
    if mode == Mode::Exact && gcd(k.rem_euclid(12), 12) == 1 {
        return Err(CliError::Domain(
            "exact mode rejects roots of unity of order above 6; use --mode float".into(),
        ));
    }
    if let Some(q) = input.get("quartic") {
        let f = quartic_from(q)?;
        let image = match mode {
            Mode::Exact => Quartic::new(
                exact_zeta_mul(&f.z2, 2 * k)?,
                exact_zeta_mul(&f.z3, 3 * k)?,
                exact_zeta_mul(&f.z4, 4 * k)?,
            ),
            Mode::Float => mu12_quartic(Cplx::root_of_unity(k, 12), &f)?,
        };
        Ok(json!({"quartic": image.to_json()}))
    } else if let Some(b) = input.get("base") {
        let p = BasePoint::new(scalar_field(b, "u2")?, scalar_field(b, "u3")?);
        let image = match mode {
            Mode::Exact => {
                BasePoint::new(exact_zeta_mul(&p.u2, 4 * k)?, exact_zeta_mul(&p.u3, 6 * k)?)
            }
            Mode::Float => mu12_base(Cplx::root_of_unity(k, 12), &p)?,
        };
        Ok(json!({"base": image.to_json()}))
    } else {
        Err(CliError::Malformed(
            "expected a \"quartic\" or a \"base\" object".into(),
        ))
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn preimages(input: &Value, tol: f64) -> Result<Value, CliError> {
    let q = scalar_list(input, "points")?;
    let m = input.get("m").and_then(Value::as_u64).unwrap_or(1) as u32;
    let c = match input.get("c") {
        Some(v) => Scalar::from_json(v)?.to_cplx(),
        None => Cplx::ONE,
    };
    let pre = covering_preimages(c, m, &q, tol)?;
    let out: Vec<Value> = pre
        .iter()
        .map(|cfg| Value::Array(cfg.iter().map(|z| json!([z.re, z.im])).collect()))
        .collect();
    Ok(json!({"count": pre.len(), "preimages": out}))
}

pub fn h_n_cmd(input: &Value) -> Result<Value, CliError> {
    let q = scalar_list(input, "points")?;
    Ok(json!({"h": configspace::h_n(&q)?.to_json()}))
}

pub fn sigma_iso(input: &Value) -> Result<Value, CliError> {
    let map = field(input, "map")?;
    let map = map
        .as_str()
        .ok_or_else(|| CliError::Malformed("\"map\" must be a string".into()))?
        .to_string();
    let q = scalar_list(input, "points")?;
    match map.as_str() {
        "phi" => Ok(json!({"points": scalars_json(&configspace::sigma_blc_phi(&q)?)})),
        "psi" => Ok(json!({"points": scalars_json(&configspace::sigma_blc_psi(&q))})),
        "eta" => {
            let (ratios, y) = configspace::eta(&q)?;
            Ok(json!({"points": scalars_json(&ratios), "y": y.to_json()}))
        }
        "eta-inv" => {
            let y = scalar_field(input, "y")?;
            Ok(json!({"points": scalars_json(&configspace::eta_inv(&q, &y))}))
        }
        "phi-tilde" => Ok(json!({"points": scalars_json(&configspace::phi_tilde(&q))})),
        "phi-tilde-inv" => Ok(json!({"points": scalars_json(&configspace::phi_tilde_inv(&q))})),
        "iota" | "tau-inv" | "upsilon" | "sigma-prime" | "rho" => {
            let which = match map.as_str() {
                "iota" => Involution::Iota,
                "tau-inv" => Involution::TauInv,
                "upsilon" => Involution::Upsilon,
                "sigma-prime" => Involution::SigmaPrime,
                _ => Involution::Rho,
            };
            Ok(json!({"points": scalars_json(&configspace::involution(&q, which)?)}))
        }
        "u" => {
            if q.len() != 2 {
                return Err(CliError::Domain(
                    "the coefficient-plane involution takes exactly two coordinates".into(),
                ));
            }
            let (z1, z2) = configspace::u_involution(&q[0], &q[1]);
            Ok(json!({"points": scalars_json(&[z1, z2])}))
        }
        other => Err(CliError::Malformed(format!("unknown map \"{other}\""))),
    }
}

pub fn mobius(input: &Value) -> Result<Value, CliError> {
    let q = scalar_list(input, "points")?;
    let perm_v = field(input, "perm")?;
    let perm: Vec<usize> = perm_v
        .as_array()
        .ok_or_else(|| CliError::Malformed("\"perm\" must be an array".into()))?
        .iter()
        .map(|v| {
            v.as_u64().map(|x| x as usize).ok_or_else(|| {
                CliError::Malformed("\"perm\" entries must be positive integers".into())
            })
        })
        .collect::<Result<_, _>>()?;
    if perm.len() != q.len() + 3 {
        return Err(CliError::Domain(format!(
            "a permutation of {} slots is required for {} points",
            q.len() + 3,
            q.len()
        )));
    }
    let mut seen = vec![false; perm.len()];
    for &p in &perm {
        if p == 0 || p > perm.len() || seen[p - 1] {
            return Err(CliError::Malformed("\"perm\" is not a permutation".into()));
        }
        seen[p - 1] = true;
    }
    let image = configspace::mobius_action(&perm, &q)?;
    Ok(json!({"points": scalars_json(&image)}))
}

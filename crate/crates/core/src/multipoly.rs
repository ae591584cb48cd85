//! Sparse multivariate polynomials over the scalar tower.
//!
//! Terms are stored in a map keyed by exponent vectors under the graded
//! lexicographic order, with no zero coefficients, so representation is
//! canonical and equality is structural. Variables are identified by name and
//! aligned automatically when two polynomials are combined.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// An exponent vector ordered graded-lexicographically (total degree first,
/// then lexicographic on the exponents).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial. The variable list is sorted by name and
/// every stored exponent vector has the same length as that list. Equality is
/// semantic: variables that appear in no monomial are ignored.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, Scalar>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: vec![],
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(vec![]), c);
        }
        MultiPoly {
            vars: vec![],
            terms,
        }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Scalar::one())
    }

    pub fn from_int(k: i64) -> Self {
        MultiPoly::constant(Scalar::from_int(k))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Mono(vec![1]), Scalar::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// c · x^e for a single variable.
    pub fn monomial(name: &str, e: u32, c: Scalar) -> Self {
        MultiPoly::var(name).pow(e).scale(&c)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().degree() == 0)
    }

    /// The value of a constant polynomial, if it is one.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            Some(Scalar::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms as (variable names with exponents, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    fn prune(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    /// Re-express the polynomial over a superset of its variables
    /// (`newvars` must be sorted and contain all current variables).
    fn embed(&self, newvars: &[String]) -> MultiPoly {
        if self.vars == newvars {
            return self.clone();
        }
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| newvars.binary_search(v).expect("embed: missing variable"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; newvars.len()];
                for (j, &exp) in m.0.iter().enumerate() {
                    e[idx[j]] = exp;
                }
                (Mono(e), c.clone())
            })
            .collect();
        MultiPoly {
            vars: newvars.to_vec(),
            terms,
        }
    }

    fn aligned(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        vars.sort();
        vars.dedup();
        (self.embed(&vars), other.embed(&vars))
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.aligned(other);
        for (m, c) in b.terms {
            let entry = a.terms.entry(m).or_insert_with(Scalar::zero);
            *entry = entry.add(&c);
        }
        a.prune()
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
        }
        .prune()
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        let (a, b) = self.aligned(other);
        let mut terms: BTreeMap<Mono, Scalar> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = Mono(ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect());
                let entry = terms.entry(m).or_insert_with(Scalar::zero);
                *entry = entry.add(&ca.mul(cb));
            }
        }
        MultiPoly {
            vars: a.vars,
            terms,
        }
        .prune()
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Evaluate fully; every variable must be assigned.
    pub fn eval(&self, env: &BTreeMap<String, Scalar>) -> Scalar {
        for v in &self.vars {
            assert!(env.contains_key(v), "eval: unassigned variable {v}");
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (j, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&env[&self.vars[j]].pow(e as i64));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute a polynomial for one variable; other variables are untouched.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> MultiPoly {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return self.clone();
        };
        // Group by the exponent of `var`, then use cached powers of `value`.
        let max_e = self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0) as usize;
        let mut powers: Vec<MultiPoly> = Vec::with_capacity(max_e + 1);
        powers.push(MultiPoly::one());
        for _ in 0..max_e {
            powers.push(powers.last().unwrap().mul(value));
        }
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut rest = m.0.clone();
            rest.remove(idx);
            let mut restvars = self.vars.clone();
            restvars.remove(idx);
            let base = MultiPoly {
                vars: restvars,
                terms: BTreeMap::from([(Mono(rest), c.clone())]),
            };
            acc = acc.add(&base.mul(&powers[e]));
        }
        acc
    }

    /// Simultaneous substitution of several variables (applied to the original
    /// polynomial, not sequentially).
    pub fn substitute_all(&self, map: &BTreeMap<String, MultiPoly>) -> MultiPoly {
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            for (j, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = match map.get(&self.vars[j]) {
                    Some(p) => p.pow(e),
                    None => MultiPoly::var(&self.vars[j]).pow(e),
                };
                term = term.mul(&factor);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn partial_derivative(&self, var: &str) -> MultiPoly {
        let Some(idx) = self.vars.iter().position(|v| v == var) else {
            return MultiPoly::zero();
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut v = m.0.clone();
            v[idx] = e - 1;
            terms.insert(Mono(v), c.mul(&Scalar::from_int(e as i64)));
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
        .prune()
    }

    fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Exact division: returns `Some(q)` with `self = q * g` when the division
    /// is exact, `None` otherwise. This is the primitive that makes
    /// fraction-free (Bareiss) elimination work over the polynomial ring.
    pub fn exact_div(&self, g: &MultiPoly) -> Option<MultiPoly> {
        assert!(!g.is_zero(), "exact_div: division by zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        if let Some(c) = g.as_scalar() {
            return Some(self.scale(&c.inv()));
        }
        let (mut r, g) = self.aligned(g);
        let (gm, gc) = {
            let (m, c) = g.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut q = MultiPoly {
            vars: r.vars.clone(),
            terms: BTreeMap::new(),
        };
        while !r.is_zero() {
            let (rm, rc) = {
                let (m, c) = r.leading().unwrap();
                (m.clone(), c.clone())
            };
            if !gm.divides(&rm) {
                return None;
            }
            let tm = Mono(rm.0.iter().zip(&gm.0).map(|(a, b)| a - b).collect());
            let tc = rc.div(&gc);
            let t = MultiPoly {
                vars: r.vars.clone(),
                terms: BTreeMap::from([(tm.clone(), tc.clone())]),
            };
            q.terms.insert(tm, tc);
            r = r.sub(&t.mul(&g));
        }
        Some(q)
    }

    /// The same polynomial with variables that occur in no monomial removed.
    pub fn pruned(&self) -> MultiPoly {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let vars: Vec<String> = used.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Mono(used.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        MultiPoly { vars, terms }
    }

    /// Whether every coefficient is within `tol` of the matching coefficient
    /// of `other` (and vice versa); exact equality when both sides are exact.
    pub fn close(&self, other: &MultiPoly, tol: f64) -> bool {
        let (a, b) = self.aligned(other);
        let keys: std::collections::BTreeSet<Mono> =
            a.terms.keys().chain(b.terms.keys()).cloned().collect();
        keys.iter().all(|m| {
            let x = a.terms.get(m).cloned().unwrap_or_else(Scalar::zero);
            let y = b.terms.get(m).cloned().unwrap_or_else(Scalar::zero);
            x.close(&y, tol)
        })
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let a = self.pruned();
        let b = other.pruned();
        a.vars == b.vars && a.terms == b.terms
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (j, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", self.vars[j])?,
                    _ => write!(f, "*{}^{}", self.vars[j], e)?,
                }
            }
        }
        Ok(())
    }
}

//! Property tests for the exact arithmetic layer: discriminant product
//! formula, Bareiss vs. naive determinants, polynomial ring axioms, and
//! substitution composition.

use confspace_core::multipoly::MultiPoly;
use confspace_core::scalar::Scalar;
use confspace_core::unipoly::{bareiss_determinant, discriminant, naive_determinant, UniPoly};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn rand_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

fn rand_gaussian(rng: &mut ChaCha8Rng) -> Scalar {
    let re = rand_rational(rng);
    let b = Scalar::ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
    if b.is_zero() {
        re
    } else {
        re.add(&b.mul(&Scalar::quad_int(-1, 0, 1)))
    }
}

fn distinct_config(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    loop {
        let q: Vec<Scalar> = (0..n).map(|_| rand_gaussian(rng)).collect();
        let distinct = (0..n).all(|i| (i + 1..n).all(|j| q[i] != q[j]));
        if distinct {
            return q;
        }
    }
}

#[test]
fn discriminant_equals_root_difference_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=5 {
        for _ in 0..200 / (n as u32) {
            let q = distinct_config(&mut rng, n);
            // Discriminant of ∏(λ − qᵢ) via the resultant machinery.
            let z = confspace_core::configspace::vieta_map(&q);
            let coeffs: Vec<MultiPoly> = z.iter().map(|c| MultiPoly::constant(c.clone())).collect();
            let f = UniPoly::monic_from_descending("lambda", &coeffs);
            let d = discriminant(&f).unwrap().eval(&BTreeMap::new());
            // Independent oracle: the squared product of root differences.
            let mut prod = Scalar::one();
            for i in 0..n {
                for j in i + 1..n {
                    let diff = q[i].sub(&q[j]);
                    prod = prod.mul(&diff).mul(&diff);
                }
            }
            assert_eq!(d, prod, "n = {n}, q = {q:?}");
        }
    }
}

#[test]
fn bareiss_matches_naive_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let rows: Vec<Vec<Scalar>> = (0..5)
            .map(|_| (0..5).map(|_| rand_rational(&mut rng)).collect())
            .collect();
        let naive = naive_determinant(rows.clone());
        let as_polys: Vec<Vec<MultiPoly>> = rows
            .iter()
            .map(|r| r.iter().map(|c| MultiPoly::constant(c.clone())).collect())
            .collect();
        let bareiss = bareiss_determinant(as_polys).eval(&BTreeMap::new());
        assert_eq!(naive, bareiss);
    }
}

fn rand_poly(rng: &mut ChaCha8Rng) -> MultiPoly {
    let vars = ["x", "y", "z"];
    let mut p = MultiPoly::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let mut term = MultiPoly::constant(rand_rational(rng));
        for v in vars {
            let e = rng.gen_range(0..=2u32);
            if e > 0 {
                term = term.mul(&MultiPoly::var(v).pow(e));
            }
        }
        p = p.add(&term);
    }
    p
}

#[test]
fn ring_axioms_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let a = rand_poly(&mut rng);
        let b = rand_poly(&mut rng);
        let c = rand_poly(&mut rng);
        assert_eq!(a.mul(&b), b.mul(&a), "commutativity");
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)), "associativity");
        assert_eq!(
            a.mul(&b.add(&c)),
            a.mul(&b).add(&a.mul(&c)),
            "distributivity"
        );
        assert_eq!(
            a.add(&b).add(&c),
            a.add(&b.add(&c)),
            "additive associativity"
        );
    }
}

#[test]
fn substitution_composes_on_disjoint_variables() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..50 {
        let p = rand_poly(&mut rng); // in x, y, z
                                     // Substitute x → q(u), y → r(v): disjoint targets, so sequential
                                     // equals simultaneous.
        let q = {
            let u = MultiPoly::var("u");
            u.pow(2).add(&MultiPoly::constant(rand_rational(&mut rng)))
        };
        let r = {
            let v = MultiPoly::var("v");
            v.scale(&rand_rational(&mut rng))
                .add(&MultiPoly::constant(rand_rational(&mut rng)))
        };
        let sequential = p.substitute("x", &q).substitute("y", &r);
        let mut map = BTreeMap::new();
        map.insert("x".to_string(), q);
        map.insert("y".to_string(), r);
        let simultaneous = p.substitute_all(&map);
        assert_eq!(sequential, simultaneous);
    }
}

#[test]
fn exact_division_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..50 {
        let a = rand_poly(&mut rng);
        let b = rand_poly(&mut rng);
        if b.is_zero() {
            continue;
        }
        let prod = a.mul(&b);
        let q = prod.exact_div(&b).expect("product divides by factor");
        assert_eq!(q, a);
    }
}

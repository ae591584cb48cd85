//! Property tests for the derivation algebra: bracket relations with balanced
//! coefficients, discriminant annihilation, Jacobi identity, flow–shift
//! correspondence, and the homomorphism property of exponential flows.

use confspace_core::derivations::{
    d_s, d_t, d_tau, disc_symbolic, flow_shift_check, lie_generators, lie_relations_check,
    Derivation,
};
use confspace_core::multipoly::MultiPoly;
use confspace_core::scalar::Scalar;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn bracket_relations_up_to_degree_six() {
    for n in 2..=6 {
        assert!(lie_relations_check(n, 6), "relations fail for n = {n}");
    }
}

#[test]
fn standard_fields_annihilate_discriminant() {
    for n in 2..=5 {
        let d = disc_symbolic(n);
        assert!(d_tau(n).apply(&d).is_zero(), "translation flow, n = {n}");
        assert!(d_t(n).apply(&d).is_zero(), "barycenter flow, n = {n}");
    }
}

#[test]
fn flow_shift_correspondence() {
    for n in 2..=5 {
        assert!(flow_shift_check(n).unwrap(), "n = {n}");
    }
}

fn field_pool(n: usize, rng: &mut ChaCha8Rng) -> Vec<Derivation> {
    let (tau, t, s) = lie_generators(n);
    let w = confspace_core::derivations::balanced_coeffs_symbolic(n);
    let b = w[rng.gen_range(0..w.len())].clone();
    vec![tau.replica(&b), tau, t, s]
}

#[test]
fn bracket_is_antisymmetric_and_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let neg = Scalar::from_int(-1);
    for n in 2..=4 {
        for _ in 0..5 {
            let pool = field_pool(n, &mut rng);
            let a = &pool[rng.gen_range(0..pool.len())];
            let b = &pool[rng.gen_range(0..pool.len())];
            let c = &pool[rng.gen_range(0..pool.len())];
            // Antisymmetry.
            assert!(a.bracket(b).add(&b.bracket(a)).is_zero());
            // Jacobi: [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0.
            let jac = a
                .bracket(&b.bracket(c))
                .add(&b.bracket(&c.bracket(a)))
                .add(&c.bracket(&a.bracket(b)));
            assert!(jac.is_zero(), "Jacobi fails for n = {n}");
            // Bilinearity in the first slot.
            let lam = Scalar::ratio(3, 7);
            let lhs = a.scale(&lam).add(b).bracket(c);
            let rhs = a.bracket(c).scale(&lam).add(&b.bracket(c));
            assert!(lhs.add(&rhs.scale(&neg)).is_zero(), "bilinearity");
        }
    }
}

#[test]
fn exponential_flow_is_ring_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in 2..=4 {
        let tau = d_tau(n);
        let zeta = MultiPoly::var("zeta");
        for _ in 0..10 {
            // Random polynomials in the coefficients.
            let f = rand_zpoly(&mut rng, n);
            let g = rand_zpoly(&mut rng, n);
            let lhs = tau.exp_flow(&zeta, &f.mul(&g), 4 * n * n + 2).unwrap();
            let rhs = tau
                .exp_flow(&zeta, &f, 4 * n * n + 2)
                .unwrap()
                .mul(&tau.exp_flow(&zeta, &g, 4 * n * n + 2).unwrap());
            assert!(lhs.sub(&rhs).is_zero(), "flow multiplicativity, n = {n}");
        }
    }
}

fn rand_zpoly(rng: &mut ChaCha8Rng, n: usize) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut term =
            MultiPoly::constant(Scalar::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
        for k in 1..=n {
            let e = rng.gen_range(0..=1u32);
            if e > 0 {
                term = term.mul(&MultiPoly::var(&format!("z{k}")));
            }
        }
        p = p.add(&term);
    }
    p
}

#[test]
fn euler_decomposes_into_the_two_torus_generators() {
    // The full scaling flow splits: Σ k·z_k ∂_k = ∂_s + ∂_t in the geometric
    // normalization.
    let neg = Scalar::from_int(-1);
    for n in 2..=5 {
        let (_, t, s) = lie_generators(n);
        let euler = confspace_core::derivations::euler(n);
        assert!(s.add(&t).add(&euler.scale(&neg)).is_zero(), "n = {n}");
        // And the implemented coordinate fields decompose the same way.
        assert!(d_s(n).add(&d_t(n)).add(&euler.scale(&neg)).is_zero());
    }
}

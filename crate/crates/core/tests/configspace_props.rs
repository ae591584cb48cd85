//! Property tests for the configuration-space maps: the discriminant chain,
//! chart round trips, the isomorphisms onto configurations of nonzero points,
//! commuting involutions, and the Möbius model of the symmetric group.

use confspace_core::configspace::{
    barycenter_project, chart_blc, chart_blc_inv, disc_coeffs, disc_config, eta, eta_inv, h_n,
    involution, mobius_action, phi_tilde, phi_tilde_inv, same_multiset, scale_all, sigma_blc_phi,
    sigma_blc_psi, vieta_map, Involution,
};
use confspace_core::scalar::Scalar;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

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
        if (0..n).all(|i| (i + 1..n).all(|j| q[i] != q[j])) {
            return q;
        }
    }
}

fn distinct_nonzero_config(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    loop {
        let q = distinct_config(rng, n);
        if q.iter().all(|p| !p.is_zero()) {
            return q;
        }
    }
}

#[test]
fn discriminant_chain_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 2..=5 {
        for _ in 0..200 / (n as u32) {
            let q = distinct_config(&mut rng, n);
            let z = vieta_map(&q);
            assert_eq!(disc_coeffs(&z), disc_config(&q), "n = {n}");
        }
    }
}

#[test]
fn chart_roundtrip_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n in 2..=6 {
        for _ in 0..25 {
            let w: Vec<Scalar> = (0..n - 1).map(|_| rand_rational(&mut rng)).collect();
            let y = rand_rational(&mut rng);
            let z = chart_blc(&w, &y);
            assert_eq!(z.len(), n);
            let (w2, y2) = chart_blc_inv(&z);
            assert_eq!((w2, y2), (w.clone(), y.clone()), "n = {n}");
            // And the other direction starting from a coefficient point.
            let q = distinct_config(&mut rng, n);
            let z = vieta_map(&q);
            let (w3, y3) = chart_blc_inv(&z);
            assert_eq!(chart_blc(&w3, &y3), z);
        }
    }
}

#[test]
fn sigma_iso_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in 4..=6 {
        let mut done = 0;
        while done < 50 {
            // Build a regular point of the balanced double-point locus:
            // {q₁,…,q_{n−2}, u, u} with u = −½Σqᵢ, all parts distinct.
            let qs = distinct_config(&mut rng, n - 2);
            let mut sum = Scalar::zero();
            for p in &qs {
                sum = sum.add(p);
            }
            let u = sum.mul(&Scalar::ratio(-1, 2));
            if qs.iter().any(|p| p == &u) {
                continue;
            }
            let mut q = qs.clone();
            q.push(u.clone());
            q.push(u);
            let image = sigma_blc_phi(&q).unwrap();
            // The image must consist of nonzero points, else retry.
            if image.iter().any(Scalar::is_zero) {
                continue;
            }
            let back = sigma_blc_psi(&image);
            assert!(same_multiset(&back, &q, 0.0), "psi∘phi = id, n = {n}");
            // And φ∘ψ = id on the image side.
            let fwd = sigma_blc_phi(&back).unwrap();
            assert!(same_multiset(&fwd, &image, 0.0), "phi∘psi = id, n = {n}");
            done += 1;
        }
    }
}

#[test]
fn eta_and_phi_tilde_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..50 {
        let q = distinct_nonzero_config(&mut rng, 4);
        let (ratios, last) = eta(&q).unwrap();
        let back = eta_inv(&ratios, &last);
        assert!(same_multiset(&back, &q, 0.0), "eta");
        let up = phi_tilde(&q);
        let down = phi_tilde_inv(&up);
        assert!(same_multiset(&down, &q, 0.0), "phi_tilde");
    }
}

#[test]
fn upsilon_and_sigma_prime_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut done = 0;
    while done < 50 {
        let q = distinct_nonzero_config(&mut rng, 4);
        let a = match involution(&q, Involution::Upsilon)
            .and_then(|r| involution(&r, Involution::SigmaPrime))
        {
            Ok(v) => v,
            Err(_) => continue,
        };
        let b = match involution(&q, Involution::SigmaPrime)
            .and_then(|r| involution(&r, Involution::Upsilon))
        {
            Ok(v) => v,
            Err(_) => continue,
        };
        assert!(same_multiset(&a, &b, 1e-9));
        done += 1;
    }
}

#[test]
fn h_function_invariances() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for n in 2..=5 {
        for _ in 0..20 {
            let q = distinct_nonzero_config(&mut rng, n);
            let h = h_n(&q).unwrap();
            // Scaling invariance.
            let c = loop {
                let c = rand_rational(&mut rng);
                if !c.is_zero() {
                    break c;
                }
            };
            assert_eq!(h_n(&scale_all(&q, &c)).unwrap(), h, "scaling");
            // Inversion invariance.
            let inv: Vec<Scalar> = q.iter().map(Scalar::inv).collect();
            assert_eq!(h_n(&inv).unwrap(), h, "inversion");
        }
    }
}

#[test]
fn mobius_restriction_is_coordinate_permutation() {
    // Inside the Möbius model for n points (acting on n+2 slots), the
    // subgroup generated by σ₁,…,σ_{n−2} permutes the first n−1 finite
    // points and acts as a plain coordinate permutation.
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let m = 3usize; // points of the configuration Q′; m + 3 slots in total
    for _ in 0..25 {
        let q: Vec<Scalar> = {
            let mut q = distinct_nonzero_config(&mut rng, m);
            while q.iter().any(|p| p.is_one()) {
                q = distinct_nonzero_config(&mut rng, m);
            }
            q
        };
        // A permutation of {1,…,m} extended by the identity on the anchors.
        let mut head: Vec<usize> = (1..=m).collect();
        for i in (1..head.len()).rev() {
            let j = rng.gen_range(0..=i);
            head.swap(i, j);
        }
        let mut perm: Vec<usize> = head.clone();
        perm.extend(m + 1..=m + 3);
        let moved = mobius_action(&perm, &q).unwrap();
        assert!(
            same_multiset(&moved, &q, 1e-9),
            "a permutation fixing the anchors acts by reordering only"
        );
    }
}

#[test]
fn barycenter_projection_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(28);
    for n in 2..=5 {
        for _ in 0..20 {
            let q = distinct_config(&mut rng, n);
            let (_, q0) = barycenter_project(&q);
            let (bc0, q00) = barycenter_project(&q0);
            assert!(bc0.is_zero());
            assert_eq!(q00, q0);
        }
    }
}

//! Property tests for the elliptic fibration and the finite-group engine.

use confspace_core::coxeter::{self, FiniteGroup};
use confspace_core::elliptic::{
    exact_surface_points, fibration_project, j_invariant, mu12_base, mu12_quartic, tschirnhausen,
};
use confspace_core::scalar::{Cplx, Scalar};

#[test]
fn exact_surface_points_project_onto_base_curve() {
    let pts = exact_surface_points(50);
    assert_eq!(pts.len(), 50);
    for f in &pts {
        assert_eq!(f.disc(), Scalar::one(), "surface membership");
        let p = fibration_project(f, 0.0).unwrap();
        assert_eq!(p.disc(), Scalar::one(), "base-curve membership");
        // The j-invariant oracle equals −2⁸3³·u₂³ on the base curve.
        let r = j_invariant(&p).unwrap();
        assert_eq!(r.oracle, p.u2.pow(3).mul(&Scalar::from_int(-6912)));
    }
}

#[test]
fn mu12_action_axiom_and_equivariance() {
    let f = confspace_core::elliptic::Quartic::new(
        Scalar::ratio(1, 2),
        Scalar::from_int(-3),
        Scalar::ratio(2, 5),
    );
    for a in 0..12u32 {
        for bpow in 0..12u32 {
            let za = Cplx::root_of_unity(a as i64, 12);
            let zb = Cplx::root_of_unity(bpow as i64, 12);
            let lhs = mu12_quartic(za, &mu12_quartic(zb, &f).unwrap()).unwrap();
            let rhs = mu12_quartic(za * zb, &f).unwrap();
            assert!(lhs.z2.close(&rhs.z2, 1e-12));
            assert!(lhs.z3.close(&rhs.z3, 1e-12));
            assert!(lhs.z4.close(&rhs.z4, 1e-12));
        }
        // Equivariance with the base action.
        let za = Cplx::root_of_unity(a as i64, 12);
        let lhs = tschirnhausen(&mu12_quartic(za, &f).unwrap());
        let rhs = mu12_base(za, &tschirnhausen(&f)).unwrap();
        assert!(lhs.u2.close(&rhs.u2, 1e-12));
        assert!(lhs.u3.close(&rhs.u3, 1e-12));
    }
}

#[test]
fn symmetric_group_orders_up_to_seven() {
    for n in 2..=7usize {
        let g = coxeter::symmetric(n);
        let expected: usize = (1..=n).product();
        assert_eq!(g.order(), expected, "order of the degree-{n} closure");
    }
}

#[test]
fn conjugacy_classes_partition_and_divide() {
    for g in [
        coxeter::symmetric(4),
        coxeter::hyperoctahedral(2),
        coxeter::hyperoctahedral(3),
    ] {
        let classes = g.conjugacy_classes();
        let total: usize = classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, g.order(), "classes partition the group");
        for c in &classes {
            assert_eq!(g.order() % c.len(), 0, "class size divides the order");
        }
    }
}

#[test]
fn inner_automorphism_count() {
    for g in [
        coxeter::symmetric(3),
        coxeter::hyperoctahedral(2),
        FiniteGroup::closure(&[coxeter::perm(&[2, 3, 1])], 10).unwrap(),
    ] {
        let report = coxeter::automorphism_search(&g).unwrap();
        assert_eq!(report.inn_order, g.order() / g.center().len());
        assert!(report.aut_order.is_multiple_of(report.inn_order));
    }
}

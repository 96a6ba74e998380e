use bochner::classification::{char_poly_pc, reduced_polys, spectral_data};
use bochner::geodesic_ode::{admissible_direction, constant_factor_check, integrate};
use bochner::structure_space::{
    cayley_hamilton_defect, conserved_c1, conserved_ck, invariants_phi, normal_form, scale,
    unitary_act, CMat, CVec,
};
use bochner::{StructurePoint, Tolerances};
use num_complex::Complex64;
use proptest::prelude::*;

fn point_strategy() -> impl Strategy<Value = StructurePoint> {
    (1usize..=4).prop_flat_map(|n| {
        (
            prop::collection::vec(-1.0f64..1.0, 2 * n * n),
            prop::collection::vec(-1.0f64..1.0, 2 * n),
            -1.0f64..1.0,
        )
            .prop_map(move |(h, t, v)| {
                let m = CMat::from_fn(n, n, |i, j| {
                    Complex64::new(h[2 * (i * n + j)], h[2 * (i * n + j) + 1])
                });
                let m = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
                let t = CVec::from_fn(n, |i, _| Complex64::new(t[2 * i], t[2 * i + 1]));
                StructurePoint::from_parts(m, t, v).unwrap()
            })
    })
}

fn unitary_from(seed: &[f64], n: usize) -> CMat {
    let m = CMat::from_fn(n, n, |i, j| {
        Complex64::new(
            seed[(i * n + j) % seed.len()],
            seed[(i + 3 * j + 1) % seed.len()],
        )
    });
    (m + CMat::identity(n, n) * Complex64::new(0.1, 0.0))
        .qr()
        .q()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_orbit_invariant(p in point_strategy(), seed in prop::collection::vec(-1.0f64..1.0, 16)) {
        let tol = Tolerances::default();
        let a = unitary_from(&seed, p.n());
        let q = unitary_act(&p, &a).unwrap();
        let nf_p = normal_form(&p, &tol).point;
        let nf_q = normal_form(&q, &tol).point;
        prop_assert!(invariants_phi(&nf_p).max_diff(&invariants_phi(&p)) < 1e-9);
        prop_assert!((nf_p.h() - nf_q.h()).norm() < 1e-8);
        prop_assert!((nf_p.t() - nf_q.t()).norm() < 1e-6);
    }

    #[test]
    fn c1_and_cayley_hamilton_vanish(p in point_strategy()) {
        prop_assert!(conserved_c1(&p).abs() < 1e-10);
        prop_assert!(cayley_hamilton_defect(&p) < 1e-9);
    }

    #[test]
    fn scaling_is_homogeneous(p in point_strategy(), s in 0.2f64..5.0) {
        let q = scale(&p, s).unwrap();
        let a = conserved_ck(&p).c;
        let b = conserved_ck(&q).c;
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            let k = (i + 2) as i32;
            prop_assert!((y - x * s.powi(-k)).abs() < 1e-9 * (1.0 + x.abs() * s.powi(-k)));
        }
        let na = invariants_phi(&p).scale_normalized();
        let nb = invariants_phi(&q).scale_normalized();
        prop_assert!(na.max_diff(&nb) < 1e-9);
    }

    #[test]
    fn reduced_factorization_matches_pc(p in point_strategy()) {
        let tol = Tolerances::default();
        let rp = reduced_polys(&p, &tol).unwrap();
        let pc = char_poly_pc(&p);
        prop_assert!(rp.p_hpp.mul(&rp.p_d).max_coeff_diff(&pc) < 1e-8 * (1.0 + pc.max_abs_coeff()));
        prop_assert_eq!(rp.m, spectral_data(&p, &tol).cohomogeneity());
        prop_assert_eq!(rp.p_d.degree(), rp.m + 2);
    }
}

#[test]
fn repeated_eigenvalue_keeps_its_constant_root() {
    // H = 0.4 I with generic T: one cluster of size 3 with T ≠ 0, so one
    // root of p_h stays at 0.4 along admissible directions
    let tol = Tolerances::default();
    let t = CVec::from_vec(vec![
        Complex64::new(0.3, 0.2),
        Complex64::new(-0.1, 0.4),
        Complex64::new(0.2, 0.0),
    ]);
    let p = StructurePoint::from_parts(CMat::identity(3, 3) * Complex64::new(0.4, 0.0), t, -0.3)
        .unwrap();
    let v = CVec::from_vec(vec![
        Complex64::new(0.1, 0.7),
        Complex64::new(0.5, -0.2),
        Complex64::new(-0.3, 0.3),
    ]);
    let w = admissible_direction(&p, &v, &tol).unwrap();
    let path = integrate(&p, &w, 1.0, 1e-3).unwrap();
    let rep = constant_factor_check(&path, &tol).unwrap();
    assert!(rep.holds, "{rep:?}");
    assert_eq!(rep.p_hpp.len(), 2);
    assert!((rep.p_hpp[1] + 0.4).abs() < 1e-12);
}

#[test]
fn space_form_start_keeps_all_roots() {
    let tol = Tolerances::default();
    let p = StructurePoint::diagonal(&[-2.0, 2.0], &[0.0, 0.0], -4.0).unwrap();
    // both clusters have T = V = 0, so no direction is admissible
    let v = CVec::from_vec(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]);
    assert!(admissible_direction(&p, &v, &tol).is_err());
    // the path is constant along any direction anyway
    let w = v / Complex64::new(2f64.sqrt(), 0.0);
    let path = integrate(&p, &w, 0.5, 1e-2).unwrap();
    assert!((path.end().h() - p.h()).norm() < 1e-14);
}

#[test]
fn path_csv_is_stable() {
    let p = StructurePoint::diagonal(&[0.3, -0.2], &[0.5, 0.1], 0.2).unwrap();
    let w = CVec::from_vec(vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)]);
    let a = integrate(&p, &w, 0.1, 0.05).unwrap().to_csv();
    let b = integrate(&p, &w, 0.1, 0.05).unwrap().to_csv();
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert_eq!(
        lines.next().unwrap(),
        "s,lambda1,lambda2,t_norm_sq,v,c2,c3,c4"
    );
    assert_eq!(a.lines().count(), 4);
}

//! Property tests for the geometric and numerical invariants.

use std::f64::consts::PI;

use camc_core::analysis::{fourier_project_with, SamplingPolicy};
use camc_core::families::{normalize_by_rotation, overlap_predicate};
use camc_core::odes::rhs;
use camc_core::surface::dirichlet_lambda_reduced;
use camc_core::*;
use nalgebra::Rotation3;
use proptest::prelude::*;

fn v3() -> impl Strategy<Value = V3> {
    (-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y, z)| V3::new(x, y, z))
}

fn jet() -> impl Strategy<Value = SurfaceJet> {
    (v3(), v3(), v3(), v3(), v3(), v3()).prop_map(|(pos, xs, xt, xss, xst, xtt)| SurfaceJet {
        pos,
        xs,
        xt,
        xss,
        xst,
        xtt,
    })
}

/// A jet whose frame is well conditioned: immersed and with a tilted normal.
fn good_jet() -> impl Strategy<Value = (SurfaceJet, FrameData)> {
    jet().prop_filter_map("ill-conditioned jet", |j| {
        let f = frame(&j).ok()?;
        (f.detg > 1e-2 && f.nu3.abs() > 0.1 && f.nu3.abs() < 0.95).then_some((j, f))
    })
}

fn kind() -> impl Strategy<Value = FamilyKind> {
    prop_oneof![Just(FamilyKind::TypeI), Just(FamilyKind::TypeII), Just(FamilyKind::TypeIII)]
}

fn family_params() -> impl Strategy<Value = CyclicFamilyParams> {
    (kind(), 0.2..2.0f64, 0.0..2.0 * PI, prop_oneof![-2.0..-0.3f64, 0.3..2.0f64])
        .prop_map(|(k, l, phi, c)| CyclicFamilyParams::new(k, l * phi.cos(), l * phi.sin(), c).unwrap())
}

/// A parameter `s` inside the family domain, at relative position `t` in (0, 1).
fn interior_s(p: &CyclicFamilyParams, t: f64) -> f64 {
    let dom = domain_interval(p);
    let hi = if dom.hi.is_finite() { dom.hi } else { dom.lo + 3.0 };
    dom.lo + (0.05 + 0.9 * t) * (hi - dom.lo)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn frame_reconstructs_principal_directions((j, f) in good_jet()) {
        let e1 = f.c11 * j.xs + f.c12 * j.xt;
        let e2 = f.c21 * j.xs + f.c22 * j.xt;
        let gap = f.horizon_gap();
        prop_assert!((e1 - f.e1).norm() < 1e-8 * (1.0 + f.e1.norm()));
        prop_assert!((e2 - f.e2).norm() < 1e-8 * (1.0 + f.e2.norm()));
        prop_assert!((f.e1.norm_squared() - gap).abs() < 1e-12);
        prop_assert!((f.e2.norm_squared() - gap).abs() < 1e-12);
        prop_assert!(f.e1.dot(&f.e2).abs() < 1e-12);
        prop_assert!(f.e1.dot(&f.nu).abs() < 1e-12 && f.e2.dot(&f.nu).abs() < 1e-12);
        prop_assert!(f.e2.z.abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn dirichlet_reduction_matches_general_form((j, _) in good_jet()) {
        let general = camc_lambda(&j, &dirichlet_energy()).unwrap();
        let reduced = dirichlet_lambda_reduced(&j).unwrap();
        prop_assert!(rel(general, reduced) < 1e-9, "{general} vs {reduced}");
    }

    #[test]
    fn isotropic_lambda_is_twice_mean_curvature((j, f) in good_jet()) {
        let l = camc_lambda(&j, &isotropic_energy()).unwrap();
        prop_assert!(rel(l, 2.0 * f.h) < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lambda_is_invariant_under_vertical_rotation_and_translation(
        p in family_params(), t in 0.0..1.0f64, theta in 0.0..2.0 * PI,
        angle in 0.0..2.0 * PI, shift in v3(),
    ) {
        let s = interior_s(&p, t);
        let surf = cyclic_surface(&p);
        let moved = surf.transformed(Rotation3::from_axis_angle(&V3::z_axis(), angle), shift);
        let e = dirichlet_energy();
        let j0 = surf.jet(s, theta).unwrap();
        let f0 = frame(&j0);
        prop_assume!(f0.map(|f| f.nu3.abs() > 0.1).unwrap_or(false));
        let a = camc_lambda(&j0, &e).unwrap();
        let b = camc_lambda(&moved.jet(s, theta).unwrap(), &e).unwrap();
        prop_assert!(rel(a, b) < 1e-9);
    }

    #[test]
    fn closed_forms_satisfy_the_profile_ode(p in family_params(), t in 0.0..1.0f64) {
        let s = interior_s(&p, t);
        let pr = family_profile(&p, s).unwrap();
        let state = CyclicOdeState::new(s, pr.r, pr.rp, pr.a, pr.b);
        let d = rhs(&state, p.lambda, p.mu, OdeMode::Anisotropic).unwrap();
        prop_assert!(rel(pr.rpp, d.rp) < 1e-9, "{} vs {}", pr.rpp, d.rp);
        prop_assert!(rel(pr.ap, d.a) < 1e-9);
        prop_assert!(rel(pr.bp, d.b) < 1e-9);
        // centers stay in the vertical plane spanned by (lambda, mu)
        prop_assert!((p.mu * pr.a - p.lambda * pr.b).abs() < 1e-9 * (1.0 + pr.a.abs() + pr.b.abs()));
    }

    #[test]
    fn normalization_is_a_vertical_rotation(p in family_params(), t in 0.0..1.0f64, theta in 0.0..2.0 * PI) {
        let s = interior_s(&p, t);
        let (norm, phi) = normalize_by_rotation(&p);
        prop_assert!(norm.is_normalized());
        let rot = Rotation3::from_axis_angle(&V3::z_axis(), phi);
        let a = rot * cyclic_surface(&norm).point(s, theta).unwrap();
        let b = cyclic_surface(&p).point(s, theta + phi).unwrap();
        prop_assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn type1_circles_overlap_pairwise(l in 0.2..3.0f64, c in prop_oneof![-2.0..-0.3f64, 0.3..2.0f64], t1 in 0.0..1.0f64, t2 in 0.0..1.0f64) {
        let p = CyclicFamilyParams::new(FamilyKind::TypeI, l, 0.0, c).unwrap();
        prop_assert!(overlap_predicate(&p, interior_s(&p, t1), interior_s(&p, t2)).unwrap());
    }

    #[test]
    fn fourier_projection_is_exact_on_trig_polynomials(
        coeffs in proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..=9),
        extra in 0usize..8,
    ) {
        let n = coeffs.len() - 1;
        let m = 2 * n + 1 + extra;
        let samples: Vec<f64> = (0..m)
            .map(|k| {
                let th = 2.0 * PI * k as f64 / m as f64;
                coeffs.iter().enumerate().map(|(i, &(a, b))| {
                    let (sn, cs) = (i as f64 * th).sin_cos();
                    a * cs + if i == 0 { 0.0 } else { b * sn }
                }).sum()
            })
            .collect();
        let spec = fourier_project_with(0.0, &samples, n, SamplingPolicy::Nyquist).unwrap();
        for (i, &(a, b)) in coeffs.iter().enumerate() {
            prop_assert!((spec.a[i] - a).abs() < 1e-12);
            let expected_b = if i == 0 { 0.0 } else { b };
            prop_assert!((spec.b[i] - expected_b).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn certificate_is_invariant_under_vertical_motions(p in family_params(), angle in 0.0..2.0 * PI, shift in v3()) {
        let dom = domain_interval(&p);
        let (lo, hi) = (interior_s(&p, 0.0), interior_s(&p, 1.0));
        prop_assume!(dom.contains(lo) && dom.contains(hi));
        let grid = GridSpec::cyclic(lo, hi, 11, 64);
        let tol = CertificateTolerances::uniform(1e-6);
        let surf = cyclic_surface(&p);
        let moved = surf.transformed(Rotation3::from_axis_angle(&V3::z_axis(), angle), shift);
        let e = dirichlet_energy();
        let a = camc_certificate(&surf, &e, &grid, Some(0.0), &tol).unwrap();
        let b = camc_certificate(&moved, &e, &grid, Some(0.0), &tol).unwrap();
        prop_assert_eq!(a.pass, b.pass);
        prop_assert_eq!(a.admissible_nodes, b.admissible_nodes);
        prop_assert!((a.max_abs_dev - b.max_abs_dev).abs() < 1e-6);
    }
}

use std::f64::consts::PI;

use multiform::charges::{
    boundary_field, bump_field, charge_at, default_balance, default_epsilon, flux_quantization,
    flux_quantization_at, fracton_moments, gaussian_burst, memory_balance, refinement, NewsProfile,
    SphereQuadrature, TensorGrid, DEFAULT_RESOLUTION, REFINEMENT_STEPS,
};
use multiform::Error;
use proptest::prelude::*;

#[test]
fn sphere_areas_match_closed_forms() {
    for (m, area) in [(1, 2.0 * PI), (2, 4.0 * PI), (3, 2.0 * PI * PI)] {
        let q = SphereQuadrature::new(m, 12).unwrap();
        assert!((q.area() - area).abs() < 1e-12, "S^{m}: {}", q.area());
    }
}

#[test]
fn second_moment_on_the_two_sphere() {
    let q = SphereQuadrature::new(2, DEFAULT_RESOLUTION).unwrap();
    let values: Vec<f64> = q.nodes.iter().map(|x| x[2] * x[2]).collect();
    assert!((q.integrate(&values).unwrap() - 4.0 * PI / 3.0).abs() < 1e-10);
    assert!(matches!(q.integrate(&values[1..]), Err(Error::Domain(_))));
}

#[test]
fn zero_field_has_zero_charge() {
    let p = gaussian_burst(4, 6, 10).unwrap();
    let sphere = p.sphere().unwrap();
    let zero = vec![vec![0.0; 4]; sphere.len()];
    let eps = default_epsilon(&sphere, 2);
    assert_eq!(charge_at(&sphere, &zero, &eps).unwrap(), 0.0);
}

#[test]
fn orthogonal_parameter_sees_no_memory() {
    let p = gaussian_burst(4, 8, 40).unwrap();
    let sphere = p.sphere().unwrap();
    // the burst is A(x) times a profile in u, so ε ⟂ A(x) pointwise kills both sides
    let eps: Vec<Vec<f64>> = p
        .field_final
        .iter()
        .map(|a| {
            let mut e = vec![0.0; a.len()];
            e[0] = a[1];
            e[1] = -a[0];
            e
        })
        .collect();
    let b = memory_balance(&p, &eps, &[]).unwrap();
    assert!(b.delta_direct.abs() < 1e-12 && b.delta_news.abs() < 1e-12, "{b:?}");
    assert_eq!(sphere.len(), eps.len());
}

#[test]
fn gaussian_burst_balances() {
    for dim in [4, 5] {
        let b = default_balance(dim).unwrap();
        assert!(b.residual <= 1e-8 * b.delta_direct.abs().max(1.0), "D={dim}: {b:?}");
        assert!(b.delta_direct.abs() > 1.0);
    }
}

#[test]
fn dual_channels_scale_by_eta() {
    let p = gaussian_burst(4, 8, 40).unwrap();
    let eps = default_epsilon(&p.sphere().unwrap(), 2);
    let b = memory_balance(&p, &eps, &[1.0, -0.5]).unwrap();
    assert_eq!(b.dual_channels, vec![b.delta_news, -0.5 * b.delta_news]);
}

#[test]
fn refinement_converges_at_least_quadratically() {
    let r = refinement(4, DEFAULT_RESOLUTION, &REFINEMENT_STEPS).unwrap();
    assert_eq!(r.rows.len(), 3);
    assert!(r.rows.windows(2).all(|w| w[1].residual < w[0].residual));
    assert!(r.observed_order >= 2.0, "{}", r.observed_order);
}

#[test]
fn news_profile_document_round_trip() {
    let p = gaussian_burst(4, 4, 6).unwrap();
    let text = serde_json::to_string(&p).unwrap();
    assert!(text.contains("\"D\":4"));
    let back: NewsProfile = serde_json::from_str(&text).unwrap();
    let eps = default_epsilon(&back.sphere().unwrap(), 2);
    assert_eq!(
        memory_balance(&back, &eps, &[]).unwrap().delta_direct,
        memory_balance(&p, &eps, &[]).unwrap().delta_direct
    );
}

#[test]
fn malformed_profiles_are_rejected() {
    let mut p = gaussian_burst(4, 4, 6).unwrap();
    let eps = default_epsilon(&p.sphere().unwrap(), 2);
    p.u.pop();
    p.news.pop();
    assert!(matches!(memory_balance(&p, &eps, &[]), Err(Error::Domain(_))));
    let mut q = gaussian_burst(4, 4, 6).unwrap();
    q.field_final.pop();
    assert!(matches!(memory_balance(&q, &eps, &[]), Err(Error::Domain(_))));
    assert!(gaussian_burst(4, 4, 7).is_err());
}

#[test]
fn flux_examples() {
    assert!((flux_quantization(3, 2).unwrap() - 3.0).abs() < 1e-10);
    assert_eq!(flux_quantization(0, 3).unwrap(), 0.0);
    assert!((flux_quantization(-2, 3).unwrap() + 2.0).abs() < 1e-9);
    assert!(matches!(flux_quantization(1, 1), Err(Error::Domain(_))));
}

#[test]
fn fracton_bump_has_vanishing_moments() {
    let fine = fracton_moments(&bump_field(64).unwrap()).unwrap();
    assert!(!fine.boundary_warning);
    assert!(fine.relative() <= 1e-6, "{fine:?}");
    let coarse = fracton_moments(&bump_field(32).unwrap()).unwrap();
    assert!(coarse.relative() <= 1e-5, "{coarse:?}");
}

#[test]
fn fracton_zero_field() {
    let n = 8;
    let zero = TensorGrid { n, half_width: 1.0, values: vec![[0.0; 6]; n * n * n] };
    let m = fracton_moments(&zero).unwrap();
    assert_eq!((m.charge, m.dipole), (0.0, [0.0; 3]));
}

#[test]
fn fracton_boundary_support_warns() {
    assert!(fracton_moments(&boundary_field(24).unwrap()).unwrap().boundary_warning);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn flux_is_quantized_at_any_radius(n in -10i64..=10, k in 2usize..=4, radius in 0.1f64..50.0) {
        let r = flux_quantization_at(n, k, radius, 12).unwrap();
        prop_assert!(r.error < 1e-8, "{:?}", r);
        prop_assert_eq!(r.rounded, n);
    }
}

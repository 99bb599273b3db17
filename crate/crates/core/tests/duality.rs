use multiform::calculus::{Metric, MetricKind};
use multiform::duality::{build_duality_maps, build_encoding, contract, dual_signatures, DualityOptions, DualityReport};
use multiform::linalg::Matrix;
use multiform::rational::{int, rat, Rational};
use multiform::sample::random_rational_form;
use multiform::tensor::Shape;
use multiform::Error;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

static GRAVITON: Lazy<DualityReport> =
    Lazy::new(|| build_duality_maps(&Shape::new(5, vec![1, 1]).unwrap(), &DualityOptions::default()).unwrap());

fn sigs(dim: usize, sig: Vec<usize>) -> Vec<Vec<usize>> {
    dual_signatures(&Shape::new(dim, sig).unwrap())
        .unwrap()
        .iter()
        .map(|s| s.signature().to_vec())
        .collect()
}

#[test]
fn dual_signature_chains() {
    assert_eq!(sigs(5, vec![1, 1]), vec![vec![2, 1], vec![2, 2]]);
    assert_eq!(sigs(4, vec![1]), vec![vec![1]]);
    // q_i = D − 2 − p_i applied column by column
    assert_eq!(sigs(6, vec![1, 1]), vec![vec![3, 1], vec![3, 3]]);
}

#[test]
fn hypothesis_violation_is_a_precondition_error() {
    let err = build_duality_maps(&Shape::new(5, vec![2, 2]).unwrap(), &DualityOptions::default()).unwrap_err();
    assert!(matches!(&err, Error::Precondition(m) if m.contains("2 > 1")), "{err}");
}

#[test]
fn graviton_has_two_invertible_maps() {
    let r = &*GRAVITON;
    assert_eq!(r.r, 2);
    assert_eq!(r.duals, vec![vec![2, 1], vec![2, 2]]);
    assert_eq!(r.maps.len(), 2);
    for m in &r.maps {
        assert!(m.invertible);
        assert_eq!(m.residual_nonzero, 0);
        assert_eq!(m.triangular_residual_nonzero, 0);
        assert!(!m.eta.is_zero());
        assert_eq!(m.eta.clone() * m.inverse_eta.clone(), Rational::one());
    }
    assert!(r.all_checks_pass());
}

#[test]
fn conjugated_hodge_is_a_bijection() {
    for m in &GRAVITON.maps {
        let phi = &m.conjugated_hodge;
        assert_eq!(phi.nrows(), phi.ncols());
        assert_eq!(phi.rank(), phi.nrows());
        let inv = phi.inverse().unwrap();
        assert_eq!(phi.mul(&inv), Matrix::identity(phi.nrows()));
    }
}

#[test]
fn triangular_form_is_f_times_basis_change() {
    for m in &GRAVITON.maps {
        assert_eq!(m.f.mul(&m.basis_change), m.triangular);
        let first_row: Vec<Rational> = (0..m.triangular.ncols()).map(|j| m.triangular.get(0, j)).collect();
        assert_eq!(first_row[0], m.eta);
        assert!(first_row[1..].iter().all(|v| v.is_zero()));
    }
}

#[test]
fn graviton_test_fields_agree() {
    let t = &GRAVITON.test_fields;
    assert_eq!(t.fields, 20);
    assert!(t.nonzero_charge > 0);
    assert!(t.eta_consistent && t.round_trip && t.transport_exact && t.charges_agree);
}

#[test]
fn eta_is_independent_of_the_test_field_seed() {
    let opts = DualityOptions {
        seed: 1234,
        test_fields: 5,
        ..DualityOptions::default()
    };
    let other = build_duality_maps(&Shape::new(5, vec![1, 1]).unwrap(), &opts).unwrap();
    assert_eq!(other.etas(), GRAVITON.etas());
}

#[test]
fn self_dual_vector_restricts_uniquely() {
    let r = build_duality_maps(&Shape::new(4, vec![1]).unwrap(), &DualityOptions::default()).unwrap();
    assert_eq!(r.r, 1);
    assert_eq!(r.maps.len(), 1);
    let m = &r.maps[0];
    assert!(m.restriction_unique && m.invertible);
    assert_eq!(m.eta.clone() * m.eta.clone(), Rational::one());
    assert!(r.certificates.iter().all(|c| c.vanishing));
}

#[test]
fn minkowski_flips_the_vector_ratio() {
    let opts = DualityOptions {
        metric: MetricKind::Minkowski,
        ..DualityOptions::default()
    };
    let r = build_duality_maps(&Shape::new(4, vec![1]).unwrap(), &opts).unwrap();
    assert_eq!(r.etas(), vec![int(-1)]);
    assert!(r.all_checks_pass());
}

#[test]
fn strict_mode_requires_vanishing_certificates() {
    let opts = DualityOptions {
        strict: true,
        ..DualityOptions::default()
    };
    assert!(build_duality_maps(&Shape::new(4, vec![1]).unwrap(), &opts).is_ok());
    let err = build_duality_maps(&Shape::new(5, vec![1, 1]).unwrap(), &opts).unwrap_err();
    assert!(matches!(err, Error::Dependency(_)), "{err}");
}

#[test]
fn charge_pairing_is_linear() {
    let metric = Metric::euclidean(4);
    let shape = Shape::new(4, vec![2]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let eps = random_rational_form(&shape, 4, &mut rng);
    let field = random_rational_form(&shape, 4, &mut rng);
    let c = rat(-7, 3);
    assert_eq!(
        contract(&eps, &field.scale(&c), &metric).unwrap(),
        c * contract(&eps, &field, &metric).unwrap()
    );
}

#[test]
fn encoding_of_summed_charge_is_invertible() {
    let e = build_encoding(&[int(1), int(1), int(1)]).unwrap();
    assert_eq!(e.matrix.rank(), 3);
    assert_eq!(e.apply(&[int(1), int(2), int(3)])[0], int(6));
    assert!(matches!(build_encoding(&[int(0), int(0)]), Err(Error::DegenerateCharge)));
}

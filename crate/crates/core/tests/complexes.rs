use multiform::complexes::{
    as_reduction, build_complex, cohomology, de_rham_reference, full_edge_rank, frequencies, Truncation,
};
use multiform::Error;
use proptest::prelude::*;

fn binomial_row(dim: usize) -> Vec<usize> {
    let mut row = vec![1usize];
    for k in 0..dim {
        row.push(row[k] * (dim - k) / (k + 1));
    }
    row
}

fn signatures(dim: usize, arity: usize, aug: &[usize]) -> Vec<Vec<usize>> {
    build_complex(dim, arity, aug).unwrap().nodes.iter().map(|s| s.signature().to_vec()).collect()
}

#[test]
fn two_slot_spine() {
    let expected: Vec<Vec<usize>> = (0..=5).map(|j| vec![j, j]).collect();
    assert_eq!(signatures(5, 2, &[0]), expected);
    assert_eq!(build_complex(5, 2, &[0]).unwrap().edges, vec![2; 5]);
}

#[test]
fn one_augmented_complex() {
    assert_eq!(
        signatures(5, 2, &[1]),
        vec![vec![0, 0], vec![1, 0], vec![2, 1], vec![3, 2], vec![4, 3], vec![5, 4]]
    );
}

#[test]
fn two_augmented_complex() {
    assert_eq!(signatures(3, 2, &[2]), vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![3, 1]]);
}

#[test]
fn augmentation_longer_than_complex_is_rejected() {
    assert!(matches!(build_complex(3, 2, &[4]), Err(Error::Precondition(_))));
    assert!(matches!(build_complex(3, 3, &[1]), Err(Error::Precondition(_))));
}

#[test]
fn gradient_rank_counts_nonzero_frequencies() {
    let spec = build_complex(2, 1, &[]).unwrap();
    let trunc = Truncation::torus(1);
    let nonzero = frequencies(2, 1).iter().filter(|k| k.iter().any(|c| *c != 0)).count();
    assert_eq!(nonzero, 8);
    assert_eq!(full_edge_rank(&spec, &trunc, 0).unwrap(), nonzero);
}

#[test]
fn torus_de_rham_matches_betti_numbers() {
    for (dim, cap) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        let h = de_rham_reference(dim, &Truncation::torus(cap)).unwrap();
        assert_eq!(h, binomial_row(dim), "D={dim} K={cap}");
    }
}

#[test]
fn torus_report_separates_zero_mode() {
    let r = cohomology(&build_complex(2, 1, &[]).unwrap(), &Truncation::torus(1)).unwrap();
    assert_eq!(r.zero_mode_h, Some(vec![1, 2, 1]));
    assert_eq!(r.nonzero_modes_exact, Some(true));
    assert_eq!(r.h_without_zero_mode(), vec![0, 0, 0]);
}

#[test]
fn box_de_rham_is_acyclic_above_degree_zero() {
    for dim in 1..=3 {
        let h = cohomology(&build_complex(dim, 1, &[]).unwrap(), &Truncation::boxed(3)).unwrap().h();
        let mut expected = vec![0; dim + 1];
        expected[0] = 1;
        assert_eq!(h, expected);
    }
}

#[test]
fn oversized_truncation_is_a_resource_error() {
    let spec = build_complex(6, 1, &[]).unwrap();
    assert!(matches!(cohomology(&spec, &Truncation::torus(3)), Err(Error::Resource { .. })));
    assert!(cohomology(&spec, &Truncation::torus(1)).is_ok());
}

#[test]
fn vector_potential_reduction_is_a_bijection() {
    let spec = build_complex(4, 1, &[]).unwrap();
    let r = as_reduction(&spec, 1, &Truncation::boxed(2), false).unwrap();
    assert!(r.bijection);
    assert_eq!((r.h_potential, r.h_field), (0, 0));
    assert_eq!(r.as_potential_dimension, r.as_field_dimension);
}

#[test]
fn zero_mode_blocks_name_the_group() {
    let spec = build_complex(2, 1, &[]).unwrap();
    let err = as_reduction(&spec, 0, &Truncation::torus(1), false).unwrap_err();
    assert!(matches!(&err, Error::Precondition(m) if m.contains("H^{0}")), "{err}");
    assert!(as_reduction(&spec, 0, &Truncation::torus(1), true).unwrap().bijection);
}

#[test]
fn graviton_reduction_reports_nonvanishing_cohomology() {
    // linearized diffeomorphisms are closed but not exact at the graviton node
    let spec = build_complex(5, 2, &[0]).unwrap();
    let err = as_reduction(&spec, 1, &Truncation::boxed(2), false).unwrap_err();
    assert!(matches!(&err, Error::Precondition(m) if m.contains("H^{1⊗1}")), "{err}");
}

#[test]
fn position_without_outgoing_edge_is_rejected() {
    let spec = build_complex(2, 1, &[]).unwrap();
    assert!(matches!(as_reduction(&spec, 2, &Truncation::boxed(2), false), Err(Error::Precondition(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn euler_characteristic_of_de_rham(dim in 1usize..=3, cap in 1u32..=2) {
        let r = cohomology(&build_complex(dim, 1, &[]).unwrap(), &Truncation::torus(cap)).unwrap();
        let chi_h: i64 = r.h().iter().enumerate().map(|(j, h)| if j % 2 == 0 { *h as i64 } else { -(*h as i64) }).sum();
        let chi_c: i64 = r.positions.iter().map(|p| if p.position % 2 == 0 { p.dimension as i64 } else { -(p.dimension as i64) }).sum();
        prop_assert_eq!(chi_h, chi_c);
    }

    #[test]
    fn cocycles_contain_coboundaries(dim in 1usize..=3, k in 0usize..=3, cap in 2u32..=3) {
        prop_assume!(k <= dim);
        let r = cohomology(&build_complex(dim, 2, &[k]).unwrap(), &Truncation::boxed(cap)).unwrap();
        for p in &r.positions {
            prop_assert!(p.coboundaries <= p.cocycles);
            prop_assert_eq!(p.h, p.cocycles - p.coboundaries);
        }
    }
}

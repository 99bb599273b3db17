use multiform::rational::{int, rat, Rational};
use multiform::sample::random_rational_form;
use multiform::tensor::{canonicalize, irrep_dimension, project, young_projector, Block, MultiForm, Shape};
use multiform::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn blocks(raw: &[&[usize]]) -> Vec<Block> {
    raw.iter().map(|b| Block::from_sorted(b).unwrap()).collect()
}

#[test]
fn canonicalize_tracks_permutation_sign() {
    assert_eq!(canonicalize(2, &[vec![1, 0]]).unwrap(), Some((blocks(&[&[0, 1]]), true)));
    assert_eq!(canonicalize(2, &[vec![0, 0]]).unwrap(), None);
    assert_eq!(canonicalize(3, &[vec![2, 0, 1]]).unwrap(), Some((blocks(&[&[0, 1, 2]]), false)));
    assert!(matches!(canonicalize(2, &[vec![2]]), Err(Error::Domain(_))));
}

#[test]
fn projector_ranks_match_closed_forms() {
    let d = 5;
    let sym = young_projector(&Shape::new(d, vec![1, 1]).unwrap()).unwrap();
    assert_eq!(sym.size(), 25);
    assert_eq!(sym.rank(), d * (d + 1) / 2);
    let hook = young_projector(&Shape::new(d, vec![2, 1]).unwrap()).unwrap();
    assert_eq!(hook.rank(), d * (d * d - 1) / 3);
    assert_eq!(irrep_dimension(&Shape::new(4, vec![1]).unwrap()).unwrap(), 4);
}

#[test]
fn projector_rejects_increasing_signature() {
    assert!(matches!(young_projector(&Shape::new(4, vec![1, 2]).unwrap()), Err(Error::Shape(_))));
}

#[test]
fn symmetric_projection_of_rank_one_tensor() {
    let shape = Shape::new(2, vec![1, 1]).unwrap();
    let t = MultiForm::from_raw_terms(shape.clone(), vec![(vec![vec![0], vec![1]], int(1))]).unwrap();
    let expected = MultiForm::from_raw_terms(
        shape,
        vec![(vec![vec![0], vec![1]], rat(1, 2)), (vec![vec![1], vec![0]], rat(1, 2))],
    )
    .unwrap();
    assert_eq!(project(&t).unwrap(), expected);
}

#[test]
fn symmetric_tensor_is_fixed() {
    let shape = Shape::new(3, vec![1, 1]).unwrap();
    let t = MultiForm::from_raw_terms(shape, vec![(vec![vec![0], vec![0]], int(3))]).unwrap();
    assert_eq!(project(&t).unwrap(), t);
}

#[test]
fn projector_of_other_shape_is_a_domain_error() {
    let p = young_projector(&Shape::new(3, vec![1, 1]).unwrap()).unwrap();
    let t: MultiForm<Rational> = MultiForm::zero(Shape::new(3, vec![2, 1]).unwrap());
    assert!(matches!(p.apply(&t), Err(Error::Domain(_))));
}

#[test]
fn hook_projection_satisfies_the_cyclic_identity() {
    // antisymmetrizing the single index of the second column into the first
    // column must vanish on the principal subspace
    let shape = Shape::new(3, vec![2, 1]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = project(&random_rational_form(&shape, 6, &mut rng)).unwrap();
    let c = |a: usize, b: usize, e: usize| -> Rational {
        let Some((first, neg)) = canonicalize(3, &[vec![a, b]]).unwrap() else { return int(0) };
        let v = t.coefficient(&[first[0], Block::from_sorted(&[e]).unwrap()]);
        if neg { -v } else { v }
    };
    for (a, b, e) in [(0, 1, 2), (0, 1, 0), (1, 2, 0)] {
        assert_eq!(c(a, b, e) + c(b, e, a) + c(e, a, b), int(0));
    }
}

fn young_shape() -> impl Strategy<Value = Shape> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(dim, arity)| {
        prop::collection::vec(0..=dim, arity).prop_map(move |mut sig| {
            sig.sort_unstable_by(|a, b| b.cmp(a));
            Shape::new(dim, sig).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projection_is_idempotent(shape in young_shape(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_rational_form(&shape, 5, &mut rng);
        let once = project(&t).unwrap();
        prop_assert_eq!(project(&once).unwrap(), once);
    }

    #[test]
    fn projection_is_linear(shape in young_shape(), seed in any::<u64>(), n in -5i64..=5, d in 1i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_rational_form(&shape, 4, &mut rng);
        let b = random_rational_form(&shape, 4, &mut rng);
        let s = rat(n, d);
        let lhs = project(&a.add_scaled(&b, &s).unwrap()).unwrap();
        let rhs = project(&a).unwrap().add_scaled(&project(&b).unwrap(), &s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn transposition_flips_sign(i in 0usize..5, j in 0usize..5, k in 0usize..5) {
        prop_assume!(i != j && j != k && i != k);
        let a = canonicalize(5, &[vec![i, j, k]]).unwrap().unwrap();
        let b = canonicalize(5, &[vec![j, i, k]]).unwrap().unwrap();
        prop_assert_eq!(&a.0, &b.0);
        prop_assert_ne!(a.1, b.1);
    }
}

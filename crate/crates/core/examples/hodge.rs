//! Hodge duals on single slots and the double-dual sign.

use multiform::calculus::{double_hodge_sign, hodge_prefix, hodge_slot, Metric};
use multiform::sample::random_rational_form;
use multiform::tensor::Shape;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> multiform::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for metric in [Metric::euclidean(4), Metric::minkowski(4)] {
        let t = random_rational_form(&Shape::new(4, vec![2])?, 3, &mut rng);
        let twice = hodge_slot(&hodge_slot(&t, 0, &metric)?, 0, &metric)?;
        let sign = double_hodge_sign(4, 2, &metric);
        println!("det sign {:+}: ⋆⋆ on 2-forms = {sign:+}, checked {}", metric.det_sign(), twice == t.scale(&multiform::rational::int(sign as i64)));
    }
    let g = random_rational_form(&Shape::new(5, vec![1, 1])?, 3, &mut rng);
    let dual = hodge_prefix(&g, 2, &Metric::euclidean(5))?;
    println!("⋆⋆ on the first two slots maps {:?} to {:?}", g.shape().signature(), dual.shape().signature());
    Ok(())
}

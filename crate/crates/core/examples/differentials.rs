//! Slot differentials and the de Rham-like δ on a random bi-form.

use multiform::calculus::{d_slot, delta};
use multiform::sample::random_polynomial_form;
use multiform::tensor::{project, Shape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> multiform::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let b = project(&random_polynomial_form(&Shape::new(4, vec![1, 1])?, 3, 5, &mut rng))?;
    println!("B = {}", b.describe());

    let left = d_slot(&b, 0)?.expect("below top degree");
    let both = d_slot(&left, 1)?.expect("below top degree");
    let other_order = d_slot(&d_slot(&b, 1)?.expect("below top degree"), 0)?.expect("below top degree");
    println!("d_L d_R B == d_R d_L B: {}", both == other_order);
    println!("d_L d_L B == 0: {}", d_slot(&left, 0)?.is_none_or(|f| f.is_zero()));

    let h = delta(&b)?.expect("below top degree");
    println!("δB has shape {:?}", h.shape().signature());
    println!("δδB == 0: {}", delta(&h)?.is_none_or(|f| f.is_zero()));
    Ok(())
}

//! Recovers a potential for a closed polynomial bi-form on a box.

use multiform::calculus::{delta, poincare_homotopy};
use multiform::sample::random_polynomial_form;
use multiform::tensor::{project, Shape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> multiform::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let s0 = project(&random_polynomial_form(&Shape::new(3, vec![1, 0])?, 3, 4, &mut rng))?;
    let t = delta(&s0)?.expect("below top degree");
    let w = poincare_homotopy(&t)?;
    println!("T has shape {:?}, potential {:?}", t.shape().signature(), w.potential.shape().signature());
    println!("descent steps {}, completed by solve {}", w.descent_steps, w.completed_by_solve);
    println!("δS == T: {}", delta(&w.potential)?.as_ref() == Some(&t));
    Ok(())
}

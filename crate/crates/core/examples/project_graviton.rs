//! Projects a rank-one tensor onto symmetric (graviton-like) two-tensors.

use multiform::document::{form_to_json, CoefficientDomain};
use multiform::rational::int;
use multiform::tensor::{irrep_dimension, project, young_projector, MultiForm, Shape};

fn main() -> multiform::Result<()> {
    let shape = Shape::new(5, vec![1, 1])?;
    let p = young_projector(&shape)?;
    println!("D=5 {{1,1}}: basis {} rank {} (hook content {})", p.size(), p.rank(), irrep_dimension(&shape)?);

    let t = MultiForm::from_raw_terms(shape, vec![(vec![vec![0], vec![1]], int(1))])?;
    let sym = project(&t)?;
    println!("{}", serde_json::to_string_pretty(&form_to_json(&sym, &CoefficientDomain::Rational)).unwrap());
    Ok(())
}

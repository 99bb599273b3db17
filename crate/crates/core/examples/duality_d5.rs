//! Duality maps between the five-dimensional graviton and its duals.

use multiform::duality::{build_duality_maps, DualityOptions};
use multiform::tensor::Shape;

fn main() -> multiform::Result<()> {
    let report = build_duality_maps(&Shape::new(5, vec![1, 1])?, &DualityOptions::default())?;
    println!("duals {:?}, AS dimensions {:?}", report.duals, report.as_dimensions);
    println!("on-shell dimension {}", report.on_shell_dimension);
    for m in &report.maps {
        println!("f_{}: {:?} -> {:?}, eta = {}, invertible {}", m.index, m.potential, m.field_strength, m.eta, m.invertible);
    }
    for c in report.certificates.iter().filter(|c| !c.vanishing) {
        println!("nonvanishing certificate: {}", c.detail);
    }
    println!("all checks pass: {}", report.all_checks_pass());
    Ok(())
}

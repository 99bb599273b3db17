//! Memory balance law for a Gaussian burst, with time refinement.

use multiform::charges::{default_balance, refinement, DEFAULT_RESOLUTION, REFINEMENT_STEPS};

fn main() -> multiform::Result<()> {
    for dim in [4, 5] {
        let b = default_balance(dim)?;
        println!("D={dim}: ΔQ direct {:.12} news {:.12} residual {:.2e}", b.delta_direct, b.delta_news, b.residual);
    }
    let r = refinement(4, DEFAULT_RESOLUTION, &REFINEMENT_STEPS)?;
    for row in &r.rows {
        println!("steps {:>3}  h {:.4}  residual {:.3e}", row.steps, row.h, row.residual);
    }
    println!("observed order {:.2}", r.observed_order);
    Ok(())
}

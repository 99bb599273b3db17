//! Charge and dipole conservation for a fracton Gauss law source.

use multiform::charges::{boundary_field, bump_field, fracton_moments};

fn main() -> multiform::Result<()> {
    for n in [16, 32, 64] {
        let m = fracton_moments(&bump_field(n)?)?;
        println!("{n}³: charge {:.2e} dipole {:?} relative {:.2e}", m.charge, m.dipole, m.relative());
    }
    let edge = fracton_moments(&boundary_field(32)?)?;
    println!("support at the boundary: warning {}, relative {:.2e}", edge.boundary_warning, edge.relative());
    Ok(())
}

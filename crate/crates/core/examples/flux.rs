//! Flux quantization through spheres linking defects of codimension 2 to 4.

use multiform::charges::flux_quantization_at;

fn main() -> multiform::Result<()> {
    for k in 2..=4 {
        for n in [-3, 1, 7] {
            let r = flux_quantization_at(n, k, 2.5, 16)?;
            println!("k={k} n={n:>2}: {:.15} (error {:.1e})", r.value, r.error);
        }
    }
    Ok(())
}

//! Cohomology of de Rham-like complexes on a frequency-truncated torus.

use multiform::complexes::{build_complex, cohomology, Truncation};

fn main() -> multiform::Result<()> {
    let trunc = Truncation::torus(1);
    for (dim, arity, aug) in [(2, 1, vec![]), (3, 1, vec![]), (2, 2, vec![0]), (2, 2, vec![1])] {
        let spec = build_complex(dim, arity, &aug)?;
        let report = cohomology(&spec, &trunc)?;
        let nodes: Vec<_> = spec.nodes.iter().map(|s| s.signature().to_vec()).collect();
        println!("D={dim} N={arity} aug {aug:?}: nodes {nodes:?}");
        println!("    h = {:?}, zero mode {:?}", report.h(), report.zero_mode_h);
    }
    Ok(())
}

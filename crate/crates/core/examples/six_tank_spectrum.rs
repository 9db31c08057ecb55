//! Prints the complex-Laplacian spectrum of the six-tank network for both
//! oscillator parameterizations.

use oscsync_core::analysis::{test_general, NetworkSpec};
use oscsync_core::graphs::CouplingGraph;

fn main() -> Result<(), oscsync_core::Error> {
    let m = CouplingGraph::new(6, [(2, 3, 0.375)])?;
    let b = CouplingGraph::new(6, [(4, 5, 1.0)])?;
    let k = CouplingGraph::new(6, [(1, 2, 2.0), (3, 4, 2.0), (5, 6, 1.5)])?;
    for (m0, k0) in [(2.0, 2.0), (1.0, 1.0)] {
        let net = NetworkSpec::new(m.clone(), b.clone(), k.clone(), m0, k0)?;
        let v = test_general(&net)?;
        println!("(m0, k0) = ({m0}, {k0}): synchronizes = {}", v.synchronizes);
        for (i, z) in v.spectrum.iter().enumerate() {
            println!("  λ{} = {:+.6} {:+.6}j", i + 1, z.re, z.im);
        }
    }
    Ok(())
}

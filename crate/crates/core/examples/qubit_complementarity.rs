//! Compiles a qubit with Z and X measurements into a finite model and
//! classifies the pair.
//!
//!     cargo run --example qubit_complementarity

use gqt::io::load_quantum;
use gqt::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = load_quantum(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/qzx.quantum.json"
    ))?;
    let built = doc.build(None, None)?;
    let model = &built.orbit.model;
    println!("orbit states: {}", model.space().names().join(", "));

    let (z, x) = (model.observable("Z")?, model.observable("X")?);
    let (class, evidence) = classify_pair(z, x)?;
    println!("Z vs X: {class}");
    if let Some(w) = evidence.witness {
        println!("  first non-commuting members: {w:?}");
    }
    println!("  common eigenstates: {}", evidence.common.len());

    for a in [z, x] {
        for (state, value) in eigenstates_of_observable(a) {
            println!(
                "  {} = {} at {}",
                a.name(),
                a.spectrum()[value],
                model.space().name(state)
            );
        }
    }
    Ok(())
}

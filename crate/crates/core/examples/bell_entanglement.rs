//! Finds the entangled states of a two-qubit model: eigenstates of the Bell
//! observable that are eigenstates of no local observable.
//!
//!     cargo run --example bell_entanglement

use gqt::io::load_model;
use gqt::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = load_model(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/bell.json"))?;
    let locals = ["ZA", "ZB"];

    let report = check_entanglement_preconditions(&model, "BELL", &locals)?;
    if !report.is_empty() {
        for v in &report.violations {
            println!("precondition failed: {v:?}");
        }
        return Ok(());
    }
    let found = entangled_states(&model, "BELL", &locals)?;
    for &s in &found.states {
        println!("entangled: {}", model.space().name(s));
    }

    let (za, zb) = (model.observable("ZA")?, model.observable("ZB")?);
    println!("ZA vs ZB: {}", classify_pair(za, zb)?.0);
    for c in common_eigenstates(za, zb)? {
        println!(
            "  {} has ZA={} and ZB={}",
            model.space().name(c.state),
            za.spectrum()[c.a],
            zb.spectrum()[c.b]
        );
    }
    Ok(())
}

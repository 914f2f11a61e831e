//! Generates random valid models, checks every law, then breaks one map
//! entry and shows the minimized counterexample.
//!
//!     cargo run --release --example law_fuzzing

use gqt::check::{check_laws, fuzz, generate_model, minimize, GeneratorParams};
use gqt::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let summary = fuzz(&GeneratorParams::new(8, 5, 3, 7), 1000)?;
    println!(
        "{} models, {} violations, {} notes",
        summary.models_checked, summary.violations, summary.notes
    );
    for (kind, n) in &summary.notes_by_kind {
        println!("  note {kind}: {n}");
    }

    let model = generate_model(&GeneratorParams::new(6, 3, 1, 3))?;
    let p = model
        .propositions()
        .next()
        .expect("three propositions")
        .clone();
    let z = model.space().ids().next().expect("six states");
    let t = model
        .space()
        .ids()
        .find(|&t| p.yes().at(z) != StateRef::Proper(t))
        .expect("another state");
    let broken = model.with_proposition(Proposition::new(
        p.name(),
        p.yes().with_entry(z, StateRef::Proper(t)),
        p.no().clone(),
    )?)?;
    let violations = check_laws(&broken);
    println!(
        "after redirecting {}.yes({}):",
        p.name(),
        model.space().name(z)
    );
    for v in &violations {
        let small = minimize(&broken, v)?;
        println!(
            "  {v}  (replays on {} of {} states)",
            small.space().len(),
            broken.space().len()
        );
    }
    Ok(())
}

//! Reads a model, validates it, reports pair classes and writes the
//! canonical form back out.
//!
//!     cargo run --example model_files -- path/to/model.json

use gqt::io::{load_model, serialize_model};
use gqt::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/bell.json").into());
    let model = load_model(&path)?;

    let report = validate_model(&model);
    println!(
        "{path}: {} states, {} violations",
        model.space().len(),
        report.len()
    );

    let obs: Vec<&Observable> = model.observables().collect();
    for (i, a) in obs.iter().enumerate() {
        for b in &obs[i + 1..] {
            println!("  {} / {}: {}", a.name(), b.name(), classify_pair(a, b)?.0);
        }
    }

    let text = serialize_model(&model);
    let out = std::env::temp_dir().join("gqt-canonical.json");
    std::fs::write(&out, &text)?;
    println!(
        "canonical form ({} bytes) written to {}",
        text.len(),
        out.display()
    );
    Ok(())
}

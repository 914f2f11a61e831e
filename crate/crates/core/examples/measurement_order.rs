//! Measurement sequences on the bistable figure model: the order of two
//! strongly complementary measurements changes the final state.
//!
//!     cargo run --example measurement_order

use gqt::io::load_model;
use gqt::prelude::*;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = load_model(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/fixtures/bistable.json"
    ))?;
    let (orient, depth) = (model.observable("ORIENT")?, model.observable("DEPTH")?);
    println!("ORIENT vs DEPTH: {}", classify_pair(orient, depth)?.0);

    let start = model.state("near")?;
    for steps in [
        [("ORIENT", "left"), ("DEPTH", "near")],
        [("DEPTH", "near"), ("ORIENT", "left")],
    ] {
        let end = measure_sequence(&model, start, &steps)?;
        let path: Vec<String> = steps.iter().map(|(o, v)| format!("{o}={v}")).collect();
        println!(
            "near, {} -> {}",
            path.join(" then "),
            model.space().display(end)
        );
    }
    Ok(())
}

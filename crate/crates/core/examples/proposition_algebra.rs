//! Negation, conjunction and modal status on a small hand-written model.
//!
//!     cargo run --example proposition_algebra

use gqt::io::parse_model;
use gqt::prelude::*;

const MODEL: &str = r#"{
  "states": ["lit", "dark", "unknown"],
  "propositions": {
    "ON": {
      "yes": { "lit": "lit", "dark": null, "unknown": "lit" },
      "no": { "lit": null, "dark": "dark", "unknown": "dark" }
    },
    "KNOWN": {
      "yes": { "lit": "lit", "dark": "dark", "unknown": null },
      "no": { "lit": null, "dark": null, "unknown": "unknown" }
    }
  },
  "observables": {}
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = parse_model(MODEL)?;
    let on = model.proposition("ON")?;
    let known = model.proposition("KNOWN")?;
    let space = model.space();

    for z in space.refs().filter(|z| !z.is_zero()) {
        println!(
            "{:8} ON {:?}, KNOWN {:?}",
            space.display(z),
            modal_status(&on, z)?,
            modal_status(&known, z)?
        );
    }

    let not_on = negate(&on);
    println!(
        "¬ON.yes(unknown) = {}",
        space.display(apply(&not_on, Outcome::Yes, model.state("unknown")?)?)
    );

    match conjunction(&on, &known) {
        Ok(d) => println!("{} is known on its {:?} side", d.provenance, d.known_side),
        Err(e) => println!("ON AND KNOWN: {e}"),
    }
    let contradiction = conjunction(&on, &not_on)?;
    println!(
        "ON AND ¬ON is constant zero: {}",
        contradiction.known_map.is_constant_zero()
    );
    let one_and_on = conjunction(model.one(), &on)?;
    println!(
        "1 AND ON realizes {}",
        realize(&model, &one_and_on)?
            .map(|p| p.name().to_string())
            .unwrap_or_default()
    );
    Ok(())
}

//! The model document: JSON with explicit, total state maps.
//!
//! ```json
//! {
//!   "states": ["z0", "z1"],
//!   "propositions": {
//!     "Z0": { "yes": { "z0": "z0", "z1": null }, "no": { "z0": null, "z1": "z1" } }
//!   },
//!   "observables": {
//!     "Z": { "spectrum": ["0", "1"], "family": { "0": "Z0", "1": "¬Z0" } }
//!   }
//! }
//! ```
//!
//! `null` is the zero state. `ONE` and `ZERO` are implicit.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use super::ordered::OrderedMap;
use super::DocError;
use crate::model::{Model, Partition};
use crate::observable::Observable;
use crate::proposition::{PropMap, Proposition};
use crate::state::{StateRef, StateSpace};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawModel {
    states: Vec<String>,
    #[serde(default)]
    propositions: OrderedMap<RawProposition>,
    #[serde(default)]
    observables: OrderedMap<RawObservable>,
    #[serde(default)]
    partition: Option<RawPartition>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProposition {
    yes: OrderedMap<Option<String>>,
    no: OrderedMap<Option<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawObservable {
    pub spectrum: Vec<String>,
    pub family: OrderedMap<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawPartition {
    subsystems: Vec<String>,
    #[serde(default)]
    local: OrderedMap<String>,
    #[serde(default)]
    global: Vec<String>,
}

impl RawPartition {
    pub fn build(&self) -> Result<Partition, DocError> {
        let mut global = BTreeSet::new();
        for name in &self.global {
            if !global.insert(name.clone()) {
                return Err(DocError::field(
                    "partition.global",
                    format!("duplicate entry {name:?}"),
                ));
            }
        }
        Ok(Partition {
            subsystems: self.subsystems.clone(),
            local: self
                .local
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect::<BTreeMap<_, _>>(),
            global,
        })
    }
}

fn build_map(
    space: &Arc<StateSpace>,
    raw: &OrderedMap<Option<String>>,
    path: &str,
) -> Result<PropMap, DocError> {
    for (key, _) in raw.iter() {
        if space.lookup(key).is_err() {
            return Err(DocError::field(path, format!("unknown state {key:?}")));
        }
    }
    let mut targets = Vec::with_capacity(space.len());
    for name in space.names() {
        let Some(target) = raw.get(name) else {
            return Err(DocError::field(
                path,
                format!("missing entry for state {name:?} (maps must be total)"),
            ));
        };
        targets.push(match target {
            None => StateRef::Zero,
            Some(t) => StateRef::Proper(space.lookup(t).map_err(|_| {
                DocError::field(format!("{path}.{name}"), format!("unknown state {t:?}"))
            })?),
        });
    }
    PropMap::new(Arc::clone(space), targets).map_err(|e| DocError::model(path, e))
}

/// Resolves named observable families against `model`.
pub(crate) fn build_observables(
    model: &Model,
    raw: &OrderedMap<RawObservable>,
) -> Result<Vec<Observable>, DocError> {
    let mut out = Vec::new();
    for (name, obs) in raw.iter() {
        let path = format!("observables.{name}");
        let mut family = Vec::new();
        for (value, prop) in obs.family.iter() {
            let p = model
                .proposition(prop)
                .map_err(|e| DocError::model(format!("{path}.family.{value}"), e))?;
            family.push((value.to_string(), p));
        }
        let a = Observable::new(name, obs.spectrum.clone(), family)
            .map_err(|e| DocError::model(&path, e))?;
        out.push(a);
    }
    Ok(out)
}

/// Parses a model document. Only structure is checked here; the GQT laws
/// are left to [`validate_model`](crate::model::validate_model).
pub fn parse_model(text: &str) -> Result<Model, DocError> {
    let raw: RawModel = serde_json::from_str(text)?;
    let space = StateSpace::new(raw.states.clone()).map_err(|e| DocError::model("states", e))?;
    let mut props = Vec::new();
    for (name, p) in raw.propositions.iter() {
        let path = format!("propositions.{name}");
        let yes = build_map(&space, &p.yes, &format!("{path}.yes"))?;
        let no = build_map(&space, &p.no, &format!("{path}.no"))?;
        props.push(Proposition::new(name, yes, no).map_err(|e| DocError::model(&path, e))?);
    }
    let base = Model::new(Arc::clone(&space), props, Vec::new(), None)
        .map_err(|e| DocError::model("propositions", e))?;
    let observables = build_observables(&base, &raw.observables)?;
    let partition = raw
        .partition
        .as_ref()
        .map(RawPartition::build)
        .transpose()?;
    base.with_observables(observables, partition)
        .map_err(|e| DocError::model("observables", e))
}

fn map_value(space: &StateSpace, map: &PropMap) -> Value {
    let mut out = Map::new();
    for id in space.ids() {
        let target = match map.at(id) {
            StateRef::Proper(t) => Value::String(space.name(t).to_string()),
            StateRef::Zero => Value::Null,
        };
        out.insert(space.name(id).to_string(), target);
    }
    Value::Object(out)
}

pub(crate) fn partition_value(p: &Partition) -> Value {
    let local: Map<String, Value> = p
        .local
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    json!({
        "subsystems": p.subsystems,
        "local": local,
        "global": p.global.iter().collect::<Vec<_>>(),
    })
}

/// Canonical JSON: schema key order, names sorted, map keys in state order,
/// two-space indentation, trailing newline.
pub fn serialize_model(model: &Model) -> String {
    let space = model.space();
    let mut props = Map::new();
    for p in model.propositions() {
        props.insert(
            p.name().to_string(),
            json!({ "yes": map_value(space, p.yes()), "no": map_value(space, p.no()) }),
        );
    }
    let mut observables = Map::new();
    for a in model.observables() {
        let family: Map<String, Value> = a
            .branches()
            .map(|(v, p)| (v.to_string(), Value::String(p.name().to_string())))
            .collect();
        observables.insert(
            a.name().to_string(),
            json!({ "spectrum": a.spectrum(), "family": family }),
        );
    }
    let mut doc = Map::new();
    doc.insert("states".into(), json!(space.names()));
    doc.insert("propositions".into(), Value::Object(props));
    doc.insert("observables".into(), Value::Object(observables));
    if let Some(p) = model.partition() {
        doc.insert("partition".into(), partition_value(p));
    }
    let mut text =
        serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
    text.push('\n');
    text
}

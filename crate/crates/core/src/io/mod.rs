//! JSON document formats: [`parse_model`]/[`serialize_model`] for models and
//! [`parse_quantum`] for quantum inputs.

use std::path::Path;

use thiserror::Error;

use crate::quantum::QuantumError;
use crate::{GqtError, Model};

mod model_doc;
mod ordered;
mod quantum_doc;

pub use model_doc::{parse_model, serialize_model};
pub use quantum_doc::{cap_exceeded, parse_quantum, QuantumBuild, QuantumDocument, DEFAULT_CAP};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{path}: {source}")]
    Model { path: String, source: GqtError },
    #[error("{path}: {source}")]
    Quantum { path: String, source: QuantumError },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl DocError {
    pub(crate) fn field(path: impl Into<String>, message: impl Into<String>) -> Self {
        DocError::Field {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn model(path: impl Into<String>, source: GqtError) -> Self {
        DocError::Model {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn quantum(path: impl Into<String>, source: QuantumError) -> Self {
        match source {
            QuantumError::Model(source) => DocError::model(path, source),
            source => DocError::Quantum {
                path: path.into(),
                source,
            },
        }
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String, DocError> {
    std::fs::read_to_string(path).map_err(|source| DocError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_model(path: impl AsRef<Path>) -> Result<Model, DocError> {
    let path = path.as_ref();
    parse_model(&read_text(path)?).map_err(|e| match e {
        DocError::Json(e) => DocError::field(path.display().to_string(), e.to_string()),
        other => other,
    })
}

pub fn load_quantum(path: impl AsRef<Path>) -> Result<QuantumDocument, DocError> {
    let path = path.as_ref();
    parse_quantum(&read_text(path)?).map_err(|e| match e {
        DocError::Json(e) => DocError::field(path.display().to_string(), e.to_string()),
        other => other,
    })
}

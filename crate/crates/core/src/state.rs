//! State spaces and state references.
//!
//! A [`StateSpace`] is an ordered, finite set of opaque proper state names.
//! Every space implicitly carries the improper zero state, written `o` in
//! text output and `null` in documents. It is represented by
//! [`StateRef::Zero`] and is absorbing under every proposition map.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{GqtError, Result};

/// Text rendering of the zero state.
pub const ZERO_STATE_TEXT: &str = "o";

/// Index of a proper state inside its [`StateSpace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub(crate) u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A proper state or the improper zero state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateRef {
    Proper(StateId),
    Zero,
}

impl StateRef {
    pub fn is_zero(self) -> bool {
        matches!(self, StateRef::Zero)
    }

    pub fn proper(self) -> Option<StateId> {
        match self {
            StateRef::Proper(id) => Some(id),
            StateRef::Zero => None,
        }
    }
}

impl From<StateId> for StateRef {
    fn from(id: StateId) -> Self {
        StateRef::Proper(id)
    }
}

#[derive(Debug, Clone)]
pub struct StateSpace {
    names: Vec<String>,
    index: HashMap<String, StateId>,
}

impl StateSpace {
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(GqtError::EmptySpace);
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name == ZERO_STATE_TEXT {
                return Err(GqtError::InvalidStateName(name.clone()));
            }
            if index.insert(name.clone(), StateId(i as u32)).is_some() {
                return Err(GqtError::DuplicateName {
                    kind: "state",
                    name: name.clone(),
                });
            }
        }
        Ok(Arc::new(StateSpace { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: StateId) -> &str {
        &self.names[id.index()]
    }

    pub fn lookup(&self, name: &str) -> Result<StateId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| GqtError::UnknownState(name.to_string()))
    }

    /// Proper states in declaration order.
    pub fn ids(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.names.len() as u32).map(StateId)
    }

    /// Proper states followed by the zero state.
    pub fn refs(&self) -> impl Iterator<Item = StateRef> + '_ {
        self.ids().map(StateRef::Proper).chain([StateRef::Zero])
    }

    pub fn display(&self, state: StateRef) -> &str {
        match state {
            StateRef::Proper(id) => self.name(id),
            StateRef::Zero => ZERO_STATE_TEXT,
        }
    }

    /// Sort key giving the lexicographic state-name order used in reports.
    pub(crate) fn sort_key(&self, id: StateId) -> &str {
        self.name(id)
    }
}

impl PartialEq for StateSpace {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for StateSpace {}

impl fmt::Display for StateSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(", "))
    }
}

pub(crate) fn same_space(a: &Arc<StateSpace>, b: &Arc<StateSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

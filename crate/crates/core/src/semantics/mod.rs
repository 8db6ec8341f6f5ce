//! Finite-model semantics.
//!
//! A model interprets every relation name as a binary relation on a finite
//! carrier `0..size`; names it does not mention denote the empty relation.

mod eval;
mod oracle;
mod relation;
mod text;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use eval::{
    eval_label, eval_term, falsifying_pair, graph_extension, holds, holds_labels, natural_model,
    satisfies, slice_extension, Evaluator,
};
pub use oracle::{find_countermodel, Countermodel, OracleError, DEFAULT_ORACLE_BITS};
pub use relation::Relation;
#[cfg(test)]
pub(crate) use eval::tests::for_each_model;
pub use text::{parse_model, render_model, ModelFormatError};

/// Finite carrier `0..size` with an interpretation per relation name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ModelRepr", into = "ModelRepr")]
pub struct Model {
    size: usize,
    relations: BTreeMap<String, Relation>,
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    size: usize,
    relations: BTreeMap<String, Vec<(usize, usize)>>,
}

impl TryFrom<ModelRepr> for Model {
    type Error = String;
    fn try_from(r: ModelRepr) -> Result<Self, String> {
        let mut m = Model::new(r.size);
        for (name, pairs) in r.relations {
            if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a >= r.size || b >= r.size) {
                return Err(format!("pair ({a},{b}) of `{name}` is outside the carrier"));
            }
            m.set(name, Relation::from_pairs(r.size, pairs));
        }
        Ok(m)
    }
}

impl From<Model> for ModelRepr {
    fn from(m: Model) -> Self {
        ModelRepr {
            size: m.size,
            relations: m
                .relations
                .into_iter()
                .map(|(k, v)| (k, v.pairs()))
                .collect(),
        }
    }
}

impl Model {
    pub fn new(size: usize) -> Self {
        Model {
            size,
            relations: BTreeMap::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn set(&mut self, name: impl Into<String>, r: Relation) {
        assert_eq!(r.size(), self.size, "relation over a different carrier");
        self.relations.insert(name.into(), r);
    }

    pub fn with(mut self, name: &str, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let r = Relation::from_pairs(self.size, pairs);
        self.set(name, r);
        self
    }

    /// Interpretation of `name`; empty when the model does not mention it.
    pub fn relation(&self, name: &str) -> Relation {
        self.relations
            .get(name)
            .cloned()
            .unwrap_or_else(|| Relation::empty(self.size))
    }

    pub fn relations(&self) -> &BTreeMap<String, Relation> {
        &self.relations
    }
}

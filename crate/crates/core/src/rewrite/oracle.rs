use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::model::{satisfies, Assignment, CheckConfig, FiniteEpigroup, ModelError};
use crate::terms::{Identity, Word};

/// A model and assignment telling two words apart.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub model: String,
    pub witness: Assignment,
    /// `witness` rendered with the model's element names.
    pub rendered: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub models_checked: usize,
    /// In model order, at most one per model.
    pub separations: Vec<Separation>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.separations.is_empty()
    }
}

/// Compares `lhs` and `rhs` under every assignment in every model.
pub fn oracle_check(
    lhs: &Word,
    rhs: &Word,
    models: &[(String, FiniteEpigroup)],
    config: &CheckConfig,
) -> Result<OracleReport, ModelError> {
    let id = Identity::new(lhs.clone(), rhs.clone());
    let results: Vec<Result<Option<Separation>, ModelError>> = models
        .par_iter()
        .map(|(name, s)| {
            let sat = satisfies(s, &id, config)?;
            Ok(sat.witness.map(|witness| Separation {
                model: name.clone(),
                rendered: witness.render(s),
                witness,
            }))
        })
        .collect();
    let mut separations = Vec::new();
    for r in results {
        separations.extend(r?);
    }
    Ok(OracleReport { models_checked: models.len(), separations })
}

//! The single-file JSON input document: a quiver (as a count matrix or a
//! labeled arrow list), an optional potential, and an optional catalog of
//! modules, plus serialization helpers for series and reports.

use crate::potential::{Arrow, CyclicWord, LabeledQuiver, Potential, PotentialError, Qp};
use crate::quiver::{Quiver, QuiverError};
use crate::repr::CatalogModule;
use crate::torus::TorusSeries;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid coefficient `{0}`")]
    BadCoefficient(String),
    #[error("document has no quiver")]
    MissingQuiver,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

/// One potential term in the document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermSpec {
    pub cycle: Vec<String>,
    pub coeff: String,
}

/// Quiver given either as a count matrix or as labeled arrows.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuiverSpec {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<Vec<u32>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labeled: Option<Vec<Arrow>>,
}

/// The bundled input document.
#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq, Eq)]
pub struct Document {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub potential: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, CatalogModule>,
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_qp(qp: &Qp) -> Self {
        let labeled = qp.quiver().arrows().to_vec();
        let potential = qp
            .potential()
            .terms()
            .map(|(w, c)| TermSpec {
                cycle: w.labels().to_vec(),
                coeff: c.to_string(),
            })
            .collect();
        Document {
            quiver: Some(QuiverSpec {
                n: qp.quiver().rank(),
                arrows: None,
                labeled: Some(labeled),
            }),
            potential,
            modules: BTreeMap::new(),
        }
    }

    /// Build the validated QP; the labeled form wins when both are given.
    pub fn to_qp(&self) -> Result<Qp, DocError> {
        let spec = self.quiver.as_ref().ok_or(DocError::MissingQuiver)?;
        let labeled = match (&spec.labeled, &spec.arrows) {
            (Some(arrows), _) => LabeledQuiver::new(spec.n, arrows.clone())?,
            (None, Some(matrix)) => {
                let q = Quiver::new(spec.n, matrix.clone())?;
                LabeledQuiver::from_counts(&q)
            }
            (None, None) => return Err(DocError::MissingQuiver),
        };
        let mut w = Potential::zero();
        for term in &self.potential {
            let coeff = BigRational::from_str(&term.coeff)
                .map_err(|_| DocError::BadCoefficient(term.coeff.clone()))?;
            w.add_term(CyclicWord::new(term.cycle.clone(), &labeled)?, coeff);
        }
        Ok(Qp::new(labeled, w)?)
    }
}

/// Series term for CLI output (deterministic: lexicographic on exponents).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesTerm {
    pub w: Vec<i64>,
    pub v: Vec<i64>,
    pub c: String,
}

pub fn series_terms(s: &TorusSeries) -> Vec<SeriesTerm> {
    s.terms()
        .map(|((w, v), c)| SeriesTerm {
            w: w.clone(),
            v: v.clone(),
            c: c.to_string(),
        })
        .collect()
}

//! The JSON structure-file format.
//!
//! ```json
//! {
//!   "name": "heisenberg",
//!   "dimension": 3,
//!   "brackets": [{ "i": 1, "j": 2, "k": 3, "coeff": "-2" }],
//!   "phi": [["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "0"]],
//!   "xi": ["0", "0", "1"],
//!   "eta": ["0", "0", "1"],
//!   "g": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
//!   "seifert": { "base_genus": 1, "base_orientable": true, "cone_points": [], "b": -1 },
//!   "b1": 2
//! }
//! ```
//!
//! Indices are 1-based; `{i, j, k, coeff}` means `[e_i, e_j]` has `coeff` on
//! `e_k`. Matrices are row-major and `phi` column `j` is `φ(e_j)`. Every
//! scalar is a string `"p"` or `"p/q"`; JSON numbers and decimals are rejected.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::acms::AlmostContactMetricStructure;
use crate::calculus::{BracketEntry, InvariantEndo, InvariantForm, InvariantVector, LieAlgebra};
use crate::classify::SeifertData;
use crate::linalg::{parse_rational, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureFileError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error in `{field}`: {invariant}")]
    Validation { field: String, invariant: String },
}

impl StructureFileError {
    fn validation(field: impl Into<String>, invariant: impl Into<String>) -> Self {
        StructureFileError::Validation {
            field: field.into(),
            invariant: invariant.into(),
        }
    }
}

/// A rational read from, and written as, a JSON string.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatString(pub Rational);

impl Serialize for RatString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for RatString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RatVisitor;

        impl Visitor<'_> for RatVisitor {
            type Value = RatString;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an exact rational string such as \"-2\" or \"1/3\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<RatString, E> {
                parse_rational(v)
                    .map(RatString)
                    .ok_or_else(|| E::custom(format!("`{v}` is not an exact rational (use \"p\" or \"p/q\")")))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<RatString, E> {
                Err(E::custom(format!("floating-point value {v} rejected, write rationals as strings")))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RatString, E> {
                Err(E::custom(format!("bare number {v} rejected, write rationals as strings")))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RatString, E> {
                Err(E::custom(format!("bare number {v} rejected, write rationals as strings")))
            }
        }

        deserializer.deserialize_any(RatVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: RatString,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    #[serde(default)]
    pub brackets: Vec<BracketRecord>,
    pub phi: Vec<Vec<RatString>>,
    pub xi: Vec<RatString>,
    pub eta: Vec<RatString>,
    pub g: Vec<Vec<RatString>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seifert: Option<SeifertData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<u64>,
}

fn check_len(field: &str, expected: usize, found: usize) -> Result<(), StructureFileError> {
    if expected == found {
        Ok(())
    } else {
        Err(StructureFileError::validation(
            field,
            format!("length {expected} (dimension), found {found}"),
        ))
    }
}

fn check_square(field: &str, dim: usize, m: &[Vec<RatString>]) -> Result<(), StructureFileError> {
    check_len(field, dim, m.len())?;
    for (r, row) in m.iter().enumerate() {
        check_len(&format!("{field}[{r}]"), dim, row.len())?;
    }
    Ok(())
}

fn matrix(m: &[Vec<RatString>]) -> RatMatrix {
    let n = m.len();
    let entries = m.iter().flat_map(|row| row.iter().map(|x| x.0.clone())).collect();
    RatMatrix::from_entries(n, n, entries).expect("validated square matrix")
}

fn vector(v: &[RatString]) -> Vec<Rational> {
    v.iter().map(|x| x.0.clone()).collect()
}

fn rows(m: &RatMatrix) -> Vec<Vec<RatString>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().cloned().map(RatString).collect())
        .collect()
}

/// Parses and validates a structure file.
pub fn parse_structure_file(text: &str) -> Result<StructureFile, StructureFileError> {
    let file: StructureFile = serde_json::from_str(text).map_err(|e| {
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = e.to_string();
        StructureFileError::Parse {
            line: e.line(),
            column: e.column(),
            message: message.strip_suffix(&suffix).unwrap_or(&message).to_string(),
        }
    })?;
    file.validate()?;
    Ok(file)
}

impl StructureFile {
    pub fn validate(&self) -> Result<(), StructureFileError> {
        let n = self.dimension;
        if n == 0 {
            return Err(StructureFileError::validation("dimension", "dimension >= 1"));
        }
        for (idx, b) in self.brackets.iter().enumerate() {
            for (name, v) in [("i", b.i), ("j", b.j), ("k", b.k)] {
                if v == 0 || v > n {
                    return Err(StructureFileError::validation(
                        format!("brackets[{idx}].{name}"),
                        format!("index in 1..={n}"),
                    ));
                }
            }
        }
        check_square("phi", n, &self.phi)?;
        check_len("xi", n, self.xi.len())?;
        check_len("eta", n, self.eta.len())?;
        check_square("g", n, &self.g)?;
        if !matrix(&self.g).is_symmetric() {
            return Err(StructureFileError::validation("g", "g symmetric"));
        }
        if let Some(s) = &self.seifert {
            s.validate()
                .map_err(|e| StructureFileError::validation("seifert", e.to_string()))?;
        }
        self.algebra()?;
        Ok(())
    }

    pub fn algebra(&self) -> Result<LieAlgebra, StructureFileError> {
        let entries: Vec<BracketEntry> = self
            .brackets
            .iter()
            .map(|b| BracketEntry::new(b.i - 1, b.j - 1, b.k - 1, b.coeff.0.clone()))
            .collect();
        LieAlgebra::from_brackets(self.dimension, &entries)
            .map_err(|e| StructureFileError::validation("brackets", e.to_string()))
    }

    pub fn structure(&self) -> Result<AlmostContactMetricStructure, StructureFileError> {
        AlmostContactMetricStructure::new(
            self.algebra()?,
            InvariantEndo(matrix(&self.phi)),
            InvariantVector(vector(&self.xi)),
            InvariantForm::covector(&vector(&self.eta)),
            InvariantEndo(matrix(&self.g)),
        )
        .map_err(|e| StructureFileError::validation("structure", e.to_string()))
    }

    /// Writes a structure back out; brackets are listed for `i < j` only.
    pub fn from_structure(name: Option<String>, s: &AlmostContactMetricStructure) -> Self {
        let brackets = s
            .algebra()
            .bracket_entries()
            .into_iter()
            .map(|b| BracketRecord {
                i: b.i + 1,
                j: b.j + 1,
                k: b.k + 1,
                coeff: RatString(b.coeff),
            })
            .collect();
        StructureFile {
            name,
            dimension: s.dim(),
            brackets,
            phi: rows(s.phi().matrix()),
            xi: s.xi().components().iter().cloned().map(RatString).collect(),
            eta: s.eta().coeffs().iter().cloned().map(RatString).collect(),
            g: rows(s.g().matrix()),
            seifert: None,
            b1: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure files always serialize")
    }
}

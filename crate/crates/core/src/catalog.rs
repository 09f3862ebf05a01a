//! Model structures with hand-derived expectations.
//!
//! Each entry is stored in the structure-file format and carries a link to
//! its derivation in `docs/catalog.md`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::acms::{classify_structure, AcmsError, StructureLabel, Tau};
use crate::basic::{basic_cohomology, decompose_deta, deform, euler_class_basic, DeformationCase};
use crate::classify::{classify_seifert_data, decide_by_first_betti, Branch, Geometry};
use crate::linalg::{rat, ratio, Rational};
use crate::structure_file::{parse_structure_file, StructureFile};

/// Expected pipeline output; `None` fields are not compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub label: StructureLabel,
    pub rank: Option<usize>,
    pub tau: Option<Rational>,
    pub r: Option<Rational>,
    pub alpha_zero: Option<bool>,
    pub case: Option<DeformationCase>,
    pub basic_dims: Option<Vec<usize>>,
    pub euler_zero: Option<bool>,
    pub geometry: Option<Geometry>,
    pub branch: Option<Branch>,
}

impl Expected {
    fn invalid() -> Self {
        Expected {
            label: StructureLabel::Invalid,
            rank: None,
            tau: None,
            r: None,
            alpha_zero: None,
            case: None,
            basic_dims: None,
            euler_zero: None,
            geometry: None,
            branch: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub source: &'static str,
    pub file: StructureFile,
    pub derivation: &'static str,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn is_quasi_sasakian(&self) -> bool {
        self.expected.label.is_quasi_sasakian()
    }
}

#[allow(clippy::too_many_arguments)]
fn entry(
    name: &'static str,
    source: &'static str,
    label: StructureLabel,
    rank: usize,
    tau: Rational,
    basic_dims: [usize; 3],
    seifert: Option<(Geometry, Branch)>,
) -> CatalogEntry {
    let file = parse_structure_file(source).expect("catalog files are valid");
    let euler_zero = tau.is_zero();
    CatalogEntry {
        name,
        source,
        file,
        derivation: derivation_link(name),
        expected: Expected {
            label,
            rank: Some(rank),
            r: Some(tau.clone()),
            tau: Some(tau),
            alpha_zero: Some(true),
            case: Some(if euler_zero {
                DeformationCase::Cosymplectic
            } else {
                DeformationCase::Contact
            }),
            basic_dims: Some(basic_dims.to_vec()),
            euler_zero: Some(euler_zero),
            geometry: seifert.map(|s| s.0),
            branch: seifert.map(|s| s.1),
        },
    }
}

fn derivation_link(name: &'static str) -> &'static str {
    match name {
        "abelian" => "docs/catalog.md#abelian",
        "heisenberg" => "docs/catalog.md#heisenberg",
        "heisenberg_scaled" => "docs/catalog.md#heisenberg_scaled",
        "su2" => "docs/catalog.md#su2",
        "e2" => "docs/catalog.md#e2",
        "broken_metric" => "docs/catalog.md#broken_metric",
        "tilted_e2" => "docs/catalog.md#tilted_e2",
        _ => "docs/catalog.md",
    }
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    use StructureLabel::*;
    let mut entries = vec![
        entry(
            "abelian",
            include_str!("../catalog/abelian.json"),
            CoKahler,
            1,
            rat(0),
            [1, 2, 1],
            Some((Geometry::E3, Branch::KahlerMappingTorus)),
        ),
        entry(
            "heisenberg",
            include_str!("../catalog/heisenberg.json"),
            Sasakian,
            3,
            rat(1),
            [1, 2, 1],
            Some((Geometry::Nil, Branch::Sasakian)),
        ),
        entry(
            "heisenberg_scaled",
            include_str!("../catalog/heisenberg_scaled.json"),
            QuasiSasakian,
            3,
            rat(3),
            [1, 2, 1],
            Some((Geometry::Nil, Branch::Sasakian)),
        ),
        entry(
            "su2",
            include_str!("../catalog/su2.json"),
            Sasakian,
            3,
            rat(1),
            [1, 0, 1],
            Some((Geometry::S3, Branch::Sasakian)),
        ),
        entry(
            "e2",
            include_str!("../catalog/e2.json"),
            CoKahler,
            1,
            rat(0),
            [1, 0, 1],
            Some((Geometry::E3, Branch::KahlerMappingTorus)),
        ),
        entry(
            "tilted_e2",
            include_str!("../catalog/tilted_e2.json"),
            AlmostContactMetricOnly,
            3,
            ratio(-1, 2),
            [1, 1, 1],
            None,
        ),
    ];
    let source = include_str!("../catalog/broken_metric.json");
    entries.push(CatalogEntry {
        name: "broken_metric",
        source,
        file: parse_structure_file(source).expect("catalog files are valid"),
        derivation: derivation_link("broken_metric"),
        expected: Expected::invalid(),
    });
    entries
}

pub fn find_entry(name: &str) -> Option<CatalogEntry> {
    catalog_entries().into_iter().find(|e| e.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub entry: String,
    pub field: String,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} expected {}, found {}",
            self.entry, self.field, self.expected, self.found
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryOutcome {
    pub name: String,
    pub label: String,
    pub expected_invalid: bool,
    pub derivation: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub entries: Vec<EntryOutcome>,
    pub mismatches: Vec<Mismatch>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

trait Show {
    fn show(&self) -> String;
}

impl Show for Rational {
    fn show(&self) -> String {
        self.to_string()
    }
}

macro_rules! show_debug {
    ($($t:ty),*) => {$(
        impl Show for $t {
            fn show(&self) -> String {
                format!("{self:?}")
            }
        }
    )*};
}

show_debug!(usize, bool, Vec<usize>, StructureLabel, DeformationCase, Geometry, Branch);

struct Collector<'a> {
    entry: &'a str,
    mismatches: Vec<Mismatch>,
}

impl Collector<'_> {
    fn compare<T: PartialEq + Show>(&mut self, field: &str, expected: Option<&T>, found: Option<&T>) {
        if let Some(exp) = expected {
            if found != Some(exp) {
                self.mismatches.push(Mismatch {
                    entry: self.entry.to_string(),
                    field: field.to_string(),
                    expected: exp.show(),
                    found: found.map_or_else(|| "nothing".to_string(), Show::show),
                });
            }
        }
    }

    fn require(&mut self, field: &str, holds: bool, detail: String) {
        if !holds {
            self.mismatches.push(Mismatch {
                entry: self.entry.to_string(),
                field: field.to_string(),
                expected: "consistent".into(),
                found: detail,
            });
        }
    }
}

fn verify_entry(entry: &CatalogEntry) -> (StructureLabel, Vec<Mismatch>) {
    let exp = &entry.expected;
    let mut c = Collector {
        entry: entry.name,
        mismatches: Vec::new(),
    };
    let s = match entry.file.structure() {
        Ok(s) => s,
        Err(e) => {
            c.require("structure", false, e.to_string());
            return (StructureLabel::Invalid, c.mismatches);
        }
    };
    let verdict = match classify_structure(&s) {
        Ok(v) => v,
        Err(AcmsError::InvalidStructure(report)) => {
            c.compare("label", Some(&exp.label), Some(&StructureLabel::Invalid));
            c.require("witness", report.failures().next().is_some(), "no named failure".into());
            return (StructureLabel::Invalid, c.mismatches);
        }
        Err(e) => {
            c.require("classification", false, e.to_string());
            return (StructureLabel::Invalid, c.mismatches);
        }
    };
    c.compare("label", Some(&exp.label), Some(&verdict.label));
    c.compare("rank", exp.rank.as_ref(), Some(&verdict.rank));
    let tau = match &verdict.tau {
        Tau::Constant(t) => Some(t.clone()),
        _ => None,
    };
    c.compare("tau", exp.tau.as_ref(), tau.as_ref());
    if verdict.label.is_quasi_sasakian() {
        c.require(
            "rank parity",
            verdict.rank % 2 == 1,
            format!("even rank {}", verdict.rank),
        );
    }

    let dec = decompose_deta(&s).ok();
    c.compare("r", exp.r.as_ref(), dec.as_ref().map(|d| &d.r));
    c.compare(
        "alpha = 0",
        exp.alpha_zero.as_ref(),
        dec.as_ref().map(|d| d.alpha.is_zero()).as_ref(),
    );
    let def = deform(&s).ok();
    c.compare("deformation case", exp.case.as_ref(), def.as_ref().map(|d| &d.case));
    if let Some(d) = &def {
        c.require(
            "deformation checks",
            d.checks.passed(),
            d.checks.failures().map(|f| f.name.clone()).collect::<Vec<_>>().join(", "),
        );
    }

    let cohomology = basic_cohomology(s.algebra(), s.xi());
    c.compare("basic cohomology dims", exp.basic_dims.as_ref(), Some(&cohomology.dims));
    let euler_zero = euler_class_basic(&s).ok().map(|e| e.is_zero());
    c.compare("euler class zero", exp.euler_zero.as_ref(), euler_zero.as_ref());
    if let (Some(d), Some(z)) = (&dec, euler_zero) {
        c.require(
            "r = 0 iff euler class zero",
            d.r.is_zero() == z,
            format!("r = {}, euler zero = {z}", d.r),
        );
    }

    if let Some(seifert) = &entry.file.seifert {
        match classify_seifert_data(seifert, entry.file.b1) {
            Ok(mv) => {
                c.compare("geometry", exp.geometry.as_ref(), mv.geometry.as_ref());
                c.compare("branch", exp.branch.as_ref(), Some(&mv.branch));
                if let Some(z) = euler_zero {
                    c.require(
                        "euler class nonzero iff Sasakian branch",
                        !z == (mv.branch == Branch::Sasakian),
                        format!("euler zero = {z}, branch {}", mv.branch),
                    );
                }
                if let Some(b1) = entry.file.b1 {
                    let by_betti = decide_by_first_betti(b1);
                    c.require(
                        "first Betti number agrees",
                        by_betti == mv.branch,
                        format!("b1 = {b1} gives {by_betti}, Seifert data gives {}", mv.branch),
                    );
                }
            }
            Err(e) => c.require("seifert", false, e.to_string()),
        }
    }
    (verdict.label, c.mismatches)
}

pub fn verify_entries(entries: &[CatalogEntry]) -> CatalogReport {
    let mut outcomes = Vec::new();
    let mut mismatches = Vec::new();
    for entry in entries {
        let (label, found) = verify_entry(entry);
        outcomes.push(EntryOutcome {
            name: entry.name.to_string(),
            label: label.name().to_string(),
            expected_invalid: entry.expected.label == StructureLabel::Invalid,
            derivation: entry.derivation.to_string(),
            passed: found.is_empty(),
        });
        mismatches.extend(found);
    }
    CatalogReport {
        entries: outcomes,
        mismatches,
    }
}

pub fn run_catalog_verification() -> CatalogReport {
    verify_entries(&catalog_entries())
}

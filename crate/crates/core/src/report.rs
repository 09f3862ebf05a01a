//! Machine-readable reports.
//!
//! Every field is always present (absent blocks are `null`) so the field
//! order is fixed and re-serializing a parsed report reproduces it byte for
//! byte.

use serde::{Deserialize, Serialize};

use crate::acms::{
    classify_structure, reeb_invariance_check, verify_anti_quasi_sasakian, AcmsError,
    AlmostContactMetricStructure, Check, StructureLabel,
};
use crate::basic::{
    basic_cohomology, deform, deformation_form_via_star, euler_class_basic, omega_generates_h2,
    DeformationCase, EulerClass, OmegaNorm,
};
use crate::calculus::{InvariantForm, Orientation, Tensor12};
use crate::catalog::CatalogReport;
use crate::classify::{
    classify_monodromy, classify_seifert_data, decide_by_first_betti, monodromy_order,
    seifert_invariants, ClassifyError, ManifoldVerdict, Monodromy, SeifertData, BETTI_ASSUMPTION_NOTE,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub degree: usize,
    pub text: String,
    /// Coefficients on `e^I` for increasing `I` in lexicographic order.
    pub coefficients: Vec<String>,
}

impl From<&InvariantForm> for FormJson {
    fn from(beta: &InvariantForm) -> Self {
        FormJson {
            degree: beta.degree(),
            text: beta.to_string(),
            coefficients: beta.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTerm {
    /// 1-based basis pair `(i, j)`, `i < j`.
    pub pair: [usize; 2],
    pub value: String,
}

fn tensor_terms(t: &Tensor12) -> Vec<TensorTerm> {
    t.nonzero_pairs()
        .into_iter()
        .map(|(i, j, v)| TensorTerm {
            pair: [i + 1, j + 1],
            value: v.to_string(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictBlock {
    pub label: String,
    pub valid: bool,
    pub rank: Option<usize>,
    pub tau: Option<String>,
    pub normal: Option<bool>,
    pub normality_residual: Vec<TensorTerm>,
    pub omega: FormJson,
    pub d_eta: FormJson,
    pub d_omega: FormJson,
    pub evidence: Vec<Check>,
    pub reeb_invariance: Vec<Check>,
    pub anti_quasi_sasakian: Option<bool>,
    pub anti_quasi_sasakian_checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarFormBlock {
    pub orientation: String,
    pub star_omega: FormJson,
    pub omega_norm: String,
    pub matching_sign: Option<i32>,
    pub c: Option<String>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionBlock {
    pub case: String,
    pub r: String,
    pub normalized_r: String,
    pub alpha: FormJson,
    pub eta_tilde: FormJson,
    pub omega_tilde: FormJson,
    pub checks: Vec<Check>,
    pub star_form: Option<StarFormBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyBlock {
    /// Dimensions of `H_B^p` for `p = 0..dim-1`.
    pub dims: Vec<usize>,
    pub representatives: Vec<Vec<FormJson>>,
    pub omega_generates_h2: bool,
    pub euler_class: Option<String>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationBlock {
    pub input: String,
    pub order: Option<String>,
    pub chi_orb: Option<String>,
    pub euler_number: Option<String>,
    pub admits_quasi_sasakian: bool,
    pub branch: String,
    pub geometry: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub name: Option<String>,
    pub verdict: Option<VerdictBlock>,
    pub decomposition: Option<DecompositionBlock>,
    pub cohomology: Option<CohomologyBlock>,
    pub classification: Option<ClassificationBlock>,
    pub catalog: Option<CatalogReport>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, name: Option<String>) -> Self {
        Report {
            command: command.to_string(),
            name,
            verdict: None,
            decomposition: None,
            cohomology: None,
            classification: None,
            catalog: None,
            warnings: Vec::new(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn structure_warnings(s: &AlmostContactMetricStructure) -> Vec<String> {
    let mut w = Vec::new();
    if !s.algebra().is_unimodular() {
        w.push("Lie algebra is not unimodular: no lattice, so no compact quotient".to_string());
    }
    w
}

pub fn verdict_block(s: &AlmostContactMetricStructure) -> VerdictBlock {
    let base = |label: StructureLabel, valid: bool, evidence: Vec<Check>| VerdictBlock {
        label: label.name().to_string(),
        valid,
        rank: None,
        tau: None,
        normal: None,
        normality_residual: Vec::new(),
        omega: s.omega().into(),
        d_eta: (&s.d_eta()).into(),
        d_omega: (&s.d_omega()).into(),
        evidence,
        reeb_invariance: Vec::new(),
        anti_quasi_sasakian: None,
        anti_quasi_sasakian_checks: Vec::new(),
    };
    match classify_structure(s) {
        Ok(v) => {
            let aqs = verify_anti_quasi_sasakian(s);
            VerdictBlock {
                rank: Some(v.rank),
                tau: Some(v.tau.to_string()),
                normal: Some(v.normality_residual.is_zero()),
                normality_residual: tensor_terms(&v.normality_residual),
                reeb_invariance: reeb_invariance_check(s).checks,
                anti_quasi_sasakian: Some(aqs.holds),
                anti_quasi_sasakian_checks: aqs.checks.checks,
                ..base(v.label, true, v.evidence.checks)
            }
        }
        Err(AcmsError::InvalidStructure(report)) => base(StructureLabel::Invalid, false, report.checks),
        Err(e) => {
            let mut b = base(StructureLabel::Invalid, false, Vec::new());
            b.evidence.push(Check::fail("classification", e.to_string()));
            b
        }
    }
}

/// `verify`: the verdict block; the flag is whether the structure is valid.
pub fn verify_report(name: Option<String>, s: &AlmostContactMetricStructure) -> (Report, bool) {
    let mut r = Report::new("verify", name);
    let v = verdict_block(s);
    let ok = v.valid;
    r.verdict = Some(v);
    r.warnings = structure_warnings(s);
    (r, ok)
}

fn star_block(s: &AlmostContactMetricStructure, orientation: Orientation) -> Result<StarFormBlock, String> {
    let star = deformation_form_via_star(s, orientation).map_err(|e| e.to_string())?;
    Ok(StarFormBlock {
        orientation: orientation_symbol(orientation).to_string(),
        star_omega: (&star.star_omega).into(),
        omega_norm: match &star.norm {
            OmegaNorm::Rational(x) => x.to_string(),
            OmegaNorm::Irrational { norm_sq } => format!("sqrt({norm_sq})"),
        },
        matching_sign: star.matching_sign,
        c: star.c.as_ref().map(ToString::to_string),
        matches: star.matches,
    })
}

pub fn orientation_symbol(o: Orientation) -> &'static str {
    match o {
        Orientation::Positive => "+",
        Orientation::Negative => "-",
    }
}

fn case_name(c: DeformationCase) -> &'static str {
    match c {
        DeformationCase::Cosymplectic => "cosymplectic",
        DeformationCase::Contact => "contact",
    }
}

/// `deform`: verdict plus decomposition, deformation and the star-form
/// identity; the flag is whether a verified deformation was produced.
pub fn deform_report(
    name: Option<String>,
    s: &AlmostContactMetricStructure,
    orientation: Orientation,
) -> (Report, bool) {
    let (mut r, valid) = verify_report(name, s);
    r.command = "deform".into();
    if !valid {
        return (r, false);
    }
    match deform(s) {
        Ok(d) => {
            let star_form = match star_block(s, orientation) {
                Ok(b) => Some(b),
                Err(e) => {
                    r.warnings.push(format!("star-form identity not evaluated: {e}"));
                    None
                }
            };
            if let Some(b) = &star_form {
                if !b.matches {
                    r.warnings.push(format!(
                        "star-form identity does not hold for orientation {}",
                        b.orientation
                    ));
                }
            }
            let ok = d.checks.passed();
            r.decomposition = Some(DecompositionBlock {
                case: case_name(d.case).into(),
                r: d.r.to_string(),
                normalized_r: d.normalized_r.to_string(),
                alpha: (&d.alpha).into(),
                eta_tilde: (&d.eta_tilde).into(),
                omega_tilde: (&d.omega_tilde).into(),
                checks: d.checks.checks,
                star_form,
            });
            (r, ok)
        }
        Err(e) => {
            r.warnings.push(format!("decomposition failed: {e}"));
            (r, false)
        }
    }
}

/// `cohomology`: invariant basic cohomology and the Euler class.
pub fn cohomology_report(name: Option<String>, s: &AlmostContactMetricStructure) -> (Report, bool) {
    let mut r = Report::new("cohomology", name);
    let valid = classify_structure(s).is_ok();
    if !valid {
        r.warnings.push("structure fails the almost contact metric axioms".into());
    }
    r.warnings.extend(structure_warnings(s));
    let h = basic_cohomology(s.algebra(), s.xi());
    let euler = match euler_class_basic(s) {
        Ok(EulerClass::Zero) => Some("zero".to_string()),
        Ok(EulerClass::NonZero(_)) => Some("nonzero".to_string()),
        Err(e) => {
            r.warnings.push(format!("Euler class not defined: {e}"));
            None
        }
    };
    r.cohomology = Some(CohomologyBlock {
        dims: h.dims,
        representatives: h
            .representatives
            .iter()
            .map(|reps| reps.iter().map(FormJson::from).collect())
            .collect(),
        omega_generates_h2: omega_generates_h2(s),
        euler_class: euler,
        note: h.note.to_string(),
    });
    (r, valid)
}

fn classification_block(input: String, v: ManifoldVerdict) -> ClassificationBlock {
    ClassificationBlock {
        input,
        order: None,
        chi_orb: None,
        euler_number: None,
        admits_quasi_sasakian: v.admits_quasi_sasakian,
        branch: v.branch.to_string(),
        geometry: v.geometry.map(|g| g.name().to_string()),
        notes: v.notes,
    }
}

pub fn monodromy_report(m: &Monodromy) -> Report {
    let mut r = Report::new("classify monodromy", None);
    let mut block = classification_block(format!("monodromy {m}"), classify_monodromy(m));
    block.order = Some(monodromy_order(m).to_string());
    r.classification = Some(block);
    r
}

pub fn seifert_report(d: &SeifertData, b1: Option<u64>) -> Result<Report, ClassifyError> {
    let (chi, e) = seifert_invariants(d)?;
    let v = classify_seifert_data(d, b1)?;
    let mut r = Report::new("classify seifert", None);
    if let Some(b1) = b1 {
        let by_betti = decide_by_first_betti(b1);
        if by_betti != v.branch {
            r.warnings.push(format!(
                "b1 = {b1} points to {by_betti}, Seifert invariants to {}",
                v.branch
            ));
        }
    }
    let mut block = classification_block(
        serde_json::to_string(d).expect("Seifert data serializes"),
        v,
    );
    block.chi_orb = Some(chi.to_string());
    block.euler_number = Some(e.to_string());
    r.classification = Some(block);
    Ok(r)
}

pub fn betti_report(b1: u64) -> Report {
    let mut r = Report::new("classify betti", None);
    let branch = decide_by_first_betti(b1);
    r.classification = Some(ClassificationBlock {
        input: format!("b1 = {b1}"),
        order: None,
        chi_orb: None,
        euler_number: None,
        admits_quasi_sasakian: true,
        branch: branch.to_string(),
        geometry: None,
        notes: vec![BETTI_ASSUMPTION_NOTE.to_string()],
    });
    r
}

pub fn catalog_run_report(report: CatalogReport) -> (Report, bool) {
    let mut r = Report::new("catalog run", None);
    let ok = report.passed();
    r.catalog = Some(report);
    (r, ok)
}

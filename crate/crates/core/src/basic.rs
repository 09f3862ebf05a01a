//! Basic forms of the Reeb foliation, their cohomology, the splitting
//! `dη = rΩ + dα`, and the deformation of a quasi-Sasakian structure into a
//! contact or cosymplectic one.
//!
//! Cohomology here is the invariant basic cohomology of the Lie-algebra
//! model. On the unimodular catalog models it is used as the stand-in for the
//! basic cohomology of the compact quotient; that identification is not
//! proved, only checked against hand computations.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::acms::{AlmostContactMetricStructure, Check, CheckReport};
use crate::calculus::{
    ce_differential, combinations, contract, form_inner, form_norm_sq, hodge_star, wedge,
    CalculusError, InvariantForm, InvariantVector, LieAlgebra, Orientation,
};
use crate::linalg::{rational_sqrt, LinalgError, RatMatrix, Rational};

pub const INVARIANT_MODEL_NOTE: &str =
    "invariant basic cohomology of the Lie-algebra model (surrogate for the compact quotient)";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasicError {
    #[error("decomposition precondition failed: {0}")]
    Precondition(&'static str),
    #[error("d eta is not in span(Omega) + d(basic 1-forms)")]
    NoSolution,
    #[error("[Omega] is exact in the basic complex, r is not unique")]
    NonUniqueR {
        /// One solution `(r, a_1, …, a_m)` in the basic 1-form coordinates.
        particular: Vec<Rational>,
        kernel: Vec<Vec<Rational>>,
    },
    #[error("star-form check needs dimension 3 (dimension {0})")]
    NeedsDimension3(usize),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

/// Matrix whose columns are the images of the basis p-forms under `f`.
fn operator_matrix(
    dim: usize,
    p: usize,
    target_degree: usize,
    f: impl Fn(&InvariantForm) -> InvariantForm,
) -> RatMatrix {
    let columns: Vec<Vec<Rational>> = combinations(dim, p)
        .iter()
        .map(|idx| {
            let image = f(&InvariantForm::basis(dim, idx));
            debug_assert_eq!(image.degree(), target_degree);
            image.coeffs().to_vec()
        })
        .collect();
    let rows = combinations(dim, target_degree).len();
    if columns.is_empty() {
        return RatMatrix::zeros(rows, 0);
    }
    RatMatrix::from_columns(rows, &columns)
}

fn stack(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    assert_eq!(a.cols(), b.cols());
    let mut entries = a.entries().to_vec();
    entries.extend_from_slice(b.entries());
    RatMatrix::from_entries(a.rows() + b.rows(), a.cols(), entries).expect("stacked shape")
}

/// Basis of the invariant p-forms `β` with `ι_ξ β = 0` and `ι_ξ dβ = 0`.
pub fn basic_forms_basis(alg: &LieAlgebra, xi: &InvariantVector, p: usize) -> Vec<InvariantForm> {
    let n = alg.dim();
    assert!(p <= n, "degree {p} exceeds dimension {n}");
    let mut constraints = operator_matrix(n, p, p, |b| contract(xi, &ce_differential(alg, b)));
    if p > 0 {
        constraints = stack(&operator_matrix(n, p, p - 1, |b| contract(xi, b)), &constraints);
    }
    constraints
        .kernel_basis()
        .into_iter()
        .map(|coeffs| InvariantForm::from_coeffs(n, p, coeffs))
        .collect()
}

fn forms_matrix(dim: usize, degree: usize, forms: &[InvariantForm]) -> RatMatrix {
    let rows = combinations(dim, degree).len();
    let cols: Vec<Vec<Rational>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    if cols.is_empty() {
        RatMatrix::zeros(rows, 0)
    } else {
        RatMatrix::from_columns(rows, &cols)
    }
}

fn combine(dim: usize, degree: usize, basis: &[InvariantForm], coords: &[Rational]) -> InvariantForm {
    basis
        .iter()
        .zip(coords)
        .fold(InvariantForm::zero(dim, degree), |acc, (b, c)| acc.add(&b.scale(c)))
}

/// The basic subcomplex with its differential in basic coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicComplex {
    pub dim: usize,
    /// `bases[p]` spans the basic p-forms, `p = 0..=dim`.
    pub bases: Vec<Vec<InvariantForm>>,
    /// `differentials[p]` maps basic p-coordinates to basic (p+1)-coordinates.
    pub differentials: Vec<RatMatrix>,
}

impl BasicComplex {
    pub fn new(alg: &LieAlgebra, xi: &InvariantVector) -> Self {
        let n = alg.dim();
        let bases: Vec<Vec<InvariantForm>> = (0..=n).map(|p| basic_forms_basis(alg, xi, p)).collect();
        let mut differentials = Vec::with_capacity(n);
        for p in 0..n {
            let target = forms_matrix(n, p + 1, &bases[p + 1]);
            let columns: Vec<Vec<Rational>> = bases[p]
                .iter()
                .map(|b| {
                    let db = ce_differential(alg, b);
                    target
                        .solve_affine(db.coeffs())
                        .expect("d maps basic forms to basic forms")
                        .particular
                })
                .collect();
            let m = if columns.is_empty() {
                RatMatrix::zeros(bases[p + 1].len(), 0)
            } else {
                RatMatrix::from_columns(bases[p + 1].len(), &columns)
            };
            differentials.push(m);
        }
        BasicComplex {
            dim: n,
            bases,
            differentials,
        }
    }

    fn differential(&self, p: usize) -> Option<&RatMatrix> {
        self.differentials.get(p)
    }

    /// Coordinates of a basic p-form in `bases[p]`, or `None` if not basic.
    pub fn coordinates(&self, beta: &InvariantForm) -> Option<Vec<Rational>> {
        let p = beta.degree();
        forms_matrix(self.dim, p, &self.bases[p])
            .solve_affine(beta.coeffs())
            .ok()
            .map(|s| s.particular)
    }

    /// Is the basic form `beta` equal to `dγ` for some basic `γ`?
    pub fn is_exact(&self, beta: &InvariantForm) -> Option<bool> {
        let coords = self.coordinates(beta)?;
        let p = beta.degree();
        if p == 0 {
            return Some(beta.is_zero());
        }
        let d = self.differential(p - 1)?;
        Some(d.solve_affine(&coords).is_ok())
    }

    /// `d² = 0` on the complex.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| (&w[1] * &w[0]).is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicCohomologyReport {
    /// `dim H_B^p` for the transverse degrees `p = 0..dim`.
    pub dims: Vec<usize>,
    /// Closed basic forms whose classes form a basis of `H_B^p`.
    pub representatives: Vec<Vec<InvariantForm>>,
    pub note: &'static str,
}

pub fn basic_cohomology(alg: &LieAlgebra, xi: &InvariantVector) -> BasicCohomologyReport {
    let complex = BasicComplex::new(alg, xi);
    let n = alg.dim();
    let mut dims = Vec::new();
    let mut representatives = Vec::new();
    for p in 0..n {
        let basis = &complex.bases[p];
        let size = basis.len();
        let cycles = match complex.differential(p) {
            Some(d) if size > 0 => d.kernel_basis(),
            _ => (0..size)
                .map(|i| {
                    let mut v = vec![Rational::zero(); size];
                    v[i] = Rational::one();
                    v
                })
                .collect(),
        };
        let mut span: Vec<Vec<Rational>> = match p {
            0 => Vec::new(),
            _ => {
                let d = &complex.differentials[p - 1];
                (0..d.cols()).map(|c| d.column(c)).collect()
            }
        };
        let mut rank = if span.is_empty() {
            0
        } else {
            RatMatrix::from_columns(size, &span).rank()
        };
        let mut reps = Vec::new();
        for z in cycles {
            span.push(z.clone());
            let new_rank = RatMatrix::from_columns(size, &span).rank();
            if new_rank > rank {
                rank = new_rank;
                reps.push(combine(n, p, basis, &z));
            } else {
                span.pop();
            }
        }
        dims.push(reps.len());
        representatives.push(reps);
    }
    BasicCohomologyReport {
        dims,
        representatives,
        note: INVARIANT_MODEL_NOTE,
    }
}

/// `Ω` is basic, closed, and its class spans a one-dimensional `H_B²`.
pub fn omega_generates_h2(s: &AlmostContactMetricStructure) -> bool {
    let complex = BasicComplex::new(s.algebra(), s.xi());
    let report = basic_cohomology(s.algebra(), s.xi());
    report.dims.get(2) == Some(&1)
        && s.d_omega().is_zero()
        && complex.is_exact(s.omega()) == Some(false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub r: Rational,
    /// Basic 1-form of minimal g-norm solving the splitting.
    pub alpha: InvariantForm,
    /// `η − α`
    pub eta_tilde: InvariantForm,
    /// Dimension of the closed basic 1-forms, the freedom in `α`.
    pub gauge_freedom: usize,
}

fn require(cond: bool, what: &'static str) -> Result<(), BasicError> {
    if cond {
        Ok(())
    } else {
        Err(BasicError::Precondition(what))
    }
}

/// Solves `dη = rΩ + dα` with `α` basic.
pub fn decompose_deta(s: &AlmostContactMetricStructure) -> Result<DecompositionResult, BasicError> {
    let alg = s.algebra();
    let n = alg.dim();
    let xi = s.xi();
    let d_eta = s.d_eta();
    require(s.d_omega().is_zero(), "d Omega = 0")?;
    require(contract(xi, s.omega()).is_zero(), "i_xi Omega = 0")?;
    require(contract(xi, &d_eta).is_zero(), "i_xi d eta = 0")?;

    let basic1 = basic_forms_basis(alg, xi, 1);
    let mut columns = vec![s.omega().coeffs().to_vec()];
    columns.extend(basic1.iter().map(|b| ce_differential(alg, b).coeffs().to_vec()));
    let system = RatMatrix::from_columns(combinations(n, 2).len(), &columns);
    let solution = match system.solve_affine(d_eta.coeffs()) {
        Ok(sol) => sol,
        Err(LinalgError::NoSolution) => return Err(BasicError::NoSolution),
        Err(e) => unreachable!("shapes are consistent: {e}"),
    };
    if solution.kernel.iter().any(|k| !k[0].is_zero()) {
        return Err(BasicError::NonUniqueR {
            particular: solution.particular,
            kernel: solution.kernel,
        });
    }
    let r = solution.particular[0].clone();
    let alpha0 = combine(n, 1, &basic1, &solution.particular[1..]);
    let directions: Vec<InvariantForm> = solution
        .kernel
        .iter()
        .map(|k| combine(n, 1, &basic1, &k[1..]))
        .collect();
    let alpha = minimal_norm(&alpha0, &directions, s.g().matrix())?;
    let eta_tilde = s.eta().sub(&alpha);
    Ok(DecompositionResult {
        r,
        alpha,
        eta_tilde,
        gauge_freedom: directions.len(),
    })
}

/// Minimises `|α₀ + Σ t_j κ_j|²_g` over `t` via the normal equations.
fn minimal_norm(
    alpha0: &InvariantForm,
    directions: &[InvariantForm],
    g: &RatMatrix,
) -> Result<InvariantForm, BasicError> {
    if directions.is_empty() {
        return Ok(alpha0.clone());
    }
    if !g.is_positive_definite() {
        return Err(CalculusError::MetricNotPositiveDefinite.into());
    }
    let g_inv = g.inverse().expect("positive definite");
    let m = directions.len();
    let mut gram = RatMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            gram[(i, j)] = form_inner(&directions[i], &directions[j], &g_inv);
        }
    }
    let rhs: Vec<Rational> = directions
        .iter()
        .map(|k| -form_inner(k, alpha0, &g_inv))
        .collect();
    let t = gram
        .solve_affine(&rhs)
        .expect("Gram matrix of independent forms is invertible")
        .particular;
    Ok(directions
        .iter()
        .zip(&t)
        .fold(alpha0.clone(), |acc, (k, c)| acc.add(&k.scale(c))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DeformationCase {
    /// `r = 0`: `(η̃, Ω)` is cosymplectic.
    Cosymplectic,
    /// `r ≠ 0`: `η̃` is a contact form with `dη̃ = rΩ`.
    Contact,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationVerdict {
    pub case: DeformationCase,
    pub r: Rational,
    /// Always 1 in the contact case (after replacing `Ω` by `rΩ`), 0 otherwise.
    pub normalized_r: Rational,
    pub eta_tilde: InvariantForm,
    /// The 2-form paired with `η̃`: `Ω` for the cosymplectic case, `rΩ` for
    /// the contact case so that `dη̃ = Ω̃`.
    pub omega_tilde: InvariantForm,
    pub alpha: InvariantForm,
    pub checks: CheckReport,
}

fn top_power(eta: &InvariantForm, two_form: &InvariantForm) -> InvariantForm {
    let mut out = eta.clone();
    for _ in 0..eta.dim() / 2 {
        out = wedge(&out, two_form);
    }
    out
}

fn nonzero_check(name: &str, beta: &InvariantForm) -> Check {
    if beta.is_zero() {
        Check::fail(name, "form vanishes")
    } else {
        Check::pass(name)
    }
}

fn zero_check(name: &str, beta: &InvariantForm) -> Check {
    match beta.terms().next() {
        None => Check::pass(name),
        Some((idx, x)) => {
            let parts: Vec<String> = idx.iter().map(|i| format!("e{}", i + 1)).collect();
            Check::fail(name, format!("({}) -> {x}", parts.join(",")))
        }
    }
}

fn equal_check(name: &str, lhs: &InvariantForm, rhs: &InvariantForm) -> Check {
    zero_check(name, &lhs.sub(rhs))
}

/// Deforms `η` to `η̃ = η − α`. For `r = 0` the pair `(η̃, Ω)` is cosymplectic;
/// otherwise `Ω` is rescaled to `rΩ` and `η̃` is a K-contact form.
pub fn deform(s: &AlmostContactMetricStructure) -> Result<DeformationVerdict, BasicError> {
    let dec = decompose_deta(s)?;
    let alg = s.algebra();
    let n = s.dim();
    let xi = s.xi();
    let eta_tilde = dec.eta_tilde.clone();
    let d_eta_tilde = ce_differential(alg, &eta_tilde);
    let one = InvariantForm::constant(n, Rational::one());
    let mut checks = CheckReport::default();
    checks.checks.push(equal_check(
        "d eta = r Omega + d alpha",
        &s.d_eta(),
        &s.omega().scale(&dec.r).add(&ce_differential(alg, &dec.alpha)),
    ));
    checks.checks.push(zero_check("i_xi alpha = 0", &contract(xi, &dec.alpha)));
    checks.checks.push(equal_check("i_xi eta~ = 1", &contract(xi, &eta_tilde), &one));

    let (case, normalized_r, omega_tilde) = if dec.r.is_zero() {
        let vol = top_power(&eta_tilde, s.omega());
        checks.checks.push(zero_check("d eta~ = 0", &d_eta_tilde));
        checks.checks.push(zero_check("d Omega = 0", &s.d_omega()));
        checks.checks.push(equal_check("eta~ ^ Omega = eta ^ Omega", &vol, &s.volume()));
        checks.checks.push(nonzero_check("eta~ ^ Omega^n is a volume form", &vol));
        (DeformationCase::Cosymplectic, Rational::zero(), s.omega().clone())
    } else {
        let omega_tilde = s.omega().scale(&dec.r);
        let vol = top_power(&eta_tilde, &d_eta_tilde);
        checks.checks.push(equal_check("d eta~ = r Omega", &d_eta_tilde, &omega_tilde));
        checks.checks.push(zero_check("i_xi d eta~ = 0", &contract(xi, &d_eta_tilde)));
        checks.checks.push(equal_check(
            "eta~ ^ (d eta~)^n = r^n eta ^ Omega^n",
            &vol,
            &s.volume().scale(&pow(&dec.r, n / 2)),
        ));
        checks.checks.push(nonzero_check("eta~ ^ (d eta~)^n is a volume form", &vol));
        (DeformationCase::Contact, Rational::one(), omega_tilde)
    };
    Ok(DeformationVerdict {
        case,
        r: dec.r,
        normalized_r,
        eta_tilde,
        omega_tilde,
        alpha: dec.alpha,
        checks,
    })
}

fn pow(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

/// `|Ω|`, exact when `|Ω|²` is a rational square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaNorm {
    Rational(Rational),
    /// Only `|Ω|²` is rational; identities are checked in squared form.
    Irrational { norm_sq: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarFormReport {
    pub case: DeformationCase,
    pub orientation: Orientation,
    pub star_omega: InvariantForm,
    pub norm: OmegaNorm,
    /// Contact case: the sign `±` for which `±(1/|Ω|) *Ω − α = η̃`.
    pub matching_sign: Option<i32>,
    /// Cosymplectic case: the constant `c` with `c *Ω − α = η̃`.
    pub c: Option<Rational>,
    /// The form `±(1/|Ω|) *Ω − α` or `c *Ω − α`, when it is rational.
    pub candidate: Option<InvariantForm>,
    pub eta_tilde: InvariantForm,
    pub matches: bool,
}

impl StarFormReport {
    pub fn irrational_norm(&self) -> bool {
        matches!(self.norm, OmegaNorm::Irrational { .. })
    }
}

/// `η̃` rewritten through the Hodge star: `±(1/|Ω|) *Ω − α` in the contact
/// case, `c *Ω − α` in the cosymplectic case.
pub fn deformation_form_via_star(
    s: &AlmostContactMetricStructure,
    orientation: Orientation,
) -> Result<StarFormReport, BasicError> {
    if s.dim() != 3 {
        return Err(BasicError::NeedsDimension3(s.dim()));
    }
    let dec = decompose_deta(s)?;
    let star_omega = hodge_star(s.omega(), s.g(), orientation)?;
    let norm_sq = form_norm_sq(s.omega(), s.g())?;
    let norm = match rational_sqrt(&norm_sq) {
        Some(x) => OmegaNorm::Rational(x),
        None => OmegaNorm::Irrational { norm_sq: norm_sq.clone() },
    };
    // η̃ + α = η, so every identity reduces to a proportionality between
    // *Ω and η.
    let eta = dec.eta_tilde.add(&dec.alpha);
    let k = star_omega.ratio_to(&eta);

    let mut report = StarFormReport {
        case: DeformationCase::Cosymplectic,
        orientation,
        star_omega: star_omega.clone(),
        norm: norm.clone(),
        matching_sign: None,
        c: None,
        candidate: None,
        eta_tilde: dec.eta_tilde.clone(),
        matches: false,
    };
    if dec.r.is_zero() {
        // η = c *Ω  ⟺  *Ω = η / c
        let c = eta.ratio_to(&star_omega).filter(|_| !star_omega.is_zero());
        if let Some(c) = &c {
            let candidate = star_omega.scale(c).sub(&dec.alpha);
            report.matches = candidate == dec.eta_tilde;
            report.candidate = Some(candidate);
        }
        report.c = c;
        return Ok(report);
    }

    report.case = DeformationCase::Contact;
    match &norm {
        OmegaNorm::Rational(x) if !x.is_zero() => {
            for sign in [1, -1] {
                let coeff = Rational::from_integer(sign.into()) / x;
                let candidate = star_omega.scale(&coeff).sub(&dec.alpha);
                if candidate == dec.eta_tilde {
                    report.matching_sign = Some(sign);
                    report.candidate = Some(candidate);
                    report.matches = true;
                    break;
                }
            }
        }
        _ => {
            // *Ω = k η with k² = |Ω|² means η = ±(1/|Ω|) *Ω with sign(k).
            if let Some(k) = k.filter(|k| !k.is_zero() && &(k * k) == &norm_sq) {
                report.matching_sign = Some(if k.is_positive() { 1 } else { -1 });
                report.matches = true;
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EulerClass {
    Zero,
    /// `dη`, a basic form representing the nonzero class.
    NonZero(InvariantForm),
}

impl EulerClass {
    pub fn is_zero(&self) -> bool {
        matches!(self, EulerClass::Zero)
    }
}

/// Decides whether `[dη] = 0` in `H_B²`. With `η = g(ξ, ·)` and `ξ` a unit
/// Killing field this is the Euler class of the Reeb fibration.
pub fn euler_class_basic(s: &AlmostContactMetricStructure) -> Result<EulerClass, BasicError> {
    let d_eta = s.d_eta();
    let complex = BasicComplex::new(s.algebra(), s.xi());
    match complex.is_exact(&d_eta) {
        None => Err(BasicError::Precondition("d eta is basic")),
        Some(true) => Ok(EulerClass::Zero),
        Some(false) => Ok(EulerClass::NonZero(d_eta)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::{BracketEntry, InvariantEndo};
    use crate::linalg::{rat, RatMatrix};

    fn standard(alg: LieAlgebra) -> AlmostContactMetricStructure {
        let phi = InvariantEndo(RatMatrix::from_i64_rows(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]]));
        AlmostContactMetricStructure::new(
            alg,
            phi,
            InvariantVector::basis(3, 2),
            InvariantForm::basis(3, &[2]),
            InvariantEndo(RatMatrix::identity(3)),
        )
        .unwrap()
    }

    fn heisenberg(c: i64) -> LieAlgebra {
        LieAlgebra::from_brackets(3, &[BracketEntry::new(0, 1, 2, rat(-2 * c))]).unwrap()
    }

    fn e2() -> LieAlgebra {
        // [e3,e1] = e2, [e3,e2] = -e1
        LieAlgebra::from_brackets(
            3,
            &[BracketEntry::new(2, 0, 1, rat(1)), BracketEntry::new(2, 1, 0, rat(-1))],
        )
        .unwrap()
    }

    fn xi3() -> InvariantVector {
        InvariantVector::basis(3, 2)
    }

    #[test]
    fn basic_forms_examples() {
        let h = heisenberg(1);
        assert_eq!(
            basic_forms_basis(&h, &xi3(), 1),
            vec![InvariantForm::basis(3, &[0]), InvariantForm::basis(3, &[1])]
        );
        assert_eq!(basic_forms_basis(&h, &xi3(), 2), vec![InvariantForm::basis(3, &[0, 1])]);
        assert_eq!(
            basic_forms_basis(&LieAlgebra::abelian(3), &xi3(), 0),
            vec![InvariantForm::constant(3, rat(1))]
        );
        assert!(basic_forms_basis(&h, &xi3(), 3).is_empty());
        assert!(basic_forms_basis(&e2(), &xi3(), 1).is_empty());
    }

    #[test]
    fn cohomology_examples() {
        let r = basic_cohomology(&heisenberg(1), &xi3());
        assert_eq!(r.dims, vec![1, 2, 1]);
        assert_eq!(r.representatives[2], vec![InvariantForm::basis(3, &[0, 1])]);
        assert_eq!(basic_cohomology(&LieAlgebra::abelian(3), &xi3()).dims, vec![1, 2, 1]);
        assert_eq!(basic_cohomology(&e2(), &xi3()).dims, vec![1, 0, 1]);
    }

    #[test]
    fn complex_is_a_complex() {
        for alg in [heisenberg(1), e2(), LieAlgebra::abelian(3)] {
            assert!(BasicComplex::new(&alg, &xi3()).is_complex());
        }
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_deta(&standard(heisenberg(1))).unwrap();
        assert_eq!(d.r, rat(1));
        assert!(d.alpha.is_zero());
        assert_eq!(d.eta_tilde, InvariantForm::basis(3, &[2]));

        let d = decompose_deta(&standard(LieAlgebra::abelian(3))).unwrap();
        assert_eq!(d.r, rat(0));
        assert!(d.alpha.is_zero());
        assert_eq!(d.gauge_freedom, 2);

        let d = decompose_deta(&standard(heisenberg(3))).unwrap();
        assert_eq!(d.r, rat(3));
        assert!(d.alpha.is_zero());
    }

    #[test]
    fn decomposition_preconditions() {
        // [e1,e3] = e3: dη = -½ e¹∧e³ is not basic.
        let alg = LieAlgebra::from_brackets(3, &[BracketEntry::new(0, 2, 2, rat(1))]).unwrap();
        assert_eq!(
            decompose_deta(&standard(alg)),
            Err(BasicError::Precondition("i_xi d eta = 0"))
        );
    }

    #[test]
    fn deformation_examples() {
        let v = deform(&standard(heisenberg(1))).unwrap();
        assert_eq!(v.case, DeformationCase::Contact);
        assert!(v.checks.passed(), "{}", v.checks);
        assert_eq!(
            wedge(&v.eta_tilde, &ce_differential(&heisenberg(1), &v.eta_tilde)),
            InvariantForm::basis(3, &[0, 1, 2])
        );

        let v = deform(&standard(LieAlgebra::abelian(3))).unwrap();
        assert_eq!(v.case, DeformationCase::Cosymplectic);
        assert!(v.checks.passed(), "{}", v.checks);
        assert_eq!(wedge(&v.eta_tilde, &v.omega_tilde), InvariantForm::basis(3, &[0, 1, 2]));

        let v = deform(&standard(e2())).unwrap();
        assert_eq!(v.case, DeformationCase::Cosymplectic);
        assert!(v.checks.passed(), "{}", v.checks);

        let v = deform(&standard(heisenberg(3))).unwrap();
        assert_eq!((v.case, v.normalized_r.clone()), (DeformationCase::Contact, rat(1)));
        assert!(v.checks.passed(), "{}", v.checks);
    }

    #[test]
    fn star_form_examples() {
        let r = deformation_form_via_star(&standard(heisenberg(1)), Orientation::Positive).unwrap();
        assert_eq!(r.star_omega, InvariantForm::basis(3, &[2]));
        assert_eq!(r.norm, OmegaNorm::Rational(rat(1)));
        assert_eq!(r.matching_sign, Some(1));
        assert!(r.matches);

        let r = deformation_form_via_star(&standard(heisenberg(1)), Orientation::Negative).unwrap();
        assert_eq!(r.matching_sign, Some(-1));

        let r = deformation_form_via_star(&standard(LieAlgebra::abelian(3)), Orientation::Positive)
            .unwrap();
        assert_eq!(r.case, DeformationCase::Cosymplectic);
        assert_eq!(r.c, Some(rat(1)));
        assert!(r.matches);
    }

    #[test]
    fn euler_class_examples() {
        assert!(matches!(
            euler_class_basic(&standard(heisenberg(1))).unwrap(),
            EulerClass::NonZero(_)
        ));
        assert_eq!(euler_class_basic(&standard(LieAlgebra::abelian(3))).unwrap(), EulerClass::Zero);
        assert_eq!(euler_class_basic(&standard(e2())).unwrap(), EulerClass::Zero);
    }

    #[test]
    fn exact_omega_gives_non_unique_r() {
        // [e1,e2] = e1 with e3 central: de¹ = -½ e¹∧e², so Ω = e¹∧e² is exact
        // among basic forms.
        let alg = LieAlgebra::from_brackets(3, &[BracketEntry::new(0, 1, 0, rat(1))]).unwrap();
        assert!(matches!(
            decompose_deta(&standard(alg)),
            Err(BasicError::NonUniqueR { .. })
        ));
    }

    fn kodaira_thurston_times_line(g: RatMatrix) -> AlmostContactMetricStructure {
        // [e1,e2] = e3 on e1..e4, e5 central; Ω = e¹⁴ + e²³ is closed and not
        // exact, η = e⁵ + e³ has dη = -½ e¹² = d(e³).
        let alg = LieAlgebra::from_brackets(5, &[BracketEntry::new(0, 1, 2, rat(1))]).unwrap();
        let mut phi = RatMatrix::zeros(5, 5);
        // g = Id: Ω(e1,e4) = φ_{14} = 1, Ω(e2,e3) = φ_{23} = 1
        phi[(0, 3)] = rat(1);
        phi[(3, 0)] = rat(-1);
        phi[(1, 2)] = rat(1);
        phi[(2, 1)] = rat(-1);
        let phi = InvariantEndo(&g.inverse().unwrap() * &phi);
        let eta = InvariantForm::basis(5, &[4]).add(&InvariantForm::basis(5, &[2]));
        AlmostContactMetricStructure::new(alg, phi, InvariantVector::basis(5, 4), eta, InvariantEndo(g))
            .unwrap()
    }

    #[test]
    fn five_dimensional_gauge_fixing() {
        let s = kodaira_thurston_times_line(RatMatrix::identity(5));
        assert_eq!(
            s.omega(),
            &InvariantForm::basis(5, &[0, 3]).add(&InvariantForm::basis(5, &[1, 2]))
        );
        let d = decompose_deta(&s).unwrap();
        assert_eq!(d.r, rat(0));
        assert_eq!(d.alpha, InvariantForm::basis(5, &[2]));
        assert_eq!(d.eta_tilde, InvariantForm::basis(5, &[4]));
        assert_eq!(d.gauge_freedom, 3);

        // With g_{13} = ½ the closed direction e¹ is no longer orthogonal to
        // e³. Minimising |e³ + t e¹|² under g⁻¹ = [[4/3, -2/3], [-2/3, 4/3]]
        // on that block gives t = ½.
        let mut g = RatMatrix::identity(5);
        g[(0, 2)] = crate::linalg::ratio(1, 2);
        g[(2, 0)] = crate::linalg::ratio(1, 2);
        let s = kodaira_thurston_times_line(g);
        let d = decompose_deta(&s).unwrap();
        assert_eq!(
            d.alpha,
            InvariantForm::basis(5, &[2]).add(&InvariantForm::basis(5, &[0]).scale(&crate::linalg::ratio(1, 2)))
        );
    }

    #[test]
    fn minimal_norm_gauge() {
        // Abelian: every basic 1-form is closed, so the minimal-norm α is 0
        // no matter which particular solution the solver found.
        let alpha0 = InvariantForm::basis(3, &[0]).scale(&rat(5));
        let dirs = vec![InvariantForm::basis(3, &[0]), InvariantForm::basis(3, &[1])];
        let m = minimal_norm(&alpha0, &dirs, &RatMatrix::identity(3)).unwrap();
        assert!(m.is_zero());
        // One direction orthogonal to α₀ leaves α₀ unchanged.
        let dirs = vec![InvariantForm::basis(3, &[1])];
        assert_eq!(minimal_norm(&alpha0, &dirs, &RatMatrix::identity(3)).unwrap(), alpha0);
    }
}

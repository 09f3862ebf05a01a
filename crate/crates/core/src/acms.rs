//! Almost contact metric structures `(φ, ξ, η, g)` on a Lie algebra and
//! their classification.
//!
//! Every verdict carries the list of identities that were checked. Failed
//! identities name the basis tuple that witnesses the failure.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{
    ce_differential, contract, lie_derivative, wedge, InvariantEndo, InvariantForm, InvariantVector,
    LieAlgebra, Tensor12,
};
use crate::linalg::{RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AcmsError {
    #[error("{what} has dimension {found}, algebra has dimension {expected}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid almost contact metric structure: {0}")]
    InvalidStructure(CheckReport),
    #[error("tau is only defined in dimension 3 (dimension {0})")]
    TauNeedsDimension3(usize),
    #[error("fundamental form vanishes, tau undefined")]
    ZeroFundamentalForm,
    #[error("d eta is not proportional to the fundamental form")]
    TauInconsistent,
}

/// One named identity and whether it held.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// For failures, the basis tuple (1-based) and residual that witness it.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }

    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<String> = self
            .failures()
            .map(|c| match &c.witness {
                Some(w) => format!("{} ({w})", c.name),
                None => c.name.clone(),
            })
            .collect();
        if failed.is_empty() {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "failed: {}", failed.join("; "))
        }
    }
}

pub const CHECK_PHI_SQUARED: &str = "phi^2 = -I + eta (x) xi";
pub const CHECK_ETA_XI: &str = "eta(xi) = 1";
pub const CHECK_PHI_XI: &str = "phi xi = 0";
pub const CHECK_ETA_PHI: &str = "eta o phi = 0";
pub const CHECK_PHI_RANK: &str = "rank(phi) = dim - 1";
pub const CHECK_G_SYMMETRIC: &str = "g symmetric";
pub const CHECK_G_POSITIVE: &str = "g positive definite";
pub const CHECK_METRIC: &str = "g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)";
pub const CHECK_ETA_DUAL: &str = "eta = g(xi, .)";
pub const CHECK_PHI_SKEW: &str = "phi skew-symmetric w.r.t. g";
pub const CHECK_OMEGA_SKEW: &str = "Omega antisymmetric";
pub const CHECK_OMEGA_XI: &str = "Omega(xi, .) = 0";
pub const CHECK_LIE_ETA: &str = "L_xi eta = 0";
pub const CHECK_LIE_OMEGA: &str = "L_xi Omega = 0";
pub const CHECK_LIE_VOLUME: &str = "L_xi (eta ^ Omega) = 0";
pub const CHECK_NORMAL: &str = "N = [phi, phi] + 2 d eta (x) xi = 0";
pub const CHECK_D_OMEGA: &str = "d Omega = 0";
pub const CHECK_D_ETA_ZERO: &str = "d eta = 0";
pub const CHECK_CONTACT: &str = "d eta = Omega";
pub const CHECK_NIJENHUIS: &str = "[phi, phi] = 0";

fn tuple_str(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| format!("e{}", i + 1)).collect();
    format!("({})", parts.join(","))
}

fn first_nonzero_form_witness(beta: &InvariantForm) -> Option<String> {
    beta.terms()
        .next()
        .map(|(idx, x)| format!("{} -> {x}", tuple_str(&idx)))
}

fn first_nonzero_tensor_witness(t: &Tensor12) -> Option<String> {
    t.nonzero_pairs()
        .into_iter()
        .next()
        .map(|(i, j, v)| format!("{} -> {v}", tuple_str(&[i, j])))
}

fn check_dim(what: &'static str, expected: usize, found: usize) -> Result<(), AcmsError> {
    if expected == found {
        Ok(())
    } else {
        Err(AcmsError::Shape { what, expected, found })
    }
}

/// The quadruple `(φ, ξ, η, g)` on a Lie algebra, with `Ω(X, Y) = g(X, φY)`
/// derived on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostContactMetricStructure {
    algebra: LieAlgebra,
    phi: InvariantEndo,
    xi: InvariantVector,
    eta: InvariantForm,
    g: InvariantEndo,
    omega: InvariantForm,
}

impl AlmostContactMetricStructure {
    /// Only shapes are checked here; the structure identities are verified
    /// by [`verify_almost_contact`] and [`verify_metric_compatibility`].
    pub fn new(
        algebra: LieAlgebra,
        phi: InvariantEndo,
        xi: InvariantVector,
        eta: InvariantForm,
        g: InvariantEndo,
    ) -> Result<Self, AcmsError> {
        let n = algebra.dim();
        check_dim("phi", n, phi.dim())?;
        check_dim("phi (columns)", n, phi.matrix().cols())?;
        check_dim("xi", n, xi.dim())?;
        check_dim("eta", n, eta.dim())?;
        check_dim("eta (degree)", 1, eta.degree())?;
        check_dim("g", n, g.dim())?;
        check_dim("g (columns)", n, g.matrix().cols())?;
        let omega = fundamental_form_of(&phi, &g);
        Ok(AlmostContactMetricStructure {
            algebra,
            phi,
            xi,
            eta,
            g,
            omega,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn phi(&self) -> &InvariantEndo {
        &self.phi
    }

    pub fn xi(&self) -> &InvariantVector {
        &self.xi
    }

    pub fn eta(&self) -> &InvariantForm {
        &self.eta
    }

    pub fn g(&self) -> &InvariantEndo {
        &self.g
    }

    pub fn omega(&self) -> &InvariantForm {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn d_eta(&self) -> InvariantForm {
        ce_differential(&self.algebra, &self.eta)
    }

    pub fn d_omega(&self) -> InvariantForm {
        ce_differential(&self.algebra, &self.omega)
    }

    /// `η ∧ Ω ∧ … ` up to top degree, i.e. `η ∧ Ω^n` in dimension `2n+1`.
    pub fn volume(&self) -> InvariantForm {
        let mut vol = self.eta.clone();
        for _ in 0..self.dim() / 2 {
            vol = wedge(&vol, &self.omega);
        }
        vol
    }

    /// The same structure written in the basis `f_a = Σ_i P_{ia} e_i`.
    pub fn change_basis(&self, p: &RatMatrix) -> Self {
        let p_inv = p.inverse().expect("basis change must be invertible");
        let algebra = self.algebra.change_basis(p);
        let phi = InvariantEndo(&(&p_inv * self.phi.matrix()) * p);
        let xi = InvariantVector(p_inv.mul_vec(self.xi.components()));
        let eta = self.eta.change_basis(p);
        let g = InvariantEndo(&(&p.transpose() * self.g.matrix()) * p);
        Self::new(algebra, phi, xi, eta, g).expect("basis change preserves shapes")
    }

    /// Replaces the algebra, keeping the tensors.
    pub fn with_algebra(&self, algebra: LieAlgebra) -> Result<Self, AcmsError> {
        Self::new(algebra, self.phi.clone(), self.xi.clone(), self.eta.clone(), self.g.clone())
    }
}

fn fundamental_form_of(phi: &InvariantEndo, g: &InvariantEndo) -> InvariantForm {
    let n = phi.dim();
    let gphi = g.matrix() * phi.matrix();
    let coeffs = crate::calculus::combinations(n, 2)
        .into_iter()
        .map(|idx| gphi[(idx[0], idx[1])].clone())
        .collect();
    InvariantForm::from_coeffs(n, 2, coeffs)
}

/// `φ² = -Id + η ⊗ ξ` and `η(ξ) = 1`, plus the consequences `φξ = 0`,
/// `η ∘ φ = 0` and `rank φ = dim - 1`.
pub fn verify_almost_contact(
    phi: &InvariantEndo,
    xi: &InvariantVector,
    eta: &InvariantForm,
) -> CheckReport {
    let n = phi.dim();
    let mut report = CheckReport::default();

    let phi2 = phi.matrix() * phi.matrix();
    let mut expected = RatMatrix::identity(n).scale(&-Rational::one());
    for r in 0..n {
        for c in 0..n {
            expected[(r, c)] += &xi.components()[r] * &eta.coeffs()[c];
        }
    }
    let witness = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .find(|&(r, c)| phi2[(r, c)] != expected[(r, c)])
        .map(|(r, c)| {
            format!(
                "entry ({},{}): phi^2 = {}, expected {}",
                r + 1,
                c + 1,
                phi2[(r, c)],
                expected[(r, c)]
            )
        });
    report.push(Check::from_witness(CHECK_PHI_SQUARED, witness));

    let eta_xi = eta.eval(&[xi.clone()]);
    report.push(Check::from_witness(
        CHECK_ETA_XI,
        (!eta_xi.is_one()).then(|| format!("eta(xi) = {eta_xi}")),
    ));

    let phi_xi = phi.apply(xi);
    report.push(Check::from_witness(
        CHECK_PHI_XI,
        (!phi_xi.is_zero()).then(|| format!("phi xi = {phi_xi}")),
    ));

    let eta_phi = phi.matrix().vec_mul(eta.coeffs());
    let witness = eta_phi
        .iter()
        .position(|x| !x.is_zero())
        .map(|i| format!("(eta o phi)(e{}) = {}", i + 1, eta_phi[i]));
    report.push(Check::from_witness(CHECK_ETA_PHI, witness));

    let rank = phi.matrix().rank();
    report.push(Check::from_witness(
        CHECK_PHI_RANK,
        (rank + 1 != n).then(|| format!("rank(phi) = {rank}")),
    ));
    report
}

/// Compatibility of `g` with `(φ, ξ, η)` on all basis pairs, together with
/// its consequences `η = g(ξ, ·)`, skew-symmetry of `φ`, and `Ω(ξ, ·) = 0`.
pub fn verify_metric_compatibility(s: &AlmostContactMetricStructure) -> CheckReport {
    let n = s.dim();
    let g = s.g.matrix();
    let mut report = CheckReport::default();

    report.push(Check::from_witness(
        CHECK_G_SYMMETRIC,
        (!g.is_symmetric()).then(|| "g != g^T".to_string()),
    ));
    report.push(Check::from_witness(
        CHECK_G_POSITIVE,
        (!g.is_positive_definite()).then(|| "a leading principal minor is <= 0".to_string()),
    ));

    // g(φX, φY) as a matrix is φ^T g φ.
    let lhs = &(&s.phi.matrix().transpose() * g) * s.phi.matrix();
    let eta = s.eta.coeffs();
    let witness = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find_map(|(i, j)| {
            let rhs = &g[(i, j)] - &eta[i] * &eta[j];
            (lhs[(i, j)] != rhs).then(|| {
                format!(
                    "{}: lhs = {}, rhs = {}",
                    tuple_str(&[i, j]),
                    lhs[(i, j)],
                    rhs
                )
            })
        });
    report.push(Check::from_witness(CHECK_METRIC, witness));

    let g_xi = g.vec_mul(s.xi.components());
    let witness = (0..n)
        .find(|&i| g_xi[i] != eta[i])
        .map(|i| format!("e{}: g(xi, e{}) = {}, eta = {}", i + 1, i + 1, g_xi[i], eta[i]));
    report.push(Check::from_witness(CHECK_ETA_DUAL, witness));

    // g(φX, Y) + g(X, φY) = 0, i.e. φ^T g + g φ = 0.
    let skew = (&s.phi.matrix().transpose() * g).add(&(g * s.phi.matrix()));
    let witness = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !skew[(i, j)].is_zero())
        .map(|(i, j)| format!("{}: g(phi X, Y) + g(X, phi Y) = {}", tuple_str(&[i, j]), skew[(i, j)]));
    report.push(Check::from_witness(CHECK_PHI_SKEW, witness));

    let gphi = g * s.phi.matrix();
    let witness = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| gphi[(i, j)] != -gphi[(j, i)].clone())
        .map(|(i, j)| {
            format!(
                "{}: Omega = {}, -Omega^T = {}",
                tuple_str(&[i, j]),
                gphi[(i, j)],
                -gphi[(j, i)].clone()
            )
        });
    report.push(Check::from_witness(CHECK_OMEGA_SKEW, witness));

    let omega_xi = s.xi.components().iter().zip(0..n).fold(
        vec![Rational::zero(); n],
        |mut acc, (x, i)| {
            for (j, slot) in acc.iter_mut().enumerate() {
                *slot += x * &gphi[(i, j)];
            }
            acc
        },
    );
    let witness = omega_xi
        .iter()
        .position(|x| !x.is_zero())
        .map(|j| format!("Omega(xi, e{}) = {}", j + 1, omega_xi[j]));
    report.push(Check::from_witness(CHECK_OMEGA_XI, witness));
    report
}

/// Both axiom groups at once.
pub fn verify_axioms(s: &AlmostContactMetricStructure) -> CheckReport {
    let mut report = verify_almost_contact(&s.phi, &s.xi, &s.eta);
    report.extend(verify_metric_compatibility(s));
    report
}

/// `Ω(e_i, e_j) = g(e_i, φ e_j)`.
pub fn fundamental_form(s: &AlmostContactMetricStructure) -> InvariantForm {
    s.omega.clone()
}

/// `[φ, φ](X, Y) = φ²[X, Y] + [φX, φY] − φ[φX, Y] − φ[X, φY]` on basis pairs.
pub fn nijenhuis(alg: &LieAlgebra, phi: &InvariantEndo) -> Tensor12 {
    let n = alg.dim();
    let phi2 = InvariantEndo(phi.matrix() * phi.matrix());
    Tensor12::from_pair_fn(n, |i, j| {
        let x = InvariantVector::basis(n, i);
        let y = InvariantVector::basis(n, j);
        let px = phi.apply(&x);
        let py = phi.apply(&y);
        phi2.apply(&alg.bracket(&x, &y))
            .add(&alg.bracket(&px, &py))
            .sub(&phi.apply(&alg.bracket(&px, &y)))
            .sub(&phi.apply(&alg.bracket(&x, &py)))
    })
}

/// `N = [φ, φ] + 2 dη ⊗ ξ`.
pub fn normality_tensor(s: &AlmostContactMetricStructure) -> Tensor12 {
    let two_d_eta = s.d_eta().scale(&Rational::from_integer(2.into()));
    nijenhuis(&s.algebra, &s.phi).add(&Tensor12::form_times_vector(&two_d_eta, &s.xi))
}

fn wedge_power(beta: &InvariantForm, p: usize) -> InvariantForm {
    let mut out = InvariantForm::constant(beta.dim(), Rational::one());
    for _ in 0..p {
        out = wedge(&out, beta);
    }
    out
}

/// Rank of `η`: `2p + 1` if `η ∧ (dη)^p ≠ 0` and `(dη)^{p+1} = 0`, `2p` if
/// `(dη)^p ≠ 0` and `η ∧ (dη)^p = 0`.
pub fn structure_rank(s: &AlmostContactMetricStructure) -> usize {
    let d_eta = s.d_eta();
    let mut p = 0;
    let mut power = InvariantForm::constant(s.dim(), Rational::one());
    loop {
        let next = wedge(&power, &d_eta);
        if next.is_zero() {
            break;
        }
        power = next;
        p += 1;
    }
    debug_assert_eq!(power, wedge_power(&d_eta, p));
    if wedge(&s.eta, &power).is_zero() {
        2 * p
    } else {
        2 * p + 1
    }
}

/// The constant `τ` with `dη = τ Ω` (dimension 3).
pub fn compute_tau(s: &AlmostContactMetricStructure) -> Result<Rational, AcmsError> {
    if s.dim() != 3 {
        return Err(AcmsError::TauNeedsDimension3(s.dim()));
    }
    if s.omega.is_zero() {
        return Err(AcmsError::ZeroFundamentalForm);
    }
    s.d_eta().ratio_to(&s.omega).ok_or(AcmsError::TauInconsistent)
}

/// `L_ξ η = 0`, `L_ξ Ω = 0` and `L_ξ(η ∧ Ω) = 0`, via the Cartan formula.
pub fn reeb_invariance_check(s: &AlmostContactMetricStructure) -> CheckReport {
    let mut report = CheckReport::default();
    let volume = wedge(&s.eta, &s.omega);
    for (name, beta) in [
        (CHECK_LIE_ETA, &s.eta),
        (CHECK_LIE_OMEGA, &s.omega),
        (CHECK_LIE_VOLUME, &volume),
    ] {
        let l = lie_derivative(&s.algebra, &s.xi, beta);
        report.push(Check::from_witness(name, first_nonzero_form_witness(&l)));
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StructureLabel {
    AlmostContactMetricOnly,
    Cosymplectic,
    CoKahler,
    ContactMetric,
    Sasakian,
    QuasiSasakian,
    AntiQuasiSasakian,
    Invalid,
}

impl StructureLabel {
    /// Sasakian and co-Kähler structures are special quasi-Sasakian ones.
    pub fn is_quasi_sasakian(self) -> bool {
        matches!(
            self,
            StructureLabel::QuasiSasakian | StructureLabel::Sasakian | StructureLabel::CoKahler
        )
    }

    pub fn is_cosymplectic(self) -> bool {
        matches!(self, StructureLabel::Cosymplectic | StructureLabel::CoKahler)
    }

    pub fn is_contact_metric(self) -> bool {
        matches!(self, StructureLabel::ContactMetric | StructureLabel::Sasakian)
    }

    pub fn name(self) -> &'static str {
        match self {
            StructureLabel::AlmostContactMetricOnly => "almost contact metric",
            StructureLabel::Cosymplectic => "cosymplectic",
            StructureLabel::CoKahler => "co-Kahler",
            StructureLabel::ContactMetric => "contact metric",
            StructureLabel::Sasakian => "Sasakian",
            StructureLabel::QuasiSasakian => "quasi-Sasakian",
            StructureLabel::AntiQuasiSasakian => "anti-quasi-Sasakian",
            StructureLabel::Invalid => "invalid",
        }
    }
}

impl fmt::Display for StructureLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `τ` as attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tau {
    Constant(Rational),
    /// `dη` is not a multiple of `Ω`.
    Inconsistent,
    /// Outside dimension 3, or `Ω = 0`.
    NotApplicable,
}

impl Tau {
    pub fn constant(&self) -> Option<&Rational> {
        match self {
            Tau::Constant(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tau::Constant(t) => write!(f, "{t}"),
            Tau::Inconsistent => write!(f, "inconsistent"),
            Tau::NotApplicable => write!(f, "n/a"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureVerdict {
    pub label: StructureLabel,
    pub rank: usize,
    pub tau: Tau,
    pub normality_residual: Tensor12,
    pub evidence: CheckReport,
}

impl StructureVerdict {
    pub fn is_quasi_sasakian(&self) -> bool {
        self.label.is_quasi_sasakian()
    }
}

/// Evaluates `dη`, `dΩ` and `N` and reports the most specific label.
///
/// Normal structures with closed `Ω` are quasi-Sasakian, refined to Sasakian
/// when `dη = Ω` and to co-Kähler when `dη = 0`. Non-normal structures are
/// contact metric (`dη = Ω`), cosymplectic (`dη = dΩ = 0`), anti-quasi-Sasakian
/// (`dΩ = 0`, `[φ, φ] = 0`) or nothing more specific.
pub fn classify_structure(s: &AlmostContactMetricStructure) -> Result<StructureVerdict, AcmsError> {
    let axioms = verify_axioms(s);
    if !axioms.passed() {
        return Err(AcmsError::InvalidStructure(axioms));
    }
    let mut evidence = axioms;

    let d_eta = s.d_eta();
    let d_omega = s.d_omega();
    let n_tensor = normality_tensor(s);
    let nij = nijenhuis(&s.algebra, &s.phi);

    let normal = n_tensor.is_zero();
    let omega_closed = d_omega.is_zero();
    let eta_closed = d_eta.is_zero();
    let contact = d_eta == s.omega;

    evidence.push(Check::from_witness(CHECK_NORMAL, first_nonzero_tensor_witness(&n_tensor)));
    evidence.push(Check::from_witness(CHECK_D_OMEGA, first_nonzero_form_witness(&d_omega)));
    evidence.push(Check::from_witness(CHECK_D_ETA_ZERO, first_nonzero_form_witness(&d_eta)));
    evidence.push(Check::from_witness(
        CHECK_CONTACT,
        first_nonzero_form_witness(&d_eta.sub(&s.omega)),
    ));
    evidence.push(Check::from_witness(CHECK_NIJENHUIS, first_nonzero_tensor_witness(&nij)));

    let label = if normal && omega_closed {
        if contact {
            StructureLabel::Sasakian
        } else if eta_closed {
            StructureLabel::CoKahler
        } else {
            StructureLabel::QuasiSasakian
        }
    } else if contact {
        StructureLabel::ContactMetric
    } else if eta_closed && omega_closed {
        StructureLabel::Cosymplectic
    } else if omega_closed && nij.is_zero() {
        StructureLabel::AntiQuasiSasakian
    } else {
        StructureLabel::AlmostContactMetricOnly
    };

    let tau = match compute_tau(s) {
        Ok(t) => Tau::Constant(t),
        Err(AcmsError::TauInconsistent) => Tau::Inconsistent,
        Err(_) => Tau::NotApplicable,
    };

    Ok(StructureVerdict {
        label,
        rank: structure_rank(s),
        tau,
        normality_residual: n_tensor,
        evidence,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AntiQuasiSasakianReport {
    /// `dΩ = 0` and `N = 2 dη ⊗ ξ`.
    pub holds: bool,
    pub omega_closed: bool,
    /// `N − 2 dη ⊗ ξ`, which equals `[φ, φ]`.
    pub residual: Tensor12,
    pub checks: CheckReport,
}

/// `dΩ = 0` and `N = 2 dη ⊗ ξ`. Since `N − 2 dη ⊗ ξ = [φ, φ]`, the second
/// condition is the vanishing of the Nijenhuis torsion.
pub fn verify_anti_quasi_sasakian(s: &AlmostContactMetricStructure) -> AntiQuasiSasakianReport {
    let two_d_eta = s.d_eta().scale(&Rational::from_integer(2.into()));
    let residual = normality_tensor(s).sub(&Tensor12::form_times_vector(&two_d_eta, &s.xi));
    let d_omega = s.d_omega();
    let mut checks = CheckReport::default();
    checks.push(Check::from_witness(CHECK_D_OMEGA, first_nonzero_form_witness(&d_omega)));
    checks.push(Check::from_witness(
        "N = 2 d eta (x) xi",
        first_nonzero_tensor_witness(&residual),
    ));
    AntiQuasiSasakianReport {
        holds: checks.passed(),
        omega_closed: d_omega.is_zero(),
        residual,
        checks,
    }
}

/// `ι_ξ η = 1` and `ι_ξ Ω = 0` as forms.
pub fn reeb_contractions(s: &AlmostContactMetricStructure) -> (InvariantForm, InvariantForm) {
    (contract(&s.xi, &s.eta), contract(&s.xi, &s.omega))
}

//! Decision procedures for closed orientable 3-manifolds carrying a
//! quasi-Sasakian structure: torus-bundle monodromies, Seifert invariants,
//! and the first-Betti-number parity rule.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("monodromy must have determinant 1 (found {0})")]
    NotUnimodular(i64),
    #[error("cone point multiplicity must be >= 2 (found {0})")]
    ConeMultiplicity(u64),
    #[error("cone point ({alpha}, {beta}) is not coprime")]
    ConeNotCoprime { alpha: u64, beta: i64 },
}

/// Element of `SL(2, Z)`, stored row-major as `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monodromy {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Monodromy {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, ClassifyError> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(ClassifyError::NotUnimodular(det));
        }
        Ok(Monodromy { a, b, c, d })
    }

    pub const IDENTITY: Monodromy = Monodromy { a: 1, b: 0, c: 0, d: 1 };

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn mul(&self, o: &Monodromy) -> Monodromy {
        Monodromy {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn pow(&self, n: u32) -> Monodromy {
        (0..n).fold(Self::IDENTITY, |acc, _| acc.mul(self))
    }

    pub fn inverse(&self) -> Monodromy {
        Monodromy {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn rows(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }
}

impl fmt::Display for Monodromy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// The five finite-order monodromies of flat Kähler mapping tori, one per
/// order, in the order `1, 4, 2, 6, 3`.
pub const KMT_MONODROMIES: [Monodromy; 5] = [
    Monodromy { a: 1, b: 0, c: 0, d: 1 },
    Monodromy { a: 0, b: 1, c: -1, d: 0 },
    Monodromy { a: -1, b: 0, c: 0, d: -1 },
    Monodromy { a: 0, b: -1, c: 1, d: 1 },
    Monodromy { a: -1, b: -1, c: 1, d: 0 },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonodromyOrder {
    Finite(u32),
    Infinite,
}

impl fmt::Display for MonodromyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonodromyOrder::Finite(n) => write!(f, "{n}"),
            MonodromyOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// Order of `A` in `SL(2, Z)`. Finite orders are 1, 2, 3, 4, 6 and are
/// read off the trace, then confirmed by an exact power.
pub fn monodromy_order(m: &Monodromy) -> MonodromyOrder {
    let candidate = if *m == Monodromy::IDENTITY {
        Some(1)
    } else if m.a == -1 && m.d == -1 && m.b == 0 && m.c == 0 {
        Some(2)
    } else {
        match m.trace() {
            -1 => Some(3),
            0 => Some(4),
            1 => Some(6),
            _ => None,
        }
    };
    match candidate {
        Some(n) if m.pow(n) == Monodromy::IDENTITY => MonodromyOrder::Finite(n),
        _ => MonodromyOrder::Infinite,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Geometry {
    #[serde(rename = "S3")]
    S3,
    Nil,
    #[serde(rename = "SL2~")]
    Sl2Tilde,
    #[serde(rename = "S2xR")]
    S2xR,
    E3,
    #[serde(rename = "H2xR")]
    H2xR,
}

impl Geometry {
    pub fn name(self) -> &'static str {
        match self {
            Geometry::S3 => "S3",
            Geometry::Nil => "Nil",
            Geometry::Sl2Tilde => "SL2~",
            Geometry::S2xR => "S2xR",
            Geometry::E3 => "E3",
            Geometry::H2xR => "H2xR",
        }
    }

    pub fn is_sasakian(self) -> bool {
        matches!(self, Geometry::S3 | Geometry::Nil | Geometry::Sl2Tilde)
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Sasakian,
    KahlerMappingTorus,
    Undetermined,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Sasakian => "Sasakian",
            Branch::KahlerMappingTorus => "Kahler mapping torus",
            Branch::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldVerdict {
    pub admits_quasi_sasakian: bool,
    pub branch: Branch,
    pub geometry: Option<Geometry>,
    pub notes: Vec<String>,
}

impl ManifoldVerdict {
    /// `branch = Sasakian ⟺ geometry ∈ {S3, Nil, SL2~}` and
    /// `branch = KMT ⟺ geometry ∈ {S2xR, E3, H2xR}`.
    pub fn is_consistent(&self) -> bool {
        match (self.branch, self.geometry) {
            (Branch::Sasakian, Some(g)) => g.is_sasakian(),
            (Branch::KahlerMappingTorus, Some(g)) => !g.is_sasakian(),
            (Branch::Undetermined, None) => true,
            _ => false,
        }
    }
}

pub const ORDER_CRITERION_NOTE: &str =
    "monodromies are compared by order; A and A^-1 give diffeomorphic torus bundles";

/// Whether `m` (of finite order 3, 4 or 6) is conjugate in `SL(2, Z)` to
/// `rep` rather than to `rep⁻¹`. Elliptic elements of the same trace split
/// into two classes, distinguished by the sense of rotation, i.e. the sign of
/// the lower-left entry.
pub fn same_rotation_sense(m: &Monodromy, rep: &Monodromy) -> bool {
    m.c.signum() == rep.c.signum()
}

pub fn classify_monodromy(m: &Monodromy) -> ManifoldVerdict {
    let order = monodromy_order(m);
    let mut notes = vec![format!("order {order}")];
    match order {
        MonodromyOrder::Finite(n) => {
            let rep = KMT_MONODROMIES
                .iter()
                .find(|r| monodromy_order(r) == MonodromyOrder::Finite(n))
                .expect("every finite order has a representative");
            notes.push(format!("representative {rep}"));
            if n > 2 {
                if same_rotation_sense(m, rep) {
                    notes.push("conjugate to the representative".into());
                } else {
                    notes.push("conjugate to the inverse of the representative".into());
                }
            }
            notes.push(ORDER_CRITERION_NOTE.into());
            ManifoldVerdict {
                admits_quasi_sasakian: true,
                branch: Branch::KahlerMappingTorus,
                geometry: Some(Geometry::E3),
                notes,
            }
        }
        MonodromyOrder::Infinite => {
            let t = m.trace().abs();
            notes.push(if t == 2 {
                "parabolic: Nil-geometry torus bundle, not a Kahler mapping torus".into()
            } else {
                "hyperbolic: Sol-geometry torus bundle, excluded".into()
            });
            notes.push("not in the finite-order monodromy list".into());
            ManifoldVerdict {
                admits_quasi_sasakian: false,
                branch: Branch::Undetermined,
                geometry: None,
                notes,
            }
        }
    }
}

/// A cone point of the base orbifold, `(α, β)` with `α ≥ 2`, `gcd(α, β) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConePoint {
    pub alpha: u64,
    pub beta: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub base_genus: u64,
    pub base_orientable: bool,
    pub cone_points: Vec<ConePoint>,
    pub b: i64,
}

impl SeifertData {
    pub fn validate(&self) -> Result<(), ClassifyError> {
        for cp in &self.cone_points {
            if cp.alpha < 2 {
                return Err(ClassifyError::ConeMultiplicity(cp.alpha));
            }
            if (cp.alpha as i64).gcd(&cp.beta) != 1 {
                return Err(ClassifyError::ConeNotCoprime {
                    alpha: cp.alpha,
                    beta: cp.beta,
                });
            }
        }
        Ok(())
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `χ^orb = χ(B) − Σ(1 − 1/α_i)` and `e = −(b + Σ β_i/α_i)`.
pub fn seifert_invariants(d: &SeifertData) -> Result<(Rational, Rational), ClassifyError> {
    d.validate()?;
    let g = d.base_genus as i64;
    let chi_base = if d.base_orientable { 2 - 2 * g } else { 2 - g };
    let chi = d
        .cone_points
        .iter()
        .fold(q(chi_base, 1), |acc, cp| acc - (q(1, 1) - q(1, cp.alpha as i64)));
    let e = -d
        .cone_points
        .iter()
        .fold(q(d.b, 1), |acc, cp| acc + q(cp.beta, cp.alpha as i64));
    Ok((chi, e))
}

/// Nonzero Euler number gives the Sasakian geometries, zero the Kähler
/// mapping tori; the sign of `χ^orb` picks the geometry within each branch.
pub fn classify_seifert(chi_orb: &Rational, e: &Rational) -> ManifoldVerdict {
    let (branch, geometry) = match (e.is_zero(), chi_orb.signum()) {
        (false, s) if s.is_positive() => (Branch::Sasakian, Geometry::S3),
        (false, s) if s.is_zero() => (Branch::Sasakian, Geometry::Nil),
        (false, _) => (Branch::Sasakian, Geometry::Sl2Tilde),
        (true, s) if s.is_positive() => (Branch::KahlerMappingTorus, Geometry::S2xR),
        (true, s) if s.is_zero() => (Branch::KahlerMappingTorus, Geometry::E3),
        (true, _) => (Branch::KahlerMappingTorus, Geometry::H2xR),
    };
    ManifoldVerdict {
        admits_quasi_sasakian: true,
        branch,
        geometry: Some(geometry),
        notes: vec![format!("chi_orb = {chi_orb}, e = {e}")],
    }
}

pub const NON_ORIENTABLE_BASE_NOTE: &str =
    "warning: non-orientable base orbifold; the classification assumes closed orientable total spaces";
pub const HANTZSCHE_WENDT_NOTE: &str =
    "flat manifold with b1 = 0 (Hantzsche-Wendt type) is excluded from the Kahler mapping torus list";

/// [`classify_seifert`] on raw Seifert data, with the input-dependent notes.
pub fn classify_seifert_data(d: &SeifertData, b1: Option<u64>) -> Result<ManifoldVerdict, ClassifyError> {
    let (chi, e) = seifert_invariants(d)?;
    let mut v = classify_seifert(&chi, &e);
    if !d.base_orientable {
        v.notes.push(NON_ORIENTABLE_BASE_NOTE.into());
    }
    if v.geometry == Some(Geometry::E3) && b1 == Some(0) {
        v.notes.push(HANTZSCHE_WENDT_NOTE.into());
    }
    Ok(v)
}

pub const BETTI_ASSUMPTION_NOTE: &str = "assumes the manifold carries a quasi-Sasakian structure";

/// Even (including zero) first Betti number forces the Sasakian branch,
/// odd forces a Kähler mapping torus.
pub fn decide_by_first_betti(b1: u64) -> Branch {
    if b1 % 2 == 0 {
        Branch::Sasakian
    } else {
        Branch::KahlerMappingTorus
    }
}

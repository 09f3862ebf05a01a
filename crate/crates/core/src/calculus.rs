//! Exterior calculus of left-invariant tensors on a finite-dimensional Lie
//! algebra (the Chevalley–Eilenberg model).
//!
//! Conventions, fixed for the whole crate:
//!
//! * `[e_i, e_j] = Σ_k c^k_{ij} e_k`.
//! * A p-form is stored by its values on increasing basis tuples, so the
//!   coefficient of `e^{i1}∧…∧e^{ip}` is `β(e_{i1}, …, e_{ip})` (determinant
//!   wedge, no factorials).
//! * The exterior derivative uses the half convention, see
//!   [`D_CONVENTION_FACTOR`]. On a 1-form, `dβ(X, Y) = -½ β([X, Y])`.
//! * Interior products insert into the first slot.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{rational_sqrt, RatMatrix, Rational};

/// Ratio between the exterior derivative used here and the usual
/// `dβ(X, Y) = Xβ(Y) - Yβ(X) - β([X, Y])` convention. With this factor the
/// normality tensor `[φ, φ] + 2 dη ⊗ ξ` and the Sasakian condition `dη = Ω`
/// hold simultaneously on the standard models.
pub fn d_convention_factor() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// Human-readable tag for [`d_convention_factor`].
pub const D_CONVENTION_FACTOR: &str = "1/2";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket [e{i}, e{i}] must vanish (index {i})", i = .0 + 1)]
    DiagonalBracket(usize),
    #[error(
        "Jacobi identity fails on (e{}, e{}, e{}), component e{}: sum = {sum}",
        .i + 1, .j + 1, .k + 1, .l + 1
    )]
    JacobiViolation {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        sum: Rational,
    },
    #[error("metric is not positive definite")]
    MetricNotPositiveDefinite,
    #[error("det g = {0} is not a rational square, the Hodge star leaves the rationals")]
    IrrationalVolume(Rational),
}

// ---------------------------------------------------------------------------
// index combinatorics

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// All increasing `p`-tuples from `0..n`, in lexicographic order.
pub fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, p));
    if p > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..p).rev().find(|&t| cur[t] < n - p + t) else {
            return out;
        };
        cur[pos] += 1;
        for t in pos + 1..p {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

/// Position of an increasing tuple in [`combinations`]`(n, tuple.len())`.
pub fn combination_rank(n: usize, tuple: &[usize]) -> usize {
    let p = tuple.len();
    let mut rank = 0;
    let mut start = 0;
    for (t, &c) in tuple.iter().enumerate() {
        for v in start..c {
            rank += binomial(n - 1 - v, p - 1 - t);
        }
        start = c + 1;
    }
    rank
}

/// Sorts `indices` and returns the sign of the sorting permutation, or
/// `None` if an index repeats.
fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = indices.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// Sign of the permutation that sorts the concatenation `first ++ second`
/// of two disjoint increasing tuples.
fn shuffle_sign(first: &[usize], second: &[usize]) -> i32 {
    let inversions: usize = first
        .iter()
        .map(|a| second.iter().filter(|b| *b < a).count())
        .sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn complement(n: usize, tuple: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !tuple.contains(i)).collect()
}

fn signed(x: &Rational, sign: i32) -> Rational {
    if sign < 0 {
        -x.clone()
    } else {
        x.clone()
    }
}

// ---------------------------------------------------------------------------
// Lie algebra

/// One structure-constant entry: `[e_i, e_j]` has coefficient `coeff` on `e_k`.
/// Indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: Rational,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, k: usize, coeff: Rational) -> Self {
        BracketEntry { i, j, k, coeff }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    /// `c[(k * dim + i) * dim + j] = c^k_{ij}`
    c: Vec<Rational>,
    unimodular: bool,
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {}; ", self.dim)?;
        let mut first = true;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if v.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "[e{},e{}] = {}", i + 1, j + 1, v)?;
            }
        }
        write!(f, ")")
    }
}

impl LieAlgebra {
    /// Builds the algebra from bracket entries, completing antisymmetry and
    /// checking the Jacobi identity exactly.
    pub fn from_brackets(dim: usize, entries: &[BracketEntry]) -> Result<Self, CalculusError> {
        let mut c = vec![Rational::zero(); dim * dim * dim];
        for e in entries {
            for &index in &[e.i, e.j, e.k] {
                if index >= dim {
                    return Err(CalculusError::IndexOutOfRange { index, dim });
                }
            }
            if e.i == e.j {
                if e.coeff.is_zero() {
                    continue;
                }
                return Err(CalculusError::DiagonalBracket(e.i));
            }
            c[(e.k * dim + e.i) * dim + e.j] += &e.coeff;
            c[(e.k * dim + e.j) * dim + e.i] -= &e.coeff;
        }
        Self::from_structure_constants(dim, c)
    }

    fn from_structure_constants(dim: usize, c: Vec<Rational>) -> Result<Self, CalculusError> {
        let mut alg = LieAlgebra {
            dim,
            c,
            unimodular: true,
        };
        if let Some(err) = alg.jacobi_violation() {
            return Err(err);
        }
        alg.unimodular = (0..dim).all(|i| {
            (0..dim)
                .fold(Rational::zero(), |acc, k| acc + alg.structure_constant(i, k, k))
                .is_zero()
        });
        Ok(alg)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            c: vec![Rational::zero(); dim * dim * dim],
            unimodular: true,
        }
    }

    fn jacobi_violation(&self) -> Option<CalculusError> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let mut sum = Rational::zero();
                        for m in 0..n {
                            sum += self.structure_constant(i, j, m) * self.structure_constant(m, k, l);
                            sum += self.structure_constant(j, k, m) * self.structure_constant(m, i, l);
                            sum += self.structure_constant(k, i, m) * self.structure_constant(m, j, l);
                        }
                        if !sum.is_zero() {
                            return Some(CalculusError::JacobiViolation { i, j, k, l, sum });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c^k_{ij}`
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(k * self.dim + i) * self.dim + j]
    }

    /// `tr(ad_X) = 0` for every `X`. Only unimodular algebras have lattices,
    /// so only they model closed manifolds.
    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Nonzero brackets `[e_i, e_j]` with `i < j`, as zero-based entries.
    pub fn bracket_entries(&self) -> Vec<BracketEntry> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in 0..self.dim {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        out.push(BracketEntry::new(i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> InvariantVector {
        InvariantVector(
            (0..self.dim)
                .map(|k| self.structure_constant(i, j, k).clone())
                .collect(),
        )
    }

    pub fn bracket(&self, x: &InvariantVector, y: &InvariantVector) -> InvariantVector {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.0[j].is_zero() || i == j {
                    continue;
                }
                let xy = &x.0[i] * &y.0[j];
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *slot += &xy * c;
                    }
                }
            }
        }
        InvariantVector(out)
    }

    /// The same algebra written in the basis `f_a = Σ_i P_{ia} e_i`.
    /// `p` must be invertible.
    pub fn change_basis(&self, p: &RatMatrix) -> Self {
        let n = self.dim;
        let p_inv = p.inverse().expect("basis change must be invertible");
        let columns: Vec<InvariantVector> =
            (0..n).map(|a| InvariantVector(p.column(a))).collect();
        let mut c = vec![Rational::zero(); n * n * n];
        for a in 0..n {
            for b in 0..n {
                let br = p_inv.mul_vec(&self.bracket(&columns[a], &columns[b]).0);
                for (k, x) in br.into_iter().enumerate() {
                    c[(k * n + a) * n + b] = x;
                }
            }
        }
        LieAlgebra {
            dim: n,
            c,
            unimodular: self.unimodular,
        }
    }

    /// Invariant exterior derivative (half convention).
    pub fn d(&self, beta: &InvariantForm) -> InvariantForm {
        ce_differential(self, beta)
    }
}

/// Loads an algebra from zero-based bracket entries. Returns the algebra
/// together with the unimodularity flag.
pub fn load_lie_algebra(dim: usize, entries: &[BracketEntry]) -> Result<(LieAlgebra, bool), CalculusError> {
    let alg = LieAlgebra::from_brackets(dim, entries)?;
    let unimodular = alg.is_unimodular();
    Ok((alg, unimodular))
}

// ---------------------------------------------------------------------------
// vectors, endomorphisms, forms, (1,2)-tensors

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantVector(pub Vec<Rational>);

impl InvariantVector {
    pub fn zero(dim: usize) -> Self {
        InvariantVector(vec![Rational::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn scale(&self, k: &Rational) -> Self {
        InvariantVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        InvariantVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        InvariantVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| format!("{x}*e{}", i + 1))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// An endomorphism (column `j` is the image of `e_j`) or, for metrics, the
/// Gram matrix `g_{ij} = g(e_i, e_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantEndo(pub RatMatrix);

impl InvariantEndo {
    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn apply(&self, v: &InvariantVector) -> InvariantVector {
        InvariantVector(self.0.mul_vec(&v.0))
    }

    /// Bilinear evaluation `v^T M w`, used for metrics.
    pub fn pair(&self, v: &InvariantVector, w: &InvariantVector) -> Rational {
        self.0
            .vec_mul(&v.0)
            .iter()
            .zip(&w.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InvariantForm {
    dim: usize,
    degree: usize,
    coeffs: Vec<Rational>,
}

impl fmt::Debug for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InvariantForm(deg {}: {})", self.degree, self)
    }
}

impl fmt::Display for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(idx, x)| {
                if idx.is_empty() {
                    x.to_string()
                } else {
                    let basis: Vec<String> = idx.iter().map(|i| format!("e^{}", i + 1)).collect();
                    format!("{x}*{}", basis.join("^"))
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl InvariantForm {
    /// Forms of degree `> dim` form the zero space and carry no coefficients.
    pub fn zero(dim: usize, degree: usize) -> Self {
        InvariantForm {
            dim,
            degree,
            coeffs: vec![Rational::zero(); binomial(dim, degree)],
        }
    }

    pub fn constant(dim: usize, value: Rational) -> Self {
        InvariantForm {
            dim,
            degree: 0,
            coeffs: vec![value],
        }
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), binomial(dim, degree), "coefficient count mismatch");
        InvariantForm { dim, degree, coeffs }
    }

    /// `e^{i1} ∧ … ∧ e^{ip}` for arbitrary (distinct) indices; zero on repeats.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut f = Self::zero(dim, indices.len());
        if let Some((sorted, sign)) = sort_with_sign(indices) {
            f.coeffs[combination_rank(dim, &sorted)] = Rational::from_integer(sign.into());
        }
        f
    }

    /// The 1-form with the given components `β(e_i)`.
    pub fn covector(components: &[Rational]) -> Self {
        InvariantForm {
            dim: components.len(),
            degree: 1,
            coeffs: components.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero coefficients with their increasing index tuples.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        combinations(self.dim, self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, x)| !x.is_zero())
    }

    /// `β(e_{i1}, …, e_{ip})` for arbitrary indices.
    pub fn component(&self, indices: &[usize]) -> Rational {
        assert_eq!(indices.len(), self.degree);
        match sort_with_sign(indices) {
            Some((sorted, sign)) => signed(&self.coeffs[combination_rank(self.dim, &sorted)], sign),
            None => Rational::zero(),
        }
    }

    /// `β(v_1, …, v_p)` on arbitrary vectors.
    pub fn eval(&self, vectors: &[InvariantVector]) -> Rational {
        assert_eq!(vectors.len(), self.degree);
        let cols: Vec<usize> = (0..self.degree).collect();
        let mut m = RatMatrix::zeros(self.dim, self.degree);
        for (c, v) in vectors.iter().enumerate() {
            for r in 0..self.dim {
                m[(r, c)] = v.0[r].clone();
            }
        }
        self.terms()
            .fold(Rational::zero(), |acc, (idx, x)| acc + x * m.minor(&idx, &cols))
    }

    /// `β(e_m, e_J)` with `J` increasing.
    fn value_with_head(&self, head: usize, tail: &[usize]) -> Rational {
        if tail.contains(&head) {
            return Rational::zero();
        }
        let pos = tail.iter().filter(|&&t| t < head).count();
        let mut idx = tail.to_vec();
        idx.insert(pos, head);
        let v = &self.coeffs[combination_rank(self.dim, &idx)];
        if pos % 2 == 0 {
            v.clone()
        } else {
            -v.clone()
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        InvariantForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x * k).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "form shape mismatch");
        InvariantForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "form shape mismatch");
        InvariantForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    /// The scalar `k` with `self = k · other`, if one exists. `None` when
    /// `other` is zero but `self` is not, or the forms are not proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "form shape mismatch");
        let Some(pos) = other.coeffs.iter().position(|x| !x.is_zero()) else {
            return self.is_zero().then(Rational::zero);
        };
        let k = &self.coeffs[pos] / &other.coeffs[pos];
        (*self == other.scale(&k)).then_some(k)
    }

    /// Pullback along the basis change `f_a = Σ_i P_{ia} e_i`.
    pub fn change_basis(&self, p: &RatMatrix) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (a, target) in combinations(self.dim, self.degree).iter().enumerate() {
            out.coeffs[a] = self
                .terms()
                .fold(Rational::zero(), |acc, (idx, x)| acc + x * p.minor(&idx, target));
        }
        out
    }
}

/// `(1,2)`-tensor `T(e_i, e_j) = Σ_k T^k_{ij} e_k`, antisymmetric in `(i, j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor12 {
    dim: usize,
    comps: Vec<Rational>,
}

impl fmt::Debug for Tensor12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor12(")?;
        let nz = self.nonzero_pairs();
        if nz.is_empty() {
            write!(f, "0")?;
        }
        for (i, j, v) in nz {
            write!(f, "({},{}) -> {}; ", i + 1, j + 1, v)?;
        }
        write!(f, ")")
    }
}

impl Tensor12 {
    pub fn zero(dim: usize) -> Self {
        Tensor12 {
            dim,
            comps: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Builds the tensor from its values on ordered pairs `i < j`.
    pub fn from_pair_fn(dim: usize, mut f: impl FnMut(usize, usize) -> InvariantVector) -> Self {
        let mut t = Self::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = f(i, j);
                for k in 0..dim {
                    t.comps[(i * dim + j) * dim + k] = v.0[k].clone();
                    t.comps[(j * dim + i) * dim + k] = -v.0[k].clone();
                }
            }
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> InvariantVector {
        let n = self.dim;
        InvariantVector(self.comps[(i * n + j) * n..(i * n + j + 1) * n].to_vec())
    }

    pub fn component(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.comps[(i * self.dim + j) * self.dim + k]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Zero::is_zero)
    }

    /// Pairs `i < j` on which the tensor does not vanish.
    pub fn nonzero_pairs(&self) -> Vec<(usize, usize, InvariantVector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        Tensor12 {
            dim: self.dim,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Tensor12 {
            dim: self.dim,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        }
    }

    /// `2-form ⊗ vector`.
    pub fn form_times_vector(form: &InvariantForm, v: &InvariantVector) -> Self {
        assert_eq!(form.degree(), 2);
        Self::from_pair_fn(form.dim(), |i, j| v.scale(&form.component(&[i, j])))
    }

    /// Transport to the basis `f_a = Σ_i P_{ia} e_i`.
    pub fn change_basis(&self, p: &RatMatrix) -> Self {
        let n = self.dim;
        let p_inv = p.inverse().expect("basis change must be invertible");
        Self::from_pair_fn(n, |a, b| {
            let mut acc = vec![Rational::zero(); n];
            for i in 0..n {
                let pia = &p[(i, a)];
                if pia.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let pjb = &p[(j, b)];
                    if pjb.is_zero() {
                        continue;
                    }
                    let w = pia * pjb;
                    for (k, slot) in acc.iter_mut().enumerate() {
                        *slot += &w * self.component(i, j, k);
                    }
                }
            }
            InvariantVector(p_inv.mul_vec(&acc))
        })
    }
}

// ---------------------------------------------------------------------------
// operations

pub fn bracket(alg: &LieAlgebra, x: &InvariantVector, y: &InvariantVector) -> InvariantVector {
    alg.bracket(x, y)
}

/// Chevalley–Eilenberg differential under the half convention:
/// `dβ(e_{k0}, …, e_{kp}) = ½ Σ_{a<b} (-1)^{a+b} β([e_{ka}, e_{kb}], e_{k0}, …)`
/// with the `a`-th and `b`-th slots omitted from the tail.
pub fn ce_differential(alg: &LieAlgebra, beta: &InvariantForm) -> InvariantForm {
    let n = alg.dim();
    assert_eq!(beta.dim(), n, "form dimension mismatch");
    let p = beta.degree();
    let mut out = InvariantForm::zero(n, p + 1);
    if p >= n {
        return out;
    }
    let half = d_convention_factor();
    for (slot, tuple) in combinations(n, p + 1).iter().enumerate() {
        let mut acc = Rational::zero();
        for a in 0..tuple.len() {
            for b in a + 1..tuple.len() {
                let tail: Vec<usize> = tuple
                    .iter()
                    .enumerate()
                    .filter(|&(t, _)| t != a && t != b)
                    .map(|(_, &x)| x)
                    .collect();
                let mut term = Rational::zero();
                for m in 0..n {
                    let c = alg.structure_constant(tuple[a], tuple[b], m);
                    if !c.is_zero() {
                        term += c * beta.value_with_head(m, &tail);
                    }
                }
                if (a + b) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
        }
        out.coeffs[slot] = acc * &half;
    }
    out
}

/// Determinant-convention wedge product.
pub fn wedge(beta: &InvariantForm, gamma: &InvariantForm) -> InvariantForm {
    assert_eq!(beta.dim(), gamma.dim(), "form dimension mismatch");
    let n = beta.dim();
    let (p, q) = (beta.degree(), gamma.degree());
    let mut out = InvariantForm::zero(n, p + q);
    if p + q > n {
        return out;
    }
    for (i_idx, bi) in beta.terms() {
        for (j_idx, gj) in gamma.terms() {
            if i_idx.iter().any(|x| j_idx.contains(x)) {
                continue;
            }
            let mut k: Vec<usize> = i_idx.iter().chain(&j_idx).copied().collect();
            k.sort_unstable();
            let sign = shuffle_sign(&i_idx, &j_idx);
            let slot = combination_rank(n, &k);
            out.coeffs[slot] += signed(&(bi * gj), sign);
        }
    }
    out
}

/// Interior product `ι_X β`, inserting `X` in the first slot. Contracting a
/// 0-form yields the zero 0-form.
pub fn contract(x: &InvariantVector, beta: &InvariantForm) -> InvariantForm {
    let n = beta.dim();
    assert_eq!(x.dim(), n, "vector dimension mismatch");
    let p = beta.degree();
    if p == 0 {
        return InvariantForm::zero(n, 0);
    }
    let mut out = InvariantForm::zero(n, p - 1);
    for (slot, tail) in combinations(n, p - 1).iter().enumerate() {
        let mut acc = Rational::zero();
        for (m, xm) in x.0.iter().enumerate() {
            if !xm.is_zero() {
                acc += xm * beta.value_with_head(m, tail);
            }
        }
        out.coeffs[slot] = acc;
    }
    out
}

/// Cartan formula `L_X β = d(ι_X β) + ι_X dβ` with the crate's `d`. Under the
/// half convention this is one half of the flow derivative
/// `-Σ β(…, [X, Y_i], …)`.
pub fn lie_derivative(alg: &LieAlgebra, x: &InvariantVector, beta: &InvariantForm) -> InvariantForm {
    let p = beta.degree();
    let inner = contract(x, &ce_differential(alg, beta));
    if p == 0 {
        return inner;
    }
    ce_differential(alg, &contract(x, beta)).add(&inner)
}

/// Orientation of the ordered basis `e_1, …, e_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }
}

fn inverse_metric(g: &InvariantEndo) -> Result<RatMatrix, CalculusError> {
    if !g.0.is_positive_definite() {
        return Err(CalculusError::MetricNotPositiveDefinite);
    }
    Ok(g.0.inverse().expect("positive definite matrices are invertible"))
}

/// Components `β^I` raised with the induced metric on forms.
fn raise(beta: &InvariantForm, g_inv: &RatMatrix) -> Vec<Rational> {
    let n = beta.dim();
    combinations(n, beta.degree())
        .iter()
        .map(|i_idx| {
            beta.terms()
                .fold(Rational::zero(), |acc, (k_idx, x)| acc + x * g_inv.minor(i_idx, &k_idx))
        })
        .collect()
}

/// Hodge star with respect to `g` and `orientation`, characterised by
/// `β ∧ *γ = ⟨β, γ⟩ vol_g`. Requires `det g` to be a rational square so the
/// volume form stays rational.
pub fn hodge_star(
    beta: &InvariantForm,
    g: &InvariantEndo,
    orientation: Orientation,
) -> Result<InvariantForm, CalculusError> {
    let n = beta.dim();
    let g_inv = inverse_metric(g)?;
    let det = g.0.determinant();
    let sqrt_det = rational_sqrt(&det).ok_or(CalculusError::IrrationalVolume(det))?;
    let raised = raise(beta, &g_inv);
    let p = beta.degree();
    let mut out = InvariantForm::zero(n, n - p);
    for (i_idx, up) in combinations(n, p).iter().zip(&raised) {
        if up.is_zero() {
            continue;
        }
        let j_idx = complement(n, i_idx);
        let sign = shuffle_sign(i_idx, &j_idx) * orientation.sign();
        out.coeffs[combination_rank(n, &j_idx)] += signed(&(up * &sqrt_det), sign);
    }
    Ok(out)
}

/// `⟨β, β⟩` for the metric induced by `g` on p-forms.
pub fn form_norm_sq(beta: &InvariantForm, g: &InvariantEndo) -> Result<Rational, CalculusError> {
    let g_inv = inverse_metric(g)?;
    Ok(form_inner(beta, beta, &g_inv))
}

/// `⟨β, γ⟩` given the inverse Gram matrix.
pub fn form_inner(beta: &InvariantForm, gamma: &InvariantForm, g_inv: &RatMatrix) -> Rational {
    raise(beta, g_inv)
        .iter()
        .zip(gamma.coeffs())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// True when the form is a nonzero multiple of `e^1 ∧ … ∧ e^n`.
pub fn is_volume_form(beta: &InvariantForm) -> bool {
    beta.degree() == beta.dim() && !beta.is_zero()
}

/// Sign of a top-degree form relative to `e^1 ∧ … ∧ e^n`.
pub fn volume_sign(beta: &InvariantForm) -> i32 {
    assert_eq!(beta.degree(), beta.dim());
    let x = &beta.coeffs()[0];
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::from_brackets(3, &[BracketEntry::new(0, 1, 2, rat(-2))]).unwrap()
    }

    fn e(dim: usize, i: usize) -> InvariantVector {
        InvariantVector::basis(dim, i)
    }

    fn f(idx: &[usize]) -> InvariantForm {
        InvariantForm::basis(3, idx)
    }

    #[test]
    fn combinatorics() {
        let combos = combinations(5, 3);
        assert_eq!(combos.len(), 10);
        for (r, c) in combos.iter().enumerate() {
            assert_eq!(combination_rank(5, c), r);
        }
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(3, 4).is_empty());
        assert_eq!(shuffle_sign(&[2], &[0, 1]), 1);
        assert_eq!(shuffle_sign(&[1], &[0, 2]), -1);
    }

    #[test]
    fn load_examples() {
        let (abelian, uni) = load_lie_algebra(3, &[]).unwrap();
        assert!(abelian.is_abelian() && uni);

        let (h, uni) = load_lie_algebra(3, &[BracketEntry::new(0, 1, 2, rat(-2))]).unwrap();
        assert!(uni);
        assert_eq!(h.structure_constant(1, 0, 2), &rat(2));

        // [e1,e2] = e3, [e1,e3] = e3: the Jacobi sum on (e1,e2,e3) is
        // [[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2] = 0 + 0 + [-e3, e2] = 0,
        // so this algebra is valid but not unimodular.
        let (a, uni) = load_lie_algebra(
            3,
            &[BracketEntry::new(0, 1, 2, rat(1)), BracketEntry::new(0, 2, 2, rat(1))],
        )
        .unwrap();
        assert!(!uni);
        assert!(!a.is_abelian());
    }

    #[test]
    fn load_errors() {
        assert_eq!(
            load_lie_algebra(3, &[BracketEntry::new(0, 3, 1, rat(1))]).unwrap_err(),
            CalculusError::IndexOutOfRange { index: 3, dim: 3 }
        );
        assert_eq!(
            load_lie_algebra(3, &[BracketEntry::new(1, 1, 0, rat(1))]).unwrap_err(),
            CalculusError::DiagonalBracket(1)
        );
        // [e1,e2] = e1, [e2,e3] = e2, [e1,e3] = e3
        let err = load_lie_algebra(
            3,
            &[
                BracketEntry::new(0, 1, 0, rat(1)),
                BracketEntry::new(1, 2, 1, rat(1)),
                BracketEntry::new(0, 2, 2, rat(1)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, CalculusError::JacobiViolation { i: 0, j: 1, k: 2, .. }));
    }

    #[test]
    fn bracket_examples() {
        let a = LieAlgebra::abelian(3);
        assert!(a.bracket(&e(3, 0), &e(3, 1)).is_zero());
        let h = heisenberg();
        assert_eq!(h.bracket(&e(3, 0), &e(3, 1)), e(3, 2).scale(&rat(-2)));
        let x = InvariantVector(vec![rat(1), ratio(2, 3), rat(-5)]);
        assert!(h.bracket(&x, &x).is_zero());
    }

    #[test]
    fn differential_examples() {
        let a = LieAlgebra::abelian(3);
        assert!(a.d(&f(&[0])).is_zero());
        let h = heisenberg();
        assert_eq!(h.d(&f(&[2])), f(&[0, 1]));
        assert!(h.d(&h.d(&f(&[2]))).is_zero());
        assert!(h.d(&f(&[0])).is_zero());
    }

    #[test]
    fn wedge_examples() {
        let w = wedge(&f(&[0]), &f(&[1]));
        assert_eq!(w.eval(&[e(3, 0), e(3, 1)]), rat(1));
        let b = InvariantForm::covector(&[rat(1), rat(2), ratio(1, 3)]);
        assert!(wedge(&b, &b).is_zero());
        assert_eq!(wedge(&f(&[2]), &f(&[0, 1])), f(&[0, 1, 2]));
        assert_eq!(wedge(&f(&[1]), &f(&[0, 2])), f(&[0, 1, 2]).scale(&rat(-1)));
    }

    #[test]
    fn contract_examples() {
        assert_eq!(contract(&e(3, 2), &f(&[2])), InvariantForm::constant(3, rat(1)));
        assert!(contract(&e(3, 2), &f(&[0, 1])).is_zero());
        assert_eq!(contract(&e(3, 0), &f(&[0, 1])), f(&[1]));
        assert_eq!(contract(&e(3, 1), &f(&[0, 1])), f(&[0]).scale(&rat(-1)));
    }

    #[test]
    fn lie_derivative_examples() {
        let a = LieAlgebra::abelian(3);
        assert!(lie_derivative(&a, &e(3, 0), &f(&[1, 2])).is_zero());
        let h = heisenberg();
        assert!(lie_derivative(&h, &e(3, 2), &f(&[2])).is_zero());
        assert_eq!(lie_derivative(&h, &e(3, 0), &f(&[2])), f(&[1]));
    }

    #[test]
    fn hodge_examples() {
        let g = InvariantEndo(RatMatrix::identity(3));
        let pos = Orientation::Positive;
        assert_eq!(hodge_star(&f(&[0, 1]), &g, pos).unwrap(), f(&[2]));
        assert_eq!(hodge_star(&f(&[2]), &g, pos).unwrap(), f(&[0, 1]));
        assert_eq!(
            hodge_star(&InvariantForm::constant(3, rat(1)), &g, pos).unwrap(),
            f(&[0, 1, 2])
        );
        assert_eq!(hodge_star(&f(&[1]), &g, pos).unwrap(), f(&[0, 2]).scale(&rat(-1)));
        assert_eq!(
            hodge_star(&f(&[0, 1]), &g, Orientation::Negative).unwrap(),
            f(&[2]).scale(&rat(-1))
        );
    }

    #[test]
    fn hodge_errors() {
        let bad = InvariantEndo(RatMatrix::from_i64_rows(&[&[1, 2, 0], &[2, 1, 0], &[0, 0, 1]]));
        assert_eq!(
            hodge_star(&f(&[0]), &bad, Orientation::Positive),
            Err(CalculusError::MetricNotPositiveDefinite)
        );
        assert_eq!(form_norm_sq(&f(&[0]), &bad), Err(CalculusError::MetricNotPositiveDefinite));
        let g2 = InvariantEndo(RatMatrix::from_i64_rows(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(
            hodge_star(&f(&[0]), &g2, Orientation::Positive),
            Err(CalculusError::IrrationalVolume(rat(2)))
        );
    }

    #[test]
    fn hodge_with_nontrivial_metric() {
        // g = diag(4, 1, 1): orthonormal coframe 2e^1, e^2, e^3, vol = 2 e^123.
        let g = InvariantEndo(RatMatrix::from_i64_rows(&[&[4, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        let star = hodge_star(&f(&[0]), &g, Orientation::Positive).unwrap();
        assert_eq!(star, f(&[1, 2]).scale(&ratio(1, 2)));
        assert_eq!(form_norm_sq(&f(&[0]), &g).unwrap(), ratio(1, 4));
    }

    #[test]
    fn norm_examples() {
        let g = InvariantEndo(RatMatrix::identity(3));
        assert_eq!(form_norm_sq(&f(&[0, 1]), &g).unwrap(), rat(1));
        assert_eq!(form_norm_sq(&f(&[2]).scale(&rat(2)), &g).unwrap(), rat(4));
        assert_eq!(form_norm_sq(&f(&[0]).add(&f(&[1])), &g).unwrap(), rat(2));
    }

    #[test]
    fn form_eval_matches_components() {
        let b = f(&[0, 2]).scale(&rat(3)).add(&f(&[1, 2]));
        assert_eq!(b.eval(&[e(3, 2), e(3, 0)]), rat(-3));
        let x = InvariantVector(vec![rat(1), rat(1), rat(0)]);
        assert_eq!(b.eval(&[x, e(3, 2)]), rat(4));
    }

    #[test]
    fn ratio_to() {
        let b = f(&[0, 1]);
        assert_eq!(b.scale(&rat(3)).ratio_to(&b), Some(rat(3)));
        assert_eq!(f(&[0, 2]).ratio_to(&b), None);
        assert_eq!(InvariantForm::zero(3, 2).ratio_to(&b), Some(rat(0)));
        assert_eq!(b.ratio_to(&InvariantForm::zero(3, 2)), None);
    }

    #[test]
    fn basis_change_of_brackets() {
        let h = heisenberg();
        // f1 = e2, f2 = e1, f3 = e3: [f1, f2] = [e2, e1] = 2 f3
        let p = RatMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let h2 = h.change_basis(&p);
        assert_eq!(h2.structure_constant(0, 1, 2), &rat(2));
        assert_eq!(f(&[0, 1]).change_basis(&p), f(&[0, 1]).scale(&rat(-1)));
    }
}

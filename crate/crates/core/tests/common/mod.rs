//! Random generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use qsk_core::acms::AlmostContactMetricStructure;
use qsk_core::calculus::{
    combinations, BracketEntry, InvariantEndo, InvariantForm, InvariantVector, LieAlgebra,
};
use qsk_core::catalog::catalog_entries;
use qsk_core::linalg::{rat, ratio, RatMatrix, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ 3`, `1 ≤ q ≤ 3`.
pub fn small_rat(rng: &mut impl Rng) -> Rational {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn nonzero_rat(rng: &mut impl Rng) -> Rational {
    loop {
        let x = small_rat(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> RatMatrix {
    let entries = (0..rows * cols).map(|_| small_rat(rng)).collect();
    RatMatrix::from_entries(rows, cols, entries).unwrap()
}

pub fn random_invertible(rng: &mut impl Rng, n: usize) -> RatMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// Invertible with integer entries in `[-2, 2]`; keeps transported entries small.
pub fn random_integer_invertible(rng: &mut impl Rng, n: usize) -> RatMatrix {
    loop {
        let entries = (0..n * n).map(|_| rat(rng.gen_range(-2..=2))).collect();
        let m = RatMatrix::from_entries(n, n, entries).unwrap();
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// `PᵀP` for invertible `P`; its determinant is always a rational square.
pub fn random_metric(rng: &mut impl Rng, n: usize) -> InvariantEndo {
    let p = random_invertible(rng, n);
    InvariantEndo(&p.transpose() * &p)
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> InvariantVector {
    InvariantVector((0..n).map(|_| small_rat(rng)).collect())
}

pub fn random_form(rng: &mut impl Rng, n: usize, p: usize) -> InvariantForm {
    let len = combinations(n, p).len();
    InvariantForm::from_coeffs(n, p, (0..len).map(|_| small_rat(rng)).collect())
}

/// `ℝ ⋉_A ℝᵏ`: `[e_0, e_i] = Σ_j A_{ji} e_j`; Jacobi holds for every `A`.
pub fn semidirect(rng: &mut impl Rng, k: usize) -> LieAlgebra {
    let a = random_matrix(rng, k, k);
    let mut entries = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if !a[(j, i)].is_zero() {
                entries.push(BracketEntry::new(0, i + 1, j + 1, a[(j, i)].clone()));
            }
        }
    }
    LieAlgebra::from_brackets(k + 1, &entries).expect("semidirect products satisfy Jacobi")
}

/// A Jacobi-valid algebra of dimension 3 to 5: a semidirect product, or a
/// catalog algebra in a random basis.
pub fn random_lie_algebra(rng: &mut impl Rng) -> LieAlgebra {
    if rng.gen_bool(0.5) {
        let k = rng.gen_range(2..=4);
        semidirect(rng, k)
    } else {
        let entries = catalog_entries();
        let e = &entries[rng.gen_range(0..entries.len())];
        let alg = e.file.algebra().unwrap();
        let p = random_invertible(rng, alg.dim());
        alg.change_basis(&p)
    }
}

/// Dimension `2n+1`: `[e_{2i}, e_{2i+1}] = −2c_i e_{2n}`, `φ` rotating each
/// pair, `ξ = e_{2n}`, `g = I`. Normal with `dη = Σ c_i e^{2i}∧e^{2i+1}`.
pub fn heisenberg_family(cs: &[Rational]) -> AlmostContactMetricStructure {
    let n = cs.len();
    let dim = 2 * n + 1;
    let entries: Vec<BracketEntry> = cs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| BracketEntry::new(2 * i, 2 * i + 1, 2 * n, c * rat(-2)))
        .collect();
    let alg = LieAlgebra::from_brackets(dim, &entries).unwrap();
    let mut phi = RatMatrix::zeros(dim, dim);
    for i in 0..n {
        phi[(2 * i, 2 * i + 1)] = Rational::one();
        phi[(2 * i + 1, 2 * i)] = -Rational::one();
    }
    AlmostContactMetricStructure::new(
        alg,
        InvariantEndo(phi),
        InvariantVector::basis(dim, 2 * n),
        InvariantForm::basis(dim, &[2 * n]),
        InvariantEndo(RatMatrix::identity(dim)),
    )
    .unwrap()
}

fn standard_3d(alg: LieAlgebra) -> AlmostContactMetricStructure {
    AlmostContactMetricStructure::new(
        alg,
        InvariantEndo(RatMatrix::from_i64_rows(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]])),
        InvariantVector::basis(3, 2),
        InvariantForm::basis(3, &[2]),
        InvariantEndo(RatMatrix::identity(3)),
    )
    .unwrap()
}

/// `[e1,e2] = −2c e3` cyclically; normal with `τ = c`.
pub fn su2_scaled(c: &Rational) -> AlmostContactMetricStructure {
    let m = c * rat(-2);
    let alg = LieAlgebra::from_brackets(
        3,
        &[
            BracketEntry::new(0, 1, 2, m.clone()),
            BracketEntry::new(1, 2, 0, m.clone()),
            BracketEntry::new(2, 0, 1, m),
        ],
    )
    .unwrap();
    standard_3d(alg)
}

/// `[e3,e1] = a e2`, `[e3,e2] = −a e1`; co-Kähler.
pub fn e2_scaled(a: &Rational) -> AlmostContactMetricStructure {
    let alg = LieAlgebra::from_brackets(
        3,
        &[BracketEntry::new(2, 0, 1, a.clone()), BracketEntry::new(2, 1, 0, -a.clone())],
    )
    .unwrap();
    standard_3d(alg)
}

/// A normal structure with a known rank, transported by a random basis change.
pub fn random_normal_structure(rng: &mut impl Rng) -> (AlmostContactMetricStructure, usize) {
    let (s, rank) = match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(1..=3);
            let cs: Vec<Rational> = (0..n)
                .map(|_| if rng.gen_bool(0.3) { Rational::zero() } else { nonzero_rat(rng) })
                .collect();
            let rank = 2 * cs.iter().filter(|c| !c.is_zero()).count() + 1;
            (heisenberg_family(&cs), rank)
        }
        1 => (su2_scaled(&nonzero_rat(rng)), 3),
        _ => (e2_scaled(&small_rat(rng)), 1),
    };
    let p = random_integer_invertible(rng, s.dim());
    (s.change_basis(&p), rank)
}

/// Exterior algebra on sorted index tuples, independent of the library.
pub type Poly = BTreeMap<Vec<usize>, Rational>;

pub fn poly_of(beta: &InvariantForm) -> Poly {
    beta.terms().map(|(idx, x)| (idx, x.clone())).collect()
}

fn add_term(out: &mut Poly, mut idx: Vec<usize>, mut x: Rational) {
    // bubble sort, tracking the sign; repeated indices vanish
    for a in 0..idx.len() {
        for b in 0..idx.len() - 1 - a {
            if idx[b] == idx[b + 1] {
                return;
            }
            if idx[b] > idx[b + 1] {
                idx.swap(b, b + 1);
                x = -x;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return;
    }
    let entry = out.entry(idx).or_insert_with(Rational::zero);
    *entry += x;
}

pub fn normalize(p: Poly) -> Poly {
    p.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

pub fn poly_wedge(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (i, x) in a {
        for (j, y) in b {
            let idx: Vec<usize> = i.iter().chain(j).copied().collect();
            add_term(&mut out, idx, x * y);
        }
    }
    normalize(out)
}

/// `d e^k = −½ Σ_{i<j} c^k_{ij} e^i ∧ e^j`, extended as a graded derivation.
pub fn oracle_d(alg: &LieAlgebra, beta: &InvariantForm) -> Poly {
    let n = alg.dim();
    let d_basis: Vec<Poly> = (0..n)
        .map(|k| {
            let mut p = Poly::new();
            for i in 0..n {
                for j in i + 1..n {
                    let c = alg.structure_constant(i, j, k);
                    if !c.is_zero() {
                        add_term(&mut p, vec![i, j], c * ratio(-1, 2));
                    }
                }
            }
            normalize(p)
        })
        .collect();
    let mut out = Poly::new();
    for (idx, x) in beta.terms() {
        for s in 0..idx.len() {
            let before: Poly = [(idx[..s].to_vec(), Rational::one())].into_iter().collect();
            let after: Poly = [(idx[s + 1..].to_vec(), Rational::one())].into_iter().collect();
            let term = poly_wedge(&poly_wedge(&before, &d_basis[idx[s]]), &after);
            let sign = if s % 2 == 0 { x.clone() } else { -x.clone() };
            for (k, y) in term {
                add_term(&mut out, k, y * &sign);
            }
        }
    }
    normalize(out)
}

/// `(L_X β)(Y_1, …, Y_p) = −Σ_i β(Y_1, …, [X, Y_i], …, Y_p)` on invariant
/// forms, evaluated on basis tuples.
pub fn direct_lie_derivative(alg: &LieAlgebra, x: &InvariantVector, beta: &InvariantForm) -> InvariantForm {
    let n = alg.dim();
    let p = beta.degree();
    let coeffs = combinations(n, p)
        .into_iter()
        .map(|idx| {
            let ys: Vec<InvariantVector> = idx.iter().map(|&i| InvariantVector::basis(n, i)).collect();
            (0..p).fold(Rational::zero(), |acc, i| {
                let mut args = ys.clone();
                args[i] = alg.bracket(x, &ys[i]);
                acc - beta.eval(&args)
            })
        })
        .collect();
    InvariantForm::from_coeffs(n, p, coeffs)
}

/// Structure constants `c[k][i][j]`, antisymmetric in `(i, j)`.
pub type Constants = Vec<Vec<Vec<Rational>>>;

pub fn random_constants(rng: &mut impl Rng, n: usize, density: f64) -> Constants {
    let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    let x = ratio(rng.gen_range(-2..=2), 1);
                    c[k][i][j] = x.clone();
                    c[k][j][i] = -x;
                }
            }
        }
    }
    c
}

pub fn constants_of(alg: &LieAlgebra) -> Constants {
    let n = alg.dim();
    (0..n)
        .map(|k| (0..n).map(|i| (0..n).map(|j| alg.structure_constant(i, j, k).clone()).collect()).collect())
        .collect()
}

/// Brute-force Jacobiator on every basis triple.
pub fn jacobi_holds(c: &Constants) -> bool {
    let n = c.len();
    let br = |u: &[Rational], j: usize| -> Vec<Rational> {
        // [u, e_j]
        (0..n)
            .map(|k| (0..n).fold(Rational::zero(), |acc, i| acc + &u[i] * &c[k][i][j]))
            .collect()
    };
    let basis_br = |i: usize, j: usize| -> Vec<Rational> { (0..n).map(|k| c[k][i][j].clone()).collect() };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let a = br(&basis_br(x, y), z);
                let b = br(&basis_br(y, z), x);
                let d = br(&basis_br(z, x), y);
                if (0..n).any(|k| !(&a[k] + &b[k] + &d[k]).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn entries_of(c: &Constants) -> Vec<BracketEntry> {
    let n = c.len();
    let mut out = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                if !c[k][i][j].is_zero() {
                    out.push(BracketEntry::new(i, j, k, c[k][i][j].clone()));
                }
            }
        }
    }
    out
}

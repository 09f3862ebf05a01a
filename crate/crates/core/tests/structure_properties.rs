mod common;

use common::*;
use num_traits::Zero;
use qsk_core::acms::{
    classify_structure, compute_tau, normality_tensor, structure_rank, verify_axioms, StructureLabel,
};
use qsk_core::basic::{
    basic_cohomology, basic_forms_basis, decompose_deta, deform, euler_class_basic, omega_generates_h2,
    BasicComplex, DeformationCase,
};
use qsk_core::calculus::{ce_differential, contract, form_inner, wedge, InvariantForm};
use qsk_core::catalog::catalog_entries;
use qsk_core::linalg::{kernel_basis, rat, RatMatrix, Rational};
use rand::Rng;

#[test]
fn normality_tensor_is_tensorial_under_100_basis_changes() {
    let mut rng = rng(20);
    let structures: Vec<_> = catalog_entries()
        .iter()
        .map(|e| e.file.structure().unwrap())
        .collect();
    for t in 0..100 {
        let s = &structures[t % structures.len()];
        let p = random_invertible(&mut rng, s.dim());
        let moved = s.change_basis(&p);
        assert_eq!(normality_tensor(&moved), normality_tensor(s).change_basis(&p));
        assert_eq!(verify_axioms(&moved).passed(), verify_axioms(s).passed());
        if let (Ok(a), Ok(b)) = (classify_structure(s), classify_structure(&moved)) {
            assert_eq!(a.label, b.label);
            assert_eq!(a.rank, b.rank);
        }
    }
}

#[test]
fn rank_is_odd_on_200_random_normal_structures() {
    let mut rng = rng(21);
    for _ in 0..200 {
        let (s, expected_rank) = random_normal_structure(&mut rng);
        let v = classify_structure(&s).expect("transported structures stay valid");
        assert!(v.normality_residual.is_zero());
        assert!(v.label.is_quasi_sasakian(), "{:?}", v.label);
        assert_eq!(v.rank, expected_rank);
        assert_eq!(v.rank % 2, 1);
        assert_eq!(structure_rank(&s), v.rank);
    }
}

fn decomposition_invariants(s: &qsk_core::acms::AlmostContactMetricStructure) {
    let alg = s.algebra();
    let d = decompose_deta(s).unwrap();
    let residual = s.d_eta().sub(&s.omega().scale(&d.r)).sub(&ce_differential(alg, &d.alpha));
    assert!(residual.is_zero());
    assert!(contract(s.xi(), &d.alpha).is_zero());
    assert_eq!(d.eta_tilde, s.eta().sub(&d.alpha));

    // α is g-orthogonal to every closed basic 1-form, so it has minimal norm.
    let basic1 = basic_forms_basis(alg, s.xi(), 1);
    if !basic1.is_empty() {
        let columns: Vec<Vec<Rational>> = basic1
            .iter()
            .map(|b| ce_differential(alg, b).coeffs().to_vec())
            .collect();
        let rows = columns[0].len();
        let dmat = RatMatrix::from_columns(rows, &columns);
        let g_inv = s.g().matrix().inverse().unwrap();
        for k in kernel_basis(&dmat) {
            let closed = basic1
                .iter()
                .zip(&k)
                .fold(InvariantForm::zero(s.dim(), 1), |acc, (b, c)| acc.add(&b.scale(c)));
            assert!(form_inner(&d.alpha, &closed, &g_inv).is_zero());
        }
    }

    let euler_zero = euler_class_basic(s).unwrap().is_zero();
    let v = deform(s).unwrap();
    assert!(v.checks.passed(), "{}", v.checks);
    assert_eq!(d.r.is_zero(), euler_zero);
    assert_eq!(v.case == DeformationCase::Cosymplectic, d.r.is_zero());
    let xi = s.xi();
    if d.r.is_zero() {
        assert!(ce_differential(alg, &v.eta_tilde).is_zero());
        let mut vol = v.eta_tilde.clone();
        for _ in 0..s.dim() / 2 {
            vol = wedge(&vol, s.omega());
        }
        assert!(!vol.is_zero());
    } else {
        let deta = ce_differential(alg, &v.eta_tilde);
        let mut vol = v.eta_tilde.clone();
        for _ in 0..s.dim() / 2 {
            vol = wedge(&vol, &deta);
        }
        assert!(!vol.is_zero());
        assert!(contract(xi, &deta).is_zero());
    }
    assert_eq!(contract(xi, &v.eta_tilde), InvariantForm::constant(s.dim(), rat(1)));
}

#[test]
fn decomposition_on_random_three_dimensional_structures() {
    let mut rng = rng(22);
    for _ in 0..100 {
        let s = match rng.gen_range(0..3) {
            0 => heisenberg_family(&[small_rat(&mut rng)]),
            1 => su2_scaled(&nonzero_rat(&mut rng)),
            _ => e2_scaled(&small_rat(&mut rng)),
        };
        let tau = compute_tau(&s).unwrap();
        let s = s.change_basis(&random_invertible(&mut rng, 3));
        decomposition_invariants(&s);
        assert_eq!(decompose_deta(&s).unwrap().r, tau);
    }
}

#[test]
fn decomposition_in_dimension_five() {
    let mut rng = rng(23);
    for _ in 0..20 {
        let c = small_rat(&mut rng);
        let s = heisenberg_family(&[c.clone(), c.clone()]).change_basis(&random_invertible(&mut rng, 5));
        decomposition_invariants(&s);
        assert_eq!(decompose_deta(&s).unwrap().r, c);
    }
}

#[test]
fn decomposition_over_the_catalog() {
    for e in catalog_entries() {
        let s = e.file.structure().unwrap();
        if e.is_quasi_sasakian() {
            decomposition_invariants(&s);
        }
    }
}

#[test]
fn basic_cohomology_in_dimension_three() {
    let mut rng = rng(24);
    for _ in 0..50 {
        let (s, _) = random_normal_structure(&mut rng);
        let complex = BasicComplex::new(s.algebra(), s.xi());
        assert!(complex.is_complex());
        if s.dim() == 3 {
            let h = basic_cohomology(s.algebra(), s.xi());
            assert_eq!(h.dims[0], 1);
            assert_eq!(h.dims[2], 1);
            assert!(omega_generates_h2(&s));
        }
    }
    for e in catalog_entries().iter().filter(|e| e.is_quasi_sasakian()) {
        let s = e.file.structure().unwrap();
        assert_eq!(basic_cohomology(s.algebra(), s.xi()).dims[2], 1, "{}", e.name);
        assert!(omega_generates_h2(&s), "{}", e.name);
    }
}

#[test]
fn labels_of_the_scaled_families() {
    assert_eq!(classify_structure(&su2_scaled(&rat(1))).unwrap().label, StructureLabel::Sasakian);
    assert_eq!(classify_structure(&su2_scaled(&rat(2))).unwrap().label, StructureLabel::QuasiSasakian);
    assert_eq!(classify_structure(&e2_scaled(&rat(5))).unwrap().label, StructureLabel::CoKahler);
    assert_eq!(
        classify_structure(&heisenberg_family(&[rat(1), rat(1)])).unwrap().label,
        StructureLabel::Sasakian
    );
    let v = classify_structure(&heisenberg_family(&[rat(1), rat(0)])).unwrap();
    assert_eq!((v.label, v.rank), (StructureLabel::QuasiSasakian, 3));
}

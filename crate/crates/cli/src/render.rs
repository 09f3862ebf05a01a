//! Human-readable summaries of reports.

use std::fmt::Write as _;

use qsk_core::acms::{Check, CHECK_CONTACT, CHECK_D_ETA_ZERO, CHECK_D_OMEGA, CHECK_NIJENHUIS, CHECK_NORMAL};
use qsk_core::catalog::CatalogEntry;
use qsk_core::report::Report;

const IDENTITIES: [&str; 5] = [CHECK_NORMAL, CHECK_D_OMEGA, CHECK_D_ETA_ZERO, CHECK_CONTACT, CHECK_NIJENHUIS];

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn failures(out: &mut String, checks: &[Check]) {
    for c in checks.iter().filter(|c| !c.passed) {
        match &c.witness {
            Some(w) => writeln!(out, "  FAIL {}: {w}", c.name).unwrap(),
            None => writeln!(out, "  FAIL {}", c.name).unwrap(),
        }
    }
}

pub fn summary(r: &Report) -> String {
    let mut out = String::new();
    if let Some(name) = &r.name {
        writeln!(out, "structure: {name}").unwrap();
    }
    if let Some(v) = &r.verdict {
        writeln!(out, "label: {}", v.label).unwrap();
        if let (Some(rank), Some(tau), Some(normal)) = (v.rank, &v.tau, v.normal) {
            writeln!(out, "rank: {rank}").unwrap();
            writeln!(out, "tau: {tau}").unwrap();
            writeln!(out, "normal: {}", yes_no(normal)).unwrap();
        }
        writeln!(out, "d eta: {}", v.d_eta.text).unwrap();
        writeln!(out, "Omega: {}", v.omega.text).unwrap();
        let (identities, axioms): (Vec<&Check>, Vec<&Check>) =
            v.evidence.iter().partition(|c| IDENTITIES.contains(&c.name.as_str()));
        let failed: Vec<Check> = axioms.iter().filter(|c| !c.passed).map(|c| (*c).clone()).collect();
        writeln!(out, "axioms: {} checked, {} failed", axioms.len(), failed.len()).unwrap();
        failures(&mut out, &failed);
        for c in identities {
            match &c.witness {
                Some(w) => writeln!(out, "  {}: no, {w}", c.name).unwrap(),
                None => writeln!(out, "  {}: yes", c.name).unwrap(),
            }
        }
        if v.valid {
            let reeb_ok = v.reeb_invariance.iter().all(|c| c.passed);
            writeln!(out, "Reeb invariance: {}", if reeb_ok { "ok" } else { "fails" }).unwrap();
            failures(&mut out, &v.reeb_invariance);
        }
        if let Some(aqs) = v.anti_quasi_sasakian {
            writeln!(out, "anti-quasi-Sasakian: {}", yes_no(aqs)).unwrap();
        }
    }
    if let Some(d) = &r.decomposition {
        writeln!(out, "deformation: {}", d.case).unwrap();
        writeln!(out, "r: {}", d.r).unwrap();
        writeln!(out, "alpha: {}", d.alpha.text).unwrap();
        writeln!(out, "eta~: {}", d.eta_tilde.text).unwrap();
        writeln!(out, "Omega~: {}", d.omega_tilde.text).unwrap();
        let failed = d.checks.iter().filter(|c| !c.passed).count();
        writeln!(out, "deformation checks: {} passed, {failed} failed", d.checks.len() - failed).unwrap();
        failures(&mut out, &d.checks);
        if let Some(s) = &d.star_form {
            writeln!(out, "*Omega ({}): {}", s.orientation, s.star_omega.text).unwrap();
            writeln!(out, "|Omega|: {}", s.omega_norm).unwrap();
            match (&s.c, s.matching_sign) {
                (Some(c), _) => writeln!(out, "eta~ = c *Omega - alpha with c = {c}").unwrap(),
                (None, Some(sign)) => {
                    let sign = if sign > 0 { "+" } else { "-" };
                    writeln!(out, "eta~ = {sign}(1/|Omega|) *Omega - alpha").unwrap()
                }
                (None, None) => writeln!(out, "star-form identity: no match").unwrap(),
            }
        }
    }
    if let Some(h) = &r.cohomology {
        let dims: Vec<String> = h.dims.iter().map(ToString::to_string).collect();
        writeln!(out, "basic cohomology dims: ({})", dims.join(", ")).unwrap();
        for (p, reps) in h.representatives.iter().enumerate() {
            let texts: Vec<&str> = reps.iter().map(|f| f.text.as_str()).collect();
            writeln!(out, "  H^{p}: [{}]", texts.join(", ")).unwrap();
        }
        writeln!(out, "Omega generates H^2: {}", yes_no(h.omega_generates_h2)).unwrap();
        if let Some(e) = &h.euler_class {
            writeln!(out, "Euler class: {e}").unwrap();
        }
        writeln!(out, "note: {}", h.note).unwrap();
    }
    if let Some(c) = &r.classification {
        writeln!(out, "input: {}", c.input).unwrap();
        if let Some(o) = &c.order {
            writeln!(out, "order: {o}").unwrap();
        }
        if let (Some(chi), Some(e)) = (&c.chi_orb, &c.euler_number) {
            writeln!(out, "chi_orb: {chi}").unwrap();
            writeln!(out, "e: {e}").unwrap();
        }
        writeln!(out, "admits quasi-Sasakian: {}", yes_no(c.admits_quasi_sasakian)).unwrap();
        writeln!(out, "branch: {}", c.branch).unwrap();
        writeln!(out, "geometry: {}", c.geometry.as_deref().unwrap_or("none")).unwrap();
        for n in &c.notes {
            writeln!(out, "note: {n}").unwrap();
        }
    }
    if let Some(cat) = &r.catalog {
        for e in &cat.entries {
            let status = if e.passed { "PASS" } else { "FAIL" };
            let label = if e.expected_invalid {
                format!("{}, expected", e.label)
            } else {
                e.label.clone()
            };
            writeln!(out, "{status} {} ({label})", e.name).unwrap();
        }
        for m in &cat.mismatches {
            writeln!(out, "mismatch: {m}").unwrap();
        }
        writeln!(out, "mismatches: {}", cat.mismatches.len()).unwrap();
    }
    for w in &r.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    out
}

pub fn catalog_list(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        writeln!(out, "{:<18} {:<22} {}", e.name, e.expected.label.name(), e.derivation).unwrap();
    }
    out
}

pub fn catalog_entry(e: &CatalogEntry) -> String {
    let x = &e.expected;
    let mut out = String::new();
    writeln!(out, "name: {}", e.name).unwrap();
    writeln!(out, "derivation: {}", e.derivation).unwrap();
    writeln!(out, "expected label: {}", x.label.name()).unwrap();
    if let Some(rank) = x.rank {
        writeln!(out, "expected rank: {rank}").unwrap();
    }
    if let Some(tau) = &x.tau {
        writeln!(out, "expected tau: {tau}").unwrap();
    }
    if let Some(r) = &x.r {
        writeln!(out, "expected r: {r}").unwrap();
    }
    if let Some(dims) = &x.basic_dims {
        let dims: Vec<String> = dims.iter().map(ToString::to_string).collect();
        writeln!(out, "expected basic cohomology dims: ({})", dims.join(", ")).unwrap();
    }
    if let Some(g) = x.geometry {
        writeln!(out, "expected geometry: {g}").unwrap();
    }
    writeln!(out, "file:").unwrap();
    out.push_str(e.source);
    out
}

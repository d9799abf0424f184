//! One function per subcommand. Each returns the JSON value for stdout, a human-readable
//! rendering for `--pretty`, and whether an internal cross-check failed.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use skewdg::classifier::ext_summary;
use skewdg::dg_core::check_differential;
use skewdg::frob_algebra::{frobenius_with, DEFAULT_TRIALS};
use skewdg::resolution::build_resolution_with;
use skewdg::{
    aut_group, classify, compare, cohomology, cy_probe, iso_solve, ntwo_case, ntwo_presentation, presentation_of,
    radical_filtration, recognize_truncated, report, socle_dim, theorem_c, verify_resolution, BuildOutcome, DgSpec,
    Error, FinAlg, IsoStatus, Mat, Result,
};

use crate::input::{read_file, read_matrix};

pub struct Outcome {
    pub json: Value,
    pub text: String,
    /// A cross-check disagreed; the caller exits with code 3 after printing.
    pub inconsistent: bool,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, inconsistent: false }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn matrix_text(m: &Mat) -> String {
    let rows: Vec<String> =
        m.to_rows().iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

/// Cycle notation without fixed points; "()" for the identity.
fn moved_cycles(perm: &[usize]) -> String {
    let full = skewdg::qpl_action::cycle_notation(perm);
    let kept: String = full.split_inclusive(')').filter(|c| c.contains(' ')).collect();
    if kept.is_empty() {
        "()".into()
    } else {
        kept
    }
}

fn spec_of(path: &Path) -> Result<DgSpec> {
    DgSpec::new(read_matrix(path)?)
}

pub fn validate(path: &Path, max_degree: u32, pairs: usize, seed: u64) -> Result<Outcome> {
    let spec = spec_of(path)?;
    let check = check_differential(&spec, max_degree, pairs, seed)?;
    let mut text = format!(
        "d^2 = 0 on {} monomials up to degree {}; Leibniz rule on {} random pairs\n",
        check.monomials_checked, check.max_degree, check.leibniz_pairs
    );
    for f in &check.failures {
        let _ = writeln!(text, "FAILED: {f}");
    }
    let _ = writeln!(text, "{}", if check.passed() { "valid" } else { "INVALID" });
    let mut json = to_value(&check);
    json["valid"] = json!(check.passed());
    Ok(Outcome { json, text, inconsistent: !check.passed() })
}

pub fn cohomology_cmd(path: &Path, max_degree: u32) -> Result<Outcome> {
    let rep = cohomology(&spec_of(path)?, max_degree)?;
    let mut text = String::new();
    for (d, dim) in rep.dims.iter().enumerate() {
        let _ = writeln!(text, "H^{d}: {dim}");
    }
    let join = |v: &[skewdg::SkewElement]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
    let _ = writeln!(text, "H^1 basis: {}", join(&rep.h1_basis));
    let _ = writeln!(text, "H^2 representatives: {}", join(&rep.h2_cocycles));
    Ok(Outcome::ok(to_value(&rep), text))
}

pub fn classify_cmd(path: &Path) -> Result<Outcome> {
    let m = read_matrix(path)?;
    match m.rows() {
        2 => {
            let case = ntwo_case(&m)?;
            let pres = ntwo_presentation(&m)?;
            let text = format!(
                "n = 2, table row {}{}\nH(A) = {}\n",
                case.row,
                if case.swapped { " (after swapping x1, x2)" } else { "" },
                pres
            );
            Ok(Outcome::ok(json!({"n": 2, "row": case.row, "swapped": case.swapped, "presentation": pres.to_string()}), text))
        }
        3 => {
            let label = classify(&m)?;
            let verdict = theorem_c(&m)?;
            let pres = presentation_of(&label);
            let json = json!({
                "n": 3,
                "label": to_value(&label),
                "case": label.short_name(),
                "calabi_yau": verdict.calabi_yau,
                "koszul": verdict.koszul,
                "smooth": verdict.homologically_smooth,
                "reason": verdict.reason,
                "presentation": pres.to_string(),
            });
            let text = format!(
                "{}\nH(A) = {}\ncalabi_yau: {}, koszul: {}, smooth: {}\n{}\n",
                label.short_name(),
                pres,
                verdict.calabi_yau,
                verdict.koszul,
                verdict.homologically_smooth,
                verdict.reason
            );
            Ok(Outcome::ok(json, text))
        }
        n => Err(Error::Unsupported(format!("classification covers n = 2 and n = 3, got n = {n}"))),
    }
}

pub fn probe(path: &Path) -> Result<Outcome> {
    let res = cy_probe(&spec_of(path)?)?;
    let mut text = format!("{:?} (branch {})\n", res.verdict, res.branch);
    if let Some([t1, t2, t3]) = &res.relation {
        let _ = writeln!(text, "relation: {t1} y1^2 + {t2} y2^2 + {t3} (y1 y2 + y2 y1)");
    }
    Ok(Outcome::ok(to_value(&res), text))
}

pub fn iso(a: &Path, b: &Path) -> Result<Outcome> {
    let (m1, m2) = (read_matrix(a)?, read_matrix(b)?);
    let res = iso_solve(&m1, &m2)?;
    let mut json = to_value(&res);
    json["isomorphic"] = json!(res.is_isomorphic());
    let text = match &res.status {
        IsoStatus::NotIsomorphic => "not isomorphic\n".to_string(),
        IsoStatus::Witness { matrix } => {
            let cycles = moved_cycles(matrix.perm());
            json["cycles"] = json!(cycles);
            let scales: Vec<String> = matrix.scales().iter().map(|s| s.to_string()).collect();
            format!("isomorphic, witness permutation {cycles}, scales [{}]\n", scales.join(", "))
        }
        IsoStatus::ClosureOnly { permutation, .. } => {
            let cycles = moved_cycles(permutation);
            json["cycles"] = json!(cycles);
            format!(
                "isomorphic over the algebraic closure only, permutation {cycles}\nneeds: {}\n",
                res.certificate.join("; ")
            )
        }
    };
    Ok(Outcome::ok(json, text))
}

pub fn aut(path: &Path) -> Result<Outcome> {
    let recs = aut_group(&read_matrix(path)?)?;
    let mut text = String::new();
    for r in &recs {
        let _ = writeln!(text, "{}: {}", moved_cycles(&r.permutation), r.description.join("; "));
    }
    if recs.is_empty() {
        text.push_str("no quasi-permutation automorphisms\n");
    }
    Ok(Outcome::ok(json!({"components": to_value(&recs)}), text))
}

pub fn resolve(path: &Path, truncate: usize, verify: Option<u32>) -> Result<Outcome> {
    let m = read_matrix(path)?;
    let outcome = build_resolution_with(&m, truncate)?;
    let mut json = to_value(&outcome);
    let mut text = String::new();
    let mut inconsistent = false;
    match &outcome {
        BuildOutcome::Finite(res) => {
            let _ = writeln!(text, "finite minimal semi-free resolution, size {}", res.size());
            text.push_str(&res.to_text());
            if let Some(dmax) = verify {
                let spec = DgSpec::new(res.base.clone())?;
                let rec = verify_resolution(&spec, res, dmax)?;
                let _ = writeln!(
                    text,
                    "verification to degree {dmax}: minimal {}, triangular {}, square-zero {}, H(F) {:?}",
                    rec.minimal, rec.triangular, rec.square_zero, rec.cohomology
                );
                for f in &rec.failures {
                    let _ = writeln!(text, "FAILED: {f}");
                }
                inconsistent = !rec.passed();
                json["verification"] = to_value(&rec);
                json["verified"] = json!(rec.passed());
            }
        }
        BuildOutcome::Infinite(p) => {
            let [t1, t2, t3] = &p.relation_coeffs;
            let _ = writeln!(text, "no finite resolution: H(A) = k<y1, y2>/({t1} y1^2 + {t2} y2^2 + {t3} (y1 y2 + y2 y1))");
            let _ = writeln!(text, "y1 = {}, y2 = {}", p.y1, p.y2);
            for row in p.truncation.iter().flatten() {
                let terms: Vec<String> = row
                    .terms
                    .iter()
                    .filter(|(_, [a, b])| !(a.is_zero() && b.is_zero()))
                    .map(|(t, [a, b])| format!("({a} y1 + {b} y2) {t}")).collect();
                let _ = writeln!(text, "d {} = {}", row.name, terms.join(" + "));
            }
            if verify.is_some() {
                inconsistent = !p.composites_vanish();
                json["verified"] = json!(!inconsistent);
            }
        }
    }
    Ok(Outcome { json, text, inconsistent })
}

pub fn ext(path: &Path) -> Result<Outcome> {
    let m = read_matrix(path)?;
    let summary = ext_summary(&m)?.ok_or_else(|| {
        Error::Unsupported("no finite resolution is available for this matrix, so Ext is not computed".into())
    })?;
    let structure = summary.truncated_polynomial.map(|k| format!("k[x]/(x^{k})"));
    let mut json = to_value(&summary);
    json["structure"] = json!(structure);
    let text = format!(
        "Ext dim {}{}\nsocle dim {:?}, radical filtration {:?}\nfrobenius {}, symmetric {}\n",
        summary.dim,
        structure.map(|s| format!(" = {s}")).unwrap_or_default(),
        summary.socle_dim,
        summary.radical_filtration,
        summary.frobenius,
        summary.symmetric
    );
    Ok(Outcome::ok(json, text))
}

pub fn frobenius_cmd(path: &Path, seed: u64) -> Result<Outcome> {
    let e: FinAlg =
        serde_json::from_str(&read_file(path)?).map_err(|err| Error::Input(format!("bad structure file: {err}")))?;
    let verdict = frobenius_with(&e, DEFAULT_TRIALS, seed);
    let socle = socle_dim(&e).ok();
    let filtration = radical_filtration(&e).ok();
    let truncated = recognize_truncated(&e);
    let json = json!({
        "dim": e.dim(),
        "commutative": e.is_commutative(),
        "local": e.is_local(),
        "socle_dim": socle,
        "radical_filtration": filtration,
        "truncated_polynomial": truncated,
        "verdict": to_value(&verdict),
    });
    let text = format!(
        "dim {}, commutative {}, local {}\nsocle dim {:?}, radical filtration {:?}\nfrobenius {}, symmetric {} ({:?})\n",
        e.dim(),
        e.is_commutative(),
        e.is_local(),
        socle,
        filtration,
        verdict.frobenius,
        verdict.symmetric,
        verdict.method
    );
    Ok(Outcome::ok(json, text))
}

fn report_text(r: &skewdg::Report) -> String {
    let mut text = format!("matrix {}\n", matrix_text(&Mat::from_rows(r.matrix.clone()).expect("square")));
    if let Some(l) = &r.label {
        let _ = writeln!(text, "case: {}", l.short_name());
    }
    if let Some(row) = &r.ntwo_row {
        let _ = writeln!(text, "n = 2 table row {}", row.row);
    }
    let _ = writeln!(text, "H(A) = {}", r.presentation);
    let _ = writeln!(text, "cohomology dims {:?}, presented {:?}", r.brute_dims, r.presented_dims);
    if let Some(v) = &r.theorem_c {
        let _ = writeln!(text, "calabi_yau {}, koszul {}, smooth {}", v.calabi_yau, v.koszul, v.homologically_smooth);
    }
    let _ = writeln!(text, "resolution: {}", r.resolution);
    if let Some(e) = &r.ext {
        let _ = writeln!(text, "Ext dim {}, socle {:?}, frobenius {}, symmetric {}", e.dim, e.socle_dim, e.frobenius, e.symmetric);
    }
    for i in &r.inconsistencies {
        let _ = writeln!(text, "INCONSISTENT: {i}");
    }
    let _ = writeln!(text, "{}", if r.consistent { "all cross-checks agree" } else { "CROSS-CHECKS DISAGREE" });
    text
}

pub fn report_cmd(path: &Path, max_degree: u32, against: Option<&Path>) -> Result<Outcome> {
    let m = read_matrix(path)?;
    let Some(other) = against else {
        let r = report(&m, max_degree)?;
        let text = report_text(&r);
        return Ok(Outcome { json: to_value(&r), text, inconsistent: !r.consistent });
    };
    let c = compare(&m, &read_matrix(other)?, max_degree)?;
    let mut text = report_text(&c.first);
    text.push('\n');
    text.push_str(&report_text(&c.second));
    let _ = writeln!(
        text,
        "\nsame cohomology dims: {}, Ext dims {:?} vs {:?}",
        c.same_cohomology_dims, c.ext_dims.0, c.ext_dims.1
    );
    if c.not_quasi_isomorphic {
        text.push_str("not quasi-isomorphic: equal cohomology dimensions, different Ext dimensions\n");
    }
    let inconsistent = !(c.first.consistent && c.second.consistent);
    Ok(Outcome { json: to_value(&c), text, inconsistent })
}

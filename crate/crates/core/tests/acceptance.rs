//! Acceptance criteria, one PASS/FAIL line each. Criteria listed in `KNOWN_RED` cannot hold as
//! stated; the run fails if one of them turns green (so the list gets updated) or if any other
//! criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewdg::classifier::{compare, ext_summary, rank2_data, Subcase};
use skewdg::dg_core::check_differential;
use skewdg::frob_algebra::{certificate_search, sklyanin_e, FrobMethod};
use skewdg::qpl_action::is_quasi_permutation;
use skewdg::resolution::six_representatives;
use skewdg::*;

const SEED: u64 = 20_240_601;

/// (criterion, reason it cannot be met as stated)
const KNOWN_RED: &[(u32, &str)] = &[
    (3, "the non-regular-section witness C' has its third scale inverted; chi(M, C') != N for generic l1, l2, m12"),
    (6, "displayed D2..D5 are not exact (H^1(F) != 0); minimal resolutions of M2..M5 have sizes 8, 6, 8, 6, and one listed 1.1 example has rank 3"),
    (7, "Ext dims of M1..M6 are 8, 8, 6, 8, 6, 4, not 8, 5, 4, 5, 4, 4"),
];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome { passed: true, detail: summary }
    } else {
        let shown: Vec<&String> = failures.iter().take(6).collect();
        let more = if failures.len() > 6 { format!(" (+{} more)", failures.len() - 6) } else { String::new() };
        Outcome { passed: false, detail: format!("{summary}; failures: {shown:?}{more}") }
    }
}

fn q(p: i64, d: i64) -> Scalar {
    Scalar::new(p, d).unwrap()
}

fn ints(rows: [[i64; 3]; 3]) -> Mat {
    Mat::from_ints(&rows)
}

fn diag(d: [Scalar; 3]) -> QplMatrix {
    QplMatrix::diagonal(d.to_vec()).unwrap()
}

fn swap(i: usize, j: usize) -> QplMatrix {
    let mut p = vec![0, 1, 2];
    p.swap(i, j);
    QplMatrix::permutation(p).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> Mat {
    let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect()).collect();
    Mat::from_ints(&rows)
}

fn random_qpl(rng: &mut ChaCha8Rng, n: usize) -> QplMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let scales = (0..n)
        .map(|_| {
            let p = loop {
                let p: i64 = rng.gen_range(-4..=4);
                if p != 0 {
                    break p;
                }
            };
            q(p, rng.gen_range(1..=4))
        })
        .collect();
    QplMatrix::new(perm, scales).unwrap()
}

/// C^{-1} M (c_ij^2) with dense matrices.
fn dense_chi(m: &Mat, c: &QplMatrix) -> Mat {
    let cm = c.to_mat();
    cm.inverse().unwrap().mul(m).unwrap().mul(&cm.map(|x| x * x)).unwrap()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut monomials = 0;
    for k in 0..200 {
        let n = 2 + k % 3;
        let m = random_matrix(&mut rng, n, -3, 3);
        let spec = DgSpec::new(m.clone()).unwrap();
        let check = check_differential(&spec, 8, 10, SEED + k as u64).unwrap();
        monomials += check.monomials_checked;
        if !check.passed() {
            failures.push(format!("{m:?}: {:?}", check.failures));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(30) {
        failures.push(format!("took {elapsed:?}, budget 30 s"));
    }
    outcome(failures, format!("200 matrices, d^2 = 0 on {monomials} monomials up to degree 8 in {elapsed:.1?}"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut failures = Vec::new();
    for _ in 0..100 {
        let n = rng.gen_range(2..=4);
        let m = random_matrix(&mut rng, n, -3, 3);
        let (c, c2) = (random_qpl(&mut rng, n), random_qpl(&mut rng, n));
        if chi(&m, &QplMatrix::identity(n)).unwrap() != m {
            failures.push(format!("identity moves {m:?}"));
        }
        let lhs = chi(&m, &c.compose(&c2)).unwrap();
        if lhs != chi(&chi(&m, &c).unwrap(), &c2).unwrap() {
            failures.push(format!("right action fails for {m:?}"));
        }
        if chi(&m, &c).unwrap() != dense_chi(&m, &c) {
            failures.push(format!("chi disagrees with the dense formula for {m:?}"));
        }
        let prod = c.compose(&c2);
        let inv = c.inverse();
        if !is_quasi_permutation(&prod.to_mat())
            || !is_quasi_permutation(&inv.to_mat())
            || prod.to_mat() != c.to_mat().mul(&c2.to_mat()).unwrap()
            || c.to_mat().mul(&inv.to_mat()).unwrap() != Mat::identity(n)
        {
            failures.push("products or inverses leave the group".into());
        }
    }
    outcome(failures, "100 triples: chi(M, I) = M, chi(M, CC') = chi(chi(M, C), C'), closure under products and inverses".into())
}

/// (name, M, C, chi(M, C)) for every explicit witness.
fn witnesses() -> Vec<(&'static str, Mat, QplMatrix, Mat)> {
    let e = |pairs: &[(usize, usize)]| {
        let mut m = Mat::zeros(3, 3);
        for &(i, j) in pairs {
            m[(i - 1, j - 1)] = Scalar::one();
        }
        m
    };
    // nonregsec with m12 = 2, l1 = 3, l2 = 5, m13 = 0 and m11 = m12 l1^2
    let nonregsec = ints([[18, 2, 0], [54, 6, 0], [90, 10, 0]]);
    let ones = ints([[1, 1, 0], [1, 1, 0], [1, 1, 0]]);
    // redtosimp with (a, b, c) = (1, 2, 3), l1 = 2, l2 = -1
    let red = ints([[1, 2, 3], [2, 4, 6], [-1, -2, -3]]);
    vec![
        ("rank1-1 C", ints([[0, 4, 9], [0, 0, 0], [0, 0, 0]]), diag([q(1, 1), q(1, 2), q(1, 3)]), e(&[(1, 2), (1, 3)])),
        ("rank1-1 C'", ints([[0, 4, 0], [0, 0, 0], [0, 0, 0]]), diag([q(1, 1), q(1, 2), q(1, 1)]), e(&[(1, 2)])),
        ("rank1-1 C''", ints([[0, 0, 9], [0, 0, 0], [0, 0, 0]]), diag([q(1, 1), q(1, 1), q(1, 3)]), e(&[(1, 3)])),
        ("rank1-1 Q", e(&[(1, 2)]), swap(1, 2), e(&[(1, 3)])),
        (
            "rank1-2 (1)",
            ints([[18, 2, 2], [54, 6, 6], [0, 0, 0]]),
            diag([q(1, 18), q(1, 6), q(1, 6)]),
            ints([[1, 1, 1], [1, 1, 1], [0, 0, 0]]),
        ),
        ("rank1-2 (2)", ints([[0, 0, 4], [0, 0, 12], [0, 0, 0]]), diag([q(1, 9), q(1, 3), q(1, 6)]), e(&[(1, 3), (2, 3)])),
        (
            "rank1-2 (3)",
            ints([[36, 4, 0], [108, 12, 0], [0, 0, 0]]),
            diag([q(1, 36), q(1, 12), q(1, 6)]),
            e(&[(1, 1), (1, 2), (2, 1), (2, 2)]),
        ),
        (
            "rank1-3 (1)",
            ints([[18, 2, 2], [0, 0, 0], [54, 6, 6]]),
            diag([q(1, 18), q(1, 6), q(1, 6)]),
            ints([[1, 1, 1], [0, 0, 0], [1, 1, 1]]),
        ),
        (
            "rank1-3 (2)",
            ints([[18, 0, 2], [0, 0, 0], [54, 0, 6]]),
            diag([q(1, 18), q(1, 1), q(1, 6)]),
            e(&[(1, 1), (1, 3), (3, 1), (3, 3)]),
        ),
        ("rank1-3 (3)", ints([[0, 2, 0], [0, 0, 0], [0, 6, 0]]), diag([q(2, 1), q(1, 1), q(6, 1)]), e(&[(1, 2), (3, 2)])),
        ("rank1-4 (1)", e(&[(1, 2), (3, 2)]), swap(1, 2), e(&[(1, 3), (2, 3)])),
        ("rank1-4 (2)", e(&[(1, 1), (1, 3), (3, 1), (3, 3)]), swap(1, 2), e(&[(1, 1), (1, 2), (2, 1), (2, 2)])),
        (
            "rank1-4 (3)",
            ints([[1, 1, 1], [0, 0, 0], [1, 1, 1]]),
            swap(1, 2),
            ints([[1, 1, 1], [1, 1, 1], [0, 0, 0]]),
        ),
        ("nonregsec C", nonregsec.clone(), swap(1, 2), ints([[18, 0, 2], [90, 0, 10], [54, 0, 6]])),
        ("nonregsec C'", nonregsec, diag([q(1, 18), q(1, 6), q(18, 5)]), ones),
        ("redtosimp C", red.clone(), swap(0, 1), ints([[4, 2, 6], [2, 1, 3], [-2, -1, -3]])),
        ("redtosimp C'", red, swap(0, 2), ints([[-3, -2, -1], [6, 4, 2], [3, 2, 1]])),
    ]
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let all = witnesses();
    for (name, m, c, target) in &all {
        let got = chi(m, c).unwrap();
        if &got != target {
            failures.push(format!("{name}: chi gives {got:?}, expected {target:?}"));
        }
        match iso_solve(m, target).unwrap().witness() {
            Some(w) if &chi(m, w).unwrap() == target => {}
            _ => failures.push(format!("{name}: iso_solve found no rational witness")),
        }
    }
    // the scale that does work for the non-regular-section witness
    let fixed = chi(&ints([[18, 2, 0], [54, 6, 0], [90, 10, 0]]), &diag([q(1, 18), q(1, 6), q(5, 18)])).unwrap();
    let note = if fixed == ints([[1, 1, 0], [1, 1, 0], [1, 1, 0]]) { "; d3 = l2/(l1^2 m12) verifies" } else { "" };
    outcome(failures, format!("{} explicit witnesses checked through chi and rediscovered by iso_solve{note}", all.len()))
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut reps: Vec<(String, Mat)> = vec![
        ("(1) rank 3".into(), common::identity()),
        ("(2) rank 2 nondegenerate".into(), ints([[1, 0, 0], [0, 1, 0], [0, 0, 0]])),
        ("(4)".into(), ints([[1, 1, 1], [1, 1, 1], [1, 1, 1]])),
        ("(5)".into(), ints([[2, 1, 1], [2, 1, 1], [0, 0, 0]])),
        ("(6)".into(), ints([[2, 1, 1], [2, 1, 1], [2, 1, 1]])),
    ];
    for sub in Subcase::ALL {
        let (_, m) = common::worked_examples().into_iter().find(|(s, _)| *s == sub).unwrap();
        reps.push((format!("(3) subcase {sub}"), m));
    }
    for (i, m) in six_representatives().into_iter().enumerate() {
        reps.push((format!("M{}", i + 1), m));
    }
    let mut cases = std::collections::BTreeSet::new();
    for (name, m) in &reps {
        let label = classify(m).unwrap();
        cases.insert(label.cohomology_case().unwrap());
        let brute = cohomology(&DgSpec::new(m.clone()).unwrap(), 6).unwrap().dims;
        let presented = presented_dims(&presentation_of(&label), 6).unwrap();
        if brute != presented {
            failures.push(format!("{name}: brute {brute:?} vs presented {presented:?}"));
        }
    }
    if cases.len() != 9 {
        failures.push(format!("only cases {cases:?} covered"));
    }
    let rows: [(u8, [[i64; 2]; 2]); 7] = [
        (1, [[1, 0], [0, 1]]),
        (2, [[2, 0], [0, 0]]),
        (3, [[0, 3], [0, 0]]),
        (4, [[1, 1], [0, 0]]),
        (5, [[1, 0], [2, 0]]),
        (6, [[1, 1], [2, 2]]),
        (7, [[1, 1], [1, 1]]),
    ];
    for (row, m) in rows {
        let m = Mat::from_ints(&m);
        let got = ntwo_case(&m).unwrap().row;
        let brute = cohomology(&DgSpec::new(m.clone()).unwrap(), 5).unwrap().dims;
        let presented = presented_dims(&ntwo_presentation(&m).unwrap(), 5).unwrap();
        if got != row || brute != presented {
            failures.push(format!("n = 2 row {row}: classified {got}, brute {brute:?} vs presented {presented:?}"));
        }
    }
    // On the not-CY families the displayed relation is a perfect square and undercounts relations
    let mut diverging = 0;
    for m in common::not_calabi_yau() {
        let brute = cohomology(&DgSpec::new(m.clone()).unwrap(), 6).unwrap().dims;
        if brute != presented_dims(&presentation_of(&classify(&m).unwrap()), 6).unwrap() {
            diverging += 1;
        }
    }
    outcome(
        failures,
        format!(
            "{} representatives over cases {cases:?} to degree 6, seven n = 2 rows to degree 5; \
             {diverging} of 3 not-CY family members have brute dims below the square-relation presentation",
            reps.len()
        ),
    )
}

/// Membership in the two non-Calabi-Yau families, in integer arithmetic.
fn family_oracle(m: &[[i64; 3]; 3]) -> bool {
    let Some(p) = (0..3).find(|&i| m[i].iter().any(|&x| x != 0)) else { return false };
    let mut perm = [0, 1, 2];
    perm.swap(0, p);
    let mm = |i: usize, j: usize| m[perm[i]][perm[j]] as i128;
    let j = (0..3).find(|&j| mm(0, j) != 0).unwrap();
    let d = mm(0, j);
    // rank 1: every row is a multiple of row 0
    for i in 1..3 {
        if (0..3).any(|k| mm(i, k) * d != mm(0, k) * mm(i, j)) {
            return false;
        }
    }
    // l1 = a/d, l2 = b/d
    let (a, b) = (mm(1, j), mm(2, j));
    if a == 0 || b == 0 {
        return false;
    }
    let (m11, m12, m13) = (mm(0, 0), mm(0, 1), mm(0, 2));
    let s = m12 * a * a + m13 * b * b;
    let target = m11 * d * d;
    if s == target {
        m12 * m13 == 0
    } else {
        4 * m12 * m13 * a * a * b * b == (s - target) * (s - target)
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let vals = [-1i64, 0, 1, 2];
    let mut not_cy = 0usize;
    let mut by_case = [0usize; 10];
    for code in 0..4usize.pow(9) {
        let mut rows = [[0i64; 3]; 3];
        let mut c = code;
        for k in 0..9 {
            rows[k / 3][k % 3] = vals[c % 4];
            c /= 4;
        }
        let m = ints(rows);
        let verdict = theorem_c(&m).unwrap();
        let probe = cy_probe(&DgSpec::new(m.clone()).unwrap()).unwrap();
        let oracle = !family_oracle(&rows);
        if let Some(case) = classify(&m).unwrap().cohomology_case() {
            by_case[case as usize] += 1;
        }
        if !verdict.calabi_yau {
            not_cy += 1;
        }
        let probe_cy = probe.verdict == ProbeVerdict::CalabiYau;
        if verdict.calabi_yau != probe_cy || verdict.calabi_yau != oracle {
            failures.push(format!("{rows:?}: theorem_c {}, probe {probe_cy}, families {oracle}", verdict.calabi_yau));
        }
    }
    let mut named: Vec<(Mat, bool)> = common::not_calabi_yau().into_iter().map(|m| (m, false)).collect();
    named.extend([common::identity(), Mat::zeros(3, 3), common::e12()].into_iter().map(|m| (m, true)));
    named.extend(six_representatives().into_iter().map(|m| (m, true)));
    named.extend(common::worked_examples().into_iter().map(|(_, m)| (m, true)));
    for (m, expected) in &named {
        let verdict = theorem_c(m).unwrap().calabi_yau;
        let probe = cy_probe(&DgSpec::new(m.clone()).unwrap()).unwrap().verdict == ProbeVerdict::CalabiYau;
        if verdict != *expected || probe != *expected {
            failures.push(format!("{m:?}: expected CY {expected}, theorem_c {verdict}, probe {probe}"));
        }
    }
    outcome(
        failures,
        format!(
            "262144 grid matrices + {} named in {:.1?}; {not_cy} not CY; rank-1 cases (4)..(9): {:?}",
            named.len(),
            start.elapsed(),
            &by_case[4..]
        ),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut battery: Vec<(String, Mat, usize)> = common::worked_examples()
        .into_iter()
        .filter(|(s, _)| *s != Subcase::S131)
        .map(|(s, m)| (format!("subcase {s}"), m, s.resolution_size()))
        .collect();
    battery.push(("listed 1.1 example (8)".into(), common::listed_rank_three(), Subcase::S11.resolution_size()));
    for (i, (m, size)) in six_representatives().into_iter().zip([8, 5, 4, 5, 4, 4]).enumerate() {
        battery.push((format!("M{}", i + 1), m, size));
    }
    for (name, m, size) in &battery {
        let res = match build_resolution(m) {
            Ok(BuildOutcome::Finite(res)) => res,
            other => {
                failures.push(format!("{name}: no finite resolution ({:?})", other.map(|_| "infinite")));
                continue;
            }
        };
        if res.size() != *size {
            failures.push(format!("{name}: size {} (expected {size})", res.size()));
        }
        let rec = verify_resolution(&DgSpec::new(res.base.clone()).unwrap(), &res, 5).unwrap();
        if !rec.passed() {
            failures.push(format!("{name}: verification failed: {:?}", rec.failures));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        failures.push(format!("took {elapsed:?}, budget 2 min"));
    }
    outcome(failures, format!("{} resolutions built and verified to degree 5 in {elapsed:.1?}", battery.len()))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let expected = [3, 4, 5, 6, 8, 4, 6];
    for (sub, m) in Subcase::ALL.iter().zip(expected) {
        for (_, mat) in common::worked_examples().into_iter().filter(|(s, _)| s == sub) {
            let e = ext_summary(&mat).unwrap().unwrap();
            if e.truncated_polynomial != Some(m) {
                failures.push(format!("subcase {sub}: recognized {:?}, expected k[x]/(x^{m})", e.truncated_polynomial));
            }
        }
    }
    for (i, (mat, dim)) in six_representatives().into_iter().zip([8, 5, 4, 5, 4, 4]).enumerate() {
        let e = ext_summary(&mat).unwrap().unwrap();
        if e.dim != dim || e.socle_dim != Some(1) || !e.frobenius {
            failures.push(format!("M{}: dim {} (expected {dim}), socle {:?}, frobenius {}", i + 1, e.dim, e.socle_dim, e.frobenius));
        }
    }
    outcome(failures, "subcase Ext algebras and the six representatives".into())
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut both = 0;
    for l in -2i64..=2 {
        for m in -2i64..=2 {
            for v in -2i64..=2 {
                let e = sklyanin_e(&Scalar::from_int(l), &Scalar::from_int(m), &Scalar::from_int(v));
                let verdict = frobenius(&e);
                if verdict.frobenius != (l * m - v * v != 0) {
                    failures.push(format!("({l}, {m}, {v}): frobenius {}", verdict.frobenius));
                }
                let cert = certificate_search(&e, 64, SEED);
                if cert.method != FrobMethod::NoCertificateFound || !verdict.frobenius {
                    both += 1;
                    if cert.frobenius != verdict.frobenius {
                        failures.push(format!("({l}, {m}, {v}): socle and certificate methods disagree"));
                    }
                }
            }
        }
    }
    outcome(failures, format!("125 grid points; socle and certificate methods compared on {both}"))
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Kernel generator of a rank-2 integer matrix given by its rows.
fn kernel_vector(rows: [[i64; 3]; 3]) -> [i64; 3] {
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let c = cross(rows[i], rows[j]);
        if c != [0, 0, 0] {
            return c;
        }
    }
    unreachable!("rank 2")
}

fn det(m: [[i64; 3]; 3]) -> i64 {
    let c = cross(m[1], m[2]);
    m[0][0] * c[0] + m[0][1] * c[1] + m[0][2] * c[2]
}

fn hadamard(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

fn lin(a: i64, u: &[Scalar], b: i64, v: &[Scalar]) -> Vec<Scalar> {
    u.iter().zip(v).map(|(x, y)| Scalar::from_int(a) * x + Scalar::from_int(b) * y).collect()
}

/// The four existence conditions, each by solving M^T x = rhs directly.
fn simpleprop_conditions(m: &Mat, t: &[Scalar]) -> Option<(Vec<Scalar>, Vec<Scalar>, Vec<Scalar>)> {
    let mt = m.transpose();
    let solve = |rhs: &[Scalar]| solve_linear(&mt, rhs).unwrap().particular;
    let t2 = hadamard(t, t);
    let qv = solve(&t2)?;
    let qt = hadamard(&qv, t);
    if in_span(&[t2], &qt) {
        return None;
    }
    let r = solve(&qt)?;
    let u = solve(&lin(4, &hadamard(&r, t), 1, &hadamard(&qv, &qv)))?;
    Some((qv, r, u))
}

fn matches_type(m: &[[i64; 3]; 3]) -> bool {
    // (zero column, the two rows carrying lambda, the row carrying (b, e), first/second nonzero column)
    let types = [(1, [0, 2], 1, 0, 2), (0, [1, 2], 0, 1, 2), (2, [0, 1], 2, 0, 1)];
    types.iter().any(|&(zero, [ra, rc], rb, c1, c2)| {
        if (0..3).any(|i| m[i][zero] != 0) {
            return false;
        }
        let (a, c) = (m[ra][c1], m[rc][c1]);
        if a == 0 || c == 0 || m[ra][c2] == 0 {
            return false;
        }
        // lambda = m[ra][c2] / a
        let (ln, ld) = (m[ra][c2], a);
        let (b, e) = (m[rb][c1], m[rb][c2]);
        m[rc][c2] * ld == ln * c && e * ld != ln * b && a * a * ld == ln * c * c
    })
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let (mut rank2, mut degenerate, mut satisfying) = (0usize, 0usize, 0usize);
    for code in 0..5usize.pow(9) {
        let mut rows = [[0i64; 3]; 3];
        let mut c = code;
        for k in 0..9 {
            rows[k / 3][k % 3] = (c % 5) as i64 - 2;
            c /= 5;
        }
        if det(rows) != 0 {
            continue;
        }
        let cols = [0, 1, 2].map(|j| [rows[0][j], rows[1][j], rows[2][j]]);
        let rank_at_most_1 = [(0, 1), (0, 2), (1, 2)].iter().all(|&(i, j)| cross(rows[i], rows[j]) == [0, 0, 0]);
        if rank_at_most_1 {
            continue;
        }
        rank2 += 1;
        let s = kernel_vector(rows);
        let t = kernel_vector(cols);
        if (0..3).map(|i| s[i] * t[i] * t[i]).sum::<i64>() != 0 {
            continue;
        }
        degenerate += 1;
        let m = ints(rows);
        let t: Vec<Scalar> = t.iter().map(|&x| Scalar::from_int(x)).collect();
        let subcase = classify(&m).unwrap().subcase();
        let Some((qv, r, u)) = simpleprop_conditions(&m, &t) else {
            if subcase == Some(Subcase::S132) {
                failures.push(format!("{rows:?}: classified 1.3.2 but the conditions fail"));
            }
            continue;
        };
        satisfying += 1;
        if subcase != Some(Subcase::S132) {
            failures.push(format!("{rows:?}: conditions hold but classified {subcase:?}"));
        }
        if !matches_type(&rows) {
            failures.push(format!("{rows:?}: matches none of the three types"));
        }
        // exist: v with M^T v = ut + 2rq, then rank(M^T | 4vt + 2uq + 4r^2) = 3
        let mt = m.transpose();
        let Some(v) = solve_linear(&mt, &lin(1, &hadamard(&u, &t), 2, &hadamard(&r, &qv))).unwrap().particular else {
            failures.push(format!("{rows:?}: ut + 2rq is not a coboundary"));
            continue;
        };
        let w: Vec<Scalar> = lin(4, &hadamard(&v, &t), 2, &hadamard(&u, &qv))
            .iter()
            .zip(hadamard(&r, &r))
            .map(|(x, y)| x + &(Scalar::from_int(4) * y))
            .collect();
        let aug = mt.hstack(&Mat::from_columns(&[w], 3).unwrap()).unwrap();
        if aug.rank() != 3 {
            failures.push(format!("{rows:?}: no rank jump"));
        }
        if rank2_data(&m).unwrap().v.is_none() {
            failures.push(format!("{rows:?}: classifier produced no v"));
        }
    }
    if satisfying == 0 {
        failures.push("no candidate satisfies the conditions".into());
    }
    outcome(
        failures,
        format!(
            "1953125 matrices in {:.1?}: {rank2} of rank 2, {degenerate} degenerate, {satisfying} satisfy all four conditions, all typed with rank jump 3",
            start.elapsed()
        ),
    )
}

fn criterion_10() -> Outcome {
    let a = ints([[1, 0, 1], [0, 1, 0], [1, 0, 1]]);
    let b = ints([[0, 0, 1], [0, 1, 0], [0, 0, 0]]);
    let c = compare(&a, &b, 6).unwrap();
    let mut failures = Vec::new();
    if !c.same_cohomology_dims || c.first.brute_dims != c.second.brute_dims {
        failures.push(format!("cohomology differs: {:?} vs {:?}", c.first.brute_dims, c.second.brute_dims));
    }
    if c.ext_dims != (Some(3), Some(4)) {
        failures.push(format!("Ext dims {:?}", c.ext_dims));
    }
    if !c.not_quasi_isomorphic || !c.first.consistent || !c.second.consistent {
        failures.push("report does not flag the pair".into());
    }
    outcome(failures, format!("H dims {:?} for both, Ext dims {:?}", c.first.brute_dims, c.ext_dims))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "differential well-defined", criterion_1),
        (2, "group action", criterion_2),
        (3, "isomorphism witnesses", criterion_3),
        (4, "cohomology table", criterion_4),
        (5, "Calabi-Yau battery", criterion_5),
        (6, "resolution verification", criterion_6),
        (7, "Ext table", criterion_7),
        (8, "Frobenius grid", criterion_8),
        (9, "simple-type scan", criterion_9),
        (10, "non-quasi-isomorphic pair", criterion_10),
    ];
    let mut bad = Vec::new();
    for (id, name, run) in criteria {
        let out = run();
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        println!("{} {id:>2} {name}: {}", if out.passed { "PASS" } else { "FAIL" }, out.detail);
        match (out.passed, known) {
            (false, Some((_, why))) => println!("        known red: {why}"),
            (true, Some(_)) => bad.push(format!("criterion {id} passes but is listed as known red")),
            (false, None) => bad.push(format!("criterion {id} failed")),
            (true, None) => {}
        }
    }
    if bad.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("{}", bad.join("\n"));
        ExitCode::FAILURE
    }
}

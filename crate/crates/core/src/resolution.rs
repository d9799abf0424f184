//! Minimal semi-free resolutions of k over A(M) for n = 3, their numerical verification, and
//! the Ext-algebra as the scalar commutant of the resolution differential.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::classifier::{classify, rank2_data, theorem_c, Branch, CaseLabel, Rank1Params, Subcase};
use crate::dg_core::{differential, DgSpec};
use crate::error::{Error, Result};
use crate::exact_linalg::{kernel, solve_linear, Column, Mat};
use crate::frob_algebra::FinAlg;
use crate::qpl_action::{iso_solve, IsoStatus};
use crate::scalar::Scalar;
use crate::skew_algebra::{graded_basis, parse_element, SkewElement};

/// Default number of rows kept from a periodic infinite resolution.
pub const DEFAULT_TRUNCATION: usize = 8;

/// Semi-free resolution with basis e_0 = 1, e_1, ..., e_(m-1) in degree 0 and
/// differential d(e_j) = sum over l < j of d[j][l] e_l.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemifreeResolution {
    /// The matrix of the algebra the entries live in. Differs from the input matrix only when
    /// the representative is isomorphic to it over the algebraic closure alone.
    pub base: Mat,
    pub d: Vec<Vec<SkewElement>>,
    pub label: Option<CaseLabel>,
    pub named: BTreeMap<String, SkewElement>,
    pub iso_over_closure: bool,
    /// One-based index of the representative M_i whose differential D_i was transported.
    pub representative: Option<usize>,
}

impl SemifreeResolution {
    pub fn size(&self) -> usize {
        self.d.len()
    }

    fn from_rows(base: &Mat, rows: &[Vec<SkewElement>]) -> Self {
        let n = base.rows();
        let m = rows.len() + 1;
        let mut d = vec![vec![SkewElement::zero(n); m]; m];
        for (j, row) in rows.iter().enumerate() {
            for (l, e) in row.iter().enumerate() {
                d[j + 1][l] = e.clone();
            }
        }
        SemifreeResolution { base: base.clone(), d, label: None, named: BTreeMap::new(), iso_over_closure: false, representative: None }
    }

    fn name(mut self, key: &str, e: &SkewElement) -> Self {
        self.named.insert(key.to_string(), e.clone());
        self
    }

    /// Stable text form: base matrix, flags, named elements, then one line per nonzero entry.
    pub fn to_text(&self) -> String {
        let rows: Vec<String> = self
            .base
            .to_rows()
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| format!("\"{x}\"")).collect::<Vec<_>>().join(",")))
            .collect();
        let mut out = format!("base [{}]\nsize {}\nclosure {}\n", rows.join(","), self.size(), self.iso_over_closure);
        if let Some(i) = self.representative {
            out.push_str(&format!("representative {i}\n"));
        }
        for (k, v) in &self.named {
            out.push_str(&format!("name {k} = {v}\n"));
        }
        for (j, row) in self.d.iter().enumerate() {
            for (l, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    out.push_str(&format!("d {j} {l} = {e}\n"));
                }
            }
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let bad = |line: &str| Error::Input(format!("malformed resolution line {line:?}"));
        let mut base: Option<Mat> = None;
        let mut size: Option<usize> = None;
        let mut closure = false;
        let mut representative = None;
        let mut named = BTreeMap::new();
        let mut entries = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, rest) = line.split_once(' ').ok_or_else(|| bad(line))?;
            match key {
                "base" => {
                    let rows: Vec<Vec<Scalar>> = serde_json::from_str(rest).map_err(|_| bad(line))?;
                    base = Some(Mat::from_rows(rows)?);
                }
                "size" => size = Some(rest.trim().parse().map_err(|_| bad(line))?),
                "representative" => representative = Some(rest.trim().parse().map_err(|_| bad(line))?),
                "closure" => closure = rest.trim().parse().map_err(|_| bad(line))?,
                "name" => {
                    let (k, v) = rest.split_once('=').ok_or_else(|| bad(line))?;
                    named.insert(k.trim().to_string(), v.trim().to_string());
                }
                "d" => {
                    let (idx, v) = rest.split_once('=').ok_or_else(|| bad(line))?;
                    let ij: Vec<usize> = idx.split_whitespace().map(str::parse).collect::<std::result::Result<_, _>>().map_err(|_| bad(line))?;
                    if ij.len() != 2 {
                        return Err(bad(line));
                    }
                    entries.push((ij[0], ij[1], v.trim().to_string()));
                }
                _ => return Err(bad(line)),
            }
        }
        let base = base.ok_or_else(|| Error::Input("resolution text has no base line".into()))?;
        let size = size.ok_or_else(|| Error::Input("resolution text has no size line".into()))?;
        let n = base.rows();
        let mut d = vec![vec![SkewElement::zero(n); size]; size];
        for (j, l, v) in entries {
            if j >= size || l >= size {
                return Err(Error::Input(format!("entry ({j}, {l}) outside a resolution of size {size}")));
            }
            d[j][l] = parse_element(n, &v)?;
        }
        let named = named.into_iter().map(|(k, v)| Ok((k, parse_element(n, &v)?))).collect::<Result<_>>()?;
        let label = if n == 3 { classify(&base).ok() } else { None };
        Ok(SemifreeResolution { base, d, label, named, iso_over_closure: closure, representative })
    }
}

/// The periodic resolution over H(A) = k<y1, y2>/(t1 y1^2 + t2 y2^2 + t3 (y1 y2 + y2 y1)) with
/// t1 t2 = t3^2. Each truncation row lists linear forms (coefficients on y1, y2) applied to
/// the previous generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinitePattern {
    pub relation_coeffs: [Scalar; 3],
    pub y1: SkewElement,
    pub y2: SkewElement,
    /// The square root of t1 t2 matching the sign of t3, when rational.
    pub root: Option<Scalar>,
    pub truncation: Option<Vec<PatternRow>>,
}

/// d(e) = sum over targets of (a y1 + b y2) e_target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternRow {
    pub name: String,
    pub terms: Vec<(String, [Scalar; 2])>,
}

impl InfinitePattern {
    fn new(t: [Scalar; 3], y1: SkewElement, y2: SkewElement, len: usize) -> Self {
        let prod = &t[0] * &t[1];
        let root = prod.exact_root(2).map(|r| if t[2].is_negative() { -r } else { r });
        let truncation = root.as_ref().map(|s| {
            let [t1, t2, _] = &t;
            let g = if t1.is_zero() { [s.clone(), t2.clone()] } else { [t1.clone(), s.clone()] };
            let mut rows = vec![
                PatternRow { name: "e_y1".into(), terms: vec![("1".into(), [Scalar::one(), Scalar::zero()])] },
                PatternRow { name: "e_y2".into(), terms: vec![("1".into(), [Scalar::zero(), Scalar::one()])] },
                PatternRow {
                    name: "e_2".into(),
                    terms: vec![("e_y1".into(), [t1.clone(), s.clone()]), ("e_y2".into(), [s.clone(), t2.clone()])],
                },
            ];
            for k in 3..len.max(3) {
                rows.push(PatternRow { name: format!("e_{k}"), terms: vec![(format!("e_{}", k - 1), g.clone())] });
            }
            rows
        });
        InfinitePattern { relation_coeffs: t, y1, y2, root, truncation }
    }

    /// Checks that consecutive maps of the truncation compose into the relation ideal, working
    /// in the free algebra on y1, y2.
    pub fn composites_vanish(&self) -> bool {
        let Some(rows) = &self.truncation else { return true };
        let [t1, t2, t3] = &self.relation_coeffs;
        let rel = [t1.clone(), t3.clone(), t3.clone(), t2.clone()];
        let in_ideal = |q: &[Scalar; 4]| {
            let k = rel.iter().position(|x| !x.is_zero()).expect("nonzero relation");
            let c = &q[k] / &rel[k];
            q.iter().zip(&rel).all(|(a, b)| a == &(&c * b))
        };
        let by_name: HashMap<&str, &PatternRow> = rows.iter().map(|r| (r.name.as_str(), r)).collect();
        for row in rows {
            let mut acc: BTreeMap<&str, [Scalar; 4]> = BTreeMap::new();
            for (target, a) in &row.terms {
                let Some(prev) = by_name.get(target.as_str()) else { continue };
                for (t2name, b) in &prev.terms {
                    let e = acc.entry(t2name.as_str()).or_insert_with(|| std::array::from_fn(|_| Scalar::zero()));
                    // (a0 y1 + a1 y2)(b0 y1 + b1 y2) in the basis y1y1, y1y2, y2y1, y2y2
                    e[0] += &a[0] * &b[0];
                    e[1] += &a[0] * &b[1];
                    e[2] += &a[1] * &b[0];
                    e[3] += &a[1] * &b[1];
                }
            }
            if !acc.values().all(in_ideal) {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum BuildOutcome {
    Finite(SemifreeResolution),
    Infinite(InfinitePattern),
}

fn lin(v: &[Scalar]) -> SkewElement {
    SkewElement::linear(v)
}

fn scaled(e: &SkewElement, c: i64) -> SkewElement {
    e.scale(&Scalar::from_int(c))
}

fn zero3() -> SkewElement {
    SkewElement::zero(3)
}

fn x(i: usize) -> SkewElement {
    SkewElement::var(3, i)
}

/// Representatives M1, ..., M6 of the rank-one equality cases, up to isomorphism.
pub fn six_representatives() -> [Mat; 6] {
    [
        Mat::from_ints(&[[0, 1, 1], [0, 0, 0], [0, 0, 0]]),
        Mat::from_ints(&[[0, 1, 0], [0, 0, 0], [0, 0, 0]]),
        Mat::from_ints(&[[1, 1, 1], [1, 1, 1], [0, 0, 0]]),
        Mat::from_ints(&[[0, 1, 0], [0, 0, 0], [0, 1, 0]]),
        Mat::from_ints(&[[1, 1, 0], [1, 1, 0], [0, 0, 0]]),
        Mat::from_ints(&[[1, 1, 0], [0, 0, 0], [1, 1, 0]]),
    ]
}

/// The differentials D_1, ..., D_6 over the representatives, rows e_1, e_2, ... (zero-based index).
pub fn six_differential(i: usize) -> Result<SemifreeResolution> {
    let (x1, x2, x3) = (x(0), x(1), x(2));
    let z = zero3;
    let x1m2 = &x1 - &x2;
    let x1m3 = &x1 - &x3;
    let rows: Vec<Vec<SkewElement>> = match i {
        0 => vec![
            vec![x2.clone()],
            vec![x3.clone()],
            vec![z(), x3.clone(), x2.clone()],
            vec![x1.clone(), x2.clone(), x3.clone()],
            vec![z(), z(), x1.clone(), x2.clone(), x3.clone()],
            vec![z(), x1.clone(), z(), x3.clone(), x2.clone()],
            vec![z(), z(), z(), x1.clone(), z(), x2.clone(), x3.clone()],
        ],
        1 => vec![vec![x2.clone()], vec![x3.clone()], vec![x1.clone(), x2.clone()], vec![z(), x1.clone(), z(), x2.clone()]],
        2 => vec![vec![x1m2.clone()], vec![x3.clone()], vec![x1.clone(), x1m2, x3]],
        3 => vec![vec![x2.clone()], vec![x1m3], vec![x1.clone(), x2.clone()], vec![z(), x1, z(), x2]],
        4 => vec![vec![x3.clone()], vec![x1m2.clone()], vec![z(), x1m2, x3]],
        5 => vec![vec![x2.clone()], vec![x1m3.clone()], vec![z(), x1m3, x2]],
        _ => return Err(Error::Input(format!("there are six representatives, asked for number {}", i + 1))),
    };
    Ok(SemifreeResolution::from_rows(&six_representatives()[i], &rows))
}

/// D_i completed to a resolution: the displayed differentials for M_2, ..., M_5 leave degree-1
/// cohomology behind, which further generators kill. D_1 and D_6 come back unchanged.
pub fn six_resolution(i: usize) -> Result<SemifreeResolution> {
    let di = six_differential(i)?;
    let spec = DgSpec::new(di.base.clone())?;
    let mut res = extend_resolution(&spec, &di, 32)?;
    res.representative = Some(i + 1);
    Ok(res)
}

fn rank2_resolution(m: &Mat) -> Result<SemifreeResolution> {
    let data = rank2_data(m)?;
    let subcase = data.subcase.ok_or_else(|| Error::Unsupported("no resolution is constructed for nondegenerate rank-two matrices".into()))?;
    let tx = lin(&data.t);
    let q = data.q.clone().expect("degenerate branch carries q");
    let sigma = lin(&q);
    let z = zero3;
    let mut rows = vec![vec![tx.clone()], vec![sigma.clone(), tx.clone()]];
    let mut named: Vec<(&str, SkewElement)> = vec![("t", tx.clone()), ("sigma", sigma.clone())];
    match subcase {
        Subcase::S11 => {}
        Subcase::S121 | Subcase::S122 | Subcase::S123 => {
            rows.push(vec![z(), sigma.clone(), tx.clone()]);
            if subcase != Subcase::S121 {
                let lambda = lin(data.u.as_ref().expect("u"));
                rows.push(vec![lambda.clone(), z(), sigma.clone(), tx.clone()]);
                named.push(("lambda", lambda.clone()));
                if subcase == Subcase::S123 {
                    let omega = lin(data.v.as_ref().expect("v"));
                    rows.push(vec![scaled(&omega, 2), lambda, z(), sigma.clone(), tx.clone()]);
                    named.push(("omega", omega));
                }
            }
        }
        Subcase::S124 => {
            let t = &data.t;
            let zero_t: Vec<usize> = (0..3).filter(|&i| t[i].is_zero()).collect();
            let a: Vec<usize> = (0..3).filter(|&i| !t[i].is_zero() && q[i].is_zero()).collect();
            let b: Vec<usize> = zero_t.iter().copied().filter(|&i| !q[i].is_zero()).collect();
            let c: Vec<usize> = zero_t.iter().copied().filter(|&i| q[i].is_zero()).collect();
            let support = (0..3).filter(|&i| !t[i].is_zero()).count();
            if support != 1 || a.len() != 1 || b.len() != 1 || c.len() != 1 {
                return Err(Error::Inconsistency(format!(
                    "subcase 1.2.4 reached with t = {t:?}, q = {q:?}, outside the only possible coordinate structure"
                )));
            }
            let (a, b, c) = (a[0], b[0], c[0]);
            let mut u = data.u.clone().expect("u");
            let shift = &u[a] / &t[a];
            for i in 0..3 {
                u[i] = &u[i] - &(&shift * &t[i]);
            }
            let mut w = vec![Scalar::zero(); 3];
            let two = Scalar::from_int(2);
            w[c] = &two * &u[b] * &u[c] / &q[b];
            w[b] = &two * &u[b] * &u[b] / &q[b];
            let lambda = lin(&u);
            let eta = lin(&w);
            rows.push(vec![z(), sigma.clone(), tx.clone()]);
            rows.push(vec![lambda.clone(), z(), sigma.clone(), tx.clone()]);
            rows.push(vec![z(), lambda.clone(), z(), sigma.clone(), tx.clone()]);
            rows.push(vec![eta.clone(), z(), lambda.clone(), z(), sigma.clone(), tx.clone()]);
            rows.push(vec![z(), eta.clone(), z(), lambda.clone(), z(), sigma.clone(), tx.clone()]);
            named.push(("lambda", lambda));
            named.push(("eta", eta));
        }
        Subcase::S131 | Subcase::S132 => {
            let tau = lin(data.r.as_ref().expect("r"));
            let tau2 = scaled(&tau, 2);
            rows.push(vec![tau2.clone(), sigma.clone(), tx.clone()]);
            named.push(("tau", tau));
            if subcase == Subcase::S132 {
                let lambda = lin(data.u.as_ref().expect("u"));
                let omega = lin(data.v.as_ref().expect("v"));
                rows.push(vec![lambda.clone(), tau2.clone(), sigma.clone(), tx.clone()]);
                rows.push(vec![scaled(&omega, 2), lambda.clone(), tau2, sigma, tx]);
                named.push(("lambda", lambda));
                named.push(("omega", omega));
            }
        }
    }
    let mut res = SemifreeResolution::from_rows(m, &rows);
    for (k, v) in named {
        res = res.name(k, &v);
    }
    Ok(res)
}

/// y1, y2 in the original coordinates and the correction w with d(w) equal to the relation.
fn impcri_parts(m: &Mat, p: &Rank1Params) -> Result<(SkewElement, SkewElement, [Scalar; 3], SkewElement)> {
    let (y1, y2) = p.y_normalized();
    let (y1, y2) = (p.to_original(&y1), p.to_original(&y2));
    let t = p.relation().expect("cases 4 to 6");
    let rel = &(&y1.mul(&y1).scale(&t[0]) + &y2.mul(&y2).scale(&t[1])) + &(&y1.mul(&y2) + &y2.mul(&y1)).scale(&t[2]);
    let sq = rel.square_coeffs();
    if SkewElement::squares(&sq) != rel {
        return Err(Error::Inconsistency(format!("relation {rel} has cross terms")));
    }
    let w = solve_linear(&m.transpose(), &sq)?
        .particular
        .ok_or_else(|| Error::Inconsistency(format!("relation {rel} is not a coboundary")))?;
    Ok((y1, y2, t, lin(&w)))
}

fn equality_resolution(m: &Mat) -> Result<SemifreeResolution> {
    let mut closure: Option<usize> = None;
    for (i, rep) in six_representatives().iter().enumerate() {
        let iso = iso_solve(m, rep)?;
        match iso.status {
            IsoStatus::Witness { matrix } => {
                let di = six_resolution(i)?;
                // chi(M, C) = M_i: the elements x_(perm^-1 l) / d_(perm^-1 l) of A(M) satisfy the
                // relations of x_l in A(M_i).
                let perm = matrix.perm();
                let mut inv_perm = vec![0; 3];
                for (i, &p) in perm.iter().enumerate() {
                    inv_perm[p] = i;
                }
                let scales: Vec<Scalar> = inv_perm.iter().map(|&k| matrix.scales()[k].inv().expect("nonzero")).collect();
                let d = di.d.iter().map(|row| row.iter().map(|e| e.substitute(&inv_perm, &scales)).collect()).collect();
                return Ok(SemifreeResolution {
                    base: m.clone(),
                    d,
                    label: None,
                    named: BTreeMap::new(),
                    iso_over_closure: false,
                    representative: Some(i + 1),
                });
            }
            IsoStatus::ClosureOnly { .. } if closure.is_none() => closure = Some(i),
            _ => {}
        }
    }
    match closure {
        Some(i) => {
            let mut res = six_resolution(i)?;
            res.iso_over_closure = true;
            Ok(res)
        }
        None => Err(Error::Inconsistency(format!("rank-one equality-case matrix {m:?} is isomorphic to none of the six representatives"))),
    }
}

pub fn build_resolution(m: &Mat) -> Result<BuildOutcome> {
    build_resolution_with(m, DEFAULT_TRUNCATION)
}

/// As `build_resolution`, keeping `truncation` rows of an infinite pattern.
pub fn build_resolution_with(m: &Mat, truncation: usize) -> Result<BuildOutcome> {
    let label = classify(m)?;
    let mut res = match &label.branch {
        Branch::Rank3 => SemifreeResolution::from_rows(m, &[]),
        Branch::Rank2Degenerate { .. } => rank2_resolution(m)?,
        Branch::Rank2Nondeg { .. } => {
            return Err(Error::Unsupported("no resolution is constructed for nondegenerate rank-two matrices".into()))
        }
        Branch::Rank0 => return Err(Error::Unsupported("no resolution is constructed for the zero matrix".into())),
        Branch::Rank1(p) if p.case <= 6 => {
            let (y1, y2, t, w) = impcri_parts(m, p)?;
            if !theorem_c(m)?.homologically_smooth {
                return Ok(BuildOutcome::Infinite(InfinitePattern::new(t, y1, y2, truncation)));
            }
            let g1 = &y1.scale(&t[0]) + &y2.scale(&t[2]);
            let g2 = &y1.scale(&t[2]) + &y2.scale(&t[1]);
            let rows = vec![vec![y1.clone()], vec![y2.clone()], vec![w.clone(), g1, g2]];
            SemifreeResolution::from_rows(m, &rows).name("y1", &y1).name("y2", &y2).name("w", &w)
        }
        Branch::Rank1(_) => equality_resolution(m)?,
    };
    res.label = Some(label);
    Ok(BuildOutcome::Finite(res))
}

/// A failed check with the place where it fails. Entry indices are zero-based (row j, column l).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Falsification {
    pub check: String,
    pub degree: Option<u32>,
    pub entry: Option<(usize, usize)>,
    pub detail: String,
}

impl fmt::Display for Falsification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.check)?;
        if let Some((j, l)) = self.entry {
            write!(f, " at entry ({j}, {l})")?;
        }
        if let Some(d) = self.degree {
            write!(f, " in degree {d}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub minimal: bool,
    pub triangular: bool,
    pub square_zero: bool,
    /// dim H^i(F) for i = 0..dmax-1.
    pub cohomology: Vec<usize>,
    pub exact: bool,
    pub failures: Vec<Falsification>,
}

impl VerificationRecord {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Matrix of d_F : F^deg -> F^(deg+1) in the bases (monomial, e_j), monomial-major.
fn total_differential(spec: &DgSpec, res: &SemifreeResolution, deg: u32) -> Result<Mat> {
    let n = spec.n();
    let m = res.size();
    let src = graded_basis(n, deg);
    let tgt = graded_basis(n, deg + 1);
    let index: HashMap<_, _> = tgt.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    let mut out = Mat::zeros(tgt.len() * m, src.len() * m);
    let sign = if deg % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    for (a_idx, mono) in src.iter().enumerate() {
        let a = SkewElement::monomial(mono.clone(), Scalar::one());
        let da = differential(spec, &a)?;
        for j in 0..m {
            let col = a_idx * m + j;
            for (mm, c) in da.terms() {
                out[(index[mm] * m + j, col)] += c;
            }
            for l in 0..j {
                let e = &res.d[j][l];
                if e.is_zero() {
                    continue;
                }
                let prod = a.mul(e);
                for (mm, c) in prod.terms() {
                    out[(index[mm] * m + l, col)] += &sign * c;
                }
            }
        }
    }
    Ok(out)
}

pub fn verify_resolution(spec: &DgSpec, res: &SemifreeResolution, dmax: u32) -> Result<VerificationRecord> {
    if spec.matrix() != &res.base {
        return Err(Error::Input("resolution was built over a different matrix".into()));
    }
    if dmax < 1 {
        return Err(Error::Input("verification needs a maximum degree of at least 1".into()));
    }
    let m = res.size();
    if res.d.iter().any(|r| r.len() != m) {
        return Err(Error::Input("resolution differential is not square".into()));
    }
    let mut failures = Vec::new();
    let (mut minimal, mut triangular, mut square_zero) = (true, true, true);
    for j in 0..m {
        for l in 0..m {
            let e = &res.d[j][l];
            if e.is_zero() {
                continue;
            }
            if l >= j {
                triangular = false;
                failures.push(Falsification { check: "triangularity".into(), degree: None, entry: Some((j, l)), detail: format!("nonzero entry {e} on or above the diagonal") });
            }
            if e.degree() != Some(1) || e.homogeneous_component(1) != *e {
                minimal = false;
                failures.push(Falsification { check: "minimality".into(), degree: None, entry: Some((j, l)), detail: format!("entry {e} is not homogeneous of degree 1") });
            }
        }
    }
    for j in 0..m {
        for l in 0..m {
            let lhs = differential(spec, &res.d[j][l])?;
            let mut rhs = SkewElement::zero(spec.n());
            for k in 0..m {
                rhs = &rhs + &res.d[j][k].mul(&res.d[k][l]);
            }
            if lhs != rhs {
                square_zero = false;
                failures.push(Falsification {
                    check: "square-zero".into(),
                    degree: Some(2),
                    entry: Some((j, l)),
                    detail: format!("d({}) = {lhs} but the product term is {rhs}", res.d[j][l]),
                });
            }
        }
    }
    let mut ranks = Vec::new();
    let mut dims = Vec::new();
    if !square_zero {
        return Ok(VerificationRecord { minimal, triangular, square_zero, cohomology: Vec::new(), exact: false, failures });
    }
    for deg in 0..dmax {
        let mat = total_differential(spec, res, deg)?;
        dims.push(mat.cols());
        ranks.push(mat.rank());
    }
    let mut cohomology = Vec::new();
    for i in 0..dmax as usize {
        let before = if i == 0 { 0 } else { ranks[i - 1] };
        cohomology.push(dims[i] - ranks[i] - before);
    }
    let mut exact = true;
    for (i, &h) in cohomology.iter().enumerate() {
        let want = usize::from(i == 0);
        if h != want {
            exact = false;
            failures.push(Falsification {
                check: "exactness".into(),
                degree: Some(i as u32),
                entry: None,
                detail: format!("dim H^{i}(F) = {h}, expected {want}"),
            });
        }
    }
    Ok(VerificationRecord { minimal, triangular, square_zero, cohomology, exact, failures })
}

/// Extends a semi-free resolution by degree-0 generators, each killing one class of H^1(F),
/// until H^1 vanishes or `max_size` is reached. Generic route, independent of the case
/// constructions, used to cross-check them.
pub fn extend_resolution(spec: &DgSpec, start: &SemifreeResolution, max_size: usize) -> Result<SemifreeResolution> {
    let n = spec.n();
    let mut res = start.clone();
    let basis1 = graded_basis(n, 1);
    loop {
        let m = res.size();
        let d1 = total_differential(spec, &res, 1)?;
        let d0 = total_differential(spec, &res, 0)?;
        let boundaries: Vec<Column> = (0..d0.cols()).map(|c| d0.col(c)).collect();
        let mut span = boundaries.clone();
        let mut new_rows = Vec::new();
        for z in kernel(&d1) {
            if crate::exact_linalg::in_span(&span, &z) {
                continue;
            }
            span.push(z.clone());
            // coordinates are monomial-major: entry (mono, e_l) at mono * m + l
            let row: Vec<SkewElement> = (0..m)
                .map(|l| {
                    let mut e = SkewElement::zero(n);
                    for (k, mono) in basis1.iter().enumerate() {
                        e.add_term(mono.clone(), z[k * m + l].clone());
                    }
                    e
                })
                .collect();
            new_rows.push(row);
        }
        if new_rows.is_empty() {
            return Ok(res);
        }
        if m + new_rows.len() > max_size {
            return Err(Error::Unsupported(format!("resolution needs more than {max_size} generators")));
        }
        let new_m = m + new_rows.len();
        let mut d = vec![vec![SkewElement::zero(n); new_m]; new_m];
        for j in 0..m {
            for l in 0..m {
                d[j][l] = res.d[j][l].clone();
            }
        }
        for (k, row) in new_rows.into_iter().enumerate() {
            for (l, e) in row.into_iter().enumerate() {
                d[m + k][l] = e;
            }
        }
        res.d = d;
    }
}

/// The Ext-algebra as {A in M_m(k) : A d = d A}, with entries of d compared coefficientwise.
pub fn ext_algebra(res: &SemifreeResolution) -> Result<FinAlg> {
    let m = res.size();
    let n = res.base.rows();
    let coords: Vec<Vec<Column>> = res.d.iter().map(|row| row.iter().map(|e| e.coords(1)).collect()).collect();
    if res.d.iter().flatten().any(|e| e.homogeneous_component(1) != *e) {
        return Err(Error::Input("ext algebra needs a minimal resolution with linear entries".into()));
    }
    let unknown = |j: usize, k: usize| j * m + k;
    let mut eqs: Vec<Vec<Scalar>> = Vec::new();
    for j in 0..m {
        for l in 0..m {
            for i in 0..n {
                let mut row = vec![Scalar::zero(); m * m];
                for k in 0..m {
                    row[unknown(j, k)] += &coords[k][l][i];
                    row[unknown(k, l)] -= &coords[j][k][i];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    let basis_vecs = if eqs.is_empty() {
        (0..m * m).map(|k| (0..m * m).map(|i| if i == k { Scalar::one() } else { Scalar::zero() }).collect()).collect()
    } else {
        kernel(&Mat::from_rows(eqs)?)
    };
    let mats: Vec<Mat> = basis_vecs
        .iter()
        .map(|v| Mat::from_rows(v.chunks(m).map(|c| c.to_vec()).collect()))
        .collect::<Result<_>>()?;
    FinAlg::from_matrix_basis(&mats)
}

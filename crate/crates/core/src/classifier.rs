//! Case taxonomy of A(M) for 3x3 matrices, predicted cohomology presentations, the smoothness
//! verdict, and the cross-checked report.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::dg_core::{cohomology, cy_probe, DgSpec, ProbeResult, ProbeVerdict};
use crate::error::{Error, Result};
use crate::exact_linalg::{kernel, solve_linear, Column, Mat};
use crate::frob_algebra::{frobenius, radical_filtration, recognize_truncated, socle_dim};
use crate::qpl_action::{chi, QplMatrix};
use crate::resolution::{build_resolution, ext_algebra, BuildOutcome};
use crate::scalar::Scalar;
use crate::skew_algebra::SkewElement;

/// Subcases of the rank-two degenerate construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Subcase {
    #[serde(rename = "1.1")]
    S11,
    #[serde(rename = "1.2.1")]
    S121,
    #[serde(rename = "1.2.2")]
    S122,
    #[serde(rename = "1.2.3")]
    S123,
    #[serde(rename = "1.2.4")]
    S124,
    #[serde(rename = "1.3.1")]
    S131,
    #[serde(rename = "1.3.2")]
    S132,
}

impl Subcase {
    pub const ALL: [Subcase; 7] =
        [Subcase::S11, Subcase::S121, Subcase::S122, Subcase::S123, Subcase::S124, Subcase::S131, Subcase::S132];

    /// Number of basis elements e_0, ..., e_(m-1) of the minimal resolution.
    pub fn resolution_size(self) -> usize {
        match self {
            Subcase::S11 => 3,
            Subcase::S121 | Subcase::S131 => 4,
            Subcase::S122 => 5,
            Subcase::S123 | Subcase::S132 => 6,
            Subcase::S124 => 8,
        }
    }
}

impl fmt::Display for Subcase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subcase::S11 => "1.1",
            Subcase::S121 => "1.2.1",
            Subcase::S122 => "1.2.2",
            Subcase::S123 => "1.2.3",
            Subcase::S124 => "1.2.4",
            Subcase::S131 => "1.3.1",
            Subcase::S132 => "1.3.2",
        };
        f.write_str(s)
    }
}

/// Rank-one data after moving the first nonzero row to the top: rows 2 and 3 are l1 and l2
/// times (m11, m12, m13).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank1Params {
    /// Zero-based index of the row swapped into first position (0 when no swap).
    pub pivot_row: usize,
    pub m11: Scalar,
    pub m12: Scalar,
    pub m13: Scalar,
    pub l1: Scalar,
    pub l2: Scalar,
    /// Which cohomology case 4..=9 applies.
    pub case: u8,
}

impl Rank1Params {
    /// m12 l1^2 + m13 l2^2.
    pub fn s_value(&self) -> Scalar {
        &self.m12 * &self.l1 * &self.l1 + &self.m13 * &self.l2 * &self.l2
    }

    /// Coefficient of y1 y2 + y2 y1 in the case 4 relation.
    pub fn mixed_coefficient(&self) -> Scalar {
        let two = Scalar::from_int(2);
        -(self.s_value() - &self.m11) / (two * &self.l1 * &self.l2)
    }

    /// (t1, t2, t3) of the quadratic relation t1 y1^2 + t2 y2^2 + t3 (y1 y2 + y2 y1), cases 4 to 6.
    pub fn relation(&self) -> Option<[Scalar; 3]> {
        match self.case {
            4 => Some([self.m12.clone(), self.m13.clone(), self.mixed_coefficient()]),
            5 => Some([Scalar::zero(), Scalar::zero(), Scalar::one()]),
            6 => Some([self.m12.clone(), self.m13.clone(), Scalar::zero()]),
            _ => None,
        }
    }

    /// The swap bringing the pivot row to the top, as a substitution on variables.
    pub fn swap_perm(&self) -> Vec<usize> {
        let mut p = vec![0, 1, 2];
        p.swap(0, self.pivot_row);
        p
    }

    /// Maps an element written in the normalized coordinates back to the original ones.
    pub fn to_original(&self, e: &SkewElement) -> SkewElement {
        e.substitute(&self.swap_perm(), &[Scalar::one(), Scalar::one(), Scalar::one()])
    }

    /// y1 = l1 x1 - x2 and y2 = l2 x1 - x3 in normalized coordinates.
    pub fn y_normalized(&self) -> (SkewElement, SkewElement) {
        let y1 = SkewElement::linear(&[self.l1.clone(), -Scalar::one(), Scalar::zero()]);
        let y2 = SkewElement::linear(&[self.l2.clone(), Scalar::zero(), -Scalar::one()]);
        (y1, y2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Branch {
    Rank3,
    Rank2Nondeg { s: Column, t: Column },
    Rank2Degenerate { subcase: Subcase, s: Column, t: Column },
    Rank1(Rank1Params),
    Rank0,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseLabel {
    pub rank: usize,
    pub branch: Branch,
}

impl CaseLabel {
    /// Case number 1..=9 of the cohomology table; `None` for M = 0.
    pub fn cohomology_case(&self) -> Option<u8> {
        match &self.branch {
            Branch::Rank3 => Some(1),
            Branch::Rank2Nondeg { .. } => Some(2),
            Branch::Rank2Degenerate { .. } => Some(3),
            Branch::Rank1(p) => Some(p.case),
            Branch::Rank0 => None,
        }
    }

    pub fn subcase(&self) -> Option<Subcase> {
        match &self.branch {
            Branch::Rank2Degenerate { subcase, .. } => Some(*subcase),
            _ => None,
        }
    }

    pub fn rank1(&self) -> Option<&Rank1Params> {
        match &self.branch {
            Branch::Rank1(p) => Some(p),
            _ => None,
        }
    }

    pub fn short_name(&self) -> String {
        match &self.branch {
            Branch::Rank3 => "rank 3".into(),
            Branch::Rank2Nondeg { .. } => "rank 2, nondegenerate".into(),
            Branch::Rank2Degenerate { subcase, .. } => format!("rank 2, degenerate, subcase {subcase}"),
            Branch::Rank1(p) => format!("rank 1, cohomology case {}", p.case),
            Branch::Rank0 => "zero matrix".into(),
        }
    }
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn hadamard(a: &[Scalar], b: &[Scalar]) -> Column {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

fn lin(a: &Scalar, u: &[Scalar], b: &Scalar, v: &[Scalar]) -> Column {
    u.iter().zip(v).map(|(x, y)| a * x + b * y).collect()
}

/// Scales a nonzero vector so its first nonzero entry is 1.
pub fn normalize_leading(v: &[Scalar]) -> Column {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.inv().expect("nonzero");
            v.iter().map(|x| x * &inv).collect()
        }
        None => v.to_vec(),
    }
}

/// Vectors and auxiliary solutions of the rank-two construction. Every degree-2 cocycle
/// sum w_i x_i^2 is identified with w; it is a coboundary iff s.w = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Data {
    pub s: Column,
    pub t: Column,
    pub degenerate: bool,
    pub subcase: Option<Subcase>,
    /// M^T q = t^2, normalized so qt = 0 on the 1.2.x branch.
    pub q: Option<Column>,
    /// M^T r = qt on the 1.3.x branch.
    pub r: Option<Column>,
    /// M^T u = q^2 (1.2.x) or 4rt + q^2 (1.3.2).
    pub u: Option<Column>,
    /// M^T v = ut (1.2.x) or ut + 2rq (1.3.2).
    pub v: Option<Column>,
}

impl Rank2Data {
    pub fn is_coboundary(&self, w: &[Scalar]) -> bool {
        dot(&self.s, w).is_zero()
    }
}

fn particular(mt: &Mat, rhs: &[Scalar], what: &str) -> Result<Column> {
    solve_linear(mt, rhs)?
        .particular
        .ok_or_else(|| Error::Inconsistency(format!("{what} is not a coboundary although the construction requires it")))
}

/// The rank-two data for a rank-two matrix.
pub fn rank2_data(m: &Mat) -> Result<Rank2Data> {
    if m.rows() != 3 || m.cols() != 3 || m.rank() != 2 {
        return Err(Error::Input("rank-two data needs a 3x3 matrix of rank 2".into()));
    }
    let mt = m.transpose();
    let s = normalize_leading(&kernel(m)[0]);
    let t = normalize_leading(&kernel(&mt)[0]);
    let t2 = hadamard(&t, &t);
    if !dot(&s, &t2).is_zero() {
        return Ok(Rank2Data { s, t, degenerate: false, subcase: None, q: None, r: None, u: None, v: None });
    }
    let q = particular(&mt, &t2, "t^2")?;
    rank2_from_q(m, s, t, q)
}

/// Runs the subcase decision from a given solution q of M^T q = t^2.
pub fn rank2_from_q(m: &Mat, s: Column, t: Column, q: Column) -> Result<Rank2Data> {
    let mt = m.transpose();
    let b2 = |w: &[Scalar]| dot(&s, w).is_zero();
    let t2 = hadamard(&t, &t);
    if mt.mul_vec(&q)? != t2 {
        return Err(Error::Input("q does not solve M^T q = t^2".into()));
    }
    let mut data =
        Rank2Data { s: s.clone(), t: t.clone(), degenerate: true, subcase: None, q: None, r: None, u: None, v: None };
    let qt = hadamard(&q, &t);
    if !b2(&qt) {
        data.q = Some(q);
        data.subcase = Some(Subcase::S11);
        return Ok(data);
    }
    let lead = t.iter().position(|x| !x.is_zero()).expect("t nonzero");
    let c = &qt[lead] / &t2[lead];
    let in_span = qt.iter().zip(&t2).all(|(a, b)| a == &(&c * b));
    let two = Scalar::from_int(2);
    let four = Scalar::from_int(4);
    if in_span {
        let q: Column = q.iter().zip(&t).map(|(a, b)| a - &(&c * b)).collect();
        let q2 = hadamard(&q, &q);
        data.q = Some(q.clone());
        if !b2(&q2) {
            data.subcase = Some(Subcase::S121);
            return Ok(data);
        }
        let u = particular(&mt, &q2, "q^2")?;
        let ut = hadamard(&u, &t);
        data.u = Some(u.clone());
        if !b2(&ut) {
            data.subcase = Some(Subcase::S122);
            return Ok(data);
        }
        let v = particular(&mt, &ut, "ut")?;
        let c5 = lin(&four, &hadamard(&v, &t), &two, &hadamard(&q, &u));
        data.v = Some(v);
        data.subcase = Some(if b2(&c5) { Subcase::S124 } else { Subcase::S123 });
        return Ok(data);
    }
    let r = particular(&mt, &qt, "qt")?;
    let c3 = lin(&four, &hadamard(&r, &t), &Scalar::one(), &hadamard(&q, &q));
    data.q = Some(q.clone());
    data.r = Some(r.clone());
    if !b2(&c3) {
        data.subcase = Some(Subcase::S131);
        return Ok(data);
    }
    let u = particular(&mt, &c3, "4rt + q^2")?;
    let rhs = lin(&Scalar::one(), &hadamard(&u, &t), &two, &hadamard(&r, &q));
    let v = particular(&mt, &rhs, "ut + 2rq")?;
    data.u = Some(u);
    data.v = Some(v);
    data.subcase = Some(Subcase::S132);
    Ok(data)
}

pub fn rank1_params(m: &Mat) -> Result<Rank1Params> {
    if m.rows() != 3 || m.cols() != 3 || m.rank() != 1 {
        return Err(Error::Input("rank-one parameters need a 3x3 matrix of rank 1".into()));
    }
    let p = (0..3).find(|&i| m.row(i).iter().any(|x| !x.is_zero())).expect("rank 1");
    let mut perm = vec![0, 1, 2];
    perm.swap(0, p);
    let mm = chi(m, &QplMatrix::permutation(perm)?)?;
    let j = (0..3).find(|&j| !mm[(0, j)].is_zero()).expect("nonzero first row");
    let l1 = &mm[(1, j)] / &mm[(0, j)];
    let l2 = &mm[(2, j)] / &mm[(0, j)];
    let mut params = Rank1Params {
        pivot_row: p,
        m11: mm[(0, 0)].clone(),
        m12: mm[(0, 1)].clone(),
        m13: mm[(0, 2)].clone(),
        l1,
        l2,
        case: 0,
    };
    let equal = params.s_value() == params.m11;
    let (z1, z2) = (params.l1.is_zero(), params.l2.is_zero());
    params.case = match (equal, z1, z2) {
        (false, false, false) => 4,
        (false, _, _) => 5,
        (true, false, false) => 6,
        (true, false, true) => 7,
        (true, true, false) => 8,
        (true, true, true) => 9,
    };
    Ok(params)
}

pub fn classify(m: &Mat) -> Result<CaseLabel> {
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::Unsupported(format!("classification is defined for 3x3 matrices, got {}x{}", m.rows(), m.cols())));
    }
    let rank = m.rank();
    let branch = match rank {
        3 => Branch::Rank3,
        2 => {
            let d = rank2_data(m)?;
            match d.subcase {
                None => Branch::Rank2Nondeg { s: d.s, t: d.t },
                Some(subcase) => Branch::Rank2Degenerate { subcase, s: d.s, t: d.t },
            }
        }
        1 => Branch::Rank1(rank1_params(m)?),
        _ => Branch::Rank0,
    };
    Ok(CaseLabel { rank, branch })
}

/// Generator of a graded algebra presentation, with a cocycle representing it when known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub representative: Option<SkewElement>,
}

/// A homogeneous relation: coefficient times a word in generator indices.
pub type Relation = Vec<(Scalar, Vec<usize>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl GradedPresentation {
    pub fn free(generators: Vec<Generator>) -> Self {
        GradedPresentation { generators, relations: Vec::new() }
    }

    fn gen(name: String, degree: u32, rep: Option<SkewElement>) -> Generator {
        Generator { name, degree, representative: rep }
    }

    fn from_cocycles(cocycles: Vec<(SkewElement, u32)>) -> Self {
        GradedPresentation::free(
            cocycles.into_iter().map(|(e, d)| GradedPresentation::gen(format!("[{e}]"), d, Some(e))).collect(),
        )
    }

    fn relate(mut self, rel: Relation) -> Self {
        let rel: Relation = rel.into_iter().filter(|(c, _)| !c.is_zero()).collect();
        if !rel.is_empty() {
            self.relations.push(rel);
        }
        self
    }

    fn commutator(self, a: usize, b: usize) -> Self {
        self.relate(vec![(Scalar::one(), vec![a, b]), (-Scalar::one(), vec![b, a])])
    }

    fn anticommutator(self, a: usize, b: usize) -> Self {
        self.relate(vec![(Scalar::one(), vec![a, b]), (Scalar::one(), vec![b, a])])
    }

    /// t1 a^2 + t2 b^2 + t3 (ab + ba).
    fn quadratic(self, a: usize, b: usize, t: &[Scalar; 3]) -> Self {
        self.relate(vec![
            (t[0].clone(), vec![a, a]),
            (t[1].clone(), vec![b, b]),
            (t[2].clone(), vec![a, b]),
            (t[2].clone(), vec![b, a]),
        ])
    }

    pub fn relation_text(&self, rel: &Relation) -> String {
        let mut out = String::new();
        for (i, (c, w)) in rel.iter().enumerate() {
            let word: Vec<&str> = w.iter().map(|&g| self.generators[g].name.as_str()).collect();
            let word = word.join("");
            let (neg, abs) = (c.is_negative(), c.abs());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&format!("{abs}*"));
            }
            out.push_str(&word);
        }
        out
    }
}

impl fmt::Display for GradedPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("k");
        }
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{} (deg {})", g.name, g.degree)).collect();
        write!(f, "k<{}>", gens.join(", "))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.relation_text(r)).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}

/// The predicted presentation of H(A(M)) for a classified 3x3 matrix.
pub fn presentation_of(label: &CaseLabel) -> GradedPresentation {
    let n = 3;
    match &label.branch {
        Branch::Rank3 => GradedPresentation::free(Vec::new()),
        Branch::Rank2Nondeg { t, .. } => GradedPresentation::from_cocycles(vec![(SkewElement::linear(t), 1)]),
        Branch::Rank2Degenerate { s, t, .. } => {
            GradedPresentation::from_cocycles(vec![(SkewElement::linear(t), 1), (SkewElement::squares(s), 2)])
                .relate(vec![(Scalar::one(), vec![0, 0])])
                .commutator(0, 1)
        }
        Branch::Rank0 => {
            let p = GradedPresentation::from_cocycles((0..n).map(|i| (SkewElement::var(n, i), 1)).collect());
            p.anticommutator(0, 1).anticommutator(0, 2).anticommutator(1, 2)
        }
        Branch::Rank1(p) => {
            let (y1, y2) = p.y_normalized();
            let x = |i: usize| SkewElement::var(n, i);
            let x1sq = x(0).mul(&x(0));
            let back = |e: SkewElement| p.to_original(&e);
            match p.case {
                4..=6 => {
                    let t = p.relation().expect("cases 4 to 6 carry a relation");
                    GradedPresentation::from_cocycles(vec![(back(y1), 1), (back(y2), 1)]).quadratic(0, 1, &t)
                }
                _ => {
                    let (a, b, t) = match p.case {
                        7 => (y1, x(2), [p.m12.clone(), p.m13.clone(), Scalar::zero()]),
                        8 => (y2, x(1), [p.m13.clone(), p.m12.clone(), Scalar::zero()]),
                        _ => (x(2), x(1), [p.m13.clone(), p.m12.clone(), Scalar::zero()]),
                    };
                    GradedPresentation::from_cocycles(vec![(back(a), 1), (back(b), 1), (back(x1sq), 2)])
                        .quadratic(0, 1, &t)
                        .commutator(2, 0)
                        .commutator(2, 1)
                        .anticommutator(0, 1)
                }
            }
        }
    }
}

/// Rows of the n = 2 table, numbered 1..=7, after an optional swap of the two variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NTwoCase {
    /// 0 for M = 0 (the whole algebra survives).
    pub row: u8,
    pub swapped: bool,
}

fn ntwo_row(m: &Mat) -> Option<u8> {
    let z = |i: usize, j: usize| m[(i, j)].is_zero();
    let det = &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)];
    if !det.is_zero() {
        return Some(1);
    }
    let nz: Vec<bool> = [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(i, j)| !z(i, j)).collect();
    match nz.as_slice() {
        [true, false, false, false] => Some(2),
        [false, true, false, false] => Some(3),
        [true, true, false, false] => Some(4),
        [true, false, true, false] => Some(5),
        [true, true, true, true] => {
            let a = &m[(0, 0)] * &m[(0, 0)];
            let b = &m[(1, 0)] * &m[(1, 1)];
            Some(if a == b { 7 } else { 6 })
        }
        _ => None,
    }
}

pub fn ntwo_case(m: &Mat) -> Result<NTwoCase> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(Error::Input("the n = 2 table needs a 2x2 matrix".into()));
    }
    if m.is_zero() {
        return Ok(NTwoCase { row: 0, swapped: false });
    }
    if let Some(row) = ntwo_row(m) {
        return Ok(NTwoCase { row, swapped: false });
    }
    let swapped = chi(m, &QplMatrix::permutation(vec![1, 0])?)?;
    ntwo_row(&swapped)
        .map(|row| NTwoCase { row, swapped: true })
        .ok_or_else(|| Error::Inconsistency(format!("matrix {m:?} matches no row of the n = 2 table, even after swapping")))
}

pub fn ntwo_presentation(m: &Mat) -> Result<GradedPresentation> {
    let case = ntwo_case(m)?;
    let n = 2;
    let mm = if case.swapped { chi(m, &QplMatrix::permutation(vec![1, 0])?)? } else { m.clone() };
    let x = |i: usize| SkewElement::var(n, i);
    let back = |e: SkewElement| {
        if case.swapped {
            e.substitute(&[1, 0], &[Scalar::one(), Scalar::one()])
        } else {
            e
        }
    };
    let z = || SkewElement::linear(&[mm[(1, 0)].clone(), -mm[(0, 0)].clone()]);
    let p = match case.row {
        0 => GradedPresentation::from_cocycles(vec![(x(0), 1), (x(1), 1)]).anticommutator(0, 1),
        1 => GradedPresentation::free(Vec::new()),
        2 | 4 => GradedPresentation::from_cocycles(vec![(back(x(1)), 1)]),
        3 => GradedPresentation::from_cocycles(vec![(back(x(0).mul(&x(0))), 2), (back(x(1)), 1)])
            .relate(vec![(Scalar::one(), vec![1, 1])])
            .commutator(0, 1),
        5 | 6 => GradedPresentation::from_cocycles(vec![(back(z()), 1)]),
        _ => GradedPresentation::from_cocycles(vec![(back(z()), 1), (back(x(1).mul(&x(1))), 2)])
            .relate(vec![(Scalar::one(), vec![0, 0])])
            .commutator(0, 1),
    };
    Ok(p)
}

type SparseVec = BTreeMap<Vec<u8>, Scalar>;

/// Row echelon basis of a subspace of a word space, keyed by leading word.
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<Vec<u8>, SparseVec>,
}

impl Echelon {
    fn insert(&mut self, mut v: SparseVec) -> bool {
        loop {
            let Some((lead, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else { return false };
            match self.pivots.get(&lead) {
                Some(p) => {
                    let f = &c / &p[&lead];
                    for (k, x) in p {
                        let nv = v.get(k).cloned().unwrap_or_else(Scalar::zero) - &f * x;
                        if nv.is_zero() {
                            v.remove(k);
                        } else {
                            v.insert(k.clone(), nv);
                        }
                    }
                }
                None => {
                    self.pivots.insert(lead, v);
                    return true;
                }
            }
        }
    }

    fn basis(&self) -> Vec<SparseVec> {
        self.pivots.values().cloned().collect()
    }
}

/// Hilbert function of a finitely presented graded algebra, computed by spanning the two-sided
/// ideal degree by degree in the free algebra.
pub fn presented_dims(pres: &GradedPresentation, dmax: u32) -> Result<Vec<usize>> {
    if dmax > 10 {
        return Err(Error::Unsupported(format!("presented dimensions are computed up to degree 10, asked for {dmax}")));
    }
    let degs: Vec<u32> = pres.generators.iter().map(|g| g.degree).collect();
    if let Some(g) = pres.generators.iter().find(|g| !(1..=2).contains(&g.degree)) {
        return Err(Error::Unsupported(format!("generator {} has degree {}, only 1 and 2 are supported", g.name, g.degree)));
    }
    let word_deg = |w: &[usize]| -> u32 { w.iter().map(|&g| degs[g]).sum() };
    let mut rel_by_deg: BTreeMap<u32, Vec<SparseVec>> = BTreeMap::new();
    for rel in &pres.relations {
        let mut v = SparseVec::new();
        let mut deg = None;
        for (c, w) in rel {
            if w.iter().any(|&g| g >= degs.len()) {
                return Err(Error::Input("relation uses an unknown generator".into()));
            }
            let d = word_deg(w);
            if deg.is_some_and(|e| e != d) {
                return Err(Error::Input(format!("relation {} is not homogeneous", pres.relation_text(rel))));
            }
            deg = Some(d);
            let key: Vec<u8> = w.iter().map(|&g| g as u8).collect();
            let nv = v.get(&key).cloned().unwrap_or_else(Scalar::zero) + c;
            if nv.is_zero() {
                v.remove(&key);
            } else {
                v.insert(key, nv);
            }
        }
        if let Some(d) = deg {
            if !v.is_empty() {
                rel_by_deg.entry(d).or_default().push(v);
            }
        }
    }

    let mut words = vec![1usize];
    let mut ideal: Vec<Vec<SparseVec>> = vec![Vec::new()];
    if let Some(r0) = rel_by_deg.get(&0) {
        if !r0.is_empty() {
            return Err(Error::Input("a relation of degree 0 kills the algebra".into()));
        }
    }
    let mut dims = vec![1usize];
    for d in 1..=dmax {
        let w: usize = degs.iter().filter(|&&g| g <= d).map(|&g| words[(d - g) as usize]).sum();
        words.push(w);
        let mut ech = Echelon::default();
        for (g, &gd) in degs.iter().enumerate() {
            if gd > d {
                continue;
            }
            for v in &ideal[(d - gd) as usize] {
                let left: SparseVec = v.iter().map(|(k, c)| (std::iter::once(g as u8).chain(k.iter().copied()).collect(), c.clone())).collect();
                let right: SparseVec = v.iter().map(|(k, c)| (k.iter().copied().chain(std::iter::once(g as u8)).collect(), c.clone())).collect();
                ech.insert(left);
                ech.insert(right);
            }
        }
        for v in rel_by_deg.get(&d).into_iter().flatten() {
            ech.insert(v.clone());
        }
        let basis = ech.basis();
        dims.push(w - basis.len());
        ideal.push(basis);
    }
    Ok(dims)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCVerdict {
    pub calabi_yau: bool,
    pub koszul: bool,
    pub homologically_smooth: bool,
    pub reason: String,
}

/// Calabi-Yau decision for n = 3: A(M) fails to be Calabi-Yau exactly for the two rank-one
/// families with l1 l2 != 0 and a degenerate quadratic relation.
pub fn theorem_c(m: &Mat) -> Result<TheoremCVerdict> {
    let label = classify(m)?;
    let verdict = |cy: bool, reason: String| TheoremCVerdict { calabi_yau: cy, koszul: true, homologically_smooth: cy, reason };
    let Some(p) = label.rank1() else {
        return Ok(verdict(true, format!("{}: always Calabi-Yau", label.short_name())));
    };
    let l1l2 = &p.l1 * &p.l2;
    if l1l2.is_zero() {
        return Ok(verdict(true, format!("rank 1, l1 l2 = 0 (case {})", p.case)));
    }
    let s = p.s_value();
    if s == p.m11 {
        let bad = (&p.m12 * &p.m13).is_zero();
        let why = if bad { "m12 m13 = 0" } else { "m12 m13 != 0" };
        return Ok(verdict(!bad, format!("rank 1, l1 l2 != 0, m12 l1^2 + m13 l2^2 = m11, {why}")));
    }
    let lhs = Scalar::from_int(4) * &p.m12 * &p.m13 * &l1l2 * &l1l2;
    let diff = &s - &p.m11;
    let bad = lhs == &diff * &diff;
    let why = if bad { "=" } else { "!=" };
    Ok(verdict(!bad, format!("rank 1, l1 l2 != 0, m12 l1^2 + m13 l2^2 != m11, 4 m12 m13 l1^2 l2^2 {why} (m12 l1^2 + m13 l2^2 - m11)^2")))
}

/// Ext-algebra data extracted from a finite resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtSummary {
    pub resolution_size: usize,
    pub dim: usize,
    pub socle_dim: Option<usize>,
    pub radical_filtration: Option<Vec<usize>>,
    pub truncated_polynomial: Option<usize>,
    pub frobenius: bool,
    pub symmetric: bool,
    /// The resolution lives over an isomorphic algebra reached only over the algebraic closure.
    pub iso_over_closure: bool,
}

pub fn ext_summary(m: &Mat) -> Result<Option<ExtSummary>> {
    match build_resolution(m) {
        Ok(BuildOutcome::Finite(res)) => {
            let e = ext_algebra(&res)?;
            let f = frobenius(&e);
            Ok(Some(ExtSummary {
                resolution_size: res.size(),
                dim: e.dim(),
                socle_dim: socle_dim(&e).ok(),
                radical_filtration: radical_filtration(&e).ok(),
                truncated_polynomial: recognize_truncated(&e),
                frobenius: f.frobenius,
                symmetric: f.symmetric,
                iso_over_closure: res.iso_over_closure,
            }))
        }
        Ok(BuildOutcome::Infinite(_)) => Ok(None),
        Err(Error::Unsupported(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Everything known about one matrix, with every independent route cross-checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub n: usize,
    pub matrix: Vec<Vec<Scalar>>,
    pub label: Option<CaseLabel>,
    pub ntwo_row: Option<NTwoCase>,
    pub presentation: String,
    pub brute_dims: Vec<usize>,
    pub presented_dims: Vec<usize>,
    pub dims_agree: bool,
    pub theorem_c: Option<TheoremCVerdict>,
    pub probe: Option<ProbeResult>,
    /// "finite", "infinite" or "unsupported".
    pub resolution: String,
    pub ext: Option<ExtSummary>,
    pub cy_routes_agree: bool,
    pub consistent: bool,
    pub inconsistencies: Vec<String>,
}

pub fn report(m: &Mat, dmax: u32) -> Result<Report> {
    let n = m.rows();
    if !m.is_square() || !(2..=3).contains(&n) {
        return Err(Error::Unsupported(format!("report covers n = 2 and n = 3, got {}x{}", m.rows(), m.cols())));
    }
    if dmax < 2 {
        return Err(Error::Input("report needs a maximum degree of at least 2".into()));
    }
    let spec = DgSpec::new(m.clone())?;
    let brute = cohomology(&spec, dmax)?.dims;
    let mut problems = Vec::new();

    let (label, ntwo, pres) = if n == 3 {
        let label = classify(m)?;
        let pres = presentation_of(&label);
        (Some(label), None, pres)
    } else {
        (None, Some(ntwo_case(m)?), ntwo_presentation(m)?)
    };
    let presented = presented_dims(&pres, dmax)?;
    let dims_agree = presented == brute;
    if !dims_agree {
        problems.push(format!("cohomology dimensions {brute:?} differ from the presentation's {presented:?}"));
    }

    let (mut tc, mut probe, mut ext, mut resolution) = (None, None, None, "unsupported".to_string());
    let mut routes = Vec::new();
    if n == 3 {
        let t = theorem_c(m)?;
        let p = cy_probe(&spec)?;
        routes.push(("closed-form", t.calabi_yau));
        routes.push(("cup-product probe", p.verdict == ProbeVerdict::CalabiYau));
        match build_resolution(m) {
            Ok(BuildOutcome::Finite(_)) => {
                resolution = "finite".into();
                let summary = ext_summary(m)?.expect("finite resolution");
                routes.push(("ext algebra", summary.frobenius && summary.symmetric));
                ext = Some(summary);
            }
            Ok(BuildOutcome::Infinite(_)) => {
                resolution = "infinite".into();
                routes.push(("resolution", false));
            }
            Err(Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
        tc = Some(t);
        probe = Some(p);
    }
    let cy_routes_agree = routes.windows(2).all(|w| w[0].1 == w[1].1);
    if !cy_routes_agree {
        let text: Vec<String> = routes.iter().map(|(k, v)| format!("{k}: {}", if *v { "CY" } else { "not CY" })).collect();
        problems.push(format!("Calabi-Yau routes disagree ({})", text.join(", ")));
    }
    Ok(Report {
        n,
        matrix: m.to_rows(),
        label,
        ntwo_row: ntwo,
        presentation: pres.to_string(),
        brute_dims: brute,
        presented_dims: presented,
        dims_agree,
        theorem_c: tc,
        probe,
        resolution,
        ext,
        cy_routes_agree,
        consistent: problems.is_empty(),
        inconsistencies: problems,
    })
}

/// Two matrices whose cohomology agrees up to dmax but whose Ext algebras differ in dimension
/// give DG algebras that are not quasi-isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub first: Report,
    pub second: Report,
    pub same_cohomology_dims: bool,
    pub ext_dims: (Option<usize>, Option<usize>),
    pub not_quasi_isomorphic: bool,
}

pub fn compare(m1: &Mat, m2: &Mat, dmax: u32) -> Result<Comparison> {
    let first = report(m1, dmax)?;
    let second = report(m2, dmax)?;
    let same = first.brute_dims == second.brute_dims;
    let e1 = first.ext.as_ref().map(|e| e.dim);
    let e2 = second.ext.as_ref().map(|e| e.dim);
    let differ = matches!((e1, e2), (Some(a), Some(b)) if a != b);
    Ok(Comparison { first, second, same_cohomology_dims: same, ext_dims: (e1, e2), not_quasi_isomorphic: differ })
}

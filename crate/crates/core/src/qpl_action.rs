//! Quasi-permutation matrices, the right action chi(M, C) = C^-1 M (c_ij^2), and the
//! isomorphism and automorphism solvers built on it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::Mat;
use crate::scalar::Scalar;

/// Invertible matrix with exactly one nonzero entry `scales[i]` per row, at column `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QplMatrix {
    perm: Vec<usize>,
    scales: Vec<Scalar>,
}

impl QplMatrix {
    pub fn new(perm: Vec<usize>, scales: Vec<Scalar>) -> Result<Self> {
        let n = perm.len();
        if scales.len() != n {
            return Err(Error::Input("permutation and scales have different lengths".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Input(format!("not a permutation: {perm:?}")));
            }
            seen[p] = true;
        }
        if scales.iter().any(Scalar::is_zero) {
            return Err(Error::Input("quasi-permutation scales must be nonzero".into()));
        }
        Ok(QplMatrix { perm, scales })
    }

    pub fn identity(n: usize) -> Self {
        QplMatrix { perm: (0..n).collect(), scales: vec![Scalar::one(); n] }
    }

    pub fn permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        QplMatrix::new(perm, vec![Scalar::one(); n])
    }

    pub fn diagonal(scales: Vec<Scalar>) -> Result<Self> {
        QplMatrix::new((0..scales.len()).collect(), scales)
    }

    pub fn from_mat(c: &Mat) -> Result<Self> {
        if !is_quasi_permutation(c) {
            return Err(Error::Input("matrix is not a quasi-permutation matrix".into()));
        }
        let n = c.rows();
        let perm: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| !c[(i, j)].is_zero()).expect("one nonzero")).collect();
        let scales = (0..n).map(|i| c[(i, perm[i])].clone()).collect();
        QplMatrix::new(perm, scales)
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scales(&self) -> &[Scalar] {
        &self.scales
    }

    pub fn to_mat(&self) -> Mat {
        let n = self.n();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, self.perm[i])] = self.scales[i].clone();
        }
        m
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &QplMatrix) -> QplMatrix {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let scales = (0..self.n()).map(|i| &self.scales[i] * &other.scales[self.perm[i]]).collect();
        QplMatrix { perm, scales }
    }

    pub fn inverse(&self) -> QplMatrix {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut scales = vec![Scalar::zero(); n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            scales[self.perm[i]] = self.scales[i].inv().expect("nonzero scale");
        }
        QplMatrix { perm, scales }
    }

    /// One-based cycle notation of the permutation part, e.g. "(1)(2 3)".
    pub fn cycle_notation(&self) -> String {
        cycle_notation(&self.perm)
    }
}

pub fn cycle_notation(perm: &[usize]) -> String {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = perm[i];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    out
}

/// Square with exactly one nonzero entry in each row and each column.
pub fn is_quasi_permutation(c: &Mat) -> bool {
    if !c.is_square() || c.rows() == 0 {
        return false;
    }
    let n = c.rows();
    let rows_ok = (0..n).all(|i| (0..n).filter(|&j| !c[(i, j)].is_zero()).count() == 1);
    let cols_ok = (0..n).all(|j| (0..n).filter(|&i| !c[(i, j)].is_zero()).count() == 1);
    rows_ok && cols_ok
}

/// chi(M, C) = C^-1 M (c_ij^2), computed entrywise: the (perm i, perm j) entry is m_ij d_j^2 / d_i.
pub fn chi(m: &Mat, c: &QplMatrix) -> Result<Mat> {
    let n = c.n();
    if m.rows() != n || m.cols() != n {
        return Err(Error::Input(format!("matrix is {}x{}, action matrix is {n}x{n}", m.rows(), m.cols())));
    }
    let mut out = Mat::zeros(n, n);
    for i in 0..n {
        let inv = c.scales[i].inv().expect("nonzero scale");
        for j in 0..n {
            if !m[(i, j)].is_zero() {
                out[(c.perm[i], c.perm[j])] = &m[(i, j)] * &c.scales[j] * &c.scales[j] * &inv;
            }
        }
    }
    Ok(out)
}

/// chi evaluated literally as a product of three dense matrices.
pub fn chi_dense(m: &Mat, c: &Mat) -> Result<Mat> {
    let inv = c.inverse().ok_or_else(|| Error::Input("action matrix is singular".into()))?;
    let sq = c.map(|x| x * x);
    inv.mul(m)?.mul(&sq)
}

/// `(prod_j d_j^monomial_j)^exponent = value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScaleRelation {
    pub monomial: Vec<i64>,
    pub exponent: u32,
    pub value: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsoStatus {
    NotIsomorphic,
    Witness { matrix: QplMatrix },
    /// Solvable over the algebraic closure but not with rational scales.
    ClosureOnly { permutation: Vec<usize>, root_requirements: Vec<ScaleRelation> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoResult {
    pub status: IsoStatus,
    /// For closure-only answers, the relations the scales must satisfy, rendered as text.
    pub certificate: Vec<String>,
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        !matches!(self.status, IsoStatus::NotIsomorphic)
    }

    pub fn witness(&self) -> Option<&QplMatrix> {
        match &self.status {
            IsoStatus::Witness { matrix } => Some(matrix),
            _ => None,
        }
    }
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Diagonalization U A V = S of an integer matrix by unimodular U, V; `v_inv` = V^-1.
struct Diagonalized {
    u: Vec<Vec<i64>>,
    v: Vec<Vec<i64>>,
    v_inv: Vec<Vec<i64>>,
    diag: Vec<i64>,
}

fn diagonalize(a: &[Vec<i64>], cols: usize) -> Diagonalized {
    let rows = a.len();
    let mut a: Vec<Vec<i64>> = a.to_vec();
    let ident = |k: usize| -> Vec<Vec<i64>> { (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect() };
    let mut u = ident(rows);
    let mut v = ident(cols);
    let mut v_inv = ident(cols);
    let mut diag = Vec::new();

    for t in 0..rows.min(cols) {
        let pick = |a: &Vec<Vec<i64>>| {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            best
        };
        let Some((pi, pj)) = pick(&a) else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        v_inv.swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    for j in 0..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= q * u[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for i in 0..rows {
                        a[i][j] -= q * a[i][t];
                    }
                    for i in 0..cols {
                        v[i][j] -= q * v[i][t];
                    }
                    for k in 0..cols {
                        v_inv[t][k] += q * v_inv[j][k];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // a smaller remainder sits in row t or column t; move it to the pivot
            let (mut bi, mut bj) = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[bi][bj].abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[bi][bj].abs() {
                    (bi, bj) = (t, j);
                }
            }
            a.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut a, t, bj);
            swap_cols(&mut v, t, bj);
            v_inv.swap(t, bj);
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        diag.push(a[t][t]);
    }
    Diagonalized { u, v, v_inv, diag }
}

fn swap_cols(m: &mut [Vec<i64>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Solution structure of a monomial system d^(rows[k]) = values[k] over the torus.
struct TorusSolution {
    /// Relations on the scales, one per nonzero diagonal entry.
    relations: Vec<ScaleRelation>,
    /// Rational values of the new coordinates f_l, if every root is rational (free ones set to 1).
    rational: Option<Vec<Scalar>>,
    v: Vec<Vec<i64>>,
    rank: usize,
}

fn solve_torus(n: usize, rows: &[Vec<i64>], values: &[Scalar]) -> Option<TorusSolution> {
    let dz = diagonalize(rows, n);
    let rank = dz.diag.len();
    let rho: Vec<Scalar> = dz
        .u
        .iter()
        .map(|urow| urow.iter().zip(values).map(|(&e, val)| val.pow(e)).product())
        .collect();
    // rows of U past the rank span the integer left kernel
    if rho[rank..].iter().any(|r| !r.is_one()) {
        return None;
    }
    let relations: Vec<ScaleRelation> = (0..rank)
        .map(|l| ScaleRelation { monomial: dz.v_inv[l].clone(), exponent: dz.diag[l] as u32, value: rho[l].clone() })
        .collect();
    let mut f = Vec::with_capacity(n);
    let mut rational = true;
    for l in 0..n {
        if l < rank {
            match rho[l].exact_root(dz.diag[l] as u32) {
                Some(r) => f.push(r),
                None => {
                    rational = false;
                    f.push(Scalar::one());
                }
            }
        } else {
            f.push(Scalar::one());
        }
    }
    Some(TorusSolution { relations, rational: rational.then_some(f), v: dz.v, rank })
}

fn scales_from(f: &[Scalar], v: &[Vec<i64>]) -> Vec<Scalar> {
    v.iter().map(|row| row.iter().zip(f).map(|(&e, x)| x.pow(e)).product()).collect()
}

/// Constraint system for a fixed permutation: d_i m2[p(i)][p(j)] = m[i][j] d_j^2.
fn constraints(m: &Mat, m2: &Mat, perm: &[usize]) -> Option<(Vec<Vec<i64>>, Vec<Scalar>)> {
    let n = perm.len();
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let a = &m[(i, j)];
            let b = &m2[(perm[i], perm[j])];
            match (a.is_zero(), b.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let mut e = vec![0i64; n];
                    e[i] += 1;
                    e[j] -= 2;
                    rows.push(e);
                    values.push(a / b);
                }
                _ => return None,
            }
        }
    }
    Some((rows, values))
}

fn render_relation(r: &ScaleRelation) -> String {
    let mono: Vec<String> = r
        .monomial
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(j, &e)| if e == 1 { format!("d{}", j + 1) } else { format!("d{}^{}", j + 1, e) })
        .collect();
    let mono = if mono.is_empty() { "1".to_string() } else { mono.join("*") };
    if r.exponent == 1 {
        format!("{mono} = {}", r.value)
    } else {
        format!("({mono})^{} = {}", r.exponent, r.value)
    }
}

/// Decides whether A(m) and A(m2) are isomorphic, searching every permutation in
/// lexicographic order and returning the first rational witness.
pub fn iso_solve(m: &Mat, m2: &Mat) -> Result<IsoResult> {
    let n = m.rows();
    if !m.is_square() || m2.rows() != n || m2.cols() != n {
        return Err(Error::Input("isomorphism test needs two square matrices of the same size".into()));
    }
    if n > 3 {
        return Err(Error::Unsupported(format!("isomorphism search is bounded to n <= 3, got n = {n}")));
    }
    let mut closure: Option<IsoResult> = None;
    for perm in permutations(n) {
        let Some((rows, values)) = constraints(m, m2, &perm) else { continue };
        let Some(sol) = solve_torus(n, &rows, &values) else { continue };
        match &sol.rational {
            Some(f) => {
                let c = QplMatrix::new(perm.clone(), scales_from(f, &sol.v))?;
                if chi(m, &c)? != *m2 {
                    return Err(Error::Inconsistency(format!("extracted witness {c:?} does not map the first matrix to the second")));
                }
                return Ok(IsoResult { status: IsoStatus::Witness { matrix: c }, certificate: Vec::new() });
            }
            None if closure.is_none() => {
                let needs: Vec<ScaleRelation> = sol.relations.iter().filter(|r| r.exponent > 1).cloned().collect();
                closure = Some(IsoResult {
                    certificate: sol.relations.iter().map(render_relation).collect(),
                    status: IsoStatus::ClosureOnly { permutation: perm.clone(), root_requirements: needs },
                });
            }
            None => {}
        }
    }
    Ok(closure.unwrap_or(IsoResult { status: IsoStatus::NotIsomorphic, certificate: Vec::new() }))
}

/// The automorphisms of A(m) lying over one permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutRecord {
    pub permutation: Vec<usize>,
    pub cycles: String,
    /// Relations with exponent 1 pin a monomial in the scales to a value.
    pub fixed: Vec<ScaleRelation>,
    /// Relations needing a root.
    pub roots: Vec<ScaleRelation>,
    /// Dimension of the family.
    pub free_parameters: usize,
    /// The relations rendered as text.
    pub description: Vec<String>,
}

pub fn aut_group(m: &Mat) -> Result<Vec<AutRecord>> {
    let n = m.rows();
    if !m.is_square() {
        return Err(Error::Input("automorphism search needs a square matrix".into()));
    }
    if n > 3 {
        return Err(Error::Unsupported(format!("automorphism search is bounded to n <= 3, got n = {n}")));
    }
    let mut out = Vec::new();
    for perm in permutations(n) {
        let Some((rows, values)) = constraints(m, m, &perm) else { continue };
        let Some(sol) = solve_torus(n, &rows, &values) else { continue };
        let (fixed, roots): (Vec<_>, Vec<_>) = sol.relations.iter().cloned().partition(|r| r.exponent == 1);
        let mut description: Vec<String> = sol.relations.iter().map(render_relation).collect();
        if sol.rank < n {
            description.push(format!("{} free parameter(s)", n - sol.rank));
        }
        out.push(AutRecord {
            cycles: cycle_notation(&perm),
            permutation: perm,
            fixed,
            roots,
            free_parameters: n - sol.rank,
            description,
        });
    }
    Ok(out)
}

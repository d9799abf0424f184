//! The DG algebra A(M): differential x_i -> sum_j m_ij x_j^2, boundary matrices and cohomology.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{kernel, rref, span_rank, Column, Mat};
use crate::scalar::Scalar;
use crate::skew_algebra::{graded_basis, SkewElement, SkewMonomial};

/// The pair (n, M). Every square M defines a DG algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DgSpec {
    n: usize,
    m: Mat,
}

impl DgSpec {
    pub fn new(m: Mat) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Input(format!("coefficient matrix must be square, got {}x{}", m.rows(), m.cols())));
        }
        if m.rows() == 0 {
            return Err(Error::Input("coefficient matrix is empty".into()));
        }
        Ok(DgSpec { n: m.rows(), m })
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        DgSpec::new(Mat::from_ints(rows))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }
}

/// The differential applied to one normal monomial.
///
/// On x1^a1..xn^an only letters with odd exponent contribute: the alternating signs of a
/// run of equal letters cancel in pairs, and the squares x_j^2 are central.
pub fn differential_monomial(spec: &DgSpec, mono: &SkewMonomial) -> SkewElement {
    let n = spec.n;
    let mut out = SkewElement::zero(n);
    let exps = mono.exponents();
    let mut before = 0u32;
    for i in 0..n {
        let a = exps[i];
        if a % 2 == 1 {
            let sign = if before % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            for j in 0..n {
                let c = &spec.m[(i, j)];
                if c.is_zero() {
                    continue;
                }
                let mut e = exps.to_vec();
                e[i] -= 1;
                e[j] += 2;
                out.add_term(SkewMonomial::new(e), c * &sign);
            }
        }
        before += a;
    }
    out
}

/// The differential, extended linearly.
pub fn differential(spec: &DgSpec, u: &SkewElement) -> Result<SkewElement> {
    if u.n() != spec.n {
        return Err(Error::Input(format!("element over n = {} given to a spec over n = {}", u.n(), spec.n)));
    }
    let mut out = SkewElement::zero(spec.n);
    for (m, c) in u.terms() {
        for (m2, c2) in differential_monomial(spec, m).terms() {
            out.add_term(m2.clone(), c * c2);
        }
    }
    Ok(out)
}

fn basis_index(n: usize, d: u32) -> HashMap<SkewMonomial, usize> {
    graded_basis(n, d).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Matrix of the differential A^d -> A^(d+1): it maps a coordinate column of A^d to one of A^(d+1).
pub fn boundary_matrix(spec: &DgSpec, d: u32) -> Mat {
    let src = graded_basis(spec.n, d);
    let tgt = basis_index(spec.n, d + 1);
    let mut mat = Mat::zeros(tgt.len(), src.len());
    for (col, m) in src.iter().enumerate() {
        for (m2, c) in differential_monomial(spec, m).terms() {
            mat[(tgt[m2], col)] = c.clone();
        }
    }
    mat
}

/// Outcome of checking d^2 = 0 on every monomial and the Leibniz rule on sampled pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialCheck {
    pub max_degree: u32,
    pub monomials_checked: usize,
    pub leibniz_pairs: usize,
    pub failures: Vec<String>,
}

impl DifferentialCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks d(d(m)) = 0 for every normal monomial of degree <= dmax, then the Leibniz rule
/// d(uv) = d(u)v + (-1)^|u| u d(v) on `pairs` random monomial pairs of total degree < dmax.
pub fn check_differential(spec: &DgSpec, dmax: u32, pairs: usize, seed: u64) -> Result<DifferentialCheck> {
    let n = spec.n;
    let mut failures = Vec::new();
    let mut count = 0;
    for d in 0..=dmax {
        for m in graded_basis(n, d) {
            count += 1;
            let once = differential_monomial(spec, &m);
            let twice = differential(spec, &once)?;
            if !twice.is_zero() {
                failures.push(format!("d^2({}) = {twice}", SkewElement::monomial(m.clone(), Scalar::one())));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    if dmax >= 1 {
        for _ in 0..pairs {
            let du = rng.gen_range(0..dmax);
            let dv = rng.gen_range(0..=(dmax - 1 - du));
            let bu = graded_basis(n, du);
            let bv = graded_basis(n, dv);
            let u = SkewElement::monomial(bu[rng.gen_range(0..bu.len())].clone(), Scalar::one());
            let v = SkewElement::monomial(bv[rng.gen_range(0..bv.len())].clone(), Scalar::one());
            let lhs = differential(spec, &u.mul(&v))?;
            let sign = if du % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            let rhs = &differential(spec, &u)?.mul(&v) + &u.mul(&differential(spec, &v)?).scale(&sign);
            if lhs != rhs {
                failures.push(format!("Leibniz fails on u = {u}, v = {v}"));
            }
            done += 1;
        }
    }
    Ok(DifferentialCheck { max_degree: dmax, monomials_checked: count, leibniz_pairs: done, failures })
}

/// Cohomology dimensions plus low-degree representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    /// dims[d] = dim H^d for 0 <= d <= dmax.
    pub dims: Vec<usize>,
    /// Degree-1 cocycles forming a basis of H^1.
    pub h1_basis: Vec<SkewElement>,
    /// Degree-2 cocycles whose classes form a basis of H^2.
    pub h2_cocycles: Vec<SkewElement>,
    /// A basis of the degree-2 coboundaries.
    pub h2_coboundaries: Vec<SkewElement>,
}

pub fn cohomology(spec: &DgSpec, dmax: u32) -> Result<CohomologyReport> {
    if dmax < 2 {
        return Err(Error::Input("cohomology needs a maximum degree of at least 2".into()));
    }
    let n = spec.n;
    let ranks: Vec<usize> = (0..=dmax).map(|d| boundary_matrix(spec, d).rank()).collect();
    let dims = (0..=dmax as usize)
        .map(|d| {
            let dim_a = graded_basis(n, d as u32).len();
            let prev = if d == 0 { 0 } else { ranks[d - 1] };
            dim_a - ranks[d] - prev
        })
        .collect();

    let h1_basis = kernel(&boundary_matrix(spec, 1)).iter().map(|v| SkewElement::from_coords(n, 1, v)).collect();

    let b1 = boundary_matrix(spec, 1);
    let r = rref(&b1);
    let cobound: Vec<Column> = r.pivot_columns.iter().map(|&c| b1.col(c)).collect();
    let z2 = kernel(&boundary_matrix(spec, 2));
    let dim2 = graded_basis(n, 2).len();
    let mut span = cobound.clone();
    let mut reps = Vec::new();
    for z in z2 {
        let before = span_rank(&span, dim2);
        span.push(z.clone());
        if span_rank(&span, dim2) > before {
            reps.push(z);
        } else {
            span.pop();
        }
    }
    Ok(CohomologyReport {
        dims,
        h1_basis,
        h2_cocycles: reps.iter().map(|v| SkewElement::from_coords(n, 2, v)).collect(),
        h2_coboundaries: cobound.iter().map(|v| SkewElement::from_coords(n, 2, v)).collect(),
    })
}

/// Kernel of the cup product H^1 x H^1 -> H^2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CupKernel {
    /// The H^1 basis the coordinates refer to.
    pub h1_basis: Vec<SkewElement>,
    /// Basis of relations, each a vector c with c[a*h + b] the coefficient of y_a y_b (reduced echelon form).
    pub relations: Vec<Column>,
    /// dim H^2 minus the dimension of the image of the cup product.
    pub new_h2_generators: usize,
}

pub fn cup_kernel(spec: &DgSpec) -> Result<CupKernel> {
    let n = spec.n;
    let rep = cohomology(spec, 2)?;
    let ys = rep.h1_basis.clone();
    let h = ys.len();
    let dim2 = graded_basis(n, 2).len();
    let products: Vec<Column> = ys.iter().flat_map(|a| ys.iter().map(move |b| a.mul(b).coords(2))).collect();
    let bound: Vec<Column> = rep.h2_coboundaries.iter().map(|e| e.coords(2)).collect();

    // kernel of [V | B], projected on the V coordinates
    let mut cols = products.clone();
    cols.extend(bound.iter().cloned());
    let relations = if cols.is_empty() {
        Vec::new()
    } else {
        let mat = Mat::from_columns(&cols, dim2)?;
        let proj: Vec<Column> = kernel(&mat).into_iter().map(|v| v[..h * h].to_vec()).collect();
        canonical_span(&proj, h * h)
    };
    let image = span_rank(&cols, dim2) - span_rank(&bound, dim2);
    Ok(CupKernel { h1_basis: ys, relations, new_h2_generators: rep.dims[2] - image })
}

/// Nonzero rows of the reduced echelon form of the span.
fn canonical_span(vectors: &[Column], len: usize) -> Vec<Column> {
    if vectors.is_empty() || len == 0 {
        return Vec::new();
    }
    let rows: Vec<Vec<Scalar>> = vectors.to_vec();
    let r = rref(&Mat::from_rows(rows).expect("equal lengths"));
    (0..r.rank).map(|i| r.reduced.row(i).to_vec()).collect()
}

/// Outcome of the cohomological Calabi-Yau probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProbeVerdict {
    CalabiYau,
    NotSmooth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeResult {
    pub verdict: ProbeVerdict,
    /// Which branch of the decision was taken.
    pub branch: String,
    /// (t1, t2, t3) of a single symmetric relation t1 y1^2 + t2 y2^2 + t3 (y1 y2 + y2 y1).
    pub relation: Option<[Scalar; 3]>,
}

/// Decides smoothness from H^1 and the cup product alone: not smooth exactly when H^1 is
/// two-dimensional with a single quadratic relation of vanishing discriminant.
pub fn cy_probe(spec: &DgSpec) -> Result<ProbeResult> {
    if spec.n != 3 {
        return Err(Error::Unsupported(format!("the probe is defined for n = 3, got n = {}", spec.n)));
    }
    let ok = |branch: &str| ProbeResult { verdict: ProbeVerdict::CalabiYau, branch: branch.into(), relation: None };
    let rank = spec.m.rank();
    if rank == 0 {
        return Ok(ok("rank-0"));
    }
    // H^1 = ker M^T; below dimension 2 there is no room for a degenerate relation.
    match spec.n - rank {
        0 => return Ok(ok("trivial-h1")),
        1 => return Ok(ok("one-generator-h1")),
        _ => {}
    }
    let ck = cup_kernel(spec)?;
    if ck.relations.len() != 1 {
        return Ok(ok("two-generators-several-relations"));
    }
    let r = &ck.relations[0];
    if r[1] != r[2] {
        return Err(Error::Inconsistency(format!(
            "single cup-product relation is not symmetric: y1y2 coefficient {} vs y2y1 coefficient {}",
            r[1], r[2]
        )));
    }
    let t = [r[0].clone(), r[3].clone(), r[1].clone()];
    let disc = &t[0] * &t[1] - &t[2] * &t[2];
    let verdict = if disc.is_zero() { ProbeVerdict::NotSmooth } else { ProbeVerdict::CalabiYau };
    let branch = if disc.is_zero() { "degenerate-quadratic-relation" } else { "nondegenerate-quadratic-relation" };
    Ok(ProbeResult { verdict, branch: branch.into(), relation: Some(t) })
}

//! Finite-dimensional algebras given by structure constants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linalg::{coordinates, kernel, span_rank, Column, Mat};
use crate::scalar::Scalar;

/// `b_i b_j = sum_k c[(i*dim + j)*dim + k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinAlg {
    dim: usize,
    unit: Column,
    structure: Vec<Scalar>,
}

#[derive(Deserialize)]
struct RawAlg {
    dim: usize,
    unit: Column,
    structure: Vec<Scalar>,
}

impl<'de> Deserialize<'de> for FinAlg {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawAlg::deserialize(deserializer)?;
        make_algebra(raw.dim, raw.unit, raw.structure).map_err(serde::de::Error::custom)
    }
}

/// Validates associativity and the unit laws on all basis elements.
pub fn make_algebra(dim: usize, unit: Column, structure: Vec<Scalar>) -> Result<FinAlg> {
    if dim == 0 {
        return Err(Error::Input("algebra dimension must be positive".into()));
    }
    if unit.len() != dim {
        return Err(Error::Input(format!("unit has {} coordinates, expected {dim}", unit.len())));
    }
    if structure.len() != dim * dim * dim {
        return Err(Error::Input(format!("expected {} structure constants, got {}", dim * dim * dim, structure.len())));
    }
    let alg = FinAlg { dim, unit, structure };
    for i in 0..dim {
        let b = alg.basis(i);
        if alg.mul(&alg.unit, &b) != b || alg.mul(&b, &alg.unit) != b {
            return Err(Error::Input(format!("unit law fails on basis element {}", i + 1)));
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            let bij = alg.basis_product(i, j);
            for k in 0..dim {
                let left = alg.mul(&bij, &alg.basis(k));
                let right = alg.mul(&alg.basis(i), &alg.basis_product(j, k));
                if left != right {
                    return Err(Error::Input(format!(
                        "associativity fails on basis triple ({}, {}, {})",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    Ok(alg)
}

impl FinAlg {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Column {
        &self.unit
    }

    pub fn structure(&self) -> &[Scalar] {
        &self.structure
    }

    pub fn basis(&self, i: usize) -> Column {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Column {
        let off = (i * self.dim + j) * self.dim;
        self.structure[off..off + self.dim].to_vec()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Column {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                let off = (i * n + j) * n;
                for k in 0..n {
                    let s = &self.structure[off + k];
                    if !s.is_zero() {
                        out[k] += &c * s;
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Matrix of left multiplication by `x`, columns indexed by basis elements.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Column> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Mat::from_columns(&cols, self.dim).expect("square")
    }

    /// The algebra in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Mat) -> Result<FinAlg> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::Input("basis change matrix has the wrong size".into()));
        }
        let inv = p.inverse().ok_or_else(|| Error::Input("basis change matrix is singular".into()))?;
        let new: Vec<Column> = (0..n).map(|j| p.col(j)).collect();
        let mut structure = Vec::with_capacity(n * n * n);
        for a in &new {
            for b in &new {
                structure.extend(inv.mul_vec(&self.mul(a, b))?);
            }
        }
        let unit = inv.mul_vec(&self.unit)?;
        make_algebra(n, unit, structure)
    }

    /// The subalgebra of n x n matrices with the given basis, which must contain the
    /// identity in its span and be closed under products.
    pub fn from_matrix_basis(basis: &[Mat]) -> Result<FinAlg> {
        let Some(first) = basis.first() else {
            return Err(Error::Input("empty matrix basis".into()));
        };
        let size = first.rows();
        let flat = |m: &Mat| -> Column { m.to_rows().into_iter().flatten().collect() };
        let vecs: Vec<Column> = basis.iter().map(flat).collect();
        let coords_of = |m: &Mat| coordinates(&vecs, &flat(m));
        let unit = coords_of(&Mat::identity(size))
            .ok_or_else(|| Error::Inconsistency("identity is not in the span of the matrix basis".into()))?;
        let dim = basis.len();
        let mut structure = Vec::with_capacity(dim * dim * dim);
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let c = coords_of(&a.mul(b)?).ok_or_else(|| {
                    Error::Inconsistency(format!("matrix basis not closed under multiplication at ({}, {})", i + 1, j + 1))
                })?;
                structure.extend(c);
            }
        }
        make_algebra(dim, unit, structure).map_err(|e| Error::Inconsistency(e.to_string()))
    }

    /// Jacobson radical via the trace form: {x : tr(L_xy) = 0 for all y} (characteristic 0).
    pub fn radical(&self) -> Vec<Column> {
        let n = self.dim;
        let traces: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let l = self.left_mul_matrix(&self.basis_product(i, j));
                        (0..n).map(|k| l[(k, k)].clone()).sum()
                    })
                    .collect()
            })
            .collect();
        kernel(&Mat::from_rows(traces).expect("square"))
    }

    /// Local: the radical has codimension one, so A/rad = k.
    pub fn is_local(&self) -> bool {
        self.radical().len() + 1 == self.dim
    }

    /// Successive powers rad, rad^2, ... as spanning sets, stopping at zero.
    fn radical_powers(&self) -> Vec<Vec<Column>> {
        let rad = self.radical();
        let mut out = Vec::new();
        let mut cur = rad.clone();
        while span_rank(&cur, self.dim) > 0 {
            let next = reduce_span(
                cur.iter().flat_map(|a| rad.iter().map(move |b| (a, b))).map(|(a, b)| self.mul(a, b)).collect(),
                self.dim,
            );
            out.push(cur);
            if out.len() > self.dim {
                break;
            }
            cur = next;
        }
        out
    }
}

/// A basis extracted from a spanning set.
fn reduce_span(vectors: Vec<Column>, len: usize) -> Vec<Column> {
    let mut basis: Vec<Column> = Vec::new();
    for v in vectors {
        basis.push(v);
        if span_rank(&basis, len) < basis.len() {
            basis.pop();
        }
    }
    basis
}

/// dims of rad^i / rad^(i+1) for i = 0, 1, ..., starting with A / rad.
pub fn radical_filtration(e: &FinAlg) -> Result<Vec<usize>> {
    if !e.is_local() {
        return Err(Error::Unsupported("radical filtration is computed for local algebras only".into()));
    }
    let mut dims = vec![e.dim - span_rank(&e.radical(), e.dim)];
    let powers = e.radical_powers();
    for (i, p) in powers.iter().enumerate() {
        let here = span_rank(p, e.dim);
        let next = powers.get(i + 1).map_or(0, |q| span_rank(q, e.dim));
        dims.push(here - next);
    }
    Ok(dims)
}

/// Dimension of {x : x rad = rad x = 0} for a local algebra.
pub fn socle_dim(e: &FinAlg) -> Result<usize> {
    if !e.is_local() {
        return Err(Error::Unsupported("socle criterion needs a local algebra".into()));
    }
    let rad = e.radical();
    let n = e.dim;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in &rad {
        let left = e.left_mul_matrix(r);
        let right = Mat::from_columns(&(0..n).map(|j| e.mul(&e.basis(j), r)).collect::<Vec<_>>(), n)?;
        rows.extend(left.to_rows());
        rows.extend(right.to_rows());
    }
    if rows.is_empty() {
        return Ok(n);
    }
    Ok(kernel(&Mat::from_rows(rows)?).len())
}

/// The four-dimensional commutative algebra on 1, e1, e2, e3 with e1^2 = l e3, e1 e2 = e2 e1 = v e3,
/// e2^2 = m e3 and all other products of e's zero.
pub fn sklyanin_e(l: &Scalar, m: &Scalar, v: &Scalar) -> FinAlg {
    let n = 4;
    let mut c = vec![Scalar::zero(); n * n * n];
    let mut set = |i: usize, j: usize, k: usize, x: Scalar| c[(i * n + j) * n + k] = x;
    for i in 0..n {
        set(0, i, i, Scalar::one());
        set(i, 0, i, Scalar::one());
    }
    set(1, 1, 3, l.clone());
    set(1, 2, 3, v.clone());
    set(2, 1, 3, v.clone());
    set(2, 2, 3, m.clone());
    make_algebra(n, vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::zero()], c).expect("valid table")
}

/// k[x]/(x^m) in the basis 1, x, ..., x^(m-1).
pub fn truncated_polynomial(m: usize) -> Result<FinAlg> {
    if m == 0 {
        return Err(Error::Input("truncation length must be positive".into()));
    }
    let mut c = vec![Scalar::zero(); m * m * m];
    for i in 0..m {
        for j in 0..m {
            if i + j < m {
                c[(i * m + j) * m + i + j] = Scalar::one();
            }
        }
    }
    let mut unit = vec![Scalar::zero(); m];
    unit[0] = Scalar::one();
    make_algebra(m, unit, c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrobMethod {
    SocleCriterion,
    Certificate,
    /// The search budget ran out; this is not a proof of failure.
    NoCertificateFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusVerdict {
    pub frobenius: bool,
    pub symmetric: bool,
    pub method: FrobMethod,
    /// Functional with nonsingular Gram matrix, if one was found by search.
    pub witness: Option<Column>,
    /// Functional that also kills commutators.
    pub symmetric_witness: Option<Column>,
}

/// Gram matrix (lambda(b_i b_j)).
pub fn gram(e: &FinAlg, lambda: &[Scalar]) -> Mat {
    let n = e.dim;
    let rows = (0..n)
        .map(|i| (0..n).map(|j| e.basis_product(i, j).iter().zip(lambda).map(|(a, b)| a * b).sum()).collect())
        .collect();
    Mat::from_rows(rows).expect("square")
}

/// Re-checks a claimed witness.
pub fn verify_witness(e: &FinAlg, lambda: &[Scalar], symmetric: bool) -> bool {
    if lambda.len() != e.dim || gram(e, lambda).rank() != e.dim {
        return false;
    }
    if !symmetric {
        return true;
    }
    (0..e.dim).all(|i| {
        (0..e.dim).all(|j| {
            let d: Column = e.basis_product(i, j).iter().zip(e.basis_product(j, i)).map(|(a, b)| a - b).collect();
            d.iter().zip(lambda).map(|(a, b)| a * b).sum::<Scalar>().is_zero()
        })
    })
}

/// Randomized search for a functional with nonsingular Gram matrix, drawn from the span of `space`.
fn search(e: &FinAlg, space: &[Column], trials: usize, rng: &mut ChaCha8Rng, symmetric: bool) -> Option<Column> {
    if space.is_empty() {
        return None;
    }
    for _ in 0..trials {
        let mut lambda = vec![Scalar::zero(); e.dim];
        for v in space {
            let c = Scalar::from_int(rng.gen_range(-3..=3));
            for (l, x) in lambda.iter_mut().zip(v) {
                *l += &c * x;
            }
        }
        if verify_witness(e, &lambda, symmetric) {
            return Some(lambda);
        }
    }
    None
}

pub const DEFAULT_TRIALS: usize = 64;

/// Local commutative inputs are decided by the socle; anything else goes through the certificate search.
pub fn frobenius(e: &FinAlg) -> FrobeniusVerdict {
    frobenius_with(e, DEFAULT_TRIALS, 0)
}

pub fn frobenius_with(e: &FinAlg, trials: usize, seed: u64) -> FrobeniusVerdict {
    if e.is_commutative() && e.is_local() {
        let f = socle_dim(e).map(|s| s == 1).unwrap_or(false);
        return FrobeniusVerdict {
            frobenius: f,
            symmetric: f,
            method: FrobMethod::SocleCriterion,
            witness: None,
            symmetric_witness: None,
        };
    }
    certificate_search(e, trials, seed)
}

pub fn certificate_search(e: &FinAlg, trials: usize, seed: u64) -> FrobeniusVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = e.dim;
    let all: Vec<Column> = (0..n).map(|i| e.basis(i)).collect();
    let witness = search(e, &all, trials, &mut rng, false);
    // functionals vanishing on every commutator b_i b_j - b_j b_i
    let comm: Vec<Vec<Scalar>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| e.basis_product(i, j).iter().zip(e.basis_product(j, i)).map(|(a, b)| a - b).collect())
        .collect();
    let sym_space = kernel(&Mat::from_rows(comm).expect("rectangular"));
    let symmetric_witness = if witness.is_some() { search(e, &sym_space, trials, &mut rng, true) } else { None };
    FrobeniusVerdict {
        frobenius: witness.is_some(),
        symmetric: symmetric_witness.is_some(),
        method: if witness.is_some() { FrobMethod::Certificate } else { FrobMethod::NoCertificateFound },
        witness,
        symmetric_witness,
    }
}

/// Returns m when `e` is k[x]/(x^m).
pub fn recognize_truncated(e: &FinAlg) -> Option<usize> {
    if !e.is_commutative() || !e.is_local() {
        return None;
    }
    let powers = e.radical_powers();
    let rad = powers.first().cloned().unwrap_or_default();
    let rad2 = powers.get(1).cloned().unwrap_or_default();
    let r1 = span_rank(&rad, e.dim);
    let r2 = span_rank(&rad2, e.dim);
    if r1 == 0 {
        return (e.dim == 1).then_some(1);
    }
    if r1 - r2 != 1 {
        return None;
    }
    let g = rad.iter().find(|v| {
        let mut with = rad2.clone();
        with.push((*v).clone());
        span_rank(&with, e.dim) > r2
    })?;
    let mut p = g.clone();
    for _ in 0..e.dim.saturating_sub(2) {
        p = e.mul(&p, g);
    }
    (!p.iter().all(Scalar::is_zero)).then_some(e.dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::s;

    #[test]
    fn truncated_examples() {
        let a = truncated_polynomial(4).unwrap();
        assert_eq!(socle_dim(&a).unwrap(), 1);
        assert_eq!(radical_filtration(&a).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(recognize_truncated(&a), Some(4));
        assert_eq!(recognize_truncated(&truncated_polynomial(8).unwrap()), Some(8));
        assert!(frobenius(&a).frobenius);
    }

    #[test]
    fn rejects_non_associative() {
        let a = truncated_polynomial(3).unwrap();
        let mut c = a.structure().to_vec();
        // x * x^2 = x instead of 0
        c[(1 * 3 + 2) * 3 + 1] = s(1);
        let err = make_algebra(3, a.unit().clone(), c).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn sklyanin_examples() {
        let e = sklyanin_e(&s(0), &s(0), &s(0));
        assert_eq!(socle_dim(&e).unwrap(), 3);
        assert!(!frobenius(&e).frobenius);
        let e = sklyanin_e(&s(1), &s(1), &s(0));
        let v = frobenius(&e);
        assert!(v.frobenius && v.symmetric);
        assert_eq!(socle_dim(&sklyanin_e(&s(1), &s(1), &s(1))).unwrap(), 2);
        assert!(!frobenius(&sklyanin_e(&s(1), &s(1), &s(1))).frobenius);
        assert_eq!(recognize_truncated(&sklyanin_e(&s(1), &s(1), &s(0))), None);
    }

    #[test]
    fn certificate_agrees_with_socle() {
        let e = sklyanin_e(&s(2), &s(-1), &s(1));
        let c = certificate_search(&e, 64, 7);
        assert!(c.frobenius && c.symmetric);
        assert!(verify_witness(&e, c.witness.as_ref().unwrap(), false));
        let c = certificate_search(&sklyanin_e(&s(1), &s(1), &s(1)), 64, 7);
        assert_eq!(c.method, FrobMethod::NoCertificateFound);
    }

    #[test]
    fn non_local_and_matrices() {
        // k x k: not local, Frobenius by certificate
        let mut c = vec![s(0); 8];
        c[0] = s(1);
        c[7] = s(1);
        let kk = make_algebra(2, vec![s(1), s(1)], c).unwrap();
        assert!(!kk.is_local());
        assert!(socle_dim(&kk).is_err());
        let v = frobenius(&kk);
        assert_eq!(v.method, FrobMethod::Certificate);
        assert!(v.frobenius && v.symmetric);

        // full 2x2 matrices: symmetric Frobenius (trace form)
        let basis: Vec<Mat> = (0..2).flat_map(|i| (0..2).map(move |j| Mat::unit(2, i, j))).collect();
        let m2 = FinAlg::from_matrix_basis(&basis).unwrap();
        assert!(!m2.is_commutative());
        let v = frobenius(&m2);
        assert!(v.frobenius && v.symmetric, "{v:?}");
    }

    #[test]
    fn basis_change_and_round_trip() {
        let a = sklyanin_e(&s(1), &s(2), &s(0));
        let p = Mat::from_ints(&[[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 2, 0], [0, 0, 0, 3]]);
        let b = a.change_basis(&p).unwrap();
        assert_eq!(frobenius(&b).frobenius, frobenius(&a).frobenius);
        let text = serde_json::to_string(&a).unwrap();
        let back: FinAlg = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }
}

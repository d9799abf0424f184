//! The graded algebra k<x1..xn>/(xi xj + xj xi, i != j) with its normal-form monomial basis.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_linalg::Column;
use crate::scalar::Scalar;

/// Sign of a reordering, +1 or -1.
pub type Sign = i8;

/// Normal monomial x1^a1 ... xn^an, stored as its exponent vector.
///
/// Ordered so that x1^d comes first among monomials of equal length
/// (reverse lexicographic comparison of exponent vectors).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewMonomial {
    exps: Vec<u32>,
}

impl SkewMonomial {
    pub fn new(exps: Vec<u32>) -> Self {
        SkewMonomial { exps }
    }

    pub fn one(n: usize) -> Self {
        SkewMonomial { exps: vec![0; n] }
    }

    /// The generator x_{i+1} (zero-based index).
    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        SkewMonomial { exps }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// The letters of the normal word, one-based, in ascending order.
    pub fn letters(&self) -> Vec<usize> {
        self.exps.iter().enumerate().flat_map(|(i, &a)| std::iter::repeat(i + 1).take(a as usize)).collect()
    }
}

impl Ord for SkewMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.exps.cmp(&self.exps)
    }
}

impl PartialOrd for SkewMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SkewMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_monomial(self))
    }
}

fn render_monomial(m: &SkewMonomial) -> String {
    let parts: Vec<String> = m
        .exps
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(i, &a)| if a == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, a) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Reorders a word in the generators (letters one-based) into normal form.
pub fn normalize_word(n: usize, letters: &[usize]) -> Result<(Sign, SkewMonomial)> {
    let mut exps = vec![0u32; n];
    let mut inversions = 0u64;
    for &l in letters {
        if l == 0 || l > n {
            return Err(Error::Input(format!("letter x{l} out of range for n = {n}")));
        }
        // letters already placed that are strictly larger than l
        inversions += exps[l..].iter().map(|&a| a as u64).sum::<u64>();
        exps[l - 1] += 1;
    }
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Ok((sign, SkewMonomial { exps }))
}

/// Product of normal monomials: exponents add, sign is (-1)^(sum over i > j of a_i b_j).
pub fn mono_mul(a: &SkewMonomial, b: &SkewMonomial) -> (Sign, SkewMonomial) {
    debug_assert_eq!(a.n(), b.n());
    let mut parity = 0u32;
    let mut b_below = 0u32;
    for i in 0..a.n() {
        parity ^= (a.exps[i] & 1) & (b_below & 1);
        b_below += b.exps[i];
    }
    let exps = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
    (if parity == 0 { 1 } else { -1 }, SkewMonomial { exps })
}

/// All normal monomials of degree `d` in `n` variables, x1^d first.
pub fn graded_basis(n: usize, d: u32) -> Vec<SkewMonomial> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<SkewMonomial>) {
        if i + 1 == n {
            cur.push(left);
            out.push(SkewMonomial { exps: cur.clone() });
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(n, i + 1, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(SkewMonomial { exps: vec![] });
        }
        return out;
    }
    rec(n, 0, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Finite linear combination of normal monomials; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewElement {
    n: usize,
    terms: BTreeMap<SkewMonomial, Scalar>,
}

impl SkewElement {
    pub fn zero(n: usize) -> Self {
        SkewElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        SkewElement::monomial(SkewMonomial::one(n), Scalar::one())
    }

    pub fn monomial(m: SkewMonomial, c: Scalar) -> Self {
        let mut e = SkewElement::zero(m.n());
        e.add_term(m, c);
        e
    }

    /// The generator x_{i+1} (zero-based index).
    pub fn var(n: usize, i: usize) -> Self {
        SkewElement::monomial(SkewMonomial::var(n, i), Scalar::one())
    }

    /// sum c_i x_i.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut e = SkewElement::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            e.add_term(SkewMonomial::var(n, i), c.clone());
        }
        e
    }

    /// sum c_i x_i^2.
    pub fn squares(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut e = SkewElement::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; n];
            exps[i] = 2;
            e.add_term(SkewMonomial::new(exps), c.clone());
        }
        e
    }

    /// Element with the given coordinates in `graded_basis(n, d)`.
    pub fn from_coords(n: usize, d: u32, coords: &[Scalar]) -> Self {
        let mut e = SkewElement::zero(n);
        for (m, c) in graded_basis(n, d).into_iter().zip(coords) {
            e.add_term(m, c.clone());
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SkewMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &SkewMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(SkewMonomial::degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn homogeneous_component(&self, d: u32) -> SkewElement {
        SkewElement {
            n: self.n,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Coordinates in `graded_basis(n, d)`; terms of other degrees are ignored.
    pub fn coords(&self, d: u32) -> Column {
        graded_basis(self.n, d).iter().map(|m| self.coefficient(m)).collect()
    }

    /// Coefficients of x1..xn.
    pub fn linear_coeffs(&self) -> Column {
        (0..self.n).map(|i| self.coefficient(&SkewMonomial::var(self.n, i))).collect()
    }

    /// Coefficients of x1^2..xn^2.
    pub fn square_coeffs(&self) -> Column {
        (0..self.n)
            .map(|i| {
                let mut exps = vec![0; self.n];
                exps[i] = 2;
                self.coefficient(&SkewMonomial::new(exps))
            })
            .collect()
    }

    pub fn add_term(&mut self, m: SkewMonomial, c: Scalar) {
        assert_eq!(m.n(), self.n, "mixing elements over different numbers of variables");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> SkewElement {
        if c.is_zero() {
            return SkewElement::zero(self.n);
        }
        SkewElement { n: self.n, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Substitutes x_i -> scales[i] * x_{perm[i]} (zero-based), a graded automorphism of the
    /// skew algebra when `perm` is a permutation.
    pub fn substitute(&self, perm: &[usize], scales: &[Scalar]) -> SkewElement {
        let mut out = SkewElement::zero(self.n);
        for (m, c) in &self.terms {
            let mut word = Vec::new();
            let mut coeff = c.clone();
            for (i, &a) in m.exps.iter().enumerate() {
                for _ in 0..a {
                    word.push(perm[i] + 1);
                    coeff = &coeff * &scales[i];
                }
            }
            let (sign, mono) = normalize_word(self.n, &word).expect("permutation stays in range");
            out.add_term(mono, if sign < 0 { -coeff } else { coeff });
        }
        out
    }
}

/// Product in the skew algebra.
pub fn elt_mul(u: &SkewElement, v: &SkewElement) -> Result<SkewElement> {
    if u.n != v.n {
        return Err(Error::Input(format!("cannot multiply elements over n = {} and n = {}", u.n, v.n)));
    }
    let mut out = SkewElement::zero(u.n);
    for (a, x) in &u.terms {
        for (b, y) in &v.terms {
            let (sign, m) = mono_mul(a, b);
            let c = x * y;
            out.add_term(m, if sign < 0 { -c } else { c });
        }
    }
    Ok(out)
}

impl SkewElement {
    /// Product; panics if the two elements live over different n.
    pub fn mul(&self, other: &SkewElement) -> SkewElement {
        elt_mul(self, other).expect("mixing elements over different numbers of variables")
    }
}

impl Add<&SkewElement> for &SkewElement {
    type Output = SkewElement;
    fn add(self, rhs: &SkewElement) -> SkewElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&SkewElement> for &SkewElement {
    type Output = SkewElement;
    fn sub(self, rhs: &SkewElement) -> SkewElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &SkewElement {
    type Output = SkewElement;
    fn neg(self) -> SkewElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl fmt::Display for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = render_monomial(m);
            if mono == "1" {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SkewElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `"3/2*x1^2*x2 - x3"`-style text over `n` variables. Factors may appear in any
/// order; they are normalized with the appropriate sign.
pub fn parse_element(n: usize, text: &str) -> Result<SkewElement> {
    let bad = |msg: &str| Error::Input(format!("cannot parse {text:?}: {msg}"));
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad("empty"));
    }
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !(i > 0 && compact[..i].ends_with('^')) {
            if !cur.is_empty() {
                pieces.push((neg, std::mem::take(&mut cur)));
            } else if i > 0 {
                return Err(bad("dangling sign"));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(bad("dangling sign"));
    }
    pieces.push((neg, cur));

    let mut out = SkewElement::zero(n);
    for (neg, piece) in pieces {
        let mut coeff = Scalar::one();
        let mut word = Vec::new();
        for factor in piece.split('*') {
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (rest, 1),
                };
                let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
                if idx == 0 || idx > n {
                    return Err(bad("variable index out of range"));
                }
                word.extend(std::iter::repeat(idx).take(exp as usize));
            } else {
                coeff = coeff * Scalar::from_str(factor).map_err(|_| bad("bad coefficient"))?;
            }
        }
        let (sign, mono) = normalize_word(n, &word)?;
        if (sign < 0) != neg {
            coeff = -coeff;
        }
        out.add_term(mono, coeff);
    }
    Ok(out)
}

impl Serialize for SkewElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Element text paired with its variable count, for deserialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementText {
    pub n: usize,
    pub text: String,
}

impl<'de> Deserialize<'de> for SkewElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let t = ElementText::deserialize(deserializer)?;
        parse_element(t.n, &t.text).map_err(serde::de::Error::custom)
    }
}

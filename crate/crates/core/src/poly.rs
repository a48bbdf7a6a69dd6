//! Homogeneous polynomials in `w, x, y, z` with exact rational coefficients.
//!
//! Monomials of a fixed degree are ordered graded-lex descending with
//! `w > x > y > z`: `w^d` comes first, `z^d` last. Every dense vectorization
//! in this crate (division map columns, period matrix columns) uses this order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const NVARS: usize = 4;
pub const VAR_NAMES: [&str; NVARS] = ["w", "x", "y", "z"];

/// Exponent vector `(e_w, e_x, e_y, e_z)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(i: usize) -> Monomial {
        let mut e = [0; NVARS];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> [u32; NVARS] {
        self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(e))
    }

    /// Lowest-index variable with positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(VAR_NAMES[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `N_d = C(d+3, 3)`, the dimension of the degree-`d` slice.
pub fn slice_dim(d: u32) -> usize {
    binom(d as u64 + 3, 3) as usize
}

/// All degree-`d` monomials in graded-lex descending order.
pub fn monomial_basis(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(slice_dim(d));
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            for c in (0..=d - a - b).rev() {
                out.push(Monomial([a, b, c, d - a - b - c]));
            }
        }
    }
    out
}

/// Position of `m` in `monomial_basis(m.degree())`.
pub fn monomial_index(m: &Monomial) -> usize {
    let [a, b, c, _] = m.0;
    let d = m.degree() as u64;
    let (a, b, c) = (a as u64, b as u64, c as u64);
    // monomials with a larger w-exponent
    let mut idx = 0u64;
    for a2 in a + 1..=d {
        idx += binom(d - a2 + 2, 2);
    }
    let d1 = d - a;
    for b2 in b + 1..=d1 {
        idx += d1 - b2 + 1;
    }
    let d2 = d1 - b;
    idx += d2 - c;
    idx as usize
}

/// Homogeneous polynomial with rational coefficients, stored sparsely with
/// no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl QPoly {
    pub fn zero(degree: u32) -> QPoly {
        QPoly {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> QPoly {
        QPoly::monomial(Monomial::ONE, Rational::from(1))
    }

    pub fn monomial(m: Monomial, c: Rational) -> QPoly {
        let mut p = QPoly::zero(m.degree());
        if c != 0 {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging
    /// repeated monomials. Every monomial must have degree `degree`.
    pub fn from_terms<I>(degree: u32, terms: I) -> Result<QPoly>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = QPoly::zero(degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: m.degree(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(degree: u32, terms: &[([u32; NVARS], i64)]) -> Result<QPoly> {
        QPoly::from_terms(
            degree,
            terms.iter().map(|(e, c)| (Monomial(*e), Rational::from(*c))),
        )
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.degree(), self.degree);
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled_shifted(&mut self, c: &Rational, m: &Monomial, other: &QPoly) {
        debug_assert_eq!(other.degree + m.degree(), self.degree);
        if *c == 0 {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), Rational::from(c * oc));
        }
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        if *c == 0 {
            return QPoly::zero(self.degree);
        }
        QPoly {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (*m, Rational::from(v * c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> QPoly {
        QPoly {
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    /// Exact product.
    pub fn multiply(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero(self.degree + other.degree);
        for (m, c) in &self.terms {
            out.add_scaled_shifted(c, m, other);
        }
        out
    }

    pub fn pow(&self, k: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..k {
            acc = acc.multiply(self);
        }
        acc
    }

    /// Exact partial derivative with respect to variable `i` (0 = w, .., 3 = z).
    pub fn partial(&self, i: usize) -> Result<QPoly> {
        assert!(i < NVARS, "variable index out of range");
        if self.degree == 0 {
            return Err(Error::DegreeUnderflow);
        }
        let mut out = QPoly::zero(self.degree - 1);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut em = m.0;
            em[i] -= 1;
            out.terms.insert(Monomial(em), Rational::from(c * e));
        }
        Ok(out)
    }

    /// `‖p‖₁`, the sum of absolute values of the coefficients.
    pub fn one_norm(&self) -> Rational {
        let mut s = Rational::new();
        for c in self.terms.values() {
            s += Rational::from(c.abs_ref());
        }
        s
    }

    /// Writes `self = Σ xᵢ·aᵢ` with each monomial charged to the
    /// lowest-index variable it contains, so the four summands have disjoint
    /// monomial support.
    pub fn split_by_variable(&self) -> Result<[QPoly; NVARS]> {
        if self.degree == 0 {
            return Err(Error::DegreeUnderflow);
        }
        let mut parts: [QPoly; NVARS] = std::array::from_fn(|_| QPoly::zero(self.degree - 1));
        for (m, c) in &self.terms {
            let i = m.first_var().expect("positive degree monomial");
            let mut e = m.0;
            e[i] -= 1;
            parts[i].terms.insert(Monomial(e), c.clone());
        }
        Ok(parts)
    }

    /// Dense coefficient vector in `monomial_basis(degree)` order.
    pub fn to_dense(&self) -> Vec<Rational> {
        let mut v = vec![Rational::new(); slice_dim(self.degree)];
        for (m, c) in &self.terms {
            v[monomial_index(m)] = c.clone();
        }
        v
    }

    pub fn from_dense(degree: u32, coeffs: &[Rational]) -> Result<QPoly> {
        let basis = monomial_basis(degree);
        if coeffs.len() != basis.len() {
            return Err(Error::ShapeMismatch(format!(
                "dense vector of length {} for degree {} (expected {})",
                coeffs.len(),
                degree,
                basis.len()
            )));
        }
        QPoly::from_terms(degree, basis.into_iter().zip(coeffs.iter().cloned()))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> Integer {
        let mut l = Integer::from(1);
        for c in self.terms.values() {
            l.lcm_mut(c.denom());
        }
        l
    }

    pub fn to_records(&self) -> Vec<PolyRecord> {
        self.terms
            .iter()
            .map(|(m, c)| PolyRecord {
                e: m.0,
                c: format!("{}/{}", c.numer(), c.denom()),
            })
            .collect()
    }

    /// Parses the record list. The degree is inferred from the records; an
    /// empty list needs `expected_degree`.
    pub fn from_records(records: &[PolyRecord], expected_degree: Option<u32>) -> Result<QPoly> {
        let degree = match (records.first(), expected_degree) {
            (Some(r), _) => r.e.iter().sum(),
            (None, Some(d)) => d,
            (None, None) => {
                return Err(Error::Parse(
                    "empty polynomial with no declared degree".into(),
                ))
            }
        };
        if let Some(d) = expected_degree {
            if d != degree {
                return Err(Error::DegreeMismatch {
                    expected: d,
                    found: degree,
                });
            }
        }
        let mut p = QPoly::zero(degree);
        for (i, r) in records.iter().enumerate() {
            let m = Monomial(r.e);
            if m.degree() != degree {
                return Err(Error::Parse(format!(
                    "record {i}: exponents {:?} sum to {}, expected {degree}",
                    r.e,
                    m.degree()
                )));
            }
            let c = parse_coprime_fraction(&r.c).map_err(|e| Error::Parse(format!("record {i}: {e}")))?;
            if p.terms.contains_key(&m) {
                return Err(Error::Parse(format!("record {i}: repeated monomial {m}")));
            }
            if c != 0 {
                p.terms.insert(m, c);
            }
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_records()).expect("records serialize")
    }

    pub fn from_json(s: &str, expected_degree: Option<u32>) -> Result<QPoly> {
        let recs: Vec<PolyRecord> = serde_json::from_str(s)?;
        QPoly::from_records(&recs, expected_degree)
    }
}

/// One term in the text format: `{"e": [e_w, e_x, e_y, e_z], "c": "p/q"}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyRecord {
    pub e: [u32; NVARS],
    pub c: String,
}

/// Parses `"p/q"` (or a bare integer `"p"`) with `q > 0` and `gcd(p, q) = 1`.
pub fn parse_coprime_fraction(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (ns, ds) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = Integer::from_str_radix(ns, 10).map_err(|e| format!("bad numerator {ns:?}: {e}"))?;
    let d = Integer::from_str_radix(ds, 10).map_err(|e| format!("bad denominator {ds:?}: {e}"))?;
    if d <= 0 {
        return Err(format!("denominator must be positive in {s:?}"));
    }
    if Integer::from(n.gcd_ref(&d)) != 1 {
        return Err(format!("{s:?} is not in lowest terms"));
    }
    Ok(Rational::from((n, d)))
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        assert_eq!(self.degree, rhs.degree, "adding polynomials of different degrees");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        assert_eq!(self.degree, rhs.degree, "subtracting polynomials of different degrees");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, Rational::from(-c));
        }
        out
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.scale(&Rational::from(-1))
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        self.multiply(rhs)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = *c < 0;
            if k > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = Rational::from(c.abs_ref());
            if a != 1 || m.degree() == 0 {
                write!(f, "{a}")?;
                if m.degree() > 0 {
                    f.write_str("*")?;
                }
            }
            if m.degree() > 0 {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

//! The rank-22 lattice `H²(X, Z)` of a quartic K3 surface with its
//! intersection form and hyperplane class.

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const RANK: usize = 22;

/// Integral lattice given by a Gram matrix in a fixed basis, together with
/// the coordinates of the hyperplane class `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeData {
    gram: Vec<Vec<i64>>,
    h: Vec<i64>,
    gram_inv: Vec<Vec<i64>>,
}

/// An integral class, by its coordinates in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeClass(pub Vec<i64>);

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    gram: Vec<Vec<i64>>,
    h: Vec<i64>,
}

impl LatticeData {
    /// Validates an even unimodular lattice of rank 22 and signature (3,19)
    /// with `h·h = 4`.
    pub fn new(gram: Vec<Vec<i64>>, h: Vec<i64>) -> Result<LatticeData> {
        if gram.len() != RANK || gram.iter().any(|r| r.len() != RANK) {
            return Err(Error::ShapeMismatch(format!(
                "Gram matrix must be {RANK}x{RANK}"
            )));
        }
        if h.len() != RANK {
            return Err(Error::ShapeMismatch(format!(
                "h has {} coordinates, expected {RANK}",
                h.len()
            )));
        }
        for i in 0..RANK {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "Gram matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        if let Some(index) = (0..RANK).find(|&i| gram[i][i] % 2 != 0) {
            return Err(Error::NotEven { index });
        }
        let det = determinant(&gram);
        if det.clone().abs() != 1 {
            return Err(Error::NotUnimodular {
                det: det.to_string(),
            });
        }
        let (pos, neg, _) = signature(&gram);
        if (pos, neg) != (3, 19) {
            return Err(Error::WrongSignature { pos, neg });
        }
        let hh = pair_raw(&gram, &h, &h);
        if hh != 4 {
            return Err(Error::WrongHSquare(hh.to_i64().unwrap_or(i64::MAX)));
        }
        let gram_inv = integer_inverse(&gram);
        Ok(LatticeData { gram, h, gram_inv })
    }

    /// The standard K3 lattice `U³ ⊕ E₈(−1)²` with `h = e₁ + 2f₁` in the
    /// first hyperbolic plane.
    pub fn reference() -> LatticeData {
        let mut g = vec![vec![0i64; RANK]; RANK];
        for k in 0..3 {
            g[2 * k][2 * k + 1] = 1;
            g[2 * k + 1][2 * k] = 1;
        }
        let e8 = e8_cartan();
        for block in 0..2 {
            let off = 6 + 8 * block;
            for i in 0..8 {
                for j in 0..8 {
                    g[off + i][off + j] = -e8[i][j];
                }
            }
        }
        let mut h = vec![0i64; RANK];
        h[0] = 1;
        h[1] = 2;
        LatticeData::new(g, h).expect("reference lattice is valid")
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn h(&self) -> LatticeClass {
        LatticeClass(self.h.clone())
    }

    pub fn h_coords(&self) -> &[i64] {
        &self.h
    }

    /// The inverse Gram matrix, integral since the form is unimodular.
    pub fn gram_inverse(&self) -> &[Vec<i64>] {
        &self.gram_inv
    }

    /// `G·h`, the pairing values of `h` against the basis.
    pub fn h_pairings(&self) -> Vec<i64> {
        (0..RANK)
            .map(|i| (0..RANK).map(|j| self.gram[i][j] * self.h[j]).sum())
            .collect()
    }

    /// `γᵀ·G·δ`.
    pub fn pair(&self, a: &LatticeClass, b: &LatticeClass) -> Integer {
        assert_eq!(a.0.len(), RANK);
        assert_eq!(b.0.len(), RANK);
        pair_raw(&self.gram, &a.0, &b.0)
    }

    /// `Δ(γ) = (h·γ)² − 4γ·γ`.
    pub fn discriminant(&self, g: &LatticeClass) -> Integer {
        let hg = self.pair(&self.h(), g);
        let gg = self.pair(g, g);
        Integer::from(&hg * &hg) - gg * 4u32
    }

    /// Whether `γ` is an integer multiple `n·h` (returns `n`).
    pub fn multiple_of_h(&self, g: &LatticeClass) -> Option<i64> {
        let (i0, &h0) = self.h.iter().enumerate().find(|(_, &x)| x != 0)?;
        if g.0[i0] % h0 != 0 {
            return None;
        }
        let n = g.0[i0] / h0;
        g.0.iter()
            .zip(&self.h)
            .all(|(&x, &y)| Some(x) == y.checked_mul(n))
            .then_some(n)
    }

    /// `γ − ¼(γ·h)·h`, which pairs to zero with `h`; coordinates lie in `¼·H_Z`.
    pub fn project_off_h(&self, g: &LatticeClass) -> Vec<Rational> {
        let hg = Rational::from((self.pair(&self.h(), g), 4));
        g.0.iter()
            .zip(&self.h)
            .map(|(&x, &y)| Rational::from(x) - Rational::from(&hg * y))
            .collect()
    }

    /// Coordinates of the class whose pairing values against the basis are
    /// `p`, i.e. `G⁻¹·p`.
    pub fn coords_from_pairings(&self, p: &[i64]) -> Vec<i64> {
        (0..RANK)
            .map(|i| (0..RANK).map(|j| self.gram_inv[i][j] * p[j]).sum())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&LatticeFile {
            gram: self.gram.clone(),
            h: self.h.clone(),
        })
        .expect("lattice serializes")
    }

    pub fn from_json(s: &str) -> Result<LatticeData> {
        let f: LatticeFile = serde_json::from_str(s)?;
        LatticeData::new(f.gram, f.h)
    }
}

/// `Δ > 0` and `Δ mod 8 ∈ {0, 1, 4}`.
pub fn is_admissible_delta(delta: i64) -> bool {
    delta > 0 && matches!(delta % 8, 0 | 1 | 4)
}

fn pair_raw(g: &[Vec<i64>], a: &[i64], b: &[i64]) -> Integer {
    let mut s = Integer::new();
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let mut row = Integer::new();
        for (j, &bj) in b.iter().enumerate() {
            if bj != 0 && g[i][j] != 0 {
                row += Integer::from(g[i][j]) * bj;
            }
        }
        s += row * ai;
    }
    s
}

/// Cartan matrix of `E₈`: a chain `0–1–…–6` with node 7 attached to node 4.
fn e8_cartan() -> [[i64; 8]; 8] {
    let mut c = [[0i64; 8]; 8];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |a: usize, b: usize| {
        c[a][b] = -1;
        c[b][a] = -1;
    };
    for i in 0..6 {
        edge(i, i + 1);
    }
    edge(4, 7);
    c
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> Integer {
    let n = m.len();
    let mut a: Vec<Vec<Integer>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
        .collect();
    let mut sign = 1i32;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return Integer::new();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = Integer::from(&a[i][j] * &a[k][k]) - Integer::from(&a[i][k] * &a[k][j]);
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Characteristic polynomial `det(xI − M)`, coefficients from degree 0 up,
/// by the Faddeev–LeVerrier recursion in exact integers.
pub fn characteristic_polynomial(m: &[Vec<i64>]) -> Vec<Integer> {
    let n = m.len();
    let a: Vec<Vec<Integer>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Integer::from(x)).collect())
        .collect();
    // c[n] = 1; M_k = A·M_{k−1} + c_{n−k+1}·I; c_{n−k} = −tr(A·M_k)/k
    let mut c = vec![Integer::new(); n + 1];
    c[n] = Integer::from(1);
    let mut mk: Vec<Vec<Integer>> = vec![vec![Integer::new(); n]; n];
    for k in 1..=n {
        let mut next = vec![vec![Integer::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Integer::new();
                for l in 0..n {
                    if a[i][l] != 0 && mk[l][j] != 0 {
                        s += Integer::from(&a[i][l] * &mk[l][j]);
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &c[n - k + 1];
        }
        mk = next;
        let mut tr = Integer::new();
        for i in 0..n {
            for l in 0..n {
                if a[i][l] != 0 && mk[l][i] != 0 {
                    tr += Integer::from(&a[i][l] * &mk[l][i]);
                }
            }
        }
        c[n - k] = -(tr / k as u32);
    }
    c
}

fn sign_changes(coeffs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in coeffs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// `(positive, negative, zero)` eigenvalue counts of a symmetric integer
/// matrix. The characteristic polynomial is real-rooted, so Descartes' rule
/// of signs counts its positive and negative roots exactly.
pub fn signature(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let c = characteristic_polynomial(m);
    let zero = c.iter().take_while(|x| **x == 0).count();
    let pos = sign_changes(c.iter().map(|x| x.cmp0() as i32));
    let neg = sign_changes(c.iter().enumerate().map(|(k, x)| {
        let s = x.cmp0() as i32;
        if k % 2 == 1 {
            -s
        } else {
            s
        }
    }));
    (pos, neg, zero)
}

/// Inverse of a unimodular integer matrix.
fn integer_inverse(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Rational> = r.iter().map(|&x| Rational::from(x)).collect();
            row.extend((0..n).map(|j| Rational::from((i == j) as i64)));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| a[r][col] != 0).expect("invertible");
        a.swap(col, p);
        let inv = Rational::from(a[col][col].recip_ref());
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col] == 0 {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x -= Rational::from(&f * y);
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|q| {
                    assert_eq!(*q.denom(), 1, "unimodular inverse is integral");
                    q.numer().to_i64().expect("inverse entry fits in i64")
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(v: &[(usize, i64)]) -> LatticeClass {
        let mut c = vec![0i64; RANK];
        for &(i, x) in v {
            c[i] = x;
        }
        LatticeClass(c)
    }

    #[test]
    fn reference_lattice_invariants() {
        let l = LatticeData::reference();
        assert_eq!(l.pair(&l.h(), &l.h()), 4);
        assert_eq!(signature(l.gram()), (3, 19, 0));
        assert_eq!(determinant(l.gram()).abs(), 1);
        // G·G⁻¹ = I
        for i in 0..RANK {
            for j in 0..RANK {
                let s: i64 = (0..RANK).map(|k| l.gram()[i][k] * l.gram_inverse()[k][j]).sum();
                assert_eq!(s, (i == j) as i64);
            }
        }
        let json = l.to_json();
        assert_eq!(LatticeData::from_json(&json).unwrap(), l);
    }

    #[test]
    fn e8_is_unimodular() {
        let e8: Vec<Vec<i64>> = e8_cartan().iter().map(|r| r.to_vec()).collect();
        assert_eq!(determinant(&e8), 1);
        assert_eq!(signature(&e8), (8, 0, 0));
    }

    #[test]
    fn discriminant_examples() {
        let l = LatticeData::reference();
        assert_eq!(l.discriminant(&l.h()), 0);
        // f1 pairs to 1 with h and has square 0; shift by a root of square −2
        let g = class(&[(1, 1), (6, 1)]);
        assert_eq!(l.pair(&l.h(), &g), 1);
        assert_eq!(l.pair(&g, &g), -2);
        assert_eq!(l.discriminant(&g), 9);
        // 2e1 + e2 + f2: h·γ = 4, γ·γ = 2
        let g = class(&[(0, 2), (2, 1), (3, 1)]);
        assert_eq!(l.pair(&l.h(), &g), 4);
        assert_eq!(l.pair(&g, &g), 2);
        assert_eq!(l.discriminant(&g), 8);
    }

    #[test]
    fn admissible_deltas() {
        assert!(is_admissible_delta(9));
        assert!(!is_admissible_delta(3));
        assert!(!is_admissible_delta(0));
        assert!(is_admissible_delta(4) && is_admissible_delta(8));
        assert!(!is_admissible_delta(-7));
    }

    #[test]
    fn validation_errors() {
        let l = LatticeData::reference();
        let mut g = l.gram().to_vec();
        g[0][0] = 1;
        assert!(matches!(LatticeData::new(g, l.h_coords().to_vec()), Err(Error::NotEven { index: 0 })));
        let mut g = l.gram().to_vec();
        g[0][1] = 2;
        g[1][0] = 2;
        assert!(matches!(LatticeData::new(g, l.h_coords().to_vec()), Err(Error::NotUnimodular { .. })));
        let mut g = l.gram().to_vec();
        for i in 6..14 {
            for j in 6..14 {
                g[i][j] = -g[i][j];
            }
        }
        assert!(matches!(
            LatticeData::new(g, l.h_coords().to_vec()),
            Err(Error::WrongSignature { pos: 11, neg: 11 })
        ));
        let mut h = vec![0; RANK];
        h[0] = 1;
        h[1] = 1;
        assert!(matches!(LatticeData::new(l.gram().to_vec(), h), Err(Error::WrongHSquare(2))));
        assert!(matches!(
            LatticeData::new(l.gram().to_vec(), vec![0; 21]),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn projection_kills_h_pairing() {
        let l = LatticeData::reference();
        let g = class(&[(1, 3), (7, -2), (20, 5)]);
        let p = l.project_off_h(&g);
        let hp = l.h_pairings();
        let s: Rational = p.iter().zip(&hp).map(|(x, &y)| Rational::from(x * y)).sum();
        assert_eq!(s, 0);
        assert!(p.iter().all(|x| Rational::from(x * 4u32).denom() == &1));
        assert_eq!(l.multiple_of_h(&LatticeClass(l.h_coords().iter().map(|x| x * -3).collect())), Some(-3));
        assert_eq!(l.multiple_of_h(&g), None);
    }

    fn small_class() -> impl Strategy<Value = LatticeClass> {
        proptest::collection::vec(-6i64..=6, RANK).prop_map(LatticeClass)
    }

    proptest! {
        #[test]
        fn pairing_is_bilinear_symmetric_even(a in small_class(), b in small_class(), c in small_class()) {
            let l = LatticeData::reference();
            let ab = LatticeClass(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
            prop_assert_eq!(l.pair(&ab, &c), l.pair(&a, &c) + l.pair(&b, &c));
            prop_assert_eq!(l.pair(&a, &b), l.pair(&b, &a));
            prop_assert!(l.pair(&a, &a).is_even());
        }

        #[test]
        fn discriminant_symmetries(a in small_class()) {
            let l = LatticeData::reference();
            let d = l.discriminant(&a);
            let plus_h = LatticeClass(a.0.iter().zip(l.h_coords()).map(|(x, y)| x + y).collect());
            let neg = LatticeClass(a.0.iter().map(|x| -x).collect());
            prop_assert_eq!(l.discriminant(&plus_h), d.clone());
            prop_assert_eq!(l.discriminant(&neg), d);
        }
    }
}

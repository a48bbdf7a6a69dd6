//! Theta-series bounds for the degrees of Noether–Lefschetz loci.
//!
//! With `A = Σ q^{n²}` and `B = Σ (−1)ⁿ q^{n²}` over `n ∈ Z`, the series
//! `Θ` is a fixed integer combination of the monomials `A^{21−k}B^k`
//! divided by `2²²`, and `Ψ = 108 Σ_{n>0} q^{8n²}`. The coefficient of
//! `q^Δ` in `Θ − Ψ` bounds `deg NL_Δ`.

use rug::Integer;

use crate::error::{Error, Result};

/// Power series with integer coefficients truncated after `q^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<Integer>,
}

impl IntSeries {
    pub fn zero(order: usize) -> IntSeries {
        IntSeries {
            coeffs: vec![Integer::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> IntSeries {
        let mut s = Self::zero(order);
        s.coeffs[0] = Integer::from(1);
        s
    }

    pub fn from_coeffs(coeffs: Vec<Integer>) -> IntSeries {
        assert!(!coeffs.is_empty(), "a series has at least one coefficient");
        IntSeries { coeffs }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Integer {
        &self.coeffs[k]
    }

    fn check_order(&self, o: &IntSeries) {
        assert_eq!(self.order(), o.order(), "series truncation orders differ");
    }

    pub fn add(&self, o: &IntSeries) -> IntSeries {
        self.check_order(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| Integer::from(a + b)).collect();
        IntSeries { coeffs }
    }

    pub fn sub(&self, o: &IntSeries) -> IntSeries {
        self.check_order(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| Integer::from(a - b)).collect();
        IntSeries { coeffs }
    }

    pub fn scale(&self, c: &Integer) -> IntSeries {
        let coeffs = self.coeffs.iter().map(|a| Integer::from(a * c)).collect();
        IntSeries { coeffs }
    }

    /// Truncated product. Zero coefficients of `self` are skipped, which makes
    /// products with lacunary series such as `A` cheap.
    pub fn mul(&self, o: &IntSeries) -> IntSeries {
        self.check_order(o);
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs[..=n - i].iter().enumerate() {
                if *b != 0 {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }

    /// `self^e` by binary exponentiation.
    pub fn pow(&self, mut e: u32) -> IntSeries {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = base.mul(&acc);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// `A = Σ q^{n²}` and `B = Σ (−1)ⁿ q^{n²}` truncated at `order`.
pub fn theta_a_b(order: usize) -> (IntSeries, IntSeries) {
    let mut a = IntSeries::zero(order);
    let mut b = IntSeries::zero(order);
    a.coeffs[0] += 1;
    b.coeffs[0] += 1;
    let mut n = 1usize;
    while n * n <= order {
        a.coeffs[n * n] += 2;
        b.coeffs[n * n] += if n.is_multiple_of(2) { 2 } else { -2 };
        n += 1;
    }
    (a, b)
}

/// Coefficients `(k, c_k)` of `2²²Θ = Σ c_k A^{21−k} B^k`.
pub const THETA_COMBINATION: [(u32, i64); 20] = [
    (0, 3),
    (2, -81),
    (3, -627),
    (4, -14436),
    (5, -20007),
    (6, -169092),
    (7, -120636),
    (8, -621558),
    (9, -292796),
    (10, -1038366),
    (11, -346122),
    (12, -878388),
    (13, -207186),
    (14, -361908),
    (15, -56364),
    (16, -60021),
    (17, -4812),
    (18, -1881),
    (19, -27),
    (21, 1),
];

/// `Θ` truncated at `order`, with the division by `2²²` checked exactly.
pub fn theta_series(order: usize) -> Result<IntSeries> {
    let (a, b) = theta_a_b(order);
    let mut total = IntSeries::zero(order);
    for (k, c) in THETA_COMBINATION {
        let term = a.pow(21 - k).mul(&b.pow(k));
        total = total.add(&term.scale(&Integer::from(c)));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    for (index, x) in total.coeffs.into_iter().enumerate() {
        if !x.is_divisible_2pow(22) {
            return Err(Error::DivisibilityViolation { index });
        }
        coeffs.push(x >> 22);
    }
    Ok(IntSeries { coeffs })
}

/// `Ψ = 108 Σ_{n>0} q^{8n²}` truncated at `order`.
pub fn psi_series(order: usize) -> IntSeries {
    let mut s = IntSeries::zero(order);
    let mut n = 1usize;
    while 8 * n * n <= order {
        s.coeffs[8 * n * n] = Integer::from(108);
        n += 1;
    }
    s
}

/// Coefficient of `q^Δ` in `Θ − Ψ`, an upper bound for `deg NL_Δ`.
/// The series are expanded to `max(order, Δ)`.
pub fn mp_degree_upper(delta: usize, order: usize) -> Result<Integer> {
    let n = order.max(delta);
    let theta = theta_series(n)?;
    Ok(Integer::from(theta.coeff(delta) - psi_series(n).coeff(delta)))
}

/// `(Θ − Ψ)` truncated at `order`.
pub fn mp_series(order: usize) -> Result<IntSeries> {
    Ok(theta_series(order)?.sub(&psi_series(order)))
}

/// `r₂₁(k)`, the number of `a ∈ Z²¹` with `Σ aᵢ² = k`, as the coefficient
/// of `q^k` in `A^{21}`.
pub fn r21(k: usize) -> Integer {
    let (a, _) = theta_a_b(k);
    a.pow(21).coeff(k).clone()
}

/// `r₂₁(0..=order)` in one expansion.
pub fn r21_series(order: usize) -> IntSeries {
    theta_a_b(order).0.pow(21)
}

/// `r₂₁(k)` by direct enumeration over the coordinates.
pub fn r21_brute_force(k: usize) -> Integer {
    fn count(remaining: i64, slots: u32) -> Integer {
        if slots == 0 {
            return Integer::from(u32::from(remaining == 0));
        }
        let mut total = Integer::new();
        let mut a = 0i64;
        while a * a <= remaining {
            let c = count(remaining - a * a, slots - 1);
            total += if a == 0 { c } else { c * 2u32 };
            a += 1;
        }
        total
    }
    count(k as i64, 21)
}

//! Complex midpoint–radius balls over MPFR floats, with vectors, matrices and
//! the certified spectral bounds built on them.
//!
//! A [`Ball`] `m ± r` stands for the closed disc `{z : |z − m| ≤ r}`. Every
//! operation returns a ball containing the exact result for all points of
//! the inputs. Midpoints carry the working precision of their operands;
//! radii are kept at 64 bits and always rounded up.

use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::ops::{AddAssignRound, AssignRound};
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Precision of radii.
pub const RAD_PREC: u32 = 64;
/// Default working precision of midpoints.
pub const DEFAULT_PREC: u32 = 256;

fn rzero() -> Float {
    Float::new(RAD_PREC)
}

#[inline]
fn up<T>(v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RAD_PREC, v, Round::Up).0
}

#[inline]
fn down<T>(v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(RAD_PREC, v, Round::Down).0
}

/// Upper bound on the error of a nearest-rounded result that was inexact.
fn rounding_error(x: &Float, ord: Ordering) -> Float {
    if ord == Ordering::Equal || x.is_zero() {
        return rzero();
    }
    let e = x.get_exp().expect("finite nonzero") - x.prec() as i32;
    Float::with_val(RAD_PREC, Float::u_exp(1, e))
}

fn round_nearest<T>(prec: u32, v: T) -> (Float, Float)
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    let (x, ord) = Float::with_val_round(prec, v, Round::Nearest);
    let e = rounding_error(&x, ord);
    (x, e)
}

fn radd(a: &Float, b: &Float) -> Float {
    up(a + b)
}

fn rmul(a: &Float, b: &Float) -> Float {
    up(a * b)
}

/// Closed complex disc `mid ± rad`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ball {
    re: Float,
    im: Float,
    rad: Float,
}

impl Ball {
    pub fn zero(prec: u32) -> Ball {
        Ball {
            re: Float::new(prec),
            im: Float::new(prec),
            rad: rzero(),
        }
    }

    pub fn one(prec: u32) -> Ball {
        Ball::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Ball {
        Ball::from_rational(&Rational::from(v), prec)
    }

    pub fn from_integer(v: &Integer, prec: u32) -> Ball {
        Ball::from_rational(&Rational::from(v), prec)
    }

    /// Ball around a real rational, with the rounding error in the radius.
    pub fn from_rational(v: &Rational, prec: u32) -> Ball {
        Ball::from_complex_rational(v, &Rational::new(), &Rational::new(), prec)
    }

    /// Ball containing `re + i·im ± rad`.
    pub fn from_complex_rational(re: &Rational, im: &Rational, rad: &Rational, prec: u32) -> Ball {
        let fre = Float::with_val(prec, re);
        let fim = Float::with_val(prec, im);
        let ere = (re - fre.to_rational().expect("finite")).abs();
        let eim = (im - fim.to_rational().expect("finite")).abs();
        let mut r = up(Rational::from(rad.abs_ref()));
        r.add_assign_round(up(&ere), Round::Up);
        r.add_assign_round(up(&eim), Round::Up);
        Ball {
            re: fre,
            im: fim,
            rad: r,
        }
    }

    /// Ball from floating midpoint parts and a radius (rounded up to radius
    /// precision). Panics on a negative or non-finite radius.
    pub fn from_floats(re: Float, im: Float, rad: &Float) -> Ball {
        assert!(rad.is_finite() && *rad >= 0, "radius must be finite and non-negative");
        assert!(re.is_finite() && im.is_finite(), "midpoint must be finite");
        Ball {
            re,
            im,
            rad: up(rad),
        }
    }

    pub fn real(re: Float) -> Ball {
        let prec = re.prec();
        Ball::from_floats(re, Float::new(prec), &rzero())
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn rad(&self) -> &Float {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Same ball with midpoint rounded to `prec` bits (radius widened).
    pub fn with_prec(&self, prec: u32) -> Ball {
        let (re, e1) = round_nearest(prec, &self.re);
        let (im, e2) = round_nearest(prec, &self.im);
        Ball {
            re,
            im,
            rad: radd(&radd(&self.rad, &e1), &e2),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Widens the radius by `e ≥ 0`.
    pub fn add_error(&self, e: &Float) -> Ball {
        let mut b = self.clone();
        b.rad = radd(&b.rad, e);
        b
    }

    pub fn neg(&self) -> Ball {
        Ball {
            re: Float::with_val(self.re.prec(), -&self.re),
            im: Float::with_val(self.im.prec(), -&self.im),
            rad: self.rad.clone(),
        }
    }

    pub fn conj(&self) -> Ball {
        Ball {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, o: &Ball) -> Ball {
        let prec = self.prec().max(o.prec());
        let (re, e1) = round_nearest(prec, &self.re + &o.re);
        let (im, e2) = round_nearest(prec, &self.im + &o.im);
        let r = radd(&radd(&self.rad, &o.rad), &radd(&e1, &e2));
        Ball { re, im, rad: r }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        let prec = self.prec().max(o.prec());
        // exact partial products
        let pp = |a: &Float, b: &Float| Float::with_val(a.prec() + b.prec(), a * b);
        let ac = pp(&self.re, &o.re);
        let bd = pp(&self.im, &o.im);
        let ad = pp(&self.re, &o.im);
        let bc = pp(&self.im, &o.re);
        let (re, e1) = round_nearest(prec, &ac - &bd);
        let (im, e2) = round_nearest(prec, &ad + &bc);
        let mut r = radd(&e1, &e2);
        if !self.rad.is_zero() || !o.rad.is_zero() {
            let am = self.mid_abs_upper();
            let bm = o.mid_abs_upper();
            r = radd(&r, &rmul(&am, &o.rad));
            r = radd(&r, &rmul(&bm, &self.rad));
            r = radd(&r, &rmul(&self.rad, &o.rad));
        }
        Ball { re, im, rad: r }
    }

    /// Exact scaling by a rational, rounded at the ball's precision.
    pub fn mul_rational(&self, q: &Rational) -> Ball {
        self.mul(&Ball::from_rational(q, self.prec()))
    }

    pub fn mul_integer(&self, n: &Integer) -> Ball {
        self.mul(&Ball::from_integer(n, self.prec().max(n.significant_bits())))
            .with_prec(self.prec())
    }

    pub fn mul_i64(&self, n: i64) -> Ball {
        self.mul_integer(&Integer::from(n))
    }

    /// Scaling by a real float treated as exact.
    pub fn mul_float(&self, x: &Float) -> Ball {
        self.mul(&Ball::real(x.clone()))
    }

    fn mid_abs_upper(&self) -> Float {
        up(self.re.hypot_ref(&self.im))
    }

    fn mid_abs_lower(&self) -> Float {
        down(self.re.hypot_ref(&self.im))
    }

    /// Certified `[lower, upper]` for `|z|` over the ball.
    pub fn abs_bounds(&self) -> (Float, Float) {
        (self.abs_lower(), self.abs_upper())
    }

    pub fn abs_upper(&self) -> Float {
        radd(&self.mid_abs_upper(), &self.rad)
    }

    pub fn abs_lower(&self) -> Float {
        let l = down(&self.mid_abs_lower() - &self.rad);
        if l < 0 {
            rzero()
        } else {
            l
        }
    }

    /// True unless the ball is certified to exclude zero.
    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    /// Exact membership test for a complex rational point.
    pub fn contains(&self, re: &Rational, im: &Rational) -> bool {
        let dr = re - self.re.to_rational().expect("finite");
        let di = im - self.im.to_rational().expect("finite");
        let r = self.rad.to_rational().expect("finite");
        Rational::from(&dr * &dr) + Rational::from(&di * &di) <= Rational::from(&r * &r)
    }

    /// Lower bound on the real part over the ball.
    pub fn re_lower(&self) -> Float {
        Float::with_val_round(self.prec(), &self.re - &self.rad, Round::Down).0
    }

    pub fn re_upper(&self) -> Float {
        Float::with_val_round(self.prec(), &self.re + &self.rad, Round::Up).0
    }

    /// The real ball enclosing `|z|²`.
    pub fn abs_sq(&self) -> Ball {
        let prec = self.prec();
        let s = Float::with_val(
            2 * prec,
            Float::with_val(2 * prec, self.re.square_ref()) + Float::with_val(2 * prec, self.im.square_ref()),
        );
        let (m, e) = round_nearest(prec, &s);
        let mut r = e;
        if !self.rad.is_zero() {
            let a = self.mid_abs_upper();
            r = radd(&r, &rmul(&rmul(&a, &self.rad), &Float::with_val(RAD_PREC, 2)));
            r = radd(&r, &rmul(&self.rad, &self.rad));
        }
        Ball {
            re: m,
            im: Float::new(prec),
            rad: r,
        }
    }

    /// Square root of a ball contained in the positive real axis; `None` if
    /// the ball is not real or touches `(−∞, 0]`.
    pub fn sqrt_real(&self) -> Option<Ball> {
        if !self.im.is_zero() {
            return None;
        }
        let prec = self.prec();
        let lo = Float::with_val_round(prec, &self.re - &self.rad, Round::Down).0;
        if lo <= 0 {
            return None;
        }
        let hi = Float::with_val_round(prec, &self.re + &self.rad, Round::Up).0;
        let s = Float::with_val(prec, self.re.sqrt_ref());
        let slo = Float::with_val_round(prec, lo.sqrt_ref(), Round::Down).0;
        let shi = Float::with_val_round(prec, hi.sqrt_ref(), Round::Up).0;
        let r = up(&s - &slo).max(&up(&shi - &s));
        Some(Ball {
            re: s,
            im: Float::new(prec),
            rad: r,
        })
    }

    /// `1/z`, or `None` if the ball may contain zero.
    pub fn recip(&self) -> Option<Ball> {
        let prec = self.prec();
        let ml = self.mid_abs_lower();
        if ml <= self.rad {
            return None;
        }
        // y0 ≈ conj(m)/|m|²
        let n2 = Float::with_val(prec + 16, self.re.square_ref())
            + Float::with_val(prec + 16, self.im.square_ref());
        let n2 = Float::with_val(prec + 16, n2);
        let y0re = Float::with_val(prec, &self.re / &n2);
        let y0im = Float::with_val(prec, -Float::with_val(prec + 16, &self.im / &n2));
        let y0 = Ball {
            re: y0re,
            im: y0im,
            rad: rzero(),
        };
        let mid = Ball {
            re: self.re.clone(),
            im: self.im.clone(),
            rad: rzero(),
        };
        // |1/m − y0| = |1 − m·y0| / |m|
        let resid = Ball::one(prec).sub(&mid.mul(&y0));
        let e0 = up(&resid.abs_upper() / &ml);
        // |1/z − 1/m| ≤ r / (|m| (|m| − r))
        let gap = down(&ml - &self.rad);
        let denom = down(&ml * &gap);
        let e1 = up(&self.rad / &denom);
        Some(y0.add_error(&radd(&e0, &e1)))
    }

    pub fn div(&self, o: &Ball) -> Option<Ball> {
        o.recip().map(|r| self.mul(&r))
    }

    pub fn to_record(&self) -> BallRecord {
        BallRecord {
            mid_re: dyadic_to_decimal(&self.re),
            mid_im: dyadic_to_decimal(&self.im),
            rad: dyadic_to_decimal(&self.rad),
        }
    }

    pub fn from_record(r: &BallRecord, prec: u32) -> Result<Ball> {
        let re = parse_decimal(&r.mid_re)?;
        let im = parse_decimal(&r.mid_im)?;
        let rad = parse_decimal(&r.rad)?;
        if rad < 0 {
            return Err(Error::Parse(format!("negative radius {}", r.rad)));
        }
        Ok(Ball::from_complex_rational(&re, &im, &rad, prec))
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = self.re.to_f64();
        let im = self.im.to_f64();
        let r = self.rad.to_f64();
        write!(f, "({re:e} + {im:e}i) +/- {r:.3e}")
    }
}

/// Serialized ball; all three strings are exact decimal expansions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallRecord {
    pub mid_re: String,
    pub mid_im: String,
    pub rad: String,
}

/// Exact decimal expansion of a finite binary float.
pub fn dyadic_to_decimal(x: &Float) -> String {
    let q = x.to_rational().expect("finite float");
    let den = q.denom();
    let k = den.find_one(0).unwrap_or(0);
    debug_assert_eq!(Integer::from(Integer::u_pow_u(2, k)), *den);
    if k == 0 {
        return q.numer().to_string();
    }
    let scaled = q.numer() * Integer::from(Integer::u_pow_u(5, k));
    let neg = scaled < 0;
    let digits = scaled.abs().to_string();
    let k = k as usize;
    let digits = if digits.len() <= k {
        format!("{}{}", "0".repeat(k + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int, frac) = digits.split_at(digits.len() - k);
    let frac = frac.trim_end_matches('0');
    let sign = if neg { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Parses a decimal literal such as `-12.5e-3` into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
    let t = s.trim();
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let n = Integer::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10).map_err(|_| bad())?;
    let e = exp - fp.len() as i64;
    if e.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    let p10 = Integer::from(Integer::u_pow_u(10, e.unsigned_abs() as u32));
    let mut q = if e >= 0 {
        Rational::from(n * p10)
    } else {
        Rational::from((n, p10))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Column vector of balls.
#[derive(Clone, Debug, PartialEq)]
pub struct BallVector(pub Vec<Ball>);

impl BallVector {
    pub fn zeros(n: usize, prec: u32) -> BallVector {
        BallVector(vec![Ball::zero(prec); n])
    }

    pub fn unit(n: usize, i: usize, prec: u32) -> BallVector {
        let mut v = BallVector::zeros(n, prec);
        v.0[i] = Ball::one(prec);
        v
    }

    pub fn from_integers(v: &[i64], prec: u32) -> BallVector {
        BallVector(v.iter().map(|&x| Ball::from_i64(x, prec)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conj(&self) -> BallVector {
        BallVector(self.0.iter().map(Ball::conj).collect())
    }

    pub fn add(&self, o: &BallVector) -> BallVector {
        assert_eq!(self.len(), o.len());
        BallVector(self.0.iter().zip(&o.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, o: &BallVector) -> BallVector {
        assert_eq!(self.len(), o.len());
        BallVector(self.0.iter().zip(&o.0).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, s: &Ball) -> BallVector {
        BallVector(self.0.iter().map(|a| a.mul(s)).collect())
    }

    /// Bilinear `Σ aᵢbᵢ`.
    pub fn dot(&self, o: &BallVector) -> Ball {
        assert_eq!(self.len(), o.len());
        let prec = self.0.iter().chain(&o.0).map(Ball::prec).max().unwrap_or(DEFAULT_PREC);
        self.0
            .iter()
            .zip(&o.0)
            .fold(Ball::zero(prec), |acc, (a, b)| acc.add(&a.mul(b)))
    }

    /// Hermitian `Σ conj(aᵢ)·bᵢ`.
    pub fn hdot(&self, o: &BallVector) -> Ball {
        self.conj().dot(o)
    }

    /// Bilinear pairing `Σ aᵢ·nᵢ` against an integer vector.
    pub fn dot_integers(&self, n: &[i64]) -> Ball {
        assert_eq!(self.len(), n.len());
        let prec = self.0.iter().map(Ball::prec).max().unwrap_or(DEFAULT_PREC);
        self.0
            .iter()
            .zip(n)
            .filter(|(_, &k)| k != 0)
            .fold(Ball::zero(prec), |acc, (a, &k)| acc.add(&a.mul_i64(k)))
    }

    /// `‖v‖² = Σ|vᵢ|²` as a real ball.
    pub fn norm_sq(&self) -> Ball {
        let prec = self.0.iter().map(Ball::prec).max().unwrap_or(DEFAULT_PREC);
        self.0
            .iter()
            .fold(Ball::zero(prec), |acc, a| acc.add(&a.abs_sq()))
    }

    pub fn norm_upper(&self) -> Float {
        let s = self
            .0
            .iter()
            .fold(rzero(), |acc, a| radd(&acc, &up(a.abs_upper().square_ref())));
        up(s.sqrt_ref())
    }

    pub fn norm_lower(&self) -> Float {
        let s = self
            .0
            .iter()
            .fold(rzero(), |acc, a| down(&acc + &down(a.abs_lower().square_ref())));
        down(s.sqrt_ref())
    }

    pub fn max_rad(&self) -> Float {
        self.0.iter().fold(rzero(), |acc, b| acc.max(b.rad()))
    }

    pub fn to_records(&self) -> Vec<BallRecord> {
        self.0.iter().map(Ball::to_record).collect()
    }
}

/// Dense row-major matrix of balls.
#[derive(Clone, Debug, PartialEq)]
pub struct BallMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Ball>,
}

impl BallMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Ball>) -> Result<BallMatrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(BallMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize, prec: u32) -> BallMatrix {
        BallMatrix {
            rows,
            cols,
            data: vec![Ball::zero(prec); rows * cols],
        }
    }

    pub fn identity(n: usize, prec: u32) -> BallMatrix {
        let mut m = BallMatrix::zeros(n, n, prec);
        for i in 0..n {
            m.set(i, i, Ball::one(prec));
        }
        m
    }

    /// Exact real rational matrix given by rows.
    pub fn from_rationals(rows: &[Vec<Rational>], prec: u32) -> Result<BallMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flatten()
            .map(|q| Ball::from_rational(q, prec))
            .collect();
        BallMatrix::new(r, c, data)
    }

    pub fn from_columns(cols: &[BallVector]) -> Result<BallMatrix> {
        let c = cols.len();
        let r = cols.first().map_or(0, BallVector::len);
        if cols.iter().any(|v| v.len() != r) {
            return Err(Error::ShapeMismatch("columns of different lengths".into()));
        }
        let mut m = BallMatrix::zeros(r, c, DEFAULT_PREC);
        for (j, v) in cols.iter().enumerate() {
            for (i, b) in v.0.iter().enumerate() {
                m.set(i, j, b.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Ball {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, b: Ball) {
        self.data[i * self.cols + j] = b;
    }

    pub fn entries(&self) -> &[Ball] {
        &self.data
    }

    pub fn row(&self, i: usize) -> BallVector {
        BallVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> BallVector {
        BallVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn map(&self, f: impl Fn(&Ball) -> Ball) -> BallMatrix {
        BallMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &Ball) -> BallMatrix {
        self.map(|b| b.mul(s))
    }

    pub fn conj_transpose(&self) -> BallMatrix {
        let mut m = BallMatrix::zeros(self.cols, self.rows, DEFAULT_PREC);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn transpose(&self) -> BallMatrix {
        let mut m = BallMatrix::zeros(self.cols, self.rows, DEFAULT_PREC);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &BallVector) -> BallVector {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        BallVector((0..self.rows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn mul(&self, o: &BallMatrix) -> BallMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape mismatch");
        let ocols: Vec<BallVector> = (0..o.cols).map(|j| o.column(j)).collect();
        let mut data = Vec::with_capacity(self.rows * o.cols);
        for i in 0..self.rows {
            let r = self.row(i);
            for c in &ocols {
                data.push(r.dot(c));
            }
        }
        BallMatrix {
            rows: self.rows,
            cols: o.cols,
            data,
        }
    }

    fn abs_upper_matrix(&self) -> Vec<Float> {
        self.data.iter().map(Ball::abs_upper).collect()
    }

    /// `sqrt(‖M‖₁·‖M‖∞)` over entrywise upper bounds: a certified upper
    /// bound on the spectral norm of every point matrix.
    pub fn op_norm_upper(&self) -> Float {
        let a = self.abs_upper_matrix();
        let mut n1 = rzero();
        for j in 0..self.cols {
            let s = (0..self.rows).fold(rzero(), |acc, i| radd(&acc, &a[i * self.cols + j]));
            n1 = n1.max(&s);
        }
        let mut ninf = rzero();
        for i in 0..self.rows {
            let s = (0..self.cols).fold(rzero(), |acc, j| radd(&acc, &a[i * self.cols + j]));
            ninf = ninf.max(&s);
        }
        up(rmul(&n1, &ninf).sqrt_ref())
    }

    /// Certified lower bound `‖Mv‖/‖v‖` for a witness `v`; 0 if nothing
    /// positive can be certified.
    pub fn norm_lower_with_witness(&self, v: &BallVector) -> Float {
        let num = self.mul_vec(v).norm_lower();
        let den = v.norm_upper();
        if num.is_zero() || den.is_zero() {
            return rzero();
        }
        down(&num / &den)
    }

    /// Certified lower bound on the spectral norm of every point matrix,
    /// using the best of the unit vectors and a few power-iteration steps on
    /// the midpoint as witnesses.
    pub fn op_norm_lower(&self) -> Float {
        if self.rows == 0 || self.cols == 0 {
            return rzero();
        }
        let prec = self.data.iter().map(Ball::prec).max().unwrap_or(DEFAULT_PREC);
        let mut best = rzero();
        for j in 0..self.cols {
            let l = self.column(j).norm_lower();
            best = best.max(&l);
        }
        let mid = self.map(|b| Ball::from_floats(b.re.clone(), b.im.clone(), &rzero()));
        let mh = mid.conj_transpose();
        let mut v = BallVector(vec![Ball::one(prec); self.cols]);
        for _ in 0..12 {
            let w = mh.mul_vec(&mid.mul_vec(&v));
            let n = w.norm_upper();
            if n.is_zero() {
                return best;
            }
            let inv = Float::with_val(prec, Float::with_val(prec, 1) / Float::with_val(prec, &n));
            v = BallVector(
                w.0.iter()
                    .map(|b| {
                        let s = b.mul_float(&inv);
                        Ball::from_floats(s.re, s.im, &rzero())
                    })
                    .collect(),
            );
        }
        best.max(&self.norm_lower_with_witness(&v))
    }

    pub fn to_records(&self) -> Vec<Vec<BallRecord>> {
        (0..self.rows)
            .map(|i| self.row(i).to_records())
            .collect()
    }

    pub fn from_records(rows: &[Vec<BallRecord>], prec: u32) -> Result<BallMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for rec in row {
                data.push(Ball::from_record(rec, prec)?);
            }
        }
        BallMatrix::new(r, c, data)
    }
}

#[derive(Clone)]
struct Cf {
    re: Float,
    im: Float,
}

impl Cf {
    fn of(b: &Ball, prec: u32) -> Cf {
        Cf {
            re: Float::with_val(prec, &b.re),
            im: Float::with_val(prec, &b.im),
        }
    }
    fn zero(prec: u32) -> Cf {
        Cf {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }
    fn mul(&self, o: &Cf) -> Cf {
        let p = self.re.prec();
        Cf {
            re: Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im),
            im: Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re),
        }
    }
    fn add(&self, o: &Cf) -> Cf {
        let p = self.re.prec();
        Cf {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }
    fn scale(&self, s: &Float) -> Cf {
        let p = self.re.prec();
        Cf {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }
    fn conj(&self) -> Cf {
        Cf {
            re: self.re.clone(),
            im: Float::with_val(self.im.prec(), -&self.im),
        }
    }
    fn abs(&self) -> Float {
        Float::with_val(self.re.prec(), self.re.hypot_ref(&self.im))
    }
}

/// Cyclic complex Jacobi on a Hermitian float matrix; returns the
/// (approximately unitary) eigenvector matrix, column-major by eigenpair.
fn hermitian_jacobi(a: &mut [Vec<Cf>], prec: u32) -> Vec<Vec<Cf>> {
    let n = a.len();
    let mut v: Vec<Vec<Cf>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = Cf::zero(prec);
                    if i == j {
                        c.re = Float::with_val(prec, 1);
                    }
                    c
                })
                .collect()
        })
        .collect();
    let scale: Float = a
        .iter()
        .flatten()
        .fold(Float::new(prec), |acc, c| acc.max(&c.abs()));
    if scale.is_zero() {
        return v;
    }
    let tol = Float::with_val(prec, &scale * Float::with_val(prec, Float::u_exp(1, -(prec as i32) + 4)));
    for _sweep in 0..60 {
        let mut off = Float::new(prec);
        for p in 0..n {
            for q in p + 1..n {
                off = off.max(&a[p][q].abs());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let r = a[p][q].abs();
                if r <= tol {
                    continue;
                }
                // a[p][q] = r·e
                let e = Cf {
                    re: Float::with_val(prec, &a[p][q].re / &r),
                    im: Float::with_val(prec, &a[p][q].im / &r),
                };
                let app = a[p][p].re.clone();
                let aqq = a[q][q].re.clone();
                let theta = Float::with_val(prec, Float::with_val(prec, &aqq - &app) / Float::with_val(prec, 2 * &r));
                let t = if theta.is_zero() {
                    Float::with_val(prec, 1)
                } else {
                    let root = Float::with_val(prec, Float::with_val(prec, theta.square_ref()) + 1u32).sqrt();
                    let den = Float::with_val(prec, theta.abs_ref()) + root;
                    let t = Float::with_val(prec, 1) / den;
                    if theta < 0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = Float::with_val(prec, Float::with_val(prec, t.square_ref()) + 1u32)
                    .sqrt()
                    .recip();
                let s = Float::with_val(prec, &t * &c);
                let eb = e.conj();
                // J_pp = c, J_pq = s, J_qp = −s·ē, J_qq = c·ē
                let jqp = eb.scale(&Float::with_val(prec, -&s));
                let jqq = eb.scale(&c);
                let cf = Cf {
                    re: c.clone(),
                    im: Float::new(prec),
                };
                let sf = Cf {
                    re: s.clone(),
                    im: Float::new(prec),
                };
                for row in a.iter_mut() {
                    let xp = row[p].clone();
                    let xq = row[q].clone();
                    row[p] = xp.mul(&cf).add(&xq.mul(&jqp));
                    row[q] = xp.mul(&sf).add(&xq.mul(&jqq));
                }
                for row in v.iter_mut() {
                    let xp = row[p].clone();
                    let xq = row[q].clone();
                    row[p] = xp.mul(&cf).add(&xq.mul(&jqp));
                    row[q] = xp.mul(&sf).add(&xq.mul(&jqq));
                }
                let (jqp_c, jqq_c) = (jqp.conj(), jqq.conj());
                for k in 0..n {
                    let xp = a[p][k].clone();
                    let xq = a[q][k].clone();
                    a[p][k] = cf.mul(&xp).add(&jqp_c.mul(&xq));
                    a[q][k] = sf.mul(&xp).add(&jqq_c.mul(&xq));
                }
                a[p][q] = Cf::zero(prec);
                a[q][p] = Cf::zero(prec);
                a[p][p].im = Float::new(prec);
                a[q][q].im = Float::new(prec);
            }
        }
    }
    v
}

/// Lower bound on the smallest eigenvalue of a Hermitian ball matrix, valid
/// only when the matrix is diagonally dominant after shifting: returns the
/// Gershgorin lower bound `minᵢ (Re Hᵢᵢ − Σ_{j≠i} |Hᵢⱼ|)`.
fn gershgorin_lower(h: &BallMatrix, prec: u32) -> Float {
    let n = h.rows();
    let mut best: Option<Float> = None;
    for i in 0..n {
        let mut s = rzero();
        for j in 0..n {
            if j != i {
                s = radd(&s, &h.get(i, j).abs_upper());
            }
        }
        let d = h.get(i, i);
        let re_lo = Float::with_val_round(prec, d.re() - d.rad(), Round::Down).0;
        let l = Float::with_val_round(prec, &re_lo - &s, Round::Down).0;
        best = Some(match best {
            Some(b) if b < l => b,
            _ => l,
        });
    }
    best.unwrap_or_else(rzero)
}

/// True if `K − λ·G` is certified positive definite by diagonal dominance.
fn shifted_dominant(k: &BallMatrix, g: &BallMatrix, lambda: &Float) -> bool {
    let n = k.rows();
    let lb = Ball::real(lambda.clone());
    for i in 0..n {
        let d = k.get(i, i).sub(&g.get(i, i).mul(&lb));
        let mut s = rzero();
        for j in 0..n {
            if j != i {
                s = radd(&s, &k.get(i, j).sub(&g.get(i, j).mul(&lb)).abs_upper());
            }
        }
        let margin = Float::with_val_round(d.prec(), &d.re_lower() - &s, Round::Down).0;
        if margin <= 0 {
            return false;
        }
    }
    true
}

/// Certified lower bound on `λ_min` of every Hermitian point matrix in `h`.
///
/// The midpoint is diagonalized by a complex Jacobi iteration at
/// `working_precision`, giving `V`; then `K = VᴴHV` and `G = VᴴV` are formed in
/// ball arithmetic and a shift `λ₀` just below the smallest approximate
/// eigenvalue is accepted once `K − λ₀G` is diagonally dominant. Since that
/// matrix is congruent to `H − λ₀`, every Hermitian point matrix has all
/// eigenvalues above `λ₀`. Plain Gershgorin on `H` is the fallback.
///
/// With `require_positive`, a bound that is not positive is reported as
/// [`Error::PrecisionTooLow`].
pub fn hermitian_lambda_min_lower(
    h: &BallMatrix,
    working_precision: u32,
    require_positive: bool,
) -> Result<Float> {
    let n = h.rows();
    if n != h.cols() || n == 0 {
        return Err(Error::ShapeMismatch(format!(
            "expected a nonempty square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    for i in 0..n {
        for j in i..n {
            let d = h.get(i, j).sub(&h.get(j, i).conj());
            // the two balls must intersect
            let gap = d.mid_abs_lower();
            let rr = radd(h.get(i, j).rad(), h.get(j, i).rad());
            let slack = rounding_slack(h.get(i, j), h.get(j, i));
            if gap > radd(&rr, &slack) {
                return Err(Error::InvalidInput(format!(
                    "matrix is not Hermitian at entry ({i},{j})"
                )));
            }
        }
    }
    let prec = working_precision.max(64);
    let wp = prec + 32;
    let mut bounds = vec![gershgorin_lower(h, prec)];

    let mut a: Vec<Vec<Cf>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // Hermitian part of the midpoint
                    let x = Cf::of(h.get(i, j), wp);
                    let y = Cf::of(h.get(j, i), wp).conj();
                    x.add(&y).scale(&Float::with_val(wp, 0.5))
                })
                .collect()
        })
        .collect();
    let vf = hermitian_jacobi(&mut a, wp);
    let lambda_a = (0..n)
        .map(|i| a[i][i].re.clone())
        .fold(None::<Float>, |m, x| match m {
            Some(m) if m < x => Some(m),
            _ => Some(x),
        })
        .expect("n > 0");
    let v = BallMatrix::new(
        n,
        n,
        vf.iter()
            .flatten()
            .map(|c| Ball::from_floats(Float::with_val(prec, &c.re), Float::with_val(prec, &c.im), &rzero()))
            .collect(),
    )?;
    let hp = h.map(|b| b.with_prec(prec.max(b.prec())));
    let vh = v.conj_transpose();
    let k = vh.mul(&hp.mul(&v));
    let g = vh.mul(&v);
    let scale = Float::with_val(prec, lambda_a.abs_ref()).max(&Float::with_val(prec, 1));
    let mut delta = Float::with_val(prec, &scale * Float::with_val(prec, Float::u_exp(1, -(prec as i32) + 1)));
    let limit = Float::with_val(prec, &scale * 64u32) + h.op_norm_upper();
    while delta < limit {
        let l0 = Float::with_val_round(prec, &lambda_a - &delta, Round::Down).0;
        if shifted_dominant(&k, &g, &l0) {
            bounds.push(l0);
            break;
        }
        delta *= 4u32;
    }
    let best = bounds
        .into_iter()
        .fold(None::<Float>, |m, x| match m {
            Some(m) if m > x => Some(m),
            _ => Some(x),
        })
        .expect("at least one bound");
    if require_positive && best <= 0 {
        return Err(Error::PrecisionTooLow(format!(
            "smallest eigenvalue lower bound {} is not positive at {} bits",
            best.to_f64(),
            working_precision
        )));
    }
    Ok(best)
}

fn rounding_slack(a: &Ball, b: &Ball) -> Float {
    let p = a.prec().min(b.prec()) as i32;
    let m = radd(&a.mid_abs_upper(), &b.mid_abs_upper());
    rmul(&m, &Float::with_val(RAD_PREC, Float::u_exp(1, 2 - p)))
}

/// Hermitian-orthonormal basis of `{u : Σᵢ (G vₖ)ᵢ uᵢ = 0 for all k}`, the
/// complement of the given vectors for the bilinear form with Gram matrix `G`.
///
/// The basis is obtained by Gram–Schmidt in ball arithmetic on the conjugated
/// constraint rows followed by the standard basis vectors that are least
/// dependent on them, so each output ball contains the exact basis vector
/// for every point of the inputs.
pub fn orthocomplement_basis(vectors: &[BallVector], gram: &[Vec<i64>]) -> Result<Vec<BallVector>> {
    let n = gram.len();
    if gram.iter().any(|r| r.len() != n) || vectors.iter().any(|v| v.len() != n) {
        return Err(Error::ShapeMismatch("orthocomplement input shapes disagree".into()));
    }
    let prec = vectors
        .iter()
        .flat_map(|v| v.0.iter().map(Ball::prec))
        .max()
        .unwrap_or(DEFAULT_PREC);
    let constraints: Vec<BallVector> = vectors
        .iter()
        .map(|v| {
            BallVector(
                (0..n)
                    .map(|i| v.dot_integers(&gram[i]))
                    .collect(),
            )
            .conj()
        })
        .collect();

    // choose the standard vectors greedily on midpoints
    let mut mids: Vec<Vec<Cf>> = Vec::new();
    let project_out = |x: &mut Vec<Cf>, basis: &Vec<Vec<Cf>>| {
        for b in basis {
            let mut c = Cf::zero(prec);
            for (bi, xi) in b.iter().zip(x.iter()) {
                c = c.add(&bi.conj().mul(xi));
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                let t = bi.mul(&c);
                *xi = Cf {
                    re: Float::with_val(prec, &xi.re - &t.re),
                    im: Float::with_val(prec, &xi.im - &t.im),
                };
            }
        }
    };
    let normalize = |x: &mut Vec<Cf>| -> Float {
        let s = x.iter().fold(Float::new(prec), |acc, c| {
            acc + Float::with_val(prec, c.re.square_ref()) + Float::with_val(prec, c.im.square_ref())
        });
        let nrm = Float::with_val(prec, s.sqrt_ref());
        if !nrm.is_zero() {
            let inv = Float::with_val(prec, nrm.recip_ref());
            for c in x.iter_mut() {
                *c = c.scale(&inv);
            }
        }
        nrm
    };
    for c in &constraints {
        let mut x: Vec<Cf> = c.0.iter().map(|b| Cf::of(b, prec)).collect();
        project_out(&mut x, &mids);
        normalize(&mut x);
        mids.push(x);
    }
    let mut order = Vec::new();
    let mut used = vec![false; n];
    let target = n.saturating_sub(vectors.len());
    while order.len() < target {
        let mut best: Option<(usize, Float, Vec<Cf>)> = None;
        for j in (0..n).filter(|&j| !used[j]) {
            let mut x: Vec<Cf> = (0..n)
                .map(|i| {
                    let mut c = Cf::zero(prec);
                    if i == j {
                        c.re = Float::with_val(prec, 1);
                    }
                    c
                })
                .collect();
            project_out(&mut x, &mids);
            let mut y = x.clone();
            let nrm = normalize(&mut y);
            if best.as_ref().is_none_or(|b| nrm > b.1) {
                best = Some((j, nrm, y));
            }
        }
        let (j, _, y) = best.expect("candidates remain");
        used[j] = true;
        order.push(j);
        mids.push(y);
    }

    // certified Gram–Schmidt
    let mut basis: Vec<BallVector> = Vec::new();
    let inputs = constraints
        .into_iter()
        .chain(order.iter().map(|&j| BallVector::unit(n, j, prec)));
    let mut out = Vec::new();
    for (idx, mut x) in inputs.enumerate() {
        for b in &basis {
            let c = b.hdot(&x);
            x = x.sub(&b.scale(&c));
        }
        let nrm = x
            .norm_sq()
            .sqrt_real()
            .ok_or_else(|| Error::PrecisionTooLow("vectors are not independent at this precision".into()))?;
        let inv = nrm
            .recip()
            .ok_or_else(|| Error::PrecisionTooLow("vectors are not independent at this precision".into()))?;
        let y = x.scale(&inv);
        if idx >= vectors.len() {
            out.push(y.clone());
        }
        basis.push(y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn exact_points_stay_exact() {
        let one = Ball::one(128);
        let p = one.mul(&one);
        assert!(p.is_exact());
        assert_eq!(*p.re(), 1);
        let z = Ball::from_complex_rational(&q(0, 1), &q(0, 1), &q(1, 1), 64);
        let (lo, hi) = z.abs_bounds();
        assert_eq!(lo, 0);
        assert_eq!(hi, 1);
        assert!(z.contains_zero());
    }

    #[test]
    fn sum_encloses_sampled_points() {
        let a = Ball::from_complex_rational(&q(3, 1), &q(0, 1), &q(1, 10), 128);
        let b = Ball::from_complex_rational(&q(0, 1), &q(4, 1), &q(2, 10), 128);
        let s = a.add(&b);
        let p = a.mul(&b);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let pick = |rng: &mut ChaCha8Rng, cr: Rational, ci: Rational, r: Rational| {
                // a point inside the square inscribed in the disc
                let t1 = Rational::from((rng.gen_range(-707..=707), 1000));
                let t2 = Rational::from((rng.gen_range(-707..=707), 1000));
                (cr + Rational::from(&t1 * &r), ci + Rational::from(&t2 * &r))
            };
            let (xr, xi) = pick(&mut rng, q(3, 1), q(0, 1), q(1, 10));
            let (yr, yi) = pick(&mut rng, q(0, 1), q(4, 1), q(2, 10));
            let sr = Rational::from(&xr + &yr);
            let si = Rational::from(&xi + &yi);
            assert!(s.contains(&sr, &si));
            let pr = Rational::from(&xr * &yr) - Rational::from(&xi * &yi);
            let pi = Rational::from(&xr * &yi) + Rational::from(&xi * &yr);
            assert!(p.contains(&pr, &pi));
        }
    }

    #[test]
    fn recip_and_sqrt_enclose() {
        let z = Ball::from_complex_rational(&q(3, 1), &q(-4, 1), &q(1, 1000), 128);
        let r = z.recip().unwrap();
        // 1/(3−4i) = (3+4i)/25
        assert!(r.contains(&q(3, 25), &q(4, 25)));
        assert!(Ball::from_i64(0, 64).recip().is_none());
        let two = Ball::from_i64(2, 200);
        let s = two.sqrt_real().unwrap();
        let sq = s.mul(&s);
        assert!(sq.contains(&q(2, 1), &q(0, 1)));
        assert!(s.rad().to_f64() < 1e-55);
    }

    #[test]
    fn decimal_roundtrip() {
        let x = Float::with_val(64, -13.375);
        assert_eq!(dyadic_to_decimal(&x), "-13.375");
        assert_eq!(parse_decimal("-13.375").unwrap(), q(-107, 8));
        assert_eq!(parse_decimal("1e-3").unwrap(), q(1, 1000));
        assert_eq!(dyadic_to_decimal(&Float::with_val(64, 0.0625)), "0.0625");
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("").is_err());
        let b = Ball::from_complex_rational(&q(1, 3), &q(-5, 7), &q(1, 1 << 20), 100);
        let rec = b.to_record();
        let b2 = Ball::from_record(&rec, 100).unwrap();
        assert_eq!(b, b2);
    }

    #[test]
    fn op_norm_examples() {
        let id = BallMatrix::identity(2, 128);
        let u = id.op_norm_upper();
        assert!((1..=2).contains(&u));
        let d = BallMatrix::from_rationals(&[vec![q(3, 1), q(0, 1)], vec![q(0, 1), q(4, 1)]], 128).unwrap();
        assert!(d.op_norm_upper() >= 4);
        let l = d.op_norm_lower();
        assert!((3..=4).contains(&l));
        let e2 = BallVector::unit(2, 1, 128);
        assert_eq!(d.norm_lower_with_witness(&e2), 4);
        assert_eq!(BallMatrix::zeros(3, 3, 64).op_norm_lower(), 0);
        let idl = id.op_norm_lower();
        assert!(idl <= 1 && idl >= 0.999);
    }

    #[test]
    fn lambda_min_examples() {
        let id = BallMatrix::identity(3, 256);
        let l = hermitian_lambda_min_lower(&id, 256, true).unwrap();
        assert!(l <= 1);
        assert!(l >= Float::with_val(300, 1) - Float::with_val(300, Float::u_exp(1, -254)));
        let d = BallMatrix::from_rationals(&[vec![q(2, 1), q(0, 1)], vec![q(0, 1), q(3, 1)]], 128).unwrap();
        let l = hermitian_lambda_min_lower(&d, 128, true).unwrap();
        assert!(l <= 2 && l > Float::with_val(128, 2) - Float::with_val(128, Float::u_exp(1, -100)));
        let neg = BallMatrix::from_rationals(&[vec![q(-1, 1), q(0, 1)], vec![q(0, 1), q(3, 1)]], 128).unwrap();
        assert!(matches!(
            hermitian_lambda_min_lower(&neg, 128, true),
            Err(Error::PrecisionTooLow(_))
        ));
        let l = hermitian_lambda_min_lower(&neg, 128, false).unwrap();
        assert!(l <= -1 && l > Float::with_val(128, -1) - Float::with_val(128, Float::u_exp(1, -100)));
    }

    #[test]
    fn lambda_min_rejects_non_hermitian() {
        let m = BallMatrix::from_rationals(&[vec![q(1, 1), q(1, 1)], vec![q(0, 1), q(1, 1)]], 64).unwrap();
        assert!(matches!(
            hermitian_lambda_min_lower(&m, 64, false),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn orthocomplement_small_cases() {
        let e1 = BallVector::unit(2, 0, 128);
        let id2 = vec![vec![1, 0], vec![0, 1]];
        let out = orthocomplement_basis(&std::slice::from_ref(&e1), &id2).unwrap();
        assert_eq!(out.len(), 1);
        assert!(out[0].dot(&e1).contains_zero());
        assert!(out[0].0[1].contains(&q(1, 1), &q(0, 1)));

        let h = BallVector::from_integers(&[1, 0, 0], 128);
        let g = vec![vec![4, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let out = orthocomplement_basis(&std::slice::from_ref(&h), &g).unwrap();
        assert_eq!(out.len(), 2);
        for v in &out {
            let gh = BallVector::from_integers(&[4, 0, 0], 128);
            assert!(v.dot(&gh).contains_zero());
            assert!(v.norm_sq().contains(&q(1, 1), &q(0, 1)));
        }
        assert!(out[0].hdot(&out[1]).contains_zero());
    }

    #[test]
    fn orthocomplement_dependent_inputs() {
        let v = BallVector::unit(3, 0, 128);
        let g = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert!(matches!(
            orthocomplement_basis(&[v.clone(), v], &g),
            Err(Error::PrecisionTooLow(_))
        ));
    }
}

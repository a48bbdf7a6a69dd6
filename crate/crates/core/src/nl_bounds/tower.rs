//! Tower numbers: positive reals stored as themselves, as their `log₂`, or
//! as their `log₂log₂`, each with a rounding direction.
//!
//! A [`TowerReal`] represents the number obtained by reading its stored
//! value at its level. An `Up` value is meant as an upper bound for some
//! quantity, a `Down` value as a lower bound, and every operation rounds in
//! the direction of its result so that this meaning survives.
//!
//! Levels 1 and 2 only represent numbers `> 0` and `> 1` respectively.
//! Arithmetic that involves a level above 0 expects nonnegative operands.

use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::ops::AssignRound;
use rug::{Float, Integer};
use serde::{Deserialize, Serialize};

use crate::ball::{dyadic_to_decimal, parse_decimal};
use crate::error::{Error, Result};

/// Default precision of stored values.
pub const TOWER_PREC: u32 = 128;
/// Level-0 values above `2^64` are promoted to level 1.
const LEVEL0_LIMIT_LOG2: u32 = 64;
/// Level-1 values above `2^53` are promoted to level 2.
const LEVEL1_LIMIT_LOG2: u32 = 53;
/// Highest precision tried by [`TowerReal::compare`].
const COMPARE_MAX_PREC: u32 = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn round(self) -> Round {
        match self {
            Direction::Up => Round::Up,
            Direction::Down => Round::Down,
        }
    }

    pub fn flip(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Down => "down",
        }
    }
}

fn flip(r: Round) -> Round {
    match r {
        Round::Up => Round::Down,
        Round::Down => Round::Up,
        other => other,
    }
}

#[inline]
fn rnd<T>(prec: u32, v: T, r: Round) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, r).0
}

/// `log₂(2^a + 2^b)` rounded in direction `r`.
fn log2_sum(a: &Float, b: &Float, r: Round, prec: u32) -> Float {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    let t = rnd(prec, lo - hi, r);
    let e = rnd(prec, t.exp2_ref(), r);
    let s = rnd(prec, &e + 1u32, r);
    let l = rnd(prec, s.log2_ref(), r);
    rnd(prec, hi + &l, r)
}

/// Positive real stored at tower level 0, 1 or 2.
#[derive(Clone, Debug)]
pub struct TowerReal {
    level: u8,
    value: Float,
    dir: Direction,
}

impl TowerReal {
    fn raw(level: u8, value: Float, dir: Direction) -> TowerReal {
        TowerReal { level, value, dir }.promoted()
    }

    /// Level-0 number `x`, promoted when large.
    pub fn from_float(x: Float, dir: Direction) -> TowerReal {
        Self::raw(0, x, dir)
    }

    pub fn from_i64(x: i64, dir: Direction) -> TowerReal {
        Self::raw(0, Float::with_val(64, x), dir)
    }

    /// The integer `n`, rounded in `dir` if it does not fit the precision.
    pub fn from_integer(n: &Integer, dir: Direction) -> TowerReal {
        let prec = TOWER_PREC.max(64);
        if n.significant_bits() <= LEVEL0_LIMIT_LOG2 {
            return Self::raw(0, rnd(prec, n, dir.round()), dir);
        }
        let x = rnd(prec, n, dir.round());
        Self::raw(1, rnd(prec, x.log2_ref(), dir.round()), dir)
    }

    /// The number `2^v`.
    pub fn from_log2(v: Float, dir: Direction) -> TowerReal {
        Self::raw(1, v, dir)
    }

    /// The number `2^(2^v)`.
    pub fn from_log2log2(v: Float, dir: Direction) -> TowerReal {
        Self::raw(2, v, dir)
    }

    pub fn zero(dir: Direction) -> TowerReal {
        Self::raw(0, Float::new(64), dir)
    }

    pub fn level(&self) -> u8 {
        self.level
    }

    /// Stored value at [`level`](Self::level).
    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    /// Same number tagged with another direction. Only meaningful when the
    /// caller knows the represented value is exact.
    pub fn retag(mut self, dir: Direction) -> TowerReal {
        self.dir = dir;
        self
    }

    fn promoted(mut self) -> TowerReal {
        let r = self.dir.round();
        let prec = self.value.prec().max(64);
        if self.level == 0 && self.value > Float::u_exp(1, LEVEL0_LIMIT_LOG2 as i32) {
            self.value = rnd(prec, self.value.log2_ref(), r);
            self.level = 1;
        }
        if self.level == 1 && self.value > Float::u_exp(1, LEVEL1_LIMIT_LOG2 as i32) {
            self.value = rnd(prec, self.value.log2_ref(), r);
            self.level = 2;
        }
        self
    }

    /// Represented number read at `target ≥ level`, rounded in `r`. `None`
    /// when the number is too small to live at that level.
    fn lift(&self, target: u8, r: Round, prec: u32) -> Option<Float> {
        let mut v = rnd(prec, &self.value, r);
        let mut level = self.level;
        while level < target {
            if level == 0 && v <= 0 {
                return None;
            }
            if level == 1 && v <= 0 {
                return None;
            }
            v = rnd(prec, v.log2_ref(), r);
            level += 1;
        }
        Some(v)
    }

    /// Represented number read at `target ≤ level`, rounded in `r`. `None`
    /// when the result overflows the float exponent range.
    fn lower(&self, target: u8, r: Round, prec: u32) -> Option<Float> {
        let mut v = rnd(prec, &self.value, r);
        let mut level = self.level;
        while level > target {
            v = rnd(prec, v.exp2_ref(), r);
            if !v.is_finite() {
                return None;
            }
            level -= 1;
        }
        Some(v)
    }

    /// Value at `level`, in either direction.
    fn at(&self, level: u8, r: Round, prec: u32) -> Option<Float> {
        if level >= self.level {
            self.lift(level, r, prec)
        } else {
            self.lower(level, r, prec)
        }
    }

    /// `log₂` of the represented number, rounded in `r`, if it is finite.
    pub fn log2(&self, r: Round) -> Option<Float> {
        self.at(1, r, self.prec().max(64))
    }

    /// `log₂log₂` of the represented number, rounded in `r`, if defined.
    pub fn log2log2(&self, r: Round) -> Option<Float> {
        self.at(2, r, self.prec().max(64))
    }

    /// The number itself as a float, if finite.
    pub fn to_float(&self, r: Round) -> Option<Float> {
        self.at(0, r, self.prec().max(64))
    }

    fn is_zero(&self) -> bool {
        self.level == 0 && self.value.is_zero()
    }

    fn require_nonnegative(&self, op: &str) {
        assert!(
            self.level > 0 || self.value >= 0,
            "tower {op} with a negative operand at a higher level"
        );
    }

    /// Product, rounded in the direction of `self`.
    pub fn mul(&self, o: &TowerReal) -> TowerReal {
        let dir = self.dir;
        let r = dir.round();
        let prec = self.prec().max(o.prec()).max(64);
        if self.level == 0 && o.level == 0 {
            return Self::raw(0, rnd(prec, &self.value * &o.value, r), dir);
        }
        self.require_nonnegative("mul");
        o.require_nonnegative("mul");
        if self.is_zero() || o.is_zero() {
            return Self::zero(dir);
        }
        let (big, small) = if self.level >= o.level { (self, o) } else { (o, self) };
        let s1 = small.lift(1.min(big.level), r, prec).expect("positive operand");
        if big.level == 1 {
            return Self::raw(1, rnd(prec, &big.value + &s1, r), dir);
        }
        match small.lift(2, r, prec) {
            Some(s2) if small.level == 2 => Self::raw(2, log2_sum(&big.value, &s2, r, prec), dir),
            _ => {
                // log₂(xy) = 2^a + log₂y
                let e = rnd(prec, big.value.exp2_ref(), r);
                let t = rnd(prec, &e + &s1, r);
                if e.is_finite() && t > 0 {
                    Self::raw(1, t, dir)
                } else if s1 >= 0 {
                    let l = rnd(prec, s1.log2_ref(), r);
                    Self::raw(2, log2_sum(&big.value, &l, r, prec), dir)
                } else {
                    // y < 1: a factor below one moves log₂log₂ by at most
                    // log₂(1 + log₂y / 2^a).
                    let l = rnd(prec, -&s1, flip(r));
                    let ll = rnd(prec, l.log2_ref(), flip(r));
                    let d = rnd(prec, &ll - &big.value, flip(r));
                    let t = rnd(prec, d.exp2_ref(), flip(r));
                    let one_minus = rnd(prec, 1u32 - &t, r);
                    assert!(one_minus > 0, "tower product not representable at level 2");
                    let lg = rnd(prec, one_minus.log2_ref(), r);
                    Self::raw(2, rnd(prec, &big.value + &lg, r), dir)
                }
            }
        }
    }

    /// Sum of two nonnegative numbers, rounded in the direction of `self`.
    pub fn add(&self, o: &TowerReal) -> TowerReal {
        let dir = self.dir;
        let r = dir.round();
        let prec = self.prec().max(o.prec()).max(64);
        if self.level == 0 && o.level == 0 {
            return Self::raw(0, rnd(prec, &self.value + &o.value, r), dir);
        }
        self.require_nonnegative("add");
        o.require_nonnegative("add");
        if self.is_zero() {
            return o.clone().retag(dir).rounded(prec);
        }
        if o.is_zero() {
            return self.clone();
        }
        let (big, small) = if self.level >= o.level { (self, o) } else { (o, self) };
        if big.level == 1 {
            let s = small.lift(1, r, prec).expect("positive operand");
            return Self::raw(1, log2_sum(&big.value, &s, r, prec), dir);
        }
        // Level 2: log₂(x + y) lies between log₂max and log₂max + 1.
        let hi = match small.lift(2, r, prec) {
            Some(s) if s > big.value => s,
            _ => rnd(prec, &big.value, r),
        };
        match dir {
            Direction::Down => Self::raw(2, hi, dir),
            Direction::Up => {
                // log₂(2^hi + 1)
                let zero = Float::new(prec);
                Self::raw(2, log2_sum(&hi, &zero, r, prec), dir)
            }
        }
    }

    fn rounded(mut self, prec: u32) -> TowerReal {
        if self.value.prec() > prec {
            self.value = rnd(prec, &self.value, self.dir.round());
        }
        self
    }

    /// `self^e` for a real exponent `e > 0`.
    pub fn pow(&self, e: &Float) -> TowerReal {
        assert!(*e > 0, "tower power needs a positive exponent");
        self.require_nonnegative("pow");
        let dir = self.dir;
        let r = dir.round();
        let prec = self.prec().max(e.prec()).max(64);
        if self.is_zero() {
            return Self::zero(dir);
        }
        match self.level {
            0 => {
                let l = rnd(prec, self.value.log2_ref(), r);
                let l = rnd(prec, &l * e, r);
                let v = rnd(prec, l.exp2_ref(), r);
                if v.is_finite() && !v.is_zero() {
                    Self::raw(0, v, dir)
                } else {
                    Self::raw(1, l, dir)
                }
            }
            1 => Self::raw(1, rnd(prec, &self.value * e, r), dir),
            _ => {
                let le = rnd(prec, e.log2_ref(), r);
                Self::raw(2, rnd(prec, &self.value + &le, r), dir)
            }
        }
    }

    /// `2^self`: moves a level-0 or level-1 number one level up.
    pub fn exp2(&self) -> TowerReal {
        assert!(self.level < 2, "exp2 of a level-2 tower number needs level 3");
        let mut v = self.clone();
        v.level += 1;
        v.promoted()
    }

    /// Certified comparison of the represented numbers. `Equal` is returned
    /// when they agree to [`COMPARE_MAX_PREC`] bits at their common level.
    pub fn compare(&self, o: &TowerReal) -> Ordering {
        if self.level == o.level {
            return self.value.partial_cmp(&o.value).expect("finite tower values");
        }
        let (lo, hi, swapped) = if self.level < o.level {
            (self, o, false)
        } else {
            (o, self, true)
        };
        let ord = Self::compare_lifted(lo, hi);
        if swapped {
            ord.reverse()
        } else {
            ord
        }
    }

    fn compare_lifted(lo: &TowerReal, hi: &TowerReal) -> Ordering {
        let mut prec = lo.prec().max(hi.prec()).max(64) * 2;
        loop {
            let Some(up) = lo.lift(hi.level, Round::Up, prec) else {
                return Ordering::Less;
            };
            if up < hi.value {
                return Ordering::Less;
            }
            if let Some(down) = lo.lift(hi.level, Round::Down, prec) {
                if down > hi.value {
                    return Ordering::Greater;
                }
                if up == down {
                    return Ordering::Equal;
                }
            }
            if prec >= COMPARE_MAX_PREC {
                return Ordering::Equal;
            }
            prec *= 2;
        }
    }

    pub fn le(&self, o: &TowerReal) -> bool {
        self.compare(o) != Ordering::Greater
    }

    pub fn lt(&self, o: &TowerReal) -> bool {
        self.compare(o) == Ordering::Less
    }

    pub fn max(&self, o: &TowerReal) -> TowerReal {
        if self.compare(o) == Ordering::Less {
            o.clone().retag(self.dir)
        } else {
            self.clone()
        }
    }

    pub fn min(&self, o: &TowerReal) -> TowerReal {
        if self.compare(o) == Ordering::Greater {
            o.clone().retag(self.dir)
        } else {
            self.clone()
        }
    }

    /// Rendering with the level spelled out, e.g. `log2log2 = 12.5 (up)`.
    pub fn describe(&self) -> String {
        let name = match self.level {
            0 => "value",
            1 => "log2",
            _ => "log2log2",
        };
        format!("{name} = {} ({})", short_decimal(&self.value), self.dir.tag())
    }

    pub fn to_record(&self) -> TowerRecord {
        TowerRecord {
            level: self.level,
            value: dyadic_to_decimal(&self.value),
            direction: self.dir,
        }
    }

    pub fn from_record(rec: &TowerRecord) -> Result<TowerReal> {
        if rec.level > 2 {
            return Err(Error::Parse(format!("tower level {} out of range", rec.level)));
        }
        let q = parse_decimal(&rec.value)?;
        // dyadic records are read back exactly
        let prec = TOWER_PREC.max(q.numer().significant_bits()).min(COMPARE_MAX_PREC);
        let v = rnd(prec, &q, rec.direction.round());
        Ok(TowerReal {
            level: rec.level,
            value: v,
            dir: rec.direction,
        })
    }
}

/// Serialized tower number with an exact decimal value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerRecord {
    pub level: u8,
    pub value: String,
    pub direction: Direction,
}

/// Twelve significant digits, for display only.
/// Decimal rendering with at most 12 significant digits.
pub fn short_decimal(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix_round(10, Some(12), Round::Nearest);
    match s.split_once('e') {
        Some((m, e)) => format!("{}e{}", trim_mantissa(m), e),
        None => trim_mantissa(&s).to_string(),
    }
}

fn trim_mantissa(m: &str) -> &str {
    if m.contains('.') {
        m.trim_end_matches('0').trim_end_matches('.')
    } else {
        m
    }
}

impl fmt::Display for TowerReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            0 => write!(f, "{}", short_decimal(&self.value)),
            1 => write!(f, "2^({})", short_decimal(&self.value)),
            _ => write!(f, "2^2^({})", short_decimal(&self.value)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(x: f64) -> Float {
        Float::with_val(128, x)
    }

    #[test]
    fn promotion_thresholds() {
        let t = TowerReal::from_float(f(2f64.powi(70)), Direction::Up);
        assert_eq!(t.level(), 1);
        assert_eq!(*t.value(), 70);
        let t = TowerReal::from_log2(f(2f64.powi(60)), Direction::Up);
        assert_eq!(t.level(), 2);
        assert_eq!(*t.value(), 60);
        let t = TowerReal::from_i64(1000, Direction::Down);
        assert_eq!(t.level(), 0);
    }

    #[test]
    fn mul_and_pow_across_levels() {
        let a = TowerReal::from_log2(f(100.0), Direction::Up);
        let b = TowerReal::from_i64(8, Direction::Up);
        let p = a.mul(&b);
        assert_eq!(p.level(), 1);
        assert_eq!(*p.value(), 103);
        let q = TowerReal::from_log2log2(f(80.0), Direction::Up).mul(&a);
        assert_eq!(q.level(), 2);
        assert!(*q.value() >= 80);
        let r = a.pow(&f(3.0));
        assert_eq!(*r.value(), 300);
        let s = TowerReal::from_log2log2(f(80.0), Direction::Up).pow(&f(4.0));
        assert_eq!(*s.value(), 82);
    }

    #[test]
    fn product_with_small_factor_at_level_two() {
        let x = TowerReal::from_log2log2(f(100.0), Direction::Down);
        let y = TowerReal::from_float(f(0.25), Direction::Down);
        let p = x.mul(&y);
        assert_eq!(p.level(), 2);
        assert!(*p.value() <= 100);
        assert!(*p.value() > 99);
    }

    #[test]
    fn add_brackets() {
        let a = TowerReal::from_log2(f(10.0), Direction::Up);
        let b = TowerReal::from_log2(f(10.0), Direction::Up);
        let s = a.add(&b);
        assert_eq!(*s.value(), 11);
        let big = TowerReal::from_log2log2(f(70.0), Direction::Up);
        let s = big.add(&TowerReal::from_i64(5, Direction::Up));
        assert!(*s.value() >= 70);
        let d = TowerReal::from_log2log2(f(70.0), Direction::Down).add(&TowerReal::from_i64(5, Direction::Down));
        assert_eq!(*d.value(), 70);
    }

    #[test]
    fn compare_exact_powers() {
        let a = TowerReal::from_float(f(1024.0), Direction::Up);
        let b = TowerReal::from_log2(f(10.0), Direction::Up);
        assert_eq!(a.compare(&b), Ordering::Equal);
        let c = TowerReal::from_log2log2(f(10.0), Direction::Up);
        let d = TowerReal::from_log2(f(1023.0), Direction::Up);
        assert_eq!(d.compare(&c), Ordering::Less);
        assert_eq!(c.compare(&d), Ordering::Greater);
        let neg = TowerReal::from_float(f(-3.0), Direction::Up);
        assert_eq!(neg.compare(&c), Ordering::Less);
    }

    #[test]
    fn record_roundtrip() {
        let t = TowerReal::from_log2log2(f(123.375), Direction::Up);
        let r = t.to_record();
        let back = TowerReal::from_record(&r).unwrap();
        assert_eq!(back.compare(&t), Ordering::Equal);
        assert_eq!(back.direction(), Direction::Up);
        assert!(t.describe().starts_with("log2log2 = 123.375"));
    }

    proptest! {
        #[test]
        fn cross_level_order_matches_direct(x in 1.0f64..1e300, y in 1.5f64..1e300) {
            // x at level 0 against y stored at level 1 as log₂y, both read exactly
            let xt = TowerReal::from_float(f(x), Direction::Up);
            let ly = Float::with_val(128, f(y).log2_ref());
            let yt = TowerReal::from_log2(ly.clone(), Direction::Up);
            let direct = f(x).partial_cmp(&Float::with_val(512, ly.exp2_ref())).unwrap();
            prop_assert_eq!(xt.compare(&yt), direct);
        }

        #[test]
        fn up_products_never_underestimate(a in 1.0f64..1e10, b in 1.0f64..1e10) {
            let at = TowerReal::from_log2(f(a.log2()), Direction::Up);
            let bt = TowerReal::from_log2(f(b.log2()), Direction::Up);
            let p = at.mul(&bt);
            let exact = Float::with_val(256, &at.to_float(Round::Down).unwrap() * &bt.to_float(Round::Down).unwrap());
            let up = p.to_float(Round::Up).unwrap();
            prop_assert!(up >= exact);
        }
    }
}

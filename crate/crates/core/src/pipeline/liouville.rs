//! Divisor chains `θ₀ | θ₁ | …` behind Liouville-type numbers `Σ 1/θᵢ`.

use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::nl_bounds::{Direction, TowerReal};

/// Exponent in `θᵢ₊₁ ≥ 2↑2↑θᵢ↑10`.
pub const GROWTH_EXPONENT: u32 = 10;

/// A chain element, given exactly or by a tower number too large to write.
#[derive(Clone, Debug)]
pub enum ChainEntry {
    Exact(Integer),
    Descriptor(TowerReal),
}

impl ChainEntry {
    fn as_tower(&self, dir: Direction) -> TowerReal {
        match self {
            ChainEntry::Exact(n) => TowerReal::from_integer(n, dir),
            ChainEntry::Descriptor(t) => t.clone(),
        }
    }

    fn is_positive(&self) -> bool {
        match self {
            ChainEntry::Exact(n) => *n > 0,
            ChainEntry::Descriptor(t) => t.level() > 0 || *t.value() > 0,
        }
    }
}

impl From<Integer> for ChainEntry {
    fn from(n: Integer) -> Self {
        ChainEntry::Exact(n)
    }
}

impl From<u64> for ChainEntry {
    fn from(n: u64) -> Self {
        ChainEntry::Exact(Integer::from(n))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainMode {
    DivisorOnly,
    DivisorAndGrowth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    NonPositive,
    Strictness,
    Divisibility,
    Growth,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::NonPositive => "non-positive",
            ViolationKind::Strictness => "strictness",
            ViolationKind::Divisibility => "divisibility",
            ViolationKind::Growth => "growth",
        })
    }
}

/// First failing pair `(θ_index, θ_index+1)`, or the failing entry for
/// [`ViolationKind::NonPositive`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub violation: Option<Violation>,
    /// Pairs whose divisibility could not be checked because an entry is a
    /// descriptor.
    pub unchecked_divisibility: Vec<usize>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.violation {
            None => f.write_str("PASS")?,
            Some(v) => write!(f, "FAIL at index {} ({})", v.index, v.kind)?,
        }
        if !self.unchecked_divisibility.is_empty() {
            let list: Vec<String> = self.unchecked_divisibility.iter().map(usize::to_string).collect();
            write!(f, " [divisibility unchecked at {}]", list.join(", "))?;
        }
        Ok(())
    }
}

/// Whether `log₂log₂b ≥ a^10` is certified.
fn grows_enough(a: &ChainEntry, b: &ChainEntry) -> bool {
    let Some(ll) = b.as_tower(Direction::Down).log2log2(Round::Down) else {
        return false;
    };
    let lhs = TowerReal::from_float(ll, Direction::Down);
    let rhs = a
        .as_tower(Direction::Up)
        .pow(&Float::with_val(64, GROWTH_EXPONENT));
    lhs.compare(&rhs) != Ordering::Less
}

/// Checks strict divisibility and, in growth mode, `θᵢ₊₁ ≥ 2↑2↑θᵢ↑10` for
/// every consecutive pair.
pub fn liouville_growth_check(theta: &[ChainEntry], mode: ChainMode) -> Result<ChainReport> {
    if theta.is_empty() {
        return Err(Error::InvalidInput("empty chain".into()));
    }
    let mut unchecked = Vec::new();
    let fail = |index, kind, unchecked: Vec<usize>| ChainReport {
        violation: Some(Violation { index, kind }),
        unchecked_divisibility: unchecked,
    };
    if let Some(i) = theta.iter().position(|t| !t.is_positive()) {
        return Ok(fail(i, ViolationKind::NonPositive, unchecked));
    }
    for (i, pair) in theta.windows(2).enumerate() {
        match (&pair[0], &pair[1]) {
            (ChainEntry::Exact(a), ChainEntry::Exact(b)) => {
                if a == b {
                    return Ok(fail(i, ViolationKind::Strictness, unchecked));
                }
                if !b.is_divisible(a) {
                    return Ok(fail(i, ViolationKind::Divisibility, unchecked));
                }
            }
            (a, b) => {
                let ord = a.as_tower(Direction::Up).compare(&b.as_tower(Direction::Down));
                if ord != Ordering::Less {
                    return Ok(fail(i, ViolationKind::Strictness, unchecked));
                }
                unchecked.push(i);
            }
        }
        if mode == ChainMode::DivisorAndGrowth && !grows_enough(&pair[0], &pair[1]) {
            return Ok(fail(i, ViolationKind::Growth, unchecked));
        }
    }
    Ok(ChainReport {
        violation: None,
        unchecked_divisibility: unchecked,
    })
}

/// `l_k = Σ 1/θᵢ = u_k/θ_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialSum {
    pub value: Rational,
    pub u: Integer,
    pub theta_k: Integer,
}

/// Exact partial sum of a strict divisor chain of positive integers.
pub fn liouville_partial_sum(theta: &[Integer]) -> Result<PartialSum> {
    let Some(last) = theta.last() else {
        return Err(Error::InvalidInput("empty chain".into()));
    };
    for (i, t) in theta.iter().enumerate() {
        if *t <= 0 {
            return Err(Error::ChainViolation { index: i });
        }
    }
    for (i, pair) in theta.windows(2).enumerate() {
        if pair[0] == pair[1] || !pair[1].is_divisible(&pair[0]) {
            return Err(Error::ChainViolation { index: i });
        }
    }
    let mut u = Integer::new();
    for t in theta {
        u += Integer::from(last / t);
    }
    if u > Integer::from(last * 2u32) {
        return Err(Error::LedgerInconsistency(format!(
            "partial sum numerator {u} exceeds twice the last denominator"
        )));
    }
    Ok(PartialSum {
        value: Rational::from((u.clone(), last.clone())),
        u,
        theta_k: last.clone(),
    })
}

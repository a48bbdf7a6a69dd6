//! Membership of an integral class in the Picard group.

use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::{Float, Integer};

use super::constants::SeparationConstants;
use super::period::PeriodData;
use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::lattice::{LatticeClass, RANK};
use crate::nl_bounds::{Direction, TowerReal};

/// Why a class is algebraic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InReason {
    /// `γ = n·h`.
    Hyperplane,
    /// `|γ·ω| < ε(Δ)`.
    SmallPairing,
}

/// Why a class is not algebraic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutReason {
    /// The pairing ball excludes zero.
    NonzeroPairing,
    /// `Δ(γ) ≤ 0` while `γ ∉ Zh`, impossible for a class in the Picard
    /// group of signature `(1, ρ−1)`.
    HodgeIndex,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    InPicard(InReason),
    NotInPicard(OutReason),
    /// Neither bound is certified; `required_bits` bounds the number of
    /// correct bits of `γ·ω` needed to decide.
    Inconclusive { required_bits: TowerReal },
    /// The pairing is certified nonzero and below `ε(Δ)` at once.
    InternalInconsistency,
}

/// Coarse verdict classes, for comparisons between runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    InPicard,
    NotInPicard,
    Inconclusive,
    InternalInconsistency,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::InPicard(_) => VerdictKind::InPicard,
            Verdict::NotInPicard(_) => VerdictKind::NotInPicard,
            Verdict::Inconclusive { .. } => VerdictKind::Inconclusive,
            Verdict::InternalInconsistency => VerdictKind::InternalInconsistency,
        }
    }

    pub fn is_conclusive(&self) -> bool {
        matches!(self, Verdict::InPicard(_) | Verdict::NotInPicard(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::InPicard(InReason::Hyperplane) => f.write_str("InPicard (hyperplane class)"),
            Verdict::InPicard(InReason::SmallPairing) => f.write_str("InPicard (pairing below epsilon)"),
            Verdict::NotInPicard(OutReason::NonzeroPairing) => f.write_str("NotInPicard (pairing excludes 0)"),
            Verdict::NotInPicard(OutReason::HodgeIndex) => {
                f.write_str("NotInPicard (discriminant <= 0 off the hyperplane line)")
            }
            Verdict::Inconclusive { required_bits } => {
                write!(f, "Inconclusive (required bits: {})", required_bits.describe())
            }
            Verdict::InternalInconsistency => f.write_str("InternalInconsistency"),
        }
    }
}

/// A verdict with the data it was derived from.
#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    /// `Δ(γ)`.
    pub delta: Integer,
    /// Enclosure of `γ·ω`, absent when the period data was not needed.
    pub pairing: Option<Ball>,
    /// `1/ε(Δ)`, absent when `Δ ≤ 0`.
    pub inv_epsilon: Option<TowerReal>,
    pub test_mode: bool,
}

/// `1/|b|` as a lower-rounded tower number, `None` for `b ∋ 0` with zero
/// upper bound.
fn inverse_upper_abs(b: &Ball) -> Option<TowerReal> {
    let ub = b.abs_upper();
    if ub.is_zero() {
        return None;
    }
    let l = Float::with_val_round(ub.prec().max(64), ub.log2_ref(), Round::Up).0;
    Some(TowerReal::from_log2(-l, Direction::Down))
}

/// Decides whether `γ` lies in the Picard group of the quartic behind `p`.
pub fn decide(gamma: &LatticeClass, p: &PeriodData, consts: &SeparationConstants) -> Result<Decision> {
    if gamma.0.len() != RANK {
        return Err(Error::ShapeMismatch(format!(
            "class has {} coordinates, expected {RANK}",
            gamma.0.len()
        )));
    }
    let lattice = p.lattice();
    let delta = lattice.discriminant(gamma);
    let base = |verdict, pairing, inv_epsilon| Decision {
        verdict,
        delta: delta.clone(),
        pairing,
        inv_epsilon,
        test_mode: consts.test_mode,
    };
    if lattice.multiple_of_h(gamma).is_some() {
        return Ok(base(Verdict::InPicard(InReason::Hyperplane), None, None));
    }
    if delta <= 0 {
        return Ok(base(Verdict::NotInPicard(OutReason::HodgeIndex), None, None));
    }
    let b = p.omega().pairings.dot_integers(&gamma.0);
    let inv_eps = consts.inv_epsilon(&delta);
    let nonzero = b.abs_lower() > 0;
    let small = match inverse_upper_abs(&b) {
        None => true,
        Some(inv) => inv.compare(&inv_eps) == Ordering::Greater,
    };
    let verdict = match (nonzero, small) {
        (true, true) => Verdict::InternalInconsistency,
        (true, false) => Verdict::NotInPicard(OutReason::NonzeroPairing),
        (false, true) => Verdict::InPicard(InReason::SmallPairing),
        (false, false) => Verdict::Inconclusive {
            required_bits: consts.required_bits(&delta),
        },
    };
    Ok(base(verdict, Some(b), Some(inv_eps)))
}

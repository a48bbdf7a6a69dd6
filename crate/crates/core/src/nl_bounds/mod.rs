//! Noether–Lefschetz index arithmetic and explicit degree and height bounds
//! for the loci `NL_{d,g}` and `NL_Δ`.
//!
//! Two families of bounds are exposed. The *ledger* bounds follow the
//! dimension count over the incidence variety of a given `(d, g)` and use
//! exact multinomial coefficients. The *closed* bounds are the uniform
//! formulas `deg NL_Δ ≤ 3^{(Δ+20)^{9/2}}` and
//! `log₂‖NL_Δ‖₁ ≤ (Δ+60)^5·3^{(Δ+20)^{9/2}}`.
//!
//! All bounds are [`TowerReal`]s rounded up.

pub mod tower;

use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::lattice::is_admissible_delta;
pub use tower::{short_decimal, Direction, TowerReal, TowerRecord, TOWER_PREC};

/// Degree `d = γ·h` and genus `g` with `γ·γ = 2g − 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DGIndex {
    pub d: i64,
    pub g: i64,
}

impl DGIndex {
    pub fn new(d: i64, g: i64) -> DGIndex {
        DGIndex { d, g }
    }

    /// `Δ(d, g) = d² − 8g + 8`.
    pub fn delta(&self) -> i128 {
        let d = self.d as i128;
        d * d - 8 * self.g as i128 + 8
    }
}

impl std::fmt::Display for DGIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.d, self.g)
    }
}

/// Smallest `t ≥ 0` with `16t² ≥ Δ`, i.e. `⌈√Δ / 4⌉`.
fn ceil_quarter_sqrt(delta: i64) -> i64 {
    let s = Integer::from(delta).sqrt();
    let mut t = s.to_i64().expect("small") / 4;
    while 16 * t * t < delta {
        t += 1;
    }
    while t > 0 && 16 * (t - 1) * (t - 1) >= delta {
        t -= 1;
    }
    t
}

/// The index `(d, g)` with `NL_Δ = NL_{d,g}`, or `None` when `NL_Δ` is empty
/// (`Δ ≤ 0` or `Δ mod 8 ∉ {0, 1, 4}`).
pub fn delta_to_dg(delta: i64) -> Option<DGIndex> {
    if delta <= 0 {
        return None;
    }
    let t = ceil_quarter_sqrt(delta);
    let (d, g) = match delta % 8 {
        0 => (4 * t, 2 * t * t + (8 - delta) / 8),
        1 => (4 * t + 1, 2 * t * t + t + (9 - delta) / 8),
        4 => (4 * t + 2, 2 * t * t + 2 * t + (12 - delta) / 8),
        _ => return None,
    };
    Some(DGIndex { d, g })
}

/// One step of the descent `(d, g) → (d − 4, g − d + 2)`, if it stays valid.
pub fn descend(dg: DGIndex) -> Option<DGIndex> {
    let next = DGIndex {
        d: dg.d - 4,
        g: dg.g - dg.d + 2,
    };
    (next.d >= 1 && next.g >= 0).then_some(next)
}

/// Canonical representative of `NL_{d,g}` under `NL_{d,g} = NL_{−d,g}` and
/// `NL_{d,g} = NL_{d+4, g+d+2}`.
pub fn normalize_dg(d: i64, g: i64) -> Result<DGIndex> {
    if d == 0 {
        return Err(Error::InvalidIndex("degree d = 0".into()));
    }
    if g < 0 {
        return Err(Error::InvalidIndex(format!("negative genus {g}")));
    }
    let mut cur = DGIndex { d: d.abs(), g };
    while let Some(next) = descend(cur) {
        debug_assert_eq!(next.delta(), cur.delta());
        cur = next;
    }
    Ok(cur)
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1i128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Gotzmann number `max(C(d,2) + 1 − g, 4)` of the Hilbert polynomial
/// `t ↦ dt + 1 − g`.
pub fn gotzmann_r(dg: DGIndex) -> i64 {
    let d = dg.d as i128;
    let r = (binom(d, 2) + 1 - dg.g as i128).max(4);
    i64::try_from(r).expect("Gotzmann number fits in i64")
}

/// Dimensions entering the incidence-variety count for `NL_{d,g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertDims {
    pub dg: DGIndex,
    pub r: i128,
    pub n_r: i128,
    pub n_r_minus_3: i128,
    pub n_r_minus_4: i128,
    pub n_r_plus_1: i128,
    pub p_r_plus_1: i128,
    pub q_r: i128,
    pub alpha: i128,
    pub beta: i128,
    pub alpha_prime: i128,
    pub beta_prime: i128,
    pub s: i128,
    pub l: i128,
}

impl HilbertDims {
    /// `α + β − α′ − β′ + 1`, the power of `(Lη + θ₁ + θ₂ + θ₃)` bounding
    /// the class of the locus.
    pub fn exponent(&self) -> i128 {
        self.alpha + self.beta - self.alpha_prime - self.beta_prime + 1
    }

    /// Exponent of `θ₂` in the extracted coefficient.
    pub fn theta2_exponent(&self) -> i128 {
        self.alpha - self.alpha_prime
    }

    /// Exponent of `θ₃` in the extracted coefficient.
    pub fn theta3_exponent(&self) -> i128 {
        self.beta - self.beta_prime
    }

    pub fn sl(&self) -> i128 {
        self.s * self.l
    }
}

/// `N_m = dim R_m = C(m+3, 3)`, zero for negative `m`.
pub fn slice_dim(m: i128) -> i128 {
    if m < 0 {
        0
    } else {
        binom(m + 3, 3)
    }
}

pub fn hilbert_dims(dg: DGIndex) -> Result<HilbertDims> {
    if dg.d < 1 || dg.g < 0 || dg.delta() <= 0 {
        return Err(Error::InvalidIndex(format!("{dg} has Δ = {}", dg.delta())));
    }
    let (d, g) = (dg.d as i128, dg.g as i128);
    let r = gotzmann_r(dg) as i128;
    let p = |m: i128| d * m + 1 - g;
    let q = |m: i128| slice_dim(m) - p(m);
    let n_r = slice_dim(r);
    let n_r_minus_3 = slice_dim(r - 3);
    let n_r_minus_4 = slice_dim(r - 4);
    let n_r_plus_1 = slice_dim(r + 1);
    let p_r_plus_1 = p(r + 1);
    let q_r = q(r);
    let free = q_r - n_r_minus_4;
    let named = [("p(r+1)", p_r_plus_1), ("q(r)", q_r), ("q(r) - N_(r-4)", free)];
    for (name, v) in named {
        if v < 0 {
            return Err(Error::LedgerInconsistency(format!("{name} = {v} < 0 for {dg}")));
        }
    }
    let alpha = free * n_r - 1;
    let beta = p_r_plus_1 * n_r_plus_1 - 1;
    let beta_prime = p_r_plus_1 * p_r_plus_1 - 1;
    let alpha_prime = free * q_r - 1;
    let s = p_r_plus_1 * n_r_minus_3 + 4 * p_r_plus_1 * free;
    let l = n_r;
    let dims = HilbertDims {
        dg,
        r,
        n_r,
        n_r_minus_3,
        n_r_minus_4,
        n_r_plus_1,
        p_r_plus_1,
        q_r,
        alpha,
        beta,
        alpha_prime,
        beta_prime,
        s,
        l,
    };
    if dims.theta2_exponent() < 0 || dims.theta3_exponent() < 0 {
        return Err(Error::LedgerInconsistency(format!(
            "negative fibre codimension for {dg}"
        )));
    }
    let bound = Integer::from(d + 2).pow(15);
    if dims.sl() > bound {
        return Err(Error::LedgerInconsistency(format!(
            "s·L = {} exceeds (d+2)^15 = {bound} for {dg}",
            dims.sl()
        )));
    }
    Ok(dims)
}

/// Exact multinomial coefficient `(Σkᵢ)! / Πkᵢ!`.
pub fn multinomial(ks: &[u64]) -> Integer {
    let mut acc = Integer::from(1);
    let mut n = 0u64;
    for &k in ks {
        for j in 1..=k {
            n += 1;
            acc *= n;
            acc /= j;
        }
    }
    acc
}

/// Largest exponent for which [`chow_coeff`] evaluates the multinomial
/// exactly instead of through log-gamma.
const EXACT_MULTINOMIAL_LIMIT: u64 = 4096;

fn checked_exponent(v: i128, what: &str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::InvalidInput(format!("{what} = {v} is negative or too large")))
}

/// `log₂ (N! / Πkᵢ!)` rounded up, with `N = Σkᵢ`.
fn log2_multinomial_up(ks: &[u64], prec: u32) -> Float {
    let n: u64 = ks.iter().sum();
    let lg = |k: u64, r: Round| {
        let x = Float::with_val(prec, k + 1);
        Float::with_val_round(prec, x.ln_gamma_ref(), r).0
    };
    let mut ln = lg(n, Round::Up);
    for &k in ks {
        let t = lg(k, Round::Down);
        ln = Float::with_val_round(prec, &ln - &t, Round::Up).0;
    }
    if ln < 0 {
        ln = Float::new(prec);
    }
    let ln2 = Float::with_val_round(prec, rug::float::Constant::Log2, Round::Down).0;
    Float::with_val_round(prec, &ln / &ln2, Round::Up).0
}

/// Coefficient of `η^{e_η} θ₁^{e₁} θ₂^{e₂} θ₃^{e₃}` in
/// `(Lη + θ₁ + θ₂ + θ₃)^N`, that is `L^{e_η}·N!/(e_η!·e₁!·e₂!·e₃!)`,
/// as an upper-rounded tower number.
pub fn chow_coeff(l: &Float, e_eta: u32, e1: i128, e2: i128, e3: i128, n: i128) -> Result<TowerReal> {
    if e_eta > 1 {
        return Err(Error::InvalidInput(format!("e_eta = {e_eta}, expected 0 or 1")));
    }
    if *l < 0 {
        return Err(Error::InvalidInput("negative L".into()));
    }
    let ks = [
        e_eta as u64,
        checked_exponent(e1, "e1")?,
        checked_exponent(e2, "e2")?,
        checked_exponent(e3, "e3")?,
    ];
    let n = checked_exponent(n, "N")?;
    if ks.iter().sum::<u64>() != n {
        return Err(Error::InvalidInput(format!(
            "exponents {ks:?} do not sum to N = {n}"
        )));
    }
    let base = if n <= EXACT_MULTINOMIAL_LIMIT {
        TowerReal::from_integer(&multinomial(&ks), Direction::Up)
    } else {
        TowerReal::from_log2(log2_multinomial_up(&ks, TOWER_PREC), Direction::Up)
    };
    if e_eta == 1 {
        Ok(base.mul(&TowerReal::from_float(l.clone(), Direction::Up)))
    } else {
        Ok(base)
    }
}

/// Weight of `η` in the bounding class: `15·ln(d+2) ≥ ln(sL)`, rounded up.
pub fn eta_weight(dg: DGIndex) -> Float {
    let x = Float::with_val(TOWER_PREC, dg.d + 2);
    let ln = Float::with_val_round(TOWER_PREC, x.ln_ref(), Round::Up).0;
    Float::with_val_round(TOWER_PREC, &ln * 15u32, Round::Up).0
}

/// Upper bound for `deg NL_{d,g}` from the dimension ledger, with fibre
/// dimension `e = 0`.
pub fn deg_bound_ledger(dg: DGIndex) -> Result<TowerReal> {
    let dims = hilbert_dims(dg)?;
    chow_coeff(
        &eta_weight(dg),
        0,
        1,
        dims.theta2_exponent(),
        dims.theta3_exponent(),
        dims.exponent(),
    )
}

/// Upper bound for `m(NL_{d,g})`, the `η`-coefficient of the class.
pub fn mahler_bound_ledger(dg: DGIndex) -> Result<TowerReal> {
    let dims = hilbert_dims(dg)?;
    chow_coeff(
        &eta_weight(dg),
        1,
        0,
        dims.theta2_exponent(),
        dims.theta3_exponent(),
        dims.exponent(),
    )
}

fn log2_const_up(x: u32) -> TowerReal {
    let v = Float::with_val(TOWER_PREC, x);
    TowerReal::from_float(Float::with_val_round(TOWER_PREC, v.log2_ref(), Round::Up).0, Direction::Up)
}

fn log2_e_up() -> TowerReal {
    let ln2 = Float::with_val_round(TOWER_PREC, rug::float::Constant::Log2, Round::Down).0;
    TowerReal::from_float(Float::with_val_round(TOWER_PREC, ln2.recip_ref(), Round::Up).0, Direction::Up)
}

/// Upper bound for `log₂‖NL_{d,g}‖₁`, via
/// `‖NL‖₁ ≤ exp(m(NL))·36^{deg NL}`.
pub fn height_bound_ledger(dg: DGIndex) -> Result<TowerReal> {
    let m = mahler_bound_ledger(dg)?;
    let deg = deg_bound_ledger(dg)?;
    Ok(m.mul(&log2_e_up()).add(&deg.mul(&log2_const_up(36))))
}

/// `(Δ+20)^{9/2}·log₂3`, rounded up, at `prec` bits.
fn closed_log2_deg(delta: i64, prec: u32) -> Float {
    let x = Float::with_val(prec, delta + 20);
    let x4 = Float::with_val_round(prec, Integer::from(delta + 20).pow(4), Round::Up).0;
    let sq = Float::with_val_round(prec, x.sqrt_ref(), Round::Up).0;
    let p = Float::with_val_round(prec, &x4 * &sq, Round::Up).0;
    let three = Float::with_val(prec, 3);
    let l3 = Float::with_val_round(prec, three.log2_ref(), Round::Up).0;
    Float::with_val_round(prec, &p * &l3, Round::Up).0
}

/// `deg NL_Δ ≤ 3^{(Δ+20)^{9/2}}` at `prec` bits.
pub fn deg_bound_closed_prec(delta: i64, prec: u32) -> TowerReal {
    assert!(delta > 0, "Δ must be positive");
    TowerReal::from_log2(closed_log2_deg(delta, prec), Direction::Up)
}

pub fn deg_bound_closed(delta: i64) -> TowerReal {
    deg_bound_closed_prec(delta, TOWER_PREC)
}

/// `log₂‖NL_Δ‖₁ ≤ (Δ+60)^5·3^{(Δ+20)^{9/2}}` at `prec` bits.
pub fn height_bound_closed_prec(delta: i64, prec: u32) -> TowerReal {
    assert!(delta > 0, "Δ must be positive");
    let x = Float::with_val(prec, delta + 60);
    let l = Float::with_val_round(prec, x.log2_ref(), Round::Up).0;
    let l5 = Float::with_val_round(prec, &l * 5u32, Round::Up).0;
    let v = Float::with_val_round(prec, &l5 + &closed_log2_deg(delta, prec), Round::Up).0;
    TowerReal::from_log2(v, Direction::Up)
}

pub fn height_bound_closed(delta: i64) -> TowerReal {
    height_bound_closed_prec(delta, TOWER_PREC)
}

/// One line of the ledger-versus-closed-form comparison.
#[derive(Clone, Debug)]
pub struct ComparisonRow {
    pub delta: i64,
    pub dg: DGIndex,
    pub dims: HilbertDims,
    pub ledger_deg: TowerReal,
    pub closed_deg: TowerReal,
    pub ledger_height: TowerReal,
    pub closed_height: TowerReal,
}

impl ComparisonRow {
    pub fn deg_dominated(&self) -> bool {
        self.ledger_deg.le(&self.closed_deg)
    }

    pub fn height_dominated(&self) -> bool {
        self.ledger_height.le(&self.closed_height)
    }
}

pub fn compare_row(delta: i64) -> Result<Option<ComparisonRow>> {
    let Some(dg) = delta_to_dg(delta) else {
        return Ok(None);
    };
    let dims = hilbert_dims(dg)?;
    Ok(Some(ComparisonRow {
        delta,
        dg,
        dims,
        ledger_deg: deg_bound_ledger(dg)?,
        closed_deg: deg_bound_closed(delta),
        ledger_height: height_bound_ledger(dg)?,
        closed_height: height_bound_closed(delta),
    }))
}

/// Comparison rows for every admissible `Δ` in `lo..=hi`.
pub fn comparison_report(lo: i64, hi: i64) -> Result<Vec<ComparisonRow>> {
    let mut rows = Vec::new();
    for delta in lo.max(1)..=hi {
        if !is_admissible_delta(delta) {
            continue;
        }
        if let Some(row) = compare_row(delta)? {
            rows.push(row);
        }
    }
    Ok(rows)
}

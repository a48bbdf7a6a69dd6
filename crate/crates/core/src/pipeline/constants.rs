//! The separation constants `C`, `Γ`, `C_f`, `ε_f` and `c`.
//!
//! Every certified ingredient is evaluated on the precision ladder
//! `64, 128, …, prec` from the exact period records and the best value is
//! kept, so raising the precision along the ladder can only improve each
//! constant in its rounding direction.

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use super::period::PeriodData;
use crate::ball::{
    dyadic_to_decimal, hermitian_lambda_min_lower, orthocomplement_basis, parse_decimal, BallMatrix,
    BallVector,
};
use crate::error::{Error, Result};
use crate::nl_bounds::{Direction, TowerReal, TowerRecord};
use crate::poly::{monomial_basis, QPoly};
use crate::reduction::{build_q12, gamma_upper_bound};

/// Lowest precision of the ladder.
const LADDER_BASE: u32 = 64;

/// Precisions `64, 128, …` strictly below `prec`, followed by `prec`.
pub fn precision_ladder(prec: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = LADDER_BASE;
    while p < prec {
        out.push(p);
        p *= 2;
    }
    out.push(prec.max(LADDER_BASE));
    out
}

fn rnd<T>(prec: u32, v: T, r: Round) -> Float
where
    Float: rug::ops::AssignRound<T, Round = Round, Ordering = std::cmp::Ordering>,
{
    Float::with_val_round(prec, v, r).0
}

/// Result of the eigenvalue bound behind the lemma constant.
#[derive(Clone, Debug)]
pub struct LemmaBound {
    /// Certified lower bound on the smallest eigenvalue of `Q|_E`.
    pub lambda_min: Float,
    /// `min(1, ½·sqrt(λ_min/35))`, rounded down.
    pub c_lemma: Float,
}

/// The `22 × 35` matrix with columns `−A(m·f)` over the quartic monomials.
pub fn derivative_matrix(a: &BallMatrix, f: &QPoly) -> BallMatrix {
    let cols: Vec<BallVector> = monomial_basis(4)
        .into_iter()
        .map(|m| {
            let v = super::period::apply_to_poly(a, &f.mul_monomial(&m));
            BallVector(v.0.iter().map(|b| b.neg()).collect())
        })
        .collect();
    BallMatrix::from_columns(&cols).expect("columns share a length")
}

/// Hermitian matrix of `Q(u) = ‖Dᵀu‖²` on the complement `E` of `h` and `ω̄`,
/// in a Hermitian-orthonormal ball basis of `E`.
pub fn restricted_form(p: &PeriodData, prec: u32) -> Result<BallMatrix> {
    let a = p.a_at(prec);
    let om = super::period::omega_invariants(p.lattice(), &super::period::omega_from_a(&a, p.f()));
    let h = BallVector::from_integers(p.lattice().h_coords(), prec);
    let basis = orthocomplement_basis(&[h, om.coords.clone()], p.lattice().gram())?;
    let y = BallMatrix::from_columns(&basis)?;
    let d = derivative_matrix(&a, p.f());
    let w = d.transpose().mul(&y);
    Ok(w.conj_transpose().mul(&w))
}

fn lemma_at(p: &PeriodData, prec: u32) -> Result<Float> {
    let m = restricted_form(p, prec)?;
    hermitian_lambda_min_lower(&m, prec, true)
}

/// `C = min(1, ½·sqrt(λ_min/35))` for the restriction of `Q` to `E`.
///
/// Fails with [`Error::PrecisionTooLow`] when no positive eigenvalue bound
/// can be certified at any precision of the ladder.
pub fn lemma_constant_c(p: &PeriodData, prec: u32) -> Result<LemmaBound> {
    let mut best: Option<Float> = None;
    let mut last_err = None;
    for q in precision_ladder(prec) {
        match lemma_at(p, q) {
            Ok(l) => {
                let l = rnd(prec, &l, Round::Down);
                best = Some(match best {
                    Some(b) if b >= l => b,
                    _ => l,
                });
            }
            Err(e @ Error::PrecisionTooLow(_)) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    let lambda_min = match best {
        Some(l) => l,
        None => return Err(last_err.expect("ladder is nonempty")),
    };
    let t = rnd(prec, &lambda_min / 35u32, Round::Down);
    let s = rnd(prec, t.sqrt_ref(), Round::Down);
    let c = rnd(prec, &s / 2u32, Round::Down).min(&Float::with_val(prec, 1));
    Ok(LemmaBound { lambda_min, c_lemma: c })
}

/// Best upper bound on `‖A‖` over the ladder.
fn norm_a_upper(p: &PeriodData, prec: u32) -> Float {
    precision_ladder(prec)
        .into_iter()
        .map(|q| rnd(prec, &p.a_at(q).op_norm_upper(), Round::Up))
        .reduce(|a, b| a.min(&b))
        .expect("ladder is nonempty")
}

/// Best bounds `(lower(ω·ω̄), upper‖ω‖)` over the ladder.
fn omega_bounds(p: &PeriodData, prec: u32) -> (Float, Float) {
    let mut lo = Float::new(prec);
    let mut hi: Option<Float> = None;
    for q in precision_ladder(prec) {
        let om = p.omega_at(q);
        lo = lo.max(&rnd(prec, &om.hermitian_lower(), Round::Down));
        let n = rnd(prec, &om.norm_upper, Round::Up);
        hi = Some(match hi {
            Some(h) if h <= n => h,
            _ => n,
        });
    }
    (lo, hi.expect("ladder is nonempty"))
}

/// Projective height data of a quartic with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalHeight {
    /// The coefficients scaled to coprime integers.
    pub primitive: Vec<Integer>,
    /// `max |cᵢ|` over the primitive coefficients.
    pub max_coeff: Integer,
}

/// Clears denominators and common factors of `f`'s coefficients.
pub fn rational_height(f: &QPoly) -> RationalHeight {
    let l = f.denominator_lcm();
    let ints: Vec<Integer> = f
        .terms()
        .map(|(_, c)| {
            let q = Rational::from(c * &l);
            q.numer().clone()
        })
        .collect();
    let g = ints.iter().fold(Integer::new(), |acc, x| acc.gcd(x));
    let primitive: Vec<Integer> = if g == 0 {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    };
    let max_coeff = primitive.iter().map(|x| x.clone().abs()).max().unwrap_or_default();
    RationalHeight { primitive, max_coeff }
}

/// Absolute logarithmic Weil height `ln max|cᵢ|` of a rational quartic,
/// rounded up, with field degree `D = 1`.
pub fn weil_height_rational(f: &QPoly, prec: u32) -> (u32, Float) {
    let h = rational_height(f);
    let x = rnd(prec, &h.max_coeff, Round::Up);
    let ln = if x <= 1 {
        Float::new(prec)
    } else {
        rnd(prec, x.ln_ref(), Round::Up)
    };
    (1, ln)
}

/// Certified constants of the separation bound for one quartic.
#[derive(Clone, Debug)]
pub struct SeparationConstants {
    /// Lemma constant `C`, rounded down.
    pub c_lemma: Float,
    /// Smallest-eigenvalue bound behind `C`, rounded down.
    pub lambda_min: Float,
    /// Upper bound on the Newton constant `Γ`.
    pub gamma_up: Float,
    /// `C_f = 2/C`, rounded up.
    pub c_f: Float,
    /// `ε_f`, rounded down.
    pub eps_f: Float,
    /// The constant `c`, rounded up; stored as `2^{log₂c}`.
    pub c: TowerReal,
    pub field_degree: u32,
    /// Height `H`, rounded up.
    pub height: Float,
    /// Exact `‖Q₁₂‖`.
    pub q12_norm: Rational,
    /// Upper bound on `‖A‖`.
    pub norm_a_up: Float,
    pub precision: u32,
    /// Set when `c` was overridden for testing; verdicts are then unsound.
    pub test_mode: bool,
}

/// Upper bound on `‖f‖₁`.
fn f_norm_up(f: &QPoly, prec: u32) -> Float {
    rnd(prec, &f.one_norm(), Round::Up)
}

/// `log₂c` as described on [`assemble_constants`].
fn log2_c(f: &QPoly, c_f: &Float, eps_f: &Float, d: u32, h: &Float, prec: u32) -> Float {
    let up = Round::Up;
    let log2 = |x: &Float, r: Round| rnd(prec, x.log2_ref(), r);
    let ln2 = rnd(prec, Constant::Log2, Round::Down);
    let log2e = rnd(prec, ln2.recip_ref(), up);
    // K(1) = D(1 + 61^5) + D·H·log₂e + log₂(‖f‖₁ + 1)
    let p5 = rnd(prec, Integer::from(61u32).pow(5) + 1u32, up);
    let k1 = rnd(prec, &p5 * d, up);
    let dh = rnd(prec, h * d, up);
    let dh = rnd(prec, &dh * &log2e, up);
    let fn1 = rnd(prec, f_norm_up(f, prec) + 1u32, up);
    let lf = log2(&fn1, up);
    let k1 = rnd(prec, &k1 + &dh, up);
    let k1 = rnd(prec, &k1 + &lf, up);
    let lcf = log2(c_f, up);
    let inner = rnd(prec, &k1 + &lcf, up);
    let inner = rnd(prec, &inner + 3u32, up);
    let base = {
        let x = Float::with_val(prec, 21);
        let x4 = rnd(prec, Integer::from(21u32).pow(4), up);
        let s = rnd(prec, x.sqrt_ref(), up);
        let p = rnd(prec, &x4 * &s, up);
        let l3 = log2(&Float::with_val(prec, 3), up);
        rnd(prec, &p * &l3, up)
    };
    let chain = rnd(prec, &base + &log2(&inner, up), up);
    // F = max(log₂(1/ε_f), log₂C_f)
    let inv = rnd(prec, eps_f.recip_ref(), up);
    let f_floor = log2(&inv, up).max(&lcf).max(&Float::new(prec));
    let floor = log2(&rnd(prec, &f_floor + 3u32, up), up);
    chain.max(&floor)
}

/// `Δ^{9/2}`, rounded in `r`.
fn delta_power(delta: &Integer, prec: u32, r: Round) -> Float {
    let x = rnd(prec, delta, r);
    let x4 = rnd(prec, Integer::from(delta.pow(4u32)), r);
    let s = rnd(prec, x.sqrt_ref(), r);
    rnd(prec, &x4 * &s, r)
}

impl SeparationConstants {
    pub fn log2_c(&self) -> Float {
        self.c.log2(Round::Up).expect("c is stored at level 1")
    }

    /// `log₂log₂(1/ε(Δ)) = Δ^{9/2}·log₂c`, rounded up.
    fn loglog_inv_eps(&self, delta: &Integer) -> Float {
        let prec = self.precision.max(64);
        let p = delta_power(delta, prec, Round::Up);
        rnd(prec, &p * &self.log2_c(), Round::Up)
    }

    /// `1/ε(Δ) = 2↑c↑Δ↑(9/2)` as an upper-rounded tower number.
    pub fn inv_epsilon(&self, delta: &Integer) -> TowerReal {
        TowerReal::from_log2log2(self.loglog_inv_eps(delta), Direction::Up)
    }

    /// `⌈log₂(1/ε(Δ))⌉ ≤ c^{Δ^{9/2}}`: the bits of precision on the pairing
    /// needed to certify membership.
    pub fn required_bits(&self, delta: &Integer) -> TowerReal {
        TowerReal::from_log2(self.loglog_inv_eps(delta), Direction::Up)
    }

    /// Replaces `c` by `2^{log2_c}` and marks the constants as test-only.
    pub fn with_test_log2_c(mut self, log2_c: Float) -> SeparationConstants {
        self.c = TowerReal::from_log2(log2_c, Direction::Up);
        self.test_mode = true;
        self
    }

    pub fn to_cache(&self, provenance: Provenance) -> ConstantsCache {
        ConstantsCache {
            provenance,
            c_lemma: dyadic_to_decimal(&self.c_lemma),
            lambda_min: dyadic_to_decimal(&self.lambda_min),
            gamma_up: dyadic_to_decimal(&self.gamma_up),
            c_f: dyadic_to_decimal(&self.c_f),
            eps_f: dyadic_to_decimal(&self.eps_f),
            c: self.c.to_record(),
            field_degree: self.field_degree,
            height: dyadic_to_decimal(&self.height),
            q12_norm: self.q12_norm.to_string(),
            norm_a_up: dyadic_to_decimal(&self.norm_a_up),
            rounding: RoundingTags::default(),
        }
    }

    pub fn from_cache(cache: &ConstantsCache) -> Result<SeparationConstants> {
        let prec = cache.provenance.precision.max(64);
        let read = |s: &str, r: Round| -> Result<Float> { Ok(rnd(prec, &parse_decimal(s)?, r)) };
        let q12_norm = crate::poly::parse_coprime_fraction(&cache.q12_norm).map_err(Error::Parse)?;
        Ok(SeparationConstants {
            c_lemma: read(&cache.c_lemma, Round::Down)?,
            lambda_min: read(&cache.lambda_min, Round::Down)?,
            gamma_up: read(&cache.gamma_up, Round::Up)?,
            c_f: read(&cache.c_f, Round::Up)?,
            eps_f: read(&cache.eps_f, Round::Down)?,
            c: TowerReal::from_record(&cache.c)?,
            field_degree: cache.field_degree,
            height: read(&cache.height, Round::Up)?,
            q12_norm,
            norm_a_up: read(&cache.norm_a_up, Round::Up)?,
            precision: cache.provenance.precision,
            test_mode: cache.provenance.test_mode,
        })
    }
}

/// Where a set of constants came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub precision: u32,
    pub test_mode: bool,
    pub monomial_order: String,
    /// Free-form descriptions of the inputs, e.g. file names.
    pub inputs: Vec<String>,
}

/// Rounding direction of each cached field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundingTags {
    pub c_lemma: Direction,
    pub lambda_min: Direction,
    pub gamma_up: Direction,
    pub c_f: Direction,
    pub eps_f: Direction,
    pub c: Direction,
    pub height: Direction,
    pub norm_a_up: Direction,
}

impl Default for RoundingTags {
    fn default() -> Self {
        RoundingTags {
            c_lemma: Direction::Down,
            lambda_min: Direction::Down,
            gamma_up: Direction::Up,
            c_f: Direction::Up,
            eps_f: Direction::Down,
            c: Direction::Up,
            height: Direction::Up,
            norm_a_up: Direction::Up,
        }
    }
}

/// Serialized [`SeparationConstants`] with exact decimal values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsCache {
    pub provenance: Provenance,
    pub c_lemma: String,
    pub lambda_min: String,
    pub gamma_up: String,
    pub c_f: String,
    pub eps_f: String,
    pub c: TowerRecord,
    pub field_degree: u32,
    pub height: String,
    pub q12_norm: String,
    pub norm_a_up: String,
    pub rounding: RoundingTags,
}

impl ConstantsCache {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cache serializes")
    }

    pub fn from_json(s: &str) -> Result<ConstantsCache> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Assembles the constants, computing `‖Q₁₂‖` from scratch.
pub fn assemble_constants(p: &PeriodData, field_degree: u32, height: &Float) -> Result<SeparationConstants> {
    let q = build_q12(p.f())?;
    assemble_constants_with(p, q.norm(), field_degree, height)
}

/// Assembles the constants at the working precision of `p`.
///
/// With `K(Δ) = D(1 + (Δ+60)^5) + D·H·log₂e + log₂(‖f‖₁ + 1)` the explicit
/// chain `log₂C_f + 3^{(Δ+20)^{9/2}}·K(Δ)` bounds `log₂(1/ε)` from the
/// Liouville step, and `F = max(log₂(1/ε_f), log₂C_f)` is the floor.
/// Then `log₂c = max(21^{9/2}·log₂3 + log₂(K(1) + log₂C_f + 3), log₂(F + 3))`
/// gives `c^{Δ^{9/2}} ≥ 3 + max(chain(Δ), F)` for every `Δ ≥ 1`.
pub fn assemble_constants_with(
    p: &PeriodData,
    q12_norm: &Rational,
    field_degree: u32,
    height: &Float,
) -> Result<SeparationConstants> {
    if field_degree == 0 {
        return Err(Error::InvalidInput("field degree must be positive".into()));
    }
    if *height < 0 || height.is_nan() {
        return Err(Error::InvalidInput("height must be non-negative".into()));
    }
    let prec = p.prec().max(64);
    let lemma = lemma_constant_c(p, prec)?;
    let norm_a_up = norm_a_upper(p, prec);
    let gamma_up = rnd(prec, &gamma_upper_bound(q12_norm, &norm_a_up)?, Round::Up);
    let c_f = rnd(prec, 2u32 / &lemma.c_lemma, Round::Up);
    let (herm_lo, norm_hi) = omega_bounds(p, prec);
    let c2 = rnd(prec, lemma.c_lemma.square_ref(), Round::Down);
    let g34 = rnd(prec, &gamma_up * 34u32, Round::Up);
    let e1 = rnd(prec, &c2 / &g34, Round::Down);
    let n2 = rnd(prec, &norm_hi * 2u32, Round::Up);
    let e2 = rnd(prec, &herm_lo / &n2, Round::Down);
    let eps_f = e1.min(&e2);
    if eps_f <= 0 {
        return Err(Error::PrecisionTooLow("epsilon_f is not certified positive".into()));
    }
    let height = rnd(prec, height, Round::Up);
    let l2c = log2_c(p.f(), &c_f, &eps_f, field_degree, &height, prec);
    Ok(SeparationConstants {
        c_lemma: lemma.c_lemma,
        lambda_min: lemma.lambda_min,
        gamma_up,
        c_f,
        eps_f,
        c: TowerReal::from_log2(l2c, Direction::Up),
        field_degree,
        height,
        q12_norm: q12_norm.clone(),
        norm_a_up,
        precision: prec,
        test_mode: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::fermat_quartic;

    #[test]
    fn ladder_shapes() {
        assert_eq!(precision_ladder(64), vec![64]);
        assert_eq!(precision_ladder(256), vec![64, 128, 256]);
        assert_eq!(precision_ladder(200), vec![64, 128, 200]);
        assert_eq!(precision_ladder(32), vec![64]);
    }

    #[test]
    fn height_of_rational_quartics() {
        let (d, h) = weil_height_rational(&fermat_quartic(), 128);
        assert_eq!(d, 1);
        assert_eq!(h, 0);
        let f = QPoly::from_terms(
            4,
            [
                (crate::poly::Monomial([4, 0, 0, 0]), Rational::from((3, 2))),
                (crate::poly::Monomial([0, 4, 0, 0]), Rational::from((-9, 4))),
            ],
        )
        .unwrap();
        let rh = rational_height(&f);
        assert_eq!(rh.max_coeff, 3);
        let (_, h) = weil_height_rational(&f, 128);
        assert!((h.to_f64() - 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn log2_c_monotone_in_height() {
        let f = fermat_quartic();
        let prec = 128;
        let cf = Float::with_val(prec, 24);
        let ef = Float::with_val(prec, 1e-6);
        let a = log2_c(&f, &cf, &ef, 1, &Float::with_val(prec, 0), prec);
        let b = log2_c(&f, &cf, &ef, 1, &Float::with_val(prec, 5), prec);
        assert!(b > a);
        let base = 21f64.powf(4.5) * 3f64.log2();
        assert!(a.to_f64() > base);
    }
}

//! Synthetic period data with a planted class.
//!
//! The generator picks a random point `ω = a + i·b` of the period domain in
//! the reference lattice, a class `γ` in the `E₈(−1)²` part with a planted
//! pairing `γ·ω`, and a period matrix `A` whose derivative matrix `D` makes
//! the form `Q` the identity on the complement `E` of `h` and `ω̄`. All
//! constraints hold exactly for a point inside every ball of `A`.

use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Float, Rational};

use super::period::{pairings_from_coords, PeriodData, PERIOD_DEGREE};
use crate::ball::{orthocomplement_basis, Ball, BallMatrix, BallVector};
use crate::error::{Error, Result};
use crate::lattice::{LatticeClass, LatticeData, RANK};
use crate::poly::{monomial_basis, monomial_index, slice_dim, QPoly};
use crate::sample::fermat_quartic;

/// Precision of the intermediate ball computations.
const GEN_PREC: u32 = 320;
/// Precision of the stored midpoints.
const RECORD_PREC: u32 = 192;
/// Default `log₂` of the radius attached to every entry of `A`.
pub const DEFAULT_RADIUS_LOG2: i32 = -120;
/// `log₂` of the planted pairing of a [`FixtureKind::Band`] fixture.
pub const BAND_LOG2: i32 = -140;
/// Dimension of `E`.
const E_DIM: usize = RANK - 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureKind {
    /// `γ·ω = 0`: the class is algebraic.
    Zero,
    /// `|γ·ω|` of order one.
    Separated,
    /// `γ·ω ≠ 0` but far below the radius of the data.
    Band,
}

impl FixtureKind {
    /// Whether the planted class lies in the Picard group.
    pub fn in_picard(self) -> bool {
        self == FixtureKind::Zero
    }
}

#[derive(Clone, Debug)]
pub struct SyntheticOptions {
    pub kind: FixtureKind,
    pub seed: u64,
    /// Working precision of the returned [`PeriodData`].
    pub prec: u32,
    pub radius_log2: i32,
    /// Zero out one direction of `Q` on `E`.
    pub degenerate: bool,
    pub f: QPoly,
}

impl SyntheticOptions {
    pub fn new(kind: FixtureKind, seed: u64) -> SyntheticOptions {
        SyntheticOptions {
            kind,
            seed,
            prec: 256,
            radius_log2: DEFAULT_RADIUS_LOG2,
            degenerate: false,
            f: fermat_quartic(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SyntheticFixture {
    pub data: PeriodData,
    pub gamma: LatticeClass,
    pub kind: FixtureKind,
    /// Exact `γ·ω` is zero for [`FixtureKind::Zero`] and nonzero otherwise.
    pub planted_pairing_zero: bool,
}

pub fn synthetic_fixture(kind: FixtureKind, seed: u64) -> Result<SyntheticFixture> {
    synthetic_fixture_with(&SyntheticOptions::new(kind, seed))
}

type QVec = Vec<Rational>;

fn qdot(g: &[Vec<i64>], x: &[Rational], y: &[Rational]) -> Rational {
    let mut s = Rational::new();
    for (i, xi) in x.iter().enumerate() {
        if *xi == 0 {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if g[i][j] != 0 && *yj != 0 {
                s += Rational::from(xi * yj) * g[i][j];
            }
        }
    }
    s
}

fn axpy(x: &[Rational], s: &Rational, y: &[Rational]) -> QVec {
    x.iter().zip(y).map(|(a, b)| a + Rational::from(s * b)).collect()
}

fn small_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rational {
    Rational::from((rng.gen_range(-num..=num), den))
}

/// Random vector `u₁e₂ + v₁f₂ + u₂e₃ + v₂f₃ + δ` with `u, v > 0` and a small
/// `δ` in the `E₈` blocks.
fn positive_vector<R: Rng>(rng: &mut R) -> QVec {
    let mut v = vec![Rational::new(); RANK];
    for x in v.iter_mut().take(6).skip(2) {
        *x = Rational::from((rng.gen_range(4..=16), 4));
    }
    for x in v.iter_mut().skip(6) {
        *x = small_rational(rng, 4, 32);
    }
    v
}

fn planted_class<R: Rng>(rng: &mut R) -> Vec<i64> {
    loop {
        let mut g = vec![0i64; RANK];
        for x in g.iter_mut().skip(6).take(8) {
            *x = rng.gen_range(-2..=2);
        }
        if g.iter().any(|&x| x != 0) {
            return g;
        }
    }
}

/// `x − ((x·γ − t)/(γ·γ))·γ`, which pairs to `t` with `γ`.
fn project_to(g: &[Vec<i64>], x: &[Rational], gamma: &[Rational], t: &Rational) -> QVec {
    let gg = qdot(g, gamma, gamma);
    let s = -((qdot(g, x, gamma) - t) / gg);
    axpy(x, &s, gamma)
}

/// Real vectors `a`, `b₁` spanning a positive plane orthogonal to `h`, with
/// `a·b₁ = 0`, and the planted pairing with `γ` set by `kind`.
fn positive_plane<R: Rng>(rng: &mut R, g: &[Vec<i64>], gamma: &[i64], kind: FixtureKind) -> (QVec, QVec) {
    let gq: QVec = gamma.iter().map(|&x| Rational::from(x)).collect();
    let zero = Rational::new();
    let band = Float::with_val(64, Float::u_exp(1, BAND_LOG2)).to_rational().expect("finite");
    loop {
        let a0 = positive_vector(rng);
        let b0 = positive_vector(rng);
        let (a, b) = match kind {
            FixtureKind::Zero => (project_to(g, &a0, &gq, &zero), project_to(g, &b0, &gq, &zero)),
            FixtureKind::Band => (project_to(g, &a0, &gq, &band), project_to(g, &b0, &gq, &zero)),
            FixtureKind::Separated => (a0, b0),
        };
        let aa = qdot(g, &a, &a);
        if aa <= 0 {
            continue;
        }
        let s = -(qdot(g, &a, &b) / &aa);
        let b1 = axpy(&b, &s, &a);
        if qdot(g, &b1, &b1) <= 0 {
            continue;
        }
        if kind == FixtureKind::Separated && qdot(g, &a, &gq).abs() < (1, 64) {
            continue;
        }
        return (a, b1);
    }
}

/// Multiplication-by-`f` matrix: column `m` holds the coefficients of `m·f`.
fn multiplication_matrix(f: &QPoly) -> Vec<Vec<Rational>> {
    let rows = slice_dim(PERIOD_DEGREE);
    let basis = monomial_basis(4);
    let mut out = vec![vec![Rational::new(); basis.len()]; rows];
    for (j, m) in basis.iter().enumerate() {
        for (mono, c) in f.mul_monomial(m).terms() {
            out[monomial_index(mono)][j] = c.clone();
        }
    }
    out
}

fn invert_rational(mut a: Vec<Vec<Rational>>) -> Result<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| Rational::from(u32::from(i == j))).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != 0)
            .ok_or_else(|| Error::InvalidInput("multiplication by f is not injective".into()))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone().recip();
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x *= &p;
        }
        for r in 0..n {
            if r == col || a[r][col] == 0 {
                continue;
            }
            let s = a[r][col].clone();
            for k in 0..n {
                let t = Rational::from(&s * &a[col][k]);
                a[r][k] -= t;
                let t = Rational::from(&s * &inv[col][k]);
                inv[r][k] -= t;
            }
        }
    }
    Ok(inv)
}

/// Left inverse `(FᵀF)⁻¹Fᵀ` of the multiplication matrix.
fn left_inverse(fm: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let rows = fm.len();
    let cols = fm[0].len();
    let mut ftf = vec![vec![Rational::new(); cols]; cols];
    for row in fm {
        for i in 0..cols {
            if row[i] == 0 {
                continue;
            }
            for j in 0..cols {
                if row[j] != 0 {
                    ftf[i][j] += Rational::from(&row[i] * &row[j]);
                }
            }
        }
    }
    let inv = invert_rational(ftf)?;
    let mut out = vec![vec![Rational::new(); rows]; cols];
    for (i, out_row) in out.iter_mut().enumerate() {
        for (k, fr) in fm.iter().enumerate() {
            let mut s = Rational::new();
            for (j, x) in fr.iter().enumerate() {
                if *x != 0 {
                    s += Rational::from(&inv[i][j] * x);
                }
            }
            out_row[k] = s;
        }
    }
    Ok(out)
}

fn matrix_add(a: &BallMatrix, b: &BallMatrix) -> BallMatrix {
    let data = a.entries().iter().zip(b.entries()).map(|(x, y)| x.add(y)).collect();
    BallMatrix::new(a.rows(), a.cols(), data).expect("same shape")
}

/// Real `35 × 20` matrix with orthonormal columns `±e_m` over monomials
/// outside the support of `f`; the last column is zero when `degenerate`.
fn isometry<R: Rng>(rng: &mut R, f: &QPoly, degenerate: bool) -> Result<BallMatrix> {
    let basis = monomial_basis(4);
    let mut free: Vec<usize> = (0..basis.len()).filter(|&j| f.coeff(&basis[j]) == 0).collect();
    if free.len() < E_DIM {
        return Err(Error::InvalidInput(format!(
            "synthetic data needs {E_DIM} monomials outside the support of f, found {}",
            free.len()
        )));
    }
    free.shuffle(rng);
    let mut u = BallMatrix::zeros(basis.len(), E_DIM, GEN_PREC);
    for (k, &m) in free.iter().take(E_DIM).enumerate() {
        if degenerate && k == E_DIM - 1 {
            continue;
        }
        let s = if rng.gen_bool(0.5) { 1 } else { -1 };
        u.set(m, k, Ball::from_i64(s, GEN_PREC));
    }
    Ok(u)
}

/// Builds a fixture from `opts`.
pub fn synthetic_fixture_with(opts: &SyntheticOptions) -> Result<SyntheticFixture> {
    if opts.f.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: opts.f.degree(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let lattice = LatticeData::reference();
    let g = lattice.gram();
    let gamma = planted_class(&mut rng);
    let (a, b1) = positive_plane(&mut rng, g, &gamma, opts.kind);

    // ω = a + i·t·b₁ with t² = a·a / b₁·b₁
    let t2 = qdot(g, &a, &a) / qdot(g, &b1, &b1);
    let t = Ball::from_rational(&t2, GEN_PREC)
        .sqrt_real()
        .ok_or_else(|| Error::PrecisionTooLow("cannot take the square root".into()))?;
    let c = BallVector(
        a.iter()
            .zip(&b1)
            .map(|(x, y)| {
                let re = Ball::from_rational(x, GEN_PREC);
                let im = Ball::from_complex_rational(&Rational::new(), y, &Rational::new(), GEN_PREC);
                re.add(&im.mul(&t))
            })
            .collect(),
    );
    let p = pairings_from_coords(&lattice, &c);
    let h = BallVector::from_integers(lattice.h_coords(), GEN_PREC);
    let y = BallMatrix::from_columns(&orthocomplement_basis(&[h.clone(), c.clone()], g)?)?;

    // Π_E x = x − h(h·x)/4 − c̄(c·x)/(c·c̄)
    let gh = pairings_from_coords(&lattice, &h);
    let c_bar = c.conj();
    let inv_cc = c_bar
        .dot(&p)
        .recip()
        .ok_or_else(|| Error::PrecisionTooLow("omega.conj(omega) is not invertible".into()))?;
    let quarter = Ball::from_rational(&Rational::from((1, 4)), GEN_PREC);
    let mut proj = BallMatrix::identity(RANK, GEN_PREC);
    for i in 0..RANK {
        for j in 0..RANK {
            let e = proj
                .get(i, j)
                .sub(&h.0[i].mul(&gh.0[j]).mul(&quarter))
                .sub(&c_bar.0[i].mul(&p.0[j]).mul(&inv_cc));
            proj.set(i, j, e);
        }
    }

    // Dᵀ = U·Yᴴ·Π_E − f·pᵀ/‖f‖², so that Dᵀy = Uy on E and D·f = −p
    let u = isometry(&mut rng, &opts.f, opts.degenerate)?;
    let f_vec: Vec<Rational> = opts.f.to_dense();
    let f_norm2 = f_vec.iter().fold(Rational::new(), |s, x| s + Rational::from(x * x));
    let mut rank_one = BallMatrix::zeros(f_vec.len(), RANK, GEN_PREC);
    for (m, fm) in f_vec.iter().enumerate() {
        let s = Ball::from_rational(&Rational::from(fm / &f_norm2), GEN_PREC);
        for j in 0..RANK {
            rank_one.set(m, j, s.mul(&p.0[j]).neg());
        }
    }
    let dt = matrix_add(&u.mul(&y.conj_transpose().mul(&proj)), &rank_one);
    let d = dt.transpose();

    // A = −D·F⁺ + R − (R·F)·F⁺
    let fm = multiplication_matrix(&opts.f);
    let fplus = BallMatrix::from_rationals(&left_inverse(&fm)?, GEN_PREC)?;
    let fball = BallMatrix::from_rationals(&fm, GEN_PREC)?;
    let rdata: Vec<Ball> = (0..RANK * fm.len())
        .map(|_| {
            let re = small_rational(&mut rng, 4, 32);
            let im = small_rational(&mut rng, 4, 32);
            Ball::from_complex_rational(&re, &im, &Rational::new(), GEN_PREC)
        })
        .collect();
    let r = BallMatrix::new(RANK, fm.len(), rdata)?;
    let noise = matrix_add(&r, &r.mul(&fball).mul(&fplus).map(Ball::neg));
    let a_mat = matrix_add(&d.mul(&fplus).map(Ball::neg), &noise);
    let radius = Float::with_val(64, Float::u_exp(1, opts.radius_log2));
    let a_mat = a_mat.map(|b| b.with_prec(RECORD_PREC).add_error(&radius));

    let data = PeriodData::from_matrix(lattice, opts.f.clone(), &a_mat, opts.prec)?;
    Ok(SyntheticFixture {
        data,
        gamma: LatticeClass(gamma),
        kind: opts.kind,
        planted_pairing_zero: opts.kind == FixtureKind::Zero,
    })
}

/// Paths written by [`write_fixture_files`].
#[derive(Clone, Debug)]
pub struct FixturePaths {
    pub quartic: PathBuf,
    pub lattice: PathBuf,
    pub periods: PathBuf,
}

/// Writes the quartic, lattice and period files of `fx` into `dir`.
pub fn write_fixture_files(fx: &SyntheticFixture, dir: &Path) -> Result<FixturePaths> {
    let paths = FixturePaths {
        quartic: dir.join("quartic.json"),
        lattice: dir.join("lattice.json"),
        periods: dir.join("periods.json"),
    };
    std::fs::write(&paths.quartic, fx.data.f().to_json())?;
    std::fs::write(&paths.lattice, fx.data.lattice().to_json())?;
    std::fs::write(&paths.periods, fx.data.period_json())?;
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_inverse_of_fermat() {
        let fm = multiplication_matrix(&fermat_quartic());
        let li = left_inverse(&fm).unwrap();
        for i in 0..35 {
            for j in 0..35 {
                let s = (0..fm.len()).fold(Rational::new(), |s, k| s + Rational::from(&li[i][k] * &fm[k][j]));
                assert_eq!(s, Rational::from(u32::from(i == j)));
            }
        }
    }

    #[test]
    fn planted_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let lattice = LatticeData::reference();
        let g = lattice.gram();
        let gamma = planted_class(&mut rng);
        let gq: QVec = gamma.iter().map(|&x| Rational::from(x)).collect();
        let hq: QVec = lattice.h_coords().iter().map(|&x| Rational::from(x)).collect();
        for kind in [FixtureKind::Zero, FixtureKind::Band, FixtureKind::Separated] {
            let (a, b) = positive_plane(&mut rng, g, &gamma, kind);
            assert_eq!(qdot(g, &a, &b), 0);
            assert_eq!(qdot(g, &a, &hq), 0);
            assert_eq!(qdot(g, &b, &hq), 0);
            assert!(qdot(g, &a, &a) > 0 && qdot(g, &b, &b) > 0);
            match kind {
                FixtureKind::Zero => assert_eq!(qdot(g, &a, &gq), 0),
                FixtureKind::Band => {
                    assert!(qdot(g, &a, &gq) != 0);
                    assert!(qdot(g, &a, &gq).abs() < Rational::from((1, 1u64 << 60)));
                }
                FixtureKind::Separated => assert!(qdot(g, &a, &gq) != 0),
            }
        }
    }

    #[test]
    fn fixture_loads() {
        let fx = synthetic_fixture(FixtureKind::Zero, 1).unwrap();
        let om = fx.data.omega();
        assert!(om.validate().is_ok());
        assert!(om.pairings.dot_integers(&fx.gamma.0).contains_zero());
    }
}

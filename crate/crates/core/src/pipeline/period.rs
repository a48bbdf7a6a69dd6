//! Period matrices and their validation.

use rug::float::Round;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::ball::{Ball, BallMatrix, BallRecord, BallVector};
use crate::error::{Error, OmegaConstraint, Result};
use crate::lattice::{LatticeData, RANK};
use crate::poly::{monomial_basis, monomial_index, slice_dim, QPoly, NVARS};

/// Name of the monomial order recorded in period files.
pub const MONOMIAL_ORDER: &str = "graded-lex-descending w>x>y>z";
/// Degree of the numerators `a` in `∫ a/f³·Vol`.
pub const PERIOD_DEGREE: u32 = 8;

/// Periods of a quartic against an integral basis of `H²`.
///
/// Entry `(i, m)` of the matrix encloses `(1/2πi)∫_{T(γᵢ)} (m/f³)·Vol`,
/// where `T` is the tube map and `m` runs over the degree-8 monomials in
/// [`MONOMIAL_ORDER`]. Rows are pairing values against the basis of the
/// lattice, so the number `γ·ω` for a class with coordinates `γ` is
/// `Σ γᵢ·pᵢ`.
///
/// The exact decimal records are kept next to the balls so that the data
/// can be re-read at any precision without double rounding.
#[derive(Clone, Debug)]
pub struct PeriodData {
    lattice: LatticeData,
    f: QPoly,
    labels: Vec<String>,
    records: Vec<Vec<BallRecord>>,
    a: BallMatrix,
    prec: u32,
}

/// On-disk period matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodFile {
    pub monomial_order: String,
    pub degree: u32,
    pub monomials: Vec<[u32; NVARS]>,
    pub basis_labels: Vec<String>,
    pub rows: Vec<Vec<BallRecord>>,
}

/// Derived quantities of the period vector `ω` on which validation rests.
#[derive(Clone, Debug)]
pub struct OmegaInvariants {
    /// Pairing values `pᵢ = γᵢ·ω`.
    pub pairings: BallVector,
    /// Coordinates `G⁻¹p` of `ω`.
    pub coords: BallVector,
    pub h_pairing: Ball,
    pub self_pairing: Ball,
    /// `ω·ω̄`, a real ball.
    pub hermitian_pairing: Ball,
    /// Upper bound on the Euclidean norm of the coordinates.
    pub norm_upper: Float,
}

pub fn default_labels() -> Vec<String> {
    (0..RANK).map(|i| format!("b{i}")).collect()
}

fn check_shape(rows: usize, cols: usize) -> Result<()> {
    if rows != RANK {
        return Err(Error::ShapeMismatch(format!(
            "period matrix has {rows} rows, expected {RANK}"
        )));
    }
    let n = slice_dim(PERIOD_DEGREE);
    if cols != n {
        return Err(Error::ShapeMismatch(format!(
            "period matrix has {cols} columns, expected {n}"
        )));
    }
    Ok(())
}

/// `Σ_m q_m·A[:, m]` for a degree-8 polynomial `q`.
pub fn apply_to_poly(a: &BallMatrix, q: &QPoly) -> BallVector {
    assert_eq!(q.degree(), PERIOD_DEGREE, "periods act on degree-8 numerators");
    let prec = a.entries().first().map_or(crate::ball::DEFAULT_PREC, Ball::prec);
    let mut out = BallVector::zeros(a.rows(), prec);
    for (m, c) in q.terms() {
        let j = monomial_index(m);
        for i in 0..a.rows() {
            out.0[i] = out.0[i].add(&a.get(i, j).mul_rational(c));
        }
    }
    out
}

/// Pairing values `A(f²)` of the holomorphic form.
pub fn omega_from_a(a: &BallMatrix, f: &QPoly) -> BallVector {
    apply_to_poly(a, &f.pow(2))
}

/// `G⁻¹p` for pairing values `p`.
pub fn coords_from_pairings(lattice: &LatticeData, p: &BallVector) -> BallVector {
    BallVector(lattice.gram_inverse().iter().map(|row| p.dot_integers(row)).collect())
}

/// `G·c` for coordinates `c`.
pub fn pairings_from_coords(lattice: &LatticeData, c: &BallVector) -> BallVector {
    BallVector(lattice.gram().iter().map(|row| c.dot_integers(row)).collect())
}

pub fn omega_invariants(lattice: &LatticeData, p: &BallVector) -> OmegaInvariants {
    let c = coords_from_pairings(lattice, p);
    let h_pairing = p.dot_integers(lattice.h_coords());
    let self_pairing = c.dot(p);
    let herm = c.dot(&p.conj());
    // ω·ω̄ is real; drop the imaginary rounding noise into the radius
    let hermitian_pairing = Ball::real(herm.re().clone()).add_error(&herm.im().clone().abs()).add_error(herm.rad());
    let norm_upper = c.norm_upper();
    OmegaInvariants {
        pairings: p.clone(),
        coords: c,
        h_pairing,
        self_pairing,
        hermitian_pairing,
        norm_upper,
    }
}

impl OmegaInvariants {
    /// The three period-domain checks `ω·h = 0`, `ω·ω = 0`, `ω·ω̄ > 0`.
    pub fn validate(&self) -> Result<()> {
        if !self.h_pairing.contains_zero() {
            return Err(Error::OmegaConstraintViolated(OmegaConstraint::HyperplanePairing));
        }
        if !self.self_pairing.contains_zero() {
            return Err(Error::OmegaConstraintViolated(OmegaConstraint::SelfPairing));
        }
        if self.hermitian_pairing.re_lower() <= 0 {
            if self.hermitian_pairing.re_upper() <= 0 {
                return Err(Error::OmegaConstraintViolated(OmegaConstraint::Positivity));
            }
            return Err(Error::PrecisionTooLow(
                "cannot certify omega.conj(omega) > 0".into(),
            ));
        }
        Ok(())
    }

    /// Certified lower bound on `ω·ω̄`.
    pub fn hermitian_lower(&self) -> Float {
        let l = self.hermitian_pairing.re_lower();
        Float::with_val_round(crate::ball::RAD_PREC, &l, Round::Down).0
    }
}

impl PeriodData {
    /// Validated period data from exact records, read at `prec` bits.
    pub fn new(
        lattice: LatticeData,
        f: QPoly,
        labels: Vec<String>,
        records: Vec<Vec<BallRecord>>,
        prec: u32,
    ) -> Result<PeriodData> {
        if f.degree() != 4 {
            return Err(Error::DegreeMismatch {
                expected: 4,
                found: f.degree(),
            });
        }
        check_shape(records.len(), records.first().map_or(0, Vec::len))?;
        if labels.len() != RANK {
            return Err(Error::ShapeMismatch(format!(
                "{} basis labels, expected {RANK}",
                labels.len()
            )));
        }
        let a = BallMatrix::from_records(&records, prec)?;
        check_shape(a.rows(), a.cols())?;
        let data = PeriodData {
            lattice,
            f,
            labels,
            records,
            a,
            prec,
        };
        data.omega().validate()?;
        Ok(data)
    }

    /// Validated period data from a ball matrix; the balls are recorded
    /// exactly.
    pub fn from_matrix(lattice: LatticeData, f: QPoly, a: &BallMatrix, prec: u32) -> Result<PeriodData> {
        check_shape(a.rows(), a.cols())?;
        PeriodData::new(lattice, f, default_labels(), a.to_records(), prec)
    }

    pub fn lattice(&self) -> &LatticeData {
        &self.lattice
    }

    pub fn f(&self) -> &QPoly {
        &self.f
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn records(&self) -> &[Vec<BallRecord>] {
        &self.records
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// The period matrix at the working precision.
    pub fn a(&self) -> &BallMatrix {
        &self.a
    }

    /// The period matrix re-read from the exact records at `prec` bits.
    pub fn a_at(&self, prec: u32) -> BallMatrix {
        if prec == self.prec {
            return self.a.clone();
        }
        BallMatrix::from_records(&self.records, prec).expect("records were validated")
    }

    /// Same data at another working precision; validation is repeated.
    pub fn with_prec(&self, prec: u32) -> Result<PeriodData> {
        PeriodData::new(
            self.lattice.clone(),
            self.f.clone(),
            self.labels.clone(),
            self.records.clone(),
            prec,
        )
    }

    /// Pairing values of `ω` at the working precision.
    pub fn omega(&self) -> OmegaInvariants {
        self.omega_at(self.prec)
    }

    pub fn omega_at(&self, prec: u32) -> OmegaInvariants {
        omega_invariants(&self.lattice, &omega_from_a(&self.a_at(prec), &self.f))
    }

    pub fn to_period_file(&self) -> PeriodFile {
        PeriodFile {
            monomial_order: MONOMIAL_ORDER.into(),
            degree: PERIOD_DEGREE,
            monomials: monomial_basis(PERIOD_DEGREE).iter().map(|m| m.exps()).collect(),
            basis_labels: self.labels.clone(),
            rows: self.records.clone(),
        }
    }

    pub fn period_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_period_file()).expect("period file serializes")
    }
}

/// Parses and validates a period file against a quartic and a lattice.
pub fn parse_period_file(s: &str) -> Result<PeriodFile> {
    let file: PeriodFile = serde_json::from_str(s)?;
    if file.monomial_order != MONOMIAL_ORDER {
        return Err(Error::ShapeMismatch(format!(
            "monomial order {:?}, expected {MONOMIAL_ORDER:?}",
            file.monomial_order
        )));
    }
    if file.degree != PERIOD_DEGREE {
        return Err(Error::ShapeMismatch(format!(
            "period degree {}, expected {PERIOD_DEGREE}",
            file.degree
        )));
    }
    let expected: Vec<[u32; NVARS]> = monomial_basis(PERIOD_DEGREE).iter().map(|m| m.exps()).collect();
    if file.monomials != expected {
        return Err(Error::ShapeMismatch(
            "monomial header does not list the degree-8 basis in the expected order".into(),
        ));
    }
    if let Some((i, row)) = file.rows.iter().enumerate().find(|(_, r)| r.len() != expected.len()) {
        return Err(Error::ShapeMismatch(format!(
            "row {i} has {} entries, expected {}",
            row.len(),
            expected.len()
        )));
    }
    check_shape(file.rows.len(), expected.len())?;
    Ok(file)
}

/// Loads a quartic (polynomial records), a lattice and a period file, all
/// given as JSON text, and validates them at `prec` bits.
pub fn load_period_data(f_json: &str, lattice_json: &str, period_json: &str, prec: u32) -> Result<PeriodData> {
    let f = QPoly::from_json(f_json, Some(4))?;
    let lattice = LatticeData::from_json(lattice_json)?;
    let file = parse_period_file(period_json)?;
    PeriodData::new(lattice, f, file.basis_labels, file.rows, prec)
}

/// Like [`load_period_data`], reading from paths.
pub fn load_period_files(
    f_path: &std::path::Path,
    lattice_path: &std::path::Path,
    period_path: &std::path::Path,
    prec: u32,
) -> Result<PeriodData> {
    let f = std::fs::read_to_string(f_path)?;
    let l = std::fs::read_to_string(lattice_path)?;
    let p = std::fs::read_to_string(period_path)?;
    load_period_data(&f, &l, &p, prec)
}

//! Macaulay division by the Jacobian ideal of a quartic and the
//! Griffiths–Dwork reduction to pole order three.
//!
//! For a smooth quartic `f` every form of degree 12 lies in the Jacobian
//! ideal, so there are cubic-coefficient maps `Q₁₂: R₁₂ → R₉⁴` with
//! `m = Σᵢ Q₁₂(m)ᵢ·∂ᵢf`. [`build_q12`] fixes one such map: for each
//! degree-12 monomial it takes the solution of the `455 × 880` system
//! given by the reduced row echelon form with first-nonzero pivoting and free
//! variables set to zero. The unknowns are ordered `(i, m')` with `i` major,
//! `m'` running over `monomial_basis(9)`.
//!
//! The solve is carried out modulo several 62-bit primes and lifted by
//! Chinese remaindering; every column is then checked exactly over the
//! integers, so the stored map is correct regardless of how it was found.

pub mod modular;

use rug::float::Round;
use rug::ops::MulAssignRound;
use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{monomial_basis, monomial_index, slice_dim, Monomial, PolyRecord, QPoly, NVARS};
use modular::{rref_with_transform, Crt, PrimeStream};

const N9: usize = 220;
const N12: usize = 455;
const NCOLS: usize = NVARS * N9;

/// The four partial derivatives of a quartic.
pub fn jacobian(f: &QPoly) -> Result<[QPoly; NVARS]> {
    if f.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: f.degree(),
        });
    }
    let mut out: [QPoly; NVARS] = std::array::from_fn(|_| QPoly::zero(3));
    for (i, o) in out.iter_mut().enumerate() {
        *o = f.partial(i)?;
    }
    Ok(out)
}

/// A fixed division map `Q₁₂` for the quartic `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionMap {
    f: QPoly,
    columns: Vec<[QPoly; NVARS]>,
    norm: Rational,
}

impl DivisionMap {
    pub fn f(&self) -> &QPoly {
        &self.f
    }

    /// Columns in `monomial_basis(12)` order.
    pub fn columns(&self) -> &[[QPoly; NVARS]] {
        &self.columns
    }

    pub fn column(&self, m: &Monomial) -> &[QPoly; NVARS] {
        assert_eq!(m.degree(), 12);
        &self.columns[monomial_index(m)]
    }

    /// `‖Q₁₂‖` for the 1-norm on both sides: the largest column norm
    /// `Σᵢ‖bᵢ‖₁`.
    pub fn norm(&self) -> &Rational {
        &self.norm
    }

    fn from_parts(f: QPoly, columns: Vec<[QPoly; NVARS]>) -> DivisionMap {
        let norm = columns
            .iter()
            .map(tuple_one_norm)
            .max()
            .unwrap_or_default();
        DivisionMap { f, columns, norm }
    }

    pub fn to_json(&self) -> String {
        let file = DivisionMapFile {
            f: self.f.to_records(),
            norm: format!("{}/{}", self.norm.numer(), self.norm.denom()),
            columns: self
                .columns
                .iter()
                .map(|c| c.iter().map(QPoly::to_records).collect())
                .collect(),
        };
        serde_json::to_string(&file).expect("division map serializes")
    }

    /// Parses and re-verifies a serialized map: every column must satisfy the
    /// division identity exactly and the stored norm must match.
    pub fn from_json(s: &str) -> Result<DivisionMap> {
        let file: DivisionMapFile = serde_json::from_str(s)?;
        let f = QPoly::from_records(&file.f, Some(4))?;
        if file.columns.len() != N12 {
            return Err(Error::ShapeMismatch(format!(
                "division map has {} columns, expected {N12}",
                file.columns.len()
            )));
        }
        let jac = jacobian(&f)?;
        let mut columns = Vec::with_capacity(N12);
        for (m, col) in monomial_basis(12).iter().zip(&file.columns) {
            if col.len() != NVARS {
                return Err(Error::ShapeMismatch(format!(
                    "column {m} has {} entries, expected {NVARS}",
                    col.len()
                )));
            }
            let mut b: [QPoly; NVARS] = std::array::from_fn(|_| QPoly::zero(9));
            for (bi, recs) in b.iter_mut().zip(col) {
                *bi = QPoly::from_records(recs, Some(9))?;
            }
            if !division_identity_holds(&jac, &QPoly::monomial(*m, Rational::from(1)), &b) {
                return Err(Error::InvalidInput(format!(
                    "column {m} does not satisfy the division identity"
                )));
            }
            columns.push(b);
        }
        let map = DivisionMap::from_parts(f, columns);
        let stored = crate::poly::parse_coprime_fraction(&file.norm).map_err(Error::Parse)?;
        if stored != map.norm {
            return Err(Error::InvalidInput(format!(
                "stored norm {stored} differs from recomputed {}",
                map.norm
            )));
        }
        Ok(map)
    }
}

#[derive(Serialize, Deserialize)]
struct DivisionMapFile {
    f: Vec<PolyRecord>,
    norm: String,
    columns: Vec<Vec<Vec<PolyRecord>>>,
}

fn tuple_one_norm(b: &[QPoly; NVARS]) -> Rational {
    b.iter().map(QPoly::one_norm).sum()
}

/// `Σᵢ‖bᵢ‖₁`, the norm used for the target of `Q_d`.
pub fn quadruple_one_norm(b: &[QPoly; NVARS]) -> Rational {
    tuple_one_norm(b)
}

/// Exact check of `a = Σᵢ bᵢ·∂ᵢf`, with all denominators cleared first so
/// the comparison runs in integer arithmetic.
pub fn division_identity_holds(jac: &[QPoly; NVARS], a: &QPoly, b: &[QPoly; NVARS]) -> bool {
    let d = a.degree();
    if b.iter().any(|bi| bi.degree() + 3 != d) {
        return false;
    }
    let mut l = a.denominator_lcm();
    for p in b.iter().chain(jac.iter()) {
        l.lcm_mut(&p.denominator_lcm());
    }
    let l = Rational::from(l);
    // scale every coefficient of b and a by l and the jacobian by l as well
    let to_int = |c: &Rational| -> Integer {
        let v = Rational::from(c * &l);
        debug_assert_eq!(*v.denom(), 1);
        v.numer().clone()
    };
    let mut acc = vec![Integer::new(); slice_dim(d)];
    for (bi, ji) in b.iter().zip(jac) {
        let jterms: Vec<(Monomial, Integer)> = ji.terms().map(|(m, c)| (*m, to_int(c))).collect();
        for (m, c) in bi.terms() {
            let c = to_int(c);
            for (jm, jc) in &jterms {
                acc[monomial_index(&m.mul(jm))] += &c * jc;
            }
        }
    }
    let l2 = Rational::from(&l * &l);
    for (m, c) in a.terms() {
        let v = Rational::from(c * &l2);
        acc[monomial_index(m)] -= v.numer();
    }
    acc.iter().all(|x| *x == 0)
}

/// Integer partials of the rescaled quartic, as `(monomial, coefficient)` lists.
struct IntJacobian {
    terms: [Vec<(Monomial, Integer)>; NVARS],
    /// `⌈log₂ ‖∂ᵢf‖₂⌉` upper bounds in half-bits.
    half_bits: [u32; NVARS],
}

impl IntJacobian {
    fn new(f: &QPoly) -> Result<IntJacobian> {
        let jac = jacobian(f)?;
        let mut terms: [Vec<(Monomial, Integer)>; NVARS] = Default::default();
        let mut half_bits = [0u32; NVARS];
        for i in 0..NVARS {
            let mut sq = Integer::new();
            for (m, c) in jac[i].terms() {
                debug_assert_eq!(*c.denom(), 1);
                sq += c.numer() * c.numer();
                terms[i].push((*m, c.numer().clone()));
            }
            half_bits[i] = sq.significant_bits();
        }
        Ok(IntJacobian { terms, half_bits })
    }

    /// Rows of the system matrix reduced modulo `p`.
    fn matrix_mod(&self, basis9: &[Monomial], p: u64) -> Vec<Vec<u64>> {
        let mut rows = vec![vec![0u64; NCOLS]; N12];
        for i in 0..NVARS {
            let reduced: Vec<(Monomial, u64)> = self.terms[i]
                .iter()
                .map(|(m, c)| (*m, modular::reduce_integer(c, p)))
                .collect();
            for (j, mp) in basis9.iter().enumerate() {
                let col = i * N9 + j;
                for (m, c) in &reduced {
                    rows[monomial_index(&mp.mul(m))][col] = *c;
                }
            }
        }
        rows
    }
}

fn column_var(col: usize, basis9: &[Monomial]) -> (usize, Monomial) {
    (col / N9, basis9[col % N9])
}

/// Exact rank of the system matrix by sparse rational elimination; used only
/// to confirm a rank deficiency seen modulo several primes.
fn exact_rank(jac: &IntJacobian, basis9: &[Monomial]) -> usize {
    use std::collections::BTreeMap;
    let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); N12];
    for i in 0..NVARS {
        for (j, mp) in basis9.iter().enumerate() {
            for (m, c) in &jac.terms[i] {
                rows[monomial_index(&mp.mul(m))].insert(i * N9 + j, Rational::from(c));
            }
        }
    }
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for mut row in rows {
        loop {
            let Some((&lead, lc)) = row.iter().next() else {
                break;
            };
            let Some(prow) = pivots.get(&lead) else {
                let inv = Rational::from(lc.recip_ref());
                for v in row.values_mut() {
                    *v *= &inv;
                }
                pivots.insert(lead, row);
                break;
            };
            let factor = lc.clone();
            for (k, v) in prow {
                let e = row.entry(*k).or_default();
                *e -= Rational::from(&factor * v);
                if *e == 0 {
                    row.remove(k);
                }
            }
        }
    }
    pivots.len()
}

/// Builds `Q₁₂` for `f`, or reports that `X_f` is singular.
pub fn build_q12(f: &QPoly) -> Result<DivisionMap> {
    if f.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: f.degree(),
        });
    }
    if f.is_zero() {
        return Err(Error::SingularSurface);
    }
    // Work with the primitive integer multiple mu*f; then Q(f) = mu*Q(mu*f).
    let mut content = Integer::new();
    let l = f.denominator_lcm();
    for (_, c) in f.terms() {
        let v = Rational::from(c * &l);
        content.gcd_mut(v.numer());
    }
    let mu = Rational::from((l, content));
    let ft = f.scale(&mu);
    let jac = IntJacobian::new(&ft)?;
    let basis9 = monomial_basis(9);
    let basis12 = monomial_basis(12);

    let mut primes = PrimeStream::new();
    let mut deficient = 0usize;
    let mut profile: Option<Vec<usize>> = None;
    let mut good: Vec<(u64, u64, Vec<Vec<u64>>)> = Vec::new();
    let mut needed = usize::MAX;
    while good.len() < needed {
        let p = primes.next().expect("enough 62-bit primes");
        let r = rref_with_transform(&jac.matrix_mod(&basis9, p), NCOLS, p);
        if r.rank() < N12 {
            deficient += 1;
            if profile.is_none() && deficient >= 3
                && exact_rank(&jac, &basis9) < N12 {
                    return Err(Error::SingularSurface);
                }
            if deficient > 64 {
                return Err(Error::InvalidInput(
                    "no prime of full rank found for a full-rank system".into(),
                ));
            }
            continue;
        }
        match &profile {
            Some(prof) if *prof < r.pivots => continue,
            Some(prof) if *prof == r.pivots => {}
            _ => {
                // a lexicographically smaller pivot profile: earlier primes were unlucky
                let half_bits: u64 = r
                    .pivots
                    .iter()
                    .map(|&c| jac.half_bits[c / N9] as u64)
                    .sum();
                // |det| and every cofactor are below 2^(half_bits/2); the
                // symmetric residue needs a modulus above twice that
                let bits = half_bits.div_ceil(2) + 2;
                needed = bits.div_ceil(61) as usize;
                profile = Some(r.pivots.clone());
                good.clear();
            }
        }
        let t: Vec<Vec<u64>> = r
            .transform
            .iter()
            .map(|row| row.iter().map(|&x| modular::mul_mod(x, r.det, p)).collect())
            .collect();
        good.push((p, r.det, t));
    }
    let pivots = profile.expect("profile fixed once a full-rank prime is found");
    let crt = Crt::new(good.iter().map(|g| g.0).collect());
    let det = crt.reconstruct(&good.iter().map(|g| g.1).collect::<Vec<_>>());
    if det == 0 {
        return Err(Error::InvalidInput("reconstructed determinant vanished".into()));
    }
    let mut residues = vec![0u64; good.len()];
    let mut columns = Vec::with_capacity(N12);
    let det_q = Rational::from(det.clone());
    for (mi, m) in basis12.iter().enumerate() {
        let mut adj = Vec::with_capacity(N12);
        for k in 0..N12 {
            for (slot, g) in residues.iter_mut().zip(&good) {
                *slot = g.2[k][mi];
            }
            adj.push(crt.reconstruct(&residues));
        }
        if !column_verifies(&jac, &basis9, &pivots, &adj, &det, mi) {
            return Err(Error::InvalidInput(format!(
                "lifted solution for {m} failed exact verification"
            )));
        }
        let mut b: [QPoly; NVARS] = std::array::from_fn(|_| QPoly::zero(9));
        for (k, a) in adj.into_iter().enumerate() {
            if a == 0 {
                continue;
            }
            let (i, mp) = column_var(pivots[k], &basis9);
            let c = Rational::from(a) / &det_q * &mu;
            b[i].add_term(mp, c);
        }
        columns.push(b);
    }
    Ok(DivisionMap::from_parts(f.clone(), columns))
}

fn column_verifies(
    jac: &IntJacobian,
    basis9: &[Monomial],
    pivots: &[usize],
    adj: &[Integer],
    det: &Integer,
    target: usize,
) -> bool {
    let mut acc = vec![Integer::new(); N12];
    for (k, a) in adj.iter().enumerate() {
        if *a == 0 {
            continue;
        }
        let (i, mp) = column_var(pivots[k], basis9);
        for (m, c) in &jac.terms[i] {
            acc[monomial_index(&mp.mul(m))] += a * c;
        }
    }
    acc[target] -= det;
    acc.iter().all(|x| *x == 0)
}

/// `Q_d(a)` for `d ≥ 12`: peel off the lowest-index variable until degree
/// 12, then apply the stored column. Agrees with the recursion
/// `Q_d(a) = Σ xᵢ·Q_{d−1}(aᵢ)` over [`QPoly::split_by_variable`].
pub fn apply_qd(q: &DivisionMap, a: &QPoly) -> Result<[QPoly; NVARS]> {
    let d = a.degree();
    if d < 12 {
        return Err(Error::DegreeTooLow {
            degree: d,
            minimum: 12,
        });
    }
    let mut out: [QPoly; NVARS] = std::array::from_fn(|_| QPoly::zero(d - 3));
    for (m, c) in a.terms() {
        let mut rest = *m;
        let mut shift = Monomial::ONE;
        for _ in 12..d {
            let i = rest.first_var().expect("positive degree");
            rest.0[i] -= 1;
            shift.0[i] += 1;
        }
        let col = &q.columns[monomial_index(&rest)];
        for (o, b) in out.iter_mut().zip(col) {
            o.add_scaled_shifted(c, &shift, b);
        }
    }
    Ok(out)
}

/// Griffiths–Dwork reduction `G_k: R_{4k−4} → R₈`, with `G₃ = id` and
/// `G_k(a) = G_{k−1}((1/(k−1))·Σᵢ∂ᵢbᵢ)` for `(bᵢ) = Q_{4k−4}(a)`.
pub fn reduce_gk(q: &DivisionMap, a: &QPoly, k: u32) -> Result<QPoly> {
    if k < 3 || a.degree() != 4 * k - 4 {
        return Err(Error::DegreeMismatch {
            expected: 4 * k.max(3) - 4,
            found: a.degree(),
        });
    }
    let mut cur = a.clone();
    for j in (4..=k).rev() {
        let b = apply_qd(q, &cur)?;
        let mut s = QPoly::zero(4 * j - 8);
        for (i, bi) in b.iter().enumerate() {
            s = &s + &bi.partial(i)?;
        }
        cur = s.scale(&Rational::from((1, j - 1)));
    }
    Ok(cur)
}

/// Rewrites `a·Vol/f^k` with pole order three: `G₁(a) = a·f²`, `G₂(a) = a·f`,
/// and [`reduce_gk`] for `k ≥ 3`.
pub fn reduce_to_pole3(q: &DivisionMap, a: &QPoly, k: u32) -> Result<QPoly> {
    match k {
        0 => Err(Error::InvalidInput("pole order must be positive".into())),
        1 | 2 => {
            let expected = 4 * k - 4;
            if a.degree() != expected {
                return Err(Error::DegreeMismatch {
                    expected,
                    found: a.degree(),
                });
            }
            Ok(a.multiply(&q.f.pow(3 - k)))
        }
        _ => reduce_gk(q, a, k),
    }
}

/// `(4·‖Q₁₂‖)^{k−3}`.
pub fn gd_norm_bound(k: u32, norm_q12: &Rational) -> Rational {
    assert!(k >= 3, "gd_norm_bound needs k >= 3");
    let c = Rational::from(norm_q12 * 4u32);
    let mut r = Rational::from(1);
    for _ in 3..k {
        r *= &c;
    }
    r
}

/// Upper bound `C'·max(‖A‖·C'², 1)` on `Γ`, with `C = 4‖Q₁₂‖` and
/// `C' = max(C, 1)`; rounded up at the precision of `norm_a_upper`.
pub fn gamma_upper_bound(norm_q12: &Rational, norm_a_upper: &Float) -> Result<Float> {
    if *norm_q12 < 0 {
        return Err(Error::InvalidInput("negative norm of Q12".into()));
    }
    if norm_a_upper.is_nan() || *norm_a_upper <= 0 {
        return Err(Error::InvalidInput(
            "norm bound of A must be positive".into(),
        ));
    }
    let prec = norm_a_upper.prec();
    let c = Float::with_val_round(prec, norm_q12 * Rational::from(4), Round::Up).0;
    let c = c.max(&Float::with_val(prec, 1));
    let mut t = Float::with_val_round(prec, norm_a_upper * &c, Round::Up).0;
    t.mul_assign_round(&c, Round::Up);
    let t = t.max(&Float::with_val(prec, 1));
    Ok(Float::with_val_round(prec, &c * &t, Round::Up).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{fermat_quartic, random_qpoly};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn apply_qd_recursive(q: &DivisionMap, a: &QPoly) -> [QPoly; NVARS] {
        if a.degree() == 12 {
            let mut out: [QPoly; NVARS] = std::array::from_fn(|_| QPoly::zero(9));
            for (m, c) in a.terms() {
                for (o, b) in out.iter_mut().zip(q.column(m)) {
                    *o = &*o + &b.scale(c);
                }
            }
            return out;
        }
        let parts = a.split_by_variable().unwrap();
        let mut out: [QPoly; NVARS] = std::array::from_fn(|_| QPoly::zero(a.degree() - 3));
        for (v, part) in parts.iter().enumerate() {
            let sub = apply_qd_recursive(q, part);
            for (o, s) in out.iter_mut().zip(&sub) {
                *o = &*o + &s.mul_monomial(&Monomial::var(v));
            }
        }
        out
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian(&fermat_quartic()).unwrap();
        for (i, ji) in j.iter().enumerate() {
            let mut e = [0; 4];
            e[i] = 3;
            assert_eq!(*ji, QPoly::monomial(Monomial(e), Rational::from(4)));
        }
        let f = QPoly::from_int_terms(4, &[([3, 1, 0, 0], 1)]).unwrap();
        let j = jacobian(&f).unwrap();
        assert_eq!(j[0], QPoly::from_int_terms(3, &[([2, 1, 0, 0], 3)]).unwrap());
        assert_eq!(j[1], QPoly::from_int_terms(3, &[([3, 0, 0, 0], 1)]).unwrap());
        assert!(j[2].is_zero() && j[3].is_zero());
        assert!(matches!(
            jacobian(&QPoly::one()),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn euler_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let f = random_qpoly(&mut rng, 4, 12, 9);
            let j = jacobian(&f).unwrap();
            let mut s = QPoly::zero(4);
            for (i, ji) in j.iter().enumerate() {
                s = &s + &ji.mul_monomial(&Monomial::var(i));
            }
            assert_eq!(s, f.scale(&Rational::from(4)));
        }
    }

    #[test]
    fn fermat_division_map() {
        let q = build_q12(&fermat_quartic()).unwrap();
        let jac = jacobian(q.f()).unwrap();
        for (m, b) in monomial_basis(12).iter().zip(q.columns()) {
            assert!(division_identity_holds(&jac, &QPoly::monomial(*m, Rational::from(1)), b));
        }
        // the first pivot for w^12 is the unknown (0, w^9): w^12 = (w^9/4)·4w^3
        let b = q.column(&Monomial([12, 0, 0, 0]));
        assert_eq!(b[0], QPoly::monomial(Monomial([9, 0, 0, 0]), Rational::from((1, 4))));
        assert_eq!(*q.norm(), Rational::from((1, 4)));
    }

    #[test]
    fn rational_and_scaled_quartic() {
        let f = fermat_quartic().scale(&Rational::from((3, 2)));
        let q = build_q12(&f).unwrap();
        assert_eq!(*q.norm(), Rational::from((1, 6)));
        let jac = jacobian(&f).unwrap();
        let m = Monomial([3, 3, 3, 3]);
        assert!(division_identity_holds(&jac, &QPoly::monomial(m, Rational::from(1)), q.column(&m)));
    }

    #[test]
    fn singular_quartics_rejected() {
        for (name, f) in crate::sample::singular_quartics() {
            assert!(
                matches!(build_q12(&f), Err(Error::SingularSurface)),
                "{name} should be singular"
            );
        }
    }

    #[test]
    fn apply_qd_matches_recursion_and_divides() {
        let q = build_q12(&fermat_quartic()).unwrap();
        let jac = jacobian(q.f()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 12..=18 {
            let a = random_qpoly(&mut rng, d, 15, 20);
            let b = apply_qd(&q, &a).unwrap();
            assert_eq!(b, apply_qd_recursive(&q, &a));
            assert!(division_identity_holds(&jac, &a, &b));
            assert!(quadruple_one_norm(&b) <= q.norm() * a.one_norm());
        }
        assert!(matches!(
            apply_qd(&q, &QPoly::zero(11)),
            Err(Error::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn gk_base_case_and_bound() {
        let q = build_q12(&fermat_quartic()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_qpoly(&mut rng, 8, 10, 5);
        assert_eq!(reduce_gk(&q, &a, 3).unwrap(), a);
        for k in 4..=7 {
            let a = random_qpoly(&mut rng, 4 * k - 4, 8, 5);
            let g = reduce_gk(&q, &a, k).unwrap();
            assert_eq!(g.degree(), 8);
            assert!(g.one_norm() <= gd_norm_bound(k, q.norm()) * a.one_norm());
        }
        assert!(matches!(
            reduce_gk(&q, &QPoly::zero(9), 3),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn pole_raising() {
        let q = build_q12(&fermat_quartic()).unwrap();
        let one = QPoly::one();
        let g1 = reduce_to_pole3(&q, &one, 1).unwrap();
        assert_eq!(g1, q.f().multiply(q.f()));
        assert_eq!(g1.len(), 10);
        let x4 = QPoly::monomial(Monomial([0, 4, 0, 0]), Rational::from(1));
        assert_eq!(reduce_to_pole3(&q, &x4, 2).unwrap(), x4.multiply(q.f()));
        assert!(reduce_to_pole3(&q, &one, 2).is_err());
    }

    #[test]
    fn norm_bound_values() {
        assert_eq!(gd_norm_bound(3, &Rational::from(7)), 1);
        assert_eq!(gd_norm_bound(4, &Rational::from(5)), 20);
        assert_eq!(gd_norm_bound(6, &Rational::from((3, 2))), 216);
    }

    #[test]
    fn gamma_bound_values() {
        let one = Float::with_val(128, 1);
        let g = gamma_upper_bound(&Rational::from((1, 4)), &one).unwrap();
        assert_eq!(g, 1);
        let two = Float::with_val(128, 2);
        assert_eq!(gamma_upper_bound(&Rational::from(1), &two).unwrap(), 128);
        assert!(gamma_upper_bound(&Rational::from(1), &Float::with_val(64, 0)).is_err());
        assert!(gamma_upper_bound(&Rational::from(-1), &one).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let q = build_q12(&fermat_quartic()).unwrap();
        let s = q.to_json();
        assert_eq!(DivisionMap::from_json(&s).unwrap(), q);
        let broken = s.replacen("\"1/4\"", "\"1/3\"", 1);
        assert!(DivisionMap::from_json(&broken).is_err());
    }
}

//! Deterministic sample generators shared by tests, benchmarks and the CLI.

use rand::Rng;
use rug::Rational;

use crate::poly::{monomial_basis, Monomial, QPoly};

/// `w⁴ + x⁴ + y⁴ + z⁴`
pub fn fermat_quartic() -> QPoly {
    QPoly::from_int_terms(
        4,
        &[
            ([4, 0, 0, 0], 1),
            ([0, 4, 0, 0], 1),
            ([0, 0, 4, 0], 1),
            ([0, 0, 0, 4], 1),
        ],
    )
    .expect("degree 4")
}

/// Sparse polynomial with up to `nterms` terms whose coefficients are
/// rationals `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ 4`.
pub fn random_qpoly<R: Rng>(rng: &mut R, degree: u32, nterms: usize, bound: i64) -> QPoly {
    let basis = monomial_basis(degree);
    let mut p = QPoly::zero(degree);
    for _ in 0..nterms {
        let m = basis[rng.gen_range(0..basis.len())];
        let num = rng.gen_range(-bound..=bound);
        let den = rng.gen_range(1..=4i64);
        p.add_term(m, Rational::from((num, den)));
    }
    p
}

/// Quartic with all 35 coefficients nonzero integers in `[-bound, bound]`.
pub fn random_dense_quartic<R: Rng>(rng: &mut R, bound: i64) -> QPoly {
    assert!(bound >= 1);
    let terms = monomial_basis(4).into_iter().map(|m| {
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-bound..=bound);
        }
        (m, Rational::from(c))
    });
    QPoly::from_terms(4, terms).expect("degree 4")
}

/// Three quartics whose surfaces are singular: a cone over a plane quartic,
/// a quadruple plane, and the Dwork pencil member `Σ x_i⁴ − 4wxyz`, singular at
/// `(1:1:1:1)`.
pub fn singular_quartics() -> Vec<(&'static str, QPoly)> {
    let cone = QPoly::from_int_terms(4, &[([4, 0, 0, 0], 1), ([0, 4, 0, 0], 1), ([0, 0, 4, 0], 1)])
        .expect("degree 4");
    let plane = QPoly::monomial(Monomial([4, 0, 0, 0]), Rational::from(1));
    let dwork = QPoly::from_int_terms(
        4,
        &[
            ([4, 0, 0, 0], 1),
            ([0, 4, 0, 0], 1),
            ([0, 0, 4, 0], 1),
            ([0, 0, 0, 4], 1),
            ([1, 1, 1, 1], -4),
        ],
    )
    .expect("degree 4");
    vec![("cone", cone), ("quadruple plane", plane), ("dwork psi=1", dwork)]
}

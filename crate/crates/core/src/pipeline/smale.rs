//! Smale's α-test for a certified simple root near `0`.

use rug::float::Round;
use rug::{Float, Rational};

/// Threshold on `β·γ`.
pub const ALPHA_THRESHOLD: (u32, u32) = (1, 34);

#[derive(Clone, Debug, PartialEq)]
pub enum SmaleOutcome {
    /// A root lies in the closed disc of this radius around `0`.
    Certified { radius: Float },
    NotCertified,
}

impl SmaleOutcome {
    pub fn radius(&self) -> Option<&Float> {
        match self {
            SmaleOutcome::Certified { radius } => Some(radius),
            SmaleOutcome::NotCertified => None,
        }
    }
}

/// Certifies a root within `2β` when `β·γ ≤ 1/34`, for certified upper
/// bounds `β` and `γ`. The product is compared exactly.
pub fn smale_alpha_test(beta_up: &Float, gamma_up: &Float) -> SmaleOutcome {
    let (Some(b), Some(g)) = (beta_up.to_rational(), gamma_up.to_rational()) else {
        return SmaleOutcome::NotCertified;
    };
    if b < 0 || g < 0 {
        return SmaleOutcome::NotCertified;
    }
    let threshold = Rational::from(ALPHA_THRESHOLD);
    if Rational::from(&b * &g) > threshold {
        return SmaleOutcome::NotCertified;
    }
    let radius = Float::with_val_round(beta_up.prec(), beta_up * 2u32, Round::Up).0;
    SmaleOutcome::Certified { radius }
}

/// Upper bounds on `β` and `γ` at `t = 0` for a univariate polynomial with
/// coefficients `c₀, c₁, …`:
/// `β = |c₀/c₁|` and `γ = max_{k≥2} |c_k/c₁|^{1/(k−1)}`.
/// Returns `None` when `c₁ = 0`.
pub fn alpha_data(coeffs: &[Rational], prec: u32) -> Option<(Float, Float)> {
    let c1 = coeffs.get(1).filter(|c| **c != 0)?;
    let c0 = coeffs.first().cloned().unwrap_or_default();
    let beta = Float::with_val_round(prec, Rational::from(&c0 / c1).abs(), Round::Up).0;
    let mut gamma = Float::new(prec);
    for (k, ck) in coeffs.iter().enumerate().skip(2) {
        if *ck == 0 {
            continue;
        }
        let r = Float::with_val_round(prec, Rational::from(ck / c1).abs(), Round::Up).0;
        let root = if k == 2 {
            r
        } else {
            Float::with_val_round(prec, r.root_ref(k as u32 - 1), Round::Up).0
        };
        gamma = gamma.max(&root);
    }
    Some((beta, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(x: f64) -> Float {
        Float::with_val(128, x)
    }

    #[test]
    fn threshold_cases() {
        let beta = Float::with_val(128, Rational::from((1, 100)));
        match smale_alpha_test(&beta, &f(1.0)) {
            SmaleOutcome::Certified { radius } => {
                let r = radius.to_rational().unwrap();
                assert!(r >= Rational::from((1, 50)) && r.to_f64() - 0.02 < 1e-30);
            }
            SmaleOutcome::NotCertified => panic!("1/100 is below the threshold"),
        }
        assert_eq!(smale_alpha_test(&f(1.0), &f(1.0)), SmaleOutcome::NotCertified);
        assert_eq!(smale_alpha_test(&f(-1.0), &f(0.0)), SmaleOutcome::NotCertified);
    }

    #[test]
    fn threshold_boundary() {
        let beta = f(1.0 / 64.0);
        assert_eq!(smale_alpha_test(&beta, &f(2.0)), SmaleOutcome::NotCertified);
        assert!(smale_alpha_test(&beta, &f(1.0)).radius().is_some());
    }

    #[test]
    fn linear_function() {
        let c = [Rational::from((-1, 50)), Rational::from(1)];
        let (b, g) = alpha_data(&c, 128).unwrap();
        assert!(g.is_zero());
        let r = smale_alpha_test(&b, &g);
        let radius = r.radius().unwrap().to_rational().unwrap();
        assert!(radius >= Rational::from((1, 25)));
        assert!(radius.to_f64() - 0.04 < 1e-30);
    }

    #[test]
    fn cubic_gamma() {
        let c = [
            Rational::from(1),
            Rational::from(2),
            Rational::from(0),
            Rational::from(16),
        ];
        let (b, g) = alpha_data(&c, 128).unwrap();
        assert_eq!(b, 0.5);
        assert!((g.to_f64() - 8f64.sqrt()).abs() < 1e-12);
        assert!(alpha_data(&[Rational::from(1), Rational::new()], 64).is_none());
    }
}

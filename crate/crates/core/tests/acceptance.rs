//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p k3-periods --test acceptance`.

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use k3_periods::ball::{hermitian_lambda_min_lower, Ball, BallMatrix};
use k3_periods::error::Error;
use k3_periods::lattice::is_admissible_delta;
use k3_periods::mp_series::{r21_brute_force, r21_series, theta_series};
use k3_periods::nl_bounds::{
    comparison_report, deg_bound_closed_prec, delta_to_dg, descend, height_bound_closed_prec, hilbert_dims,
    normalize_dg, DGIndex, Direction, TowerReal,
};
use k3_periods::pipeline::decide::VerdictKind;
use k3_periods::pipeline::liouville::{
    liouville_growth_check, liouville_partial_sum, ChainEntry, ChainMode, ViolationKind,
};
use k3_periods::pipeline::smale::{smale_alpha_test, SmaleOutcome};
use k3_periods::pipeline::synthetic::{synthetic_fixture, FixtureKind};
use k3_periods::pipeline::{assemble_constants_with, decide, SeparationConstants};
use k3_periods::poly::{monomial_basis, QPoly};
use k3_periods::reduction::{
    apply_qd, build_q12, division_identity_holds, gd_norm_bound, jacobian, quadruple_one_norm, reduce_gk,
    DivisionMap,
};
use k3_periods::sample::{fermat_quartic, random_dense_quartic, random_qpoly, singular_quartics};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Round;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

/// Criterion 1.
fn macaulay_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut quartics = vec![fermat_quartic()];
    quartics.extend((0..5).map(|_| random_dense_quartic(&mut rng, 3)));
    let mut slowest = Duration::ZERO;
    for (n, f) in quartics.iter().enumerate() {
        let t = Instant::now();
        let q = build_q12(f).map_err(|e| format!("quartic {n}: {e}"))?;
        let jac = jacobian(f).map_err(|e| e.to_string())?;
        for (m, b) in monomial_basis(12).iter().zip(q.columns()) {
            ensure!(
                division_identity_holds(&jac, &QPoly::monomial(*m, Rational::from(1)), b),
                "quartic {n}: identity fails at a basis monomial"
            );
        }
        for i in 0..50 {
            let d = 13 + (i % 8) as u32;
            let a = random_qpoly(&mut rng, d, 6, 20);
            let b = apply_qd(&q, &a).map_err(|e| e.to_string())?;
            ensure!(division_identity_holds(&jac, &a, &b), "quartic {n}: identity fails on a degree-{d} polynomial");
        }
        let el = t.elapsed();
        slowest = slowest.max(el);
        ensure!(el < Duration::from_secs(600), "quartic {n} took {}", secs(el));
    }
    for (name, f) in singular_quartics() {
        ensure!(
            matches!(build_q12(&f), Err(Error::SingularSurface)),
            "singular quartic {name} was not rejected"
        );
    }
    Ok(format!("6 quartics x (455 monomials + 50 polynomials), 3 singular rejected, slowest {}", secs(slowest)))
}

fn division_maps() -> Vec<DivisionMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    vec![
        build_q12(&fermat_quartic()).expect("Fermat is smooth"),
        build_q12(&random_dense_quartic(&mut rng, 2)).expect("dense quartic is smooth"),
    ]
}

/// Criterion 2.
fn norm_lemmas() -> Outcome {
    let maps = division_maps();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..100 {
        let q = &maps[i % maps.len()];
        let d = rng.gen_range(12..=28u32);
        let nt = rng.gen_range(1..=8);
        let a = random_qpoly(&mut rng, d, nt, 30);
        let b = apply_qd(q, &a).map_err(|e| e.to_string())?;
        let lhs = quadruple_one_norm(&b);
        let rhs = q.norm() * a.one_norm();
        ensure!(lhs <= rhs, "Q_d bound fails at instance {i} (degree {d})");
    }
    for i in 0..100 {
        let q = &maps[i % maps.len()];
        let k = rng.gen_range(3..=8u32);
        let nt = rng.gen_range(1..=6);
        let a = random_qpoly(&mut rng, 4 * k - 4, nt, 30);
        let g = reduce_gk(q, &a, k).map_err(|e| e.to_string())?;
        let rhs = gd_norm_bound(k, q.norm()) * a.one_norm();
        ensure!(g.one_norm() <= rhs, "G_k bound fails at instance {i} (k = {k})");
    }
    Ok("100 Q_d and 100 G_k instances, exact".into())
}

/// Criterion 3.
fn mp_series_checks() -> Outcome {
    let t = Instant::now();
    let theta = theta_series(500).map_err(|e| e.to_string())?;
    ensure!(*theta.coeff(0) == -1, "Theta[0] = {}", theta.coeff(0));
    let r = r21_series(40);
    for k in 0..=40 {
        ensure!(
            Integer::from(theta.coeff(k).abs_ref()) <= Integer::from(r.coeff(k) * 6u32),
            "|Theta[{k}]| exceeds 6 r21({k})"
        );
    }
    for k in 0..=6 {
        ensure!(*r.coeff(k) == r21_brute_force(k), "r21({k}) differs from enumeration");
    }
    let el = t.elapsed();
    ensure!(el < Duration::from_secs(60), "took {}", secs(el));
    Ok(format!("order 500 divisible, bounds to 40, brute force to 6, {}", secs(el)))
}

/// Criterion 4.
fn nl_index_arithmetic() -> Outcome {
    let mut admissible = 0;
    for delta in 1..=10_000i64 {
        let Some(dg) = delta_to_dg(delta) else {
            ensure!(!is_admissible_delta(delta), "admissible {delta} has no index");
            continue;
        };
        admissible += 1;
        let (d, g) = (dg.d as i128, dg.g as i128);
        ensure!(d * d - 8 * g + 8 == delta as i128, "d^2 - 8g + 8 != {delta}");
        let mut cur = dg;
        while let Some(next) = descend(cur) {
            ensure!(next.delta() == cur.delta(), "descent changes the discriminant at {delta}");
            cur = next;
        }
        let n = normalize_dg(dg.d, dg.g).map_err(|e| e.to_string())?;
        ensure!(n == cur && n.delta() == delta as i128, "normalization of {delta}");
    }
    let h = hilbert_dims(DGIndex::new(1, 0)).map_err(|e| e.to_string())?;
    let tuple = (h.alpha, h.beta, h.alpha_prime, h.beta_prime, h.s, h.l);
    ensure!(tuple == (1014, 335, 869, 35, 720, 35), "(1,0) gives {tuple:?}");
    let mut pairs = 0;
    for d in 1..=50i64 {
        let mut g = 0;
        while DGIndex::new(d, g).delta() > 0 {
            let dims = hilbert_dims(DGIndex::new(d, g)).map_err(|e| format!("({d},{g}): {e}"))?;
            let cap = Integer::from(d + 2).pow(15u32);
            ensure!(dims.sl() <= cap, "sL > (d+2)^15 at ({d},{g})");
            pairs += 1;
            g += 1;
        }
    }
    Ok(format!("{admissible} admissible discriminants, {pairs} (d,g) pairs with sL <= (d+2)^15"))
}

/// Criterion 5.
fn bound_corollary() -> Outcome {
    let deltas: Vec<i64> = (1..=64).filter(|&d| is_admissible_delta(d)).collect();
    for &delta in &deltas {
        let mut prev = (deg_bound_closed_prec(delta, 64), height_bound_closed_prec(delta, 64));
        for prec in [128u32, 256, 512, 1024] {
            let cur = (deg_bound_closed_prec(delta, prec), height_bound_closed_prec(delta, prec));
            ensure!(cur.0.le(&prev.0) && cur.1.le(&prev.1), "bound loosens at delta {delta}, {prec} bits");
            prev = cur;
        }
    }
    let rows = comparison_report(1, 64).map_err(|e| e.to_string())?;
    ensure!(rows.len() == deltas.len(), "report has {} rows", rows.len());
    let dominated = rows.iter().filter(|r| r.deg_dominated() && r.height_dominated()).count();
    Ok(format!("{} deltas tighten 64..1024 bits; report rows {}, closed form dominates {}", deltas.len(), rows.len(), dominated))
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<(Rational, Rational)>> {
    let mut m = vec![vec![(Rational::new(), Rational::new()); n]; n];
    let mut r = || Rational::from((rng.gen_range(-40i64..=40), rng.gen_range(1i64..=6)));
    for i in 0..n {
        m[i][i] = (r(), Rational::new());
        for j in i + 1..n {
            let (re, im) = (r(), r());
            m[j][i] = (re.clone(), Rational::from(-&im));
            m[i][j] = (re, im);
        }
    }
    m
}

fn balls(m: &[Vec<(Rational, Rational)>], prec: u32) -> BallMatrix {
    let data = m
        .iter()
        .flatten()
        .map(|(re, im)| Ball::from_complex_rational(re, im, &Rational::new(), prec))
        .collect();
    BallMatrix::new(m.len(), m.len(), data).expect("square")
}

fn rayleigh(m: &[Vec<(Rational, Rational)>], x: &[(Rational, Rational)]) -> Rational {
    let mut num = Rational::new();
    for (i, xi) in x.iter().enumerate() {
        for (j, xj) in x.iter().enumerate() {
            let (br, bi) = &m[i][j];
            // Re(conj(x_i)·m_ij·x_j)
            let pr = Rational::from(&xi.0 * br) + Rational::from(&xi.1 * bi);
            let pi = Rational::from(&xi.0 * bi) - Rational::from(&xi.1 * br);
            num += Rational::from(&pr * &xj.0) - Rational::from(&pi * &xj.1);
        }
    }
    let den = x.iter().fold(Rational::new(), |s, (a, b)| s + Rational::from(a * a) + Rational::from(b * b));
    num / den
}

/// Criterion 6.
fn certified_linear_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let prec = 256;
    let mut worst = Float::new(64);
    for i in 0..100 {
        let m = random_hermitian(&mut rng, 2);
        let l = hermitian_lambda_min_lower(&balls(&m, prec), prec, false).map_err(|e| e.to_string())?;
        let half_sum = Rational::from(&m[0][0].0 + &m[1][1].0) / 2u32;
        let half_diff = Rational::from(&m[0][0].0 - &m[1][1].0) / 2u32;
        let disc = Rational::from(&half_diff * &half_diff)
            + Rational::from(&m[0][1].0 * &m[0][1].0)
            + Rational::from(&m[0][1].1 * &m[0][1].1);
        let p = 1024;
        let root = |r: Round| Float::with_val_round(p, Float::with_val_round(p, &disc, r).0.sqrt_ref(), r).0;
        let hi = Float::with_val(p, &half_sum) - root(Round::Down);
        let lo = Float::with_val(p, &half_sum) - root(Round::Up);
        ensure!(l <= hi, "2x2 case {i}: bound above the eigenvalue");
        // the radius of the bound: twice the entry scale at working precision
        let scale = Float::with_val(p, disc.to_f64().sqrt() + half_sum.to_f64().abs() + 1.0);
        let tol = Float::with_val(p, &scale * Float::with_val(p, Float::u_exp(1, -(prec as i32) + 8)));
        let gap = Float::with_val(p, &lo - &l);
        ensure!(gap <= tol, "2x2 case {i}: bound {} too far below {}", l.to_f64(), lo.to_f64());
        worst = worst.max(&Float::with_val(64, &gap / &scale));
    }
    for i in 0..100 {
        let m = random_hermitian(&mut rng, 6);
        let l = hermitian_lambda_min_lower(&balls(&m, 128), 128, false).map_err(|e| e.to_string())?;
        let lq = l.to_rational().ok_or("non-finite bound")?;
        for _ in 0..50 {
            let x: Vec<(Rational, Rational)> = (0..6)
                .map(|_| (Rational::from(rng.gen_range(-9..=9)), Rational::from(rng.gen_range(-9..=9))))
                .collect();
            if x.iter().all(|(a, b)| *a == 0 && *b == 0) {
                continue;
            }
            ensure!(lq <= rayleigh(&m, &x), "6x6 case {i}: bound exceeds a Rayleigh quotient");
        }
    }
    Ok(format!("100 2x2 within radius (worst relative gap {:.2e}), 100 6x6 below 50 Rayleigh quotients each", worst.to_f64()))
}

fn audit_pair(lo: &SeparationConstants, hi: &SeparationConstants) -> Result<(), String> {
    ensure!(hi.c_lemma >= lo.c_lemma, "C_lemma decreased");
    ensure!(hi.lambda_min >= lo.lambda_min, "lambda_min decreased");
    ensure!(hi.eps_f >= lo.eps_f, "eps_f decreased");
    ensure!(hi.gamma_up <= lo.gamma_up, "Gamma increased");
    ensure!(hi.c_f <= lo.c_f, "C_f increased");
    ensure!(hi.c.compare(&lo.c) != Ordering::Greater, "c increased");
    ensure!(hi.height <= lo.height, "H increased");
    ensure!(hi.norm_a_up <= lo.norm_a_up, "norm of A increased");
    Ok(())
}

/// Criterion 7.
fn pipeline_soundness() -> Outcome {
    let q12 = build_q12(&fermat_quartic()).map_err(|e| e.to_string())?;
    let norm = q12.norm().clone();
    let zero_h = Float::new(64);
    let kinds = [FixtureKind::Zero, FixtureKind::Separated, FixtureKind::Band];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tally = std::collections::BTreeMap::<String, usize>::new();
    for i in 0..200 {
        let kind = kinds[i % 3];
        let seed = rng.gen::<u64>();
        let fx = synthetic_fixture(kind, seed).map_err(|e| format!("fixture {i}: {e}"))?;
        let c = assemble_constants_with(&fx.data, &norm, 1, &zero_h).map_err(|e| format!("fixture {i}: {e}"))?;
        let d = decide(&fx.gamma, &fx.data, &c).map_err(|e| e.to_string())?;
        let k = d.verdict.kind();
        let opposite = match kind {
            FixtureKind::Zero => k == VerdictKind::NotInPicard,
            FixtureKind::Separated | FixtureKind::Band => k == VerdictKind::InPicard,
        };
        ensure!(!opposite, "fixture {i} ({kind:?}, seed {seed}): opposite verdict {}", d.verdict);
        ensure!(k != VerdictKind::InternalInconsistency, "fixture {i}: internal inconsistency");
        *tally.entry(format!("{kind:?}->{k:?}")).or_default() += 1;
    }
    for (i, kind) in kinds.iter().enumerate() {
        let fx = synthetic_fixture(*kind, 700 + i as u64).map_err(|e| e.to_string())?;
        let runs = [128u32, 256, 512]
            .iter()
            .map(|&p| {
                let data = fx.data.with_prec(p).map_err(|e| e.to_string())?;
                assemble_constants_with(&data, &norm, 1, &zero_h).map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<_>, String>>()?;
        for w in runs.windows(2) {
            audit_pair(&w[0], &w[1]).map_err(|e| format!("audit {kind:?}: {e}"))?;
        }
    }
    let summary: Vec<String> = tally.iter().map(|(k, v)| format!("{k} {v}")).collect();
    Ok(format!("200 fixtures, no opposite verdicts [{}]; audit at 128/256/512 bits on 3 fixtures", summary.join(", ")))
}

fn upper(q: &Rational) -> Float {
    Float::with_val_round(128, q, Round::Up).0
}

/// Criterion 8.
fn smale_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let threshold = Rational::from((1, 34));
    let (mut certified, mut refused) = (0, 0);
    for i in 0..100 {
        // φ(t) = c·(t − r) has β = |r| and γ = 0; φ(t) = (t − r)(t − s) has
        // β = |rs/(r+s)| and γ = 1/|r+s| at t = 0
        let r = Rational::from((rng.gen_range(-500i64..=500), rng.gen_range(1i64..=1000)));
        let (beta, gamma, roots) = if i % 2 == 0 {
            (Rational::from(r.abs_ref()), Rational::new(), vec![r])
        } else {
            let s = Rational::from((rng.gen_range(-60i64..=60), rng.gen_range(1i64..=8)));
            let sum = Rational::from(&r + &s);
            if sum == 0 {
                continue;
            }
            let beta = (Rational::from(&r * &s) / &sum).abs();
            (beta, sum.abs().recip(), vec![r, s])
        };
        let (bu, gu) = (upper(&beta), upper(&gamma));
        let out = smale_alpha_test(&bu, &gu);
        let product = bu.to_rational().unwrap() * gu.to_rational().unwrap();
        match out {
            SmaleOutcome::Certified { radius } => {
                ensure!(product <= threshold, "case {i}: certified with beta*gamma > 1/34");
                let rad = radius.to_rational().unwrap();
                ensure!(roots.iter().any(|x| Rational::from(x.abs_ref()) <= rad), "case {i}: no root in the disc");
                certified += 1;
            }
            SmaleOutcome::NotCertified => {
                ensure!(product > threshold, "case {i}: refused below the threshold");
                refused += 1;
            }
        }
    }
    let big = smale_alpha_test(&Float::with_val(64, 1), &Float::with_val(64, 1));
    ensure!(big == SmaleOutcome::NotCertified, "beta = gamma = 1 was certified");
    Ok(format!("{certified} certified with a root inside, {refused} refused above 1/34"))
}

/// Criterion 9.
fn liouville_checks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..50 {
        let mut chain = vec![Integer::from(rng.gen_range(1u32..=30))];
        for _ in 0..rng.gen_range(0..10) {
            let next = Integer::from(chain.last().unwrap() * rng.gen_range(2u32..=12));
            chain.push(next);
        }
        let s = liouville_partial_sum(&chain).map_err(|e| format!("chain {i}: {e}"))?;
        let direct = chain.iter().fold(Rational::new(), |acc, t| acc + Rational::from((1, t.clone())));
        ensure!(s.value == direct, "chain {i}: partial sum differs from direct addition");
        ensure!(Rational::from((s.u.clone(), s.theta_k.clone())) == direct, "chain {i}: u/theta_k");
        ensure!(s.u <= Integer::from(&s.theta_k * 2u32), "chain {i}: u > 2 theta_k");
    }
    let r = liouville_growth_check(&[ChainEntry::from(2u64), ChainEntry::from(4u64)], ChainMode::DivisorAndGrowth)
        .map_err(|e| e.to_string())?;
    ensure!(
        r.violation.map(|v| (v.index, v.kind)) == Some((0, ViolationKind::Growth)),
        "(2,4) gives {r}"
    );
    // θ₁ = 2↑2↑1024 = 2↑2↑(2↑10), and θ₂ = 2↑2↑(2^40) with log₂log₂θ₂ ≥ θ₁^10
    // written as a level-2 number whose log₂log₂ is 2^10240
    let theta1 = TowerReal::from_log2log2(Float::with_val(64, 1024), Direction::Down);
    let chain = vec![ChainEntry::from(2u64), ChainEntry::Descriptor(theta1.clone())];
    let r = liouville_growth_check(&chain, ChainMode::DivisorAndGrowth).map_err(|e| e.to_string())?;
    ensure!(r.passed(), "descriptor chain rejected: {r}");
    let short = TowerReal::from_log2log2(Float::with_val(64, 1000), Direction::Down);
    let r = liouville_growth_check(&[ChainEntry::from(2u64), ChainEntry::Descriptor(short)], ChainMode::DivisorAndGrowth)
        .map_err(|e| e.to_string())?;
    ensure!(!r.passed(), "a too-small descriptor was accepted");
    Ok("50 chains exact with u <= 2 theta_k; (2,4) rejected at index 0; level-2 descriptor chain accepted".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 Macaulay exactness", macaulay_exactness),
        ("2 norm lemmas", norm_lemmas),
        ("3 MP series", mp_series_checks),
        ("4 NL index arithmetic", nl_index_arithmetic),
        ("5 bound corollary", bound_corollary),
        ("6 certified linear algebra", certified_linear_algebra),
        ("7 pipeline soundness", pipeline_soundness),
        ("8 Smale test", smale_checks),
        ("9 Liouville", liouville_checks),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({})", secs(t.elapsed())),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why} ({})", secs(t.elapsed()));
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

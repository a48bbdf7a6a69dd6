use k3_periods::lattice::is_admissible_delta;
use k3_periods::nl_bounds::*;
use rug::float::Round;
use rug::Float;

#[test]
fn admissible_deltas_roundtrip_to_ten_thousand() {
    for delta in 1..=10_000i64 {
        if let Some(dg) = delta_to_dg(delta) {
            assert!(is_admissible_delta(delta));
            assert_eq!(dg.delta(), delta as i128);
            let n = normalize_dg(dg.d, dg.g).unwrap();
            assert_eq!(n.delta(), delta as i128);
            let mut cur = dg;
            while let Some(next) = descend(cur) {
                assert_eq!(next.delta(), cur.delta());
                cur = next;
            }
            assert_eq!(cur, n);
        } else {
            assert!(!is_admissible_delta(delta));
        }
    }
}

#[test]
fn sl_bound_holds_up_to_degree_fifty() {
    let mut count = 0;
    for d in 1..=50i64 {
        let mut g = 0;
        while DGIndex::new(d, g).delta() > 0 {
            let dims = hilbert_dims(DGIndex::new(d, g)).unwrap();
            assert!(dims.sl() > 0);
            count += 1;
            g += 1;
        }
    }
    assert_eq!(count, 5444);
}

#[test]
fn closed_forms_tighten_with_precision() {
    for delta in [1i64, 4, 9, 64, 1000, 100_000] {
        let mut prev_deg = deg_bound_closed_prec(delta, 64);
        let mut prev_h = height_bound_closed_prec(delta, 64);
        for prec in [128u32, 256, 512, 1024] {
            let deg = deg_bound_closed_prec(delta, prec);
            let h = height_bound_closed_prec(delta, prec);
            assert!(deg.le(&prev_deg) && h.le(&prev_h));
            prev_deg = deg;
            prev_h = h;
        }
    }
}

#[test]
fn comparison_report_small_deltas() {
    let rows = comparison_report(1, 64).unwrap();
    assert_eq!(rows.len(), (1..=64).filter(|&d| is_admissible_delta(d)).count());
    for row in &rows {
        let l = row.ledger_deg.log2(Round::Up).unwrap();
        let c = row.closed_deg.log2(Round::Up).unwrap();
        println!(
            "Δ={:>3} {:>8} r={:>3} N={:>14} ledger log2deg={:.6e} closed log2deg={:.6e} deg_dom={} height_dom={}",
            row.delta,
            row.dg.to_string(),
            row.dims.r,
            row.dims.exponent(),
            l.to_f64(),
            c.to_f64(),
            row.deg_dominated(),
            row.height_dominated()
        );
        assert!(l > Float::with_val(64, 0));
    }
}

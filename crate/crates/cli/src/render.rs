use rug::float::Round;
use rug::Float;

use k3_periods::nl_bounds::{short_decimal, ComparisonRow, TowerReal};
use k3_periods::pipeline::SeparationConstants;

use crate::Format;

/// `log₂` of a tower number as a decimal, with its level spelled out when
/// the logarithm itself is too large for a float.
pub fn log2_cell(t: &TowerReal) -> String {
    match t.log2(Round::Up) {
        Some(v) if v.is_finite() => short_decimal(&v),
        _ => t.describe(),
    }
}

pub fn float(x: &Float) -> String {
    short_decimal(x)
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders `(key, value)` pairs.
pub fn pairs(format: Format, items: &[(&str, String)]) -> String {
    match format {
        Format::Text => {
            let w = items.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            items.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
        }
        Format::Csv => {
            let head: Vec<String> = items.iter().map(|(k, _)| csv_escape(k)).collect();
            let vals: Vec<String> = items.iter().map(|(_, v)| csv_escape(v)).collect();
            format!("{}\n{}\n", head.join(","), vals.join(","))
        }
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = items
                .iter()
                .map(|(k, v)| (k.to_string(), serde_json::Value::String(v.clone())))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&map).expect("strings serialize"))
        }
    }
}

/// Renders a table with a header row.
pub fn table(format: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    match format {
        Format::Text => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for r in rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: Vec<&str>| -> String {
                let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                format!("{}\n", parts.join("  ").trim_end())
            };
            let mut out = line(header.to_vec());
            for r in rows {
                out += &line(r.iter().map(String::as_str).collect());
            }
            out
        }
        Format::Csv => {
            let mut out = format!("{}\n", header.join(","));
            for r in rows {
                let cells: Vec<String> = r.iter().map(|c| csv_escape(c)).collect();
                out += &format!("{}\n", cells.join(","));
            }
            out
        }
        Format::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let m: serde_json::Map<String, serde_json::Value> = header
                        .iter()
                        .zip(r)
                        .map(|(h, c)| (h.to_string(), serde_json::Value::String(c.clone())))
                        .collect();
                    serde_json::Value::Object(m)
                })
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&arr).expect("strings serialize"))
        }
    }
}

pub const NL_HEADER: [&str; 10] = [
    "delta",
    "d",
    "g",
    "r",
    "N",
    "log2_deg_ledger",
    "log2_deg_closed",
    "log2_height_ledger",
    "log2_height_closed",
    "mp_degree",
];

pub fn nl_row(row: &ComparisonRow, mp: &str) -> Vec<String> {
    vec![
        row.delta.to_string(),
        row.dg.d.to_string(),
        row.dg.g.to_string(),
        row.dims.r.to_string(),
        row.dims.exponent().to_string(),
        log2_cell(&row.ledger_deg),
        log2_cell(&row.closed_deg),
        log2_cell(&row.ledger_height),
        log2_cell(&row.closed_height),
        mp.to_string(),
    ]
}

pub fn constants_items(c: &SeparationConstants) -> Vec<(&'static str, String)> {
    vec![
        ("test_mode", if c.test_mode { "on" } else { "off" }.to_string()),
        ("precision", c.precision.to_string()),
        ("C_lemma (down)", float(&c.c_lemma)),
        ("lambda_min (down)", float(&c.lambda_min)),
        ("Gamma (up)", float(&c.gamma_up)),
        ("C_f (up)", float(&c.c_f)),
        ("eps_f (down)", float(&c.eps_f)),
        ("c", c.c.describe()),
        ("D", c.field_degree.to_string()),
        ("H (up)", float(&c.height)),
        ("norm Q12", c.q12_norm.to_string()),
        ("norm A (up)", float(&c.norm_a_up)),
    ]
}

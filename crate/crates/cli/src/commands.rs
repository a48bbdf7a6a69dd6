use std::fs;
use std::path::Path;

use rug::{Float, Integer};

use k3_periods::error::{Error, Result};
use k3_periods::lattice::{LatticeClass, LatticeData, RANK};
use k3_periods::mp_series::{mp_degree_upper, mp_series};
use k3_periods::nl_bounds::{compare_row, comparison_report, Direction, TowerReal};
use k3_periods::pipeline::decide::{Decision, Verdict};
use k3_periods::pipeline::liouville::{liouville_growth_check, liouville_partial_sum, ChainEntry, ChainMode};
use k3_periods::pipeline::period::MONOMIAL_ORDER;
use k3_periods::pipeline::{
    assemble_constants, decide, load_period_files, weil_height_rational, ConstantsCache, PeriodData,
    Provenance, SeparationConstants,
};
use k3_periods::poly::QPoly;
use k3_periods::reduction::build_q12;

use crate::render::{constants_items, nl_row, pairs, table, NL_HEADER};
use crate::{Cli, Command, FieldArgs, Format, Outcome, PeriodInputs};

/// `log₂c` used by `--test-mode` when no override is given.
const DEFAULT_TEST_LOG2_C: f64 = 1.0 / (1u64 << 40) as f64;

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Smoothness { quartic } => smoothness(cli, quartic),
        Command::Constants { inputs, field, out } => constants(cli, inputs, field, out.as_deref()),
        Command::Decide {
            gamma,
            lattice,
            quartic,
            periods,
            constants,
            field,
        } => decide_cmd(cli, gamma, lattice, quartic.as_deref(), periods.as_deref(), constants.as_deref(), field),
        Command::NlBound { delta, from, to } => nl_bound(cli, *delta, *from, *to),
        Command::MpDegree { delta } => mp_degree(cli, *delta),
        Command::Liouville { file, divisor_only } => liouville(cli, file, *divisor_only),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn with_context<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn mode_line(cli: &Cli) -> (&'static str, String) {
    ("test_mode", if cli.test_mode { "on" } else { "off" }.to_string())
}

fn smoothness(cli: &Cli, path: &Path) -> Result<Outcome> {
    let f = with_context(path, QPoly::from_json(&read(path)?, Some(4)))?;
    let (status, norm, outcome) = match build_q12(&f) {
        Ok(q) => ("SMOOTH", q.norm().to_string(), Outcome::Success),
        Err(Error::SingularSurface) => ("SINGULAR", "-".to_string(), Outcome::Negative),
        Err(e) => return Err(e),
    };
    let out = match cli.format {
        Format::Text if outcome == Outcome::Success => format!("SMOOTH (norm of Q12 = {norm})\n"),
        Format::Text => "SINGULAR\n".to_string(),
        f => pairs(f, &[mode_line(cli), ("result", status.into()), ("norm_q12", norm)]),
    };
    print!("{out}");
    Ok(outcome)
}

fn load_data(cli: &Cli, inputs: &PeriodInputs) -> Result<PeriodData> {
    load_period_files(&inputs.quartic, &inputs.lattice, &inputs.periods, cli.precision)
}

fn field_data(field: &FieldArgs, f: &QPoly, prec: u32) -> Result<(u32, Float)> {
    let (d0, h0) = weil_height_rational(f, prec);
    let d = field.degree.unwrap_or(d0);
    let h = match field.height {
        Some(h) if h.is_finite() && h >= 0.0 => Float::with_val(prec, h),
        Some(h) => return Err(Error::InvalidInput(format!("height {h} must be finite and non-negative"))),
        None => h0,
    };
    Ok((d, h))
}

fn apply_test_mode(cli: &Cli, field: &FieldArgs, c: SeparationConstants) -> Result<SeparationConstants> {
    match (cli.test_mode, field.test_log2_c) {
        (false, Some(_)) => Err(Error::InvalidInput("--test-log2-c requires --test-mode".into())),
        (false, None) => Ok(c),
        (true, v) => {
            let v = v.unwrap_or(DEFAULT_TEST_LOG2_C);
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidInput("--test-log2-c must be positive".into()));
            }
            Ok(c.with_test_log2_c(Float::with_val(64, v)))
        }
    }
}

fn provenance(cli: &Cli, inputs: &PeriodInputs) -> Provenance {
    let name = |p: &Path| p.file_name().map_or_else(|| p.display().to_string(), |n| n.to_string_lossy().into_owned());
    Provenance {
        precision: cli.precision,
        test_mode: cli.test_mode,
        monomial_order: MONOMIAL_ORDER.into(),
        inputs: vec![name(&inputs.quartic), name(&inputs.lattice), name(&inputs.periods)],
    }
}

fn constants(cli: &Cli, inputs: &PeriodInputs, field: &FieldArgs, out: Option<&Path>) -> Result<Outcome> {
    let data = load_data(cli, inputs)?;
    let (d, h) = field_data(field, data.f(), cli.precision.max(64))?;
    let c = apply_test_mode(cli, field, assemble_constants(&data, d, &h)?)?;
    let cache = c.to_cache(provenance(cli, inputs));
    match out {
        Some(path) => {
            fs::write(path, cache.to_json() + "\n")?;
            print!("{}", pairs(cli.format, &constants_items(&c)));
        }
        None => println!("{}", cache.to_json()),
    }
    Ok(Outcome::Success)
}

fn parse_gamma(s: &str, lattice: &LatticeData) -> Result<LatticeClass> {
    if s.trim() == "h" {
        return Ok(lattice.h());
    }
    let v: std::result::Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    let v = v.map_err(|e| Error::Parse(format!("class coordinates: {e}")))?;
    if v.len() != RANK {
        return Err(Error::ShapeMismatch(format!("class has {} coordinates, expected {RANK}", v.len())));
    }
    Ok(LatticeClass(v))
}

fn decision_items(cli: &Cli, d: &Decision) -> Vec<(&'static str, String)> {
    let mut items = vec![mode_line(cli), ("delta", d.delta.to_string())];
    if let Some(b) = &d.pairing {
        items.push(("pairing", b.to_string()));
    }
    if let Some(inv) = &d.inv_epsilon {
        items.push(("1/epsilon", inv.describe()));
    }
    items.push(("verdict", d.verdict.to_string()));
    items
}

fn verdict_outcome(v: &Verdict) -> Outcome {
    if v.is_conclusive() {
        Outcome::Success
    } else {
        Outcome::Negative
    }
}

#[allow(clippy::too_many_arguments)]
fn decide_cmd(
    cli: &Cli,
    gamma: &str,
    lattice_path: &Path,
    quartic: Option<&Path>,
    periods: Option<&Path>,
    cache: Option<&Path>,
    field: &FieldArgs,
) -> Result<Outcome> {
    let lattice = with_context(lattice_path, LatticeData::from_json(&read(lattice_path)?))?;
    let g = parse_gamma(gamma, &lattice)?;
    if lattice.multiple_of_h(&g).is_some() {
        let verdict = Verdict::InPicard(k3_periods::pipeline::decide::InReason::Hyperplane);
        let items = vec![mode_line(cli), ("delta", lattice.discriminant(&g).to_string()), ("verdict", verdict.to_string())];
        print!("{}", pairs(cli.format, &items));
        return Ok(Outcome::Success);
    }
    let (Some(quartic), Some(periods)) = (quartic, periods) else {
        return Err(Error::InvalidInput("--quartic and --periods are required unless the class is a multiple of h".into()));
    };
    let inputs = PeriodInputs {
        quartic: quartic.to_path_buf(),
        lattice: lattice_path.to_path_buf(),
        periods: periods.to_path_buf(),
    };
    let data = load_data(cli, &inputs)?;
    let consts = match cache {
        Some(path) => {
            let c = SeparationConstants::from_cache(&with_context(path, ConstantsCache::from_json(&read(path)?))?)?;
            if c.test_mode && !cli.test_mode {
                return Err(Error::InvalidInput("constants cache was written in test mode; pass --test-mode".into()));
            }
            if field.test_log2_c.is_some() || (cli.test_mode && !c.test_mode) {
                apply_test_mode(cli, field, c)?
            } else {
                c
            }
        }
        None => {
            let (d, h) = field_data(field, data.f(), cli.precision.max(64))?;
            apply_test_mode(cli, field, assemble_constants(&data, d, &h)?)?
        }
    };
    let d = decide(&g, &data, &consts)?;
    print!("{}", pairs(cli.format, &decision_items(cli, &d)));
    Ok(verdict_outcome(&d.verdict))
}

fn nl_bound(cli: &Cli, delta: Option<i64>, from: i64, to: i64) -> Result<Outcome> {
    let rows = match delta {
        Some(d) => compare_row(d)?.into_iter().collect(),
        None => comparison_report(from, to)?,
    };
    let top = rows.iter().map(|r| r.delta as usize).max().unwrap_or(0);
    let series = mp_series(top.max(cli.order))?;
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| nl_row(r, &series.coeff(r.delta as usize).to_string()))
        .collect();
    if rows.is_empty() {
        eprintln!("no admissible discriminant in range");
        return Ok(Outcome::Negative);
    }
    print!("{}", table(cli.format, &NL_HEADER, &cells));
    Ok(Outcome::Success)
}

fn mp_degree(cli: &Cli, delta: usize) -> Result<Outcome> {
    let v = mp_degree_upper(delta, cli.order)?;
    let items = [("delta", delta.to_string()), ("mp_degree", v.to_string())];
    print!("{}", pairs(cli.format, &items));
    Ok(Outcome::Success)
}

fn parse_entry(line: &str, lineno: usize) -> Result<ChainEntry> {
    let bad = |m: String| Error::Parse(format!("line {lineno}: {m}"));
    let parse_float = |v: &str| -> Result<Float> {
        let q = k3_periods::ball::parse_decimal(v.trim()).map_err(|e| bad(e.to_string()))?;
        Ok(Float::with_val(128, &q))
    };
    if let Some(v) = line.strip_prefix("log2log2:") {
        return Ok(ChainEntry::Descriptor(TowerReal::from_log2log2(parse_float(v)?, Direction::Down)));
    }
    if let Some(v) = line.strip_prefix("log2:") {
        return Ok(ChainEntry::Descriptor(TowerReal::from_log2(parse_float(v)?, Direction::Down)));
    }
    line.parse::<Integer>()
        .map(ChainEntry::Exact)
        .map_err(|e| bad(format!("{e}")))
}

fn liouville(cli: &Cli, path: &Path, divisor_only: bool) -> Result<Outcome> {
    let text = read(path)?;
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if !line.is_empty() {
            entries.push(parse_entry(line, i + 1)?);
        }
    }
    let mode = if divisor_only {
        ChainMode::DivisorOnly
    } else {
        ChainMode::DivisorAndGrowth
    };
    let report = liouville_growth_check(&entries, mode)?;
    let mut items = vec![("result", report.to_string())];
    let exact: Option<Vec<Integer>> = entries
        .iter()
        .map(|e| match e {
            ChainEntry::Exact(n) => Some(n.clone()),
            ChainEntry::Descriptor(_) => None,
        })
        .collect();
    if let Some(ints) = exact {
        if let Ok(s) = liouville_partial_sum(&ints) {
            items.push(("partial_sum", s.value.to_string()));
            items.push(("u", s.u.to_string()));
            items.push(("theta_k", s.theta_k.to_string()));
        }
    }
    let out = match cli.format {
        Format::Text => items.iter().map(|(k, v)| if *k == "result" { format!("{v}\n") } else { format!("{k} = {v}\n") }).collect(),
        f => pairs(f, &items),
    };
    print!("{out}");
    Ok(if report.passed() { Outcome::Success } else { Outcome::Negative })
}

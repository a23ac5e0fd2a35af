//! Command-line front end. [`run`] takes the argument vector and two sinks
//! and returns the process exit code: 0 on success, 1 for usage and
//! validation errors, 2 for internal and I/O errors.

mod args;

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::bounds::{
    evaluate_bound, fit_growth_exponent, verify_family, BoundId, BoundParams, BoundSpec,
    ChainPolicy, Family, SweepRow, VerifyRequest, CSV_HEADER,
};
use crate::chains::{count_chains, enumerate_chains, CountMode};
use crate::error::{invalid, Error, Result};
use crate::format::{read_set, to_json};
use crate::geometry::{ChainType, Scalar};
use crate::pointset::PointSet;
use crate::stats::{is_s_adaptable, max_flat_richness, min_separation, radial_line_profile};

use args::{
    BoundsArgs, ChainArgs, Cli, Command, CountArgs, EnumerateArgs, FamilyArgs, FitArgs,
    GenerateArgs, ModeArg, StatsArgs, VerifyArgs,
};

enum Output {
    Json(Value),
    Text(String),
}

pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 1,
            };
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    let output_path = cli.command.output_path().map(Path::to_path_buf);
    let result = dispatch(cli.command).and_then(|o| {
        let text = match o {
            Output::Json(v) => {
                let mut s = serde_json::to_string_pretty(&v).expect("json value");
                s.push('\n');
                s
            }
            Output::Text(s) => s,
        };
        match output_path {
            Some(p) => fs::write(&p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
            None => out.write_all(text.as_bytes()).map_err(Error::from),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let doc = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("json value")
            );
            let _ = writeln!(err, "dotchain: {e}");
            if e.is_validation() {
                1
            } else {
                2
            }
        }
    }
}

fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Generate(a) => generate(a),
        Command::Count(a) => count(a),
        Command::Enumerate(a) => enumerate(a),
        Command::Stats(a) => stats(a),
        Command::Bounds(a) => bounds(a),
        Command::Fit(a) => fit(a),
        Command::Verify(a) => verify(a),
    }
}

fn parse_alphas(list: &str, allow_zero: bool) -> Result<ChainType> {
    ChainType::parse_list(list, allow_zero)
}

fn parse_real(s: &str, flag: &str) -> Result<Scalar> {
    Scalar::parse_decimal(s).map_err(|_| invalid(format!("{flag} expects a number, got {s:?}")))
}

fn parse_sizes(list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| invalid(format!("--sweep expects comma-separated sizes, got {t:?}")))
        })
        .collect()
}

fn family(a: &FamilyArgs, name: &str, k: Option<usize>) -> Result<(Family, usize)> {
    let chain = a
        .alphas
        .as_deref()
        .map(|l| parse_alphas(l, true))
        .transpose()?;
    let need_k = || k.ok_or_else(|| invalid(format!("{name} needs --k")));
    let alpha1 = match &a.alpha1 {
        Some(s) => s.parse()?,
        None => Scalar::one(),
    };
    Ok(match name {
        "prop3" => (Family::Prop3 { alpha1 }, need_k()?),
        "axes2d" => (Family::Axes2d, need_k()?),
        "lenz3d" => {
            let k = match (&chain, k) {
                (Some(c), _) => c.k(),
                (None, k) => k.ok_or_else(|| invalid("lenz3d needs --k or --alphas"))?,
            };
            (Family::Lenz3d { alphas: chain }, k)
        }
        "random-disk" => (
            Family::RandomDisk {
                seed: a.seed,
                denom: a.denom,
            },
            k.unwrap_or(1),
        ),
        "grid" => (Family::Grid, k.unwrap_or(1)),
        other => return Err(invalid(format!(
            "unknown construction {other:?}; expected prop3, axes2d, lenz3d, random-disk or grid"
        ))),
    })
}

fn generate(a: GenerateArgs) -> Result<Output> {
    let (fam, k) = family(&a.family, &a.construction, a.k)?;
    let cfg = fam.generate(a.n, k)?;
    Ok(Output::Text(to_json(&cfg.set)))
}

fn chain_for(set: &PointSet, a: &ChainArgs) -> Result<ChainType> {
    match (&a.alphas, &set.provenance().chain_type) {
        (Some(list), _) => parse_alphas(list, a.allow_zero),
        (None, Some(t)) => Ok(t.clone()),
        (None, None) => Err(invalid("no chain type: pass --alphas")),
    }
}

fn count(a: CountArgs) -> Result<Output> {
    let set = read_set(&a.set)?;
    let chain = chain_for(&set, &a.chain)?;
    let modes = a.mode.modes();
    let mut reports = Vec::new();
    let mut counts = serde_json::Map::new();
    let mut with_repeats: Option<BigUint> = None;
    for mode in modes {
        let r = count_chains(&set, &chain, mode)?;
        counts.insert(mode.as_str().into(), Value::String(r.count.to_string()));
        if mode == CountMode::WithRepeats {
            with_repeats = Some(r.count.clone());
        }
        reports.push(r.to_json());
    }
    let mut doc = json!({
        "set": set.name(),
        "n": set.len(),
        "k": chain.k(),
        "alphas": chain.alphas(),
        "allow_zero": chain.allow_zero(),
        "counts": counts,
        "reports": reports,
    });
    // the promise is made for the generator's own type, counted with repeats
    let prov = set.provenance();
    if let (Some(bound), Some(native)) = (&prov.promised_count_lower_bound, &prov.chain_type) {
        doc["promised_count_lower_bound"] = Value::String(bound.to_string());
        if *native == chain {
            if let Some(c) = &with_repeats {
                doc["meets_promised_bound"] = Value::Bool(c >= bound);
            }
        }
    }
    Ok(Output::Json(doc))
}

fn enumerate(a: EnumerateArgs) -> Result<Output> {
    let set = read_set(&a.set)?;
    let chain = chain_for(&set, &a.chain)?;
    let mode = match a.mode {
        ModeArg::Both => return Err(invalid("enumerate takes --mode repeats or distinct")),
        m => m.modes()[0],
    };
    let e = enumerate_chains(&set, &chain, mode, a.limit)?;
    let witnesses: Vec<Value> = e
        .witnesses
        .iter()
        .zip(e.witness_points(&set))
        .map(|(idx, pts)| json!({ "indices": idx, "points": pts }))
        .collect();
    let mut doc = e.report.to_json();
    doc["limit"] = json!(a.limit);
    doc["witnesses"] = Value::Array(witnesses);
    Ok(Output::Json(doc))
}

fn stats(a: StatsArgs) -> Result<Output> {
    let set = read_set(&a.set)?;
    let threshold = parse_real(&a.energy_threshold, "--energy-threshold")?.to_f64();
    let d = set.dim();
    let mut doc = json!({ "set": set.name(), "n": set.len(), "dim": d });
    let flat_dims: Vec<usize> = match a.flat_dim {
        Some(f) => vec![f],
        None if d == 3 => vec![1, 2],
        None => vec![1],
    };
    for f in flat_dims {
        let rich = max_flat_richness(&set, f)?;
        let key = if f == 1 { "t" } else { "r" };
        doc[key] = json!(rich.max_points);
        doc[format!("{key}_flat")] = serde_json::to_value(&rich).expect("serializable");
    }
    doc["radial_max"] = match radial_line_profile(&set) {
        Ok(p) => json!(p.max_count),
        Err(Error::Unsupported(_)) => Value::Null,
        Err(e) => return Err(e),
    };
    doc["min_sep"] = if set.len() >= 2 {
        json!(min_separation(&set)?)
    } else {
        Value::Null
    };
    let mut energies = Vec::new();
    for s in a.s.iter().flat_map(|l| l.split(',')) {
        let s = parse_real(s.trim(), "--s")?.to_f64();
        energies
            .push(serde_json::to_value(is_s_adaptable(&set, s, threshold)?).expect("serializable"));
    }
    doc["energy"] = Value::Array(energies);
    Ok(Output::Json(doc))
}

fn bounds(a: BoundsArgs) -> Result<Output> {
    let id: BoundId = a.bound.parse()?;
    let set = a.set.as_deref().map(read_set).transpose()?;
    let mut p = BoundParams {
        n: a.n
            .map(|n| n as f64)
            .or(set.as_ref().map(|s| s.len() as f64)),
        k: a.k,
        t: a.t,
        r: a.r,
        d: a.d.or(set.as_ref().map(PointSet::dim)),
        s: a.s.as_deref().map(|s| parse_real(s, "--s")).transpose()?,
        ..Default::default()
    };
    if let Some(eps) = &a.eps {
        p.eps = parse_real(eps, "--eps")?;
    }
    if let Some(set) = &set {
        let d = set.dim();
        if id.needs_t() && p.t.is_none() {
            p.t = Some(max_flat_richness(set, if d == 2 { 1 } else { d - 2 })?.max_points as f64);
        }
        if id.needs_r() && p.r.is_none() {
            p.r = Some(max_flat_richness(set, d - 1)?.max_points as f64);
        }
    }
    let v = evaluate_bound(&BoundSpec::new(id, p.clone()))?;
    let mut doc = serde_json::to_value(&v).expect("serializable");
    doc["params"] = serde_json::to_value(&p).expect("serializable");
    doc["value"] = json!(v.value());
    Ok(Output::Json(doc))
}

/// A named column of `(n, count)` samples.
type Series = (String, Vec<(f64, f64)>);

/// Reads `n,count` or the full sweep layout; empty cells are skipped.
fn read_sweep_csv(path: &Path) -> Result<Vec<Series>> {
    let mut rdr =
        csv::Reader::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    let n_col = headers
        .iter()
        .position(|h| h.trim() == "n")
        .ok_or_else(|| Error::Parse("CSV needs an `n` column".into()))?;
    let cols: Vec<(usize, String)> = headers
        .iter()
        .enumerate()
        .filter(|(i, h)| *i != n_col && h.trim() != "elapsed_ms")
        .map(|(i, h)| (i, h.trim().to_string()))
        .collect();
    let mut series: Vec<Series> = cols.iter().map(|(_, h)| (h.clone(), Vec::new())).collect();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let num = |i: usize| -> Result<Option<f64>> {
            let cell = rec.get(i).unwrap_or("").trim();
            if cell.is_empty() {
                return Ok(None);
            }
            cell.parse::<f64>()
                .map(Some)
                .map_err(|_| Error::Parse(format!("not a number: {cell:?}")))
        };
        let n = num(n_col)?.ok_or_else(|| Error::Parse("empty n cell".into()))?;
        for (slot, (i, _)) in cols.iter().enumerate() {
            if let Some(c) = num(*i)? {
                series[slot].1.push((n, c));
            }
        }
    }
    series.retain(|(_, s)| !s.is_empty());
    if series.is_empty() {
        return Err(Error::Parse("CSV has no count column".into()));
    }
    Ok(series)
}

fn fit(a: FitArgs) -> Result<Output> {
    let series = read_sweep_csv(&a.input)?;
    let mut fits = Vec::new();
    for (column, samples) in &series {
        let f = fit_growth_exponent(samples)?;
        fits.push((column.clone(), f));
    }
    if a.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["column", "slope", "intercept", "r_squared"])
            .map_err(io)?;
        for (c, f) in &fits {
            w.write_record([
                c.clone(),
                f.slope.to_string(),
                f.intercept.to_string(),
                f.r_squared.to_string(),
            ])
            .map_err(io)?;
        }
        return csv_text(w);
    }
    let fits: Vec<Value> = fits
        .into_iter()
        .map(|(c, f)| {
            let mut v = serde_json::to_value(&f).expect("serializable");
            v["column"] = json!(c);
            v
        })
        .collect();
    Ok(Output::Json(json!({ "fits": fits })))
}

fn csv_text(w: csv::Writer<Vec<u8>>) -> Result<Output> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(Output::Text(String::from_utf8(bytes).expect("utf-8 csv")))
}

fn sweep_csv(rows: &[SweepRow]) -> Result<Output> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record(r.csv_record()).map_err(io)?;
    }
    csv_text(w)
}

fn verify(a: VerifyArgs) -> Result<Output> {
    let (fam, k) = family(&a.family_args, &a.family, a.k)?;
    let policy = match (&a.family_args.alphas, &fam) {
        (Some(list), f) if !matches!(f, Family::Lenz3d { .. }) => {
            ChainPolicy::Explicit(parse_alphas(list, a.allow_zero)?)
        }
        _ if a.surrogate => ChainPolicy::MostFrequentDot,
        _ => ChainPolicy::Auto,
    };
    let bound = match &a.bound {
        None => None,
        Some(id) => {
            let id: BoundId = id.parse()?;
            let mut p = BoundParams {
                t: a.t,
                r: a.r,
                s: a.s.as_deref().map(|s| parse_real(s, "--s")).transpose()?,
                ..Default::default()
            };
            if let Some(eps) = &a.eps {
                p.eps = parse_real(eps, "--eps")?;
            }
            Some((id, p))
        }
    };
    let slack = parse_real(&a.slack, "--slack")?.to_f64();
    if slack.is_nan() || slack < 0.0 {
        return Err(invalid("--slack must be >= 0"));
    }
    let req = VerifyRequest {
        family: fam,
        k,
        sweep: parse_sizes(&a.sweep)?,
        policy,
        bound,
        direction: a.direction.parse()?,
        slack,
        modes: a.mode.modes(),
    };
    let report = verify_family(&req)?;
    if a.csv {
        return sweep_csv(&report.rows);
    }
    Ok(Output::Json(
        serde_json::to_value(&report).expect("serializable"),
    ))
}

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{evaluate_bound, fit_growth_exponent, BoundId, BoundParams, BoundSpec, FitReport};
use crate::chains::{count_chains, CountMode};
use crate::constructions::{
    generate_axes2d, generate_grid, generate_lenz3d, generate_prop3, generate_random_disk,
    GeneratedConfig,
};
use crate::error::{invalid, Error, Result};
use crate::frame::{IntFrame, IntVal};
use crate::geometry::{ChainType, Scalar};
use crate::pointset::PointSet;
use crate::stats::max_flat_richness;

pub const DEFAULT_SLACK: f64 = 0.15;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Prop3 {
        alpha1: Scalar,
    },
    Axes2d,
    /// Targets default to all ones.
    Lenz3d {
        alphas: Option<ChainType>,
    },
    RandomDisk {
        seed: u64,
        denom: u64,
    },
    /// Sweep sizes are rounded down to a square number of points.
    Grid,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Prop3 { .. } => "prop3",
            Family::Axes2d => "axes2d",
            Family::Lenz3d { .. } => "lenz3d",
            Family::RandomDisk { .. } => "random-disk",
            Family::Grid => "grid",
        }
    }

    pub fn generate(&self, n: usize, k: usize) -> Result<GeneratedConfig> {
        let bare = |set: PointSet| GeneratedConfig {
            set,
            chain_type: None,
            promised_count_lower_bound: None,
        };
        match self {
            Family::Prop3 { alpha1 } => generate_prop3(n, k, alpha1),
            Family::Axes2d => generate_axes2d(n, k),
            Family::Lenz3d { alphas } => {
                let chain = match alphas {
                    Some(c) => c.clone(),
                    None => ChainType::new(vec![Scalar::one(); k])?,
                };
                if chain.k() != k {
                    return Err(invalid(format!(
                        "lenz3d targets have length {}, expected k = {k}",
                        chain.k()
                    )));
                }
                generate_lenz3d(n, &chain)
            }
            Family::RandomDisk { seed, denom } => generate_random_disk(n, *seed, *denom).map(bare),
            Family::Grid => generate_grid((n as f64).sqrt().floor() as usize).map(bare),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(Direction::Upper),
            "lower" => Ok(Direction::Lower),
            _ => Err(invalid(format!(
                "direction must be upper or lower, got {s:?}"
            ))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ChainPolicy {
    /// The family's own type if it has one, else `k` copies of the most
    /// frequent nonzero dot product of each generated set.
    Auto,
    /// `k` copies of the most frequent nonzero dot product, ignoring any
    /// type the family is built for.
    MostFrequentDot,
    Explicit(ChainType),
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRequest {
    pub family: Family,
    pub k: usize,
    pub sweep: Vec<usize>,
    pub policy: ChainPolicy,
    /// Bound to compare against; `n`, `k`, and (when absent) `t`, `r`, `d`
    /// are filled in per generated set. Without one the family's promised
    /// lower bound is the reference.
    pub bound: Option<(BoundId, BoundParams)>,
    pub direction: Direction,
    pub slack: f64,
    pub modes: Vec<CountMode>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    #[serde(serialize_with = "crate::decimal::opt_biguint::serialize")]
    pub count_with_repeats: Option<BigUint>,
    #[serde(serialize_with = "crate::decimal::opt_biguint::serialize")]
    pub count_distinct: Option<BigUint>,
    pub elapsed_ms: f64,
    pub alphas: Vec<Scalar>,
    pub reference: f64,
}

impl SweepRow {
    pub fn count(&self, mode: CountMode) -> Option<&BigUint> {
        match mode {
            CountMode::WithRepeats => self.count_with_repeats.as_ref(),
            CountMode::PairwiseDistinct => self.count_distinct.as_ref(),
        }
    }

    /// `n,count_with_repeats,count_distinct,elapsed_ms`; uncomputed counts
    /// are left empty.
    pub fn csv_record(&self) -> [String; 4] {
        let c = |v: &Option<BigUint>| v.as_ref().map(|v| v.to_string()).unwrap_or_default();
        [
            self.n.to_string(),
            c(&self.count_with_repeats),
            c(&self.count_distinct),
            format!("{:.3}", self.elapsed_ms),
        ]
    }
}

pub const CSV_HEADER: [&str; 4] = ["n", "count_with_repeats", "count_distinct", "elapsed_ms"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeVerdict {
    pub mode: CountMode,
    pub fit: FitReport,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub family: &'static str,
    pub k: usize,
    pub reference: String,
    pub target_exponent: f64,
    pub direction: Direction,
    pub slack: f64,
    pub rows: Vec<SweepRow>,
    pub verdicts: Vec<ModeVerdict>,
    pub pass: bool,
}

/// The most frequent nonzero dot product over ordered pairs of distinct
/// points, with its pair count. Ties go to the smaller value.
pub fn most_frequent_dot(set: &PointSet) -> Option<(Scalar, u64)> {
    let n = set.len();
    let frame = IntFrame::new(set.points(), set.dim());
    let mut counts: FxHashMap<IntVal, u64> = FxHashMap::default();
    for i in 0..n {
        for j in i + 1..n {
            let v = frame.dot(i, j);
            if !v.is_zero() {
                *counts.entry(v).or_insert(0) += 2;
            }
        }
    }
    let scale = frame.scale_sq();
    counts
        .into_iter()
        .map(|(v, c)| {
            (
                Scalar::ratio(v.to_big(), scale.clone()).expect("nonzero scale"),
                c,
            )
        })
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
}

fn chain_for(policy: &ChainPolicy, cfg: &GeneratedConfig, k: usize) -> Result<ChainType> {
    let surrogate = || {
        let (alpha, _) = most_frequent_dot(&cfg.set)
            .ok_or_else(|| invalid("set has no nonzero dot products"))?;
        ChainType::new(vec![alpha; k])
    };
    match (policy, &cfg.chain_type) {
        (ChainPolicy::Explicit(t), _) => Ok(t.clone()),
        (ChainPolicy::Auto, Some(t)) => Ok(t.clone()),
        (ChainPolicy::Auto, None) | (ChainPolicy::MostFrequentDot, _) => surrogate(),
    }
}

fn reference_value(req: &VerifyRequest, cfg: &GeneratedConfig, chain: &ChainType) -> Result<f64> {
    let Some((id, template)) = &req.bound else {
        let b = cfg.promised_count_lower_bound.as_ref().ok_or_else(|| {
            invalid(format!(
                "{} promises no count; pass a bound",
                req.family.name()
            ))
        })?;
        return Ok(b.to_f64().unwrap_or(f64::INFINITY));
    };
    let set = &cfg.set;
    let mut params = template.clone();
    params.n = Some(set.len() as f64);
    if params.k.is_none() || !matches!(id, BoundId::Hinge | BoundId::SingleDot) {
        params.k = Some(chain.k());
    }
    if params.d.is_none() {
        params.d = Some(set.dim());
    }
    if id.needs_t() && params.t.is_none() {
        let line_flat = if set.dim() == 2 { 1 } else { set.dim() - 2 };
        params.t = Some(max_flat_richness(set, line_flat)?.max_points as f64);
    }
    if id.needs_r() && params.r.is_none() {
        params.r = Some(max_flat_richness(set, set.dim() - 1)?.max_points as f64);
    }
    Ok(evaluate_bound(&BoundSpec::new(*id, params))?.value())
}

/// Generates the family at every sweep size, counts chains, fits growth
/// exponents and compares them with the reference exponent.
pub fn verify_family(req: &VerifyRequest) -> Result<VerifyReport> {
    if req.sweep.len() < 3 {
        return Err(invalid("verify needs at least 3 sweep sizes"));
    }
    if req.modes.is_empty() {
        return Err(invalid("verify needs at least one count mode"));
    }
    let mut rows = Vec::with_capacity(req.sweep.len());
    for &n in &req.sweep {
        let cfg = req.family.generate(n, req.k)?;
        let chain = chain_for(&req.policy, &cfg, req.k)?;
        let start = Instant::now();
        let mut row = SweepRow {
            n: cfg.set.len(),
            count_with_repeats: None,
            count_distinct: None,
            elapsed_ms: 0.0,
            alphas: chain.alphas().to_vec(),
            reference: reference_value(req, &cfg, &chain)?,
        };
        for &mode in &req.modes {
            let c = count_chains(&cfg.set, &chain, mode)?.count;
            match mode {
                CountMode::WithRepeats => row.count_with_repeats = Some(c),
                CountMode::PairwiseDistinct => row.count_distinct = Some(c),
            }
        }
        row.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        rows.push(row);
    }

    let reference_samples: Vec<(f64, f64)> =
        rows.iter().map(|r| (r.n as f64, r.reference)).collect();
    let target_exponent = fit_growth_exponent(&reference_samples)?.slope;
    let verdicts = req
        .modes
        .iter()
        .map(|&mode| {
            let samples: Vec<(f64, f64)> = rows
                .iter()
                .map(|r| {
                    let c = r
                        .count(mode)
                        .expect("counted")
                        .to_f64()
                        .unwrap_or(f64::INFINITY);
                    (r.n as f64, c)
                })
                .collect();
            let fit = fit_growth_exponent(&samples)?;
            let pass = match req.direction {
                Direction::Upper => fit.slope <= target_exponent + req.slack,
                Direction::Lower => fit.slope >= target_exponent - req.slack,
            };
            Ok(ModeVerdict { mode, fit, pass })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = verdicts.iter().all(|v| v.pass);
    Ok(VerifyReport {
        family: req.family.name(),
        k: req.k,
        reference: match &req.bound {
            Some((id, _)) => id.to_string(),
            None => "promised".into(),
        },
        target_exponent,
        direction: req.direction,
        slack: req.slack,
        rows,
        verdicts,
        pass,
    })
}

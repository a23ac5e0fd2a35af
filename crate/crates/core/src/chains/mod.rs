//! Exact counting and enumeration of k-chains.
//!
//! A k-chain of type `(a_1, ..., a_k)` in `E` is a tuple `(R_1, ..., R_{k+1})`
//! of points of `E` with `R_j . R_{j+1} = a_j` for every `j`. Two tuple
//! semantics are supported: entries may repeat ([`CountMode::WithRepeats`],
//! the default) or must be pairwise distinct.

mod distinct;
mod enumerate;
mod graph;
mod tally;

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ChainType, Scalar};
use crate::pointset::PointSet;

pub use enumerate::{enumerate_chains, Enumeration};
pub(crate) use graph::DotGraph;
use tally::{exact, Overflow, Tally};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CountMode {
    #[serde(rename = "with-repeats")]
    WithRepeats,
    #[serde(rename = "pairwise-distinct")]
    PairwiseDistinct,
}

impl CountMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountMode::WithRepeats => "with-repeats",
            CountMode::PairwiseDistinct => "pairwise-distinct",
        }
    }
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of one counting run.
#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub count: BigUint,
    pub mode: CountMode,
    pub n: usize,
    pub chain_type: ChainType,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct CountReportRecord<'a> {
    #[serde(with = "crate::decimal::biguint")]
    count: &'a BigUint,
    mode: CountMode,
    n: usize,
    k: usize,
    alphas: &'a [Scalar],
    elapsed_ms: f64,
}

impl CountReport {
    pub fn k(&self) -> usize {
        self.chain_type.k()
    }

    pub fn elapsed_ms(&self) -> f64 {
        self.elapsed.as_secs_f64() * 1e3
    }

    /// The single-record JSON form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CountReportRecord {
            count: &self.count,
            mode: self.mode,
            n: self.n,
            k: self.k(),
            alphas: self.chain_type.alphas(),
            elapsed_ms: self.elapsed_ms(),
        })
        .expect("report serializes")
    }
}

fn require_nonempty(set: &PointSet) -> Result<()> {
    if set.is_empty() {
        return Err(Error::InvalidParameter("point set is empty".into()));
    }
    Ok(())
}

/// Counts chains with repeats allowed by layered path counting:
/// `v_0 = 1`, `v_j(Q) = sum over P with P.Q = a_j of v_{j-1}(P)`, answer
/// `sum_Q v_k(Q)`.
pub fn count_chains_dp(set: &PointSet, chain: &ChainType) -> Result<CountReport> {
    count_chains_pinned(set, chain, &[])
}

/// Like [`count_chains_dp`], but slot `i` of the tuple is forced to the
/// point with index `pins[i]` whenever `pins[i]` is `Some`. Missing
/// trailing entries are unpinned.
pub fn count_chains_pinned(
    set: &PointSet,
    chain: &ChainType,
    pins: &[Option<usize>],
) -> Result<CountReport> {
    require_nonempty(set)?;
    if pins.len() > chain.k() + 1 {
        return Err(Error::InvalidParameter(format!(
            "{} pins for a {}-chain with {} slots",
            pins.len(),
            chain.k(),
            chain.k() + 1
        )));
    }
    if let Some(&bad) = pins.iter().flatten().find(|&&i| i >= set.len()) {
        return Err(Error::InvalidParameter(format!(
            "pinned index {bad} out of range"
        )));
    }
    let start = Instant::now();
    let graph = DotGraph::build(set, chain);
    let count = exact(
        || layered_walks::<u128>(&graph, pins),
        || layered_walks::<BigUint>(&graph, pins),
    );
    Ok(CountReport {
        count,
        mode: CountMode::WithRepeats,
        n: set.len(),
        chain_type: chain.clone(),
        elapsed: start.elapsed(),
    })
}

fn layered_walks<T: Tally>(
    g: &DotGraph,
    pins: &[Option<usize>],
) -> std::result::Result<T, Overflow> {
    let pin = |slot: usize| pins.get(slot).copied().flatten();
    let allowed = |slot: usize, v: usize| pin(slot).is_none_or(|p| p == v);

    let mut cur: Vec<T> = (0..g.n)
        .map(|v| if allowed(0, v) { T::unit() } else { T::nil() })
        .collect();
    for step in 0..g.k() {
        let mut next = vec![T::nil(); g.n];
        for (w, slot) in next.iter_mut().enumerate() {
            if !allowed(step + 1, w) {
                continue;
            }
            for &v in g.neighbors(step, w) {
                let c = &cur[v as usize];
                if !c.is_nil() {
                    slot.add_assign(c).ok_or(Overflow)?;
                }
            }
        }
        cur = next;
    }
    let mut total = T::nil();
    for c in &cur {
        total.add_assign(c).ok_or(Overflow)?;
    }
    Ok(total)
}

/// Counts chains whose entries are pairwise distinct.
pub fn count_chains_distinct(set: &PointSet, chain: &ChainType) -> Result<CountReport> {
    require_nonempty(set)?;
    let start = Instant::now();
    let graph = DotGraph::build(set, chain);
    let count = distinct::count_injective(&graph);
    Ok(CountReport {
        count,
        mode: CountMode::PairwiseDistinct,
        n: set.len(),
        chain_type: chain.clone(),
        elapsed: start.elapsed(),
    })
}

pub fn count_chains(set: &PointSet, chain: &ChainType, mode: CountMode) -> Result<CountReport> {
    match mode {
        CountMode::WithRepeats => count_chains_dp(set, chain),
        CountMode::PairwiseDistinct => count_chains_distinct(set, chain),
    }
}

/// Ordered pairs `(P, Q)` of distinct points of `set` with `P.Q = alpha`.
pub fn count_pairs_with_dot(set: &PointSet, alpha: &Scalar, allow_zero: bool) -> Result<u64> {
    if alpha.is_zero() && !allow_zero {
        return Err(Error::ZeroAlpha { index: 0 });
    }
    let graph = DotGraph::for_targets(set, std::slice::from_ref(alpha));
    Ok(graph.off_diagonal_pairs(0))
}

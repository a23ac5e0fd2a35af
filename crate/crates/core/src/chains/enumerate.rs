use std::time::Instant;

use num_bigint::BigUint;

use super::graph::DotGraph;
use super::tally::exact;
use super::{distinct, layered_walks, require_nonempty, CountMode, CountReport};
use crate::error::Result;
use crate::geometry::{ChainType, Point};
use crate::pointset::PointSet;

/// Exact count plus up to `limit` witness tuples, as point indices in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    pub report: CountReport,
    pub witnesses: Vec<Vec<usize>>,
}

impl Enumeration {
    pub fn witness_points<'a>(
        &'a self,
        set: &'a PointSet,
    ) -> impl Iterator<Item = Vec<&'a Point>> + 'a {
        self.witnesses
            .iter()
            .map(move |w| w.iter().map(|&i| &set.points()[i]).collect())
    }
}

/// Counts chains in the requested mode and collects the first `limit`
/// witnesses by depth-first search over the dot adjacency. `limit == 0`
/// only counts.
pub fn enumerate_chains(
    set: &PointSet,
    chain: &ChainType,
    mode: CountMode,
    limit: usize,
) -> Result<Enumeration> {
    require_nonempty(set)?;
    let start = Instant::now();
    let graph = DotGraph::build(set, chain);
    let count: BigUint = match mode {
        CountMode::WithRepeats => exact(
            || layered_walks::<u128>(&graph, &[]),
            || layered_walks::<BigUint>(&graph, &[]),
        ),
        CountMode::PairwiseDistinct => distinct::count_injective(&graph),
    };
    let mut witnesses = Vec::new();
    if limit > 0 {
        let mut search = Search {
            g: &graph,
            distinct: mode == CountMode::PairwiseDistinct,
            limit,
            used: vec![false; graph.n],
            path: Vec::with_capacity(graph.k() + 1),
            out: &mut witnesses,
        };
        for v in 0..graph.n {
            if search.visit(v) {
                break;
            }
        }
    }
    Ok(Enumeration {
        report: CountReport {
            count,
            mode,
            n: set.len(),
            chain_type: chain.clone(),
            elapsed: start.elapsed(),
        },
        witnesses,
    })
}

struct Search<'a> {
    g: &'a DotGraph,
    distinct: bool,
    limit: usize,
    used: Vec<bool>,
    path: Vec<usize>,
    out: &'a mut Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Extends the path with `v`; returns true once the limit is reached.
    fn visit(&mut self, v: usize) -> bool {
        if self.distinct && self.used[v] {
            return false;
        }
        self.path.push(v);
        self.used[v] = true;
        let done = if self.path.len() == self.g.k() + 1 {
            self.out.push(self.path.clone());
            self.out.len() >= self.limit
        } else {
            let step = self.path.len() - 1;
            let mut done = false;
            for &w in self.g.neighbors(step, v) {
                if self.visit(w as usize) {
                    done = true;
                    break;
                }
            }
            done
        };
        self.path.pop();
        self.used[v] = false;
        done
    }
}

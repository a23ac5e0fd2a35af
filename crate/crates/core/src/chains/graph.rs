use rustc_hash::FxHashMap;

use crate::frame::{IntFrame, IntVal};
use crate::geometry::{ChainType, Scalar};
use crate::pointset::PointSet;

/// Dot-product adjacency for each distinct target of a chain type.
///
/// `step_slot[j]` names the adjacency used by step `j`. Neighbor lists are
/// sorted by point index and include `v` itself when `v.v` hits the target.
pub(crate) struct DotGraph {
    pub n: usize,
    pub step_slot: Vec<usize>,
    adj: Vec<Vec<Vec<u32>>>,
    bits: Vec<Vec<u64>>,
    words: usize,
}

impl DotGraph {
    pub fn build(set: &PointSet, chain: &ChainType) -> Self {
        Self::for_targets(set, chain.alphas())
    }

    pub fn for_targets(set: &PointSet, targets: &[Scalar]) -> Self {
        let n = set.len();
        let mut distinct: Vec<&Scalar> = Vec::new();
        let step_slot = targets
            .iter()
            .map(|a| match distinct.iter().position(|d| *d == a) {
                Some(i) => i,
                None => {
                    distinct.push(a);
                    distinct.len() - 1
                }
            })
            .collect();

        let frame = IntFrame::new(set.points(), set.dim());
        let mut lookup: FxHashMap<IntVal, usize> = FxHashMap::default();
        for (slot, a) in distinct.iter().enumerate() {
            if let Some(t) = frame.scaled_target(a) {
                lookup.insert(IntVal::normalize(t), slot);
            }
        }

        let mut adj = vec![vec![Vec::new(); n]; distinct.len()];
        if !lookup.is_empty() {
            for i in 0..n {
                for j in i..n {
                    if let Some(&slot) = lookup.get(&frame.dot(i, j)) {
                        adj[slot][i].push(j as u32);
                        if i != j {
                            adj[slot][j].push(i as u32);
                        }
                    }
                }
            }
        }

        let words = n.div_ceil(64);
        let bits = adj
            .iter()
            .map(|lists| {
                let mut b = vec![0u64; n * words];
                for (v, list) in lists.iter().enumerate() {
                    for &w in list {
                        b[v * words + w as usize / 64] |= 1 << (w % 64);
                    }
                }
                b
            })
            .collect();

        DotGraph {
            n,
            step_slot,
            adj,
            bits,
            words,
        }
    }

    pub fn k(&self) -> usize {
        self.step_slot.len()
    }

    pub fn neighbors(&self, step: usize, v: usize) -> &[u32] {
        &self.adj[self.step_slot[step]][v]
    }

    pub fn has_edge(&self, step: usize, v: usize, w: usize) -> bool {
        let b = &self.bits[self.step_slot[step]];
        b[v * self.words + w / 64] >> (w % 64) & 1 == 1
    }

    pub fn has_self_loop(&self, step: usize) -> bool {
        (0..self.n).any(|v| self.has_edge(step, v, v))
    }

    /// For each slot `0..=k`, which points occur there in at least one walk.
    pub fn slot_candidates(&self) -> Vec<Vec<bool>> {
        let k = self.k();
        let mut fwd = vec![vec![true; self.n]];
        for step in 0..k {
            let mut next = vec![false; self.n];
            for v in (0..self.n).filter(|&v| fwd[step][v]) {
                for &w in self.neighbors(step, v) {
                    next[w as usize] = true;
                }
            }
            fwd.push(next);
        }
        let mut cand = fwd;
        for step in (0..k).rev() {
            for v in 0..self.n {
                if cand[step][v] {
                    cand[step][v] = self
                        .neighbors(step, v)
                        .iter()
                        .any(|&w| cand[step + 1][w as usize]);
                }
            }
        }
        cand
    }

    /// Ordered pairs `(v, w)`, `v != w`, joined at `step`.
    pub fn off_diagonal_pairs(&self, step: usize) -> u64 {
        self.adj[self.step_slot[step]]
            .iter()
            .enumerate()
            .map(|(v, list)| list.iter().filter(|&&w| w as usize != v).count() as u64)
            .sum()
    }
}

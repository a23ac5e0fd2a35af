//! Pairwise-distinct chain counting by Moebius inversion over set
//! partitions of the tuple slots.
//!
//! For a partition `pi` of the slots `{0..=k}`, let `N(pi)` count the walks
//! that are constant on every block of `pi` (other coincidences allowed).
//! The injective count is `sum_pi mu(0, pi) N(pi)` with
//! `mu(0, pi) = prod_B (-1)^(|B|-1) (|B|-1)!`.
//!
//! Each `N(pi)` is a left-to-right sweep whose state holds the current
//! slot's point plus the points already chosen for blocks that recur
//! later. Reachable states stay close to the with-repeats prefix counts on
//! sparse dot graphs, which is what keeps k = 6 at a few hundred points
//! tractable where backtracking would visit every chain.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::graph::DotGraph;
use super::tally::{exact, Overflow, Tally};

type Key = SmallVec<[u32; 8]>;

pub(crate) fn count_injective(g: &DotGraph) -> BigUint {
    let slots = g.k() + 1;
    let self_loops: Vec<bool> = (0..g.k()).map(|s| g.has_self_loop(s)).collect();
    let cand = g.slot_candidates();
    let mut total = BigInt::zero();

    for_each_partition(slots, &mut |blocks| {
        // merged neighbours need a point whose self-dot hits that step's target
        if (0..g.k()).any(|s| blocks[s] == blocks[s + 1] && !self_loops[s]) {
            return;
        }
        // a block can only take points that fit every one of its slots
        let nblocks = blocks.iter().max().map_or(0, |m| m + 1);
        let mut domains = vec![vec![true; g.n]; nblocks];
        for (slot, &b) in blocks.iter().enumerate() {
            for (d, &c) in domains[b].iter_mut().zip(&cand[slot]) {
                *d &= c;
            }
        }
        if domains.iter().any(|d| !d.contains(&true)) {
            return;
        }
        let (negative, magnitude) = mobius(blocks);
        let plan = Plan::new(blocks, domains);
        let walks = exact(|| sweep::<u128>(g, &plan), || sweep::<BigUint>(g, &plan));
        if walks.is_zero() {
            return;
        }
        let term = BigInt::from_biguint(Sign::Plus, walks * magnitude);
        if negative {
            total -= term;
        } else {
            total += term;
        }
    });

    total
        .to_biguint()
        .expect("inclusion-exclusion total is a count, hence nonnegative")
}

/// Calls `f` with every set partition of `0..len` as a restricted growth
/// string (block ids numbered in order of first appearance).
pub(crate) fn for_each_partition(len: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(buf: &mut Vec<usize>, len: usize, max: usize, f: &mut dyn FnMut(&[usize])) {
        if buf.len() == len {
            f(buf);
            return;
        }
        for b in 0..=max + 1 {
            buf.push(b);
            rec(buf, len, max.max(b), f);
            buf.pop();
        }
    }
    if len == 0 {
        f(&[]);
        return;
    }
    let mut buf = vec![0];
    rec(&mut buf, len, 0, f);
}

fn mobius(blocks: &[usize]) -> (bool, BigUint) {
    let nblocks = blocks.iter().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; nblocks];
    for &b in blocks {
        sizes[b] += 1;
    }
    let mut negative = false;
    let mut magnitude = BigUint::one();
    for s in sizes {
        if (s - 1) % 2 == 1 {
            negative = !negative;
        }
        for f in 2..s {
            magnitude *= f;
        }
    }
    (negative, magnitude)
}

#[derive(Clone, Copy)]
enum Source {
    Old(usize),
    New,
}

struct Step {
    /// Index of the current slot's block in the incoming key.
    from: usize,
    /// Index of the next slot's block in the incoming key, if already chosen.
    target: Option<usize>,
    /// Allowed points for the next slot when it opens a new block.
    domain: Vec<bool>,
    project: Vec<Source>,
}

struct Plan {
    start: Vec<bool>,
    steps: Vec<Step>,
}

impl Plan {
    fn new(blocks: &[usize], domains: Vec<Vec<bool>>) -> Plan {
        let slots = blocks.len();
        let nblocks = blocks.iter().max().map_or(0, |m| m + 1);
        let mut first = vec![usize::MAX; nblocks];
        let mut last = vec![0; nblocks];
        for (i, &b) in blocks.iter().enumerate() {
            first[b] = first[b].min(i);
            last[b] = i;
        }
        let tracked = |i: usize| -> Vec<usize> {
            (0..nblocks)
                .filter(|&b| first[b] <= i && (last[b] > i || b == blocks[i]))
                .collect()
        };
        let steps = (0..slots.saturating_sub(1))
            .map(|i| {
                let here = tracked(i);
                let there = tracked(i + 1);
                let idx = |b: usize| here.iter().position(|&x| x == b);
                let next = blocks[i + 1];
                Step {
                    from: idx(blocks[i]).expect("current block is tracked"),
                    target: idx(next),
                    domain: domains[next].clone(),
                    project: there
                        .iter()
                        .map(|&b| match idx(b) {
                            Some(j) => Source::Old(j),
                            None => {
                                debug_assert_eq!(b, next);
                                Source::New
                            }
                        })
                        .collect(),
                }
            })
            .collect();
        Plan {
            start: domains[blocks[0]].clone(),
            steps,
        }
    }
}

fn sweep<T: Tally>(g: &DotGraph, plan: &Plan) -> Result<T, Overflow> {
    let mut cur: FxHashMap<Key, T> = FxHashMap::default();
    for v in (0..g.n).filter(|&v| plan.start[v]) {
        cur.insert(SmallVec::from_slice(&[v as u32]), T::unit());
    }
    for (s, step) in plan.steps.iter().enumerate() {
        let mut next: FxHashMap<Key, T> = FxHashMap::default();
        let mut push = |key: &Key, w: u32, c: &T| -> Result<(), Overflow> {
            let out: Key = step
                .project
                .iter()
                .map(|src| match *src {
                    Source::Old(j) => key[j],
                    Source::New => w,
                })
                .collect();
            next.entry(out)
                .or_insert_with(T::nil)
                .add_assign(c)
                .ok_or(Overflow)
        };
        for (key, c) in &cur {
            let v = key[step.from] as usize;
            match step.target {
                Some(j) => {
                    let w = key[j];
                    if g.has_edge(s, v, w as usize) {
                        push(key, w, c)?;
                    }
                }
                None => {
                    for &w in g.neighbors(s, v) {
                        if step.domain[w as usize] {
                            push(key, w, c)?;
                        }
                    }
                }
            }
        }
        if next.is_empty() {
            return Ok(T::nil());
        }
        cur = next;
    }
    let mut total = T::nil();
    for c in cur.values() {
        total.add_assign(c).ok_or(Overflow)?;
    }
    Ok(total)
}

//! Brute-force oracles shared by the integration tests. Each is a direct
//! loop over exact rationals, independent of the library's integer frame
//! and counting kernels.
#![allow(dead_code)]

use dotchain::{ChainType, Point, PointSet, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

pub fn dot_naive(a: &Point, b: &Point) -> Scalar {
    a.coords()
        .iter()
        .zip(b.coords())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sq_dist_naive(a: &Point, b: &Point) -> Scalar {
    a.coords()
        .iter()
        .zip(b.coords())
        .fold(Scalar::zero(), |acc, (x, y)| {
            let d = x - y;
            acc + &d * &d
        })
}

/// Every chain as a tuple of indices, in lexicographic order, by nested
/// loops over all slots.
pub fn oracle_chains(set: &PointSet, alphas: &[Scalar], distinct: bool) -> Vec<Vec<usize>> {
    let pts = set.points();
    let n = pts.len();
    let k = alphas.len();
    let mut out = Vec::new();
    let mut tuple = vec![0usize; k + 1];
    fn rec(
        pts: &[Point],
        alphas: &[Scalar],
        distinct: bool,
        slot: usize,
        tuple: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if slot == tuple.len() {
            out.push(tuple.clone());
            return;
        }
        for i in 0..pts.len() {
            if distinct && tuple[..slot].contains(&i) {
                continue;
            }
            if slot > 0 && dot_naive(&pts[tuple[slot - 1]], &pts[i]) != alphas[slot - 1] {
                continue;
            }
            tuple[slot] = i;
            rec(pts, alphas, distinct, slot + 1, tuple, out);
        }
    }
    if n > 0 {
        rec(pts, alphas, distinct, 0, &mut tuple, &mut out);
    }
    out
}

pub fn oracle_count(set: &PointSet, alphas: &[Scalar], distinct: bool) -> u64 {
    oracle_chains(set, alphas, distinct).len() as u64
}

/// Mean of `|P - Q|^-s` over unordered pairs.
pub fn oracle_energy(set: &PointSet, s: f64) -> f64 {
    let pts = set.points();
    let mut sum = 0.0;
    let mut pairs = 0u64;
    for i in 0..pts.len() {
        for j in 0..i {
            let d = sq_dist_naive(&pts[i], &pts[j]).to_f64().sqrt();
            sum += d.powf(-s);
            pairs += 1;
        }
    }
    sum / pairs as f64
}

pub fn oracle_min_sq_sep(set: &PointSet) -> Scalar {
    let pts = set.points();
    let mut best: Option<Scalar> = None;
    for i in 0..pts.len() {
        for j in 0..i {
            let d = sq_dist_naive(&pts[i], &pts[j]);
            if best.as_ref().is_none_or(|b| d < *b) {
                best = Some(d);
            }
        }
    }
    best.unwrap()
}

/// Largest number of points on one line, by testing every pair's line
/// against every point.
pub fn oracle_line_richness(set: &PointSet) -> usize {
    let pts = set.points();
    let n = pts.len();
    if n < 2 {
        return n;
    }
    let mut best = 2;
    for i in 0..n {
        for j in i + 1..n {
            let d = &pts[j] - &pts[i];
            let on = (0..n)
                .filter(|&m| {
                    let e = &pts[m] - &pts[i];
                    // e parallel to d: all 2x2 minors vanish
                    (0..d.dim()).all(|a| (a + 1..d.dim()).all(|b| &d[a] * &e[b] == &d[b] * &e[a]))
                })
                .count();
            best = best.max(on);
        }
    }
    best
}

/// A random small rational: numerator in `-range..=range`, denominator in
/// `{1, 2}` (or `{1}` when `whole`).
pub fn small_rational(r: &mut ChaCha8Rng, range: i64, whole: bool) -> Scalar {
    let num = r.random_range(-range..=range);
    let den = if whole { 1 } else { r.random_range(1..=2) };
    Scalar::ratio(num, den).unwrap()
}

/// A random duplicate-free set of up to `max_n` points with small
/// coordinates, so dot products collide often.
pub fn random_set(r: &mut ChaCha8Rng, max_n: usize, dim: usize) -> PointSet {
    let n = r.random_range(1..=max_n);
    let whole = r.random_bool(0.7);
    let mut pts: Vec<Point> = Vec::new();
    let mut attempts = 0;
    while pts.len() < n && attempts < 10 * max_n {
        attempts += 1;
        let p = Point::new((0..dim).map(|_| small_rational(r, 2, whole)).collect()).unwrap();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointSet::external("random", pts).unwrap()
}

/// A chain type of length `k` whose targets are mostly realized dot
/// products of the set, occasionally arbitrary rationals.
pub fn random_chain(r: &mut ChaCha8Rng, set: &PointSet, k: usize) -> ChainType {
    let pts = set.points();
    let alphas = (0..k)
        .map(|_| loop {
            let a = if r.random_bool(0.85) {
                let i = r.random_range(0..pts.len());
                let j = r.random_range(0..pts.len());
                dot_naive(&pts[i], &pts[j])
            } else {
                small_rational(r, 6, false)
            };
            if !a.is_zero() {
                break a;
            }
        })
        .collect();
    ChainType::new(alphas).unwrap()
}

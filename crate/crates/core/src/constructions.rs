//! Deterministic generators for extremal configurations and baseline sets.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::error::{invalid, Result};
use crate::geometry::{ChainType, Point, Scalar};
use crate::pointset::{PointSet, Provenance};

/// Name of the pseudo-random generator recorded in provenance.
pub const RNG_NAME: &str = "ChaCha8Rng (rand_chacha 0.9, seed_from_u64)";

/// A generated set with the chain type it is built for and the number of
/// chains the construction guarantees.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedConfig {
    pub set: PointSet,
    pub chain_type: Option<ChainType>,
    pub promised_count_lower_bound: Option<BigUint>,
}

impl GeneratedConfig {
    fn new(
        points: Vec<Point>,
        name: String,
        prov: Provenance,
        chain: ChainType,
        bound: BigUint,
    ) -> Result<Self> {
        let prov = Provenance {
            chain_type: Some(chain.clone()),
            promised_count_lower_bound: Some(bound.clone()),
            ..prov
        };
        Ok(GeneratedConfig {
            set: PointSet::new(name, points, prov)?,
            chain_type: Some(chain),
            promised_count_lower_bound: Some(bound),
        })
    }
}

/// Staircase construction on the radial line `y = x`.
///
/// Fixed points `(m, m)` for `m = 1..=ceil(k/2)` and `n - ceil(k/2)` points
/// `(t, alpha1 - t)`, `t = 2, 3, ...`, on the `alpha1`-line of `(1, 1)`.
/// Since `(m, m).(x, y) = m (x + y)`, every fixed point sees the whole line
/// at target `m * alpha1`, giving the type
/// `(alpha1, alpha1, 2 alpha1, 2 alpha1, ...)`. A chain that alternates
/// line point / fixed point has a free choice at each odd slot, so there
/// are at least `(n - ceil(k/2))^ceil((k+1)/2)` of them.
pub fn generate_prop3(n: usize, k: usize, alpha1: &Scalar) -> Result<GeneratedConfig> {
    if k < 2 {
        return Err(invalid(format!("prop3 needs k >= 2, got {k}")));
    }
    if n <= k {
        return Err(invalid(format!("prop3 needs n > k, got n = {n}, k = {k}")));
    }
    if alpha1.is_zero() {
        return Err(crate::Error::ZeroAlpha { index: 0 });
    }
    let fixed = k.div_ceil(2);
    let on_line = n - fixed;
    let mut points: Vec<Point> = (1..=fixed as i64).map(|m| Point::ints(&[m, m])).collect();
    let mut t = 2i64;
    while points.len() < n {
        let p = Point::xy(Scalar::from(t), alpha1 - &Scalar::from(t));
        // (t, alpha1 - t) is a fixed point only when alpha1 = 2t
        if !points[..fixed].contains(&p) {
            points.push(p);
        }
        t += 1;
    }
    let alphas = (0..k)
        .map(|j| alpha1 * &Scalar::from((j / 2 + 1) as i64))
        .collect();
    let chain = ChainType::new(alphas)?;
    let odd_slots = (k + 1).div_ceil(2) as u32;
    let bound = BigUint::from(on_line).pow(odd_slots);
    let prov = Provenance::generated("prop3")
        .param("n", n)
        .param("k", k)
        .param("alpha1", alpha1.to_string());
    GeneratedConfig::new(points, format!("prop3-n{n}-k{k}"), prov, chain, bound)
}

/// `n/2` points on each axis; all cross-axis dot products vanish, so every
/// axis-alternating tuple is a chain of the all-zero type.
pub fn generate_axes2d(n: usize, k: usize) -> Result<GeneratedConfig> {
    if n % 2 == 1 || n < 4 {
        return Err(invalid(format!("axes2d needs even n >= 4, got {n}")));
    }
    if k < 1 {
        return Err(invalid("axes2d needs k >= 1"));
    }
    let half = n / 2;
    let mut points = Vec::with_capacity(n);
    points.extend((1..=half as i64).map(|i| Point::ints(&[i, 0])));
    points.extend((1..=half as i64).map(|i| Point::ints(&[0, i])));
    let chain = ChainType::allowing_zero(vec![Scalar::zero(); k])?;
    let bound = BigUint::from(2u32) * BigUint::from(half).pow(k as u32 + 1);
    let prov = Provenance::generated("axes2d").param("n", n).param("k", k);
    GeneratedConfig::new(points, format!("axes2d-n{n}-k{k}"), prov, chain, bound)
}

/// `k + 1` lines in space with `floor(n/(k+1))` points each. Line `j` has
/// constant first coordinate `x_j` (`x_1 = 1`, `x_{j+1} = a_j / x_j`) and a
/// free coordinate alternating between z (odd `j`) and y (even `j`), so a
/// point on line `j` dotted with one on line `j+1` gives exactly
/// `x_j x_{j+1} = a_j`.
///
/// Free values are `1..=p`. When a line repeats an earlier line (same `x`,
/// same free axis) it takes the next unused block of `p` values instead,
/// keeping the set duplicate-free.
pub fn generate_lenz3d(n: usize, chain: &ChainType) -> Result<GeneratedConfig> {
    let k = chain.k();
    if let Some(index) = chain.alphas().iter().position(Scalar::is_zero) {
        return Err(crate::Error::ZeroAlpha { index });
    }
    if n < k + 1 {
        return Err(invalid(format!(
            "lenz3d needs n >= k + 1, got n = {n}, k = {k}"
        )));
    }
    let per_line = n / (k + 1);
    let mut xs = vec![Scalar::one()];
    for a in chain.alphas() {
        let next = a.checked_div(xs.last().expect("nonempty"))?;
        xs.push(next);
    }
    let mut used: Vec<(Scalar, bool)> = Vec::new();
    let mut points = Vec::with_capacity(per_line * (k + 1));
    for (j, x) in xs.iter().enumerate() {
        let free_is_z = j % 2 == 0;
        let repeat = used
            .iter()
            .filter(|(ux, uz)| ux == x && *uz == free_is_z)
            .count();
        used.push((x.clone(), free_is_z));
        let offset = (repeat * per_line) as i64;
        for v in 1..=per_line as i64 {
            let f = Scalar::from(offset + v);
            let p = if free_is_z {
                vec![x.clone(), Scalar::zero(), f]
            } else {
                vec![x.clone(), f, Scalar::zero()]
            };
            points.push(Point::new(p)?);
        }
    }
    let bound = BigUint::from(per_line).pow(k as u32 + 1);
    let prov = Provenance::generated("lenz3d")
        .param("n", n)
        .param("k", k)
        .param(
            "alphas",
            chain
                .alphas()
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>(),
        );
    GeneratedConfig::new(
        points,
        format!("lenz3d-n{n}-k{k}"),
        prov,
        chain.clone(),
        bound,
    )
}

/// `n` distinct nonzero lattice points `(i/denom, j/denom)` drawn uniformly
/// from the closed unit disk, by rejection.
pub fn generate_random_disk(n: usize, seed: u64, denom: u64) -> Result<PointSet> {
    if n < 1 || denom < 1 {
        return Err(invalid("random_disk needs n >= 1 and denom >= 1"));
    }
    let d = i64::try_from(denom).map_err(|_| invalid("denom too large"))?;
    let capacity = disk_lattice_points(d) - 1;
    if (n as u64) > capacity {
        return Err(invalid(format!(
            "cannot place {n} distinct points: the disk holds {capacity} nonzero lattice points at denom {denom}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: FxHashSet<(i64, i64)> = FxHashSet::default();
    let mut raw = Vec::with_capacity(n);
    while raw.len() < n {
        let i = rng.random_range(-d..=d);
        let j = rng.random_range(-d..=d);
        if (i, j) == (0, 0) || (i as i128).pow(2) + (j as i128).pow(2) > (d as i128).pow(2) {
            continue;
        }
        if seen.insert((i, j)) {
            raw.push((i, j));
        }
    }
    let points = raw
        .into_iter()
        .map(|(i, j)| Ok(Point::xy(Scalar::ratio(i, d)?, Scalar::ratio(j, d)?)))
        .collect::<Result<Vec<_>>>()?;
    let prov = Provenance::generated("random_disk")
        .param("n", n)
        .param("seed", seed)
        .param("denom", denom)
        .param("rng", RNG_NAME);
    PointSet::new(format!("random_disk-n{n}-s{seed}-d{denom}"), points, prov)
}

fn disk_lattice_points(d: i64) -> u64 {
    let r2 = (d as i128) * (d as i128);
    let mut count = 0u64;
    for i in -d..=d {
        let rest = r2 - (i as i128) * (i as i128);
        // largest j with j^2 <= rest
        let mut j = (rest as f64).sqrt() as i128;
        while j * j > rest {
            j -= 1;
        }
        while (j + 1) * (j + 1) <= rest {
            j += 1;
        }
        count += (2 * j + 1) as u64;
    }
    count
}

/// The integer grid `{1..side}^2`.
pub fn generate_grid(side: usize) -> Result<PointSet> {
    if side < 2 {
        return Err(invalid(format!("grid needs side >= 2, got {side}")));
    }
    let s = side as i64;
    let points = (1..=s)
        .flat_map(|x| (1..=s).map(move |y| Point::ints(&[x, y])))
        .collect();
    let prov = Provenance::generated("grid").param("side", side);
    PointSet::new(format!("grid-{side}"), points, prov)
}

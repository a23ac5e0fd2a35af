//! Point-set statistics: flat richness, radial alignment, point-line
//! incidences and the two s-adaptability conditions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::frame::IntFrame;
use crate::geometry::{canonical_line, LineKey, Point, Scalar};
use crate::pointset::PointSet;

/// Default bound on the normalized energy for the energy condition.
pub const DEFAULT_ENERGY_THRESHOLD: f64 = 4.0;

/// Canonical description of a line or plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flat {
    /// `a x + b y = c`.
    Line2 { line: LineKey },
    /// `base + s * direction`; the direction's first nonzero entry is 1 and
    /// `base` is zero in that coordinate.
    Line3 { base: Point, direction: Point },
    /// `normal . x = offset`, normal's first nonzero entry is 1.
    Plane { normal: Point, offset: Scalar },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RichnessReport {
    pub flat_dim: usize,
    pub max_points: usize,
    pub witness: Flat,
    /// Indices of every point of the set on the witness flat.
    pub indices: Vec<usize>,
}

/// Largest number of points of `set` on one line (`flat_dim = 1`, d = 2 or
/// 3) or one plane (`flat_dim = 2`, d = 3), with a witness.
pub fn max_flat_richness(set: &PointSet, flat_dim: usize) -> Result<RichnessReport> {
    match (set.dim(), flat_dim) {
        (2 | 3, 1) => {
            if set.len() < 2 {
                return Err(invalid("line richness needs at least 2 points"));
            }
            Ok(line_richness(set))
        }
        (3, 2) => {
            if set.len() < 3 {
                return Err(invalid("plane richness needs at least 3 points"));
            }
            Ok(plane_richness(set))
        }
        (d, f) => Err(Error::Unsupported(format!(
            "flat richness of dimension {f} in dimension {d}"
        ))),
    }
}

/// Divides by the gcd and makes the first nonzero entry positive.
fn primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let flip = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if flip {
            *x = -&*x;
        }
    }
}

fn int_coords(frame: &IntFrame, n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..frame.dim).map(|t| frame.coord(i, t)).collect())
        .collect()
}

fn line_richness(set: &PointSet) -> RichnessReport {
    let n = set.len();
    let frame = IntFrame::new(set.points(), set.dim());
    let pts = int_coords(&frame, n);
    let mut best = (1usize, 0usize, 1usize);
    let mut groups: FxHashMap<Vec<BigInt>, usize> = FxHashMap::default();
    for i in 0..n {
        if n - i < best.0 {
            break;
        }
        groups.clear();
        for j in i + 1..n {
            let mut d: Vec<BigInt> = pts[j].iter().zip(&pts[i]).map(|(a, b)| a - b).collect();
            primitive(&mut d);
            let c = groups.entry(d).or_insert(0);
            *c += 1;
            if *c + 1 > best.0 {
                best = (*c + 1, i, j);
            }
        }
    }
    let (_, i, j) = best;
    let p = &set.points()[i];
    let q = &set.points()[j];
    let witness = if set.dim() == 2 {
        Flat::Line2 {
            line: canonical_line(p, q).expect("distinct points"),
        }
    } else {
        line3(p, q)
    };
    let indices = (0..n)
        .filter(|&m| {
            let r = &set.points()[m];
            on_line(p, q, r)
        })
        .collect::<Vec<_>>();
    RichnessReport {
        flat_dim: 1,
        max_points: indices.len(),
        witness,
        indices,
    }
}

fn on_line(p: &Point, q: &Point, r: &Point) -> bool {
    let u = q - p;
    let w = r - p;
    // u and w parallel: all 2x2 minors vanish
    let d = u.dim();
    (0..d).all(|a| (a + 1..d).all(|b| &u[a] * &w[b] == &u[b] * &w[a]))
}

fn line3(p: &Point, q: &Point) -> Flat {
    let u = q - p;
    let lead = (0..3).find(|&c| !u[c].is_zero()).expect("distinct points");
    let direction = u.scale(&u[lead].recip().expect("nonzero"));
    let base = p - &direction.scale(&p[lead]);
    Flat::Line3 { base, direction }
}

fn cross(u: &[BigInt], w: &[BigInt]) -> [BigInt; 3] {
    [
        &u[1] * &w[2] - &u[2] * &w[1],
        &u[2] * &w[0] - &u[0] * &w[2],
        &u[0] * &w[1] - &u[1] * &w[0],
    ]
}

fn plane_richness(set: &PointSet) -> RichnessReport {
    let n = set.len();
    let frame = IntFrame::new(set.points(), 3);
    let pts = int_coords(&frame, n);
    let sub = |a: usize, b: usize| -> Vec<BigInt> {
        pts[a].iter().zip(&pts[b]).map(|(x, y)| x - y).collect()
    };

    let mut best: Option<(usize, [BigInt; 3], usize)> = None;
    let mut all_collinear = true;
    let mut groups: FxHashMap<[BigInt; 3], usize> = FxHashMap::default();
    for i in 0..n {
        for j in i + 1..n {
            let u = sub(j, i);
            groups.clear();
            let mut collinear = 0;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let mut c = cross(&u, &sub(k, i));
                if c.iter().all(Zero::is_zero) {
                    collinear += 1;
                    continue;
                }
                primitive(&mut c);
                *groups.entry(c).or_insert(0) += 1;
            }
            if let Some((normal, &g)) = groups
                .iter()
                .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
            {
                all_collinear = false;
                let count = 2 + collinear + g;
                if best.as_ref().is_none_or(|b| count > b.0) {
                    best = Some((count, normal.clone(), i));
                }
            }
        }
    }

    let (normal, anchor) = match best {
        Some((_, normal, anchor)) if !all_collinear => (normal, anchor),
        _ => {
            // every point on one line: any plane through it will do
            let u = sub(1, 0);
            let e = if !u[1].is_zero() || !u[2].is_zero() {
                [BigInt::from(1), BigInt::zero(), BigInt::zero()]
            } else {
                [BigInt::zero(), BigInt::from(1), BigInt::zero()]
            };
            let mut c = cross(&u, &e);
            primitive(&mut c);
            (c, 0)
        }
    };
    let level = |m: usize| -> BigInt { (0..3).map(|t| &normal[t] * &pts[m][t]).sum() };
    let target = level(anchor);
    let indices: Vec<usize> = (0..n).filter(|&m| level(m) == target).collect();

    let lead = normal
        .iter()
        .find(|x| !x.is_zero())
        .expect("nonzero normal")
        .clone();
    let normal_q = Point::new(
        normal
            .iter()
            .map(|c| Scalar::ratio(c.clone(), lead.clone()).expect("nonzero"))
            .collect(),
    )
    .expect("3 coordinates");
    let offset = Scalar::ratio(target, &lead * &frame.scale).expect("nonzero");
    RichnessReport {
        flat_dim: 2,
        max_points: indices.len(),
        witness: Flat::Plane {
            normal: normal_q,
            offset,
        },
        indices,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialGroup {
    /// Primitive integer direction with positive leading entry.
    pub direction: Point,
    pub count: usize,
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialProfile {
    pub groups: Vec<RadialGroup>,
    /// 1 exactly when no two points share a line through the origin; 0 for
    /// a set without nonzero points.
    pub max_count: usize,
    pub origin_index: Option<usize>,
}

/// Groups the nonzero points of a planar set by the line through the
/// origin they lie on. Groups are listed in order of first appearance.
pub fn radial_line_profile(set: &PointSet) -> Result<RadialProfile> {
    set.require_dim(2, "radial_line_profile")?;
    let frame = IntFrame::new(set.points(), 2);
    let mut order: Vec<Vec<BigInt>> = Vec::new();
    let mut groups: FxHashMap<Vec<BigInt>, Vec<usize>> = FxHashMap::default();
    let mut origin_index = None;
    for (i, p) in set.points().iter().enumerate() {
        if p.is_origin() {
            origin_index = Some(i);
            continue;
        }
        let mut d = vec![frame.coord(i, 0), frame.coord(i, 1)];
        primitive(&mut d);
        groups
            .entry(d.clone())
            .or_insert_with(|| {
                order.push(d);
                Vec::new()
            })
            .push(i);
    }
    let groups: Vec<RadialGroup> = order
        .into_iter()
        .map(|d| {
            let indices = groups.remove(&d).expect("recorded");
            RadialGroup {
                direction: Point::new(d.into_iter().map(Scalar::from).collect()).expect("planar"),
                count: indices.len(),
                indices,
            }
        })
        .collect();
    let max_count = groups.iter().map(|g| g.count).max().unwrap_or(0);
    Ok(RadialProfile {
        groups,
        max_count,
        origin_index,
    })
}

/// Number of (point, line) pairs with the point on the line. Repeated
/// lines are counted once.
pub fn st_incidences(set: &PointSet, lines: &[LineKey]) -> Result<u64> {
    set.require_dim(2, "st_incidences")?;
    let frame = IntFrame::new(set.points(), 2);
    let pts = int_coords(&frame, set.len());
    let mut seen = FxHashSet::default();
    let mut total = 0u64;
    for line in lines {
        if !seen.insert(line) {
            continue;
        }
        let (a, b, c) = line.coefficients();
        let l = [a, b, c]
            .iter()
            .fold(BigInt::from(1), |l, s| l.lcm(s.denom()));
        let int = |s: &Scalar| s.numer() * (&l / s.denom());
        let (ai, bi, ci) = (int(a), int(b), int(c) * &frame.scale);
        total += pts
            .iter()
            .filter(|p| &ai * &p[0] + &bi * &p[1] == ci)
            .count() as u64;
    }
    Ok(total)
}

fn require_pairs(set: &PointSet) -> Result<()> {
    if set.len() < 2 {
        return Err(invalid("needs at least 2 points"));
    }
    Ok(())
}

/// Normalized (-s)-energy: the mean of `|P - Q|^(-s)` over unordered pairs.
pub fn energy(set: &PointSet, s: f64) -> Result<f64> {
    require_pairs(set)?;
    if !(s > 0.0 && s.is_finite()) {
        return Err(invalid(format!(
            "energy exponent must be positive, got {s}"
        )));
    }
    let n = set.len();
    let frame = IntFrame::new(set.points(), set.dim());
    let d2 = frame.scale_sq().to_f64().unwrap_or(f64::INFINITY);
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let sq = frame.squared_distance(i, j);
            if sq.is_zero() {
                return Err(Error::CoincidentPoints);
            }
            sum += (sq.to_f64() / d2).powf(-s / 2.0);
        }
    }
    Ok(sum / (n as f64 * (n - 1) as f64 / 2.0))
}

/// Exact minimum squared distance between two points of the set, by a
/// sweep over the points sorted on their first coordinate.
pub fn min_squared_separation(set: &PointSet) -> Result<Scalar> {
    require_pairs(set)?;
    let n = set.len();
    let frame = IntFrame::new(set.points(), set.dim());
    let mut order: Vec<usize> = (0..n).collect();
    let xs: Vec<BigInt> = (0..n).map(|i| frame.coord(i, 0)).collect();
    order.sort_by(|&a, &b| xs[a].cmp(&xs[b]));
    let mut best: Option<BigInt> = None;
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            let dx = &xs[j] - &xs[i];
            if best.as_ref().is_some_and(|b| &(&dx * &dx) >= b) {
                break;
            }
            let sq = frame.squared_distance(i, j).to_big();
            if best.as_ref().is_none_or(|b| &sq < b) {
                best = Some(sq);
            }
        }
    }
    let best = best.expect("at least one pair");
    if best.is_zero() {
        return Err(Error::CoincidentPoints);
    }
    Scalar::ratio(best, frame.scale_sq())
}

pub fn min_separation(set: &PointSet) -> Result<f64> {
    Ok(min_squared_separation(set)?.to_f64().sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdaptabilityReport {
    pub s: f64,
    pub energy_value: f64,
    pub energy_threshold: f64,
    pub min_sep: f64,
    /// `n^(-1/s)`.
    pub sep_threshold: f64,
    pub separation_ok: bool,
    pub energy_ok: bool,
    pub in_unit_square: bool,
}

impl AdaptabilityReport {
    pub fn is_adaptable(&self) -> bool {
        self.separation_ok && self.energy_ok
    }
}

pub fn is_s_adaptable(set: &PointSet, s: f64, energy_threshold: f64) -> Result<AdaptabilityReport> {
    let energy_value = energy(set, s)?;
    let min_sq = min_squared_separation(set)?;
    let min_sep = min_sq.to_f64().sqrt();
    let sep_threshold = (set.len() as f64).powf(-1.0 / s);
    let zero = Scalar::zero();
    let one = Scalar::one();
    let in_unit_square = set
        .points()
        .iter()
        .all(|p| p.coords().iter().all(|c| *c >= zero && *c <= one));
    Ok(AdaptabilityReport {
        s,
        energy_value,
        energy_threshold,
        min_sep,
        sep_threshold,
        separation_ok: min_sep >= sep_threshold,
        energy_ok: energy_value <= energy_threshold,
        in_unit_square,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{generate_grid, generate_prop3};
    use crate::geometry::alpha_line;

    fn set(pts: &[&[i64]]) -> PointSet {
        PointSet::external("t", pts.iter().map(|p| Point::ints(p)).collect()).unwrap()
    }

    #[test]
    fn grid_line_richness() {
        let r = max_flat_richness(&generate_grid(3).unwrap(), 1).unwrap();
        assert_eq!(r.max_points, 3);
        assert_eq!(r.indices.len(), 3);
        assert_eq!(
            max_flat_richness(&generate_grid(10).unwrap(), 1)
                .unwrap()
                .max_points,
            10
        );
    }

    #[test]
    fn prop3_line_dominates() {
        let r = max_flat_richness(&generate_prop3(50, 4, &Scalar::one()).unwrap().set, 1).unwrap();
        assert_eq!(r.max_points, 48);
        let want = alpha_line(&Point::ints(&[1, 1]), &Scalar::one()).unwrap();
        assert_eq!(r.witness, Flat::Line2 { line: want });
    }

    #[test]
    fn space_lines_and_planes() {
        let e = set(&[
            &[0, 0, 0],
            &[1, 1, 1],
            &[2, 2, 2],
            &[1, 0, 0],
            &[0, 1, 0],
            &[5, 5, 0],
        ]);
        let l = max_flat_richness(&e, 1).unwrap();
        assert_eq!(l.max_points, 3);
        assert_eq!(
            l.witness,
            Flat::Line3 {
                base: Point::ints(&[0, 0, 0]),
                direction: Point::ints(&[1, 1, 1])
            }
        );
        let p = max_flat_richness(&e, 2).unwrap();
        // z = 0 holds (0,0,0), (1,0,0), (0,1,0), (5,5,0); x = y holds 0,1,2 and (5,5,0)
        assert_eq!(p.max_points, 4);
        for &i in &p.indices {
            let Flat::Plane { normal, offset } = &p.witness else {
                panic!()
            };
            assert_eq!(
                &crate::geometry::dot(normal, &e.points()[i]).unwrap(),
                offset
            );
        }
    }

    #[test]
    fn collinear_space_set_has_full_plane() {
        let e = set(&[&[1, 2, 3], &[2, 4, 6], &[3, 6, 9]]);
        assert_eq!(max_flat_richness(&e, 2).unwrap().max_points, 3);
    }

    #[test]
    fn unsupported_flats() {
        let g = generate_grid(3).unwrap();
        assert!(matches!(
            max_flat_richness(&g, 2),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            max_flat_richness(&g, 0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn radial_profile_groups_scaled_copies() {
        let e = set(&[&[1, 1], &[2, 2], &[1, 0], &[-3, -3], &[0, 0]]);
        let r = radial_line_profile(&e).unwrap();
        assert_eq!(r.max_count, 3);
        assert_eq!(r.origin_index, Some(4));
        assert_eq!(r.groups[0].direction, Point::ints(&[1, 1]));
        assert_eq!(r.groups[0].indices, vec![0, 1, 3]);
        assert_eq!(r.groups[1].count, 1);
    }

    #[test]
    fn incidences_on_grid_axes() {
        let g = generate_grid(5).unwrap();
        let mut lines = Vec::new();
        for v in 1..=5 {
            lines.push(LineKey::new(Scalar::one(), Scalar::zero(), Scalar::from(v)).unwrap());
            lines.push(LineKey::new(Scalar::zero(), Scalar::one(), Scalar::from(v)).unwrap());
        }
        assert_eq!(st_incidences(&g, &lines).unwrap(), 50);
        lines.push(lines[0].clone());
        assert_eq!(st_incidences(&g, &lines).unwrap(), 50);
    }

    #[test]
    fn energy_examples() {
        let two = set(&[&[0, 0], &[1, 0]]);
        assert_eq!(energy(&two, 3.7).unwrap(), 1.0);
        let square = set(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!((energy(&square, 2.0).unwrap() - 5.0 / 6.0).abs() < 1e-12);
        assert!(energy(&square, 0.0).is_err());
    }

    #[test]
    fn separation_sweep() {
        let e = set(&[&[0, 0], &[10, 0], &[3, 4], &[3, 6], &[-7, 1]]);
        assert_eq!(min_squared_separation(&e).unwrap(), Scalar::from(4));
        assert_eq!(min_separation(&generate_grid(4).unwrap()).unwrap(), 1.0);
    }

    #[test]
    fn adaptability_two_far_points() {
        let e = PointSet::external("p", vec![Point::ints(&[0, 0]), Point::ints(&[1, 1])]).unwrap();
        let r = is_s_adaptable(&e, 2.0, DEFAULT_ENERGY_THRESHOLD).unwrap();
        assert!(r.separation_ok);
        assert!(r.energy_ok);
        assert!(r.in_unit_square);
    }
}

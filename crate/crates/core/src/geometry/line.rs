use std::fmt;

use serde::{Deserialize, Serialize};

use super::{dot, Point, Scalar};
use crate::error::{Error, Result};

/// Canonical affine line `a*x + b*y = c` in the plane.
///
/// The coefficient triple is scaled so that the first nonzero of `(a, b)`
/// equals one, so two keys compare equal exactly when they describe the
/// same set of points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LineKey {
    a: Scalar,
    b: Scalar,
    c: Scalar,
}

impl LineKey {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return Err(Error::InvalidParameter(
                "line coefficients (a, b) are both zero".into(),
            ));
        };
        Ok(LineKey {
            a: a.checked_div(&lead)?,
            b: b.checked_div(&lead)?,
            c: c.checked_div(&lead)?,
        })
    }

    pub fn coefficients(&self) -> (&Scalar, &Scalar, &Scalar) {
        (&self.a, &self.b, &self.c)
    }

    /// Exact membership test; `p` must be planar.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        p.require_dim(2)?;
        Ok(&(&self.a * &p[0]) + &(&self.b * &p[1]) == self.c)
    }
}

impl fmt::Debug for LineKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

impl fmt::Display for LineKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn planar_nonzero(p: &Point) -> Result<()> {
    p.require_dim(2)?;
    if p.is_origin() {
        return Err(Error::OriginInput);
    }
    Ok(())
}

/// The line of points whose dot product with `a` equals `alpha`.
pub fn alpha_line(a: &Point, alpha: &Scalar) -> Result<LineKey> {
    planar_nonzero(a)?;
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha { index: 0 });
    }
    LineKey::new(a[0].clone(), a[1].clone(), alpha.clone())
}

/// The unique line through two distinct planar points.
pub fn canonical_line(p: &Point, q: &Point) -> Result<LineKey> {
    p.require_dim(2)?;
    q.require_dim(2)?;
    if p == q {
        return Err(Error::CoincidentPoints);
    }
    // normal (dy, -dx) to the direction q - p
    let a = &q[1] - &p[1];
    let b = &p[0] - &q[0];
    let c = &(&a * &p[0]) + &(&b * &p[1]);
    LineKey::new(a, b, c)
}

/// Whether two nonzero planar points share a line through the origin.
pub fn same_radial_line(p: &Point, q: &Point) -> Result<bool> {
    planar_nonzero(p)?;
    planar_nonzero(q)?;
    Ok(cross(p, q).is_zero())
}

fn cross(p: &Point, q: &Point) -> Scalar {
    &(&p[0] * &q[1]) - &(&p[1] * &q[0])
}

/// The unique point `b` with `b.a = alpha` and `b.c = beta`.
pub fn intersect_alpha_lines(a: &Point, alpha: &Scalar, c: &Point, beta: &Scalar) -> Result<Point> {
    planar_nonzero(a)?;
    planar_nonzero(c)?;
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha { index: 0 });
    }
    if beta.is_zero() {
        return Err(Error::ZeroAlpha { index: 1 });
    }
    let det = cross(a, c);
    if det.is_zero() {
        return Err(Error::SameRadialLine);
    }
    let x = (&(alpha * &c[1]) - &(&a[1] * beta)).checked_div(&det)?;
    let y = (&(&a[0] * beta) - &(alpha * &c[0])).checked_div(&det)?;
    let b = Point::xy(x, y);
    debug_assert!(dot(&b, a).ok().as_ref() == Some(alpha));
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    fn key(a: &str, b: &str, c: &str) -> LineKey {
        LineKey::new(q(a), q(b), q(c)).unwrap()
    }

    #[test]
    fn alpha_line_examples() {
        assert_eq!(
            alpha_line(&Point::ints(&[1, 1]), &q("1")).unwrap(),
            key("1", "1", "1")
        );
        assert_eq!(
            alpha_line(&Point::ints(&[0, 2]), &q("4")).unwrap(),
            key("0", "1", "2")
        );
        assert_eq!(
            alpha_line(&Point::ints(&[2, 2]), &q("2")).unwrap(),
            alpha_line(&Point::ints(&[1, 1]), &q("1")).unwrap()
        );
    }

    #[test]
    fn alpha_line_rejects_origin_and_zero() {
        assert_eq!(
            alpha_line(&Point::ints(&[0, 0]), &q("1")),
            Err(Error::OriginInput)
        );
        assert_eq!(
            alpha_line(&Point::ints(&[1, 0]), &q("0")),
            Err(Error::ZeroAlpha { index: 0 })
        );
        assert!(matches!(
            alpha_line(&Point::ints(&[1, 0, 0]), &q("1")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonical_line_examples() {
        let diag = canonical_line(&Point::ints(&[0, 0]), &Point::ints(&[1, 1])).unwrap();
        assert_eq!(diag, key("1", "-1", "0"));
        let vertical = canonical_line(&Point::ints(&[1, 0]), &Point::ints(&[1, 5])).unwrap();
        assert_eq!(vertical, key("1", "0", "1"));
        assert_eq!(
            canonical_line(&Point::ints(&[2, 0]), &Point::ints(&[0, 2])).unwrap(),
            alpha_line(&Point::ints(&[1, 1]), &q("2")).unwrap()
        );
        assert_eq!(
            canonical_line(&Point::ints(&[3, 3]), &Point::ints(&[3, 3])),
            Err(Error::CoincidentPoints)
        );
    }

    #[test]
    fn normalization_is_canonical() {
        assert_eq!(key("2", "4", "6"), key("1", "2", "3"));
        assert_eq!(key("-3", "0", "3"), key("1", "0", "-1"));
        assert_eq!(key("0", "-5", "10"), key("0", "1", "-2"));
        assert!(LineKey::new(q("0"), q("0"), q("1")).is_err());
    }

    #[test]
    fn radial_examples() {
        assert!(same_radial_line(&Point::ints(&[1, 1]), &Point::ints(&[2, 2])).unwrap());
        assert!(same_radial_line(&Point::ints(&[1, 1]), &Point::ints(&[-3, -3])).unwrap());
        assert!(!same_radial_line(&Point::ints(&[1, 0]), &Point::ints(&[0, 1])).unwrap());
        assert_eq!(
            same_radial_line(&Point::ints(&[0, 0]), &Point::ints(&[0, 1])),
            Err(Error::OriginInput)
        );
    }

    #[test]
    fn intersect_examples() {
        let b = intersect_alpha_lines(
            &Point::ints(&[1, 0]),
            &q("1"),
            &Point::ints(&[0, 1]),
            &q("2"),
        )
        .unwrap();
        assert_eq!(b, Point::ints(&[1, 2]));
        // beta = 0 is outside the default preconditions
        assert_eq!(
            intersect_alpha_lines(
                &Point::ints(&[1, 1]),
                &q("2"),
                &Point::ints(&[1, -1]),
                &q("0")
            ),
            Err(Error::ZeroAlpha { index: 1 })
        );
        assert_eq!(
            intersect_alpha_lines(
                &Point::ints(&[1, 1]),
                &q("1"),
                &Point::ints(&[2, 2]),
                &q("5")
            ),
            Err(Error::SameRadialLine)
        );
        assert_eq!(
            intersect_alpha_lines(
                &Point::ints(&[0, 0]),
                &q("1"),
                &Point::ints(&[2, 2]),
                &q("5")
            ),
            Err(Error::OriginInput)
        );
    }

    #[test]
    fn contains_matches_dot() {
        let a = Point::ints(&[3, -2]);
        let line = alpha_line(&a, &q("5")).unwrap();
        assert!(line.contains(&Point::ints(&[1, -1])).unwrap());
        assert!(!line.contains(&Point::ints(&[1, 1])).unwrap());
    }
}

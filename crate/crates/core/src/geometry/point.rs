use std::fmt;
use std::ops::{Index, Sub};

use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// A point in Q^d, d >= 2. Serialized as an array of scalar strings.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Scalar>", into = "Vec<Scalar>")]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "points need at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        Ok(Point(coords))
    }

    /// Integer coordinates; panics on fewer than two.
    pub fn ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| Scalar::from(c)).collect()).expect("dimension >= 2")
    }

    pub fn xy(x: Scalar, y: Scalar) -> Self {
        Point(vec![x, y])
    }

    pub fn origin(dim: usize) -> Result<Self> {
        Point::new(vec![Scalar::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, factor: &Scalar) -> Point {
        Point(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn squared_norm(&self) -> Scalar {
        self.0.iter().map(|c| c * c).sum()
    }

    pub(crate) fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<Scalar>> for Point {
    type Error = Error;
    fn try_from(v: Vec<Scalar>) -> Result<Self> {
        Point::new(v)
    }
}

impl From<Point> for Vec<Scalar> {
    fn from(p: Point) -> Self {
        p.0
    }
}

impl Index<usize> for Point {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Exact inner product.
pub fn dot(a: &Point, b: &Point) -> Result<Scalar> {
    b.require_dim(a.dim())?;
    Ok(a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum())
}

/// Exact squared Euclidean distance.
pub fn squared_distance(a: &Point, b: &Point) -> Result<Scalar> {
    b.require_dim(a.dim())?;
    Ok(a.0
        .iter()
        .zip(&b.0)
        .map(|(x, y)| {
            let d = x - y;
            &d * &d
        })
        .sum())
}

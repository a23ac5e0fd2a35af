use std::collections::BTreeMap;

use num_bigint::BigUint;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ChainType, Point};

/// Where a point set came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// Generator name, or `"external"`.
    pub generator: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_type: Option<ChainType>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::decimal::opt_biguint"
    )]
    pub promised_count_lower_bound: Option<BigUint>,
}

impl Provenance {
    pub fn external() -> Self {
        Provenance {
            generator: "external".into(),
            params: BTreeMap::new(),
            chain_type: None,
            promised_count_lower_bound: None,
        }
    }

    pub fn generated(generator: &str) -> Self {
        Provenance {
            generator: generator.into(),
            ..Provenance::external()
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }
}

/// A named, ordered, duplicate-free collection of points of one dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    name: String,
    dim: usize,
    points: Vec<Point>,
    provenance: Provenance,
}

impl PointSet {
    /// Builds a set, taking the dimension from the first point.
    pub fn new(
        name: impl Into<String>,
        points: Vec<Point>,
        provenance: Provenance,
    ) -> Result<Self> {
        let dim = points
            .first()
            .map(Point::dim)
            .ok_or_else(|| Error::InvalidParameter("point set is empty".into()))?;
        Self::with_dim(name, dim, points, provenance)
    }

    pub fn with_dim(
        name: impl Into<String>,
        dim: usize,
        points: Vec<Point>,
        provenance: Provenance,
    ) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "dimension must be >= 2, got {dim}"
            )));
        }
        let mut seen: FxHashMap<&Point, usize> = FxHashMap::default();
        for (i, p) in points.iter().enumerate() {
            p.require_dim(dim)?;
            if let Some(&first) = seen.get(p) {
                return Err(Error::DuplicatePoint { first, second: i });
            }
            seen.insert(p, i);
        }
        Ok(PointSet {
            name: name.into(),
            dim,
            points,
            provenance,
        })
    }

    pub fn external(name: impl Into<String>, points: Vec<Point>) -> Result<Self> {
        Self::new(name, points, Provenance::external())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    /// A copy with one more point appended.
    pub fn with_point(&self, p: Point) -> Result<PointSet> {
        let mut points = self.points.clone();
        points.push(p);
        PointSet::with_dim(self.name.clone(), self.dim, points, self.provenance.clone())
    }

    pub(crate) fn require_dim(&self, dim: usize, what: &str) -> Result<()> {
        if self.dim != dim {
            return Err(Error::Unsupported(format!(
                "{what} needs dimension {dim}, set has dimension {}",
                self.dim
            )));
        }
        Ok(())
    }
}

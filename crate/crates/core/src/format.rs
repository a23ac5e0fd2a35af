//! The point-set file: UTF-8 JSON with `format_version`, `name`, `dim`,
//! `points` (arrays of `"p"` / `"p/q"` strings) and `provenance`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Scalar};
use crate::pointset::{PointSet, Provenance};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSetFile {
    pub format_version: u32,
    pub name: String,
    pub dim: usize,
    pub points: Vec<Vec<String>>,
    pub provenance: Provenance,
}

impl PointSetFile {
    pub fn from_set(set: &PointSet) -> Self {
        PointSetFile {
            format_version: FORMAT_VERSION,
            name: set.name().to_string(),
            dim: set.dim(),
            points: set
                .points()
                .iter()
                .map(|p| p.coords().iter().map(Scalar::to_string).collect())
                .collect(),
            provenance: set.provenance().clone(),
        }
    }

    pub fn into_set(self) -> Result<PointSet> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {}, expected {FORMAT_VERSION}",
                self.format_version
            )));
        }
        let points = self
            .points
            .iter()
            .map(|row| {
                if row.len() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: row.len(),
                    });
                }
                let coords = row
                    .iter()
                    .map(|c| c.parse())
                    .collect::<Result<Vec<Scalar>>>()?;
                Point::new(coords)
            })
            .collect::<Result<Vec<_>>>()?;
        PointSet::with_dim(self.name, self.dim, points, self.provenance)
    }
}

pub fn to_json(set: &PointSet) -> String {
    let mut s = serde_json::to_string_pretty(&PointSetFile::from_set(set)).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<PointSet> {
    serde_json::from_str::<PointSetFile>(text)
        .map_err(|e| Error::Parse(e.to_string()))?
        .into_set()
}

pub fn read_set(path: &Path) -> Result<PointSet> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    from_json(&text)
}

pub fn write_set(path: &Path, set: &PointSet) -> Result<()> {
    fs::write(path, to_json(set)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::generate_prop3;

    #[test]
    fn round_trip_is_exact() {
        let cfg = generate_prop3(12, 3, &"3/2".parse().unwrap()).unwrap();
        let text = to_json(&cfg.set);
        let back = from_json(&text).unwrap();
        assert_eq!(back, cfg.set);
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn rejects_bad_input() {
        let dup = r#"{"format_version":1,"name":"d","dim":2,"points":[["1","2"],["0","1"],["2/2","4/2"]],"provenance":{"generator":"external"}}"#;
        assert_eq!(
            from_json(dup),
            Err(Error::DuplicatePoint {
                first: 0,
                second: 2
            })
        );
        let float = r#"{"format_version":1,"name":"d","dim":2,"points":[["0.5","2"]],"provenance":{"generator":"external"}}"#;
        assert!(matches!(from_json(float), Err(Error::MalformedScalar(_))));
        let short = r#"{"format_version":1,"name":"d","dim":3,"points":[["1","2"]],"provenance":{"generator":"external"}}"#;
        assert_eq!(
            from_json(short),
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 2
            })
        );
        let version = r#"{"format_version":2,"name":"d","dim":2,"points":[],"provenance":{"generator":"external"}}"#;
        assert!(matches!(from_json(version), Err(Error::Parse(_))));
    }
}

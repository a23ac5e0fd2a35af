use std::fmt;

use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// The dot-product targets `(alpha_1, ..., alpha_k)` of a k-chain.
///
/// Targets must be nonzero unless `allow_zero` is set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ChainTypeRepr", into = "ChainTypeRepr")]
pub struct ChainType {
    alphas: Vec<Scalar>,
    allow_zero: bool,
}

#[derive(Serialize, Deserialize)]
struct ChainTypeRepr {
    alphas: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    allow_zero: bool,
}

impl ChainType {
    pub fn new(alphas: Vec<Scalar>) -> Result<Self> {
        Self::with_zero_policy(alphas, false)
    }

    pub fn allowing_zero(alphas: Vec<Scalar>) -> Result<Self> {
        Self::with_zero_policy(alphas, true)
    }

    pub fn with_zero_policy(alphas: Vec<Scalar>, allow_zero: bool) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidParameter(
                "chain type needs k >= 1 targets".into(),
            ));
        }
        if !allow_zero {
            if let Some(index) = alphas.iter().position(Scalar::is_zero) {
                return Err(Error::ZeroAlpha { index });
            }
        }
        Ok(ChainType { alphas, allow_zero })
    }

    /// Parses a comma-separated list of rationals such as `"1,1,2,2"`.
    pub fn parse_list(list: &str, allow_zero: bool) -> Result<Self> {
        let alphas = list
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<Vec<Scalar>>>()?;
        Self::with_zero_policy(alphas, allow_zero)
    }

    pub fn k(&self) -> usize {
        self.alphas.len()
    }

    pub fn alphas(&self) -> &[Scalar] {
        &self.alphas
    }

    pub fn allow_zero(&self) -> bool {
        self.allow_zero
    }

    pub fn reversed(&self) -> ChainType {
        ChainType {
            alphas: self.alphas.iter().rev().cloned().collect(),
            allow_zero: self.allow_zero,
        }
    }
}

impl TryFrom<ChainTypeRepr> for ChainType {
    type Error = Error;
    fn try_from(r: ChainTypeRepr) -> Result<Self> {
        ChainType::with_zero_policy(r.alphas, r.allow_zero)
    }
}

impl From<ChainType> for ChainTypeRepr {
    fn from(t: ChainType) -> Self {
        ChainTypeRepr {
            alphas: t.alphas,
            allow_zero: t.allow_zero,
        }
    }
}

impl fmt::Debug for ChainType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.alphas.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

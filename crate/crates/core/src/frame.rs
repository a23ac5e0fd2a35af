//! Integer re-expression of a point set: every coordinate times a common
//! denominator `D`. Dot products and squared distances then become
//! integers scaled by `D^2`, which lets the hot loops run on `i128` when
//! the magnitudes allow it and on `BigInt` otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::geometry::{Point, Scalar};

pub(crate) enum Coords {
    /// Row-major, `dim` entries per point. Products of two entries summed
    /// over `dim` terms fit in `i128`.
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

pub(crate) struct IntFrame {
    pub dim: usize,
    pub scale: BigInt,
    pub coords: Coords,
}

/// Entries below this bound keep `dim * (2*bound)^2` inside `i128`.
const SMALL_BOUND: i64 = 1 << 40;

impl IntFrame {
    pub fn new(points: &[Point], dim: usize) -> Self {
        let mut scale = BigInt::one();
        for p in points {
            for c in p.coords() {
                scale = scale.lcm(c.denom());
            }
        }
        let big: Vec<BigInt> = points
            .iter()
            .flat_map(|p| p.coords().iter())
            .map(|c| c.numer() * (&scale / c.denom()))
            .collect();
        let small: Option<Vec<i64>> = if dim <= 64 {
            big.iter()
                .map(|v| v.to_i64().filter(|x| x.abs() < SMALL_BOUND))
                .collect()
        } else {
            None
        };
        let coords = match small {
            Some(v) => Coords::Small(v),
            None => Coords::Big(big),
        };
        IntFrame { dim, scale, coords }
    }

    pub fn scale_sq(&self) -> BigInt {
        &self.scale * &self.scale
    }

    /// The integer `v * D^2` if it is one.
    pub fn scaled_target(&self, v: &Scalar) -> Option<BigInt> {
        let s = v.as_big() * num_rational::BigRational::from_integer(self.scale_sq());
        s.is_integer().then(|| s.to_integer())
    }

    pub fn dot(&self, i: usize, j: usize) -> IntVal {
        let d = self.dim;
        match &self.coords {
            Coords::Small(c) => IntVal::Small(
                (0..d)
                    .map(|t| c[i * d + t] as i128 * c[j * d + t] as i128)
                    .sum(),
            ),
            Coords::Big(c) => {
                IntVal::normalize((0..d).map(|t| &c[i * d + t] * &c[j * d + t]).sum())
            }
        }
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> IntVal {
        let d = self.dim;
        match &self.coords {
            Coords::Small(c) => IntVal::Small(
                (0..d)
                    .map(|t| {
                        let x = c[i * d + t] as i128 - c[j * d + t] as i128;
                        x * x
                    })
                    .sum(),
            ),
            Coords::Big(c) => IntVal::normalize(
                (0..d)
                    .map(|t| {
                        let x = &c[i * d + t] - &c[j * d + t];
                        &x * &x
                    })
                    .sum(),
            ),
        }
    }

    pub fn coord(&self, i: usize, t: usize) -> BigInt {
        match &self.coords {
            Coords::Small(c) => BigInt::from(c[i * self.dim + t]),
            Coords::Big(c) => c[i * self.dim + t].clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum IntVal {
    Small(i128),
    Big(BigInt),
}

impl IntVal {
    pub fn to_big(&self) -> BigInt {
        match self {
            IntVal::Small(v) => BigInt::from(*v),
            IntVal::Big(v) => v.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            IntVal::Small(v) => *v == 0,
            IntVal::Big(v) => v.is_zero(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            IntVal::Small(v) => *v as f64,
            IntVal::Big(v) => v.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    /// Canonical form for hashing: small when it fits.
    pub fn normalize(v: BigInt) -> IntVal {
        match v.to_i128() {
            Some(x) => IntVal::Small(x),
            None => IntVal::Big(v),
        }
    }
}

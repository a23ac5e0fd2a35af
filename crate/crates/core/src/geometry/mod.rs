//! Exact rational primitives: scalars, points, canonical lines and the
//! alpha-line algebra.
//!
//! For a nonzero planar point `A` and `alpha != 0`, the alpha-line of `A`
//! is `{B : A.B = alpha}`, the line `a1*x + a2*y = alpha`. It is
//! perpendicular to the radial line of `A` (the line through `A` and the
//! origin).

mod chain_type;
mod line;
mod point;
mod scalar;

pub use chain_type::ChainType;
pub use line::{alpha_line, canonical_line, intersect_alpha_lines, same_radial_line, LineKey};
pub use point::{dot, squared_distance, Point};
pub use scalar::Scalar;

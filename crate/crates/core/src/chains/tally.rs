//! Count accumulators. The kernels run on `u128` and report overflow; the
//! caller then reruns on `BigUint`, so no count is ever truncated.

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub(crate) trait Tally: Clone + Send + Sync {
    fn nil() -> Self;
    fn unit() -> Self;
    fn is_nil(&self) -> bool;
    /// `self += rhs`; `None` on overflow.
    fn add_assign(&mut self, rhs: &Self) -> Option<()>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

impl Tally for u128 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn add_assign(&mut self, rhs: &Self) -> Option<()> {
        *self = self.checked_add(*rhs)?;
        Some(())
    }
}

impl Tally for BigUint {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign(&mut self, rhs: &Self) -> Option<()> {
        *self += rhs;
        Some(())
    }
}

/// Runs `f` on `u128`, falling back to `BigUint` if it overflowed.
pub(crate) fn exact<F, G>(fast: F, slow: G) -> BigUint
where
    F: FnOnce() -> Result<u128, Overflow>,
    G: FnOnce() -> Result<BigUint, Overflow>,
{
    match fast() {
        Ok(v) => BigUint::from(v),
        Err(Overflow) => slow().expect("BigUint accumulation cannot overflow"),
    }
}

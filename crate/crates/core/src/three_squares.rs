//! Deterministic three-square decomposition.
//!
//! The search walks `x` down from `isqrt(m)` and, for each candidate,
//! looks for `m - x² = a² + b²` with `x ≥ a ≥ b`, trying `a` in descending
//! order. The first hit is returned, so the result is a pure function of
//! `m`. Feasibility is checked up front with the 4^k(8l+7) classifier, so
//! an infeasible input never enters the loop.

use serde::{Deserialize, Serialize};

use crate::arith::{is_square, is_three_square_feasible, isqrt};
use crate::{Error, Result};

/// `m = x² + y² + z²` with `x ≥ y ≥ z ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThreeSquareRep {
    pub m: u64,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl ThreeSquareRep {
    pub fn holds(&self) -> bool {
        let sq = |v: u64| u128::from(v) * u128::from(v);
        self.x >= self.y
            && self.y >= self.z
            && sq(self.x) + sq(self.y) + sq(self.z) == u128::from(self.m)
    }
}

/// `m = a² + b²` with `a ≥ b`, choosing the largest possible `a`.
pub fn two_squares(m: u64) -> Option<(u64, u64)> {
    two_squares_capped(m, u64::MAX)
}

/// Like [`two_squares`] but only considers `a ≤ cap`.
fn two_squares_capped(m: u64, cap: u64) -> Option<(u64, u64)> {
    let mut a = isqrt(m).min(cap);
    // a ≥ b means a² ≥ m/2
    while u128::from(a) * u128::from(a) * 2 >= u128::from(m) {
        let rest = m - a * a;
        if is_square(rest) {
            return Some((a, isqrt(rest)));
        }
        if a == 0 {
            break;
        }
        a -= 1;
    }
    None
}

pub fn three_squares(m: u64) -> Result<ThreeSquareRep> {
    if !is_three_square_feasible(m) {
        return Err(Error::NotRepresentable(m));
    }
    let mut x = isqrt(m);
    loop {
        if let Some((y, z)) = two_squares_capped(m - x * x, x) {
            return Ok(ThreeSquareRep { m, x, y, z });
        }
        // Gauss–Legendre guarantees a hit before x drops below sqrt(m/3).
        x = x
            .checked_sub(1)
            .expect("feasible input must have a three-square representation");
    }
}

//! Exact integer primitives shared by every other module.
//!
//! All arithmetic is fixed-width. Top-level representation requests are
//! capped at [`MAX_N`] so that every intermediate the constructions touch
//! (the largest is `48n + 24`) stays inside 64 bits; anything that would
//! overflow is reported as [`Error::Width`] instead of wrapping.

use crate::{Error, Result};

/// Largest `n` accepted by the representation and survey entry points.
pub const MAX_N: u64 = 1 << 55;

pub(crate) fn check_ceiling(n: u64) -> Result<()> {
    if n > MAX_N {
        return Err(Error::Width(format!("n = {n} exceeds the ceiling 2^55")));
    }
    Ok(())
}

/// The triangular number `t_i = i(i+1)/2`. Negative indices are allowed;
/// `t_i = t_{-i-1}`.
pub fn triangular(i: i64) -> Result<u64> {
    let i = i128::from(i);
    let t = i * (i + 1) / 2;
    u64::try_from(t).map_err(|_| Error::Width(format!("t_{i} does not fit in 64 bits")))
}

/// `floor(sqrt(m))`.
///
/// Seeded from `f64::sqrt` and then corrected, so the result is exact for
/// every `u64` even where the float rounding is off by one.
pub fn isqrt(m: u64) -> u64 {
    let mut r = (m as f64).sqrt() as u64;
    // r*r in u128 so the correction steps cannot overflow near u64::MAX
    while u128::from(r) * u128::from(r) > u128::from(m) {
        r -= 1;
    }
    while u128::from(r + 1) * u128::from(r + 1) <= u128::from(m) {
        r += 1;
    }
    r
}

pub fn is_square(m: u64) -> bool {
    let r = isqrt(m);
    r * r == m
}

/// Returns the nonnegative index `k` with `t_k = v`, if there is one.
pub fn is_triangular(v: u64) -> Option<u64> {
    // t_k = v  <=>  k(k+1) = 2v, and then k = floor(sqrt(2v))
    let twice = u128::from(v) * 2;
    let k = if twice <= u128::from(u64::MAX) {
        isqrt(twice as u64)
    } else {
        let mut k = (twice as f64).sqrt() as u128;
        while k * k > twice {
            k -= 1;
        }
        while (k + 1) * (k + 1) <= twice {
            k += 1;
        }
        k as u64
    };
    (u128::from(k) * u128::from(k + 1) == twice).then_some(k)
}

/// Splits `m = 4^k * core` with `core % 4 != 0`.
pub fn strip_fours(m: u64) -> Result<(u32, u64)> {
    if m == 0 {
        return Err(Error::Domain("strip_fours(0) is undefined".into()));
    }
    let mut k = 0;
    let mut core = m;
    while core % 4 == 0 {
        core /= 4;
        k += 1;
    }
    Ok((k, core))
}

/// Gauss–Legendre: `m` is a sum of three squares iff it is not `4^k(8l+7)`.
pub fn is_three_square_feasible(m: u64) -> bool {
    match strip_fours(m) {
        Ok((_, core)) => core % 8 != 7,
        Err(_) => true,
    }
}

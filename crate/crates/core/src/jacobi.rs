//! Jacobi's identity
//!
//! ```text
//! 3(x² + y² + z²) = (x+y+z)² + 2((x+y-2z)/2)² + 6((x-y)/2)²
//! ```
//!
//! and the sign normalization that lines a triple up mod 3 before the
//! identity is applied.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedTriple {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl SignedTriple {
    pub const fn new(x: i64, y: i64, z: i64) -> Self {
        Self { x, y, z }
    }

    pub fn sum_of_squares(&self) -> i128 {
        let sq = |v: i64| i128::from(v) * i128::from(v);
        sq(self.x) + sq(self.y) + sq(self.z)
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[i64; 3]> for SignedTriple {
    fn from([x, y, z]: [i64; 3]) -> Self {
        Self { x, y, z }
    }
}

/// `(s, u, v) = (x+y+z, (x+y-2z)/2, (x-y)/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JacobiImage {
    pub s: i64,
    pub u: i64,
    pub v: i64,
}

impl JacobiImage {
    /// `s² + 2u² + 6v²`, which equals `3(x²+y²+z²)` of the source triple.
    pub fn weighted_norm(&self) -> i128 {
        let sq = |v: i64| i128::from(v) * i128::from(v);
        sq(self.s) + 2 * sq(self.u) + 6 * sq(self.v)
    }
}

pub fn jacobi_transform(t: SignedTriple) -> Result<JacobiImage> {
    let (x, y, z) = (i128::from(t.x), i128::from(t.y), i128::from(t.z));
    if (x - y).rem_euclid(2) != 0 {
        return Err(Error::Parity { x: t.x, y: t.y });
    }
    let narrow = |v: i128| {
        i64::try_from(v).map_err(|_| Error::Width(format!("Jacobi image of {t:?} overflows")))
    };
    Ok(JacobiImage {
        s: narrow(x + y + z)?,
        u: narrow((x + y - 2 * z) / 2)?,
        v: narrow((x - y) / 2)?,
    })
}

/// Flips signs so that all three components share a residue mod 3.
///
/// Multiples of 3 are made nonnegative; every other component gets the
/// sign that puts it in residue class 1. Requires `x²+y²+z² ≡ 0 (mod 3)`,
/// which (squares being 0 or 1 mod 3) means either none or all of the
/// components are divisible by 3.
pub fn align_mod3(t: SignedTriple) -> Result<SignedTriple> {
    if t.sum_of_squares() % 3 != 0 {
        return Err(Error::Domain(format!(
            "align_mod3 needs x²+y²+z² ≡ 0 (mod 3), got {t:?}"
        )));
    }
    let fix = |v: i64| match v.rem_euclid(3) {
        0 => v.abs(),
        1 => v,
        _ => -v,
    };
    Ok(SignedTriple::new(fix(t.x), fix(t.y), fix(t.z)))
}

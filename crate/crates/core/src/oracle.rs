//! Brute-force oracle for three-term mixed forms.
//!
//! A [`FormSpec`] is `a·A(x) + b·B(y) + c·C(z)` where each of `A, B, C` is
//! either a square or a triangular number. Nothing in here touches the
//! constructive code path: existence and counting enumerate the two
//! cheapest-to-bound terms and test the remainder directly, witness
//! listing walks every integer triple in lexicographic order.
//!
//! Counting convention: each coordinate ranges over all of ℤ, so `x` and
//! `-x` are distinct witnesses for a nonzero square term, and `k` and
//! `-k-1` are distinct for a triangular term.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_square, is_triangular, isqrt, triangular};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Square,
    Triangular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub coeff: u64,
    pub kind: TermKind,
}

impl Term {
    pub const fn sq(coeff: u64) -> Self {
        Self { coeff, kind: TermKind::Square }
    }

    pub const fn tri(coeff: u64) -> Self {
        Self { coeff, kind: TermKind::Triangular }
    }

    /// `coeff·f(v)` in 128 bits.
    fn value_wide(&self, v: i64) -> Result<i128> {
        let base = match self.kind {
            TermKind::Square => i128::from(v) * i128::from(v),
            TermKind::Triangular => i128::from(triangular(v)?),
        };
        base.checked_mul(i128::from(self.coeff))
            .ok_or_else(|| Error::Width(format!("{}·f({v}) overflows", self.coeff)))
    }

    /// `coeff·f(k)` for `k ≥ 0`, as long as it does not exceed `bound`.
    fn nonneg_values(self, bound: u64) -> impl Iterator<Item = (u64, u64)> {
        (0u64..)
            .map(move |k| {
                let k128 = u128::from(k);
                let base = match self.kind {
                    TermKind::Square => k128 * k128,
                    TermKind::Triangular => k128 * (k128 + 1) / 2,
                };
                (k, base * u128::from(self.coeff))
            })
            .take_while(move |&(_, v)| v <= u128::from(bound))
            .map(|(k, v)| (k, v as u64))
    }

    /// Number of integers mapping onto the nonnegative argument `k`.
    fn multiplicity(&self, k: u64) -> u64 {
        match (self.kind, k) {
            (TermKind::Square, 0) => 1,
            _ => 2,
        }
    }

    /// Nonnegative `k` with `coeff·f(k) = value`, if any.
    fn solve(&self, value: u64) -> Option<u64> {
        if value % self.coeff != 0 {
            return None;
        }
        let q = value / self.coeff;
        match self.kind {
            TermKind::Square => is_square(q).then(|| isqrt(q)),
            TermKind::Triangular => is_triangular(q),
        }
    }

    /// All integers `v` with `coeff·f(v) = value`, ascending.
    fn solve_signed(&self, value: u64) -> Vec<i64> {
        match (self.kind, self.solve(value)) {
            (_, None) => Vec::new(),
            (TermKind::Square, Some(0)) => vec![0],
            (TermKind::Square, Some(k)) => vec![-(k as i64), k as i64],
            (TermKind::Triangular, Some(k)) => vec![-(k as i64) - 1, k as i64],
        }
    }

    /// Every integer argument whose term value is at most `bound`, ascending.
    fn signed_range(&self, bound: u64) -> std::ops::RangeInclusive<i64> {
        let top = self.nonneg_values(bound).last().map_or(0, |(k, _)| k as i64);
        match self.kind {
            TermKind::Square => -top..=top,
            TermKind::Triangular => -top - 1..=top,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            TermKind::Square => "sq",
            TermKind::Triangular => "tri",
        };
        write!(f, "{}*{}", self.coeff, kind)
    }
}

/// Three weighted square/triangular terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormSpec {
    terms: [Term; 3],
}

impl FormSpec {
    pub fn new(terms: [Term; 3]) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.coeff == 0) {
            return Err(Error::Domain(format!("term {t} has a zero coefficient")));
        }
        Ok(Self { terms })
    }

    /// `a·x² + b·y² + c·z²`
    pub fn squares(a: u64, b: u64, c: u64) -> Result<Self> {
        Self::new([Term::sq(a), Term::sq(b), Term::sq(c)])
    }

    /// `a·x² + b·y² + c·t_z`
    pub fn sq_sq_tri(a: u64, b: u64, c: u64) -> Result<Self> {
        Self::new([Term::sq(a), Term::sq(b), Term::tri(c)])
    }

    /// `a·x² + b·t_y + c·t_z`
    pub fn sq_tri_tri(a: u64, b: u64, c: u64) -> Result<Self> {
        Self::new([Term::sq(a), Term::tri(b), Term::tri(c)])
    }

    pub fn terms(&self) -> &[Term; 3] {
        &self.terms
    }

    pub fn evaluate(&self, x: i64, y: i64, z: i64) -> Result<u64> {
        let mut total: i128 = 0;
        for (term, v) in self.terms.iter().zip([x, y, z]) {
            total = total
                .checked_add(term.value_wide(v)?)
                .ok_or_else(|| Error::Width("form value overflows".into()))?;
        }
        u64::try_from(total).map_err(|_| Error::Width(format!("form value {total} exceeds 64 bits")))
    }

    /// Terms by descending coefficient: the largest coefficient has the
    /// fewest candidate values, so it drives the outermost loop.
    fn loop_order(&self) -> [Term; 3] {
        let mut order = self.terms;
        order.sort_by(|a, b| b.coeff.cmp(&a.coeff));
        order
    }

    pub fn exists(&self, n: u64) -> bool {
        let [outer, middle, last] = self.loop_order();
        outer.nonneg_values(n).any(|(_, a)| {
            middle
                .nonneg_values(n - a)
                .any(|(_, b)| last.solve(n - a - b).is_some())
        })
    }

    pub fn count(&self, n: u64) -> u64 {
        let [outer, middle, last] = self.loop_order();
        let mut total = 0;
        for (i, a) in outer.nonneg_values(n) {
            for (j, b) in middle.nonneg_values(n - a) {
                if let Some(k) = last.solve(n - a - b) {
                    total += outer.multiplicity(i) * middle.multiplicity(j) * last.multiplicity(k);
                }
            }
        }
        total
    }

    /// Up to `limit` witnesses of `n`, lexicographic in `(x, y, z)`.
    pub fn witnesses(&self, n: u64, limit: usize) -> WitnessList {
        let [first, second, third] = self.terms;
        let mut found = Vec::new();
        'outer: for x in first.signed_range(n) {
            let a = first.value_wide(x).expect("bounded by n") as u64;
            for y in second.signed_range(n - a) {
                let b = second.value_wide(y).expect("bounded by n") as u64;
                if a + b > n {
                    continue;
                }
                for z in third.solve_signed(n - a - b) {
                    if found.len() >= limit {
                        break 'outer;
                    }
                    found.push([x, y, z]);
                }
            }
        }
        WitnessList { n, witnesses: found }
    }

    /// Smallest `n` in `[lo, hi]` admitted by `filter` that this form misses.
    pub fn first_counterexample(&self, lo: u64, hi: u64, filter: DomainFilter) -> Option<u64> {
        (lo..=hi).filter(|&n| filter.admits(n)).find(|&n| !self.exists(n))
    }
}

impl fmt::Display for FormSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.terms;
        write!(f, "{a}+{b}+{c}")
    }
}

impl FromStr for FormSpec {
    type Err = Error;

    /// Parses `<coeff>*sq|tri + <coeff>*sq|tri + <coeff>*sq|tri`, no spaces.
    /// Error positions are 1-based character columns.
    fn from_str(s: &str) -> Result<Self> {
        let err = |pos: usize, msg: String| Error::Parse { pos: pos + 1, msg };
        let mut terms = Vec::with_capacity(3);
        let mut start = 0;
        for (idx, piece) in s.split('+').enumerate() {
            if idx >= 3 {
                return Err(err(start - 1, "expected exactly three terms".into()));
            }
            let Some((coeff, kind)) = piece.split_once('*') else {
                return Err(err(
                    start + piece.len(),
                    format!("expected '<coeff>*sq' or '<coeff>*tri', found {piece:?}"),
                ));
            };
            if coeff.is_empty() || !coeff.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err(start, format!("invalid coefficient {coeff:?}")));
            }
            let coeff: u64 = coeff
                .parse()
                .map_err(|_| err(start, format!("coefficient {coeff} is too large")))?;
            if coeff == 0 {
                return Err(err(start, "coefficient must be positive".into()));
            }
            let kind_pos = start + piece.find('*').unwrap_or(0) + 1;
            let kind = match kind {
                "sq" => TermKind::Square,
                "tri" => TermKind::Triangular,
                other => {
                    return Err(err(kind_pos, format!("expected 'sq' or 'tri', found {other:?}")))
                }
            };
            terms.push(Term { coeff, kind });
            start += piece.len() + 1;
        }
        match <[Term; 3]>::try_from(terms) {
            Ok(t) => Self::new(t),
            Err(t) => Err(err(s.len(), format!("expected three terms, found {}", t.len()))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessList {
    pub n: u64,
    pub witnesses: Vec<[i64; 3]>,
}

/// Which naturals a range check considers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainFilter {
    #[default]
    All,
    Positive,
    PositiveOdd,
}

impl DomainFilter {
    pub fn admits(self, n: u64) -> bool {
        match self {
            DomainFilter::All => true,
            DomainFilter::Positive => n > 0,
            DomainFilter::PositiveOdd => n % 2 == 1,
        }
    }
}

/// `n = t_z + x² + y²` with `x ≢ y (mod 2)` or `x = y > 0`.
pub fn exists_parity_constrained(n: u64) -> bool {
    let r = isqrt(n);
    (0..=r).any(|x| {
        (0..=r).any(|y| {
            let used = x * x + y * y;
            let admissible = (x + y) % 2 == 1 || (x == y && x > 0);
            admissible && used <= n && is_triangular(n - used).is_some()
        })
    })
}

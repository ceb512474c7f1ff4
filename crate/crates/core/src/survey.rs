//! Range verification over the form catalogs.
//!
//! An interval is cut into fixed-size chunks that are checked
//! independently (optionally on a rayon pool) and merged back in index
//! order, so the resulting [`RangeReport`] is identical for any number of
//! workers. Only `wall_time` depends on the run.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::check_ceiling;
use crate::oracle::{exists_parity_constrained, DomainFilter, FormSpec};
use crate::theorem2::{represent, MixedFormId};
use crate::{Error, Result};

pub const DEFAULT_CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Theorem2,
    Theorem1I,
    Theorem1Ii,
    Theorem1Iii,
    Panaitopol,
    /// Known-incomplete forms used to check that failures are detected.
    Control,
}

impl Source {
    pub const CATALOGS: [Source; 5] = [
        Source::Theorem2,
        Source::Theorem1I,
        Source::Theorem1Ii,
        Source::Theorem1Iii,
        Source::Panaitopol,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            Source::Theorem2 => "theorem2",
            Source::Theorem1I => "theorem1_i",
            Source::Theorem1Ii => "theorem1_ii",
            Source::Theorem1Iii => "theorem1_iii",
            Source::Panaitopol => "panaitopol",
            Source::Control => "control",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Source {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Source::CATALOGS
            .into_iter()
            .chain([Source::Control])
            .find(|src| src.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown catalog source {s:?}")))
    }
}

/// Whether a catalog entry's completeness is a theorem or something this
/// tool only checks on finite ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Theorem,
    Empirical,
    /// Expected to fail.
    Control,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryForm {
    Mixed(MixedFormId),
    Spec(FormSpec),
    /// `t_z + x² + y²` with `x ≢ y (mod 2)` or `x = y > 0`.
    ParityConstrained,
}

impl EntryForm {
    fn label(&self) -> String {
        match self {
            EntryForm::Mixed(f) => f.name().to_string(),
            EntryForm::Spec(s) => s.to_string(),
            EntryForm::ParityConstrained => "1*sq+1*sq+1*tri/parity".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CatalogEntry {
    /// `<source>:<form>`, unique across the catalog.
    pub name: String,
    pub form: EntryForm,
    pub source: Source,
    pub domain: DomainFilter,
}

impl CatalogEntry {
    pub fn new(source: Source, form: EntryForm, domain: DomainFilter) -> Self {
        Self { name: format!("{}:{}", source, form.label()), form, source, domain }
    }

    pub fn status(&self) -> Status {
        match self.source {
            Source::Theorem1Ii | Source::Theorem1Iii => Status::Empirical,
            Source::Control => Status::Control,
            _ => Status::Theorem,
        }
    }

    /// Checks one `n` that the domain filter already admitted.
    fn holds(&self, n: u64, mode: Mode) -> bool {
        match (&self.form, mode) {
            (EntryForm::Mixed(f), Mode::Constructive) => {
                represent(*f, n).and_then(|c| c.verify()).unwrap_or(false)
            }
            (EntryForm::Mixed(f), Mode::Oracle) => f.spec().exists(n),
            (EntryForm::Spec(s), _) => s.exists(n),
            (EntryForm::ParityConstrained, _) => exists_parity_constrained(n),
        }
    }
}

const THEOREM1_II: [(u64, u64, u64); 10] = [
    (1, 1, 1),
    (1, 1, 2),
    (1, 2, 1),
    (1, 2, 2),
    (1, 2, 4),
    (1, 3, 1),
    (1, 4, 1),
    (1, 4, 2),
    (1, 8, 1),
    (2, 2, 1),
];

const THEOREM1_III: [(u64, u64, u64); 15] = [
    (1, 1, 1),
    (1, 2, 1),
    (1, 2, 2),
    (1, 3, 1),
    (1, 4, 1),
    (1, 4, 2),
    (1, 5, 2),
    (1, 6, 1),
    (1, 8, 1),
    (2, 1, 1),
    (2, 2, 1),
    (2, 4, 1),
    (3, 2, 1),
    (4, 1, 1),
    (4, 2, 1),
];

const PANAITOPOL: [(u64, u64, u64); 3] = [(1, 1, 2), (1, 2, 3), (1, 2, 4)];

/// Every catalog entry, grouped by source in [`Source::CATALOGS`] order.
pub fn catalog() -> Vec<CatalogEntry> {
    let spec = |f: Result<FormSpec>| EntryForm::Spec(f.expect("positive coefficients"));
    let mut out: Vec<CatalogEntry> = MixedFormId::ALL
        .into_iter()
        .map(|f| CatalogEntry::new(Source::Theorem2, EntryForm::Mixed(f), DomainFilter::All))
        .collect();
    // an even square (2x)² = 4x² plus two triangular numbers
    out.push(CatalogEntry::new(
        Source::Theorem1I,
        spec(FormSpec::sq_tri_tri(4, 1, 1)),
        DomainFilter::All,
    ));
    out.push(CatalogEntry::new(
        Source::Theorem1I,
        EntryForm::ParityConstrained,
        DomainFilter::Positive,
    ));
    out.extend(THEOREM1_II.iter().map(|&(a, b, c)| {
        CatalogEntry::new(Source::Theorem1Ii, spec(FormSpec::sq_sq_tri(a, b, c)), DomainFilter::All)
    }));
    out.extend(THEOREM1_III.iter().map(|&(a, b, c)| {
        CatalogEntry::new(Source::Theorem1Iii, spec(FormSpec::sq_tri_tri(a, b, c)), DomainFilter::All)
    }));
    out.extend(PANAITOPOL.iter().map(|&(a, b, c)| {
        CatalogEntry::new(Source::Panaitopol, spec(FormSpec::squares(a, b, c)), DomainFilter::PositiveOdd)
    }));
    out
}

/// `x² + y² + z²`, which misses exactly the numbers `4^k(8l+7)`.
pub fn negative_control_entry() -> CatalogEntry {
    CatalogEntry::new(
        Source::Control,
        EntryForm::Spec(FormSpec::squares(1, 1, 1).expect("positive coefficients")),
        DomainFilter::All,
    )
}

/// All `4^k(8l+7)` in `[lo, hi]`, ascending, by direct enumeration.
pub fn gauss_legendre_exclusions(lo: u64, hi: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for k in 0..32 {
        let scale = 1u128 << (2 * k);
        let first = 7 * scale;
        if first > u128::from(hi) {
            break;
        }
        let step = 8 * scale;
        let l = (u128::from(lo).saturating_sub(first) + step - 1) / step;
        let mut v = first + l * step;
        while v <= u128::from(hi) {
            out.push(v as u64);
            v += step;
        }
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Build and verify a certificate for every `n`.
    #[default]
    Constructive,
    /// Ask the brute-force oracle whether any witness exists.
    Oracle,
}

impl Mode {
    pub const fn name(self) -> &'static str {
        match self {
            Mode::Constructive => "constructive",
            Mode::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "constructive" => Ok(Mode::Constructive),
            "oracle" => Ok(Mode::Oracle),
            _ => Err(Error::Domain(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeReport {
    pub entry: CatalogEntry,
    pub lo: u64,
    pub hi: u64,
    pub verified: u64,
    pub counterexamples: Vec<u64>,
    pub wall_time: Duration,
    pub mode: Mode,
}

impl RangeReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Number of `n` in `[lo, hi]` the entry's domain filter admits.
    pub fn candidates(&self) -> u64 {
        self.verified + self.counterexamples.len() as u64
    }

    /// Equality ignoring `wall_time`.
    pub fn same_outcome(&self, other: &RangeReport) -> bool {
        self.entry == other.entry
            && (self.lo, self.hi, self.verified, self.mode)
                == (other.lo, other.hi, other.verified, other.mode)
            && self.counterexamples == other.counterexamples
    }
}

#[derive(Default)]
struct Tally {
    verified: u64,
    counterexamples: Vec<u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.verified += other.verified;
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

/// The chunked range engine.
pub struct Survey {
    chunk: u64,
    pool: Option<rayon::ThreadPool>,
}

impl Default for Survey {
    fn default() -> Self {
        Self { chunk: DEFAULT_CHUNK, pool: None }
    }
}

impl Survey {
    /// A single-threaded engine.
    pub fn sequential() -> Self {
        Self::default()
    }

    /// An engine running chunks on `jobs` worker threads.
    pub fn with_jobs(jobs: usize) -> Result<Self> {
        if jobs == 0 {
            return Err(Error::Domain("jobs must be at least 1".into()));
        }
        if jobs == 1 {
            return Ok(Self::sequential());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
        Ok(Self { chunk: DEFAULT_CHUNK, pool: Some(pool) })
    }

    pub fn chunk_size(mut self, chunk: u64) -> Self {
        self.chunk = chunk.max(1);
        self
    }

    pub fn jobs(&self) -> usize {
        self.pool.as_ref().map_or(1, |p| p.current_num_threads())
    }

    fn chunks(&self, lo: u64, hi: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let mut start = lo;
        loop {
            let end = start.saturating_add(self.chunk - 1).min(hi);
            out.push((start, end));
            if end == hi {
                break;
            }
            start = end + 1;
        }
        out
    }

    pub fn run(&self, entry: &CatalogEntry, lo: u64, hi: u64, mode: Mode) -> Result<RangeReport> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        check_ceiling(hi)?;
        let started = Instant::now();
        let scan = |&(a, b): &(u64, u64)| {
            let mut t = Tally::default();
            for n in (a..=b).filter(|&n| entry.domain.admits(n)) {
                if entry.holds(n, mode) {
                    t.verified += 1;
                } else {
                    t.counterexamples.push(n);
                }
            }
            t
        };
        let chunks = self.chunks(lo, hi);
        let tallies: Vec<Tally> = match &self.pool {
            Some(pool) => pool.install(|| chunks.par_iter().map(scan).collect()),
            None => chunks.iter().map(scan).collect(),
        };
        let total = tallies.into_iter().fold(Tally::default(), Tally::merge);
        Ok(RangeReport {
            entry: entry.clone(),
            lo,
            hi,
            verified: total.verified,
            counterexamples: total.counterexamples,
            wall_time: started.elapsed(),
            mode,
        })
    }

    /// One report per mixed form, in [`MixedFormId::ALL`] order.
    pub fn verify_theorem2_range(&self, lo: u64, hi: u64, mode: Mode) -> Result<Vec<RangeReport>> {
        self.verify_forms(&MixedFormId::ALL, lo, hi, mode)
    }

    pub fn verify_forms(
        &self,
        forms: &[MixedFormId],
        lo: u64,
        hi: u64,
        mode: Mode,
    ) -> Result<Vec<RangeReport>> {
        forms
            .iter()
            .map(|&f| {
                let entry = CatalogEntry::new(Source::Theorem2, EntryForm::Mixed(f), DomainFilter::All);
                self.run(&entry, lo, hi, mode)
            })
            .collect()
    }

    /// Oracle-mode reports for every catalog entry from `source` (all
    /// sources when `None`).
    pub fn verify_catalog(&self, source: Option<Source>, lo: u64, hi: u64) -> Result<Vec<RangeReport>> {
        catalog()
            .iter()
            .filter(|e| source.map_or(true, |s| e.source == s))
            .map(|e| self.run(e, lo, hi, Mode::Oracle))
            .collect()
    }

    pub fn negative_control(&self, lo: u64, hi: u64) -> Result<RangeReport> {
        self.run(&negative_control_entry(), lo, hi, Mode::Oracle)
    }
}

pub fn verify_theorem2_range(lo: u64, hi: u64, mode: Mode) -> Result<Vec<RangeReport>> {
    Survey::sequential().verify_theorem2_range(lo, hi, mode)
}

pub fn verify_catalog(source: Option<Source>, lo: u64, hi: u64) -> Result<Vec<RangeReport>> {
    Survey::sequential().verify_catalog(source, lo, hi)
}

pub fn negative_control(lo: u64, hi: u64) -> Result<RangeReport> {
    Survey::sequential().negative_control(lo, hi)
}

//! Grid-based verification of the sequence identities, root laws and term
//! bounds, producing serializable [`LawReport`]s.
//!
//! Exact laws compare integers. Interval laws compare enclosures and double
//! the working precision (up to [`ESCALATION_FACTOR`] times the starting
//! value) until every comparison separates; comparisons that never separate
//! are reported as inconclusive.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{DyadicInterval, ESCALATION_FACTOR};
use crate::params::SequenceParams;

mod bounds;
mod identities;
mod roots;

pub use bounds::{check_error_decay, check_reconstruction, check_term_bounds, DecayCheck};
pub use identities::check_identities;
pub use roots::check_root_laws;

/// Default starting precision for interval laws.
pub const DEFAULT_BITS: u32 = 192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawId {
    IdentityTheorem2,
    IdentityTheorem3,
    SeriesOracle,
    Lemma1Monotone,
    Lemma1Sandwich,
    Lemma2Sandwich,
    DominantBracket,
    UnitCircle,
    ErrorBound,
    GrowthBounds,
    Reconstruction,
    ErrorDecay,
}

impl LawId {
    pub fn as_str(self) -> &'static str {
        match self {
            LawId::IdentityTheorem2 => "identity-theorem2",
            LawId::IdentityTheorem3 => "identity-theorem3",
            LawId::SeriesOracle => "series-oracle",
            LawId::Lemma1Monotone => "lemma1-monotone",
            LawId::Lemma1Sandwich => "lemma1-sandwich",
            LawId::Lemma2Sandwich => "lemma2-sandwich",
            LawId::DominantBracket => "dominant-bracket",
            LawId::UnitCircle => "unit-circle",
            LawId::ErrorBound => "error-bound",
            LawId::GrowthBounds => "growth-bounds",
            LawId::Reconstruction => "reconstruction",
            LawId::ErrorDecay => "error-decay",
        }
    }
}

impl std::fmt::Display for LawId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameter grid: every `q` in `qs`, every `k` in `k_min..=k_max`, and
/// `n` from `max(n_min, 2-k)` to `n_max`. A missing `n_min` means `2-k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub qs: Vec<u32>,
    pub k_min: u32,
    pub k_max: u32,
    pub n_min: Option<i64>,
    pub n_max: i64,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            qs: vec![3, 4, 5],
            k_min: 2,
            k_max: 8,
            n_min: None,
            n_max: 300,
        }
    }
}

impl Grid {
    pub fn new(qs: Vec<u32>, ks: RangeInclusive<u32>, n_max: i64) -> Self {
        Self {
            qs,
            k_min: *ks.start(),
            k_max: *ks.end(),
            n_min: None,
            n_max,
        }
    }

    pub fn with_n_min(mut self, n_min: i64) -> Self {
        self.n_min = Some(n_min);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.qs.is_empty() || self.k_min > self.k_max
    }

    /// All `(q, k)` cells, validated, sorted and deduplicated.
    pub fn cells(&self) -> Result<Vec<SequenceParams>> {
        let mut qs = self.qs.clone();
        qs.sort_unstable();
        qs.dedup();
        let mut out = Vec::new();
        for &q in &qs {
            for k in self.k_min..=self.k_max {
                out.push(SequenceParams::new(q, k)?);
            }
        }
        Ok(out)
    }

    /// Index range for one cell; may be empty.
    pub fn n_range(&self, params: &SequenceParams) -> RangeInclusive<i64> {
        let lo = self
            .n_min
            .map_or(params.min_index(), |n| n.max(params.min_index()));
        lo..=self.n_max
    }

    /// Fails with a regime error if any `q` is below 3.
    pub(crate) fn require_certified(&self, op: &'static str) -> Result<()> {
        match self.qs.iter().find(|&&q| q < 3) {
            Some(&q) => Err(Error::Regime { op, q }),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Fail,
    Inconclusive,
}

/// One failed or unsettled comparison. `n` is absent for laws about roots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub q: u32,
    pub k: u32,
    pub n: Option<i64>,
    pub kind: WitnessKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LawReport {
    pub law_id: LawId,
    pub grid: Grid,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness>,
    /// Working precision in bits -> number of comparisons it settled.
    /// Empty for exact laws.
    pub bits_used: BTreeMap<u32, u64>,
    pub comparisons: u64,
    /// Set for checks that are evidence rather than certification.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub heuristic: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl LawReport {
    fn from_tally(law_id: LawId, grid: &Grid, mut tally: Tally) -> Self {
        tally.witnesses.sort();
        let verdict = if tally.witnesses.is_empty() {
            Verdict::Pass
        } else if tally.witnesses.iter().any(|w| w.kind == WitnessKind::Fail) {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        };
        let mut notes = Vec::new();
        if tally.weak > 0 || law_id == LawId::ErrorBound {
            notes.push(format!(
                "strict form certified at {} of {} points",
                tally.comparisons - tally.weak,
                tally.comparisons
            ));
        }
        Self {
            law_id,
            grid: grid.clone(),
            verdict,
            witnesses: tally.witnesses,
            bits_used: tally.bits_used,
            comparisons: tally.comparisons,
            heuristic: false,
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Result of a comparison retried at increasing precision.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Settled {
    pub value: Option<bool>,
    pub bits: u32,
}

/// Evaluate `eval` at `start` bits, doubling until it returns `Some` or the
/// next step would exceed `ESCALATION_FACTOR * start`.
pub(crate) fn settle(
    start: u32,
    cap: u32,
    mut eval: impl FnMut(u32) -> Result<Option<bool>>,
) -> Result<Settled> {
    let mut bits = start;
    loop {
        let value = eval(bits)?;
        if value.is_some() || bits.saturating_mul(2) > cap {
            return Ok(Settled { value, bits });
        }
        bits *= 2;
    }
}

pub(crate) fn cap_for(bits: u32) -> u32 {
    bits.saturating_mul(ESCALATION_FACTOR)
}

/// `Some(true)` if every pair is certainly `a < b`, `Some(false)` if some
/// pair is certainly not, `None` otherwise. Also returns the first pair that
/// did not certify.
pub(crate) fn chain_lt(
    pairs: &[(&DyadicInterval, &DyadicInterval)],
) -> (Option<bool>, Option<usize>) {
    let mut unsure = None;
    for (i, (a, b)) in pairs.iter().enumerate() {
        match a.certain_cmp(b) {
            Some(Ordering::Less) => {}
            Some(_) => return (Some(false), Some(i)),
            None => {
                unsure.get_or_insert(i);
            }
        }
    }
    (if unsure.is_some() { None } else { Some(true) }, unsure)
}

/// Per-law accumulator, merged across cells.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    witnesses: Vec<Witness>,
    bits_used: BTreeMap<u32, u64>,
    comparisons: u64,
    /// Comparisons certified only in their non-strict form.
    weak: u64,
}

impl Tally {
    fn witness(
        &mut self,
        params: &SequenceParams,
        n: Option<i64>,
        kind: WitnessKind,
        detail: String,
    ) {
        self.witnesses.push(Witness {
            q: params.q(),
            k: params.k(),
            n,
            kind,
            detail,
        });
    }

    pub fn exact(
        &mut self,
        params: &SequenceParams,
        n: i64,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) {
        self.comparisons += 1;
        if !ok {
            self.witness(params, Some(n), WitnessKind::Fail, detail());
        }
    }

    pub fn settled(
        &mut self,
        params: &SequenceParams,
        n: Option<i64>,
        s: Settled,
        detail: impl FnOnce() -> String,
    ) {
        self.comparisons += 1;
        *self.bits_used.entry(s.bits).or_default() += 1;
        match s.value {
            Some(true) => {}
            Some(false) => self.witness(params, n, WitnessKind::Fail, detail()),
            None => self.witness(params, n, WitnessKind::Inconclusive, detail()),
        }
    }

    /// A comparison that could not be evaluated at all.
    pub fn error(&mut self, params: &SequenceParams, n: Option<i64>, err: &Error) {
        self.comparisons += 1;
        self.witness(params, n, WitnessKind::Inconclusive, err.to_string());
    }

    pub fn fail(&mut self, params: &SequenceParams, n: Option<i64>, detail: String) {
        self.comparisons += 1;
        self.witness(params, n, WitnessKind::Fail, detail);
    }

    fn merge(&mut self, other: Tally) {
        self.witnesses.extend(other.witnesses);
        for (bits, count) in other.bits_used {
            *self.bits_used.entry(bits).or_default() += count;
        }
        self.comparisons += other.comparisons;
        self.weak += other.weak;
    }

    /// Record a strict comparison that only certified as non-strict.
    pub fn weak(&mut self, bits: u32) {
        self.comparisons += 1;
        self.weak += 1;
        *self.bits_used.entry(bits).or_default() += 1;
    }
}

/// Run `cell` over every grid cell in parallel and fold the per-law tallies.
pub(crate) fn run_cells<const L: usize>(
    grid: &Grid,
    laws: [LawId; L],
    cell: impl Fn(&SequenceParams) -> Result<[Tally; L]> + Sync,
) -> Result<Vec<LawReport>> {
    let cells = grid.cells()?;
    let per_cell: Vec<[Tally; L]> = cells.par_iter().map(&cell).collect::<Result<_>>()?;
    let mut totals: [Tally; L] = std::array::from_fn(|_| Tally::default());
    for tallies in per_cell {
        for (total, t) in totals.iter_mut().zip(tallies) {
            total.merge(t);
        }
    }
    Ok(laws
        .into_iter()
        .zip(totals)
        .map(|(law, tally)| LawReport::from_tally(law, grid, tally))
        .collect())
}

/// Every certified law: identities, root laws, term bounds and
/// reconstruction. The decay heuristic is not included.
pub fn check_all(grid: &Grid, bits: u32) -> Result<Vec<LawReport>> {
    let mut reports = check_identities(grid)?;
    reports.extend(check_root_laws(grid, bits)?);
    reports.extend(check_term_bounds(grid, bits)?);
    reports.extend(check_reconstruction(grid, bits)?);
    Ok(reports)
}

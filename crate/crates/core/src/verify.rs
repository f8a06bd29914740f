//! Exhaustive sweeps over normalized pairs.
//!
//! A pair is canonical when `0, M ∈ A ⊆ [0, M]`, `0, N ∈ B ⊆ [0, N]` and
//! `1 <= N <= M`, plus the single pair `({0}, {0})`. There are
//! `1 + Σ_{M=1}^{maxM} 2^{M-1} (2^M - 1)` of them. Pairs are ordered by
//! `(M, A, N, B)` with sets compared as characteristic masks; every bounded
//! list in a report keeps the smallest entries in that order, so merging
//! partial reports is associative and commutative.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::io;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{check_stability_identities, NormalizedPair};
use crate::error::{Error, Result};
use crate::report::{Predicate, PredicateReport, Selection, Status};
use crate::sets::IntSet;

/// Absolute ceiling on `maxM`.
pub const GUARD: u32 = 20;
pub const DEFAULT_MAX_M: u32 = 12;
pub const COUNTEREXAMPLE_LIMIT: usize = 64;
pub const SAMPLE_LIMIT: usize = 16;

/// Canonical normalized pairs with `max A <= max_m`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PairSpace {
    max_m: u32,
}

impl PairSpace {
    pub fn new(max_m: u32) -> Result<Self> {
        PairSpace::with_guard(max_m, GUARD)
    }

    /// `guard` can only tighten the built-in ceiling.
    pub fn with_guard(max_m: u32, guard: u32) -> Result<Self> {
        let limit = guard.min(GUARD);
        if max_m > limit {
            return Err(Error::Guard {
                requested: max_m,
                limit,
            });
        }
        if max_m == 0 {
            return Err(Error::Contract("maxM must be positive".into()));
        }
        Ok(PairSpace { max_m })
    }

    pub fn max_m(self) -> u32 {
        self.max_m
    }

    /// `1 + Σ_{M=1}^{maxM} 2^{M-1} (2^M - 1)`.
    pub fn pair_count(self) -> u64 {
        1 + (1..=self.max_m as u64)
            .map(|m| (1u64 << (m - 1)) * ((1u64 << m) - 1))
            .sum::<u64>()
    }

    /// Masks of every `A`, in order: `{0}` first, then by `M` and mask.
    fn a_masks(self) -> impl Iterator<Item = u64> {
        std::iter::once(1).chain((1..=self.max_m).flat_map(endpoint_masks))
    }
}

/// Masks with bits 0 and `d` set, `d >= 1`, in increasing order.
fn endpoint_masks(d: u32) -> impl Iterator<Item = u64> {
    let ends = 1u64 | 1 << d;
    (0..1u64 << (d - 1)).map(move |inner| ends | inner << 1)
}

/// `B` masks paired with an `A` of diameter `m`.
fn b_masks(m: u32) -> Box<dyn Iterator<Item = u64>> {
    if m == 0 {
        Box::new(std::iter::once(1))
    } else {
        Box::new((1..=m).flat_map(endpoint_masks))
    }
}

fn mask_diam(mask: u64) -> u32 {
    63 - mask.leading_zeros()
}

fn set_mask(s: &IntSet) -> Option<u64> {
    if s.min() != 0 || s.max() >= 64 {
        return None;
    }
    Some(s.iter().fold(0u64, |m, x| m | 1 << x))
}

/// Every canonical pair in deterministic order.
pub fn enumerate_pairs(space: PairSpace) -> impl Iterator<Item = (IntSet, IntSet)> {
    space.a_masks().flat_map(|a| {
        let a_set = IntSet::from_mask(a).expect("nonzero mask");
        b_masks(mask_diam(a))
            .map(move |b| (a_set.clone(), IntSet::from_mask(b).expect("nonzero mask")))
    })
}

/// Position of a pair in the enumeration order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct PairKey {
    a: u64,
    b: u64,
}

impl PairKey {
    fn tuple(self) -> (u32, u64, u32, u64) {
        (mask_diam(self.a), self.a, mask_diam(self.b), self.b)
    }
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tuple().cmp(&other.tuple())
    }
}

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    #[serde(skip)]
    key: PairKey,
    pub predicate: Predicate,
    pub a: IntSet,
    pub b: IntSet,
    pub detail: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PairSample {
    #[serde(skip)]
    key: PairKey,
    pub a: IntSet,
    pub b: IntSet,
}

impl PairSample {
    fn new(key: PairKey) -> Self {
        PairSample {
            key,
            a: IntSet::from_mask(key.a).expect("nonzero mask"),
            b: IntSet::from_mask(key.b).expect("nonzero mask"),
        }
    }
}

/// Per-predicate counts: every selected predicate is `checked` on every
/// pair; `applicable` counts pairs meeting its hypotheses.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub applicable: u64,
    pub falsified: u64,
}

impl Tally {
    fn merge(&mut self, other: &Tally) {
        self.checked += other.checked;
        self.applicable += other.applicable;
        self.falsified += other.falsified;
    }
}

/// Observed counts for claims that are recorded, not asserted.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Observations {
    /// Pairs with `h_A <= |B| - 2` and `r < h_B`.
    pub excess_below_hole_count_b: u64,
    /// Pairs meeting the cardinality hypothesis but not the diameter chain.
    pub card_bound_without_diam_chain: u64,
    /// The same, restricted to `gcd*(A) = 1`.
    pub card_bound_without_diam_chain_coprime: u64,
    /// Pairs with `gcd*(A+B) > 1` whose corollary hypotheses hold.
    pub contracted_corollary_pairs: u64,
}

impl Observations {
    fn merge(&mut self, o: &Observations) {
        self.excess_below_hole_count_b += o.excess_below_hole_count_b;
        self.card_bound_without_diam_chain += o.card_bound_without_diam_chain;
        self.card_bound_without_diam_chain_coprime += o.card_bound_without_diam_chain_coprime;
        self.contracted_corollary_pairs += o.contracted_corollary_pairs;
    }
}

/// Aggregate outcome of a sweep.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub schema_version: u32,
    #[serde(rename = "maxM")]
    pub max_m: u32,
    pub predicates: Vec<Predicate>,
    pub total_pairs: u64,
    /// Pairs meeting both hypotheses of the long-progression theorem.
    pub hypothesis_pairs: u64,
    /// Hypothesis pairs whose longest run in `A+B` is exactly `|A|+|B|-1`.
    pub tight_pairs: u64,
    pub per_predicate: BTreeMap<Predicate, Tally>,
    pub counterexamples: Vec<Counterexample>,
    pub extremal_samples: Vec<PairSample>,
    pub observations: Observations,
}

impl VerificationReport {
    pub fn empty(max_m: u32, selection: Selection) -> Self {
        VerificationReport {
            schema_version: 1,
            max_m,
            predicates: selection.iter().collect(),
            total_pairs: 0,
            hypothesis_pairs: 0,
            tight_pairs: 0,
            per_predicate: selection.iter().map(|p| (p, Tally::default())).collect(),
            counterexamples: Vec::new(),
            extremal_samples: Vec::new(),
            observations: Observations::default(),
        }
    }

    /// Combines two partial reports over disjoint pair sets.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        debug_assert_eq!(self.predicates, other.predicates);
        self.total_pairs += other.total_pairs;
        self.hypothesis_pairs += other.hypothesis_pairs;
        self.tight_pairs += other.tight_pairs;
        for (p, t) in &other.per_predicate {
            self.per_predicate.entry(*p).or_default().merge(t);
        }
        self.counterexamples.extend(other.counterexamples);
        self.counterexamples
            .sort_by_key(|x| (x.key, x.predicate));
        self.counterexamples.truncate(COUNTEREXAMPLE_LIMIT);
        self.extremal_samples.extend(other.extremal_samples);
        self.extremal_samples.sort_by_key(|s| s.key);
        self.extremal_samples.truncate(SAMPLE_LIMIT);
        self.observations.merge(&other.observations);
        self
    }

    pub fn falsifications(&self) -> u64 {
        self.per_predicate.values().map(|t| t.falsified).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.falsifications() == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CensusCell {
    pub hypothesis_pairs: u64,
    pub tight_count: u64,
    pub samples: Vec<PairSample>,
}

/// Tight hypothesis pairs grouped by `(|A|, |B|)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TightnessCensus {
    pub samples_per_cell: usize,
    pub cells: BTreeMap<(usize, usize), CensusCell>,
}

impl TightnessCensus {
    pub fn new(samples_per_cell: usize) -> Self {
        TightnessCensus {
            samples_per_cell,
            cells: BTreeMap::new(),
        }
    }

    pub fn merge(mut self, other: TightnessCensus) -> TightnessCensus {
        for (k, cell) in other.cells {
            let mine = self.cells.entry(k).or_default();
            mine.hypothesis_pairs += cell.hypothesis_pairs;
            mine.tight_count += cell.tight_count;
            mine.samples.extend(cell.samples);
            mine.samples.sort_by_key(|s| s.key);
            mine.samples.truncate(self.samples_per_cell);
        }
        self
    }

    pub fn total_tight(&self) -> u64 {
        self.cells.values().map(|c| c.tight_count).sum()
    }

    pub fn contains(&self, a: &IntSet, b: &IntSet) -> bool {
        self.cells
            .get(&(a.len(), b.len()))
            .is_some_and(|c| c.samples.iter().any(|s| &s.a == a && &s.b == b))
    }

    /// `sizeA,sizeB,tightCount,sampleA,sampleB`, one row per cell with
    /// the first retained sample.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(["sizeA", "sizeB", "tightCount", "sampleA", "sampleB"])?;
        for (&(ka, kb), cell) in &self.cells {
            let (sa, sb) = cell
                .samples
                .first()
                .map(|s| (s.a.to_string(), s.b.to_string()))
                .unwrap_or_default();
            w.write_record([
                ka.to_string(),
                kb.to_string(),
                cell.tight_count.to_string(),
                sa,
                sb,
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

impl NormalizedPair {
    /// Evaluates one predicate on this pair.
    pub fn check(&self, p: Predicate) -> PredicateReport {
        match p {
            Predicate::Identities => self.check_identities(),
            Predicate::NeutralZone => self.check_neutral_zone(),
            Predicate::KeyLemma => self.key_lemma().report(),
            Predicate::NoDualStability => self.check_no_dual_stability(),
            Predicate::StabilityIdentities => {
                check_stability_identities(&self.ledger(), &self.profile())
            }
            Predicate::Ordering => self.check_ordering(),
            Predicate::Frontier => self.check_frontier(),
            Predicate::ReflectionDuality => self.check_reflection_duality(),
            Predicate::Theorem => self.theorem_verdict().report(Predicate::Theorem),
            Predicate::Corollary => self.corollary_verdict().report(Predicate::Corollary),
            Predicate::CitedDiam => self.check_cited_diam(),
            Predicate::Decomposition => self.check_decomposition(),
            Predicate::FrobeniusPrefix => self
                .check_frobenius_prefix(None)
                .expect("default horizon is valid"),
        }
    }
}

/// Partial results for one slice of the pair stream.
struct Accumulator {
    report: VerificationReport,
    census: TightnessCensus,
    selection: Selection,
}

impl Accumulator {
    fn new(max_m: u32, selection: Selection, census_samples: usize) -> Self {
        Accumulator {
            report: VerificationReport::empty(max_m, selection),
            census: TightnessCensus::new(census_samples),
            selection,
        }
    }

    fn merge(mut self, other: Accumulator) -> Accumulator {
        self.report = self.report.merge(other.report);
        self.census = self.census.merge(other.census);
        self
    }

    fn record(&mut self, key: PairKey, rep: PredicateReport) {
        let t = self.report.per_predicate.entry(rep.predicate).or_default();
        t.checked += 1;
        if rep.status != Status::Vacuous {
            t.applicable += 1;
        }
        if rep.status == Status::Falsified {
            t.falsified += 1;
            if self.report.counterexamples.len() < COUNTEREXAMPLE_LIMIT {
                let sample = PairSample::new(key);
                self.report.counterexamples.push(Counterexample {
                    key,
                    predicate: rep.predicate,
                    a: sample.a,
                    b: sample.b,
                    detail: rep.violations.join("; "),
                });
            }
        }
    }

    fn evaluate(&mut self, key: PairKey, pair: &NormalizedPair) {
        let sel = self.selection;
        self.report.total_pairs += 1;

        let hyps = pair.theorem_hypotheses();
        let verdict = pair.theorem_verdict();
        if hyps {
            self.report.hypothesis_pairs += 1;
            let cell = self
                .census
                .cells
                .entry((pair.size_a() as usize, pair.size_b() as usize))
                .or_default();
            cell.hypothesis_pairs += 1;
            if verdict.tight {
                self.report.tight_pairs += 1;
                cell.tight_count += 1;
                // Keys arrive in increasing order within a slice.
                if cell.samples.len() < self.census.samples_per_cell {
                    cell.samples.push(PairSample::new(key));
                }
                if self.report.extremal_samples.len() < SAMPLE_LIMIT {
                    self.report.extremal_samples.push(PairSample::new(key));
                }
            }
        }

        let obs = &mut self.report.observations;
        if pair.hole_bound() && pair.r() < pair.h_b() {
            obs.excess_below_hole_count_b += 1;
        }
        let card = verdict.hypotheses[1].holds;
        if card && !verdict.hypotheses[0].holds {
            obs.card_bound_without_diam_chain += 1;
            if pair.profile().gcd_star_a == 1 {
                obs.card_bound_without_diam_chain_coprime += 1;
            }
        }

        for p in sel.iter() {
            let rep = match p {
                Predicate::Theorem => verdict.report(Predicate::Theorem),
                Predicate::Corollary => {
                    let v = pair.corollary_verdict();
                    if v.difference > 1 && v.hypotheses_hold {
                        self.report.observations.contracted_corollary_pairs += 1;
                    }
                    v.report(Predicate::Corollary)
                }
                _ => pair.check(p),
            };
            self.record(key, rep);
        }
    }
}

fn sweep_impl(space: PairSpace, selection: Selection, census_samples: usize) -> Accumulator {
    let max_m = space.max_m();
    let a_masks: Vec<u64> = space.a_masks().collect();
    a_masks
        .par_iter()
        .fold(
            || Accumulator::new(max_m, selection, census_samples),
            |mut acc, &a| {
                for b in b_masks(mask_diam(a)) {
                    let pair = NormalizedPair::from_masks(a, b);
                    acc.evaluate(PairKey { a, b }, &pair);
                }
                acc
            },
        )
        .reduce(
            || Accumulator::new(max_m, selection, census_samples),
            Accumulator::merge,
        )
}

/// Evaluates every selected predicate on every pair of `space`, in parallel
/// on the current rayon pool. The report does not depend on the pool size.
pub fn verify_range(space: PairSpace, selection: Selection) -> VerificationReport {
    sweep_impl(space, selection, 0).report
}

/// Report and census from one pass.
pub fn sweep(
    space: PairSpace,
    selection: Selection,
    census_samples: usize,
) -> (VerificationReport, TightnessCensus) {
    let acc = sweep_impl(space, selection, census_samples);
    (acc.report, acc.census)
}

pub fn tightness_census(space: PairSpace, samples_per_cell: usize) -> TightnessCensus {
    sweep_impl(space, Selection::only([]), samples_per_cell).census
}

/// Sequential evaluation of an explicit pair list, for partitioned runs.
/// Every pair must be canonical for a space with the given `max_m`.
pub fn verify_pairs<I>(max_m: u32, pairs: I, selection: Selection) -> Result<VerificationReport>
where
    I: IntoIterator<Item = (IntSet, IntSet)>,
{
    let mut acc = Accumulator::new(max_m, selection, 0);
    let mut keys = Vec::new();
    for (a, b) in pairs {
        let (Some(am), Some(bm)) = (set_mask(&a), set_mask(&b)) else {
            return Err(Error::Contract(format!(
                "pair ({a}), ({b}) is not normalized"
            )));
        };
        if a.max() > max_m as i64 || b.max() > a.max() || (b.max() == 0 && a.max() > 0) {
            return Err(Error::Contract(format!(
                "pair ({a}), ({b}) is not canonical for maxM = {max_m}"
            )));
        }
        keys.push(PairKey { a: am, b: bm });
    }
    // Bounded lists assume increasing keys within a slice.
    keys.sort();
    for key in keys {
        acc.evaluate(key, &NormalizedPair::from_masks(key.a, key.b));
    }
    Ok(acc.report)
}

//! Hole structure of a normalized pair `(A, B)`.
//!
//! Throughout, `min A = min B = 0`, `M = max A >= N = max B`, and
//! `|A+B| = |A| + |B| - 1 + r`. Holes of `A+B` outside `[N, M]` are *left*
//! (in `[0, N-1]`) or *right* (in `[M+1, M+N]`); holes of `A` and `B` are
//! tagged left/right stable when the matching position of `A+B` is also
//! missing.

use std::collections::HashSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::report::{Checks, Predicate, PredicateReport, Status};
use crate::sets::{gcd, IntSet, Interval};

/// A normalized pair with its sumset, held as characteristic vectors.
#[derive(Clone, Debug)]
pub struct NormalizedPair {
    pub(crate) a: Bits,
    pub(crate) b: Bits,
    pub(crate) sum: Bits,
    pub(crate) m: i64,
    pub(crate) n: i64,
    delta: bool,
}

/// Largest diameter accepted by the dense analysis.
pub const MAX_ANALYSIS_DIAM: i64 = 1 << 20;

impl NormalizedPair {
    /// Requires `min A = min B = 0` and `diam A >= diam B`.
    pub fn new(a: &IntSet, b: &IntSet) -> Result<Self> {
        if a.min() != 0 || b.min() != 0 {
            return Err(Error::Contract(format!(
                "pair must be normalized (min A = {}, min B = {})",
                a.min(),
                b.min()
            )));
        }
        if a.max() < b.max() {
            return Err(Error::Contract(format!(
                "diam A = {} is smaller than diam B = {}",
                a.max(),
                b.max()
            )));
        }
        if a.max() > MAX_ANALYSIS_DIAM {
            return Err(Error::Contract(format!(
                "diameter {} exceeds the analysis limit {MAX_ANALYSIS_DIAM}",
                a.max()
            )));
        }
        Ok(Self::from_bits(a.to_bits(), b.to_bits()))
    }

    /// Characteristic masks with bit 0 set in both and `max A >= max B`.
    pub(crate) fn from_masks(a: u64, b: u64) -> Self {
        debug_assert!(a & 1 == 1 && b & 1 == 1 && a.leading_zeros() <= b.leading_zeros());
        let m = 63 - a.leading_zeros() as usize;
        let n = 63 - b.leading_zeros() as usize;
        Self::from_bits(Bits::from_mask(a, m + 1), Bits::from_mask(b, n + 1))
    }

    pub(crate) fn from_bits(a: Bits, b: Bits) -> Self {
        let m = a.len() as i64 - 1;
        let n = b.len() as i64 - 1;
        let sum = a.sum(&b, (m + n + 1) as usize);
        let delta = shift_contained(&a, &b);
        NormalizedPair {
            a,
            b,
            sum,
            m,
            n,
            delta,
        }
    }

    pub fn a(&self) -> IntSet {
        IntSet::from_bits(&self.a, 0)
    }

    pub fn b(&self) -> IntSet {
        IntSet::from_bits(&self.b, 0)
    }

    pub fn sumset(&self) -> IntSet {
        IntSet::from_bits(&self.sum, 0)
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn size_a(&self) -> i64 {
        self.a.count() as i64
    }

    pub fn size_b(&self) -> i64 {
        self.b.count() as i64
    }

    pub fn size_sum(&self) -> i64 {
        self.sum.count() as i64
    }

    /// The sumset excess `|A+B| - |A| - |B| + 1`.
    pub fn r(&self) -> i64 {
        self.size_sum() - self.size_a() - self.size_b() + 1
    }

    pub fn h_a(&self) -> i64 {
        self.m + 1 - self.size_a()
    }

    pub fn h_b(&self) -> i64 {
        self.n + 1 - self.size_b()
    }

    pub fn h_sum(&self) -> i64 {
        self.m + self.n + 1 - self.size_sum()
    }

    pub fn delta(&self) -> bool {
        self.delta
    }

    /// `h_A <= |B| - 2`, the diameter hypothesis in hole form.
    pub fn hole_bound(&self) -> bool {
        self.h_a() <= self.size_b() - 2
    }

    /// `r <= |B| - 2 - δ`, the cardinality hypothesis in excess form.
    pub fn excess_bound(&self) -> bool {
        self.r() <= self.size_b() - 2 - self.delta as i64
    }

    /// Both hypotheses of the long-progression theorem.
    pub fn theorem_hypotheses(&self) -> bool {
        self.hole_bound() && self.excess_bound()
    }

    pub fn profile(&self) -> SumsetProfile {
        let p = SumsetProfile {
            m: self.m,
            n: self.n,
            size_a: self.size_a(),
            size_b: self.size_b(),
            size_sum: self.size_sum(),
            r: self.r(),
            h_a: self.h_a(),
            h_b: self.h_b(),
            h_ab: self.h_sum(),
            delta: self.delta as u8,
            gcd_star_a: bits_gcd(&self.a),
            gcd_star_ab: bits_gcd(&self.sum),
        };
        debug_assert_eq!(p.m, p.size_a + p.h_a - 1);
        debug_assert_eq!(p.n, p.size_b + p.h_b - 1);
        debug_assert_eq!(p.h_ab, p.h_a + p.h_b - p.r);
        p
    }

    pub(crate) fn stability(&self) -> Stability {
        let (m, n) = (self.m, self.n);
        let holes_a = Bits::range(0, m, self.a.len()).and_not(&self.a);
        let holes_b = Bits::range(0, n, self.b.len()).and_not(&self.b);
        let missing = Bits::range(0, m + n, self.sum.len()).and_not(&self.sum);
        let left_window = Bits::range(0, n - 1, self.sum.len());
        let left = missing.and(&left_window);
        Stability {
            a_left: holes_a.and(&left),
            a_right: holes_a.and(&missing.shr(n as usize)).and(&Bits::range(
                m - n + 1,
                m,
                self.a.len(),
            )),
            b_left: holes_b.and(&left),
            b_right: holes_b
                .and(&missing.shr(m as usize))
                .and(&Bits::range(1, n, self.b.len())),
            holes_a,
            holes_b,
            missing,
        }
    }

    pub fn ledger(&self) -> HoleLedger {
        let st = self.stability();
        let tag = |pos: usize, left: &Bits, right: &Bits| HoleEntry {
            position: pos as i64,
            tags: Tags {
                left_stable: left.get(pos as i64),
                right_stable: right.get(pos as i64),
            },
        };
        let holes_a: Vec<HoleEntry> = st
            .holes_a
            .ones()
            .map(|p| tag(p, &st.a_left, &st.a_right))
            .collect();
        let holes_b: Vec<HoleEntry> = st
            .holes_b
            .ones()
            .map(|p| tag(p, &st.b_left, &st.b_right))
            .collect();
        let holes_sum = st
            .missing
            .ones()
            .map(|p| {
                let x = p as i64;
                if x < self.n {
                    SumHole {
                        position: x,
                        side: Side::Left,
                        x_a: Some(x),
                        x_b: Some(x),
                    }
                } else if x > self.m {
                    SumHole {
                        position: x,
                        side: Side::Right,
                        x_a: Some(x - self.n),
                        x_b: Some(x - self.m),
                    }
                } else {
                    SumHole {
                        position: x,
                        side: Side::Middle,
                        x_a: None,
                        x_b: None,
                    }
                }
            })
            .collect();
        let stable = |v: &[HoleEntry]| v.iter().filter(|h| h.tags.is_stable()).count() as i64;
        HoleLedger {
            stable_a: stable(&holes_a),
            stable_b: stable(&holes_b),
            unstable_a: holes_a.len() as i64 - stable(&holes_a),
            unstable_b: holes_b.len() as i64 - stable(&holes_b),
            holes_a,
            holes_b,
            holes_sum,
        }
    }

    /// `(e, c)`, `J = [e+1, M+c-1]` and the slack `s`, with the
    /// containment and length claims checked when the hypotheses hold.
    pub fn frontier(&self) -> Frontier {
        let st = self.stability();
        self.frontier_with(&st)
    }

    pub(crate) fn frontier_with(&self, st: &Stability) -> Frontier {
        let (m, n) = (self.m, self.n);
        let e = st.b_left.last_one().map_or(-1, |x| x as i64);
        let c = st.b_right.first_one().map_or(n + 1, |x| x as i64);
        let j = Interval::new(e + 1, m + c - 1);
        let s = holes_in(&self.a, e + 1, c + m - n - 1) + holes_in(&self.b, e + 1, c - 1);
        let hypotheses = self.theorem_hypotheses();
        let mut violations = Vec::new();
        if hypotheses {
            let mut chk = Checks::new();
            chk.require(e < c, || format!("e = {e} is not below c = {c}"));
            chk.require(self.sum.covers(j.lo, j.hi), || {
                format!("J = {j} is not contained in A+B")
            });
            chk.require(j.len() as i64 == m - 1 + (c - e), || {
                format!(
                    "|J| = {} differs from M - 1 + (c - e) = {}",
                    j.len(),
                    m - 1 + c - e
                )
            });
            let need = self.size_a() + self.size_b() - 1 + s;
            chk.require(j.len() as i64 >= need, || {
                format!("|J| = {} is below |A| + |B| - 1 + s = {need}", j.len())
            });
            violations = chk.finish(Predicate::Frontier).violations;
        }
        let status = match (hypotheses, violations.is_empty()) {
            (false, _) => Status::Vacuous,
            (true, true) => Status::Holds,
            (true, false) => Status::Falsified,
        };
        Frontier {
            e,
            c,
            j,
            j_len: j.len(),
            s,
            hypotheses,
            status,
            violations,
        }
    }

    /// Both hole-count inequalities, one entry per hole they apply to.
    pub fn key_lemma(&self) -> KeyLemmaReport {
        let (m, n) = (self.m, self.n);
        let mut entries = Vec::new();
        for x in 0..=n {
            if !self.sum.get(x) {
                let ha = holes_in(&self.a, 0, x);
                let hb = holes_in(&self.b, 0, x);
                entries.push(KeyLemmaEntry::new(Side::Left, x, ha, hb, x + 1));
            }
        }
        for x in 0..=n {
            if !self.sum.get(x + m) {
                let ha = holes_in(&self.a, x + m - n, m);
                let hb = holes_in(&self.b, x, n);
                entries.push(KeyLemmaEntry::new(Side::Right, x, ha, hb, n - x + 1));
            }
        }
        KeyLemmaReport { entries }
    }

    pub fn check_neutral_zone(&self) -> PredicateReport {
        if self.h_a() > self.size_b() - 1 {
            return PredicateReport::vacuous(Predicate::NeutralZone);
        }
        let mut chk = Checks::new();
        chk.require(self.sum.covers(self.n, self.m), || {
            let gap = (self.n..=self.m).find(|&x| !self.sum.get(x)).unwrap_or(-1);
            format!(
                "{gap} in [N, M] = [{}, {}] is missing from A+B",
                self.n, self.m
            )
        });
        chk.finish(Predicate::NeutralZone)
    }

    /// No hole of `B` in `[1, N]` misses both `x` and `x + M` in `A+B`, and
    /// no hole of `A` misses both `x` and `x + N`, whenever `h_A <= |B| - 2`.
    pub fn check_no_dual_stability(&self) -> PredicateReport {
        if !self.hole_bound() {
            return PredicateReport::vacuous(Predicate::NoDualStability);
        }
        let (m, n) = (self.m, self.n);
        let mut chk = Checks::new();
        for x in 1..=n {
            if !self.b.get(x) {
                chk.require(self.sum.get(x) || self.sum.get(x + m), || {
                    format!("hole {x} of B: both {x} and {} are missing from A+B", x + m)
                });
            }
        }
        for x in 0..=m {
            if !self.a.get(x) {
                chk.require(self.sum.get(x) || self.sum.get(x + n), || {
                    format!("hole {x} of A: both {x} and {} are missing from A+B", x + n)
                });
            }
        }
        chk.finish(Predicate::NoDualStability)
    }

    /// Left stable holes precede right stable holes, in `B` and in `A`.
    pub fn check_ordering(&self) -> PredicateReport {
        if !self.theorem_hypotheses() {
            return PredicateReport::vacuous(Predicate::Ordering);
        }
        let st = self.stability();
        let mut chk = Checks::new();
        for (name, left, right) in [
            ("B", &st.b_left, &st.b_right),
            ("A", &st.a_left, &st.a_right),
        ] {
            if let (Some(l), Some(r)) = (left.last_one(), right.first_one()) {
                chk.require(l < r, || {
                    format!("left stable hole {l} of {name} is not below right stable hole {r}")
                });
            }
        }
        chk.finish(Predicate::Ordering)
    }

    pub fn check_frontier(&self) -> PredicateReport {
        let f = self.frontier();
        PredicateReport {
            predicate: Predicate::Frontier,
            status: f.status,
            violations: f.violations,
        }
    }

    /// Recounts holes position by position and checks the expressions for
    /// `M`, `N` and `h_{A+B}`, the reformulated hypotheses, and that `δ`
    /// agrees with `A ⊆ B`.
    pub fn check_identities(&self) -> PredicateReport {
        let (m, n) = (self.m, self.n);
        let count_missing =
            |bits: &Bits, hi: i64| (0..=hi).filter(|&x| !bits.get(x)).count() as i64;
        let h_a = count_missing(&self.a, m);
        let h_b = count_missing(&self.b, n);
        let h_ab = count_missing(&self.sum, m + n);
        let (ka, kb, ks) = (self.size_a(), self.size_b(), self.size_sum());
        let r = ks - ka - kb + 1;
        let delta = self.delta as i64;
        let mut chk = Checks::new();
        chk.require(m == ka + h_a - 1, || {
            format!("M = {m} but |A| + h_A - 1 = {}", ka + h_a - 1)
        });
        chk.require(n == kb + h_b - 1, || {
            format!("N = {n} but |B| + h_B - 1 = {}", kb + h_b - 1)
        });
        chk.require(h_ab == m + n + 1 - ks, || {
            format!(
                "h_(A+B) = {h_ab} but M + N + 1 - |A+B| = {}",
                m + n + 1 - ks
            )
        });
        chk.require(h_ab == h_a + h_b - r, || {
            format!("h_(A+B) = {h_ab} but h_A + h_B - r = {}", h_a + h_b - r)
        });
        chk.require(r >= 0, || format!("|A+B| = {ks} is below |A| + |B| - 1"));
        let diam_chain = n <= m && m <= ka + kb - 3;
        chk.require(diam_chain == (h_a <= kb - 2), || {
            "diam A <= |A|+|B|-3 disagrees with h_A <= |B|-2".into()
        });
        let card = ks <= ka + 2 * kb - 3 - delta;
        chk.require(card == (r <= kb - 2 - delta), || {
            "|A+B| <= |A|+2|B|-3-δ disagrees with r <= |B|-2-δ".into()
        });
        let subset = self.a.and_not(&self.b).is_zero();
        chk.require(self.delta == subset, || {
            format!("δ = {delta} disagrees with A ⊆ B = {subset}")
        });
        chk.finish(Predicate::Identities)
    }

    /// The reflected pair `(M - A, N - B)` has the reflected sumset, swapped
    /// stability tags and frontier `(N - c, N - e)`.
    pub fn check_reflection_duality(&self) -> PredicateReport {
        let (m, n) = (self.m, self.n);
        let refl = NormalizedPair::from_bits(self.a.reversed(), self.b.reversed());
        let st = self.stability();
        let rst = refl.stability();
        let mut chk = Checks::new();
        chk.require(refl.sum == self.sum.reversed(), || {
            "sumset of the reflected pair is not the reflected sumset".into()
        });
        chk.require(
            rst.b_left == st.b_right.reversed() && rst.b_right == st.b_left.reversed(),
            || "reflection does not swap the stability tags of B".into(),
        );
        chk.require(
            rst.a_left == st.a_right.reversed() && rst.a_right == st.a_left.reversed(),
            || "reflection does not swap the stability tags of A".into(),
        );
        let f = self.frontier_with(&st);
        let rf = refl.frontier_with(&rst);
        chk.require(rf.e == n - f.c && rf.c == n - f.e, || {
            format!(
                "reflected frontier ({}, {}) is not (N - c, N - e) = ({}, {})",
                rf.e,
                rf.c,
                n - f.c,
                n - f.e
            )
        });
        debug_assert_eq!(refl.m, m);
        chk.finish(Predicate::ReflectionDuality)
    }
}

/// Whether `x + A ⊆ B` for some shift `x`, on characteristic vectors
/// anchored at 0.
fn shift_contained(a: &Bits, b: &Bits) -> bool {
    let slack = b.len() as i64 - a.len() as i64;
    (0..=slack).any(|x| {
        let mut shifted = Bits::zeros(b.len());
        shifted.or_shifted(a, x as usize);
        shifted.and_not(b).is_zero()
    })
}

pub(crate) fn bits_gcd(bits: &Bits) -> u64 {
    bits.ones().fold(0, |g, p| gcd(g, p as u64))
}

/// `|[lo, hi] \ X|` for a set given by its characteristic vector.
pub(crate) fn holes_in(bits: &Bits, lo: i64, hi: i64) -> i64 {
    if lo > hi {
        return 0;
    }
    (hi - lo + 1) - bits.count_range(lo, hi) as i64
}

/// Stability masks over the positions of `A` and `B`.
pub(crate) struct Stability {
    pub holes_a: Bits,
    pub holes_b: Bits,
    /// Holes of `A+B` in `[0, M+N]`.
    pub missing: Bits,
    pub a_left: Bits,
    pub a_right: Bits,
    pub b_left: Bits,
    pub b_right: Bits,
}

/// Normalized invariants of a pair.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SumsetProfile {
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "sizeA")]
    pub size_a: i64,
    #[serde(rename = "sizeB")]
    pub size_b: i64,
    #[serde(rename = "sizeAB")]
    pub size_sum: i64,
    pub r: i64,
    #[serde(rename = "hA")]
    pub h_a: i64,
    #[serde(rename = "hB")]
    pub h_b: i64,
    #[serde(rename = "hAB")]
    pub h_ab: i64,
    pub delta: u8,
    #[serde(rename = "gcdStarA")]
    pub gcd_star_a: u64,
    #[serde(rename = "gcdStarAB")]
    pub gcd_star_ab: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    /// A hole in `[N, M]`; only possible when `h_A >= |B|`.
    Middle,
}

/// Stability tags of one hole. A hole with neither tag is unstable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Tags {
    pub left_stable: bool,
    pub right_stable: bool,
}

impl Tags {
    pub fn is_stable(self) -> bool {
        self.left_stable || self.right_stable
    }
}

impl Serialize for Tags {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut names = Vec::with_capacity(2);
        if self.left_stable {
            names.push("leftStable");
        }
        if self.right_stable {
            names.push("rightStable");
        }
        if names.is_empty() {
            names.push("unstable");
        }
        names.serialize(serializer)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct HoleEntry {
    pub position: i64,
    pub tags: Tags,
}

/// A hole of `A+B` with its associated stable holes `x_A`, `x_B`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SumHole {
    pub position: i64,
    pub side: Side,
    #[serde(rename = "xA")]
    pub x_a: Option<i64>,
    #[serde(rename = "xB")]
    pub x_b: Option<i64>,
}

/// Every hole of `A`, `B` and `A+B`, classified.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HoleLedger {
    pub holes_a: Vec<HoleEntry>,
    pub holes_b: Vec<HoleEntry>,
    #[serde(rename = "holesAB")]
    pub holes_sum: Vec<SumHole>,
    #[serde(rename = "stableA")]
    pub stable_a: i64,
    #[serde(rename = "stableB")]
    pub stable_b: i64,
    #[serde(rename = "unstableA")]
    pub unstable_a: i64,
    #[serde(rename = "unstableB")]
    pub unstable_b: i64,
}

impl HoleLedger {
    pub fn is_empty(&self) -> bool {
        self.holes_a.is_empty() && self.holes_b.is_empty() && self.holes_sum.is_empty()
    }
}

/// The guaranteed interval and the stable-hole frontier of `B`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Frontier {
    /// Greatest left stable hole of `B`, or -1.
    pub e: i64,
    /// Smallest right stable hole of `B`, or `N + 1`.
    pub c: i64,
    #[serde(rename = "J")]
    pub j: Interval,
    #[serde(rename = "lengthJ")]
    pub j_len: u64,
    pub s: i64,
    pub hypotheses: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KeyLemmaEntry {
    pub side: Side,
    /// The hole `x` (left) or `x` with `x + M` missing (right).
    pub x: i64,
    pub holes_a: i64,
    pub holes_b: i64,
    pub bound: i64,
    pub slack: i64,
}

impl KeyLemmaEntry {
    fn new(side: Side, x: i64, holes_a: i64, holes_b: i64, bound: i64) -> Self {
        KeyLemmaEntry {
            side,
            x,
            holes_a,
            holes_b,
            bound,
            slack: holes_a + holes_b - bound,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct KeyLemmaReport {
    pub entries: Vec<KeyLemmaEntry>,
}

impl KeyLemmaReport {
    pub fn report(&self) -> PredicateReport {
        if self.entries.is_empty() {
            return PredicateReport::vacuous(Predicate::KeyLemma);
        }
        let violations = self
            .entries
            .iter()
            .filter(|e| e.slack < 0)
            .map(|e| e.to_string())
            .collect();
        PredicateReport::from_violations(Predicate::KeyLemma, violations)
    }
}

impl fmt::Display for KeyLemmaEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} x = {}: {} + {} holes against bound {}",
            self.side, self.x, self.holes_a, self.holes_b, self.bound
        )
    }
}

pub fn profile(a: &IntSet, b: &IntSet) -> Result<SumsetProfile> {
    Ok(NormalizedPair::new(a, b)?.profile())
}

pub fn classify(a: &IntSet, b: &IntSet) -> Result<HoleLedger> {
    Ok(NormalizedPair::new(a, b)?.ledger())
}

pub fn check_key_lemma(a: &IntSet, b: &IntSet) -> Result<KeyLemmaReport> {
    Ok(NormalizedPair::new(a, b)?.key_lemma())
}

pub fn frontier(a: &IntSet, b: &IntSet) -> Result<Frontier> {
    Ok(NormalizedPair::new(a, b)?.frontier())
}

/// Checks the stable/unstable hole counts against `h_A`, `h_B`, `r`, and that
/// `x ↦ x_A`, `x ↦ x_B` are injective into stable holes. Vacuous unless
/// `h_A <= |B| - 2`.
pub fn check_stability_identities(ledger: &HoleLedger, prof: &SumsetProfile) -> PredicateReport {
    if prof.h_a > prof.size_b - 2 {
        return PredicateReport::vacuous(Predicate::StabilityIdentities);
    }
    let (h_a, h_b, r) = (prof.h_a, prof.h_b, prof.r);
    let expected = h_a + h_b - r;
    let mut chk = Checks::new();
    chk.require(ledger.holes_sum.len() as i64 == prof.h_ab, || {
        format!(
            "ledger lists {} holes of A+B, profile has {}",
            ledger.holes_sum.len(),
            prof.h_ab
        )
    });
    chk.require(
        ledger.stable_a == expected && ledger.stable_b == expected && prof.h_ab == expected,
        || {
            format!(
                "h^s_A = {}, h^s_B = {}, h_(A+B) = {}, h_A + h_B - r = {expected}",
                ledger.stable_a, ledger.stable_b, prof.h_ab
            )
        },
    );
    chk.require(ledger.unstable_a == r - h_b, || {
        format!("h^u_A = {} but r - h_B = {}", ledger.unstable_a, r - h_b)
    });
    chk.require(ledger.unstable_b == r - h_a, || {
        format!("h^u_B = {} but r - h_A = {}", ledger.unstable_b, r - h_a)
    });

    let tags_of = |holes: &[HoleEntry], x: i64| {
        holes
            .binary_search_by_key(&x, |h| h.position)
            .ok()
            .map(|i| holes[i].tags)
    };
    let mut seen_a = HashSet::new();
    let mut seen_b = HashSet::new();
    for hole in &ledger.holes_sum {
        let (Some(xa), Some(xb)) = (hole.x_a, hole.x_b) else {
            chk.require(false, || {
                format!("hole {} of A+B lies in [N, M]", hole.position)
            });
            continue;
        };
        let wanted = |t: Tags| match hole.side {
            Side::Left => t.left_stable,
            _ => t.right_stable,
        };
        chk.require(tags_of(&ledger.holes_a, xa).is_some_and(wanted), || {
            format!(
                "x_A = {xa} of hole {} is not a matching stable hole of A",
                hole.position
            )
        });
        chk.require(tags_of(&ledger.holes_b, xb).is_some_and(wanted), || {
            format!(
                "x_B = {xb} of hole {} is not a matching stable hole of B",
                hole.position
            )
        });
        chk.require(seen_a.insert(xa), || {
            format!("x ↦ x_A is not injective at {xa}")
        });
        chk.require(seen_b.insert(xb), || {
            format!("x ↦ x_B is not injective at {xb}")
        });
    }
    chk.finish(Predicate::StabilityIdentities)
}

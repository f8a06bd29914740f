//! Finite integer sets and their additive arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bits::Bits;
use crate::error::{Error, Result};

/// Sumsets whose span is at most this many positions are built densely.
const DENSE_SPAN_LIMIT: i64 = 1 << 22;

/// A finite nonempty set of integers, kept in strictly increasing order.
///
/// Elements are confined to the `i32` range; constructors reject anything
/// outside it instead of wrapping.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntSet {
    elems: Vec<i32>,
}

fn to_elem(v: i64) -> Result<i32> {
    i32::try_from(v).map_err(|_| Error::Range(v))
}

impl IntSet {
    /// Builds a set from arbitrary integers; order and duplicates don't matter.
    pub fn new<I: IntoIterator<Item = i64>>(values: I) -> Result<Self> {
        let mut elems = values
            .into_iter()
            .map(to_elem)
            .collect::<Result<Vec<_>>>()?;
        if elems.is_empty() {
            return Err(Error::Empty);
        }
        elems.sort_unstable();
        elems.dedup();
        Ok(IntSet { elems })
    }

    /// The interval `[lo, hi]`.
    pub fn interval(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Empty);
        }
        to_elem(lo)?;
        to_elem(hi)?;
        IntSet::new(lo..=hi)
    }

    pub fn singleton(v: i32) -> Self {
        IntSet { elems: vec![v] }
    }

    pub(crate) fn from_sorted_unchecked(elems: Vec<i32>) -> Self {
        debug_assert!(!elems.is_empty());
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        IntSet { elems }
    }

    /// The set `{i : bit i of mask is set}`; `mask` must be nonzero.
    pub fn from_mask(mask: u64) -> Result<Self> {
        if mask == 0 {
            return Err(Error::Empty);
        }
        let elems = (0..64).filter(|i| mask >> i & 1 == 1).collect();
        Ok(IntSet { elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Always false; present for API symmetry with std collections.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> i64 {
        self.elems[0] as i64
    }

    pub fn max(&self) -> i64 {
        self.elems[self.elems.len() - 1] as i64
    }

    pub fn contains(&self, x: i64) -> bool {
        i32::try_from(x).is_ok_and(|x| self.elems.binary_search(&x).is_ok())
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = i64> + ExactSizeIterator + '_ {
        self.elems.iter().map(|&x| x as i64)
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.elems
    }

    pub fn is_subset(&self, other: &IntSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn is_interval(&self) -> bool {
        self.diam() + 1 == self.len() as i64
    }

    /// `{x + by : x in self}`.
    pub fn translate(&self, by: i64) -> Result<IntSet> {
        let elems = self
            .iter()
            .map(|x| to_elem(x + by))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntSet { elems })
    }

    /// `{max + min - x}`: the mirror image on the same hull.
    pub fn reflect(&self) -> IntSet {
        let pivot = self.max() + self.min();
        let elems = self.iter().rev().map(|x| (pivot - x) as i32).collect();
        IntSet { elems }
    }

    /// `{x / d}` when every element is divisible by `d`, otherwise `None`.
    pub fn contract(&self, d: i64) -> Option<IntSet> {
        if d <= 0 || self.iter().any(|x| x % d != 0) {
            return None;
        }
        let elems = self.iter().map(|x| (x / d) as i32).collect();
        Some(IntSet { elems })
    }

    pub fn union(&self, other: &IntSet) -> IntSet {
        let mut elems: Vec<i32> = self.elems.iter().chain(&other.elems).copied().collect();
        elems.sort_unstable();
        elems.dedup();
        IntSet { elems }
    }

    /// `self ∪ window`; an empty window leaves the set unchanged.
    pub fn union_interval(&self, window: Interval) -> Result<IntSet> {
        if window.is_empty() {
            return Ok(self.clone());
        }
        Ok(self.union(&IntSet::interval(window.lo, window.hi)?))
    }

    /// `self ∩ window`, or `None` if nothing survives.
    pub fn restrict(&self, window: Interval) -> Option<IntSet> {
        let elems: Vec<i32> = self
            .elems
            .iter()
            .copied()
            .filter(|&x| window.contains(x as i64))
            .collect();
        (!elems.is_empty()).then_some(IntSet { elems })
    }

    pub fn diam(&self) -> i64 {
        diam(self)
    }

    /// Characteristic vector of `self - min` over `[0, diam]`.
    pub(crate) fn to_bits(&self) -> Bits {
        let min = self.min();
        let len = (self.diam() + 1) as usize;
        Bits::from_positions(self.iter().map(|x| (x - min) as usize), len)
    }

    pub(crate) fn from_bits(bits: &Bits, offset: i64) -> IntSet {
        let elems = bits.ones().map(|p| (p as i64 + offset) as i32).collect();
        IntSet::from_sorted_unchecked(elems)
    }
}

impl fmt::Display for IntSet {
    /// The set-literal form: comma-separated, no spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.elems.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for IntSet {
    type Err = Error;

    /// Accepts `0,1,2` (whitespace allowed) or a JSON array `[0,1,2]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let values: Vec<i64> =
                serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
            return IntSet::new(values);
        }
        if s.is_empty() {
            return Err(Error::Empty);
        }
        let values = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("`{tok}` is not an integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntSet::new(values)
    }
}

impl Serialize for IntSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for IntSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The integer interval `[lo, hi]`; empty when `lo > hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        Interval { lo, hi }
    }

    pub fn hull(s: &IntSet) -> Self {
        Interval::new(s.min(), s.max())
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as u64
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// Translates `s` so its minimum is 0; returns the subtracted offset.
pub fn normalize(s: &IntSet) -> (IntSet, i64) {
    let offset = s.min();
    let elems = s.iter().map(|x| (x - offset) as i32).collect();
    (IntSet::from_sorted_unchecked(elems), offset)
}

/// `A + B = {a + b}`.
pub fn sumset(a: &IntSet, b: &IntSet) -> Result<IntSet> {
    let lo = a.min() + b.min();
    let hi = a.max() + b.max();
    to_elem(lo)?;
    to_elem(hi)?;
    let span = hi - lo + 1;
    if span <= DENSE_SPAN_LIMIT {
        let bits = a.to_bits().sum(&b.to_bits(), span as usize);
        return Ok(IntSet::from_bits(&bits, lo));
    }
    let mut elems = Vec::with_capacity(a.len() * b.len());
    for x in a.iter() {
        elems.extend(b.iter().map(|y| (x + y) as i32));
    }
    elems.sort_unstable();
    elems.dedup();
    Ok(IntSet::from_sorted_unchecked(elems))
}

/// `hA = A + ... + A` (`h` summands); `h = 1` returns `A`.
pub fn h_fold_sumset(a: &IntSet, h: u32) -> Result<IntSet> {
    if h == 0 {
        return Err(Error::Contract("h-fold sumset needs h >= 1".into()));
    }
    let mut acc = a.clone();
    for _ in 1..h {
        acc = sumset(&acc, a)?;
    }
    Ok(acc)
}

pub fn diam(s: &IntSet) -> i64 {
    s.max() - s.min()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `gcd(S - min S)`; 0 for a singleton.
pub fn gcd_star(s: &IntSet) -> u64 {
    let min = s.min();
    s.iter().fold(0, |g, x| gcd(g, (x - min) as u64))
}

/// Whether some translate `x + A` lies inside `B`.
pub fn delta(a: &IntSet, b: &IntSet) -> bool {
    if a.len() > b.len() || a.diam() > b.diam() {
        return false;
    }
    // x + min A must land on an element of B.
    b.iter()
        .map(|y| y - a.min())
        .filter(|x| x + a.max() <= b.max())
        .any(|x| a.iter().all(|v| b.contains(v + x)))
}

/// Number of integers in `window` missing from `s`.
pub fn holes(s: &IntSet, window: Interval) -> u64 {
    if window.is_empty() {
        return 0;
    }
    let slice = s.as_slice();
    let lo = slice.partition_point(|&x| (x as i64) < window.lo);
    let hi = slice.partition_point(|&x| (x as i64) <= window.hi);
    window.len() - (hi - lo) as u64
}

/// Holes of `s` in its own hull `[min S, max S]`.
pub fn holes_default(s: &IntSet) -> u64 {
    holes(s, Interval::hull(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.iter().copied()).unwrap()
    }

    fn naive_sum(a: &IntSet, b: &IntSet) -> Vec<i64> {
        let mut out = BTreeSet::new();
        for x in a.iter() {
            for y in b.iter() {
                out.insert(x + y);
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&set(&[0, 3, 5])), (set(&[0, 3, 5]), 0));
        assert_eq!(normalize(&set(&[7])), (set(&[0]), 7));
        assert_eq!(normalize(&set(&[-2, 1, 4])), (set(&[0, 3, 6]), -2));
        let (n, off) = normalize(&set(&[-2, 1, 4]));
        assert_eq!(n.translate(off).unwrap(), set(&[-2, 1, 4]));
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(sumset(&set(&[0]), &set(&[0])).unwrap(), set(&[0]));
        assert_eq!(
            sumset(&set(&[0, 1, 2]), &set(&[0, 1])).unwrap(),
            set(&[0, 1, 2, 3])
        );
        let a = set(&[0, 1, 2, 3, 5]);
        let expected = naive_sum(&a, &a);
        assert_eq!(expected, vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 10]);
        assert_eq!(sumset(&a, &a).unwrap().iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn sumset_sparse_path_agrees_with_naive() {
        let a = set(&[-3_000_000, 0, 5, 2_000_000]);
        let b = set(&[-7, 1, 3_000_000]);
        assert_eq!(
            sumset(&a, &b).unwrap().iter().collect::<Vec<_>>(),
            naive_sum(&a, &b)
        );
    }

    #[test]
    fn sumset_range_error() {
        let a = set(&[0, i32::MAX as i64]);
        assert_eq!(
            sumset(&a, &set(&[1])),
            Err(Error::Range(i32::MAX as i64 + 1))
        );
        let b = set(&[i32::MIN as i64]);
        assert!(matches!(sumset(&b, &b), Err(Error::Range(_))));
        assert!(matches!(IntSet::new([1i64 << 40]), Err(Error::Range(_))));
    }

    #[test]
    fn h_fold_examples() {
        assert_eq!(h_fold_sumset(&set(&[0, 1]), 3).unwrap(), set(&[0, 1, 2, 3]));
        assert_eq!(h_fold_sumset(&set(&[0, 3]), 2).unwrap(), set(&[0, 3, 6]));
        let a = set(&[0, 2, 5]);
        let expected = naive_sum(&a, &a);
        assert_eq!(expected, vec![0, 2, 4, 5, 7, 10]);
        assert_eq!(
            h_fold_sumset(&a, 2).unwrap().iter().collect::<Vec<_>>(),
            expected
        );
        assert_eq!(h_fold_sumset(&a, 1).unwrap(), a);
        assert!(h_fold_sumset(&a, 0).is_err());
    }

    #[test]
    fn diam_examples() {
        assert_eq!(diam(&set(&[3])), 0);
        assert_eq!(diam(&set(&[0, 1, 5])), 5);
        assert_eq!(diam(&set(&[2, 7, 11])), 9);
    }

    #[test]
    fn gcd_star_examples() {
        assert_eq!(gcd_star(&set(&[0, 2, 4])), 2);
        assert_eq!(gcd_star(&set(&[3, 5, 9])), 2);
        assert_eq!(gcd_star(&set(&[7])), 0);
    }

    fn naive_delta(a: &IntSet, b: &IntSet) -> bool {
        (b.min() - a.max()..=b.max() - a.min()).any(|x| a.iter().all(|v| b.contains(v + x)))
    }

    #[test]
    fn delta_examples() {
        assert!(delta(&set(&[0, 1]), &set(&[0, 1, 2])));
        assert!(!delta(&set(&[0, 3]), &set(&[0, 1, 2])));
        let (a, b) = (set(&[0, 2]), set(&[1, 3, 4]));
        assert!(naive_delta(&a, &b));
        assert!(delta(&a, &b));
    }

    #[test]
    fn holes_examples() {
        let s = set(&[0, 1, 3, 6]);
        assert_eq!(holes_default(&s), 3);
        assert_eq!(holes(&s, Interval::new(2, 5)), 3);
        assert_eq!(holes_default(&set(&[0, 1, 2])), 0);
        assert_eq!(holes(&s, Interval::new(5, 2)), 0);
        assert_eq!(holes(&s, Interval::new(-3, 0)), 3);
    }

    #[test]
    fn literal_forms() {
        assert_eq!(
            "0, 1,2 ,3,5".parse::<IntSet>().unwrap(),
            set(&[0, 1, 2, 3, 5])
        );
        assert_eq!("[5, -1, 2]".parse::<IntSet>().unwrap(), set(&[-1, 2, 5]));
        assert!(matches!("0,1,x".parse::<IntSet>(), Err(Error::Parse(_))));
        assert_eq!("".parse::<IntSet>(), Err(Error::Empty));
        assert_eq!("[]".parse::<IntSet>(), Err(Error::Empty));
        assert_eq!(set(&[-1, 2, 5]).to_string(), "-1,2,5");
    }

    #[test]
    fn reflect_and_contract() {
        assert_eq!(set(&[0, 1, 3, 7]).reflect(), set(&[0, 4, 6, 7]));
        assert_eq!(set(&[2, 3, 5]).reflect(), set(&[2, 4, 5]));
        assert_eq!(set(&[0, 4, 6]).contract(2), Some(set(&[0, 2, 3])));
        assert_eq!(set(&[0, 3]).contract(2), None);
    }
}

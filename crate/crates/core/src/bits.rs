//! Dense characteristic vectors over `[0, len)`.
//!
//! Normalized sets live inside `[0, diam]`, so the analysis code works on
//! these instead of sorted element lists. Up to 128 positions are stored
//! inline, which covers every pair the exhaustive verifier can reach.

use smallvec::{smallvec, SmallVec};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits {
    words: SmallVec<[u64; 2]>,
    len: usize,
}

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            words: smallvec![0; words_for(len)],
            len,
        }
    }

    /// Positions `[0, len)` taken from the low bits of `mask`. `len <= 64`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        debug_assert!(len <= WORD);
        let mut b = Bits::zeros(len);
        if len > 0 {
            b.words[0] = mask;
            b.trim();
        }
        b
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I, len: usize) -> Self {
        let mut b = Bits::zeros(len);
        for p in positions {
            b.set(p);
        }
        b
    }

    /// All ones on `[lo, hi]`, clipped to `[0, len)`.
    pub fn range(lo: i64, hi: i64, len: usize) -> Self {
        let mut b = Bits::zeros(len);
        let lo = lo.max(0);
        let hi = hi.min(len as i64 - 1);
        if lo > hi {
            return b;
        }
        let (lo, hi) = (lo as usize, hi as usize);
        let (lw, hw) = (lo / WORD, hi / WORD);
        for w in lw..=hw {
            let start = if w == lw { lo % WORD } else { 0 };
            let end = if w == hw { hi % WORD } else { WORD - 1 };
            let width = end - start + 1;
            let m = if width == WORD {
                u64::MAX
            } else {
                ((1u64 << width) - 1) << start
            };
            b.words[w] |= m;
        }
        b
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn get(&self, i: i64) -> bool {
        if i < 0 || i as usize >= self.len {
            return false;
        }
        let i = i as usize;
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of set bits in `[lo, hi]`, clipped to the vector.
    pub fn count_range(&self, lo: i64, hi: i64) -> usize {
        if lo > hi {
            return 0;
        }
        self.and(&Bits::range(lo, hi, self.len)).count()
    }

    /// Whether every position of `[lo, hi]` is set. Positions outside the
    /// vector count as unset, so a window poking out of it fails.
    pub fn covers(&self, lo: i64, hi: i64) -> bool {
        if lo > hi {
            return true;
        }
        if lo < 0 || hi >= self.len as i64 {
            return false;
        }
        self.count_range(lo, hi) as i64 == hi - lo + 1
    }

    pub fn and(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        for (i, w) in out.words.iter_mut().enumerate() {
            *w &= other.words.get(i).copied().unwrap_or(0);
        }
        out
    }

    /// `self & !other`.
    pub fn and_not(&self, other: &Bits) -> Bits {
        let mut out = self.clone();
        for (i, w) in out.words.iter_mut().enumerate() {
            *w &= !other.words.get(i).copied().unwrap_or(0);
        }
        out
    }

    pub fn or_assign(&mut self, other: &Bits) {
        for (i, w) in self.words.iter_mut().enumerate() {
            *w |= other.words.get(i).copied().unwrap_or(0);
        }
        self.trim();
    }

    /// Bit `x` of the result is bit `x + k` of `self`; same length.
    pub fn shr(&self, k: usize) -> Bits {
        let mut out = Bits::zeros(self.len);
        let (ws, bs) = (k / WORD, k % WORD);
        let n = self.words.len();
        for i in 0..n {
            let src = i + ws;
            if src >= n {
                break;
            }
            let mut w = self.words[src] >> bs;
            if bs != 0 && src + 1 < n {
                w |= self.words[src + 1] << (WORD - bs);
            }
            out.words[i] = w;
        }
        out
    }

    /// `self |= other << shift`, dropping bits that fall off the end.
    pub fn or_shifted(&mut self, other: &Bits, shift: usize) {
        let (ws, bs) = (shift / WORD, shift % WORD);
        let n = self.words.len();
        for (i, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let dst = i + ws;
            if dst >= n {
                break;
            }
            self.words[dst] |= w << bs;
            if bs != 0 && dst + 1 < n {
                self.words[dst + 1] |= w >> (WORD - bs);
            }
        }
        self.trim();
    }

    /// `{a + b}` over the set bits of both operands, on `[0, len)`.
    pub fn sum(&self, other: &Bits, len: usize) -> Bits {
        let mut out = Bits::zeros(len);
        let (small, large) = if self.count() <= other.count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut wide = large.clone();
        wide.resize(len);
        for s in small.ones() {
            out.or_shifted(&wide, s);
        }
        out
    }

    pub fn resize(&mut self, len: usize) {
        self.words.resize(words_for(len), 0);
        self.len = len;
        self.trim();
    }

    /// Bit `x` of the result is bit `len - 1 - x` of `self`.
    pub fn reversed(&self) -> Bits {
        let top = self.len - 1;
        Bits::from_positions(self.ones().map(|p| top - p), self.len)
    }

    pub fn ones(&self) -> Ones<'_> {
        Ones {
            bits: self,
            word: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    pub fn last_one(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i * WORD + (WORD - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }
}

pub(crate) struct Ones<'a> {
    bits: &'a Bits,
    word: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * WORD + tz);
            }
            self.word += 1;
            self.cur = *self.bits.words.get(self.word)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_and_count() {
        let b = Bits::range(3, 70, 100);
        assert_eq!(b.count(), 68);
        assert_eq!(b.first_one(), Some(3));
        assert_eq!(b.last_one(), Some(70));
        assert_eq!(Bits::range(-5, 200, 10).count(), 10);
        assert!(Bits::range(5, 4, 10).is_zero());
        assert_eq!(Bits::range(0, 63, 64).count(), 64);
    }

    #[test]
    fn shifts_cross_word_boundaries() {
        let a = Bits::from_positions([0, 1, 63, 64, 100], 128);
        let s = a.shr(1);
        assert_eq!(s.ones().collect::<Vec<_>>(), vec![0, 62, 63, 99]);
        let mut t = Bits::zeros(128);
        t.or_shifted(&a, 30);
        assert_eq!(t.ones().collect::<Vec<_>>(), vec![30, 31, 93, 94]);
    }

    #[test]
    fn sum_matches_pairwise() {
        let a = Bits::from_positions([0, 1, 2, 3, 5], 6);
        let b = Bits::from_positions([0, 1, 3], 4);
        let s = a.sum(&b, 9);
        assert_eq!(s.ones().collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5, 6, 8]);
    }

    #[test]
    fn covers_rejects_out_of_range_windows() {
        let a = Bits::range(0, 9, 10);
        assert!(a.covers(0, 9));
        assert!(!a.covers(0, 10));
        assert!(!a.covers(-1, 3));
        assert!(a.covers(4, 3));
    }
}

//! Longest arithmetic progressions and the long-progression verdicts.

use std::collections::HashMap;

use serde::Serialize;

use crate::analysis::{bits_gcd, NormalizedPair};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::report::{Checks, Predicate, PredicateReport, Status};
use crate::sets::{delta, gcd_star, sumset, IntSet};

/// `{start, start + d, ..., start + (length - 1) d}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Progression {
    pub start: i64,
    pub length: u64,
}

/// Longest block of consecutive integers in `s`; ties go to the smallest start.
pub fn longest_run(s: &IntSet) -> Progression {
    let mut best = Progression {
        start: s.min(),
        length: 1,
    };
    let mut cur = best;
    let elems = s.as_slice();
    for w in elems.windows(2) {
        if w[1] as i64 == w[0] as i64 + 1 {
            cur.length += 1;
        } else {
            cur = Progression {
                start: w[1] as i64,
                length: 1,
            };
        }
        if cur.length > best.length {
            best = cur;
        }
    }
    best
}

/// Longest progression with difference `d` inside `s`; ties go to the
/// smallest start.
pub fn longest_ap(s: &IntSet, d: u64) -> Result<Progression> {
    if d == 0 {
        return Err(Error::Contract(
            "progression difference must be positive".into(),
        ));
    }
    let d = d as i64;
    // Chain length ending at each element, in increasing order.
    let mut ending: HashMap<i64, u64> = HashMap::with_capacity(s.len());
    let mut best = Progression {
        start: s.min(),
        length: 1,
    };
    for x in s.iter() {
        let len = ending.get(&(x - d)).map_or(1, |l| l + 1);
        ending.insert(x, len);
        let start = x - (len as i64 - 1) * d;
        if len > best.length || (len == best.length && start < best.start) {
            best = Progression { start, length: len };
        }
    }
    Ok(best)
}

pub(crate) fn longest_run_bits(bits: &Bits) -> Progression {
    let mut best = Progression {
        start: 0,
        length: 0,
    };
    let mut run_start = 0;
    let mut prev: Option<usize> = None;
    for p in bits.ones() {
        if prev != Some(p.wrapping_sub(1)) || p == 0 {
            run_start = p;
        }
        let len = (p - run_start + 1) as u64;
        if len > best.length {
            best = Progression {
                start: run_start as i64,
                length: len,
            };
        }
        prev = Some(p);
    }
    best
}

/// Longest run of multiples of `d` (as positions `start, start + d, ...`).
fn longest_ap_bits(bits: &Bits, d: usize) -> Progression {
    let mut best = Progression {
        start: 0,
        length: 0,
    };
    for residue in 0..d {
        let mut run: Option<(usize, u64)> = None;
        let mut p = residue;
        while p < bits.len() {
            if bits.get(p as i64) {
                let (start, len) = run.map_or((p, 1), |(s, l)| (s, l + 1));
                run = Some((start, len));
                if len > best.length || (len == best.length && (start as i64) < best.start) {
                    best = Progression {
                        start: start as i64,
                        length: len,
                    };
                }
            } else {
                run = None;
            }
            p += d;
        }
    }
    best
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct HypothesisCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Verdict on one pair for the long-progression theorem or its corollary.
///
/// `status` is `Falsified` exactly when the hypotheses hold but the
/// progression found is shorter than `required`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TheoremVerdict {
    pub hypotheses: Vec<HypothesisCheck>,
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    pub ap_start: i64,
    pub ap_length: u64,
    pub difference: u64,
    pub required: u64,
    pub tight: bool,
    pub degenerate: bool,
    pub status: Status,
}

impl TheoremVerdict {
    fn new(
        hypotheses: Vec<HypothesisCheck>,
        hypotheses_hold: bool,
        ap: Progression,
        difference: u64,
        required: u64,
    ) -> Self {
        let conclusion_holds = ap.length >= required;
        let status = match (hypotheses_hold, conclusion_holds) {
            (false, _) => Status::Vacuous,
            (true, true) => Status::Holds,
            (true, false) => Status::Falsified,
        };
        TheoremVerdict {
            hypotheses,
            hypotheses_hold,
            conclusion_holds,
            ap_start: ap.start,
            ap_length: ap.length,
            difference,
            required,
            tight: ap.length == required,
            degenerate: false,
            status,
        }
    }

    pub fn report(&self, predicate: Predicate) -> PredicateReport {
        let mut r = PredicateReport::vacuous(predicate);
        r.status = self.status;
        if self.status == Status::Falsified {
            r.violations.push(format!(
                "longest difference-{} progression has length {} < {}",
                self.difference, self.ap_length, self.required
            ));
        }
        r
    }
}

impl NormalizedPair {
    pub fn theorem_verdict(&self) -> TheoremVerdict {
        let (ka, kb) = (self.size_a(), self.size_b());
        let diam_chain = self.n <= self.m && self.m <= ka + kb - 3;
        let card = self.size_sum() <= ka + 2 * kb - 3 - self.delta() as i64;
        let hyps = vec![
            HypothesisCheck {
                name: "diamChain",
                holds: diam_chain,
            },
            HypothesisCheck {
                name: "cardBound",
                holds: card,
            },
        ];
        let ap = longest_run_bits(&self.sum);
        TheoremVerdict::new(hyps, self.theorem_hypotheses(), ap, 1, (ka + kb - 1) as u64)
    }

    /// The corollary, contracting by `d = gcd*(A+B)` when `d > 1`.
    pub fn corollary_verdict(&self) -> TheoremVerdict {
        let (ka, kb) = (self.size_a(), self.size_b());
        let required = (ka + kb - 1) as u64;
        let d = bits_gcd(&self.sum);
        if d == 0 {
            let mut v = TheoremVerdict::new(
                Vec::new(),
                true,
                Progression {
                    start: 0,
                    length: 1,
                },
                1,
                required,
            );
            v.degenerate = true;
            return v;
        }
        let contracted;
        let base = if d == 1 {
            self
        } else {
            let shrink = |bits: &Bits| {
                let len = (bits.len() - 1) / d as usize + 1;
                Bits::from_positions(bits.ones().map(|p| p / d as usize), len)
            };
            contracted = NormalizedPair::from_bits(shrink(&self.a), shrink(&self.b));
            &contracted
        };
        let (kc, ka2, kb2) = (base.size_sum(), base.size_a(), base.size_b());
        let tee2 = kc <= ka2 + 2 * kb2 - 3 - base.delta() as i64;
        let gcd_a_one = bits_gcd(&base.a) == 1;
        let tee = kc <= 2 * ka2 + kb2 - 3;
        let hyps = vec![
            HypothesisCheck {
                name: "sumGcdIsOne",
                holds: d == 1,
            },
            HypothesisCheck {
                name: "tee2",
                holds: tee2,
            },
            HypothesisCheck {
                name: "gcdStarAIsOne",
                holds: gcd_a_one,
            },
            HypothesisCheck {
                name: "tee",
                holds: tee,
            },
        ];
        let ap = longest_ap_bits(&self.sum, d as usize);
        TheoremVerdict::new(hyps, tee2 && (gcd_a_one || tee), ap, d, required)
    }
}

/// Verdict for the long-progression theorem on a normalized pair.
pub fn theorem_verdict(a: &IntSet, b: &IntSet) -> Result<TheoremVerdict> {
    Ok(NormalizedPair::new(a, b)?.theorem_verdict())
}

/// Verdict for the corollary on a normalized pair.
pub fn corollary_verdict(a: &IntSet, b: &IntSet) -> Result<TheoremVerdict> {
    Ok(NormalizedPair::new(a, b)?.corollary_verdict())
}

/// The literature diameter bound for small sumsets: with `diam A >= diam B`,
/// `gcd*(A) = 1` and `|A+B| <= |A| + 2|B| - 3 - δ`, it claims
/// `diam A <= |A| + r - 1` and `diam B <= min(|A|, |B|) + r - 1`.
pub fn cited_diam_check(a: &IntSet, b: &IntSet) -> Result<PredicateReport> {
    if a.diam() < b.diam() {
        return Err(Error::Contract(format!(
            "diam A = {} is smaller than diam B = {}",
            a.diam(),
            b.diam()
        )));
    }
    let (ka, kb) = (a.len() as i64, b.len() as i64);
    let ks = sumset(a, b)?.len() as i64;
    let d = delta(a, b) as i64;
    Ok(diam_bound_report(
        a.diam(),
        b.diam(),
        ka,
        kb,
        ks,
        d,
        gcd_star(a) == 1,
    ))
}

impl NormalizedPair {
    pub(crate) fn check_cited_diam(&self) -> PredicateReport {
        let gcd_one = bits_gcd(&self.a) == 1;
        diam_bound_report(
            self.m,
            self.n,
            self.size_a(),
            self.size_b(),
            self.size_sum(),
            self.delta() as i64,
            gcd_one,
        )
    }
}

fn diam_bound_report(
    diam_a: i64,
    diam_b: i64,
    ka: i64,
    kb: i64,
    ks: i64,
    delta: i64,
    gcd_one: bool,
) -> PredicateReport {
    if !gcd_one || ks > ka + 2 * kb - 3 - delta {
        return PredicateReport::vacuous(Predicate::CitedDiam);
    }
    let r = ks - ka - kb + 1;
    let mut chk = Checks::new();
    chk.require(diam_a < ka + r, || {
        format!("diam A = {diam_a} exceeds |A| + r - 1 = {}", ka + r - 1)
    });
    let bound_b = ka.min(kb) + r - 1;
    chk.require(diam_b <= bound_b, || {
        format!("diam B = {diam_b} exceeds min(|A|, |B|) + r - 1 = {bound_b}")
    });
    chk.finish(Predicate::CitedDiam)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> IntSet {
        IntSet::new(v.iter().copied()).unwrap()
    }

    /// Scan every start and extend greedily.
    fn naive_longest(s: &IntSet, d: i64) -> Progression {
        let mut best = Progression {
            start: s.min(),
            length: 1,
        };
        for start in s.iter() {
            let mut len = 0;
            while s.contains(start + len * d) {
                len += 1;
            }
            if len as u64 > best.length {
                best = Progression {
                    start,
                    length: len as u64,
                };
            }
        }
        best
    }

    #[test]
    fn longest_run_examples() {
        assert_eq!(
            longest_run(&set(&[5])),
            Progression {
                start: 5,
                length: 1
            }
        );
        assert_eq!(
            longest_run(&set(&[0, 1, 2, 4, 5])),
            Progression {
                start: 0,
                length: 3
            }
        );
        let s = set(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 10]);
        assert_eq!(
            naive_longest(&s, 1),
            Progression {
                start: 0,
                length: 9
            }
        );
        assert_eq!(
            longest_run(&s),
            Progression {
                start: 0,
                length: 9
            }
        );
        assert_eq!(
            longest_run(&set(&[0, 1, 5, 6])),
            Progression {
                start: 0,
                length: 2
            }
        );
    }

    #[test]
    fn longest_ap_examples() {
        assert_eq!(
            longest_ap(&set(&[0, 2, 4, 5]), 2).unwrap(),
            Progression {
                start: 0,
                length: 3
            }
        );
        assert_eq!(
            longest_ap(&set(&[0, 3, 6, 7]), 3).unwrap(),
            Progression {
                start: 0,
                length: 3
            }
        );
        let s = set(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 10]);
        assert_eq!(longest_ap(&s, 1).unwrap(), longest_run(&s));
        assert!(longest_ap(&s, 0).is_err());
        // Equal lengths: smallest start wins even when found later.
        assert_eq!(
            longest_ap(&set(&[1, 0, 3, 2, 4]), 2).unwrap(),
            Progression {
                start: 0,
                length: 3
            }
        );
    }

    #[test]
    fn bit_scanners_agree_with_set_scanners() {
        let s = set(&[0, 2, 3, 4, 6, 8, 9, 10, 11, 14, 16, 18, 20]);
        let bits = s.to_bits();
        assert_eq!(longest_run_bits(&bits), longest_run(&s));
        for d in 1..6 {
            assert_eq!(
                longest_ap_bits(&bits, d),
                longest_ap(&s, d as u64).unwrap(),
                "d = {d}"
            );
        }
    }

    #[test]
    fn theorem_worked_pair_is_tight() {
        let v = theorem_verdict(&set(&[0, 1, 2, 3, 5]), &set(&[0, 1, 3])).unwrap();
        assert!(v.hypotheses_hold);
        assert_eq!((v.ap_start, v.ap_length, v.required), (0, 7, 7));
        assert!(v.tight);
        assert_eq!(v.status, Status::Holds);
    }

    #[test]
    fn theorem_intervals() {
        let v = theorem_verdict(&set(&[0, 1, 2, 3]), &set(&[0, 1, 2])).unwrap();
        assert!(v.hypotheses_hold && v.tight);
        assert_eq!(v.ap_length, 6);
    }

    #[test]
    fn theorem_family_two_is_vacuous() {
        let a = set(&[0, 1, 2, 7, 8, 9]);
        let v = theorem_verdict(&a, &a).unwrap();
        assert_eq!(
            v.hypotheses[0],
            HypothesisCheck {
                name: "diamChain",
                holds: true
            }
        );
        assert_eq!(
            v.hypotheses[1],
            HypothesisCheck {
                name: "cardBound",
                holds: false
            }
        );
        assert_eq!(v.status, Status::Vacuous);
        assert_eq!((v.ap_length, v.required), (5, 11));
        let p = NormalizedPair::new(&a, &a).unwrap();
        assert_eq!((p.r(), p.size_b() - 2 - p.delta() as i64), (4, 3));
    }

    #[test]
    fn theorem_rejects_unnormalized() {
        assert!(theorem_verdict(&set(&[1, 2]), &set(&[0])).is_err());
    }

    #[test]
    fn corollary_examples() {
        let v = corollary_verdict(&set(&[0, 1, 2, 3, 5]), &set(&[0, 1, 3])).unwrap();
        assert_eq!((v.difference, v.ap_length, v.status), (1, 7, Status::Holds));

        let v = corollary_verdict(&set(&[0, 2, 4]), &set(&[0, 2])).unwrap();
        assert_eq!(v.difference, 2);
        assert!(!v.hypotheses[0].holds);
        assert!(v.hypotheses_hold);
        // Contraction oracle: {0,1,2} + {0,1} = [0,3], so A+B = {0,2,4,6}.
        let contracted = sumset(&set(&[0, 1, 2]), &set(&[0, 1])).unwrap();
        assert_eq!(longest_run(&contracted).length, 4);
        assert_eq!((v.ap_start, v.ap_length, v.required), (0, 4, 4));
        assert_eq!(v.status, Status::Holds);

        let v = corollary_verdict(&set(&[0]), &set(&[0])).unwrap();
        assert!(v.degenerate);
        assert_eq!((v.ap_length, v.required, v.status), (1, 1, Status::Holds));
    }

    #[test]
    fn cited_diam_examples() {
        let r = cited_diam_check(&set(&[0, 1, 2, 3, 5]), &set(&[0, 1, 3])).unwrap();
        assert!(r.holds());
        let r = cited_diam_check(&set(&[0, 1, 2, 3, 4]), &set(&[0, 1, 2, 3, 4])).unwrap();
        assert!(r.holds());
        let r = cited_diam_check(&set(&[0, 2, 4]), &set(&[0, 2])).unwrap();
        assert_eq!(r.status, Status::Vacuous);
        assert!(cited_diam_check(&set(&[0, 1]), &set(&[0, 5])).is_err());
        // Translation does not matter here.
        let r = cited_diam_check(&set(&[10, 11, 12, 13, 15]), &set(&[-3, -2, 0])).unwrap();
        assert!(r.holds());
    }
}

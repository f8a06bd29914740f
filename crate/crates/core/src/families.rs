//! Extremal families and the structural claims about `J`.

use serde::{Deserialize, Serialize};

use crate::analysis::NormalizedPair;
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::progression::longest_run;
use crate::report::{Checks, Predicate, PredicateReport, Status};
use crate::sets::{normalize, sumset, IntSet};

/// Parameters of one member of an extremal family.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum FamilySpec {
    /// `[0, k-r-1]` followed by `r` elements spaced two apart.
    One { k: u32, r: u32 },
    /// Two blocks of sizes `⌈k/2⌉` and `⌊k/2⌋` starting at 1 and `x + 1`.
    Two { k: u32, x: u32 },
}

impl FamilySpec {
    pub fn validate(self) -> Result<Self> {
        match self {
            FamilySpec::One { k, r } if k < 3 || r > k - 3 => Err(Error::Domain(format!(
                "family one needs k >= 3 and 0 <= r <= k - 3 (got k = {k}, r = {r})"
            ))),
            FamilySpec::Two { k, x } if k < 2 || (x as u64) < k as u64 + 1 => Err(Error::Domain(
                format!("family two needs k >= 2 and x >= k + 1 (got k = {k}, x = {x})"),
            )),
            _ => Ok(self),
        }
    }

    pub fn k(self) -> u32 {
        match self {
            FamilySpec::One { k, .. } | FamilySpec::Two { k, .. } => k,
        }
    }

    /// The family member, exactly as written (family two starts at 1).
    pub fn build(self) -> Result<IntSet> {
        match self.validate()? {
            FamilySpec::One { k, r } => family_one(k, r),
            FamilySpec::Two { k, x } => family_two(k, x),
        }
    }
}

/// `{0, ..., k-r-1} ∪ {k-r+1, k-r+3, ..., k-r-1+2r}`.
pub fn family_one(k: u32, r: u32) -> Result<IntSet> {
    FamilySpec::One { k, r }.validate()?;
    let (k, r) = (k as i64, r as i64);
    let block = 0..=k - r - 1;
    let tail = (1..=r).map(|j| k - r - 1 + 2 * j);
    IntSet::new(block.chain(tail))
}

/// `{1, ..., ⌈k/2⌉} ∪ {x+1, ..., x+⌊k/2⌋}`.
pub fn family_two(k: u32, x: u32) -> Result<IntSet> {
    FamilySpec::Two { k, x }.validate()?;
    let (k, x) = (k as i64, x as i64);
    let low = 1..=(k + 1) / 2;
    let high = x + 1..=x + k / 2;
    IntSet::new(low.chain(high))
}

/// Summary of the claims about a family member `A` and `A + A`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyClaims {
    pub spec: FamilySpec,
    pub set: IntSet,
    pub sumset_size: u64,
    /// `3|A| - 4`.
    pub small_doubling_bound: i64,
    pub longest_run: u64,
    /// `2|A| - 1`.
    pub target_run: u64,
    /// Status of the progression theorem on the pair `(A, A)`.
    pub theorem_status: Status,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
}

/// Family one: `|A+A| <= 3k - 4` and the longest run in `A+A` is exactly
/// `2k - 1`. Family two: `|A+A| > 3k - 4` and the run falls short of `2k - 1`.
pub fn family_claims_check(spec: FamilySpec) -> Result<FamilyClaims> {
    let set = spec.build()?;
    let (a, _) = normalize(&set);
    let k = a.len() as i64;
    let doubled = sumset(&a, &a)?;
    let size = doubled.len() as i64;
    let run = longest_run(&doubled).length;
    let bound = 3 * k - 4;
    let target = (2 * k - 1) as u64;
    let theorem_status = NormalizedPair::new(&a, &a)?.theorem_verdict().status;
    let mut chk = Checks::new();
    chk.require(k == spec.k() as i64, || {
        format!("|A| = {k}, expected {}", spec.k())
    });
    match spec {
        FamilySpec::One { .. } => {
            chk.require(size <= bound, || {
                format!("|A+A| = {size} exceeds 3k - 4 = {bound}")
            });
            chk.require(run == target, || {
                format!("longest run in A+A is {run}, expected exactly 2k - 1 = {target}")
            });
            chk.require(theorem_status == Status::Holds, || {
                format!("theorem verdict on (A, A) is {theorem_status:?}, expected Holds")
            });
        }
        FamilySpec::Two { .. } => {
            chk.require(size > bound, || {
                format!("|A+A| = {size} does not exceed 3k - 4 = {bound}")
            });
            chk.require(run < target, || {
                format!("longest run in A+A is {run}, expected below 2k - 1 = {target}")
            });
            chk.require(theorem_status == Status::Vacuous, || {
                format!("theorem verdict on (A, A) is {theorem_status:?}, expected Vacuous")
            });
        }
    }
    let violations = chk.into_violations();
    Ok(FamilyClaims {
        spec,
        set,
        sumset_size: size as u64,
        small_doubling_bound: bound,
        longest_run: run,
        target_run: target,
        theorem_status,
        status: if violations.is_empty() {
            Status::Holds
        } else {
            Status::Falsified
        },
        violations,
    })
}

impl NormalizedPair {
    /// `(A ∪ [a, b-N]) + (B ∪ [a, b-M]) = A + B` for `J = [a, b]`.
    pub fn check_decomposition(&self) -> PredicateReport {
        if !self.theorem_hypotheses() {
            return PredicateReport::vacuous(Predicate::Decomposition);
        }
        let j = self.frontier().j;
        let mut a = self.a.clone();
        a.or_assign(&Bits::range(j.lo, j.hi - self.n, self.a.len()));
        let mut b = self.b.clone();
        b.or_assign(&Bits::range(j.lo, j.hi - self.m, self.b.len()));
        let mut chk = Checks::new();
        // Windows reaching past the hulls would change the diameters.
        chk.require(j.hi - self.n <= self.m && j.hi - self.m <= self.n, || {
            format!("J = {j} extends the hull of A or B")
        });
        let filled = a.sum(&b, self.sum.len());
        chk.require(filled == self.sum, || {
            format!(
                "(A ∪ [{lo},{}]) + (B ∪ [{lo},{}]) = {} differs from A+B = {}",
                j.hi - self.n,
                j.hi - self.m,
                IntSet::from_bits(&filled, 0),
                IntSet::from_bits(&self.sum, 0),
                lo = j.lo,
            )
        });
        chk.finish(Predicate::Decomposition)
    }

    /// Default Frobenius horizon `e + 1 + 2 diam A`.
    pub fn default_horizon(&self) -> i64 {
        self.frontier().e + 1 + 2 * self.m
    }

    /// With no unstable holes under the theorem hypotheses: `A ∩ [0,e]` equals
    /// `B ∩ [0,e]`, the union of all `hA` on `[0, horizon]` is
    /// `A_L ∪ [e+1, horizon]`, and `A_L` is closed under `d1 + i·d2` inside
    /// `[0, e]`.
    pub fn check_frobenius_prefix(&self, horizon: Option<i64>) -> Result<PredicateReport> {
        let st = self.stability();
        let frontier = self.frontier_with(&st);
        let e = frontier.e;
        let horizon = horizon.unwrap_or(e + 1 + 2 * self.m);
        if horizon < e + 1 {
            return Err(Error::Contract(format!(
                "horizon {horizon} is below e + 1 = {}",
                e + 1
            )));
        }
        let unstable = st.holes_a.and_not(&st.a_left).and_not(&st.a_right).count()
            + st.holes_b.and_not(&st.b_left).and_not(&st.b_right).count();
        if !self.theorem_hypotheses() || unstable > 0 {
            return Ok(PredicateReport::vacuous(Predicate::FrobeniusPrefix));
        }
        let mut chk = Checks::new();
        let left_a = self.a.and(&Bits::range(0, e, self.a.len()));
        let left_b = self.b.and(&Bits::range(0, e, self.b.len()));
        let as_set = |bits: &Bits| {
            if bits.is_zero() {
                "{}".to_string()
            } else {
                format!("{{{}}}", IntSet::from_bits(bits, 0))
            }
        };
        chk.require(
            left_a.count() == left_b.count() && left_a.and_not(&left_b).is_zero(),
            || {
                format!(
                    "A_L = {} differs from B_L = {}",
                    as_set(&left_a),
                    as_set(&left_b)
                )
            },
        );

        let window = (horizon + 1) as usize;
        let mut a_win = self.a.clone();
        a_win.resize(window);
        let mut generated = a_win.clone();
        let mut steps = 1;
        loop {
            let next = generated.sum(&a_win, window);
            if next == generated {
                break;
            }
            generated = next;
            steps += 1;
            if steps > window + 1 {
                chk.require(false, || "h-fold unions did not stabilize".into());
                break;
            }
        }
        let mut expected = left_a.clone();
        expected.resize(window);
        expected.or_assign(&Bits::range(e + 1, horizon, window));
        chk.require(generated == expected, || {
            format!(
                "union of hA on [0,{horizon}] is {} but A_L ∪ [{},{horizon}] is {}",
                as_set(&generated),
                e + 1,
                as_set(&expected)
            )
        });

        let members: Vec<usize> = left_a.ones().collect();
        for &d1 in &members {
            for &d2 in members.iter().filter(|&&d| d > 0) {
                let mut x = d1 + d2;
                while (x as i64) <= e {
                    chk.require(left_a.get(x as i64), || {
                        format!("{d1} + i·{d2} reaches {x}, which is not in A_L")
                    });
                    x += d2;
                }
            }
        }
        Ok(chk.finish(Predicate::FrobeniusPrefix))
    }
}

pub fn decomposition_check(a: &IntSet, b: &IntSet) -> Result<PredicateReport> {
    Ok(NormalizedPair::new(a, b)?.check_decomposition())
}

/// `horizon = None` uses `e + 1 + 2 diam A`.
pub fn frobenius_prefix_check(
    a: &IntSet,
    b: &IntSet,
    horizon: Option<i64>,
) -> Result<PredicateReport> {
    NormalizedPair::new(a, b)?.check_frobenius_prefix(horizon)
}

impl FamilyClaims {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

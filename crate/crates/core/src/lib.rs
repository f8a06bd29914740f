//! Structure of sumsets `A + B` of finite integer sets with small doubling.
//!
//! The crate computes sumsets and hole statistics, classifies the holes of a
//! normalized pair `(A, B)` as left stable, right stable or unstable, locates
//! the guaranteed interval `J ⊆ A + B`, and renders verdicts on when `A + B`
//! must contain a progression of length `|A| + |B| - 1`. The [`verify`]
//! module sweeps every normalized pair up to a diameter bound and checks all
//! of these claims exhaustively.
//!
//! ```
//! use sumsetlab_core::{NormalizedPair, IntSet};
//!
//! let a: IntSet = "0,1,2,3,5".parse().unwrap();
//! let b: IntSet = "0,1,3".parse().unwrap();
//! let pair = NormalizedPair::new(&a, &b).unwrap();
//! let verdict = pair.theorem_verdict();
//! assert!(verdict.hypotheses_hold && verdict.tight);
//! assert_eq!(pair.frontier().j_len, 7);
//! ```

mod bits;

pub mod analysis;
pub mod error;
pub mod families;
pub mod progression;
pub mod report;
pub mod sets;
pub mod verify;

pub use analysis::{
    check_key_lemma, check_stability_identities, classify, frontier, profile, Frontier, HoleEntry,
    HoleLedger, KeyLemmaEntry, KeyLemmaReport, NormalizedPair, Side, SumHole, SumsetProfile, Tags,
};
pub use error::{Error, Result};
pub use families::{
    decomposition_check, family_claims_check, family_one, family_two, frobenius_prefix_check,
    FamilyClaims, FamilySpec,
};
pub use progression::{
    cited_diam_check, corollary_verdict, longest_ap, longest_run, theorem_verdict, HypothesisCheck,
    Progression, TheoremVerdict,
};
pub use report::{Predicate, PredicateReport, Selection, Status};
pub use sets::{
    delta, diam, gcd_star, h_fold_sumset, holes, holes_default, normalize, sumset, IntSet, Interval,
};
pub use verify::{
    enumerate_pairs, sweep, tightness_census, verify_pairs, verify_range, PairSpace,
    TightnessCensus, VerificationReport,
};

//! Finger selectors: the conventional per-path ranking, the exhaustive
//! optimum, and a genetic search ([`ga`]) that approaches the optimum at a
//! small fraction of its cost.

pub mod ga;

use itertools::Itertools;

use crate::error::Error;
use crate::sinr::{Assignment, Objective};

/// Refuse to enumerate more assignments than this by default; past roughly a
/// million subsets the exhaustive selector stops being a practical baseline.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

/// Outcome of one selector run on one scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub assignment: Assignment,
    /// Overall SINR of `assignment`, linear scale.
    pub sinr_linear: f64,
    /// How many overall-SINR evaluations the selector spent choosing. The
    /// conventional selector ranks single-path SINRs only, so it reports 0.
    pub eval_count: u64,
}

/// Binomial coefficient `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        // The running product C(n, i+1) = C(n, i) * (n - i) / (i + 1) is
        // exact at every step; clamp to MAX once it leaves u128 range.
        result = match result.checked_mul((n - i) as u128) {
            Some(p) => p / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    result
}

/// Conventional selection: take the `fingers` paths with the largest
/// single-path SINRs, breaking ties toward the lower path index.
pub fn conventional_select(obj: &Objective, fingers: usize) -> Selection {
    let per_path = obj.per_path_sinr();
    let mut order: Vec<usize> = (0..per_path.len()).collect();
    order.sort_by(|&a, &b| {
        per_path[b].partial_cmp(&per_path[a]).expect("per-path SINRs are finite").then(a.cmp(&b))
    });
    order.truncate(fingers);
    let assignment = Assignment::new(order);
    let sinr_linear = obj.overall_sinr(&assignment);
    Selection { assignment, sinr_linear, eval_count: 0 }
}

/// Optimal selection: evaluate every `fingers`-subset of the paths and keep
/// the best, breaking ties toward the lexicographically smallest subset.
///
/// Fails with [`Error::EnumerationCap`] when the subset count exceeds `cap`.
pub fn exhaustive_select(obj: &Objective, fingers: usize, cap: u64) -> Result<Selection, Error> {
    let combinations = binomial(obj.paths() as u64, fingers as u64);
    if combinations > cap as u128 {
        return Err(Error::EnumerationCap { combinations, cap });
    }
    let mut best: Option<(Assignment, f64)> = None;
    for subset in (0..obj.paths()).combinations(fingers) {
        let asn = Assignment::new(subset);
        let sinr = obj.overall_sinr(&asn);
        // Strict improvement only: lexicographic enumeration order makes the
        // smallest subset win ties.
        if best.as_ref().is_none_or(|(_, s)| sinr > *s) {
            best = Some((asn, sinr));
        }
    }
    let (assignment, sinr_linear) = best.expect("at least one subset exists");
    Ok(Selection { assignment, sinr_linear, eval_count: combinations as u64 })
}

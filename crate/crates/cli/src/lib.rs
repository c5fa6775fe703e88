//! Library side of the `apartness-lab` command: record format and exit
//! code rules, shared with the integration tests.

pub mod records;

use apartness_core::apartness::ClassificationReport;
use apartness_core::suite::CriterionResult;

pub const EXIT_OK: i32 = 0;
/// A check failed, a formula is invalid, or something was inconclusive.
pub const EXIT_FAIL: i32 = 1;
/// Bad input or an internal inconsistency.
pub const EXIT_ERROR: i32 = 2;

/// Why a classification run does not exit cleanly, if it doesn't.
pub fn classify_problem(reports: &[ClassificationReport]) -> Option<String> {
    for r in reports {
        if let Some(v) = r.first_failure() {
            return Some(format!(
                "{}: verdict `{}` failed: {}",
                r.algebra_id, v.name, v.detail
            ));
        }
    }
    reports.iter().find(|r| r.inconclusive()).map(|r| {
        format!(
            "{}: inconclusive, clone capped at {} functions",
            r.algebra_id, r.clone_size
        )
    })
}

pub fn classify_exit(reports: &[ClassificationReport]) -> i32 {
    if classify_problem(reports).is_some() {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

pub fn corpus_exit(results: &[CriterionResult]) -> i32 {
    if results.iter().all(CriterionResult::passed) {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::clone::{walk_clone, witness_of};
use super::dual::DualModel;
use super::{candidate1, candidate2, check_table, inequalities_of_table, InequalityReport};
use crate::heyting::{Elem, HeytingAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductCheck {
    pub clone_index: usize,
    pub top_is_negation: bool,
    pub bottom_is_identity: bool,
    pub bottom_is_double_negation: bool,
}

impl ReductCheck {
    pub fn passed(&self) -> bool {
        self.top_is_negation && (self.bottom_is_identity || self.bottom_is_double_negation)
    }
}

/// A non-trivial apartness function met in the clone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoundApartness {
    pub clone_index: usize,
    pub witness: String,
    pub tight: bool,
    pub equals_candidate1: bool,
    pub equals_candidate2: bool,
    pub table: Vec<Elem>,
    pub inequalities: InequalityReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub algebra_id: String,
    pub algebra_size: usize,
    pub trivial_algebra: bool,
    pub wlem: bool,
    pub boolean: bool,
    pub clone_size: usize,
    pub capped: bool,
    pub apartness_functions: usize,
    pub nontrivial_apartness_functions: usize,
    pub tight_apartness_functions: usize,
    pub unique_equals_candidate2: bool,
    pub found: Vec<FoundApartness>,
    pub reduct_checks: Vec<ReductCheck>,
    pub theorem_verdicts: Vec<TheoremVerdict>,
}

impl ClassificationReport {
    /// Every verdict passed (vacuously for the trivial algebra).
    pub fn all_pass(&self) -> bool {
        self.theorem_verdicts
            .iter()
            .all(|v| v.status == Status::Pass)
    }

    pub fn first_failure(&self) -> Option<&TheoremVerdict> {
        self.theorem_verdicts
            .iter()
            .find(|v| v.status == Status::Fail)
    }

    pub fn inconclusive(&self) -> bool {
        self.theorem_verdicts
            .iter()
            .any(|v| v.status == Status::Inconclusive)
    }

    pub fn verdict(&self, name: &str) -> Option<&TheoremVerdict> {
        self.theorem_verdicts.iter().find(|v| v.name == name)
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "algebra {} ({} elements)",
            self.algebra_id, self.algebra_size
        )?;
        if self.trivial_algebra {
            return writeln!(f, "  trivial algebra (bot = top): theorems do not apply");
        }
        writeln!(f, "  wlem {}  boolean {}", self.wlem, self.boolean)?;
        writeln!(
            f,
            "  clone {}{}",
            self.clone_size,
            if self.capped { " (capped)" } else { "" }
        )?;
        writeln!(
            f,
            "  apartness {}  non-trivial {}  tight {}",
            self.apartness_functions,
            self.nontrivial_apartness_functions,
            self.tight_apartness_functions
        )?;
        for a in &self.found {
            writeln!(
                f,
                "  #{}: candidate2 {}  candidate1 {}  tight {}  term {}",
                a.clone_index, a.equals_candidate2, a.equals_candidate1, a.tight, a.witness
            )?;
        }
        for v in &self.theorem_verdicts {
            write!(f, "  {:<17} {}", v.name, v.status)?;
            if !v.detail.is_empty() {
                write!(f, "  {}", v.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

struct Found {
    index: usize,
    set: FixedBitSet,
    table: Vec<Elem>,
    tight: bool,
}

/// Computes the clone of `h`, picks out its apartness functions and checks
/// the classification against them.
pub fn classify(h: &HeytingAlgebra, cap: usize) -> ClassificationReport {
    let mut report = ClassificationReport {
        algebra_id: h.id(),
        algebra_size: h.size(),
        trivial_algebra: h.is_trivial(),
        wlem: h.satisfies_wlem(),
        boolean: h.is_boolean(),
        clone_size: 0,
        capped: false,
        apartness_functions: 0,
        nontrivial_apartness_functions: 0,
        tight_apartness_functions: 0,
        unique_equals_candidate2: false,
        found: Vec::new(),
        reduct_checks: Vec::new(),
        theorem_verdicts: Vec::new(),
    };
    if h.is_trivial() {
        report.clone_size = 1;
        report.apartness_functions = 1;
        return report;
    }

    let model = DualModel::new(h);
    let n = h.size();
    let mut found: Vec<Found> = Vec::new();
    let mut size = 0;
    let mut apartness = 0;
    let capped = walk_clone(h, &model, cap, |i, set, t| {
        size += 1;
        // cheap filters before the cubic scan
        if h.elements().any(|a| t[a as usize * (n + 1)] != h.bot()) {
            return;
        }
        if (0..n).any(|a| (0..a).any(|b| t[a * n + b] != t[b * n + a])) {
            return;
        }
        let r = check_table(h, t);
        if !r.is_apartness() {
            return;
        }
        apartness += 1;
        if !r.trivial {
            found.push(Found {
                index: i,
                set: set.clone(),
                table: t.to_vec(),
                tight: r.tight,
            });
        }
    });

    let c1 = candidate1(h);
    let c2 = candidate2(h);
    let basis = if found.is_empty() {
        Vec::new()
    } else {
        model.characteristic_formulas()
    };
    report.clone_size = size;
    report.capped = capped;
    report.apartness_functions = apartness;
    report.nontrivial_apartness_functions = found.len();
    report.tight_apartness_functions = found.iter().filter(|f| f.tight).count();
    report.unique_equals_candidate2 = found.len() == 1 && found[0].table == c2.table();
    for f in &found {
        report.found.push(FoundApartness {
            clone_index: f.index,
            witness: witness_of(&model, &basis, &f.set).to_string(),
            tight: f.tight,
            equals_candidate1: f.table == c1.table(),
            equals_candidate2: f.table == c2.table(),
            table: f.table.clone(),
            inequalities: inequalities_of_table(h, &f.table),
        });
        let top = &f.table[h.top() as usize * n..][..n];
        let bottom = &f.table[h.bot() as usize * n..][..n];
        let identity: Vec<Elem> = h.elements().collect();
        report.reduct_checks.push(ReductCheck {
            clone_index: f.index,
            top_is_negation: top == h.neg_table(),
            bottom_is_identity: bottom == identity.as_slice(),
            bottom_is_double_negation: bottom == h.double_neg_table().as_slice(),
        });
    }
    report.theorem_verdicts = verdicts(&report);
    report
}

fn verdicts(r: &ClassificationReport) -> Vec<TheoremVerdict> {
    let term = |i: usize| r.found[i].witness.as_str();
    let mut out = Vec::new();
    let mut push = |name: &str, failure: Option<String>, existence_claim_open: bool| {
        let (status, detail) = match failure {
            Some(d) => (Status::Fail, d),
            None if r.capped => (
                Status::Inconclusive,
                "clone capped; checked over the functions found".to_string(),
            ),
            None if existence_claim_open => (Status::Fail, String::new()),
            None => (Status::Pass, String::new()),
        };
        out.push(TheoremVerdict {
            name: name.to_string(),
            status,
            detail,
        });
    };

    let nontrivial = r.nontrivial_apartness_functions > 0;
    let (a_fail, a_missing) = match (nontrivial, r.wlem) {
        (true, false) => (
            Some(format!(
                "non-trivial apartness {} without weak excluded middle",
                term(0)
            )),
            false,
        ),
        (false, true) => (
            Some("weak excluded middle holds but the clone has no non-trivial apartness".into()),
            true,
        ),
        _ => (None, false),
    };
    // a missing witness is only a failure when the clone is complete
    let a_fail = if a_missing && r.capped { None } else { a_fail };
    push("characterization", a_fail, false);

    let tight = r.found.iter().position(|f| f.tight);
    let b_fail = match (tight, r.boolean) {
        (Some(i), false) => Some(format!(
            "tight apartness {} in a non-Boolean algebra",
            term(i)
        )),
        (None, true) if !r.capped => {
            Some("Boolean algebra without a tight apartness in the clone".into())
        }
        _ => None,
    };
    push("boolean", b_fail, false);

    let c_fail = r.found.iter().enumerate().find_map(|(i, f)| {
        if !f.equals_candidate2 {
            Some(format!("{} differs from ~(x <-> y)", term(i)))
        } else if r.boolean && !f.equals_candidate1 {
            Some(format!("{} differs from (x & ~y) | (~x & y)", term(i)))
        } else {
            None
        }
    });
    push("classification", c_fail, false);

    let d_fail = r
        .reduct_checks
        .iter()
        .zip(0..)
        .find(|(c, _)| !c.passed())
        .map(|(c, i)| {
            if !c.top_is_negation {
                format!("top-reduct of {} is not negation", term(i))
            } else {
                format!(
                    "bottom-reduct of {} is neither identity nor double negation",
                    term(i)
                )
            }
        });
    push("reducts", d_fail, false);

    let e_fail = r.found.iter().enumerate().find_map(|(i, f)| {
        let q = &f.inequalities;
        if let Some([a, b]) = q.inequality1_witness {
            Some(format!(
                "~~x & ~~y <= x # ~y fails for {} at x={a}, y={b}",
                term(i)
            ))
        } else {
            q.inequality2_witness
                .map(|[a]| format!("x # ~~x = bot fails for {} at x={a}", term(i)))
        }
    });
    push("inequalities", e_fail, false);
    out
}

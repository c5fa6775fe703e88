//! Backward proof search in the contraction-free calculus G4ip.
//!
//! Left implication is split by the shape of the antecedent of the
//! implication (atom, `bot`, `top`, `&`, `|`, `->`). Every premise is
//! smaller than its conclusion in the multiset ordering on formula weights,
//! so search terminates without loop checks.

use std::collections::HashMap;
use std::fmt;

use crate::formula::Formula;

/// `antecedent => succedent`, with the antecedent kept sorted and free of
/// duplicates (contraction is admissible).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(mut antecedent: Vec<Formula>, succedent: Formula) -> Sequent {
        antecedent.sort();
        antecedent.dedup();
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn goal(f: Formula) -> Sequent {
        Sequent::new(Vec::new(), f)
    }

    fn without(&self, idx: usize) -> Vec<Formula> {
        let mut ante = self.antecedent.clone();
        ante.remove(idx);
        ante
    }

    fn replace(&self, idx: usize, with: impl IntoIterator<Item = Formula>) -> Vec<Formula> {
        let mut ante = self.without(idx);
        ante.extend(with);
        ante
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ante: Vec<String> = self.antecedent.iter().map(|a| a.to_string()).collect();
        if ante.is_empty() {
            write!(f, "=> {}", self.succedent)
        } else {
            write!(f, "{} => {}", ante.join(", "), self.succedent)
        }
    }
}

/// How a sequent can be reduced.
#[derive(Debug, Clone)]
pub(crate) enum Analysis {
    /// Closed by an axiom.
    Axiom(&'static str),
    /// One invertible rule; provable iff all premises are.
    Invertible(&'static str, Vec<Sequent>),
    /// Alternatives; provable iff for some alternative all premises are.
    Choices(Vec<(&'static str, Vec<Sequent>)>),
}

pub(crate) fn analyze(seq: &Sequent) -> Analysis {
    use Formula::*;
    let goal = &seq.succedent;
    if seq.antecedent.contains(&Bot) {
        return Analysis::Axiom("bot-L");
    }
    if *goal == Top {
        return Analysis::Axiom("top-R");
    }
    if seq.antecedent.contains(goal) {
        return Analysis::Axiom("id");
    }

    // invertible left rules
    for (idx, f) in seq.antecedent.iter().enumerate() {
        let premise = |ante: Vec<Formula>| Sequent::new(ante, goal.clone());
        match f {
            Top => return Analysis::Invertible("top-L", vec![premise(seq.without(idx))]),
            And(a, b) => {
                let ante = seq.replace(idx, [(**a).clone(), (**b).clone()]);
                return Analysis::Invertible("and-L", vec![premise(ante)]);
            }
            Or(a, b) => {
                return Analysis::Invertible(
                    "or-L",
                    vec![
                        premise(seq.replace(idx, [(**a).clone()])),
                        premise(seq.replace(idx, [(**b).clone()])),
                    ],
                );
            }
            Implies(a, b) => match &**a {
                Atom(_) if seq.antecedent.contains(a) => {
                    let ante = seq.replace(idx, [(**b).clone()]);
                    return Analysis::Invertible("atom-imp-L", vec![premise(ante)]);
                }
                Bot => return Analysis::Invertible("bot-imp-L", vec![premise(seq.without(idx))]),
                Top => {
                    let ante = seq.replace(idx, [(**b).clone()]);
                    return Analysis::Invertible("top-imp-L", vec![premise(ante)]);
                }
                And(c, d) => {
                    let curried = Formula::implies(
                        (**c).clone(),
                        Formula::implies((**d).clone(), (**b).clone()),
                    );
                    return Analysis::Invertible(
                        "and-imp-L",
                        vec![premise(seq.replace(idx, [curried]))],
                    );
                }
                Or(c, d) => {
                    let split = [
                        Formula::implies((**c).clone(), (**b).clone()),
                        Formula::implies((**d).clone(), (**b).clone()),
                    ];
                    return Analysis::Invertible(
                        "or-imp-L",
                        vec![premise(seq.replace(idx, split))],
                    );
                }
                _ => {}
            },
            _ => {}
        }
    }

    // invertible right rules
    match goal {
        And(a, b) => {
            return Analysis::Invertible(
                "and-R",
                vec![
                    Sequent::new(seq.antecedent.clone(), (**a).clone()),
                    Sequent::new(seq.antecedent.clone(), (**b).clone()),
                ],
            );
        }
        Implies(a, b) => {
            let mut ante = seq.antecedent.clone();
            ante.push((**a).clone());
            return Analysis::Invertible("imp-R", vec![Sequent::new(ante, (**b).clone())]);
        }
        _ => {}
    }

    let mut choices = Vec::new();
    if let Or(a, b) = goal {
        choices.push((
            "or-R1",
            vec![Sequent::new(seq.antecedent.clone(), (**a).clone())],
        ));
        choices.push((
            "or-R2",
            vec![Sequent::new(seq.antecedent.clone(), (**b).clone())],
        ));
    }
    for (idx, f) in seq.antecedent.iter().enumerate() {
        if let Implies(ab, b) = f {
            if let Implies(c, d) = &**ab {
                // (C -> D) -> B:  Γ, D -> B => C -> D   and   Γ, B => goal
                let left = Sequent::new(
                    seq.replace(idx, [Formula::implies((**d).clone(), (**b).clone())]),
                    Formula::implies((**c).clone(), (**d).clone()),
                );
                let right = Sequent::new(seq.replace(idx, [(**b).clone()]), goal.clone());
                choices.push(("imp-imp-L", vec![left, right]));
            }
        }
    }
    Analysis::Choices(choices)
}

/// A derivation tree; leaves are axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: &'static str,
    pub sequent: Sequent,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    /// Number of rule applications.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Re-checks every step against the rules of the calculus.
    pub fn replay(&self) -> bool {
        let premises: Vec<&Sequent> = self.premises.iter().map(|d| &d.sequent).collect();
        let step_ok = match analyze(&self.sequent) {
            Analysis::Axiom(rule) => rule == self.rule && premises.is_empty(),
            Analysis::Invertible(rule, expected) => {
                rule == self.rule && expected.iter().collect::<Vec<_>>() == premises
            }
            Analysis::Choices(choices) => choices.iter().any(|(rule, expected)| {
                *rule == self.rule && expected.iter().collect::<Vec<_>>() == premises
            }),
        };
        step_ok && self.premises.iter().all(Derivation::replay)
    }

    fn write_indented(&self, depth: usize, out: &mut String) {
        out.push_str(&format!(
            "{:indent$}{}: {}\n",
            "",
            self.rule,
            self.sequent,
            indent = depth * 2
        ));
        for p in &self.premises {
            p.write_indented(depth + 1, out);
        }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_indented(0, &mut out);
        f.write_str(&out)
    }
}

/// Proof search with a memo table on normalized sequents. One instance per
/// query; the table is discarded with it.
#[derive(Default)]
pub struct Prover {
    memo: HashMap<Sequent, bool>,
}

impl Prover {
    pub fn new() -> Prover {
        Prover::default()
    }

    pub fn provable(&mut self, seq: &Sequent) -> bool {
        if let Some(&known) = self.memo.get(seq) {
            return known;
        }
        let result = match analyze(seq) {
            Analysis::Axiom(_) => true,
            Analysis::Invertible(_, premises) => premises.iter().all(|p| self.provable(p)),
            Analysis::Choices(choices) => choices
                .iter()
                .any(|(_, premises)| premises.iter().all(|p| self.provable(p))),
        };
        self.memo.insert(seq.clone(), result);
        result
    }

    /// Builds a derivation of a sequent already known to be provable.
    fn derive(&mut self, seq: &Sequent) -> Derivation {
        let (rule, premises) = match analyze(seq) {
            Analysis::Axiom(rule) => (rule, Vec::new()),
            Analysis::Invertible(rule, premises) => (rule, premises),
            Analysis::Choices(choices) => choices
                .into_iter()
                .find(|(_, premises)| premises.iter().all(|p| self.provable(p)))
                .expect("sequent is provable"),
        };
        let premises = premises.iter().map(|p| self.derive(p)).collect();
        Derivation {
            rule,
            sequent: seq.clone(),
            premises,
        }
    }

    pub fn prove_sequent(&mut self, seq: &Sequent) -> Option<Derivation> {
        if self.provable(seq) {
            Some(self.derive(seq))
        } else {
            None
        }
    }

    /// Number of sequents in the memo table.
    pub fn explored(&self) -> usize {
        self.memo.len()
    }
}

/// Searches for a derivation of `=> f`.
pub fn ipc_prove(f: &Formula) -> Option<Derivation> {
    Prover::new().prove_sequent(&Sequent::goal(f.clone()))
}

/// Whether `f` is a theorem of intuitionistic propositional logic.
pub fn is_provable(f: &Formula) -> bool {
    Prover::new().provable(&Sequent::goal(f.clone()))
}

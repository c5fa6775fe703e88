use thiserror::Error;

use super::calculus::{ipc_prove, Derivation};
use super::kripke::{kripke_countermodel, search_countermodel, KripkeModel, Search};
use crate::formula::{parse, Formula};

/// Valuations tried when looking for a countermodel to a proved formula.
pub const CROSSCHECK_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Proved; no countermodel exists on frames with up to `crosschecked_worlds` worlds.
    Valid {
        derivation: Derivation,
        crosschecked_worlds: usize,
    },
    /// The root of `model` refutes the formula.
    Invalid { model: KripkeModel },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    /// Both engines succeeded; one of them is wrong.
    #[error("prover and countermodel search disagree on {formula}:\n{model}")]
    Contradiction { formula: String, model: KripkeModel },
    /// The search produced a model that does not refute the formula.
    #[error("countermodel for {formula} fails direct re-check:\n{model}")]
    BadCountermodel { formula: String, model: KripkeModel },
    #[error("unprovable, but no countermodel with at most {max_worlds} worlds")]
    Undecided { max_worlds: usize },
}

/// Runs the prover and the countermodel search on `f`.
pub fn decide(f: &Formula, max_worlds: usize) -> Result<Verdict, DecideError> {
    match ipc_prove(f) {
        Some(derivation) => match search_countermodel(f, max_worlds, CROSSCHECK_BUDGET) {
            Search::Found(model) => Err(DecideError::Contradiction {
                formula: f.to_string(),
                model,
            }),
            Search::Exhausted { max_worlds } => Ok(Verdict::Valid {
                derivation,
                crosschecked_worlds: max_worlds,
            }),
            Search::OutOfBudget { complete_worlds } => Ok(Verdict::Valid {
                derivation,
                crosschecked_worlds: complete_worlds,
            }),
        },
        None => match kripke_countermodel(f, max_worlds) {
            Some(model) if model.refutes(f) == Ok(true) => Ok(Verdict::Invalid { model }),
            Some(model) => Err(DecideError::BadCountermodel {
                formula: f.to_string(),
                model,
            }),
            None => Err(DecideError::Undecided { max_worlds }),
        },
    }
}

/// World bound for the fixed corpus.
pub const CORPUS_MAX_WORLDS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Valid,
    Invalid,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub item: &'static str,
    pub description: &'static str,
    pub formula: Formula,
    pub expected: Expected,
    pub outcome: Result<Verdict, DecideError>,
}

impl CorpusEntry {
    pub fn passed(&self) -> bool {
        match (&self.outcome, self.expected) {
            (Ok(v), Expected::Valid) => v.is_valid(),
            (Ok(v), Expected::Invalid) => !v.is_valid(),
            (Err(_), _) => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub entries: Vec<CorpusEntry>,
}

impl CorpusReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(CorpusEntry::passed)
    }
}

const CORPUS: [(&str, &str, &str, Expected); 7] = [
    (
        "1",
        "ex falso for the biconditional",
        "(~X & ~Y) -> (X <-> Y)",
        Expected::Valid,
    ),
    (
        "2",
        "~(x <-> y) is cotransitive under weak excluded middle",
        "(~P | ~~P) & (~Q | ~~Q) & (~R | ~~R) & ~(P <-> Q) -> ~(P <-> R) | ~(R <-> Q)",
        Expected::Valid,
    ),
    (
        "3",
        "~~x & ~~y <= x # ~y from five assumptions",
        "~~P & ~~Q & (S <-> ~~Q) & (T <-> ~~~P) & (S -> T | U) -> U",
        Expected::Valid,
    ),
    ("4a", "weak excluded middle", "~P | ~~P", Expected::Invalid),
    ("4b", "excluded middle", "P | ~P", Expected::Invalid),
    (
        "5a",
        "~(x <-> y) is irreflexive",
        "~~(P <-> P)",
        Expected::Valid,
    ),
    (
        "5b",
        "~(x <-> y) is symmetric",
        "~(P <-> Q) -> ~(Q <-> P)",
        Expected::Valid,
    ),
];

/// Decides the fixed regression corpus with [`CORPUS_MAX_WORLDS`].
pub fn check_corpus() -> CorpusReport {
    let entries = CORPUS
        .iter()
        .map(|&(item, description, text, expected)| {
            let formula = parse(text).expect("corpus formulas parse");
            let outcome = decide(&formula, CORPUS_MAX_WORLDS);
            CorpusEntry {
                item,
                description,
                formula,
                expected,
                outcome,
            }
        })
        .collect();
    CorpusReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_matches() {
        let report = check_corpus();
        for e in &report.entries {
            assert!(e.passed(), "item {}: {:?}", e.item, e.outcome);
        }
        let wlem = report.entries.iter().find(|e| e.item == "4a").unwrap();
        match &wlem.outcome {
            Ok(Verdict::Invalid { model }) => assert_eq!(model.worlds(), 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn decide_examples() {
        assert!(decide(&Formula::Top, 1).unwrap().is_valid());
        match decide(&parse("~P | ~~P").unwrap(), 3).unwrap() {
            Verdict::Invalid { model } => assert_eq!(model.worlds(), 3),
            v => panic!("{v:?}"),
        }
        assert_eq!(
            decide(&parse("~P | ~~P").unwrap(), 2),
            Err(DecideError::Undecided { max_worlds: 2 })
        );
        match decide(&parse("P -> P").unwrap(), 3).unwrap() {
            Verdict::Valid {
                derivation,
                crosschecked_worlds,
            } => {
                assert!(derivation.replay());
                assert_eq!(crosschecked_worlds, 3);
            }
            v => panic!("{v:?}"),
        }
    }
}

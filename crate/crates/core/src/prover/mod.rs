//! Intuitionistic propositional validity: proof search plus finite
//! countermodels.

mod calculus;
mod decide;
mod kripke;

pub use calculus::{ipc_prove, is_provable, Derivation, Prover, Sequent};
pub use decide::{
    check_corpus, decide, CorpusEntry, CorpusReport, DecideError, Expected, Verdict,
    CORPUS_MAX_WORLDS, CROSSCHECK_BUDGET,
};
pub use kripke::{
    kripke_countermodel, search_countermodel, KripkeError, KripkeModel, Search, MAX_WORLDS,
};

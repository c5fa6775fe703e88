pub mod apartness;
pub mod formula;
pub mod generate;
pub mod heyting;
pub mod parallel;
pub mod prover;
pub mod rn;
pub mod suite;

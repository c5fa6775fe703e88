//! Line-delimited record output: a `schema: 1` header, then one JSON
//! object per line, tagged by `kind`.

use std::fmt;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use apartness_core::apartness::{ClassificationReport, Status};
use apartness_core::heyting::HeytingAlgebra;
use apartness_core::prover::{Derivation, KripkeModel};
use apartness_core::rn::RnElement;
use apartness_core::suite::CriterionResult;

pub const SCHEMA_HEADER: &str = "schema: 1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Record {
    Classification(ClassificationReport),
    Proof(ProofRecord),
    Countermodel(CountermodelRecord),
    RnNormal(RnNormalRecord),
    RnCover(RnCoverRecord),
    Algebra(AlgebraRecord),
    Criterion(CriterionRecord),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofRecord {
    pub formula: String,
    pub valid: bool,
    /// Indented derivation, one rule application per line.
    pub derivation: Vec<String>,
    pub crosschecked_worlds: Option<usize>,
    pub countermodel: Option<ModelRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRecord {
    pub worlds: usize,
    /// Covering pairs of the frame; world 0 is the root.
    pub covers: Vec<(usize, usize)>,
    /// Atoms forced at each world.
    pub forced: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountermodelRecord {
    pub formula: String,
    pub max_worlds: usize,
    pub model: Option<ModelRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RnNormalRecord {
    pub formula: String,
    pub element: String,
    pub canonical: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RnCoverRecord {
    pub lower: String,
    pub upper: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraRecord {
    pub id: String,
    pub size: usize,
    pub poset: Option<String>,
    pub trivial: bool,
    pub boolean: bool,
    pub wlem: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionRecord {
    pub number: u8,
    pub title: String,
    pub status: Status,
    pub summary: String,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl ModelRecord {
    pub fn new(m: &KripkeModel) -> ModelRecord {
        let forced = (0..m.worlds())
            .map(|w| {
                m.atoms()
                    .iter()
                    .filter(|a| m.atom_holds(w, a).unwrap_or(false))
                    .cloned()
                    .collect()
            })
            .collect();
        ModelRecord {
            worlds: m.worlds(),
            covers: m.frame().covers(),
            forced,
        }
    }
}

impl ProofRecord {
    pub fn valid(
        formula: String,
        derivation: &Derivation,
        crosschecked_worlds: usize,
    ) -> ProofRecord {
        ProofRecord {
            formula,
            valid: true,
            derivation: derivation.to_string().lines().map(str::to_string).collect(),
            crosschecked_worlds: Some(crosschecked_worlds),
            countermodel: None,
        }
    }

    pub fn invalid(formula: String, model: &KripkeModel) -> ProofRecord {
        ProofRecord {
            formula,
            valid: false,
            derivation: Vec::new(),
            crosschecked_worlds: None,
            countermodel: Some(ModelRecord::new(model)),
        }
    }
}

impl RnNormalRecord {
    pub fn new(formula: String, element: RnElement, canonical: String) -> RnNormalRecord {
        RnNormalRecord {
            formula,
            element: element.ascii_label(),
            canonical,
        }
    }
}

impl AlgebraRecord {
    pub fn new(h: &HeytingAlgebra) -> AlgebraRecord {
        AlgebraRecord {
            id: h.id(),
            size: h.size(),
            poset: h.source().map(|p| p.code()),
            trivial: h.is_trivial(),
            boolean: h.is_boolean(),
            wlem: h.satisfies_wlem(),
        }
    }
}

impl From<&CriterionResult> for CriterionRecord {
    fn from(r: &CriterionResult) -> CriterionRecord {
        CriterionRecord {
            number: r.number,
            title: r.title.to_string(),
            status: r.status,
            summary: r.summary.clone(),
            failures: r.failures.clone(),
            seconds: r.elapsed.as_secs_f64(),
        }
    }
}

/// Writes the header and one line per record.
pub fn write_records<W: Write>(out: &mut W, records: &[Record]) -> io::Result<()> {
    writeln!(out, "{SCHEMA_HEADER}")?;
    for r in records {
        serde_json::to_writer(&mut *out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

#[derive(Debug)]
pub enum RecordError {
    MissingHeader(String),
    Line {
        line: usize,
        error: serde_json::Error,
    },
}

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordError::MissingHeader(found) => {
                write!(f, "expected `{SCHEMA_HEADER}`, found {found:?}")
            }
            RecordError::Line { line, error } => write!(f, "line {line}: {error}"),
        }
    }
}

impl std::error::Error for RecordError {}

pub fn read_records(text: &str) -> Result<Vec<Record>, RecordError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim() == SCHEMA_HEADER => {}
        other => {
            return Err(RecordError::MissingHeader(
                other.map_or(String::new(), |(_, l)| l.to_string()),
            ))
        }
    }
    lines
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|error| RecordError::Line { line: i + 1, error })
        })
        .collect()
}

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use apartness_core::apartness::{classify, ClassificationReport, DEFAULT_CLONE_CAP};
use apartness_core::formula::{parse, Formula};
use apartness_core::heyting::{enumerate_algebras, HeytingAlgebra, Poset, POSET_SIZE_BOUND};
use apartness_core::parallel::{default_jobs, par_map};
use apartness_core::prover::{
    decide, search_countermodel, KripkeModel, Search, Verdict, MAX_WORLDS,
};
use apartness_core::rn::{rn_eval_formula, rn_hasse_dot, rn_to_formula_in, truncation_covers};
use apartness_core::suite::{Suite, SuiteConfig};
use apartness_lab::records::{
    write_records, AlgebraRecord, CountermodelRecord, CriterionRecord, ModelRecord, ProofRecord,
    Record, RnCoverRecord, RnNormalRecord,
};
use apartness_lab::{classify_exit, classify_problem, corpus_exit, EXIT_ERROR, EXIT_FAIL, EXIT_OK};

#[derive(Parser)]
#[command(
    name = "apartness-lab",
    version,
    about = "Apartness terms on finite Heyting algebras, with an IPC prover"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for per-algebra work (default: available cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the apartness terms of finite Heyting algebras.
    Classify {
        /// Every algebra from posets with at most this many elements.
        #[arg(long, value_parser = poset_bound, required_unless_present = "poset")]
        enumerate: Option<usize>,
        /// Poset file (`elements: n` then `i < j` lines); may be repeated.
        #[arg(long, conflicts_with = "enumerate")]
        poset: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CLONE_CAP, value_parser = positive)]
        clone_cap: usize,
    },
    /// Decide a formula: a derivation if valid, a Kripke countermodel if not.
    Prove {
        formula: String,
        #[arg(long, default_value_t = 6, value_parser = world_bound)]
        max_worlds: usize,
        /// Print the countermodel as Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Search for a Kripke countermodel only.
    Countermodel {
        formula: String,
        #[arg(long, default_value_t = 6, value_parser = world_bound)]
        max_worlds: usize,
        #[arg(long)]
        dot: bool,
    },
    /// The free Heyting algebra on one generator.
    Rn {
        #[command(subcommand)]
        command: RnCommand,
    },
    /// List the algebras from posets with at most the given number of elements.
    Enumerate {
        #[arg(default_value_t = 4, value_parser = poset_bound)]
        max_poset_size: usize,
    },
    /// Run the full check suite.
    Corpus {
        #[arg(long, alias = "enumerate", default_value_t = 4, value_parser = poset_bound)]
        max_poset_size: usize,
        #[arg(long, default_value_t = DEFAULT_CLONE_CAP, value_parser = positive)]
        clone_cap: usize,
    },
}

#[derive(Subcommand)]
enum RnCommand {
    /// Normal form of a formula in one atom.
    Normalize { formula: String },
    /// Covering relation of the lattice up to an index.
    Hasse {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=64))]
        depth: u32,
        #[arg(long)]
        dot: bool,
        /// Use ⊥ and ⊤ in DOT labels.
        #[arg(long)]
        unicode: bool,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("expected a positive integer, found {s:?}")),
    }
}

fn poset_bound(s: &str) -> Result<usize, String> {
    let n = positive(s)?;
    if n > POSET_SIZE_BOUND {
        return Err(format!("at most {POSET_SIZE_BOUND}"));
    }
    Ok(n)
}

fn world_bound(s: &str) -> Result<usize, String> {
    let n = positive(s)?;
    if n > MAX_WORLDS {
        return Err(format!("at most {MAX_WORLDS}"));
    }
    Ok(n)
}

struct Output {
    format: Format,
    records: Vec<Record>,
    text: String,
}

impl Output {
    fn new(format: Format) -> Output {
        Output {
            format,
            records: Vec::new(),
            text: String::new(),
        }
    }

    fn record(&mut self, r: Record) {
        self.records.push(r);
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        if !s.as_ref().ends_with('\n') {
            self.text.push('\n');
        }
    }

    fn flush(self) -> io::Result<()> {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        match self.format {
            Format::Text => out.write_all(self.text.as_bytes()),
            Format::Records => write_records(&mut out, &self.records),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.jobs.map_or_else(default_jobs, |j| j as usize);
    let mut out = Output::new(cli.format);
    let code = match run(cli.command, jobs, &mut out) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_ERROR
        }
    };
    if let Err(e) = out.flush() {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR as u8);
        }
    }
    ExitCode::from(code as u8)
}

fn run(command: Command, jobs: usize, out: &mut Output) -> Result<i32, String> {
    match command {
        Command::Classify {
            enumerate,
            poset,
            clone_cap,
        } => {
            let algebras = match enumerate {
                Some(n) => enumerate_algebras(n).map_err(|e| e.to_string())?.collect(),
                None => load_posets(&poset)?,
            };
            cmd_classify(&algebras, clone_cap, jobs, out)
        }
        Command::Prove {
            formula,
            max_worlds,
            dot,
        } => cmd_prove(&formula, max_worlds, dot, out),
        Command::Countermodel {
            formula,
            max_worlds,
            dot,
        } => cmd_countermodel(&formula, max_worlds, dot, out),
        Command::Rn {
            command: RnCommand::Normalize { formula },
        } => cmd_rn_normalize(&formula, out),
        Command::Rn {
            command:
                RnCommand::Hasse {
                    depth,
                    dot,
                    unicode,
                },
        } => {
            if dot {
                out.line(rn_hasse_dot(depth, !unicode));
            }
            for (a, b) in truncation_covers(depth) {
                if !dot {
                    out.line(format!("{a} < {b}"));
                }
                out.record(Record::RnCover(RnCoverRecord {
                    lower: a.ascii_label(),
                    upper: b.ascii_label(),
                }));
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate { max_poset_size } => {
            for h in enumerate_algebras(max_poset_size).map_err(|e| e.to_string())? {
                let r = AlgebraRecord::new(&h);
                out.line(format!(
                    "{:<24} size {:>2}  boolean {:<5}  wlem {:<5}{}",
                    r.id,
                    r.size,
                    r.boolean,
                    r.wlem,
                    if r.trivial { "  trivial" } else { "" }
                ));
                out.record(Record::Algebra(r));
            }
            Ok(EXIT_OK)
        }
        Command::Corpus {
            max_poset_size,
            clone_cap,
        } => {
            let config = SuiteConfig {
                max_poset_size,
                clone_cap,
                jobs,
                ..SuiteConfig::default()
            };
            let suite = Suite::new(config).map_err(|e| e.to_string())?;
            let results = suite.run_all();
            for r in &results {
                out.line(r.to_string());
                out.record(Record::Criterion(CriterionRecord::from(r)));
            }
            let code = corpus_exit(&results);
            out.line(if code == EXIT_OK {
                "all criteria pass"
            } else {
                "some criteria do not pass"
            });
            Ok(code)
        }
    }
}

fn load_posets(paths: &[PathBuf]) -> Result<Vec<HeytingAlgebra>, String> {
    paths
        .iter()
        .map(|path| {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let p =
                Poset::parse_file_format(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(HeytingAlgebra::from_poset_downsets(&p))
        })
        .collect()
}

fn cmd_classify(
    algebras: &[HeytingAlgebra],
    cap: usize,
    jobs: usize,
    out: &mut Output,
) -> Result<i32, String> {
    let reports: Vec<ClassificationReport> = par_map(algebras, jobs, |h| classify(h, cap));
    for r in &reports {
        out.line(r.to_string());
        out.record(Record::Classification(r.clone()));
    }
    if let Some(problem) = classify_problem(&reports) {
        eprintln!("{problem}");
    }
    Ok(classify_exit(&reports))
}

fn parse_formula(text: &str) -> Result<Formula, String> {
    parse(text).map_err(|e| format!("cannot parse {text:?}: {e}"))
}

fn describe_model(m: &KripkeModel, f: &Formula, dot: bool, out: &mut Output) {
    if dot {
        out.line(m.to_dot());
    } else {
        out.line(m.to_string());
        if let Ok(table) = m.forcing_table(f) {
            out.line(table);
        }
    }
}

fn cmd_prove(text: &str, max_worlds: usize, dot: bool, out: &mut Output) -> Result<i32, String> {
    let f = parse_formula(text)?;
    match decide(&f, max_worlds).map_err(|e| e.to_string())? {
        Verdict::Valid {
            derivation,
            crosschecked_worlds,
        } => {
            out.line(format!("Valid: {f}"));
            out.line(derivation.to_string());
            out.line(format!(
                "no countermodel with up to {crosschecked_worlds} worlds"
            ));
            out.record(Record::Proof(ProofRecord::valid(
                f.to_string(),
                &derivation,
                crosschecked_worlds,
            )));
            Ok(EXIT_OK)
        }
        Verdict::Invalid { model } => {
            out.line(format!("Invalid: {f}"));
            out.line(format!(
                "countermodel with {} worlds, root w0:",
                model.worlds()
            ));
            describe_model(&model, &f, dot, out);
            out.record(Record::Proof(ProofRecord::invalid(f.to_string(), &model)));
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_countermodel(
    text: &str,
    max_worlds: usize,
    dot: bool,
    out: &mut Output,
) -> Result<i32, String> {
    let f = parse_formula(text)?;
    let found = match search_countermodel(&f, max_worlds, u64::MAX) {
        Search::Found(m) => Some(m),
        _ => None,
    };
    let record = CountermodelRecord {
        formula: f.to_string(),
        max_worlds,
        model: found.as_ref().map(ModelRecord::new),
    };
    out.record(Record::Countermodel(record));
    match found {
        Some(m) => {
            if !m.refutes(&f).map_err(|e| e.to_string())? {
                return Err(format!("search returned a model that does not refute {f}"));
            }
            out.line(format!("countermodel with {} worlds, root w0:", m.worlds()));
            describe_model(&m, &f, dot, out);
            Ok(EXIT_OK)
        }
        None => {
            out.line(format!("no countermodel with up to {max_worlds} worlds"));
            Ok(EXIT_FAIL)
        }
    }
}

fn cmd_rn_normalize(text: &str, out: &mut Output) -> Result<i32, String> {
    let f = parse_formula(text)?;
    let element = rn_eval_formula(&f).map_err(|e| e.to_string())?;
    let atom = f
        .free_atoms()
        .into_iter()
        .next()
        .unwrap_or_else(|| "y".to_string());
    let canonical = rn_to_formula_in(element, &atom);
    out.line(element.ascii_label());
    out.line(format!("canonical: {canonical}"));
    out.record(Record::RnNormal(RnNormalRecord::new(
        f.to_string(),
        element,
        canonical.to_string(),
    )));
    Ok(EXIT_OK)
}

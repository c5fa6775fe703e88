//! The nine acceptance criteria as one runnable suite.
//!
//! Criteria 3 to 5 share a single classification sweep, computed on first
//! use.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apartness::{
    bottom_reduct, candidate1, candidate2, candidate2_term, check_apartness, classify, reduct_rn,
    top_reduct, verify_inequalities, BinaryFunction, ClassificationReport, ReductSide, Status,
    DEFAULT_CLONE_CAP,
};
use crate::formula::{parse, Formula};
use crate::generate::{commutative_normal_form, one_atom_formulas, random_formula};
use crate::heyting::{enumerate_algebras, eval_all, HeytingAlgebra};
use crate::parallel::par_map;
use crate::prover::{check_corpus, is_provable, search_countermodel, Search, Verdict};
use crate::rn::{
    rn_eval_formula, rn_implies, rn_join, rn_leq, rn_meet, rn_to_formula, truncation, RnElement,
};

/// Algebras from posets up to this size must classify without hitting the
/// clone cap; larger ones are skipped when capped.
pub const UNCAPPED_POSET_SIZE: usize = 3;

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub max_poset_size: usize,
    pub clone_cap: usize,
    pub fuzz_count: usize,
    pub fuzz_seed: u64,
    /// World bound for the countermodel side of the fuzzing criterion.
    pub fuzz_max_worlds: usize,
    pub freeness_depth3_samples: usize,
    pub freeness_depth4_samples: usize,
    pub freeness_direct_pairs: usize,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig {
            max_poset_size: 4,
            clone_cap: DEFAULT_CLONE_CAP,
            fuzz_count: 1000,
            fuzz_seed: 0x5eed,
            fuzz_max_worlds: 5,
            freeness_depth3_samples: 1500,
            freeness_depth4_samples: 1500,
            freeness_direct_pairs: 20_000,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub number: u8,
    pub title: &'static str,
    pub status: Status,
    pub summary: String,
    /// Up to a handful of concrete failures.
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        write!(
            f,
            "{tag} [{}] {}: {} ({:.2}s)",
            self.number,
            self.title,
            self.summary,
            self.elapsed.as_secs_f64()
        )?;
        for line in &self.failures {
            write!(f, "\n    {line}")?;
        }
        Ok(())
    }
}

pub const TITLES: [&str; 9] = [
    "candidate 1 is an apartness iff Boolean",
    "candidate 2 is an apartness iff WLEM",
    "full classification",
    "reduct lemmas",
    "inequalities",
    "one-variable freeness",
    "prover corpus",
    "cross-oracle soundness",
    "structural suites",
];

const MAX_LISTED: usize = 5;

struct Tally {
    failures: Vec<String>,
    count: usize,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            failures: Vec::new(),
            count: 0,
        }
    }

    fn fail(&mut self, msg: impl FnOnce() -> String) {
        if self.failures.len() < MAX_LISTED {
            self.failures.push(msg());
        }
        self.count += 1;
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.fail(msg);
        }
    }
}

/// One classified algebra of the sweep.
pub struct SweepEntry {
    pub algebra: HeytingAlgebra,
    pub poset_size: usize,
    pub report: ClassificationReport,
}

impl SweepEntry {
    /// Trivial algebras are out of scope; capped ones from small posets are
    /// inconclusive, capped ones from larger posets are skipped.
    fn in_scope(&self) -> bool {
        !self.report.trivial_algebra && !self.report.capped
    }
}

pub struct Suite {
    config: SuiteConfig,
    algebras: Vec<HeytingAlgebra>,
    sweep: OnceLock<(Vec<SweepEntry>, Duration)>,
}

impl Suite {
    pub fn new(config: SuiteConfig) -> Result<Suite, crate::heyting::HeytingError> {
        let algebras = enumerate_algebras(config.max_poset_size)?.collect();
        Ok(Suite {
            config,
            algebras,
            sweep: OnceLock::new(),
        })
    }

    pub fn config(&self) -> &SuiteConfig {
        &self.config
    }

    pub fn algebras(&self) -> &[HeytingAlgebra] {
        &self.algebras
    }

    pub fn run(&self, number: u8) -> CriterionResult {
        if (3..=5).contains(&number) {
            self.sweep_entries();
        }
        let start = Instant::now();
        let (status, summary, failures) = match number {
            1 => self.candidate_characterization(false),
            2 => self.candidate_characterization(true),
            3 => self.classification(),
            4 => self.reducts(),
            5 => self.inequalities(),
            6 => self.freeness(),
            7 => self.corpus(),
            8 => self.soundness(),
            9 => self.structural(),
            _ => panic!("no criterion {number}"),
        };
        let mut elapsed = start.elapsed();
        if number == 3 {
            // the shared sweep is charged to the classification criterion
            elapsed += self.sweep_entries().1;
        }
        CriterionResult {
            number,
            title: TITLES[number as usize - 1],
            status,
            summary,
            failures,
            elapsed,
        }
    }

    pub fn run_all(&self) -> Vec<CriterionResult> {
        (1..=9).map(|n| self.run(n)).collect()
    }

    /// The classification of every enumerated algebra, in enumeration order.
    pub fn sweep(&self) -> &[SweepEntry] {
        &self.sweep_entries().0
    }

    fn sweep_entries(&self) -> &(Vec<SweepEntry>, Duration) {
        self.sweep.get_or_init(|| {
            let start = Instant::now();
            let cap = self.config.clone_cap;
            let reports = par_map(&self.algebras, self.config.jobs, |h| classify(h, cap));
            let entries = self
                .algebras
                .iter()
                .zip(reports)
                .map(|(h, report)| SweepEntry {
                    algebra: h.clone(),
                    poset_size: h.source().map_or(0, |p| p.size()),
                    report,
                })
                .collect();
            (entries, start.elapsed())
        })
    }

    fn candidate_characterization(&self, second: bool) -> (Status, String, Vec<String>) {
        let mut tally = Tally::new();
        let mut apart = 0;
        let mut expected = 0;
        for h in &self.algebras {
            let f = if second { candidate2(h) } else { candidate1(h) };
            let is_apart = check_apartness(h, &f)
                .expect("candidate tables match")
                .is_apartness();
            let property = if second {
                h.satisfies_wlem()
            } else {
                h.is_boolean()
            };
            apart += is_apart as usize;
            expected += property as usize;
            tally.check(is_apart == property, || {
                format!(
                    "{}: apartness {is_apart}, {} {property}",
                    h.id(),
                    if second { "wlem" } else { "boolean" }
                )
            });
        }
        let summary = format!(
            "{} algebras, {apart} with an apartness candidate, {expected} {}",
            self.algebras.len(),
            if second { "satisfying WLEM" } else { "Boolean" }
        );
        finish(tally, summary)
    }

    fn classification(&self) -> (Status, String, Vec<String>) {
        let mut tally = Tally::new();
        let (mut checked, mut skipped, mut inconclusive, mut trivial) = (0, 0, 0, 0);
        let mut largest = 0;
        for e in self.sweep() {
            let r = &e.report;
            if r.trivial_algebra {
                trivial += 1;
                continue;
            }
            if r.capped {
                if e.poset_size <= UNCAPPED_POSET_SIZE {
                    inconclusive += 1;
                    tally.failures.push(format!(
                        "{}: clone capped at {}",
                        r.algebra_id, r.clone_size
                    ));
                } else {
                    skipped += 1;
                }
                continue;
            }
            checked += 1;
            largest = largest.max(r.clone_size);
            if let Some(v) = r.theorem_verdicts.iter().find(|v| v.status != Status::Pass) {
                tally.fail(|| format!("{}: {} {} {}", r.algebra_id, v.name, v.status, v.detail));
            }
        }
        let summary = format!(
            "{checked} algebras classified (largest clone {largest}), {trivial} trivial, {skipped} over the clone cap, {inconclusive} inconclusive"
        );
        if tally.count == 0 && inconclusive > 0 {
            return (Status::Inconclusive, summary, tally.failures);
        }
        finish(tally, summary)
    }

    fn reducts(&self) -> (Status, String, Vec<String>) {
        let mut tally = Tally::new();
        let mut functions = 0;
        for e in self.sweep().iter().filter(|e| e.in_scope()) {
            let h = &e.algebra;
            tally.check(e.report.reduct_checks.len() == e.report.found.len(), || {
                format!(
                    "{}: reduct checks do not cover every function",
                    e.report.algebra_id
                )
            });
            for a in &e.report.found {
                functions += 1;
                let f = BinaryFunction::new(h.size(), a.table.clone())
                    .expect("found tables are well formed");
                let top = top_reduct(h, &f).expect("table fits");
                let bottom = bottom_reduct(h, &f).expect("table fits");
                tally.check(
                    top.is_negation && (bottom.is_identity || bottom.is_double_negation),
                    || {
                        format!(
                            "{} #{}: reducts {:?} / {:?}",
                            e.report.algebra_id, a.clone_index, top.table, bottom.table
                        )
                    },
                );
            }
            for c in &e.report.reduct_checks {
                tally.check(c.passed(), || {
                    format!("{} #{}: {c:?}", e.report.algebra_id, c.clone_index)
                });
            }
        }
        let t = candidate2_term();
        let top = reduct_rn(&t, ReductSide::Top).expect("two-variable term");
        let bottom = reduct_rn(&t, ReductSide::Bottom).expect("two-variable term");
        tally.check(top == RnElement::I(1), || {
            format!("symbolic top-reduct of candidate 2 is {top}")
        });
        tally.check(bottom == RnElement::I(2), || {
            format!("symbolic bottom-reduct of candidate 2 is {bottom}")
        });
        finish(
            tally,
            format!("{functions} apartness functions; candidate 2 reducts {top} and {bottom}"),
        )
    }

    fn inequalities(&self) -> (Status, String, Vec<String>) {
        let mut tally = Tally::new();
        let mut functions = 0;
        for e in self.sweep().iter().filter(|e| e.in_scope()) {
            let h = &e.algebra;
            for a in &e.report.found {
                functions += 1;
                let f = BinaryFunction::new(h.size(), a.table.clone())
                    .expect("found tables are well formed");
                let fresh = verify_inequalities(h, &f).expect("table fits");
                tally.check(fresh.passed() && a.inequalities.passed(), || {
                    format!("{} #{}: {fresh:?}", e.report.algebra_id, a.clone_index)
                });
            }
        }
        finish(tally, format!("{functions} apartness functions checked"))
    }

    fn freeness(&self) -> (Status, String, Vec<String>) {
        let mut tally = Tally::new();
        let formulas = freeness_formulas(&self.config);
        let values: Vec<RnElement> = formulas
            .iter()
            .map(|f| rn_eval_formula(f).expect("one atom"))
            .collect();

        // every formula is provably equivalent to its normal form
        let checks = par_map(&formulas, self.config.jobs, |f| {
            let a = rn_eval_formula(f).expect("one atom");
            let rep = rn_to_formula(a);
            is_provable(&Formula::implies(f.clone(), rep.clone()))
                && is_provable(&Formula::implies(rep, f.clone()))
        });
        for (f, ok) in formulas.iter().zip(&checks) {
            tally.check(*ok, || {
                format!("{f} is not provably equivalent to its normal form")
            });
        }

        // the order on the normal forms that occur
        let distinct: Vec<RnElement> = {
            let mut seen = Vec::new();
            for &v in &values {
                if !seen.contains(&v) {
                    seen.push(v);
                }
            }
            seen
        };
        for &a in &distinct {
            for &b in &distinct {
                let proved = is_provable(&Formula::implies(rn_to_formula(a), rn_to_formula(b)));
                tally.check(proved == rn_leq(a, b), || {
                    format!("{a} <= {b}: prover {proved}, order {}", rn_leq(a, b))
                });
            }
        }

        // direct pairs: all pairs of the depth-1 formulas, then a seeded sample
        let small = formulas.iter().take_while(|f| f.depth() <= 1).count();
        let mut pairs: Vec<(usize, usize)> = (0..small)
            .flat_map(|i| (0..small).map(move |j| (i, j)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.fuzz_seed);
        for _ in 0..self.config.freeness_direct_pairs {
            pairs.push((
                rng.gen_range(0..formulas.len()),
                rng.gen_range(0..formulas.len()),
            ));
        }
        let direct = par_map(&pairs, self.config.jobs, |&(i, j)| {
            is_provable(&Formula::implies(formulas[i].clone(), formulas[j].clone()))
                == rn_leq(values[i], values[j])
        });
        for (&(i, j), ok) in pairs.iter().zip(&direct) {
            tally.check(*ok, || {
                format!(
                    "{} -> {}: prover and order disagree",
                    formulas[i], formulas[j]
                )
            });
        }

        let max_index = values.iter().filter_map(|v| v.index()).max().unwrap_or(0);
        finish(
            tally,
            format!(
                "{} formulas, {} distinct values up to index {max_index}, {} order pairs, {} direct pairs",
                formulas.len(),
                distinct.len(),
                distinct.len() * distinct.len(),
                pairs.len()
            ),
        )
    }

    fn corpus(&self) -> (Status, String, Vec<String>) {
        let mut tally = Tally::new();
        let report = check_corpus();
        for e in &report.entries {
            tally.check(e.passed(), || {
                format!("item {} ({}): {:?}", e.item, e.description, e.outcome)
            });
            if let Ok(Verdict::Invalid { model }) = &e.outcome {
                tally.check(model.worlds() <= 3, || {
                    format!(
                        "item {}: countermodel has {} worlds",
                        e.item,
                        model.worlds()
                    )
                });
            }
        }
        let valid = report
            .entries
            .iter()
            .filter(|e| matches!(e.outcome, Ok(Verdict::Valid { .. })))
            .count();
        finish(
            tally,
            format!(
                "{} items, {valid} valid, {} invalid",
                report.entries.len(),
                report.entries.len() - valid
            ),
        )
    }

    fn soundness(&self) -> (Status, String, Vec<String>) {
        const ATOMS: [&str; 3] = ["P", "Q", "R"];
        let mut tally = Tally::new();
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.fuzz_seed);
        let formulas: Vec<Formula> = (0..self.config.fuzz_count)
            .map(|_| random_formula(&mut rng, &ATOMS, 5))
            .collect();
        let max_worlds = self.config.fuzz_max_worlds;
        let algebras = &self.algebras;
        let outcomes = par_map(&formulas, self.config.jobs, |f| {
            let proved = is_provable(f);
            let mut not_top = None;
            if proved {
                not_top = algebras.iter().find_map(|h| {
                    let values = eval_all(h, f, &ATOMS).expect("atoms are listed");
                    values.iter().any(|&v| v != h.top()).then(|| h.id())
                });
            }
            let search = search_countermodel(f, max_worlds, u64::MAX);
            let refuted = match &search {
                Search::Found(m) => Some(m.refutes(f).unwrap_or(false)),
                _ => None,
            };
            (proved, not_top, refuted)
        });
        let (mut proved_count, mut refuted_count) = (0, 0);
        for (f, (proved, not_top, refuted)) in formulas.iter().zip(outcomes) {
            proved_count += proved as usize;
            refuted_count += refuted.is_some() as usize;
            if let Some(id) = not_top {
                tally.fail(|| format!("{f}: provable but not top in {id}"));
            }
            if proved && refuted.is_some() {
                tally.fail(|| format!("{f}: provable and refuted"));
            }
            if refuted == Some(false) {
                tally.fail(|| format!("{f}: returned countermodel does not refute it"));
            }
        }
        let open = formulas.len() - proved_count - refuted_count;
        finish(
            tally,
            format!(
                "{} formulas, {proved_count} provable, {refuted_count} refuted within {max_worlds} worlds, {open} neither; {} algebras",
                formulas.len(),
                algebras.len()
            ),
        )
    }

    fn structural(&self) -> (Status, String, Vec<String>) {
        let mut tally = Tally::new();

        let mut rng = ChaCha8Rng::seed_from_u64(self.config.fuzz_seed ^ 0x9);
        let mut corpus: Vec<Formula> = one_atom_formulas("y", 2);
        corpus
            .extend((0..2000).map(|_| random_formula(&mut rng, &["P", "Q", "R", "long_name1"], 7)));
        for f in &corpus {
            let text = f.to_string();
            match parse(&text) {
                Ok(g) => tally.check(&g == f, || format!("{text} reparses as {g:?}")),
                Err(e) => tally.fail(|| format!("{text} fails to parse: {e}")),
            }
        }

        let t12 = truncation(12);
        for &a in &t12 {
            tally.check(rn_leq(a, a), || format!("{a} <= {a} fails"));
            tally.check(
                rn_leq(RnElement::Bot, a) && rn_leq(a, RnElement::Top),
                || format!("{a} outside bounds"),
            );
            for &b in &t12 {
                if a != b {
                    tally.check(!(rn_leq(a, b) && rn_leq(b, a)), || {
                        format!("{a} and {b} are mutually below")
                    });
                }
                for &c in &t12 {
                    if rn_leq(a, b) && rn_leq(b, c) {
                        tally.check(rn_leq(a, c), || {
                            format!("{a} <= {b} <= {c} but not {a} <= {c}")
                        });
                    }
                }
            }
        }

        let t8 = truncation(8);
        for &a in &t8 {
            for &b in &t8 {
                let (m, j) = (rn_meet(a, b), rn_join(a, b));
                tally.check(
                    rn_leq(m, a) && rn_leq(m, b) && rn_leq(a, j) && rn_leq(b, j),
                    || format!("meet/join of {a}, {b} are not bounds"),
                );
                for &c in &t8 {
                    let lhs = rn_leq(rn_meet(a, b), c);
                    let rhs = rn_leq(a, rn_implies(b, c));
                    tally.check(lhs == rhs, || format!("adjunction fails at {a}, {b}, {c}"));
                }
            }
        }

        for h in &self.algebras {
            let report = h.verify_axioms();
            if !report.all_passed() {
                tally.fail(|| format!("{}: {report}", h.id()));
            }
        }

        finish(
            tally,
            format!(
                "{} round trips, {} truncation elements, {} adjunction triples, {} algebras",
                corpus.len(),
                t12.len(),
                t8.len().pow(3),
                self.algebras.len()
            ),
        )
    }
}

fn finish(tally: Tally, summary: String) -> (Status, String, Vec<String>) {
    if tally.count == 0 {
        (Status::Pass, summary, tally.failures)
    } else {
        let mut failures = tally.failures;
        if tally.count > failures.len() {
            failures.push(format!("... {} failures in total", tally.count));
        }
        (Status::Fail, summary, failures)
    }
}

/// One-atom formulas for the freeness criterion: all of depth at most 2,
/// then seeded samples of depth 3 and 4, one per commutativity class.
///
/// Samples pick each argument by first choosing a lattice value among those
/// met at the argument's depth, so deeper values are reached instead of the
/// handful that uniform sampling keeps hitting.
pub fn freeness_formulas(config: &SuiteConfig) -> Vec<Formula> {
    let mut formulas = Vec::new();
    let mut seen: BTreeSet<Formula> = BTreeSet::new();
    let mut levels: Vec<Vec<(RnElement, Vec<Formula>)>> = Vec::new();
    let record = |levels: &mut Vec<Vec<(RnElement, Vec<Formula>)>>, f: Formula| {
        let depth = f.depth();
        let value = rn_eval_formula(&f).expect("one atom");
        if levels.len() <= depth {
            levels.resize(depth + 1, Vec::new());
        }
        match levels[depth].iter_mut().find(|(v, _)| *v == value) {
            Some((_, group)) => group.push(f),
            None => levels[depth].push((value, vec![f])),
        }
    };
    for f in one_atom_formulas("y", 2) {
        seen.insert(f.clone());
        record(&mut levels, f.clone());
        formulas.push(f);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.fuzz_seed);
    for (depth, count) in [
        (3, config.freeness_depth3_samples),
        (4, config.freeness_depth4_samples),
    ] {
        let mut added = 0;
        while added < count {
            let pick = |rng: &mut ChaCha8Rng, level: &[(RnElement, Vec<Formula>)]| {
                let group = &level[rng.gen_range(0..level.len())].1;
                group[rng.gen_range(0..group.len())].clone()
            };
            let deep = pick(&mut rng, &levels[depth - 1]);
            let other_depth = rng.gen_range(0..depth);
            let other = pick(&mut rng, &levels[other_depth]);
            let (l, r) = if rng.gen_bool(0.5) {
                (deep, other)
            } else {
                (other, deep)
            };
            let f = match rng.gen_range(0..3) {
                0 => Formula::and(l, r),
                1 => Formula::or(l, r),
                _ => Formula::implies(l, r),
            };
            let f = commutative_normal_form(&f);
            if seen.insert(f.clone()) {
                record(&mut levels, f.clone());
                formulas.push(f);
                added += 1;
            }
        }
    }
    formulas
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Suite {
        Suite::new(SuiteConfig {
            max_poset_size: 2,
            fuzz_count: 50,
            freeness_depth3_samples: 20,
            freeness_depth4_samples: 20,
            freeness_direct_pairs: 200,
            ..SuiteConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn small_bounds_pass() {
        let suite = small();
        for r in suite.run_all() {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn forced_cap_is_inconclusive() {
        let suite = Suite::new(SuiteConfig {
            max_poset_size: 2,
            clone_cap: 10,
            ..SuiteConfig::default()
        })
        .unwrap();
        let r = suite.run(3);
        assert_eq!(r.status, Status::Inconclusive, "{r}");
    }

    #[test]
    fn freeness_formulas_are_distinct() {
        let config = SuiteConfig {
            freeness_depth3_samples: 50,
            freeness_depth4_samples: 50,
            ..SuiteConfig::default()
        };
        let fs = freeness_formulas(&config);
        assert_eq!(fs.len(), 1179 + 100);
        let set: BTreeSet<&Formula> = fs.iter().collect();
        assert_eq!(set.len(), fs.len());
        assert!(fs.iter().all(|f| f.depth() <= 4));
    }
}

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::dual::DualModel;
use super::{term_function, BinaryFunction};
use crate::formula::Formula;
use crate::heyting::{Elem, HeytingAlgebra};

fn generator_terms() -> [Formula; 4] {
    [
        Formula::atom("x"),
        Formula::atom("y"),
        Formula::Bot,
        Formula::Top,
    ]
}

/// Walks the clone of `h`: the generators `x, y, bot, top` first (duplicates
/// dropped), then every other member in the fixed order of the dual
/// enumeration. Stops after `cap` members and returns whether more exist.
pub(crate) fn walk_clone(
    h: &HeytingAlgebra,
    model: &DualModel,
    cap: usize,
    mut visit: impl FnMut(usize, &FixedBitSet, &[Elem]),
) -> bool {
    let cap = cap.max(4);
    let generators: Vec<FixedBitSet> = {
        let mut out: Vec<FixedBitSet> = Vec::new();
        for t in generator_terms() {
            let s = model.truth_set(&t).expect("generator terms use x, y only");
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    };
    let mut table = Vec::new();
    for (i, s) in generators.iter().enumerate() {
        model.table_into(h, s, &mut table);
        visit(i, s, &table);
    }
    let mut count = generators.len();
    let mut capped = false;
    model.for_each_persistent_set(|s| {
        if generators.contains(s) {
            return true;
        }
        if count == cap {
            capped = true;
            return false;
        }
        model.table_into(h, s, &mut table);
        visit(count, s, &table);
        count += 1;
        true
    });
    capped
}

/// The binary term functions of a finite Heyting algebra.
#[derive(Debug, Clone)]
pub struct BinaryClone {
    size: usize,
    model: DualModel,
    sets: Vec<FixedBitSet>,
    tables: Vec<Elem>,
    capped: bool,
}

/// Computes the clone, keeping at most `cap` members (`cap` below 4 is
/// raised to 4). Members are distinct tables.
pub fn binary_clone(h: &HeytingAlgebra, cap: usize) -> BinaryClone {
    let model = DualModel::new(h);
    let mut sets = Vec::new();
    let mut tables = Vec::new();
    let capped = walk_clone(h, &model, cap, |_, s, t| {
        sets.push(s.clone());
        tables.extend_from_slice(t);
    });
    BinaryClone {
        size: h.size(),
        model,
        sets,
        tables,
        capped,
    }
}

/// Outcome of re-closing a clone under the three operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCheck {
    pub pairs_checked: usize,
    pub exhaustive: bool,
    /// `(operation, i, j)` whose result is not a member.
    pub missing: Option<(&'static str, usize, usize)>,
}

impl BinaryClone {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn capped(&self) -> bool {
        self.capped
    }

    pub fn model(&self) -> &DualModel {
        &self.model
    }

    pub fn table(&self, i: usize) -> &[Elem] {
        let w = self.size * self.size;
        &self.tables[i * w..(i + 1) * w]
    }

    pub fn function(&self, i: usize) -> BinaryFunction {
        BinaryFunction::new(self.size, self.table(i).to_vec()).expect("member tables are valid")
    }

    pub fn iter(&self) -> impl Iterator<Item = BinaryFunction> + '_ {
        (0..self.len()).map(|i| self.function(i))
    }

    pub fn position(&self, f: &BinaryFunction) -> Option<usize> {
        if f.size() != self.size {
            return None;
        }
        (0..self.len()).find(|&i| self.table(i) == f.table())
    }

    pub fn contains(&self, f: &BinaryFunction) -> bool {
        self.position(f).is_some()
    }

    /// A term in `x, y` inducing member `i`.
    pub fn witness(&self, i: usize) -> Formula {
        witness_of(
            &self.model,
            &self.model.characteristic_formulas(),
            &self.sets[i],
        )
    }

    /// Checks that every witness term evaluates to its member's table.
    ///
    /// Each characteristic formula is evaluated directly in the algebra;
    /// a witness is the join of some of them, so its table is the pointwise
    /// join of theirs. Returns the first bad member.
    pub fn verify_witnesses(&self, h: &HeytingAlgebra) -> Result<(), usize> {
        let basis = self.model.characteristic_formulas();
        let basis_tables: Vec<Vec<Elem>> = basis
            .iter()
            .map(|phi| term_function(h, phi).expect("x, y only").table().to_vec())
            .collect();
        let mut expected = Vec::new();
        for (c, t) in basis_tables.iter().enumerate() {
            self.model
                .table_into(h, self.model.future(c), &mut expected);
            if *t != expected {
                return Err(usize::MAX);
            }
        }
        for i in 0..self.len() {
            let w = witness_of(&self.model, &basis, &self.sets[i]);
            let table: Vec<Elem> = match generator_index(&w) {
                Some(_) => term_function(h, &w).expect("x, y only").table().to_vec(),
                None => {
                    let mut acc = vec![h.bot(); self.size * self.size];
                    for c in self.model.generators_of(&self.sets[i]) {
                        for (a, &b) in acc.iter_mut().zip(&basis_tables[c]) {
                            *a = h.join(*a, b);
                        }
                    }
                    acc
                }
            };
            if table != self.table(i) {
                return Err(i);
            }
        }
        Ok(())
    }

    /// One re-closure pass: every `meet`, `join` and both implications of
    /// every pair must be a member. Above `max_pairs` pairs a fixed
    /// pseudo-random sample of that many pairs is checked instead.
    pub fn verify_closure(&self, h: &HeytingAlgebra, max_pairs: usize) -> ClosureCheck {
        let members: HashSet<&[Elem]> = (0..self.len()).map(|i| self.table(i)).collect();
        let n = self.len();
        let total = n * (n + 1) / 2;
        let exhaustive = total <= max_pairs;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let pairs: Box<dyn Iterator<Item = (usize, usize)>> = if exhaustive {
            Box::new((0..n).flat_map(|j| (0..=j).map(move |i| (i, j))))
        } else {
            let sample: Vec<(usize, usize)> = (0..max_pairs)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            Box::new(sample.into_iter())
        };
        let ops: [(&'static str, &[Elem], bool); 4] = [
            ("meet", h.meet_table(), false),
            ("join", h.join_table(), false),
            ("imp", h.imp_table(), false),
            ("imp", h.imp_table(), true),
        ];
        let size = self.size;
        let mut buf = vec![0; size * size];
        let mut checked = 0;
        for (i, j) in pairs {
            checked += 1;
            for (name, op, swap) in ops {
                let (l, r) = if swap {
                    (self.table(j), self.table(i))
                } else {
                    (self.table(i), self.table(j))
                };
                for (k, slot) in buf.iter_mut().enumerate() {
                    *slot = op[l[k] as usize * size + r[k] as usize];
                }
                if !members.contains(buf.as_slice()) {
                    let (a, b) = if swap { (j, i) } else { (i, j) };
                    return ClosureCheck {
                        pairs_checked: checked,
                        exhaustive,
                        missing: Some((name, a, b)),
                    };
                }
            }
        }
        ClosureCheck {
            pairs_checked: checked,
            exhaustive,
            missing: None,
        }
    }
}

fn generator_index(f: &Formula) -> Option<usize> {
    generator_terms().iter().position(|g| g == f)
}

pub(crate) fn witness_of(model: &DualModel, basis: &[Formula], set: &FixedBitSet) -> Formula {
    for g in generator_terms() {
        if model.truth_set(&g).as_ref() == Some(set) {
            return g;
        }
    }
    Formula::disjunction(
        model
            .generators_of(set)
            .into_iter()
            .map(|c| basis[c].clone()),
    )
}

/// Reference closure by breadth-first fixpoint iteration over tables.
///
/// Starts from `x, y, bot, top`; each dequeued member `k` is combined with
/// every earlier member `j <= k` by meet, join and both implications.
/// Quadratic in the clone size, so only suitable for small clones.
pub fn fixpoint_clone(h: &HeytingAlgebra, cap: usize) -> (Vec<BinaryFunction>, bool) {
    let n = h.size();
    let mut members: Vec<Vec<Elem>> = Vec::new();
    let mut seen: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut capped = false;
    let mut add =
        |t: Vec<Elem>, members: &mut Vec<Vec<Elem>>, queue: &mut VecDeque<usize>| -> bool {
            if seen.contains_key(&t) {
                return true;
            }
            if members.len() == cap.max(4) {
                return false;
            }
            seen.insert(t.clone(), members.len());
            queue.push_back(members.len());
            members.push(t);
            true
        };
    for g in generator_terms() {
        add(
            term_function(h, &g).expect("x, y only").table().to_vec(),
            &mut members,
            &mut queue,
        );
    }
    'outer: while let Some(k) = queue.pop_front() {
        for j in 0..=k {
            for (op, swap) in [
                (h.meet_table(), false),
                (h.join_table(), false),
                (h.imp_table(), false),
                (h.imp_table(), true),
            ] {
                let (l, r) = if swap {
                    (&members[k], &members[j])
                } else {
                    (&members[j], &members[k])
                };
                let t: Vec<Elem> = l
                    .iter()
                    .zip(r)
                    .map(|(&a, &b)| op[a as usize * n + b as usize])
                    .collect();
                if !add(t, &mut members, &mut queue) {
                    capped = true;
                    break 'outer;
                }
            }
        }
    }
    let functions = members
        .into_iter()
        .map(|t| BinaryFunction::new(n, t).expect("valid"))
        .collect();
    (functions, capped)
}

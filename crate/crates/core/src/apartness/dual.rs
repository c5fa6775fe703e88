//! The binary term clone of `h` seen from the Kripke side.
//!
//! `h` is the algebra of downsets of its join-irreducibles `J`, so `h^(h x h)`
//! is the algebra of downsets of `J x h x h`. Read this as a Kripke model:
//! the future of `(j, a, b)` is `(j', a, b)` for `j' <= j`, and `x`, `y` hold
//! at `(j, a, b)` iff `j <= a`, resp. `j <= b`. The truth set of a term `t` is
//! then exactly the table of `t`. After collapsing bisimilar points the
//! definable sets are precisely the persistent sets of the quotient, and
//! each point `c` has a characteristic formula true exactly on its future.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::formula::Formula;
use crate::heyting::{Elem, HeytingAlgebra};

#[derive(Debug, Clone)]
pub struct DualModel {
    algebra_size: usize,
    /// Reflexive future of each class.
    future: Vec<FixedBitSet>,
    /// Immediate strict successors.
    successors: Vec<Vec<usize>>,
    /// Whether `x`, `y` hold at each class.
    valuation: Vec<[bool; 2]>,
    /// For every coordinate `(a, b)`, the classes of `(j, a, b)` with `j`.
    coords: Vec<Vec<(usize, Elem)>>,
    /// Classes ordered so that every strict future precedes its class.
    order: Vec<usize>,
}

fn join_irreducibles(h: &HeytingAlgebra) -> Vec<Elem> {
    h.elements()
        .filter(|&j| {
            if j == h.bot() {
                return false;
            }
            // exactly one lower cover
            let below: Vec<Elem> = h.elements().filter(|&b| b != j && h.leq(b, j)).collect();
            let covers = below
                .iter()
                .filter(|&&b| !below.iter().any(|&c| c != b && h.leq(b, c)))
                .count();
            covers == 1
        })
        .collect()
}

impl DualModel {
    pub fn new(h: &HeytingAlgebra) -> DualModel {
        let n = h.size();
        let irr = join_irreducibles(h);
        let k = irr.len();
        // point (j, a, b) has index (a * n + b) * k + j
        let points = n * n * k;
        let valuation_of = |p: usize| {
            let (coord, j) = (p / k, irr[p % k]);
            let (a, b) = ((coord / n) as Elem, (coord % n) as Elem);
            [h.leq(j, a), h.leq(j, b)]
        };
        let futures: Vec<Vec<usize>> = (0..points)
            .map(|p| {
                let base = p - p % k;
                let j = irr[p % k];
                (0..k)
                    .filter(|&i| h.leq(irr[i], j))
                    .map(|i| base + i)
                    .collect()
            })
            .collect();

        let mut class: Vec<usize> = (0..points)
            .map(|p| {
                let [x, y] = valuation_of(p);
                x as usize * 2 + y as usize
            })
            .collect();
        let mut count = usize::MAX;
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let refined: Vec<usize> = (0..points)
                .map(|p| {
                    let mut seen: Vec<usize> = futures[p].iter().map(|&q| class[q]).collect();
                    seen.sort_unstable();
                    seen.dedup();
                    let next = ids.len();
                    *ids.entry((class[p], seen)).or_insert(next)
                })
                .collect();
            class = refined;
            if ids.len() == count {
                break;
            }
            count = ids.len();
        }
        let classes = if points == 0 { 0 } else { count };

        let mut representative = vec![usize::MAX; classes];
        for p in (0..points).rev() {
            representative[class[p]] = p;
        }
        let future: Vec<FixedBitSet> = representative
            .iter()
            .map(|&p| {
                let mut set = FixedBitSet::with_capacity(classes);
                for &q in &futures[p] {
                    set.insert(class[q]);
                }
                set
            })
            .collect();
        let successors = (0..classes)
            .map(|c| {
                let strict: Vec<usize> = future[c].ones().filter(|&d| d != c).collect();
                strict
                    .iter()
                    .copied()
                    .filter(|&d| !strict.iter().any(|&e| e != d && future[e].contains(d)))
                    .collect()
            })
            .collect();
        let valuation = representative.iter().map(|&p| valuation_of(p)).collect();
        let coords = (0..n * n)
            .map(|coord| (0..k).map(|i| (class[coord * k + i], irr[i])).collect())
            .collect();
        let mut order: Vec<usize> = (0..classes).collect();
        order.sort_by_key(|&c| (future[c].count_ones(..), c));

        DualModel {
            algebra_size: n,
            future,
            successors,
            valuation,
            coords,
            order,
        }
    }

    /// Number of bisimulation classes.
    pub fn classes(&self) -> usize {
        self.future.len()
    }

    pub fn future(&self, c: usize) -> &FixedBitSet {
        &self.future[c]
    }

    pub fn is_persistent(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|c| self.future[c].is_subset(set))
    }

    fn empty(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.classes())
    }

    fn full(&self) -> FixedBitSet {
        let mut s = self.empty();
        s.insert_range(..);
        s
    }

    /// Truth set of a term in `x, y`; `None` on any other atom.
    pub fn truth_set(&self, f: &Formula) -> Option<FixedBitSet> {
        Some(match f {
            Formula::Atom(a) => {
                let which = match a.as_str() {
                    "x" => 0,
                    "y" => 1,
                    _ => return None,
                };
                let mut s = self.empty();
                for c in 0..self.classes() {
                    s.set(c, self.valuation[c][which]);
                }
                s
            }
            Formula::Bot => self.empty(),
            Formula::Top => self.full(),
            Formula::And(l, r) => {
                let mut s = self.truth_set(l)?;
                s.intersect_with(&self.truth_set(r)?);
                s
            }
            Formula::Or(l, r) => {
                let mut s = self.truth_set(l)?;
                s.union_with(&self.truth_set(r)?);
                s
            }
            Formula::Implies(l, r) => {
                let (a, b) = (self.truth_set(l)?, self.truth_set(r)?);
                let mut s = self.empty();
                for c in 0..self.classes() {
                    let bad = self.future[c].intersection(&a).any(|d| !b.contains(d));
                    s.set(c, !bad);
                }
                s
            }
        })
    }

    /// The binary function whose truth set is `set`.
    pub fn table_into(&self, h: &HeytingAlgebra, set: &FixedBitSet, out: &mut Vec<Elem>) {
        out.clear();
        out.extend(self.coords.iter().map(|points| {
            points
                .iter()
                .filter(|(c, _)| set.contains(*c))
                .fold(h.bot(), |acc, &(_, j)| h.join(acc, j))
        }));
    }

    /// For each class, a term in `x, y` true exactly on its future.
    pub fn characteristic_formulas(&self) -> Vec<Formula> {
        let atoms = [Formula::atom("x"), Formula::atom("y")];
        let mut phi: Vec<Option<Formula>> = vec![None; self.classes()];
        let mut psi: Vec<Option<Formula>> = vec![None; self.classes()];
        for &c in &self.order {
            let true_atoms = (0..2)
                .filter(|&i| self.valuation[c][i])
                .map(|i| atoms[i].clone());
            let false_idx: Vec<usize> = (0..2).filter(|&i| !self.valuation[c][i]).collect();
            let succ = &self.successors[c];
            // false at every point outside the future of c whose own strict
            // future lies inside it: such a point either lacks an atom of c,
            // has an extra atom, or misses one of the immediate successors
            let psis = succ
                .iter()
                .map(|&d| psi[d].clone().expect("successor first"));
            let premise =
                Formula::disjunction(false_idx.iter().map(|&i| atoms[i].clone()).chain(psis));
            let conclusion = Formula::disjunction(
                succ.iter()
                    .map(|&d| phi[d].clone().expect("successor first")),
            );
            let formula =
                Formula::conjunction(true_atoms.chain([Formula::implies(premise, conclusion)]));
            let succ_phis = succ
                .iter()
                .map(|&d| phi[d].clone().expect("successor first"));
            psi[c] = Some(Formula::implies(
                formula.clone(),
                Formula::disjunction(succ_phis),
            ));
            phi[c] = Some(formula);
        }
        phi.into_iter()
            .map(|f| f.expect("every class visited"))
            .collect()
    }

    /// Classes of `set` not in the strict future of another member.
    pub fn generators_of(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&c| !set.ones().any(|d| d != c && self.future[d].contains(c)))
            .collect()
    }

    /// Visits every persistent set once, in a fixed order, until `visit`
    /// returns false. Returns whether the enumeration ran to completion.
    pub fn for_each_persistent_set(&self, mut visit: impl FnMut(&FixedBitSet) -> bool) -> bool {
        let mut current = self.empty();
        self.extend(0, &mut current, &mut visit)
    }

    fn extend(
        &self,
        depth: usize,
        current: &mut FixedBitSet,
        visit: &mut impl FnMut(&FixedBitSet) -> bool,
    ) -> bool {
        if depth == self.order.len() {
            return visit(current);
        }
        let c = self.order[depth];
        if !self.extend(depth + 1, current, visit) {
            return false;
        }
        // the strict future of c was decided earlier
        if self.successors[c].iter().all(|&d| current.contains(d)) {
            current.insert(c);
            let more = self.extend(depth + 1, current, visit);
            current.set(c, false);
            return more;
        }
        true
    }

    pub fn algebra_size(&self) -> usize {
        self.algebra_size
    }
}

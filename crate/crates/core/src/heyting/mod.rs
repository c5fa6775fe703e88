//! Finite Heyting algebras stored as dense operation tables.
//!
//! Algebras are usually built as the lattice of downsets of a finite poset;
//! every finite Heyting algebra arises that way (from its poset of
//! join-irreducibles), which is what makes [`enumerate_algebras`] exhaustive.

mod enumerate;
mod eval;
mod io;
mod iso;
mod poset;

use std::fmt;

use thiserror::Error;

pub use enumerate::{enumerate_algebras, DEFAULT_MAX_POSET_SIZE, POSET_SIZE_BOUND};
pub use eval::{eval, eval_all, holds_identity, Assignment, IdentityCheck};
pub use io::parse_export;
pub use iso::isomorphic;
pub use poset::{posets_of_size, posets_up_to, Poset, MAX_POSET_ELEMENTS};

/// Index of an element of a finite algebra.
pub type Elem = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeytingError {
    #[error("poset has {size} elements, at most {max} supported")]
    PosetTooLarge { size: usize, max: usize },
    #[error("element {index} out of range for size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("order is not reflexive at {element}")]
    NotReflexive { element: usize },
    #[error("order is not antisymmetric: {a} and {b}")]
    NotAntisymmetric { a: usize, b: usize },
    #[error("order is not transitive: {a} <= {b} <= {c}")]
    NotTransitive { a: usize, b: usize, c: usize },
    #[error("poset file line {line}: {message}")]
    PosetSyntax { line: usize, message: String },
    #[error("algebra export line {line}: {message}")]
    ExportSyntax { line: usize, message: String },
    #[error("atom `{0}` has no value in the assignment")]
    UnboundAtom(String),
    #[error("enumeration bound {requested} exceeds the configured bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
}

/// Raw operation tables. `meet`, `join`, `imp` and `leq` are row-major
/// `size * size` tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tables {
    pub names: Vec<String>,
    pub leq: Vec<bool>,
    pub meet: Vec<Elem>,
    pub join: Vec<Elem>,
    pub imp: Vec<Elem>,
    pub bot: Elem,
    pub top: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeytingAlgebra {
    size: usize,
    tables: Tables,
    neg: Vec<Elem>,
    source: Option<Poset>,
}

impl HeytingAlgebra {
    /// Builds an algebra from raw tables. Only the table shapes and index
    /// ranges are checked; use [`HeytingAlgebra::verify_axioms`] for the
    /// algebraic laws.
    pub fn from_tables(tables: Tables) -> Result<HeytingAlgebra, HeytingError> {
        let size = tables.names.len();
        if size == 0 || size > 256 {
            return Err(HeytingError::TableShape {
                expected: 1,
                found: size,
            });
        }
        let square = size * size;
        for len in [
            tables.leq.len(),
            tables.meet.len(),
            tables.join.len(),
            tables.imp.len(),
        ] {
            if len != square {
                return Err(HeytingError::TableShape {
                    expected: square,
                    found: len,
                });
            }
        }
        let out_of_range = tables
            .meet
            .iter()
            .chain(&tables.join)
            .chain(&tables.imp)
            .chain([&tables.bot, &tables.top])
            .find(|&&e| e as usize >= size);
        if let Some(&e) = out_of_range {
            return Err(HeytingError::ElementOutOfRange {
                index: e as usize,
                size,
            });
        }
        let neg = (0..size)
            .map(|a| tables.imp[a * size + tables.bot as usize])
            .collect();
        Ok(HeytingAlgebra {
            size,
            tables,
            neg,
            source: None,
        })
    }

    /// The algebra of downward-closed subsets of `poset`, ordered by
    /// inclusion.
    ///
    /// Elements are numbered in the order of [`Poset::downsets`], so the
    /// empty set is element 0 and the whole poset is the last element.
    /// Implication `A -> B` is the largest downset inside `(P \ A) ∪ B`.
    pub fn from_poset_downsets(poset: &Poset) -> HeytingAlgebra {
        let sets = poset.downsets();
        let size = sets.len();
        let index = |s: u32| -> Elem {
            sets.binary_search_by_key(&(s.count_ones(), s), |&t| (t.count_ones(), t))
                .expect("closed under the operation") as Elem
        };
        let full: u32 = (1 << poset.size()) - 1;
        let largest_downset_in = |allowed: u32| -> u32 {
            (0..poset.size())
                .filter(|&p| poset.down(p) & !allowed == 0)
                .fold(0, |acc, p| acc | (1 << p))
        };
        let mut tables = Tables {
            names: sets.iter().map(|&s| set_name(s, poset.size())).collect(),
            leq: vec![false; size * size],
            meet: vec![0; size * size],
            join: vec![0; size * size],
            imp: vec![0; size * size],
            bot: 0,
            top: (size - 1) as Elem,
        };
        for (a, &sa) in sets.iter().enumerate() {
            for (b, &sb) in sets.iter().enumerate() {
                let k = a * size + b;
                tables.leq[k] = sa & !sb == 0;
                tables.meet[k] = index(sa & sb);
                tables.join[k] = index(sa | sb);
                tables.imp[k] = index(largest_downset_in((full & !sa) | sb));
            }
        }
        let mut h = HeytingAlgebra::from_tables(tables).expect("downset tables are well formed");
        h.source = Some(poset.clone());
        h
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> HeytingAlgebra {
        assert!(n >= 1);
        HeytingAlgebra::from_poset_downsets(&Poset::chain(n - 1))
    }

    /// The Boolean algebra with `2^atoms` elements.
    pub fn boolean(atoms: usize) -> HeytingAlgebra {
        HeytingAlgebra::from_poset_downsets(&Poset::antichain(atoms))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(|e| e as Elem)
    }

    pub fn tables(&self) -> &Tables {
        &self.tables
    }

    pub fn names(&self) -> &[String] {
        &self.tables.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.tables.names[e as usize]
    }

    /// The poset this algebra was built from, if any.
    pub fn source(&self) -> Option<&Poset> {
        self.source.as_ref()
    }

    /// Stable identifier: the source poset code, or a size tag.
    pub fn id(&self) -> String {
        match &self.source {
            Some(p) => p.code(),
            None => format!("H{}", self.size),
        }
    }

    #[inline]
    fn at(&self, a: Elem, b: Elem) -> usize {
        a as usize * self.size + b as usize
    }

    #[inline]
    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.tables.leq[self.at(a, b)]
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.tables.meet[self.at(a, b)]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.tables.join[self.at(a, b)]
    }

    #[inline]
    pub fn imp(&self, a: Elem, b: Elem) -> Elem {
        self.tables.imp[self.at(a, b)]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn bot(&self) -> Elem {
        self.tables.bot
    }

    pub fn top(&self) -> Elem {
        self.tables.top
    }

    pub fn meet_table(&self) -> &[Elem] {
        &self.tables.meet
    }

    pub fn join_table(&self) -> &[Elem] {
        &self.tables.join
    }

    pub fn imp_table(&self) -> &[Elem] {
        &self.tables.imp
    }

    pub fn neg_table(&self) -> &[Elem] {
        &self.neg
    }

    /// `~~a` for every element.
    pub fn double_neg_table(&self) -> Vec<Elem> {
        self.neg.iter().map(|&a| self.neg(a)).collect()
    }

    /// Checks every Heyting algebra axiom by exhaustive scan.
    pub fn verify_axioms(&self) -> AxiomReport {
        axioms::verify(self)
    }

    /// Excluded middle `x | ~x = top` for all `x`.
    ///
    /// Double negation elimination `~~x = x` is checked as well; the two
    /// agree in every Heyting algebra and a disagreement means the tables
    /// are not a Heyting algebra.
    pub fn is_boolean(&self) -> bool {
        let lem = self
            .elements()
            .all(|x| self.join(x, self.neg(x)) == self.top());
        let dne = self.elements().all(|x| self.neg(self.neg(x)) == x);
        debug_assert_eq!(lem, dne, "excluded middle and double negation disagree");
        lem && dne
    }

    /// First element violating excluded middle.
    pub fn lem_witness(&self) -> Option<Elem> {
        self.elements()
            .find(|&x| self.join(x, self.neg(x)) != self.top())
    }

    /// Weak excluded middle `~x | ~~x = top` for all `x`.
    pub fn satisfies_wlem(&self) -> bool {
        self.wlem_witness().is_none()
    }

    pub fn wlem_witness(&self) -> Option<Elem> {
        self.elements()
            .find(|&x| self.join(self.neg(x), self.neg(self.neg(x))) != self.top())
    }

    /// Renders the structured export format.
    pub fn export(&self) -> String {
        io::export(self)
    }
}

fn set_name(set: u32, width: usize) -> String {
    let members: Vec<String> = (0..width)
        .filter(|&i| set & (1 << i) != 0)
        .map(|i| i.to_string())
        .collect();
    format!("{{{}}}", members.join(","))
}

impl fmt::Display for HeytingAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} elements)", self.id(), self.size)
    }
}

mod axioms;
pub use axioms::{AxiomCheck, AxiomReport};

#[cfg(test)]
mod tests {
    use super::*;

    fn fork_upsets() -> HeytingAlgebra {
        // upsets of r < p, r < q are the downsets of the dual poset
        let fork = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        HeytingAlgebra::from_poset_downsets(&fork.dual())
    }

    #[test]
    fn three_chain_from_two_chain() {
        let h = HeytingAlgebra::from_poset_downsets(&Poset::chain(2));
        assert_eq!(h.size(), 3);
        assert_eq!(h.names(), ["{}", "{0}", "{0,1}"]);
        // a total order
        for a in h.elements() {
            for b in h.elements() {
                assert!(h.leq(a, b) || h.leq(b, a));
            }
        }
        let a = 1;
        assert_eq!(h.neg(a), h.bot());
        assert_eq!(h.neg(h.bot()), h.top());
    }

    #[test]
    fn four_element_boolean_from_antichain() {
        let h = HeytingAlgebra::from_poset_downsets(&Poset::antichain(2));
        assert_eq!(h.size(), 4);
        for x in h.elements() {
            assert_eq!(h.join(x, h.neg(x)), h.top());
            assert_eq!(h.meet(x, h.neg(x)), h.bot());
        }
        assert!(h.is_boolean());
    }

    #[test]
    fn empty_poset_gives_trivial_algebra() {
        let h = HeytingAlgebra::from_poset_downsets(&Poset::antichain(0));
        assert_eq!(h.size(), 1);
        assert!(h.is_trivial());
        assert_eq!(h.bot(), h.top());
        assert!(h.is_boolean());
        assert!(h.satisfies_wlem());
    }

    #[test]
    fn booleanity_and_wlem_examples() {
        let ch3 = HeytingAlgebra::chain(3);
        assert!(!ch3.is_boolean());
        assert_eq!(ch3.lem_witness(), Some(1));
        assert!(ch3.satisfies_wlem());

        let f5 = fork_upsets();
        assert_eq!(f5.size(), 5);
        assert!(!f5.satisfies_wlem());
        // {p}: ~{p} = {q}, ~~{p} = {p}; their join is {p,q}, not top
        let p = f5.names().iter().position(|n| n == "{1}").unwrap() as Elem;
        let q = f5.names().iter().position(|n| n == "{2}").unwrap() as Elem;
        assert_eq!(f5.neg(p), q);
        assert_eq!(f5.neg(q), p);
        assert_ne!(f5.join(p, q), f5.top());

        assert!(HeytingAlgebra::boolean(3).satisfies_wlem());
    }

    #[test]
    fn order_conditions_agree() {
        for p in posets_up_to(4) {
            let h = HeytingAlgebra::from_poset_downsets(&p);
            for a in h.elements() {
                for b in h.elements() {
                    let l = h.leq(a, b);
                    assert_eq!(l, h.meet(a, b) == a);
                    assert_eq!(l, h.join(a, b) == b);
                    assert_eq!(l, h.imp(a, b) == h.top());
                }
            }
        }
    }

    #[test]
    fn size_law_matches_downset_count() {
        for p in posets_up_to(4) {
            let h = HeytingAlgebra::from_poset_downsets(&p);
            assert_eq!(h.size(), p.downsets().len());
        }
    }

    #[test]
    fn from_tables_checks_shape() {
        let mut t = HeytingAlgebra::chain(3).tables().clone();
        t.meet.pop();
        assert!(matches!(
            HeytingAlgebra::from_tables(t),
            Err(HeytingError::TableShape {
                expected: 9,
                found: 8
            })
        ));
        let mut t = HeytingAlgebra::chain(3).tables().clone();
        t.join[0] = 7;
        assert!(matches!(
            HeytingAlgebra::from_tables(t),
            Err(HeytingError::ElementOutOfRange { index: 7, .. })
        ));
    }
}

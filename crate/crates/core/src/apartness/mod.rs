//! Apartness terms on finite Heyting algebras.
//!
//! A binary function `f` on `h` is an apartness if it is irreflexive
//! (`f(x,x) = bot`), symmetric and cotransitive
//! (`f(x,y) <= f(x,z) | f(z,y)`). It is trivial if it is constantly `bot`
//! and tight if `~f(x,y) & x <= y` for all `x, y`.

mod classify;
mod clone;
mod dual;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse, Formula};
use crate::heyting::{eval_all, Elem, HeytingAlgebra};
use crate::rn::{rn_eval_formula, RnElement};

pub use classify::{
    classify, ClassificationReport, FoundApartness, ReductCheck, Status, TheoremVerdict,
};
pub use clone::{binary_clone, fixpoint_clone, BinaryClone, ClosureCheck};
pub use dual::DualModel;

/// Default bound on the number of functions in a clone.
pub const DEFAULT_CLONE_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApartError {
    #[error("term mentions atom `{0}`; only x and y are allowed")]
    StrayAtom(String),
    #[error("function is over a {found}-element algebra, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("table entry {value} out of range for a {size}-element algebra")]
    OutOfRange { value: Elem, size: usize },
}

/// A total function `h x h -> h`, stored row-major: `f(a, b)` at `a * n + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryFunction {
    size: usize,
    table: Vec<Elem>,
}

impl BinaryFunction {
    pub fn new(size: usize, table: Vec<Elem>) -> Result<BinaryFunction, ApartError> {
        if table.len() != size * size {
            return Err(ApartError::TableShape {
                expected: size * size,
                found: table.len(),
            });
        }
        if let Some(&value) = table.iter().find(|&&v| v as usize >= size) {
            return Err(ApartError::OutOfRange { value, size });
        }
        Ok(BinaryFunction { size, table })
    }

    pub fn from_fn(h: &HeytingAlgebra, f: impl Fn(Elem, Elem) -> Elem) -> BinaryFunction {
        let table = h
            .elements()
            .flat_map(|a| h.elements().map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        BinaryFunction {
            size: h.size(),
            table,
        }
    }

    pub fn constant(h: &HeytingAlgebra, value: Elem) -> BinaryFunction {
        BinaryFunction {
            size: h.size(),
            table: vec![value; h.size() * h.size()],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.size + b as usize]
    }

    /// The unary section `f(a, .)`.
    pub fn section(&self, a: Elem) -> Vec<Elem> {
        let start = a as usize * self.size;
        self.table[start..start + self.size].to_vec()
    }

    fn check_over(&self, h: &HeytingAlgebra) -> Result<(), ApartError> {
        if self.size != h.size() {
            return Err(ApartError::SizeMismatch {
                expected: h.size(),
                found: self.size,
            });
        }
        Ok(())
    }
}

impl fmt::Display for BinaryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.table.chunks(self.size.max(1)) {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// `(x & ~y) | (~x & y)`
pub fn candidate1_term() -> Formula {
    parse("(x & ~y) | (~x & y)").expect("fixed term")
}

/// `~(x <-> y)`
pub fn candidate2_term() -> Formula {
    parse("~(x <-> y)").expect("fixed term")
}

/// `(~~x & ~y) | (~x & ~~y)`
pub fn classification_term() -> Formula {
    parse("(~~x & ~y) | (~x & ~~y)").expect("fixed term")
}

/// The function a term in `x, y` induces on `h`.
pub fn term_function(h: &HeytingAlgebra, t: &Formula) -> Result<BinaryFunction, ApartError> {
    if let Some(stray) = t.free_atoms().into_iter().find(|a| a != "x" && a != "y") {
        return Err(ApartError::StrayAtom(stray));
    }
    let table = eval_all(h, t, &["x", "y"]).expect("atoms checked");
    Ok(BinaryFunction {
        size: h.size(),
        table,
    })
}

pub fn candidate1(h: &HeytingAlgebra) -> BinaryFunction {
    term_function(h, &candidate1_term()).expect("closed over x, y")
}

pub fn candidate2(h: &HeytingAlgebra) -> BinaryFunction {
    term_function(h, &candidate2_term()).expect("closed over x, y")
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ApartnessWitnesses {
    pub irreflexive: Option<[Elem; 1]>,
    pub symmetric: Option<[Elem; 2]>,
    pub cotransitive: Option<[Elem; 3]>,
    pub tight: Option<[Elem; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApartnessReport {
    pub irreflexive: bool,
    pub symmetric: bool,
    pub cotransitive: bool,
    pub trivial: bool,
    pub tight: bool,
    /// First failing tuple per axiom, in lexicographic scan order.
    pub witnesses: ApartnessWitnesses,
}

impl ApartnessReport {
    pub fn is_apartness(&self) -> bool {
        self.irreflexive && self.symmetric && self.cotransitive
    }

    pub fn is_nontrivial_apartness(&self) -> bool {
        self.is_apartness() && !self.trivial
    }

    pub fn is_tight_apartness(&self) -> bool {
        self.is_apartness() && self.tight
    }
}

pub fn check_apartness(
    h: &HeytingAlgebra,
    f: &BinaryFunction,
) -> Result<ApartnessReport, ApartError> {
    f.check_over(h)?;
    Ok(check_table(h, f.table()))
}

pub(crate) fn check_table(h: &HeytingAlgebra, t: &[Elem]) -> ApartnessReport {
    let n = h.size();
    let f = |a: Elem, b: Elem| t[a as usize * n + b as usize];
    let elems = || h.elements();
    let pairs = || elems().flat_map(move |a| elems().map(move |b| (a, b)));

    let irr = elems().find(|&a| f(a, a) != h.bot()).map(|a| [a]);
    let sym = pairs()
        .find(|&(a, b)| f(a, b) != f(b, a))
        .map(|(a, b)| [a, b]);
    let cot = pairs()
        .flat_map(|(a, b)| elems().map(move |c| (a, b, c)))
        .find(|&(a, b, c)| !h.leq(f(a, b), h.join(f(a, c), f(c, b))))
        .map(|(a, b, c)| [a, b, c]);
    // tight in the algebraic form, together with its mirror image
    let tight = pairs()
        .find(|&(a, b)| {
            let not_apart = h.neg(f(a, b));
            !h.leq(h.meet(not_apart, a), b) || !h.leq(h.meet(not_apart, b), a)
        })
        .map(|(a, b)| [a, b]);
    let trivial = t.iter().all(|&v| v == h.bot());

    ApartnessReport {
        irreflexive: irr.is_none(),
        symmetric: sym.is_none(),
        cotransitive: cot.is_none(),
        trivial,
        tight: tight.is_none(),
        witnesses: ApartnessWitnesses {
            irreflexive: irr,
            symmetric: sym,
            cotransitive: cot,
            tight,
        },
    }
}

/// A unary section of a binary function with its identification flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduct {
    pub table: Vec<Elem>,
    pub is_negation: bool,
    pub is_identity: bool,
    pub is_double_negation: bool,
}

impl Reduct {
    fn of(h: &HeytingAlgebra, table: Vec<Elem>) -> Reduct {
        let identity: Vec<Elem> = h.elements().collect();
        Reduct {
            is_negation: table == h.neg_table(),
            is_identity: table == identity,
            is_double_negation: table == h.double_neg_table(),
            table,
        }
    }
}

/// `f(top, .)`
pub fn top_reduct(h: &HeytingAlgebra, f: &BinaryFunction) -> Result<Reduct, ApartError> {
    f.check_over(h)?;
    Ok(Reduct::of(h, f.section(h.top())))
}

/// `f(bot, .)`
pub fn bottom_reduct(h: &HeytingAlgebra, f: &BinaryFunction) -> Result<Reduct, ApartError> {
    f.check_over(h)?;
    Ok(Reduct::of(h, f.section(h.bot())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductSide {
    Top,
    Bottom,
}

/// Substitutes `top` or `bot` for `x` and evaluates the result in the
/// one-generator free algebra (generator `y`).
pub fn reduct_rn(t: &Formula, which: ReductSide) -> Result<RnElement, ApartError> {
    if let Some(stray) = t.free_atoms().into_iter().find(|a| a != "x" && a != "y") {
        return Err(ApartError::StrayAtom(stray));
    }
    let constant = match which {
        ReductSide::Top => Formula::Top,
        ReductSide::Bottom => Formula::Bot,
    };
    let section = t.substitute("x", &constant);
    Ok(rn_eval_formula(&section).expect("only y remains"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityReport {
    /// `~~x & ~~y <= x # ~y`
    pub inequality1: bool,
    /// `x # ~~x = bot`
    pub inequality2: bool,
    pub inequality1_witness: Option<[Elem; 2]>,
    pub inequality2_witness: Option<[Elem; 1]>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.inequality1 && self.inequality2
    }
}

pub fn verify_inequalities(
    h: &HeytingAlgebra,
    f: &BinaryFunction,
) -> Result<InequalityReport, ApartError> {
    f.check_over(h)?;
    Ok(inequalities_of_table(h, f.table()))
}

pub(crate) fn inequalities_of_table(h: &HeytingAlgebra, t: &[Elem]) -> InequalityReport {
    let n = h.size();
    let f = |a: Elem, b: Elem| t[a as usize * n + b as usize];
    let nn = |a: Elem| h.neg(h.neg(a));
    let w1 = h
        .elements()
        .flat_map(|a| h.elements().map(move |b| (a, b)))
        .find(|&(a, b)| !h.leq(h.meet(nn(a), nn(b)), f(a, h.neg(b))))
        .map(|(a, b)| [a, b]);
    let w2 = h.elements().find(|&a| f(a, nn(a)) != h.bot()).map(|a| [a]);
    InequalityReport {
        inequality1: w1.is_none(),
        inequality2: w2.is_none(),
        inequality1_witness: w1,
        inequality2_witness: w2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heyting::Poset;

    fn ch3() -> HeytingAlgebra {
        HeytingAlgebra::chain(3)
    }

    fn b4() -> HeytingAlgebra {
        HeytingAlgebra::boolean(2)
    }

    #[test]
    fn term_function_examples() {
        let h = b4();
        // the two atoms of B4 are complements
        let (a, b) = (1, 2);
        assert_eq!(h.neg(a), b);
        assert_eq!(candidate1(&h).get(a, b), h.top());

        let h = ch3();
        assert_eq!(candidate2(&h).get(h.bot(), h.top()), h.top());
        assert_eq!(
            term_function(&h, &Formula::Bot).unwrap(),
            BinaryFunction::constant(&h, h.bot())
        );
        assert_eq!(
            term_function(&h, &parse("x & z").unwrap()),
            Err(ApartError::StrayAtom("z".into()))
        );
    }

    #[test]
    fn check_apartness_examples() {
        let h = ch3();
        let r = check_apartness(&h, &candidate1(&h)).unwrap();
        assert!(r.irreflexive && r.symmetric);
        assert!(!r.cotransitive);
        let [x, y, z] = r.witnesses.cotransitive.unwrap();
        assert_eq!((x, y, z), (h.bot(), h.top(), 1));

        let r = check_apartness(&h, &candidate2(&h)).unwrap();
        assert!(r.is_apartness());
        assert!(!r.trivial && !r.tight);

        let h = b4();
        let r = check_apartness(&h, &candidate1(&h)).unwrap();
        assert!(r.is_nontrivial_apartness() && r.tight);
    }

    #[test]
    fn candidates_agree_where_expected() {
        let h = ch3();
        assert_eq!(
            candidate2(&h),
            term_function(&h, &classification_term()).unwrap()
        );
        let h = b4();
        assert_eq!(candidate1(&h), candidate2(&h));
        for p in crate::heyting::posets_up_to(3) {
            let h = HeytingAlgebra::from_poset_downsets(&p);
            let c1 = candidate1(&h);
            assert!(h.elements().all(|x| c1.get(x, x) == h.bot()));
        }
    }

    #[test]
    fn reduct_examples() {
        let h = ch3();
        let c2 = candidate2(&h);
        assert!(top_reduct(&h, &c2).unwrap().is_negation);
        let bottom = bottom_reduct(&h, &c2).unwrap();
        assert!(bottom.is_double_negation && !bottom.is_identity);

        let h = b4();
        assert!(bottom_reduct(&h, &candidate1(&h)).unwrap().is_identity);

        let zero = BinaryFunction::constant(&h, h.bot());
        assert_eq!(top_reduct(&h, &zero).unwrap().table, vec![h.bot(); 4]);
        assert_eq!(bottom_reduct(&h, &zero).unwrap().table, vec![h.bot(); 4]);
    }

    #[test]
    fn symbolic_reducts() {
        assert_eq!(
            reduct_rn(&candidate2_term(), ReductSide::Top).unwrap(),
            RnElement::i(1)
        );
        assert_eq!(
            reduct_rn(&candidate2_term(), ReductSide::Bottom).unwrap(),
            RnElement::i(2)
        );
        assert_eq!(
            reduct_rn(&candidate1_term(), ReductSide::Bottom).unwrap(),
            RnElement::d(1)
        );
    }

    #[test]
    fn inequality_examples() {
        let h = ch3();
        assert!(verify_inequalities(&h, &candidate2(&h)).unwrap().passed());
        let h = b4();
        assert!(verify_inequalities(&h, &candidate1(&h)).unwrap().passed());

        // raise f(a, ~~a) above bot
        let h = ch3();
        let mut table = candidate2(&h).table().to_vec();
        let a = 1;
        let nna = h.neg(h.neg(a));
        table[a as usize * 3 + nna as usize] = 1;
        let bad = BinaryFunction::new(3, table).unwrap();
        let report = verify_inequalities(&h, &bad).unwrap();
        assert!(!report.inequality2);
        assert_eq!(report.inequality2_witness, Some([1]));
    }

    #[test]
    fn mismatched_algebra_is_rejected() {
        let f = candidate2(&ch3());
        assert_eq!(
            check_apartness(&b4(), &f),
            Err(ApartError::SizeMismatch {
                expected: 4,
                found: 3
            })
        );
        assert!(BinaryFunction::new(2, vec![0, 1, 2, 0]).is_err());
        assert!(BinaryFunction::new(2, vec![0]).is_err());
    }

    #[test]
    fn relation_on_a_set_as_two_valued_table() {
        // "differ" on a set is an apartness; over the two-element algebra
        let h = HeytingAlgebra::from_poset_downsets(&Poset::chain(1));
        let differ = BinaryFunction::from_fn(&h, |a, b| if a != b { h.top() } else { h.bot() });
        let r = check_apartness(&h, &differ).unwrap();
        assert!(r.is_nontrivial_apartness() && r.tight);
    }
}

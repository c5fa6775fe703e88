use std::collections::BTreeMap;

use super::{Elem, HeytingAlgebra, HeytingError};
use crate::formula::Formula;

/// Values of atoms in a finite algebra.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Assignment(BTreeMap<String, Elem>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn with(mut self, atom: impl Into<String>, value: Elem) -> Assignment {
        self.0.insert(atom.into(), value);
        self
    }

    pub fn set(&mut self, atom: impl Into<String>, value: Elem) {
        self.0.insert(atom.into(), value);
    }

    pub fn get(&self, atom: &str) -> Option<Elem> {
        self.0.get(atom).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Elem)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }
}

impl<S: Into<String>> FromIterator<(S, Elem)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (S, Elem)>>(iter: I) -> Self {
        Assignment(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// Interprets `f` in `h` under `v`.
pub fn eval(h: &HeytingAlgebra, f: &Formula, v: &Assignment) -> Result<Elem, HeytingError> {
    Ok(match f {
        Formula::Atom(name) => v
            .get(name)
            .ok_or_else(|| HeytingError::UnboundAtom(name.clone()))?,
        Formula::Bot => h.bot(),
        Formula::Top => h.top(),
        Formula::And(l, r) => h.meet(eval(h, l, v)?, eval(h, r, v)?),
        Formula::Or(l, r) => h.join(eval(h, l, v)?, eval(h, r, v)?),
        Formula::Implies(l, r) => h.imp(eval(h, l, v)?, eval(h, r, v)?),
    })
}

/// Evaluates `f` under every assignment of `atoms` at once.
///
/// The result has `size^k` entries; the assignment giving `atoms[i]` the
/// value `v_i` is at index `sum v_i * size^(k-1-i)`, so the first atom is
/// the most significant digit. For two atoms this is the row-major table
/// `f(a, b)` at `a * size + b`.
pub fn eval_all(
    h: &HeytingAlgebra,
    f: &Formula,
    atoms: &[&str],
) -> Result<Vec<Elem>, HeytingError> {
    let n = h.size();
    let len = n
        .checked_pow(atoms.len() as u32)
        .expect("assignment space overflow");
    let projection = |i: usize| -> Vec<Elem> {
        let stride = n.pow((atoms.len() - 1 - i) as u32);
        (0..len).map(|k| ((k / stride) % n) as Elem).collect()
    };
    fn go(
        h: &HeytingAlgebra,
        f: &Formula,
        atoms: &[&str],
        len: usize,
        projection: &dyn Fn(usize) -> Vec<Elem>,
    ) -> Result<Vec<Elem>, HeytingError> {
        let binary =
            |l: &Formula, r: &Formula, table: &[Elem]| -> Result<Vec<Elem>, HeytingError> {
                let a = go(h, l, atoms, len, projection)?;
                let b = go(h, r, atoms, len, projection)?;
                let n = h.size();
                Ok(a.iter()
                    .zip(&b)
                    .map(|(&x, &y)| table[x as usize * n + y as usize])
                    .collect())
            };
        match f {
            Formula::Atom(name) => match atoms.iter().position(|a| a == name) {
                Some(i) => Ok(projection(i)),
                None => Err(HeytingError::UnboundAtom(name.clone())),
            },
            Formula::Bot => Ok(vec![h.bot(); len]),
            Formula::Top => Ok(vec![h.top(); len]),
            Formula::And(l, r) => binary(l, r, h.meet_table()),
            Formula::Or(l, r) => binary(l, r, h.join_table()),
            Formula::Implies(l, r) => binary(l, r, h.imp_table()),
        }
    }
    go(h, f, atoms, len, &projection)
}

/// Outcome of checking an equation in an algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// First assignment (in enumeration order) where the sides differ.
    pub counterexample: Option<Assignment>,
}

/// Checks `lhs = rhs` under all `size^k` assignments of the free atoms.
pub fn holds_identity(h: &HeytingAlgebra, lhs: &Formula, rhs: &Formula) -> IdentityCheck {
    let mut atoms = lhs.free_atoms();
    atoms.extend(rhs.free_atoms());
    let atoms: Vec<&str> = atoms.iter().map(String::as_str).collect();
    let l = eval_all(h, lhs, &atoms).expect("all atoms bound");
    let r = eval_all(h, rhs, &atoms).expect("all atoms bound");
    match l.iter().zip(&r).position(|(a, b)| a != b) {
        None => IdentityCheck {
            holds: true,
            counterexample: None,
        },
        Some(k) => {
            let n = h.size();
            let assignment = atoms
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let stride = n.pow((atoms.len() - 1 - i) as u32);
                    (*a, ((k / stride) % n) as Elem)
                })
                .collect();
            IdentityCheck {
                holds: false,
                counterexample: Some(assignment),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn negation_in_three_chain() {
        let h = HeytingAlgebra::chain(3);
        let v = Assignment::new().with("a", 1);
        assert_eq!(eval(&h, &parse("~a").unwrap(), &v), Ok(h.bot()));
    }

    #[test]
    fn top_implication_is_identity() {
        for h in [HeytingAlgebra::chain(4), HeytingAlgebra::boolean(2)] {
            for e in h.elements() {
                let v = Assignment::new().with("y", e);
                assert_eq!(eval(&h, &parse("top -> y").unwrap(), &v), Ok(e));
            }
        }
    }

    #[test]
    fn bottom_and_unbound() {
        let h = HeytingAlgebra::chain(3);
        assert_eq!(eval(&h, &Formula::Bot, &Assignment::new()), Ok(h.bot()));
        assert_eq!(
            eval(
                &h,
                &parse("p & q").unwrap(),
                &Assignment::new().with("p", 0)
            ),
            Err(HeytingError::UnboundAtom("q".into()))
        );
    }

    #[test]
    fn identity_examples() {
        let b4 = HeytingAlgebra::boolean(2);
        let imp = parse("x -> y").unwrap();
        let classical = parse("~x | y").unwrap();
        assert!(holds_identity(&b4, &imp, &classical).holds);

        let ch3 = HeytingAlgebra::chain(3);
        let check = holds_identity(&ch3, &parse("x | ~x").unwrap(), &Formula::Top);
        assert!(!check.holds);
        assert_eq!(check.counterexample, Some(Assignment::new().with("x", 1)));
        assert!(!holds_identity(&ch3, &imp, &classical).holds);

        let x = parse("x").unwrap();
        for p in crate::heyting::posets_up_to(3) {
            let h = HeytingAlgebra::from_poset_downsets(&p);
            assert!(holds_identity(&h, &x, &x).holds);
        }
    }

    #[test]
    fn eval_all_layout_is_row_major() {
        let h = HeytingAlgebra::chain(3);
        let table = eval_all(&h, &parse("x -> y").unwrap(), &["x", "y"]).unwrap();
        for a in h.elements() {
            for b in h.elements() {
                assert_eq!(table[a as usize * 3 + b as usize], h.imp(a, b));
            }
        }
    }
}

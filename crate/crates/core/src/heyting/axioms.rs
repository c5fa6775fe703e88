use std::fmt;

use super::{Elem, HeytingAlgebra};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    /// First failing tuple of elements, in scan order.
    pub witness: Option<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "  {:<24} ok", c.name)?,
                Some(w) => writeln!(f, "  {:<24} FAILED at {:?}", c.name, w)?,
            }
        }
        Ok(())
    }
}

fn scan1(h: &HeytingAlgebra, name: &'static str, law: impl Fn(Elem) -> bool) -> AxiomCheck {
    let witness = h.elements().find(|&a| !law(a)).map(|a| vec![a]);
    AxiomCheck {
        name,
        passed: witness.is_none(),
        witness,
    }
}

fn scan2(h: &HeytingAlgebra, name: &'static str, law: impl Fn(Elem, Elem) -> bool) -> AxiomCheck {
    let witness = h
        .elements()
        .flat_map(|a| h.elements().map(move |b| (a, b)))
        .find(|&(a, b)| !law(a, b))
        .map(|(a, b)| vec![a, b]);
    AxiomCheck {
        name,
        passed: witness.is_none(),
        witness,
    }
}

fn scan3(
    h: &HeytingAlgebra,
    name: &'static str,
    law: impl Fn(Elem, Elem, Elem) -> bool,
) -> AxiomCheck {
    let mut witness = None;
    'outer: for a in h.elements() {
        for b in h.elements() {
            for c in h.elements() {
                if !law(a, b, c) {
                    witness = Some(vec![a, b, c]);
                    break 'outer;
                }
            }
        }
    }
    AxiomCheck {
        name,
        passed: witness.is_none(),
        witness,
    }
}

pub(super) fn verify(h: &HeytingAlgebra) -> AxiomReport {
    let le = |a, b| h.leq(a, b);
    let checks = vec![
        scan1(h, "order_reflexive", |a| le(a, a)),
        scan2(h, "order_antisymmetric", |a, b| {
            a == b || !(le(a, b) && le(b, a))
        }),
        scan3(h, "order_transitive", |a, b, c| {
            !(le(a, b) && le(b, c)) || le(a, c)
        }),
        scan2(h, "meet_commutative", |a, b| h.meet(a, b) == h.meet(b, a)),
        scan2(h, "join_commutative", |a, b| h.join(a, b) == h.join(b, a)),
        scan3(h, "meet_associative", |a, b, c| {
            h.meet(a, h.meet(b, c)) == h.meet(h.meet(a, b), c)
        }),
        scan3(h, "join_associative", |a, b, c| {
            h.join(a, h.join(b, c)) == h.join(h.join(a, b), c)
        }),
        scan1(h, "meet_idempotent", |a| h.meet(a, a) == a),
        scan1(h, "join_idempotent", |a| h.join(a, a) == a),
        scan2(h, "absorption", |a, b| {
            h.meet(a, h.join(a, b)) == a && h.join(a, h.meet(a, b)) == a
        }),
        scan2(h, "order_matches_meet", |a, b| {
            le(a, b) == (h.meet(a, b) == a)
        }),
        scan2(h, "order_matches_join", |a, b| {
            le(a, b) == (h.join(a, b) == b)
        }),
        scan2(h, "order_matches_imp", |a, b| {
            le(a, b) == (h.imp(a, b) == h.top())
        }),
        scan1(h, "bot_least", |a| le(h.bot(), a)),
        scan1(h, "top_greatest", |a| le(a, h.top())),
        scan3(h, "distributive", |a, b, c| {
            h.meet(a, h.join(b, c)) == h.join(h.meet(a, b), h.meet(a, c))
        }),
        scan2(h, "residuation_lower", |a, b| le(h.meet(a, h.imp(a, b)), b)),
        scan3(h, "residuation_max", |a, b, c| {
            !le(h.meet(a, c), b) || le(c, h.imp(a, b))
        }),
    ];
    AxiomReport { checks }
}

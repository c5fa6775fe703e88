//! The Rieger–Nishimura lattice: the free Heyting algebra on one generator.
//!
//! Elements are the disjunctive terms `d_n` and implicative terms `i_n` in
//! the generator `y`:
//!
//! ```text
//! d_0 = i_0 = bot      d_1 = y      i_1 = ~y
//! d_{n+1} = i_n | d_n  i_{n+1} = i_n -> d_n
//! d_inf = i_inf = top
//! ```
//!
//! The order is given by four clauses on the indices; lattice and Heyting
//! operations are found by searching the candidates with index at most two
//! above the larger operand index.

use std::fmt;

use thiserror::Error;

use crate::formula::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RnElement {
    Bot,
    /// `d_n` for `n >= 1`.
    D(u32),
    /// `i_n` for `n >= 1`.
    I(u32),
    Top,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RnError {
    #[error("formula has {} free atoms ({}); at most one is allowed", .0.len(), .0.join(", "))]
    TooManyAtoms(Vec<String>),
}

impl RnElement {
    /// `d_n`, with `d_0` collapsed to `Bot`.
    pub fn d(n: u32) -> RnElement {
        if n == 0 {
            RnElement::Bot
        } else {
            RnElement::D(n)
        }
    }

    /// `i_n`, with `i_0` collapsed to `Bot`.
    pub fn i(n: u32) -> RnElement {
        if n == 0 {
            RnElement::Bot
        } else {
            RnElement::I(n)
        }
    }

    /// Collapses the non-canonical spellings `D(0)` and `I(0)`.
    pub fn normalize(self) -> RnElement {
        match self {
            RnElement::D(0) | RnElement::I(0) => RnElement::Bot,
            other => other,
        }
    }

    /// Index `n` of `d_n` / `i_n`; 0 for `Bot`, `None` for `Top`.
    pub fn index(self) -> Option<u32> {
        match self.normalize() {
            RnElement::Bot => Some(0),
            RnElement::D(n) | RnElement::I(n) => Some(n),
            RnElement::Top => None,
        }
    }

    pub fn ascii_label(self) -> String {
        match self.normalize() {
            RnElement::Bot => "bot".into(),
            RnElement::D(n) => format!("d_{n}"),
            RnElement::I(n) => format!("i_{n}"),
            RnElement::Top => "top".into(),
        }
    }

    pub fn unicode_label(self) -> String {
        match self.normalize() {
            RnElement::Bot => "⊥".into(),
            RnElement::Top => "⊤".into(),
            other => other.ascii_label(),
        }
    }

    fn node_id(self) -> String {
        match self.normalize() {
            RnElement::Bot => "bot".into(),
            RnElement::D(n) => format!("d{n}"),
            RnElement::I(n) => format!("i{n}"),
            RnElement::Top => "top".into(),
        }
    }
}

impl fmt::Display for RnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ascii_label())
    }
}

/// The Rieger–Nishimura order.
pub fn rn_leq(a: RnElement, b: RnElement) -> bool {
    use RnElement::*;
    match (a.normalize(), b.normalize()) {
        (Bot, _) | (_, Top) => true,
        (Top, _) | (_, Bot) => false,
        (D(n), D(m)) => n <= m,
        (D(n), I(m)) => n < m,
        (I(n), D(m)) => n < m,
        (I(n), I(m)) => n == m || n + 1 < m,
    }
}

fn candidates(a: RnElement, b: RnElement) -> Vec<RnElement> {
    let bound = a.index().unwrap_or(0).max(b.index().unwrap_or(0)) + 2;
    let mut out = Vec::with_capacity(2 * bound as usize + 2);
    out.push(RnElement::Bot);
    for n in 1..=bound {
        out.push(RnElement::D(n));
        out.push(RnElement::I(n));
    }
    out.push(RnElement::Top);
    out
}

fn least(set: &[RnElement]) -> Option<RnElement> {
    set.iter()
        .copied()
        .find(|&c| set.iter().all(|&o| rn_leq(c, o)))
}

fn greatest(set: &[RnElement]) -> Option<RnElement> {
    set.iter()
        .copied()
        .find(|&c| set.iter().all(|&o| rn_leq(o, c)))
}

pub fn rn_join(a: RnElement, b: RnElement) -> RnElement {
    let upper: Vec<_> = candidates(a, b)
        .into_iter()
        .filter(|&c| rn_leq(a, c) && rn_leq(b, c))
        .collect();
    least(&upper).expect("join lies within the candidate window")
}

pub fn rn_meet(a: RnElement, b: RnElement) -> RnElement {
    let lower: Vec<_> = candidates(a, b)
        .into_iter()
        .filter(|&c| rn_leq(c, a) && rn_leq(c, b))
        .collect();
    greatest(&lower).expect("meet lies within the candidate window")
}

/// The largest `c` with `a & c <= b`.
pub fn rn_implies(a: RnElement, b: RnElement) -> RnElement {
    let admissible: Vec<_> = candidates(a, b)
        .into_iter()
        .filter(|&c| rn_leq(rn_meet(a, c), b))
        .collect();
    greatest(&admissible).expect("implication lies within the candidate window")
}

pub fn rn_not(a: RnElement) -> RnElement {
    rn_implies(a, RnElement::Bot)
}

/// Interprets a formula in at most one atom, sending the atom to `d_1`.
/// The result is the canonical representative of the formula's class
/// under intuitionistic equivalence.
pub fn rn_eval_formula(f: &Formula) -> Result<RnElement, RnError> {
    let atoms = f.free_atoms();
    if atoms.len() > 1 {
        return Err(RnError::TooManyAtoms(atoms.into_iter().collect()));
    }
    Ok(eval(f))
}

fn eval(f: &Formula) -> RnElement {
    match f {
        Formula::Atom(_) => RnElement::D(1),
        Formula::Bot => RnElement::Bot,
        Formula::Top => RnElement::Top,
        Formula::And(l, r) => rn_meet(eval(l), eval(r)),
        Formula::Or(l, r) => rn_join(eval(l), eval(r)),
        Formula::Implies(l, r) => rn_implies(eval(l), eval(r)),
    }
}

/// The defining term of `a` in the atom `y`.
pub fn rn_to_formula(a: RnElement) -> Formula {
    rn_to_formula_in(a, "y")
}

/// The defining term of `a` in the given atom, expanded through the
/// recurrences.
pub fn rn_to_formula_in(a: RnElement, atom: &str) -> Formula {
    let y = Formula::atom(atom);
    // (d_n, i_n), starting from n = 1
    let terms = |n: u32| -> (Formula, Formula) {
        let mut d = y.clone();
        let mut i = Formula::not(y.clone());
        for _ in 1..n {
            let next_d = Formula::or(i.clone(), d.clone());
            let next_i = Formula::implies(i, d);
            d = next_d;
            i = next_i;
        }
        (d, i)
    };
    match a.normalize() {
        RnElement::Bot => Formula::Bot,
        RnElement::Top => Formula::Top,
        RnElement::D(n) => terms(n).0,
        RnElement::I(n) => terms(n).1,
    }
}

/// `Bot, d_1, i_1, ..., d_max, i_max, Top`.
pub fn truncation(max_index: u32) -> Vec<RnElement> {
    let mut out = vec![RnElement::Bot];
    for n in 1..=max_index {
        out.push(RnElement::D(n));
        out.push(RnElement::I(n));
    }
    out.push(RnElement::Top);
    out
}

/// Covering pairs `(lower, upper)` of the truncation at `max_index`.
pub fn truncation_covers(max_index: u32) -> Vec<(RnElement, RnElement)> {
    let elems = truncation(max_index);
    let mut out = Vec::new();
    for &a in &elems {
        for &b in &elems {
            if a == b || !rn_leq(a, b) {
                continue;
            }
            let between = elems
                .iter()
                .any(|&c| c != a && c != b && rn_leq(a, c) && rn_leq(c, b));
            if !between {
                out.push((a, b));
            }
        }
    }
    out
}

/// DOT digraph of the covering relation of the truncation, drawn bottom to
/// top. With `ascii` set, `bot`/`top` replace the `⊥`/`⊤` labels.
pub fn rn_hasse_dot(max_index: u32, ascii: bool) -> String {
    let label = |e: RnElement| {
        if ascii {
            e.ascii_label()
        } else {
            e.unicode_label()
        }
    };
    let mut out =
        String::from("digraph rieger_nishimura {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for e in truncation(max_index) {
        out.push_str(&format!("  {} [label=\"{}\"];\n", e.node_id(), label(e)));
    }
    for (a, b) in truncation_covers(max_index) {
        out.push_str(&format!("  {} -> {};\n", a.node_id(), b.node_id()));
    }
    out.push_str("}\n");
    out
}

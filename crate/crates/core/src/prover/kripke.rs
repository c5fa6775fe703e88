use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::formula::Formula;
use crate::heyting::{posets_of_size, Poset};

/// Largest frame searched for countermodels.
pub const MAX_WORLDS: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("valuation of `{atom}` is not persistent: true at {from} but not at {to}")]
    NotPersistent {
        atom: String,
        from: usize,
        to: usize,
    },
    #[error("valuation has {found} entries for {expected} atoms")]
    ValuationShape { expected: usize, found: usize },
    #[error("atom `{0}` has no valuation in this model")]
    UnknownAtom(String),
    #[error("world 0 must see every world")]
    NotRooted,
}

/// A finite rooted Kripke model. World 0 is the root; `w <= v` means `v`
/// is accessible from `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    frame: Poset,
    atoms: Vec<String>,
    /// Per atom, the set of worlds forcing it.
    valuation: Vec<u32>,
}

impl KripkeModel {
    pub fn new(
        frame: Poset,
        atoms: Vec<String>,
        valuation: Vec<u32>,
    ) -> Result<KripkeModel, KripkeError> {
        if valuation.len() != atoms.len() {
            return Err(KripkeError::ValuationShape {
                expected: atoms.len(),
                found: valuation.len(),
            });
        }
        let n = frame.size();
        if n == 0 || frame.up(0).count_ones() as usize != n {
            return Err(KripkeError::NotRooted);
        }
        for (atom, &set) in atoms.iter().zip(&valuation) {
            for w in (0..n).filter(|&w| set >> w & 1 == 1) {
                if let Some(v) = (0..n).find(|&v| frame.leq(w, v) && set >> v & 1 == 0) {
                    return Err(KripkeError::NotPersistent {
                        atom: atom.clone(),
                        from: w,
                        to: v,
                    });
                }
            }
        }
        Ok(KripkeModel {
            frame,
            atoms,
            valuation,
        })
    }

    pub fn worlds(&self) -> usize {
        self.frame.size()
    }

    pub fn frame(&self) -> &Poset {
        &self.frame
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn accessible(&self, w: usize, v: usize) -> bool {
        self.frame.leq(w, v)
    }

    pub fn atom_holds(&self, w: usize, atom: &str) -> Result<bool, KripkeError> {
        let i = self
            .atoms
            .iter()
            .position(|a| a == atom)
            .ok_or_else(|| KripkeError::UnknownAtom(atom.to_string()))?;
        Ok(self.valuation[i] >> w & 1 == 1)
    }

    /// The forcing relation, straight from its definition.
    pub fn forces(&self, w: usize, f: &Formula) -> Result<bool, KripkeError> {
        Ok(match f {
            Formula::Atom(a) => self.atom_holds(w, a)?,
            Formula::Bot => false,
            Formula::Top => true,
            Formula::And(l, r) => self.forces(w, l)? && self.forces(w, r)?,
            Formula::Or(l, r) => self.forces(w, l)? || self.forces(w, r)?,
            Formula::Implies(l, r) => {
                for v in (0..self.worlds()).filter(|&v| self.accessible(w, v)) {
                    if self.forces(v, l)? && !self.forces(v, r)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    /// Whether the root fails to force `f`.
    pub fn refutes(&self, f: &Formula) -> Result<bool, KripkeError> {
        Ok(!self.forces(0, f)?)
    }

    /// Graphviz rendering: nodes list the atoms they force, edges are the
    /// covering pairs of the frame.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph countermodel {\n  rankdir=BT;\n");
        for w in 0..self.worlds() {
            out.push_str(&format!(
                "  w{w} [label=\"w{w}: {}\"];\n",
                self.forced_atoms(w).join(" ")
            ));
        }
        for (a, b) in self.frame.covers() {
            out.push_str(&format!("  w{a} -> w{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    fn forced_atoms(&self, w: usize) -> Vec<&str> {
        self.atoms
            .iter()
            .zip(&self.valuation)
            .filter(|(_, &set)| set >> w & 1 == 1)
            .map(|(a, _)| a.as_str())
            .collect()
    }

    /// Forcing table of `f` and all its subformulas, one row per world.
    pub fn forcing_table(&self, f: &Formula) -> Result<String, KripkeError> {
        let mut subs: Vec<&Formula> = Vec::new();
        collect_subformulas(f, &mut subs);
        let mut out = String::new();
        for w in 0..self.worlds() {
            let row: Result<Vec<String>, KripkeError> = subs
                .iter()
                .map(|s| {
                    Ok(format!(
                        "{}{}",
                        if self.forces(w, s)? { "+" } else { "-" },
                        s
                    ))
                })
                .collect();
            out.push_str(&format!("w{w}: {}\n", row?.join("  ")));
        }
        Ok(out)
    }
}

fn collect_subformulas<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
    if let Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) = f {
        collect_subformulas(l, out);
        collect_subformulas(r, out);
    }
    if !matches!(f, Formula::Bot | Formula::Top) && !out.contains(&f) {
        out.push(f);
    }
}

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in 0..self.worlds() {
            let succ: Vec<String> = (0..self.worlds())
                .filter(|&v| v != w && self.accessible(w, v))
                .map(|v| format!("w{v}"))
                .collect();
            let atoms = self.forced_atoms(w);
            writeln!(
                f,
                "w{w}: sees [{}] forces [{}]",
                succ.join(", "),
                atoms.join(", ")
            )?;
        }
        Ok(())
    }
}

/// Rooted frames with `n` worlds up to isomorphism: a root below a copy of
/// each poset with `n - 1` elements.
fn rooted_frames(n: usize) -> &'static [Poset] {
    static CACHE: [OnceLock<Vec<Poset>>; MAX_WORLDS + 1] =
        [const { OnceLock::new() }; MAX_WORLDS + 1];
    CACHE[n].get_or_init(|| {
        if n == 0 {
            return Vec::new();
        }
        posets_of_size(n - 1)
            .iter()
            .map(|q| {
                let mut pairs: Vec<(usize, usize)> = (1..n).map(|j| (0, j)).collect();
                for i in 0..n - 1 {
                    for j in 0..n - 1 {
                        if i != j && q.leq(i, j) {
                            pairs.push((i + 1, j + 1));
                        }
                    }
                }
                Poset::from_relations(n, &pairs).expect("root below a poset is a poset")
            })
            .collect()
    })
}

#[derive(Clone, Copy)]
enum Op {
    Atom(usize),
    Bot,
    Top,
    And,
    Or,
    Imp,
}

/// Postfix code for evaluating truth sets as world bitmasks.
fn compile(f: &Formula, atoms: &[String], code: &mut Vec<Op>) {
    match f {
        Formula::Atom(a) => code.push(Op::Atom(
            atoms.iter().position(|x| x == a).expect("atom listed"),
        )),
        Formula::Bot => code.push(Op::Bot),
        Formula::Top => code.push(Op::Top),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
            compile(l, atoms, code);
            compile(r, atoms, code);
            code.push(match f {
                Formula::And(..) => Op::And,
                Formula::Or(..) => Op::Or,
                _ => Op::Imp,
            });
        }
    }
}

fn run(code: &[Op], valuation: &[u32], up: &[u32], all: u32, stack: &mut Vec<u32>) -> u32 {
    stack.clear();
    for op in code {
        let v = match *op {
            Op::Atom(i) => valuation[i],
            Op::Bot => 0,
            Op::Top => all,
            Op::And | Op::Or | Op::Imp => {
                let b = stack.pop().expect("well-formed code");
                let a = stack.pop().expect("well-formed code");
                match *op {
                    Op::And => a & b,
                    Op::Or => a | b,
                    _ => {
                        let mut s = 0;
                        for (w, &u) in up.iter().enumerate() {
                            if u & a & !b == 0 {
                                s |= 1 << w;
                            }
                        }
                        s
                    }
                }
            }
        };
        stack.push(v);
    }
    stack.pop().expect("well-formed code")
}

/// Outcome of a bounded countermodel search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search {
    Found(KripkeModel),
    /// Every frame up to the bound was tried.
    Exhausted {
        max_worlds: usize,
    },
    /// The valuation budget ran out; frames with at most `complete_worlds`
    /// worlds were searched completely.
    OutOfBudget {
        complete_worlds: usize,
    },
}

/// Searches frames in increasing size (and fixed order within a size),
/// valuations in odometer order over the atoms of `f` in sorted order.
/// `budget` bounds the number of valuations tried.
pub fn search_countermodel(f: &Formula, max_worlds: usize, budget: u64) -> Search {
    let atoms: Vec<String> = f.free_atoms().into_iter().collect();
    let mut code = Vec::new();
    compile(f, &atoms, &mut code);
    let mut stack = Vec::new();
    let mut spent: u64 = 0;
    let max_worlds = max_worlds.min(MAX_WORLDS);
    for n in 1..=max_worlds {
        for frame in rooted_frames(n) {
            let up: Vec<u32> = (0..n).map(|w| frame.up(w)).collect();
            let all = (1u32 << n) - 1;
            let upsets = frame.upsets();
            let mut digits = vec![0usize; atoms.len()];
            'valuations: loop {
                if spent == budget {
                    return Search::OutOfBudget {
                        complete_worlds: n - 1,
                    };
                }
                spent += 1;
                let valuation: Vec<u32> = digits.iter().map(|&d| upsets[d]).collect();
                if run(&code, &valuation, &up, all, &mut stack) & 1 == 0 {
                    let model = KripkeModel::new(frame.clone(), atoms.clone(), valuation)
                        .expect("upsets are persistent");
                    return Search::Found(model);
                }
                // odometer, last atom fastest
                let mut i = digits.len();
                loop {
                    if i == 0 {
                        break 'valuations;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < upsets.len() {
                        break;
                    }
                    digits[i] = 0;
                }
            }
        }
    }
    Search::Exhausted { max_worlds }
}

/// A model whose root refutes `f`, with at most `max_worlds` worlds (capped
/// at [`MAX_WORLDS`]).
pub fn kripke_countermodel(f: &Formula, max_worlds: usize) -> Option<KripkeModel> {
    match search_countermodel(f, max_worlds, u64::MAX) {
        Search::Found(m) => Some(m),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn frame_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| rooted_frames(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
        for n in 1..=4 {
            for f in rooted_frames(n) {
                assert_eq!(f.up(0).count_ones() as usize, n);
            }
        }
    }

    #[test]
    fn weak_excluded_middle_needs_the_fork() {
        let f = parse("~P | ~~P").unwrap();
        assert_eq!(kripke_countermodel(&f, 2), None);
        let m = kripke_countermodel(&f, 3).unwrap();
        assert_eq!(m.worlds(), 3);
        // root with two incomparable successors
        assert!(m.accessible(0, 1) && m.accessible(0, 2));
        assert!(!m.accessible(1, 2) && !m.accessible(2, 1));
        let leaves: Vec<bool> = (1..3).map(|w| m.atom_holds(w, "P").unwrap()).collect();
        assert_eq!(leaves.iter().filter(|&&b| b).count(), 1);
        assert!(!m.atom_holds(0, "P").unwrap());
        assert!(m.refutes(&f).unwrap());
    }

    #[test]
    fn excluded_middle_on_two_worlds() {
        let m = kripke_countermodel(&parse("P | ~P").unwrap(), 2).unwrap();
        assert_eq!(m.worlds(), 2);
        assert!(m.accessible(0, 1));
        assert!(!m.atom_holds(0, "P").unwrap() && m.atom_holds(1, "P").unwrap());
    }

    #[test]
    fn theorems_have_no_countermodel() {
        for s in ["P -> P", "~~(P | ~P)", "top", "(P -> Q) -> ~Q -> ~P"] {
            assert_eq!(kripke_countermodel(&parse(s).unwrap(), 4), None, "{s}");
        }
    }

    #[test]
    fn persistence_is_enforced() {
        let chain = Poset::chain(2);
        let err = KripkeModel::new(chain.clone(), vec!["P".into()], vec![0b01]).unwrap_err();
        assert_eq!(
            err,
            KripkeError::NotPersistent {
                atom: "P".into(),
                from: 0,
                to: 1
            }
        );
        assert!(KripkeModel::new(chain, vec!["P".into()], vec![0b10]).is_ok());
        assert_eq!(
            KripkeModel::new(Poset::antichain(2), vec![], vec![]).unwrap_err(),
            KripkeError::NotRooted
        );
    }

    #[test]
    fn budget_is_respected() {
        let f = parse("(P -> Q) -> ~Q -> ~P").unwrap();
        assert_eq!(
            search_countermodel(&f, 4, 3),
            Search::OutOfBudget { complete_worlds: 0 }
        );
        assert_eq!(
            search_countermodel(&f, 2, u64::MAX),
            Search::Exhausted { max_worlds: 2 }
        );
    }

    #[test]
    fn renderings() {
        let m = kripke_countermodel(&parse("P | ~P").unwrap(), 2).unwrap();
        assert_eq!(
            m.to_string(),
            "w0: sees [w1] forces []\nw1: sees [] forces [P]\n"
        );
        assert!(m.to_dot().contains("w0 -> w1;"));
        let table = m.forcing_table(&parse("P | ~P").unwrap()).unwrap();
        assert_eq!(table, "w0: -P  -~P  -P | ~P\nw1: +P  -~P  +P | ~P\n");
    }
}

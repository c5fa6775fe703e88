//! Formula generators for the exhaustive and randomized suites.

use std::collections::BTreeSet;

use rand::Rng;

use crate::formula::Formula;

/// Sorts the arguments of every `&` and `|`, so formulas equal up to
/// commutativity get the same representative.
pub fn commutative_normal_form(f: &Formula) -> Formula {
    match f {
        Formula::And(l, r) | Formula::Or(l, r) => {
            let (mut a, mut b) = (commutative_normal_form(l), commutative_normal_form(r));
            if b < a {
                std::mem::swap(&mut a, &mut b);
            }
            if matches!(f, Formula::And(..)) {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            }
        }
        Formula::Implies(l, r) => {
            Formula::implies(commutative_normal_form(l), commutative_normal_form(r))
        }
        leaf => leaf.clone(),
    }
}

/// Every formula over `atom`, `bot` and `top` of depth at most `max_depth`,
/// one per commutativity class. Atoms and constants have depth 0.
pub fn one_atom_formulas(atom: &str, max_depth: usize) -> Vec<Formula> {
    let mut levels: Vec<Vec<Formula>> = vec![vec![Formula::Bot, Formula::Top, Formula::atom(atom)]];
    for depth in 1..=max_depth {
        let below: Vec<&Formula> = levels.iter().flatten().collect();
        let newest = &levels[depth - 1];
        let mut next = BTreeSet::new();
        for a in &below {
            for b in newest {
                // at least one argument has depth exactly depth - 1
                for f in [
                    Formula::and((*a).clone(), b.clone()),
                    Formula::or((*a).clone(), b.clone()),
                    Formula::implies((*a).clone(), b.clone()),
                    Formula::implies(b.clone(), (*a).clone()),
                ] {
                    next.insert(commutative_normal_form(&f));
                }
            }
        }
        levels.push(next.into_iter().collect());
    }
    levels.into_iter().flatten().collect()
}

/// A random formula of depth exactly `depth`.
pub fn random_formula_of_depth<R: Rng>(rng: &mut R, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 {
        return random_leaf(rng, atoms);
    }
    let deep = random_formula_of_depth(rng, atoms, depth - 1);
    let shallow_depth = rng.gen_range(0..depth);
    let other = random_formula_of_depth(rng, atoms, shallow_depth);
    let (l, r) = if rng.gen_bool(0.5) {
        (deep, other)
    } else {
        (other, deep)
    };
    match rng.gen_range(0..3) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        _ => Formula::implies(l, r),
    }
}

/// A random formula of depth at most `max_depth`; leaves become more likely
/// as the depth budget shrinks.
pub fn random_formula<R: Rng>(rng: &mut R, atoms: &[&str], max_depth: usize) -> Formula {
    if max_depth == 0 || rng.gen_bool(1.0 / (max_depth as f64 + 1.0)) {
        return random_leaf(rng, atoms);
    }
    let l = random_formula(rng, atoms, max_depth - 1);
    let r = random_formula(rng, atoms, max_depth - 1);
    match rng.gen_range(0..3) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        _ => Formula::implies(l, r),
    }
}

fn random_leaf<R: Rng>(rng: &mut R, atoms: &[&str]) -> Formula {
    match rng.gen_range(0..10) {
        0 => Formula::Bot,
        1 => Formula::Top,
        _ => Formula::atom(atoms[rng.gen_range(0..atoms.len())]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Counts commutativity classes directly: leaves 3, and at each level
    /// unordered pairs for & and |, ordered pairs for ->.
    fn expected_count(max_depth: usize) -> usize {
        let mut total = 3;
        for _ in 0..max_depth {
            total = 3 + total * (total + 1) + total * total;
        }
        total
    }

    #[test]
    fn exhaustive_counts() {
        for d in 0..=2 {
            let fs = one_atom_formulas("y", d);
            assert_eq!(fs.len(), expected_count(d), "depth {d}");
            assert!(fs.iter().all(|f| f.depth() <= d));
            let distinct: BTreeSet<&Formula> = fs.iter().collect();
            assert_eq!(distinct.len(), fs.len());
        }
        assert_eq!(expected_count(2), 1179);
    }

    #[test]
    fn normal_form_identifies_commuted_formulas() {
        let a = crate::formula::parse("(y & bot) | (top -> y)").unwrap();
        let b = crate::formula::parse("(top -> y) | (bot & y)").unwrap();
        assert_eq!(commutative_normal_form(&a), commutative_normal_form(&b));
    }

    #[test]
    fn random_depths() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 0..6 {
            let f = random_formula_of_depth(&mut rng, &["y"], d);
            assert_eq!(f.depth(), d);
            let g = random_formula(&mut rng, &["P", "Q", "R"], d);
            assert!(g.depth() <= d);
        }
    }
}

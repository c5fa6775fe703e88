use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use apartness_core::formula::{parse, Formula};
use apartness_core::heyting::{enumerate_algebras, holds_identity, HeytingAlgebra};
use apartness_core::prover::{is_provable, kripke_countermodel};
use apartness_core::rn::{rn_eval_formula, rn_leq, RnElement};

fn leaf(atoms: &'static [&'static str]) -> impl Strategy<Value = Formula> {
    prop_oneof![
        1 => Just(Formula::Bot),
        1 => Just(Formula::Top),
        6 => prop::sample::select(atoms).prop_map(Formula::atom),
    ]
}

fn formula(atoms: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
    leaf(atoms).prop_recursive(depth, 1 << depth.min(8), 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::implies(l, r)),
        ]
    })
}

const MANY: &[&str] = &["P", "Q", "R", "S", "x_1", "Long"];
const THREE: &[&str] = &["P", "Q", "R"];
const ONE: &[&str] = &["y"];

fn small_algebras() -> &'static [HeytingAlgebra] {
    static ALGEBRAS: OnceLock<Vec<HeytingAlgebra>> = OnceLock::new();
    ALGEBRAS.get_or_init(|| enumerate_algebras(4).unwrap().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn print_then_parse_is_identity(f in formula(MANY, 7)) {
        prop_assert!(f.depth() <= 7);
        let text = f.to_string();
        prop_assert_eq!(parse(&text).unwrap(), f);
    }

    #[test]
    fn substitution_atoms(f in formula(THREE, 5), g in formula(MANY, 3), which in prop::sample::select(THREE)) {
        let result = f.substitute(which, &g).free_atoms();
        let mut bound: BTreeSet<String> = f.free_atoms();
        let occurs = bound.remove(which);
        bound.extend(g.free_atoms());
        prop_assert!(result.is_subset(&bound));
        if occurs {
            prop_assert_eq!(result, bound);
        }
    }

    #[test]
    fn substituting_an_atom_for_itself(f in formula(MANY, 6), which in prop::sample::select(MANY)) {
        prop_assert_eq!(f.substitute(which, &Formula::atom(which)), f);
    }

    #[test]
    fn one_variable_completeness(f in formula(ONE, 5)) {
        prop_assert_eq!(is_provable(&f), rn_eval_formula(&f).unwrap() == RnElement::Top);
    }

    #[test]
    fn one_variable_order(f in formula(ONE, 4), g in formula(ONE, 4)) {
        let (a, b) = (rn_eval_formula(&f).unwrap(), rn_eval_formula(&g).unwrap());
        prop_assert_eq!(is_provable(&Formula::implies(f.clone(), g.clone())), rn_leq(a, b));
        let equivalent = is_provable(&Formula::iff(f, g));
        prop_assert_eq!(equivalent, a == b);
    }

    #[test]
    fn provable_formulas_hold_in_every_algebra(f in formula(THREE, 5)) {
        if is_provable(&f) {
            for h in small_algebras() {
                prop_assert!(holds_identity(h, &f, &Formula::Top).holds, "{} fails in {}", f, h.id());
            }
        }
    }

    #[test]
    fn prover_and_countermodels_exclude(f in formula(THREE, 5)) {
        let proved = is_provable(&f);
        if let Some(m) = kripke_countermodel(&f, 4) {
            prop_assert!(!proved);
            prop_assert!(m.refutes(&f).unwrap());
        }
    }
}

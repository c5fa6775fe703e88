use apartness_core::apartness::{
    binary_clone, candidate1, candidate2, check_apartness, classify, reduct_rn, ReductSide,
    DEFAULT_CLONE_CAP,
};
use apartness_core::formula::{parse, Formula};
use apartness_core::heyting::{enumerate_algebras, holds_identity, posets_up_to, HeytingAlgebra};
use apartness_core::prover::{check_corpus, Verdict};
use apartness_core::rn::{rn_eval_formula, rn_to_formula, truncation, RnElement};

fn algebras(max: usize) -> Vec<HeytingAlgebra> {
    enumerate_algebras(max).unwrap().collect()
}

#[test]
fn every_enumerated_algebra_is_heyting() {
    for h in algebras(5) {
        let report = h.verify_axioms();
        assert!(report.all_passed(), "{}\n{report}", h.id());
    }
}

#[test]
fn downset_lattice_size() {
    for p in posets_up_to(5) {
        let h = HeytingAlgebra::from_poset_downsets(&p);
        assert_eq!(h.size(), p.downsets().len());
    }
}

#[test]
fn boolean_implies_wlem_and_triple_negation() {
    let x = Formula::atom("x");
    let triple = Formula::not(Formula::not(Formula::not(x.clone())));
    for h in algebras(5) {
        assert!(!h.is_boolean() || h.satisfies_wlem(), "{}", h.id());
        assert!(
            holds_identity(&h, &triple, &Formula::not(x.clone())).holds,
            "{}",
            h.id()
        );
    }
}

#[test]
fn provable_corpus_formulas_hold_in_small_algebras() {
    let hs = algebras(4);
    for e in check_corpus().entries {
        if let Ok(Verdict::Valid { .. }) = e.outcome {
            for h in &hs {
                assert!(
                    holds_identity(h, &e.formula, &Formula::Top).holds,
                    "item {} in {}",
                    e.item,
                    h.id()
                );
            }
        }
    }
}

#[test]
fn normal_forms_evaluate_back() {
    for a in truncation(8) {
        assert_eq!(rn_eval_formula(&rn_to_formula(a)).unwrap(), a);
    }
}

#[test]
fn candidates_characterized_on_nontrivial_algebras() {
    for h in algebras(4).into_iter().filter(|h| !h.is_trivial()) {
        let c2 = check_apartness(&h, &candidate2(&h)).unwrap();
        assert_eq!(
            c2.is_nontrivial_apartness(),
            h.satisfies_wlem(),
            "{}",
            h.id()
        );
        let c1 = check_apartness(&h, &candidate1(&h)).unwrap();
        assert_eq!(c1.is_apartness(), h.is_boolean(), "{}", h.id());
    }
}

#[test]
fn witness_terms_have_the_symbolic_reducts() {
    for h in algebras(4) {
        if h.is_trivial() || h.is_boolean() || !h.satisfies_wlem() {
            continue;
        }
        let report = classify(&h, DEFAULT_CLONE_CAP);
        if report.capped {
            continue;
        }
        assert!(!report.found.is_empty(), "{}", h.id());
        for a in &report.found {
            let t = parse(&a.witness).unwrap();
            assert_eq!(
                reduct_rn(&t, ReductSide::Top).unwrap(),
                RnElement::I(1),
                "{} #{}",
                h.id(),
                a.clone_index
            );
            assert_eq!(
                reduct_rn(&t, ReductSide::Bottom).unwrap(),
                RnElement::I(2),
                "{} #{}",
                h.id(),
                a.clone_index
            );
        }
    }
}

#[test]
fn clone_witnesses_and_closure() {
    for h in algebras(4) {
        let clone = binary_clone(&h, DEFAULT_CLONE_CAP);
        if clone.capped() {
            continue;
        }
        assert_eq!(clone.verify_witnesses(&h), Ok(()), "{}", h.id());
        let closure = clone.verify_closure(&h, 200_000);
        assert_eq!(closure.missing, None, "{}", h.id());
    }
}

use super::{isomorphic, posets_up_to, HeytingAlgebra, HeytingError};

/// Default largest poset size for enumeration.
pub const DEFAULT_MAX_POSET_SIZE: usize = 5;

/// Largest accepted enumeration bound.
pub const POSET_SIZE_BOUND: usize = 5;

/// One algebra per isomorphism class of posets with at most `max_poset_size`
/// elements, ordered by poset size and then by canonical poset encoding.
///
/// Downset lattices of non-isomorphic posets are never isomorphic, so the
/// output has no duplicates; this is re-checked as the algebras are built.
pub fn enumerate_algebras(
    max_poset_size: usize,
) -> Result<impl Iterator<Item = HeytingAlgebra>, HeytingError> {
    if max_poset_size > POSET_SIZE_BOUND {
        return Err(HeytingError::BoundExceeded {
            requested: max_poset_size,
            bound: POSET_SIZE_BOUND,
        });
    }
    let mut seen: Vec<HeytingAlgebra> = Vec::new();
    Ok(posets_up_to(max_poset_size)
        .into_iter()
        .filter_map(move |p| {
            let h = HeytingAlgebra::from_poset_downsets(&p);
            if seen.iter().any(|g| isomorphic(g, &h)) {
                return None;
            }
            seen.push(h.clone());
            Some(h)
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(max: usize) -> Vec<usize> {
        enumerate_algebras(max).unwrap().map(|h| h.size()).collect()
    }

    #[test]
    fn bound_one_gives_trivial_and_two_element() {
        assert_eq!(sizes(1), vec![1, 2]);
    }

    #[test]
    fn bound_two_adds_chain_and_square() {
        let mut s = sizes(2);
        s.sort();
        assert_eq!(s, vec![1, 2, 3, 4]);
        let hs: Vec<_> = enumerate_algebras(2).unwrap().collect();
        assert!(hs.iter().any(|h| isomorphic(h, &HeytingAlgebra::chain(3))));
        assert!(hs
            .iter()
            .any(|h| isomorphic(h, &HeytingAlgebra::boolean(2))));
    }

    #[test]
    fn bound_three_has_nine_algebras_including_both_forks() {
        let hs: Vec<_> = enumerate_algebras(3).unwrap().collect();
        assert_eq!(hs.len(), 9);
        let fives: Vec<_> = hs.iter().filter(|h| h.size() == 5).collect();
        assert_eq!(fives.len(), 2);
        assert_eq!(fives.iter().filter(|h| h.satisfies_wlem()).count(), 1);
    }

    #[test]
    fn bound_four_counts() {
        assert_eq!(enumerate_algebras(4).unwrap().count(), 25);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_algebras(6).map(|_| ()),
            Err(HeytingError::BoundExceeded {
                requested: 6,
                bound: 5
            })
        ));
    }

    #[test]
    fn enumerated_algebras_satisfy_laws() {
        for h in enumerate_algebras(4).unwrap() {
            assert!(h.verify_axioms().all_passed(), "{h}");
            if h.is_boolean() {
                assert!(h.satisfies_wlem());
            }
            // ~~~x = ~x
            for x in h.elements() {
                assert_eq!(h.neg(h.neg(h.neg(x))), h.neg(x));
            }
        }
    }
}

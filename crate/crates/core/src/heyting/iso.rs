use super::{Elem, HeytingAlgebra};

/// Per-element data preserved by every isomorphism, used to prune the
/// bijection search.
fn invariants(h: &HeytingAlgebra) -> Vec<(usize, usize, usize, bool)> {
    h.elements()
        .map(|a| {
            let below = h.elements().filter(|&b| h.leq(b, a)).count();
            let above = h.elements().filter(|&b| h.leq(a, b)).count();
            let mut orbit = vec![a];
            let mut x = h.neg(a);
            while !orbit.contains(&x) {
                orbit.push(x);
                x = h.neg(x);
            }
            (below, above, orbit.len(), h.neg(h.neg(a)) == a)
        })
        .collect()
}

fn preserves_everything(h1: &HeytingAlgebra, h2: &HeytingAlgebra, map: &[Elem]) -> bool {
    let m = |a: Elem| map[a as usize];
    if m(h1.bot()) != h2.bot() || m(h1.top()) != h2.top() {
        return false;
    }
    h1.elements().all(|a| {
        h1.elements().all(|b| {
            m(h1.meet(a, b)) == h2.meet(m(a), m(b))
                && m(h1.join(a, b)) == h2.join(m(a), m(b))
                && m(h1.imp(a, b)) == h2.imp(m(a), m(b))
        })
    })
}

/// Whether some bijection preserves meet, join, implication, bottom and top.
pub fn isomorphic(h1: &HeytingAlgebra, h2: &HeytingAlgebra) -> bool {
    find_isomorphism(h1, h2).is_some()
}

/// A structure-preserving bijection `h1 -> h2`, if one exists.
pub fn find_isomorphism(h1: &HeytingAlgebra, h2: &HeytingAlgebra) -> Option<Vec<Elem>> {
    if h1.size() != h2.size() || h1.is_boolean() != h2.is_boolean() {
        return None;
    }
    let inv1 = invariants(h1);
    let inv2 = invariants(h2);
    let mut sorted1 = inv1.clone();
    let mut sorted2 = inv2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return None;
    }
    let n = h1.size();
    let mut map: Vec<Elem> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if search(h1, h2, &inv1, &inv2, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn search(
    h1: &HeytingAlgebra,
    h2: &HeytingAlgebra,
    inv1: &[(usize, usize, usize, bool)],
    inv2: &[(usize, usize, usize, bool)],
    map: &mut Vec<Elem>,
    used: &mut [bool],
) -> bool {
    let a = map.len();
    if a == h1.size() {
        return preserves_everything(h1, h2, map);
    }
    for b in 0..h2.size() {
        if used[b] || inv1[a] != inv2[b] {
            continue;
        }
        // order must be preserved and reflected on the assigned part
        let consistent = (0..a).all(|c| {
            let mc = map[c];
            h1.leq(a as Elem, c as Elem) == h2.leq(b as Elem, mc)
                && h1.leq(c as Elem, a as Elem) == h2.leq(mc, b as Elem)
        });
        if !consistent {
            continue;
        }
        map.push(b as Elem);
        used[b] = true;
        if search(h1, h2, inv1, inv2, map, used) {
            return true;
        }
        map.pop();
        used[b] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heyting::{posets_of_size, Poset};

    #[test]
    fn basic_cases() {
        let ch3 = HeytingAlgebra::chain(3);
        assert!(isomorphic(&ch3, &ch3));
        assert!(!isomorphic(&ch3, &HeytingAlgebra::boolean(2)));
    }

    #[test]
    fn fork_and_its_dual_differ() {
        let fork = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        let up = HeytingAlgebra::from_poset_downsets(&fork.dual());
        let down = HeytingAlgebra::from_poset_downsets(&fork);
        assert!(!isomorphic(&up, &down));
        // relabelled copy is recognised
        let relabelled = Poset::from_relations(3, &[(2, 0), (2, 1)]).unwrap();
        let copy = HeytingAlgebra::from_poset_downsets(&relabelled);
        assert!(isomorphic(&down, &copy));
    }

    #[test]
    fn agrees_with_brute_force_on_five_element_algebras() {
        // brute force over all 5! bijections
        let algebras: Vec<_> = posets_of_size(3)
            .iter()
            .map(HeytingAlgebra::from_poset_downsets)
            .filter(|h| h.size() == 5)
            .collect();
        assert_eq!(algebras.len(), 2);
        let perms: Vec<Vec<Elem>> = itertools::Itertools::permutations(0..5u8, 5).collect();
        for h1 in &algebras {
            for h2 in &algebras {
                let brute = perms.iter().any(|p| preserves_everything(h1, h2, p));
                assert_eq!(brute, isomorphic(h1, h2));
            }
        }
    }
}

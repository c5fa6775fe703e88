use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use super::HeytingError;

/// Largest poset the crate will build algebras from. Downset lattices of
/// posets this size have at most 256 elements, so elements fit in a `u8`.
pub const MAX_POSET_ELEMENTS: usize = 8;

/// A finite partial order on `0..size`, stored as one bit row per element:
/// bit `j` of `rows[i]` is set iff `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    size: usize,
    rows: Vec<u32>,
}

impl Poset {
    /// Builds a poset from a full order table. The table is checked for
    /// reflexivity, antisymmetry and transitivity.
    pub fn from_table(size: usize, leq: &[bool]) -> Result<Poset, HeytingError> {
        if size > MAX_POSET_ELEMENTS {
            return Err(HeytingError::PosetTooLarge {
                size,
                max: MAX_POSET_ELEMENTS,
            });
        }
        if leq.len() != size * size {
            return Err(HeytingError::TableShape {
                expected: size * size,
                found: leq.len(),
            });
        }
        let rows = (0..size)
            .map(|i| {
                (0..size)
                    .filter(|&j| leq[i * size + j])
                    .fold(0u32, |acc, j| acc | (1 << j))
            })
            .collect();
        let poset = Poset { size, rows };
        poset.validate()?;
        Ok(poset)
    }

    /// Builds a poset from strict relations `i < j`, taking the reflexive
    /// transitive closure.
    pub fn from_relations(size: usize, pairs: &[(usize, usize)]) -> Result<Poset, HeytingError> {
        if size > MAX_POSET_ELEMENTS {
            return Err(HeytingError::PosetTooLarge {
                size,
                max: MAX_POSET_ELEMENTS,
            });
        }
        let mut rows: Vec<u32> = (0..size).map(|i| 1 << i).collect();
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return Err(HeytingError::ElementOutOfRange {
                    index: i.max(j),
                    size,
                });
            }
            rows[i] |= 1 << j;
        }
        // Warshall
        for k in 0..size {
            for i in 0..size {
                if rows[i] & (1 << k) != 0 {
                    rows[i] |= rows[k];
                }
            }
        }
        let poset = Poset { size, rows };
        poset.validate()?;
        Ok(poset)
    }

    pub fn chain(size: usize) -> Poset {
        let pairs: Vec<_> = (1..size).map(|i| (i - 1, i)).collect();
        Poset::from_relations(size, &pairs).expect("chains are posets")
    }

    pub fn antichain(size: usize) -> Poset {
        Poset::from_relations(size, &[]).expect("antichains are posets")
    }

    fn validate(&self) -> Result<(), HeytingError> {
        for i in 0..self.size {
            if !self.leq(i, i) {
                return Err(HeytingError::NotReflexive { element: i });
            }
            for j in 0..self.size {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(HeytingError::NotAntisymmetric { a: i, b: j });
                }
                for k in 0..self.size {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        return Err(HeytingError::NotTransitive { a: i, b: j, c: k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.rows[i] & (1 << j) != 0
    }

    /// Bitmask of the elements above `i` (including `i`).
    pub fn up(&self, i: usize) -> u32 {
        self.rows[i]
    }

    /// Bitmask of the elements below `i` (including `i`).
    pub fn down(&self, i: usize) -> u32 {
        (0..self.size)
            .filter(|&j| self.leq(j, i))
            .fold(0, |acc, j| acc | (1 << j))
    }

    /// Strict covering pairs `i < j` with nothing in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                let between =
                    (0..self.size).any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All downward-closed subsets as bitmasks, ordered by cardinality and
    /// then numerically. The empty set comes first, the full set last.
    pub fn downsets(&self) -> Vec<u32> {
        let full: u32 = (1 << self.size) - 1;
        let mut sets: Vec<u32> = (0..=full).filter(|&s| self.is_downset(s)).collect();
        sets.sort_by_key(|&s| (s.count_ones(), s));
        sets
    }

    pub fn is_downset(&self, set: u32) -> bool {
        (0..self.size)
            .filter(|&i| set & (1 << i) != 0)
            .all(|i| self.down(i) & !set == 0)
    }

    pub fn is_upset(&self, set: u32) -> bool {
        (0..self.size)
            .filter(|&i| set & (1 << i) != 0)
            .all(|i| self.up(i) & !set == 0)
    }

    /// All upward-closed subsets, ordered like [`Poset::downsets`].
    pub fn upsets(&self) -> Vec<u32> {
        let full: u32 = (1 << self.size) - 1;
        let mut sets: Vec<u32> = (0..=full).filter(|&s| self.is_upset(s)).collect();
        sets.sort_by_key(|&s| (s.count_ones(), s));
        sets
    }

    /// The order-dual poset.
    pub fn dual(&self) -> Poset {
        let rows = (0..self.size).map(|i| self.down(i)).collect();
        Poset {
            size: self.size,
            rows,
        }
    }

    /// Relabels elements: element `i` becomes `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Poset {
        let mut rows = vec![0u32; self.size];
        for i in 0..self.size {
            for j in 0..self.size {
                if self.leq(i, j) {
                    rows[perm[i]] |= 1 << perm[j];
                }
            }
        }
        Poset {
            size: self.size,
            rows,
        }
    }

    fn strict_code(&self) -> u64 {
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..self.size {
            for j in 0..self.size {
                if i != j {
                    if self.leq(i, j) {
                        code |= 1 << bit;
                    }
                    bit += 1;
                }
            }
        }
        code
    }

    /// Canonical representative of the isomorphism class: the relabelling
    /// whose strict-order bit encoding is smallest.
    pub fn canonical(&self) -> Poset {
        let mut best: Option<(u64, Poset)> = None;
        for perm in (0..self.size).permutations(self.size) {
            let candidate = self.permute(&perm);
            let code = candidate.strict_code();
            if best.as_ref().is_none_or(|(c, _)| code < *c) {
                best = Some((code, candidate));
            }
        }
        best.map(|(_, p)| p).unwrap_or_else(|| self.clone())
    }

    /// Whether the poset has a least element.
    pub fn least(&self) -> Option<usize> {
        let full: u32 = (1 << self.size) - 1;
        (0..self.size).find(|&i| self.up(i) == full)
    }

    /// Relabels along a linear extension so that `i <= j` implies `i <= j` as
    /// integers. A least element, if any, becomes element 0.
    pub fn naturally_labelled(&self) -> Poset {
        let order: Vec<usize> = (0..self.size)
            .sorted_by_key(|&i| (self.down(i).count_ones(), i))
            .collect();
        let mut perm = vec![0; self.size];
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        self.permute(&perm)
    }

    /// Short identifier listing the covering pairs, e.g. `P3[0<1,0<2]`.
    pub fn code(&self) -> String {
        let covers = self
            .covers()
            .iter()
            .map(|(i, j)| format!("{i}<{j}"))
            .join(",");
        format!("P{}[{}]", self.size, covers)
    }

    /// Serialises in the poset file format: `elements: n` followed by the
    /// covering pairs, one `i < j` per line.
    pub fn to_file_format(&self) -> String {
        let mut out = format!("elements: {}\n", self.size);
        for (i, j) in self.covers() {
            out.push_str(&format!("{i} < {j}\n"));
        }
        out
    }

    /// Parses the poset file format. Relations may be covers or any subset
    /// of the order; the transitive closure is taken. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn parse_file_format(text: &str) -> Result<Poset, HeytingError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(n, l)| (n + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line_no, header) = lines.next().ok_or(HeytingError::PosetSyntax {
            line: 1,
            message: "missing `elements: n` header".into(),
        })?;
        let size = header
            .strip_prefix("elements:")
            .and_then(|rest| rest.trim().parse::<usize>().ok())
            .ok_or_else(|| HeytingError::PosetSyntax {
                line: line_no,
                message: format!("expected `elements: n`, found {header:?}"),
            })?;
        let mut pairs = Vec::new();
        for (line_no, line) in lines {
            let parsed = line.split_once('<').and_then(|(a, b)| {
                Some((
                    a.trim().parse::<usize>().ok()?,
                    b.trim().parse::<usize>().ok()?,
                ))
            });
            match parsed {
                Some(pair) => pairs.push(pair),
                None => {
                    return Err(HeytingError::PosetSyntax {
                        line: line_no,
                        message: format!("expected `i < j`, found {line:?}"),
                    })
                }
            }
        }
        Poset::from_relations(size, &pairs)
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

/// One representative per isomorphism class of posets with exactly `size`
/// elements, in canonical form, ordered by their encoding.
pub fn posets_of_size(size: usize) -> Vec<Poset> {
    assert!(size <= MAX_POSET_ELEMENTS);
    // Every poset has a linear extension, so it suffices to look at strict
    // relations between i < j as integers.
    let slots: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
        .collect();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << slots.len()) {
        let mut rows: Vec<u32> = (0..size).map(|i| 1 << i).collect();
        for (bit, &(i, j)) in slots.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                rows[i] |= 1 << j;
            }
        }
        // transitive as given?
        let transitive = (0..size).all(|i| {
            (0..size)
                .filter(|&j| rows[i] & (1 << j) != 0)
                .all(|j| rows[j] & !rows[i] == 0)
        });
        if !transitive {
            continue;
        }
        let canonical = Poset { size, rows }.canonical();
        if seen.insert(canonical.strict_code()) {
            out.push(canonical);
        }
    }
    out.sort_by_key(|p| p.strict_code());
    out
}

/// Isomorphism-class representatives of all posets with at most `max_size`
/// elements, ordered by size.
pub fn posets_up_to(max_size: usize) -> Vec<Poset> {
    (0..=max_size).flat_map(posets_of_size).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        // number of unlabelled posets: 1, 1, 2, 5, 16, 63
        let counts: Vec<usize> = (0..=5).map(|n| posets_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn rejects_cycles() {
        let err = Poset::from_relations(2, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, HeytingError::NotAntisymmetric { .. }));
        let table = [true, true, false, false];
        assert!(matches!(
            Poset::from_table(2, &table),
            Err(HeytingError::NotReflexive { element: 1 })
        ));
        let table = [true, true, false, false, true, true, false, false, true];
        assert!(matches!(
            Poset::from_table(3, &table),
            Err(HeytingError::NotTransitive { .. })
        ));
    }

    #[test]
    fn downset_counts() {
        assert_eq!(Poset::chain(2).downsets(), vec![0b00, 0b01, 0b11]);
        assert_eq!(Poset::antichain(2).downsets().len(), 4);
        assert_eq!(Poset::antichain(0).downsets(), vec![0]);
        let fork = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(fork.upsets().len(), 5);
        assert_eq!(fork.downsets().len(), 5);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let a = Poset::from_relations(3, &[(0, 1), (0, 2)]).unwrap();
        let b = Poset::from_relations(3, &[(2, 0), (2, 1)]).unwrap();
        assert_eq!(a.canonical(), b.canonical());
        assert_ne!(a.canonical(), a.dual().canonical());
    }

    #[test]
    fn file_format_round_trip_and_closure() {
        let p = Poset::parse_file_format("elements: 3\n0 < 1\n1 < 2\n").unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p, Poset::chain(3));
        assert_eq!(Poset::parse_file_format(&p.to_file_format()).unwrap(), p);
        assert!(matches!(
            Poset::parse_file_format("elements: x"),
            Err(HeytingError::PosetSyntax { line: 1, .. })
        ));
        assert!(matches!(
            Poset::parse_file_format("elements: 2\n0 < 5"),
            Err(HeytingError::ElementOutOfRange { .. })
        ));
        assert!(matches!(
            Poset::parse_file_format("# comment\nelements: 2\n0 - 1"),
            Err(HeytingError::PosetSyntax { line: 3, .. })
        ));
    }

    #[test]
    fn natural_labelling_puts_root_first() {
        let p = Poset::from_relations(3, &[(2, 0), (2, 1)]).unwrap();
        let q = p.naturally_labelled();
        assert_eq!(q.least(), Some(0));
        for i in 0..3 {
            for j in 0..3 {
                if q.leq(i, j) {
                    assert!(i <= j);
                }
            }
        }
    }
}

//! Commutative grading monoids: finite ones given by an addition table,
//! and finitely generated free ones. Internal degrees of cochain slices
//! are grouped into blocks: the strongly connected components of the
//! translation preorder d -> x + d, which is the finest grouping the
//! differential respects. Over a free monoid every block is a
//! singleton; over a finite group everything collapses to one block.

use crate::error::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;

/// A monoid element: an index into a finite table, or a tuple of
/// naturals for a free monoid.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elt {
    Fin(usize),
    Free(Vec<u32>),
}

impl Elt {
    pub fn nat(n: u32) -> Self {
        Elt::Free(vec![n])
    }

    pub fn fin(i: usize) -> Self {
        Elt::Fin(i)
    }

    pub fn as_fin(&self) -> usize {
        match self {
            Elt::Fin(i) => *i,
            Elt::Free(_) => panic!("free element where a finite one was expected"),
        }
    }

    pub fn as_nat(&self) -> u32 {
        match self {
            Elt::Free(v) if v.len() == 1 => v[0],
            _ => panic!("rank-1 free element expected"),
        }
    }
}

impl fmt::Display for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elt::Fin(i) => write!(f, "{i}"),
            Elt::Free(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Elt::Free(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// A finite commutative monoid, written additively, with a validated
/// addition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCommutativeMonoid {
    size: usize,
    identity: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteCommutativeMonoid {
    /// Validate a candidate table: unit law, commutativity,
    /// associativity. Errors name the offending entries.
    pub fn validate(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if identity >= size {
            return Err(Error::InvalidTable(format!(
                "identity {identity} out of range for size {size}"
            )));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidTable(format!(
                    "row {i} has length {} in a size-{size} table",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(Error::InvalidTable(format!(
                        "entry ({i},{j}) = {v} out of range"
                    )));
                }
            }
        }
        for x in 0..size {
            if table[identity][x] != x {
                return Err(Error::UnitLawViolation { identity, x, got: table[identity][x] });
            }
        }
        for x in 0..size {
            for y in 0..size {
                if table[x][y] != table[y][x] {
                    return Err(Error::NotCommutative {
                        x,
                        y,
                        xy: table[x][y],
                        yx: table[y][x],
                    });
                }
            }
        }
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    let left = table[table[x][y]][z];
                    let right = table[x][table[y][z]];
                    if left != right {
                        return Err(Error::NotAssociative { x, y, z, left, right });
                    }
                }
            }
        }
        Ok(FiniteCommutativeMonoid { size, identity, table })
    }

    pub fn trivial() -> Self {
        Self::validate(vec![vec![0]], 0).unwrap()
    }

    /// The cyclic group Z/n.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        Self::validate(table, 0).unwrap()
    }

    /// Semilattice chain 0 < 1 < ... < n-1 under max.
    pub fn semilattice_chain(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|x| (0..n).map(|y| x.max(y)).collect()).collect();
        Self::validate(table, 0).unwrap()
    }

    /// The cyclic Rees monoid C(i,p): sums below i+p are plain, larger
    /// ones wrap into the cycle i..i+p-1.
    pub fn rees(i: usize, p: usize) -> Self {
        assert!(i >= 1 && p >= 1);
        let n = i + p;
        let add = |x: usize, y: usize| {
            let s = x + y;
            if s < n {
                s
            } else {
                i + ((s - i) % p)
            }
        };
        let table = (0..n).map(|x| (0..n).map(|y| add(x, y)).collect()).collect();
        Self::validate(table, 0).unwrap()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }
}

/// The free commutative monoid N^rank. Only rank 1 appears in the
/// builtin families but the element arithmetic is rank-generic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMonoid {
    rank: usize,
}

impl FreeMonoid {
    pub fn new(rank: usize) -> Self {
        assert!(rank >= 1);
        FreeMonoid { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Hom-set of the Leech category: the witnesses y with x + y = z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeechHomSet {
    pub source: Elt,
    pub target: Elt,
    pub witnesses: Vec<Elt>,
}

/// A grading monoid: finite with a table, or free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monoid {
    Finite(FiniteCommutativeMonoid),
    Free(FreeMonoid),
}

impl Monoid {
    pub fn trivial() -> Self {
        Monoid::Finite(FiniteCommutativeMonoid::trivial())
    }

    pub fn cyclic(n: usize) -> Self {
        Monoid::Finite(FiniteCommutativeMonoid::cyclic(n))
    }

    pub fn semilattice_chain(n: usize) -> Self {
        Monoid::Finite(FiniteCommutativeMonoid::semilattice_chain(n))
    }

    pub fn rees(i: usize, p: usize) -> Self {
        Monoid::Finite(FiniteCommutativeMonoid::rees(i, p))
    }

    pub fn naturals() -> Self {
        Monoid::Free(FreeMonoid::new(1))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Monoid::Finite(_))
    }

    pub fn identity(&self) -> Elt {
        match self {
            Monoid::Finite(m) => Elt::Fin(m.identity()),
            Monoid::Free(m) => Elt::Free(vec![0; m.rank()]),
        }
    }

    pub fn is_identity(&self, e: &Elt) -> bool {
        *e == self.identity()
    }

    pub fn add(&self, a: &Elt, b: &Elt) -> Elt {
        match (self, a, b) {
            (Monoid::Finite(m), Elt::Fin(x), Elt::Fin(y)) => Elt::Fin(m.add(*x, *y)),
            (Monoid::Free(m), Elt::Free(x), Elt::Free(y)) => {
                assert!(x.len() == m.rank() && y.len() == m.rank());
                Elt::Free(x.iter().zip(y).map(|(a, b)| a + b).collect())
            }
            _ => panic!("element does not belong to this monoid"),
        }
    }

    pub fn sum(&self, tuple: &[Elt]) -> Elt {
        tuple.iter().fold(self.identity(), |acc, e| self.add(&acc, e))
    }

    /// All elements, when finitely many.
    pub fn elements(&self) -> Option<Vec<Elt>> {
        match self {
            Monoid::Finite(m) => Some((0..m.size()).map(Elt::Fin).collect()),
            Monoid::Free(_) => None,
        }
    }

    /// The exact witness set {y : x + y = z}.
    pub fn leech_hom(&self, x: &Elt, z: &Elt) -> LeechHomSet {
        let witnesses = match (self, x, z) {
            (Monoid::Finite(m), Elt::Fin(a), Elt::Fin(c)) => (0..m.size())
                .filter(|&y| m.add(*a, y) == *c)
                .map(Elt::Fin)
                .collect(),
            (Monoid::Free(_), Elt::Free(a), Elt::Free(c)) => {
                if a.len() == c.len() && a.iter().zip(c).all(|(x, z)| x <= z) {
                    vec![Elt::Free(a.iter().zip(c).map(|(x, z)| z - x).collect())]
                } else {
                    Vec::new()
                }
            }
            _ => panic!("element does not belong to this monoid"),
        };
        LeechHomSet { source: x.clone(), target: z.clone(), witnesses }
    }

    /// All n-tuples with the given sum, lexicographically ordered.
    /// `normalized` excludes tuples containing the identity.
    pub fn tuples_with_sum(&self, n: usize, d: &Elt, normalized: bool) -> Vec<Vec<Elt>> {
        match self {
            Monoid::Finite(m) => {
                if n == 0 {
                    return if *d == Elt::Fin(m.identity()) { vec![Vec::new()] } else { Vec::new() };
                }
                let letters: Vec<usize> = (0..m.size())
                    .filter(|&x| !normalized || x != m.identity())
                    .collect();
                let mut out = Vec::new();
                let mut cur: Vec<usize> = Vec::with_capacity(n);
                fn rec(
                    m: &FiniteCommutativeMonoid,
                    letters: &[usize],
                    n: usize,
                    target: usize,
                    cur: &mut Vec<usize>,
                    out: &mut Vec<Vec<Elt>>,
                ) {
                    if cur.len() == n {
                        let sum = cur.iter().fold(m.identity(), |acc, &e| m.add(acc, e));
                        if sum == target {
                            out.push(cur.iter().map(|&e| Elt::Fin(e)).collect());
                        }
                        return;
                    }
                    for &a in letters {
                        cur.push(a);
                        rec(m, letters, n, target, cur, out);
                        cur.pop();
                    }
                }
                rec(m, &letters, n, d.as_fin(), &mut cur, &mut out);
                out
            }
            Monoid::Free(fm) => {
                let Elt::Free(target) = d else { panic!("degree not in this monoid") };
                assert_eq!(target.len(), fm.rank());
                free_tuples(target, n, normalized)
            }
        }
    }

    /// The degree block containing d: the strongly connected component
    /// of the translation preorder. Sorted.
    pub fn degree_block(&self, d: &Elt) -> Vec<Elt> {
        match self {
            Monoid::Free(_) => vec![d.clone()],
            Monoid::Finite(m) => {
                let reach = reachability(m);
                let i = d.as_fin();
                let mut block: Vec<usize> =
                    (0..m.size()).filter(|&j| reach[i][j] && reach[j][i]).collect();
                block.sort_unstable();
                block.into_iter().map(Elt::Fin).collect()
            }
        }
    }

    /// All degree blocks, sorted by minimum element; finite case only.
    pub fn degree_blocks(&self) -> Option<Vec<Vec<Elt>>> {
        match self {
            Monoid::Free(_) => None,
            Monoid::Finite(m) => {
                let reach = reachability(m);
                let mut seen = vec![false; m.size()];
                let mut blocks = Vec::new();
                for i in 0..m.size() {
                    if seen[i] {
                        continue;
                    }
                    let block: Vec<usize> =
                        (0..m.size()).filter(|&j| reach[i][j] && reach[j][i]).collect();
                    for &j in &block {
                        seen[j] = true;
                    }
                    blocks.push(block.into_iter().map(Elt::Fin).collect());
                }
                Some(blocks)
            }
        }
    }
}

/// reach[d][e] = true when e = x1 + ... + xk + d for some elements xi
/// (k >= 0); closure of the one-step translation relation.
fn reachability(m: &FiniteCommutativeMonoid) -> Vec<Vec<bool>> {
    let n = m.size();
    let mut reach = vec![vec![false; n]; n];
    for d in 0..n {
        let mut frontier = BTreeSet::from([d]);
        reach[d][d] = true;
        while let Some(e) = frontier.pop_first() {
            for x in 0..n {
                let f = m.add(x, e);
                if !reach[d][f] {
                    reach[d][f] = true;
                    frontier.insert(f);
                }
            }
        }
    }
    reach
}

fn free_tuples(target: &[u32], n: usize, normalized: bool) -> Vec<Vec<Elt>> {
    if n == 0 {
        return if target.iter().all(|&x| x == 0) { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur: Vec<Vec<u32>> = Vec::with_capacity(n);
    fn rec(
        remaining: Vec<u32>,
        slots: usize,
        normalized: bool,
        cur: &mut Vec<Vec<u32>>,
        out: &mut Vec<Vec<Elt>>,
    ) {
        if slots == 1 {
            if normalized && remaining.iter().all(|&x| x == 0) {
                return;
            }
            cur.push(remaining);
            out.push(cur.iter().cloned().map(Elt::Free).collect());
            cur.pop();
            return;
        }
        // enumerate entries <= remaining componentwise, lexicographically
        let mut entry = vec![0u32; remaining.len()];
        loop {
            let nonzero = entry.iter().any(|&x| x > 0);
            if nonzero || !normalized {
                let rest: Vec<u32> = remaining.iter().zip(&entry).map(|(r, e)| r - e).collect();
                cur.push(entry.clone());
                rec(rest, slots - 1, normalized, cur, out);
                cur.pop();
            }
            // increment entry in the componentwise box [0, remaining]
            let mut i = entry.len();
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if entry[i] < remaining[i] {
                    entry[i] += 1;
                    for e in entry.iter_mut().skip(i + 1) {
                        *e = 0;
                    }
                    break;
                }
            }
        }
    }
    rec(target.to_vec(), n, normalized, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_trivial_and_semilattice() {
        let t = FiniteCommutativeMonoid::validate(vec![vec![0]], 0).unwrap();
        assert_eq!(t.size(), 1);

        // exhaustive: all 8 triples of the 2-element semilattice associate
        let s = FiniteCommutativeMonoid::validate(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    assert_eq!(s.add(s.add(x, y), z), s.add(x, s.add(y, z)));
                }
            }
        }
    }

    #[test]
    fn validate_z2_and_unit_violation() {
        assert!(FiniteCommutativeMonoid::validate(vec![vec![0, 1], vec![1, 0]], 0).is_ok());
        let err = FiniteCommutativeMonoid::validate(vec![vec![0, 0], vec![1, 0]], 0);
        match err {
            Err(Error::UnitLawViolation { identity: 0, x: 1, got: 0 }) => {}
            other => panic!("expected unit law violation, got {other:?}"),
        }
    }

    #[test]
    fn validate_reports_associativity_triple() {
        // x + y = max, but corrupt one entry away from a valid semilattice
        let mut table = vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]];
        table[1][2] = 1;
        table[2][1] = 1;
        let err = FiniteCommutativeMonoid::validate(table, 0);
        assert!(matches!(err, Err(Error::NotAssociative { .. })), "{err:?}");
    }

    #[test]
    fn validation_is_idempotent() {
        let m = FiniteCommutativeMonoid::rees(2, 2);
        let again =
            FiniteCommutativeMonoid::validate((0..4).map(|x| (0..4).map(|y| m.add(x, y)).collect()).collect(), 0)
                .unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn builtin_families_validate() {
        for n in 1..=8 {
            FiniteCommutativeMonoid::cyclic(n);
            FiniteCommutativeMonoid::semilattice_chain(n);
        }
        for i in 1..=4 {
            for p in 1..=4 {
                FiniteCommutativeMonoid::rees(i, p);
            }
        }
    }

    #[test]
    fn rees_table_values() {
        let m = FiniteCommutativeMonoid::rees(2, 2);
        assert_eq!(m.add(1, 1), 2);
        assert_eq!(m.add(2, 2), 2);
        assert_eq!(m.add(2, 3), 3);
        assert_eq!(m.add(3, 3), 2);
        assert_eq!(m.add(1, 3), 2);
    }

    #[test]
    fn leech_hom_examples() {
        let nat = Monoid::naturals();
        let h = nat.leech_hom(&Elt::nat(2), &Elt::nat(5));
        assert_eq!(h.witnesses, vec![Elt::nat(3)]);
        let h = nat.leech_hom(&Elt::nat(5), &Elt::nat(2));
        assert!(h.witnesses.is_empty());

        let sl = Monoid::semilattice_chain(2);
        let h = sl.leech_hom(&Elt::Fin(1), &Elt::Fin(1));
        assert_eq!(h.witnesses, vec![Elt::Fin(0), Elt::Fin(1)]);
    }

    #[test]
    fn tuple_enumeration_naturals() {
        let nat = Monoid::naturals();
        // compositions of 3 into 2 positive parts
        let t = nat.tuples_with_sum(2, &Elt::nat(3), true);
        assert_eq!(t, vec![
            vec![Elt::nat(1), Elt::nat(2)],
            vec![Elt::nat(2), Elt::nat(1)],
        ]);
        // with zeros allowed
        let t = nat.tuples_with_sum(2, &Elt::nat(3), false);
        assert_eq!(t.len(), 4);
        // empty tuple only at degree 0
        assert_eq!(nat.tuples_with_sum(0, &Elt::nat(0), true).len(), 1);
        assert_eq!(nat.tuples_with_sum(0, &Elt::nat(2), true).len(), 0);
    }

    #[test]
    fn tuple_enumeration_finite() {
        let z2 = Monoid::cyclic(2);
        // normalized tuples over {1}: one per length, sum = n mod 2
        for n in 1..=5usize {
            let d = Elt::Fin(n % 2);
            let t = z2.tuples_with_sum(n, &d, true);
            assert_eq!(t.len(), 1);
            let other = Elt::Fin((n + 1) % 2);
            assert!(z2.tuples_with_sum(n, &other, true).is_empty());
        }
    }

    #[test]
    fn degree_blocks_by_family() {
        // a group collapses to a single block
        let z2 = Monoid::cyclic(2);
        assert_eq!(z2.degree_blocks().unwrap(), vec![vec![Elt::Fin(0), Elt::Fin(1)]]);

        // semilattice chain: singleton blocks
        let sl = Monoid::semilattice_chain(2);
        assert_eq!(
            sl.degree_blocks().unwrap(),
            vec![vec![Elt::Fin(0)], vec![Elt::Fin(1)]]
        );

        // Rees C(2,2): the cycle {2,3} merges
        let r = Monoid::rees(2, 2);
        assert_eq!(
            r.degree_blocks().unwrap(),
            vec![vec![Elt::Fin(0)], vec![Elt::Fin(1)], vec![Elt::Fin(2), Elt::Fin(3)]]
        );

        // free monoid: singletons on demand
        let nat = Monoid::naturals();
        assert_eq!(nat.degree_block(&Elt::nat(5)), vec![Elt::nat(5)]);
    }

    #[test]
    fn hom_counting_matches_enumeration() {
        // |L(x, y)| by independent double loop over the table
        for m in [Monoid::cyclic(3), Monoid::semilattice_chain(3), Monoid::rees(2, 2)] {
            let elems = m.elements().unwrap();
            for x in &elems {
                for z in &elems {
                    let fast = m.leech_hom(x, z).witnesses.len();
                    let slow = elems.iter().filter(|y| m.add(x, y) == *z).count();
                    assert_eq!(fast, slow);
                }
            }
        }
    }
}

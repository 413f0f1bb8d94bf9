use super::{SliceOptions, SliceScope};
use crate::beck::BeckModule;
use crate::error::{Error, Result};
use crate::linalg::{LinAlg, SparseMat};
use crate::monoid::{Elt, Monoid};
use std::collections::BTreeMap;

/// Basis of one cochain space: tuples with their coordinate offsets.
/// Coordinates of a cochain are grouped per tuple, one block of size
/// rank(M at the tuple sum) each.
#[derive(Clone, Debug)]
pub struct TupleBasis {
    pub n: usize,
    pub tuples: Vec<Vec<Elt>>,
    pub sums: Vec<Elt>,
    pub offsets: Vec<usize>,
    pub ranks: Vec<usize>,
    pub total_rank: usize,
    index: BTreeMap<Vec<Elt>, usize>,
}

impl TupleBasis {
    pub fn build(
        monoid: &Monoid,
        scope: &SliceScope,
        n: usize,
        normalized: bool,
        rank_of: &dyn Fn(&Elt) -> usize,
    ) -> TupleBasis {
        let mut tuples: Vec<Vec<Elt>> = match (monoid, scope) {
            (Monoid::Finite(fm), SliceScope::Whole) => {
                let mut out = Vec::new();
                for d in 0..fm.size() {
                    out.extend(monoid.tuples_with_sum(n, &Elt::Fin(d), normalized));
                }
                out
            }
            (_, SliceScope::Block(block)) => {
                let mut out = Vec::new();
                for d in block {
                    out.extend(monoid.tuples_with_sum(n, d, normalized));
                }
                out
            }
            (Monoid::Free(_), SliceScope::Whole) => {
                unreachable!("free monoids are always degree-sliced")
            }
        };
        tuples.sort();
        tuples.dedup();
        let sums: Vec<Elt> = tuples.iter().map(|t| monoid.sum(t)).collect();
        let ranks: Vec<usize> = sums.iter().map(|d| rank_of(d)).collect();
        let mut offsets = Vec::with_capacity(tuples.len());
        let mut total_rank = 0;
        for r in &ranks {
            offsets.push(total_rank);
            total_rank += r;
        }
        let index = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        TupleBasis { n, tuples, sums, offsets, ranks, total_rank, index }
    }

    pub fn index_of(&self, tuple: &[Elt]) -> Option<usize> {
        self.index.get(tuple).copied()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }
}

/// A built complex: bases for dimensions 0..=n_top and the differentials
/// between them, with d.d = 0 verified exactly.
#[derive(Clone, Debug)]
pub struct CochainSlice<R: LinAlg> {
    pub scope: SliceScope,
    pub normalized: bool,
    pub bases: Vec<TupleBasis>,
    /// diffs[n]: C^n -> C^{n+1}; length n_top.
    pub diffs: Vec<SparseMat<R::Elem>>,
}

/// Build the cochain complex for one scope up to dimension n_top.
///
/// (d s)(x_1..x_{n+1}) = (x_1)_* s(x_2..x_{n+1})
///   + sum_i (-1)^i s(x_1, .., x_i + x_{i+1}, .., x_{n+1})
///   + (-1)^{n+1} (x_{n+1})_* s(x_1..x_n),
/// keeping the terms whose argument tuple lies in the scope.
pub fn build_slice<R: LinAlg>(
    monoid: &Monoid,
    module: &BeckModule<R>,
    scope: &SliceScope,
    n_top: usize,
    opts: &SliceOptions,
) -> Result<CochainSlice<R>> {
    let ring = module.ring().clone();
    let rank_of = |d: &Elt| module.rank_of(d);
    let bases: Vec<TupleBasis> = (0..=n_top)
        .map(|n| TupleBasis::build(monoid, scope, n, opts.normalized, &rank_of))
        .collect();

    let total: usize = bases.iter().map(|b| b.total_rank).sum();
    if total > opts.budget {
        return Err(Error::BudgetExceeded { got: total, budget: opts.budget });
    }

    let mut diffs = Vec::with_capacity(n_top);
    for n in 0..n_top {
        diffs.push(differential(monoid, module, scope, &bases[n], &bases[n + 1], opts)?);
    }

    for n in 0..n_top.saturating_sub(1) {
        let dd = diffs[n + 1].mul(&ring, &diffs[n]);
        if let Some((row, col)) = dd.first_nonzero() {
            return Err(Error::NotAComplex { n, row, col });
        }
    }

    Ok(CochainSlice { scope: scope.clone(), normalized: opts.normalized, bases, diffs })
}

fn differential<R: LinAlg>(
    monoid: &Monoid,
    module: &BeckModule<R>,
    scope: &SliceScope,
    src: &TupleBasis,
    dst: &TupleBasis,
    opts: &SliceOptions,
) -> Result<SparseMat<R::Elem>> {
    let ring = module.ring();
    let n = src.n;
    debug_assert_eq!(dst.n, n + 1);
    let mut triplets: Vec<(usize, usize, R::Elem)> = Vec::new();

    for (ti, tuple) in dst.tuples.iter().enumerate() {
        let row0 = dst.offsets[ti];
        let d_t = &dst.sums[ti];

        // inner faces: merge positions i and i+1 (1-based sign (-1)^i)
        for i in 0..n {
            let merged_entry = monoid.add(&tuple[i], &tuple[i + 1]);
            if opts.normalized && monoid.is_identity(&merged_entry) {
                continue;
            }
            let mut merged: Vec<Elt> = Vec::with_capacity(n);
            merged.extend_from_slice(&tuple[..i]);
            merged.push(merged_entry);
            merged.extend_from_slice(&tuple[i + 2..]);
            let ci = src
                .index_of(&merged)
                .expect("sum-preserving face must stay in the basis");
            let sign = ring.from_i64(if (i + 1) % 2 == 0 { 1 } else { -1 });
            let col0 = src.offsets[ci];
            for r in 0..dst.ranks[ti] {
                triplets.push((row0 + r, col0 + r, sign.clone()));
            }
        }

        // outer face through the head: (x_1)_* s(x_2..)
        let tail = &tuple[1..];
        let d_tail = monoid.sum(tail);
        if scope.contains(monoid, &d_tail) {
            let ci = src.index_of(tail).expect("in-scope argument must be in the basis");
            let act = module.action(&tuple[0], &d_tail);
            debug_assert_eq!(act.rows, module.rank_of(d_t));
            let col0 = src.offsets[ci];
            for (r, c, v) in act.entries() {
                if !ring.is_zero(v) {
                    triplets.push((row0 + r, col0 + c, v.clone()));
                }
            }
        }

        // outer face through the tail: (-1)^{n+1} (x_{n+1})_* s(x_1..x_n)
        let head = &tuple[..n];
        let d_head = monoid.sum(head);
        if scope.contains(monoid, &d_head) {
            let ci = src.index_of(head).expect("in-scope argument must be in the basis");
            let act = module.action(&tuple[n], &d_head);
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            let col0 = src.offsets[ci];
            for (r, c, v) in act.entries() {
                if !ring.is_zero(v) {
                    let signed = if sign == 1 { v.clone() } else { ring.neg(v) };
                    triplets.push((row0 + r, col0 + c, signed));
                }
            }
        }
    }

    Ok(SparseMat::from_triplets(ring, dst.total_rank, src.total_rank, triplets))
}

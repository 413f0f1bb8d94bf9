use super::build::{CochainSlice, TupleBasis};
use super::{SliceScope, SymmetryMode, Theory};
use crate::beck::BeckModule;
use crate::error::{Error, Result};
use crate::linalg::{LinAlg, SparseMat, Subspace};
use crate::monoid::{Elt, Monoid};
use crate::perms::{monotone, shuffles};
use crate::words::{gamma, BarWord};
use std::collections::BTreeMap;

/// Constraint rows and solution subspaces per dimension, for one theory.
#[derive(Clone, Debug)]
pub struct TheoryData<R: LinAlg> {
    pub theory: Theory,
    pub mode: SymmetryMode,
    /// rows[n] stacked over all conditions in dimension n.
    pub rows: Vec<SparseMat<R::Elem>>,
    /// subspaces[n] = kernel of rows[n] (zero space in dimension 0 for
    /// the Harrison and Barr theories).
    pub subspaces: Vec<Subspace<R::Elem>>,
}

impl<R: LinAlg> TheoryData<R> {
    /// The differential must carry each constrained subspace into the
    /// next: rows[n+1] * d^n * basis[n] = 0, exactly.
    pub fn verify_closure(&self, ring: &R, slice: &CochainSlice<R>) -> Result<()> {
        for n in 0..slice.diffs.len() {
            let image = slice.diffs[n].mul(ring, self.subspaces[n].basis());
            let viol = self.rows[n + 1].mul(ring, &image);
            if let Some((row, col)) = viol.first_nonzero() {
                return Err(Error::ClosureViolation { n, row, col });
            }
        }
        Ok(())
    }
}

/// The k-set of monotone conditions for a dimension.
fn monotone_ks(mode: SymmetryMode, n: usize) -> Vec<usize> {
    match mode {
        SymmetryMode::Monotone | SymmetryMode::Shuffle => (2..=n).collect(),
        SymmetryMode::MonotoneMinimal => {
            if n < 4 {
                (2..=n).collect()
            } else {
                let mut ks: Vec<usize> = (2..=n / 2).collect();
                ks.push(n);
                ks
            }
        }
    }
}

/// Stacked symmetry condition rows for one cochain space.
pub fn constraint_rows<R: LinAlg>(
    monoid: &Monoid,
    module: &BeckModule<R>,
    scope: &SliceScope,
    basis: &TupleBasis,
    theory: Theory,
    mode: SymmetryMode,
    normalized: bool,
) -> SparseMat<R::Elem> {
    let ring = module.ring();
    let n = basis.n;
    if theory == Theory::Hochschild || n < 2 {
        return SparseMat::zero(0, basis.total_rank);
    }

    // tuple-level rows: map (tuple index -> integer coefficient)
    let mut tuple_rows: Vec<BTreeMap<usize, i64>> = Vec::new();

    match mode {
        SymmetryMode::Monotone | SymmetryMode::MonotoneMinimal => {
            for k in monotone_ks(mode, n) {
                let family = monotone(k, n);
                for (ti, tuple) in basis.tuples.iter().enumerate() {
                    let mut row: BTreeMap<usize, i64> = BTreeMap::new();
                    *row.entry(ti).or_insert(0) += 1;
                    for (sigma, dr) in &family {
                        let permuted = sigma.apply(tuple);
                        let pi = basis.index_of(&permuted).expect("permuted tuple stays in basis");
                        let sign = if dr % 2 == 0 { 1 } else { -1 };
                        *row.entry(pi).or_insert(0) -= sign;
                    }
                    row.retain(|_, c| *c != 0);
                    if !row.is_empty() {
                        tuple_rows.push(row);
                    }
                }
            }
        }
        SymmetryMode::Shuffle => {
            for i in 1..=n / 2 {
                let family = shuffles(i, n - i);
                for (_ti, tuple) in basis.tuples.iter().enumerate() {
                    let mut row: BTreeMap<usize, i64> = BTreeMap::new();
                    for sigma in &family {
                        let permuted = sigma.apply(tuple);
                        let pi = basis.index_of(&permuted).expect("permuted tuple stays in basis");
                        *row.entry(pi).or_insert(0) += sigma.sign();
                    }
                    row.retain(|_, c| *c != 0);
                    if !row.is_empty() {
                        tuple_rows.push(row);
                    }
                }
            }
        }
    }

    if theory == Theory::Barr {
        tuple_rows.extend(divided_power_rows(monoid, scope, basis, normalized));
    }

    // expand tuple-level rows over the module coordinates; the permuted
    // tuples share the internal degree, so the block is the identity
    let mut triplets = Vec::new();
    let mut nrows = 0usize;
    for row in &tuple_rows {
        let rank = row.keys().next().map(|&ti| basis.ranks[ti]).unwrap_or(0);
        for r in 0..rank {
            for (&ti, &coeff) in row {
                debug_assert_eq!(basis.ranks[ti], rank);
                triplets.push((nrows + r, basis.offsets[ti] + r, ring.from_i64(coeff)));
            }
        }
        nrows += rank;
    }
    SparseMat::from_triplets(ring, nrows, basis.total_rank, triplets)
}

/// Conditions s(gamma_k(w)) = 0 for every factorization n = k*m with
/// k >= 2 and m even, w running over the in-scope normalized m-tuples.
fn divided_power_rows(
    monoid: &Monoid,
    scope: &SliceScope,
    basis: &TupleBasis,
    normalized: bool,
) -> Vec<BTreeMap<usize, i64>> {
    let n = basis.n;
    let mut out = Vec::new();
    for m in (2..n).step_by(2) {
        if n % m != 0 {
            continue;
        }
        let k = n / m;
        if k < 2 {
            continue;
        }
        let universal = gamma(k, &BarWord::new((0..m as u32).collect()))
            .expect("even length by construction");
        for omega in gamma_arguments(monoid, scope, m, k, normalized) {
            let mut row: BTreeMap<usize, i64> = BTreeMap::new();
            for (word, coeff) in universal.terms() {
                let concrete: Vec<Elt> =
                    word.letters().iter().map(|&l| omega[l as usize].clone()).collect();
                let ti = basis
                    .index_of(&concrete)
                    .expect("evaluated divided power stays in the slice");
                *row.entry(ti).or_insert(0) += coeff;
            }
            row.retain(|_, c| *c != 0);
            if !row.is_empty() {
                out.push(row);
            }
        }
    }
    out
}

/// The m-tuples w with k * sum(w) inside the scope.
fn gamma_arguments(
    monoid: &Monoid,
    scope: &SliceScope,
    m: usize,
    k: usize,
    normalized: bool,
) -> Vec<Vec<Elt>> {
    let k_fold =
        |d: &Elt| (0..k).fold(monoid.identity(), |acc, _| monoid.add(&acc, d));
    match (monoid, scope) {
        (Monoid::Finite(fm), _) => {
            let mut out = Vec::new();
            for d in 0..fm.size() {
                for t in monoid.tuples_with_sum(m, &Elt::Fin(d), normalized) {
                    if scope.contains(monoid, &k_fold(&Elt::Fin(d))) {
                        out.push(t);
                    }
                }
            }
            out.sort();
            out.dedup();
            out
        }
        (Monoid::Free(_), SliceScope::Block(block)) => {
            let mut out = Vec::new();
            for d in block {
                let Elt::Free(coords) = d else { unreachable!() };
                if coords.iter().all(|&c| c % (k as u32) == 0) {
                    let target = Elt::Free(coords.iter().map(|&c| c / k as u32).collect());
                    out.extend(monoid.tuples_with_sum(m, &target, normalized));
                }
            }
            out
        }
        (Monoid::Free(_), SliceScope::Whole) => unreachable!("free monoids are degree-sliced"),
    }
}

/// Subspaces for all dimensions of a built slice.
pub fn theory_subspaces<R: LinAlg>(
    monoid: &Monoid,
    module: &BeckModule<R>,
    slice: &CochainSlice<R>,
    theory: Theory,
    mode: SymmetryMode,
) -> Result<TheoryData<R>> {
    let ring = module.ring();
    let mut rows = Vec::with_capacity(slice.bases.len());
    let mut subspaces = Vec::with_capacity(slice.bases.len());
    for basis in &slice.bases {
        let r = constraint_rows(monoid, module, &slice.scope, basis, theory, mode, slice.normalized);
        let sub = if theory != Theory::Hochschild && basis.n == 0 {
            Subspace::zero(basis.total_rank)
        } else if r.nrows() == 0 {
            Subspace::full(ring, basis.total_rank)
        } else {
            ring.kernel(&r)
        };
        rows.push(r);
        subspaces.push(sub);
    }
    Ok(TheoryData { theory, mode, rows, subspaces })
}

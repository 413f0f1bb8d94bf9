//! Cochain complexes of the graded monoid algebra with Beck-module
//! coefficients, the Harrison and Barr symmetry subspaces, cohomology,
//! and the chain-level Harrison homology.
//!
//! Complexes come in two scopes. `Whole` (finite monoids) takes all
//! normalized tuples with the complete differential. `Block` keeps one
//! strongly connected class of internal degrees and the differential
//! terms that stay inside it; degrees in one class are inseparable, and
//! distinct classes are related only by a filtration, so the block
//! complexes are the finest well-defined slices. Over a free monoid
//! every block is a single degree.

mod build;
mod chain;
mod symmetry;

pub use build::{build_slice, CochainSlice, TupleBasis};
pub use chain::{chain_homology, hochschild_chain_homology};
pub use symmetry::{constraint_rows, theory_subspaces, TheoryData};

use crate::beck::BeckModule;
use crate::error::{Error, Result};
use crate::linalg::{AbelianGroup, LinAlg, SparseMat};
use crate::monoid::{Elt, Monoid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Theory {
    Hochschild,
    Harrison,
    Barr,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Hochschild => "hochschild",
            Theory::Harrison => "harrison",
            Theory::Barr => "barr",
        }
    }
}

/// How the Harrison conditions are generated; the spans agree, which is
/// itself a verified property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryMode {
    Monotone,
    Shuffle,
    /// The reduced monotone set: k = n together with 2..=floor(n/2).
    MonotoneMinimal,
}

impl SymmetryMode {
    pub fn name(self) -> &'static str {
        match self {
            SymmetryMode::Monotone => "monotone",
            SymmetryMode::Shuffle => "shuffle",
            SymmetryMode::MonotoneMinimal => "monotone_minimal",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SliceOptions {
    pub normalized: bool,
    pub symmetry: SymmetryMode,
    /// Upper bound on the summed cochain ranks of one slice.
    pub budget: usize,
}

impl Default for SliceOptions {
    fn default() -> Self {
        SliceOptions { normalized: true, symmetry: SymmetryMode::Monotone, budget: 200_000 }
    }
}

/// Which internal degrees to compute.
#[derive(Clone, Debug)]
pub enum DegreeSelection {
    All,
    Degrees(Vec<Elt>),
}

/// The degree scope of one built complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceScope {
    /// Every degree of a finite monoid, full differential.
    Whole,
    /// One strongly connected degree class, in-class terms only.
    Block(Vec<Elt>),
}

impl SliceScope {
    pub fn contains(&self, monoid: &Monoid, d: &Elt) -> bool {
        let _ = monoid;
        match self {
            SliceScope::Whole => true,
            SliceScope::Block(b) => b.contains(d),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SliceScope::Whole => "all".into(),
            SliceScope::Block(b) => {
                b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("+")
            }
        }
    }
}

/// Resolve a degree selection into slice scopes, deduplicated and in a
/// canonical order.
pub fn resolve_scopes(monoid: &Monoid, degrees: &DegreeSelection) -> Result<Vec<SliceScope>> {
    match (monoid, degrees) {
        (Monoid::Free(_), DegreeSelection::All) => Err(Error::DegreeRequired),
        (Monoid::Free(_), DegreeSelection::Degrees(list)) => {
            let mut ds: Vec<Elt> = list.clone();
            ds.sort();
            ds.dedup();
            Ok(ds.into_iter().map(|d| SliceScope::Block(vec![d])).collect())
        }
        (Monoid::Finite(_), DegreeSelection::All) => Ok(vec![SliceScope::Whole]),
        (Monoid::Finite(_), DegreeSelection::Degrees(list)) => {
            let mut blocks: Vec<Vec<Elt>> = list.iter().map(|d| monoid.degree_block(d)).collect();
            blocks.sort();
            blocks.dedup();
            Ok(blocks.into_iter().map(SliceScope::Block).collect())
        }
    }
}

/// Size bookkeeping for one computed group.
#[derive(Clone, Debug)]
pub struct SliceStats {
    pub cochain_rank: usize,
    pub subspace_rank: usize,
}

/// Cohomology of one theory at dimension n for each selected scope.
pub fn cohomology<R: LinAlg>(
    monoid: &Monoid,
    module: &BeckModule<R>,
    theory: Theory,
    n: usize,
    degrees: &DegreeSelection,
    opts: &SliceOptions,
) -> Result<Vec<(SliceScope, AbelianGroup, SliceStats)>> {
    let scopes = resolve_scopes(monoid, degrees)?;
    let mut out = Vec::with_capacity(scopes.len());
    for scope in scopes {
        let slice = build_slice(monoid, module, &scope, n + 1, opts)?;
        let data = theory_subspaces(monoid, module, &slice, theory, opts.symmetry)?;
        data.verify_closure(module.ring(), &slice)?;
        let (group, stats) = cohomology_at(module.ring(), &slice, &data, n)?;
        out.push((scope, group, stats));
    }
    Ok(out)
}

/// Cohomology at dimension n of a built slice with prepared subspaces.
pub fn cohomology_at<R: LinAlg>(
    ring: &R,
    slice: &CochainSlice<R>,
    data: &TheoryData<R>,
    n: usize,
) -> Result<(AbelianGroup, SliceStats)> {
    assert!(n + 1 < slice.bases.len(), "slice not built high enough");
    let sub_n = &data.subspaces[n];
    let sub_next = &data.subspaces[n + 1];
    let d_out = sub_next.coords().mul(ring, &slice.diffs[n].mul(ring, sub_n.basis()));
    let d_in = if n == 0 {
        SparseMat::zero(sub_n.dim(), 0)
    } else {
        let sub_prev = &data.subspaces[n - 1];
        sub_n.coords().mul(ring, &slice.diffs[n - 1].mul(ring, sub_prev.basis()))
    };
    let group = ring.homology_at(&d_in, &d_out)?;
    let stats = SliceStats {
        cochain_rank: slice.bases[n].total_rank,
        subspace_rank: sub_n.dim(),
    };
    Ok((group, stats))
}

/// Report from the derivation cross-check.
#[derive(Clone, Debug)]
pub struct DerivationReport {
    pub per_scope: Vec<(SliceScope, usize, usize)>, // (scope, der, ker d^1)
}

impl DerivationReport {
    pub fn consistent(&self) -> bool {
        self.per_scope.iter().all(|(_, a, b)| a == b)
    }
}

/// dim Der(X, M) against dim ker d^1, the former from the independent
/// solver. A mismatch is an implementation bug, never an expected state.
pub fn derivation_check<R: LinAlg>(
    monoid: &Monoid,
    module: &BeckModule<R>,
    degrees: &DegreeSelection,
    opts: &SliceOptions,
) -> Result<DerivationReport> {
    let ring = module.ring().clone();
    // Der(X, M) couples all degrees, so a finite monoid is checked on
    // the whole complex; per-degree checks are for free-monoid slices.
    let scopes = match monoid {
        Monoid::Finite(_) => vec![SliceScope::Whole],
        Monoid::Free(_) => resolve_scopes(monoid, degrees)?,
    };
    let mut per_scope = Vec::new();
    for scope in scopes {
        let slice = build_slice(monoid, module, &scope, 2, opts)?;
        let kernel_dim = slice.bases[1].total_rank - ring.rank(&slice.diffs[1]);
        let der_dim = match (monoid, &scope) {
            (Monoid::Finite(_), _) => {
                crate::derivations::derivation_space(monoid, module, None)?.dim()
            }
            (Monoid::Free(_), SliceScope::Block(b)) => {
                crate::derivations::sliced_derivation_dim(monoid, module, &b[0])
            }
            (Monoid::Free(_), SliceScope::Whole) => unreachable!("resolved earlier"),
        };
        if der_dim != kernel_dim {
            return Err(Error::MismatchReport { der: der_dim, kernel: kernel_dim });
        }
        per_scope.push((scope, der_dim, kernel_dim));
    }
    Ok(DerivationReport { per_scope })
}

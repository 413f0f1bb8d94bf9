use super::ring::Ring;
use super::sparse::SparseMat;

/// A subspace (over Z: a saturated sublattice) of a free module, stored
/// as a basis together with a coordinate projection: `coords * basis`
/// is the identity, and for any vector `x` in the subspace
/// `basis * (coords * x) = x`.
#[derive(Clone, Debug)]
pub struct Subspace<T> {
    basis: SparseMat<T>,
    coords: SparseMat<T>,
}

impl<T: Clone + PartialEq> Subspace<T> {
    pub fn new(basis: SparseMat<T>, coords: SparseMat<T>) -> Self {
        assert_eq!(basis.ncols(), coords.nrows());
        assert_eq!(basis.nrows(), coords.ncols());
        Subspace { basis, coords }
    }

    pub fn full<R: Ring<Elem = T>>(ring: &R, ambient: usize) -> Self {
        let id = SparseMat::identity(ring, ambient);
        Subspace { basis: id.clone(), coords: id }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { basis: SparseMat::zero(ambient, 0), coords: SparseMat::zero(0, ambient) }
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &SparseMat<T> {
        &self.basis
    }

    pub fn coords(&self) -> &SparseMat<T> {
        &self.coords
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }
}

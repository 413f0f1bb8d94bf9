//! Direct solver for the derivation module Der(X, M): assignments
//! s(x) in M_x with s(x+y) = x_* s(y) + y_* s(x). Independent of the
//! cochain machinery, so it serves as a cross-check oracle for ker d^1.

use crate::beck::BeckModule;
use crate::error::{Error, Result};
use crate::linalg::{LinAlg, SparseMat};
use crate::monoid::{Elt, Monoid};

/// A basis of the derivation space, in coordinates laid out per element.
#[derive(Clone, Debug)]
pub struct DerivationSpace<R: LinAlg> {
    pub elements: Vec<Elt>,
    pub offsets: Vec<usize>,
    pub basis: Vec<Vec<R::Elem>>,
}

impl<R: LinAlg> DerivationSpace<R> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of s(x) inside a basis vector.
    pub fn value_of(&self, vector: &[R::Elem], x: &Elt, rank: usize) -> Vec<R::Elem> {
        let i = self.elements.iter().position(|e| e == x).expect("element in scope");
        vector[self.offsets[i]..self.offsets[i] + rank].to_vec()
    }
}

/// Solve the derivation equations. Finite monoids are solved over all
/// elements; for a free monoid the system is truncated at the given
/// degree bound (values on higher degrees are determined by lower ones,
/// so a bound covering the uses is enough).
pub fn derivation_space<R: LinAlg>(
    monoid: &Monoid,
    module: &BeckModule<R>,
    bound: Option<u32>,
) -> Result<DerivationSpace<R>> {
    let ring = module.ring().clone();
    let elements: Vec<Elt> = match monoid {
        Monoid::Finite(_) => monoid.elements().unwrap(),
        Monoid::Free(fm) => {
            let Some(b) = bound else { return Err(Error::DegreeRequired) };
            if fm.rank() != 1 {
                return Err(Error::InvalidInput(
                    "derivation truncation is implemented for rank-1 free monoids".into(),
                ));
            }
            (0..=b).map(Elt::nat).collect()
        }
    };

    let mut offsets = Vec::with_capacity(elements.len());
    let mut total = 0usize;
    for e in &elements {
        offsets.push(total);
        total += module.rank_of(e);
    }
    let index_of = |e: &Elt| elements.iter().position(|x| x == e);

    // one equation block per ordered pair; commutativity makes (x,y) and
    // (y,x) identical, keeping both is a free consistency check
    let mut triplets = Vec::new();
    let mut nrows = 0usize;
    for x in &elements {
        for y in &elements {
            let xy = monoid.add(x, y);
            let Some(xy_idx) = index_of(&xy) else { continue };
            let rk = module.rank_of(&xy);
            let row0 = nrows;
            nrows += rk;
            for r in 0..rk {
                triplets.push((row0 + r, offsets[xy_idx] + r, ring.one()));
            }
            let ax = module.action(x, y); // x_*: M_y -> M_{x+y}
            let iy = index_of(y).unwrap();
            for (r, c, v) in ax.entries() {
                if !ring.is_zero(v) {
                    triplets.push((row0 + r, offsets[iy] + c, ring.neg(v)));
                }
            }
            let ay = module.action(y, x);
            let ix = index_of(x).unwrap();
            for (r, c, v) in ay.entries() {
                if !ring.is_zero(v) {
                    triplets.push((row0 + r, offsets[ix] + c, ring.neg(v)));
                }
            }
        }
    }
    let system = SparseMat::from_triplets(&ring, nrows, total, triplets);
    let kernel = ring.kernel(&system);
    let dense = kernel.basis().to_dense(&ring);
    let basis: Vec<Vec<R::Elem>> = (0..kernel.dim())
        .map(|j| (0..total).map(|i| dense[i][j].clone()).collect())
        .collect();

    let space = DerivationSpace { elements, offsets, basis };

    // re-verify by substitution, and check s(identity) = 0 comes out
    let id = monoid.identity();
    for vec in &space.basis {
        let id_rank = module.rank_of(&id);
        let sid = space.value_of(vec, &id, id_rank);
        assert!(
            sid.iter().all(|v| ring.is_zero(v)),
            "derivation basis vector has nonzero value at the identity"
        );
        for x in &space.elements {
            for y in &space.elements {
                let xy = monoid.add(x, y);
                if !space.elements.contains(&xy) {
                    continue;
                }
                let sx = space.value_of(vec, x, module.rank_of(x));
                let sy = space.value_of(vec, y, module.rank_of(y));
                let sxy = space.value_of(vec, &xy, module.rank_of(&xy));
                let ax = module.action(x, y);
                let ay = module.action(y, x);
                for r in 0..module.rank_of(&xy) {
                    let mut rhs = ring.zero();
                    for c in 0..module.rank_of(y) {
                        rhs = ring.add(&rhs, &ring.mul(ax.get(r, c), &sy[c]));
                    }
                    for c in 0..module.rank_of(x) {
                        rhs = ring.add(&rhs, &ring.mul(ay.get(r, c), &sx[c]));
                    }
                    assert!(
                        ring.is_zero(&ring.sub(&sxy[r], &rhs)),
                        "derivation identity fails on substitution at ({x}, {y})"
                    );
                }
            }
        }
    }
    Ok(space)
}

/// Dimension of the degree-d component of the derivation space of a
/// free monoid, in the sliced sense: the value s(d) constrained by the
/// pair equations whose every term stays in degree d.
pub fn sliced_derivation_dim<R: LinAlg>(
    monoid: &Monoid,
    module: &BeckModule<R>,
    d: &Elt,
) -> usize {
    assert!(matches!(monoid, Monoid::Free(_)));
    if monoid.is_identity(d) {
        return 0;
    }
    if monoid.tuples_with_sum(2, d, true).is_empty() {
        module.rank_of(d)
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals, Ring};

    #[test]
    fn trivial_monoid_has_no_derivations() {
        let m = Monoid::trivial();
        let q = Rationals;
        let module = BeckModule::constant_identity(&m, q, 1);
        let sp = derivation_space(&m, &module, None).unwrap();
        assert_eq!(sp.dim(), 0);
    }

    #[test]
    fn semilattice_f2_has_no_derivations() {
        // s(1) = 2 s(1) = 0 after the identity-pair constraint
        let m = Monoid::semilattice_chain(2);
        let f2 = PrimeField::new(2);
        let module = BeckModule::constant_identity(&m, f2, 1);
        let sp = derivation_space(&m, &module, None).unwrap();
        assert_eq!(sp.dim(), 0);
    }

    #[test]
    fn naturals_with_identity_action_is_one_dimensional() {
        let m = Monoid::naturals();
        let q = Rationals;
        let module = BeckModule::constant_identity(&m, q.clone(), 1);
        let sp = derivation_space(&m, &module, Some(8)).unwrap();
        assert_eq!(sp.dim(), 1);
        // closed form s(n) = n s(1)
        let v = &sp.basis[0];
        let s1 = sp.value_of(v, &Elt::nat(1), 1)[0].clone();
        for n in 0..=8u32 {
            let sn = sp.value_of(v, &Elt::nat(n), 1)[0].clone();
            let expect = q.mul(&q.from_i64(n as i64), &s1);
            assert_eq!(sn, expect, "s({n}) != n s(1)");
        }
    }

    #[test]
    fn z2_derivations_depend_on_characteristic() {
        let m = Monoid::cyclic(2);
        let q = Rationals;
        let module = BeckModule::constant_identity(&m, q, 1);
        assert_eq!(derivation_space(&m, &module, None).unwrap().dim(), 0);

        let f2 = PrimeField::new(2);
        let module = BeckModule::constant_identity(&m, f2, 1);
        assert_eq!(derivation_space(&m, &module, None).unwrap().dim(), 1);
    }

    #[test]
    fn linear_combinations_stay_solutions() {
        // closure under ring-linear combinations: check the sum of two
        // basis vectors still satisfies the identity (rank-2 module)
        let m = Monoid::naturals();
        let q = Rationals;
        let module = BeckModule::constant_identity(&m, q.clone(), 2);
        let sp = derivation_space(&m, &module, Some(5)).unwrap();
        assert_eq!(sp.dim(), 2);
        let sum: Vec<_> = sp.basis[0]
            .iter()
            .zip(&sp.basis[1])
            .map(|(a, b)| q.add(a, b))
            .collect();
        for n in 0..=5u32 {
            for k in 0..=5u32 {
                if n + k > 5 {
                    continue;
                }
                let sn = sp.value_of(&sum, &Elt::nat(n), 2);
                let sk = sp.value_of(&sum, &Elt::nat(k), 2);
                let snk = sp.value_of(&sum, &Elt::nat(n + k), 2);
                for r in 0..2 {
                    let rhs = q.add(&sn[r], &sk[r]); // identity action
                    assert_eq!(snk[r], rhs);
                }
            }
        }
    }

    #[test]
    fn sliced_dims_on_naturals() {
        let m = Monoid::naturals();
        let q = Rationals;
        let module = BeckModule::constant_identity(&m, q, 1);
        assert_eq!(sliced_derivation_dim(&m, &module, &Elt::nat(0)), 0);
        assert_eq!(sliced_derivation_dim(&m, &module, &Elt::nat(1)), 1);
        for d in 2..=6 {
            assert_eq!(sliced_derivation_dim(&m, &module, &Elt::nat(d)), 0);
        }
    }
}

//! Beck modules over a grading monoid: functors from the Leech category
//! to modules over the coefficient ring. Componentwise free; torsion
//! phenomena are probed by changing the ring, not the module.

use crate::error::{Error, Result};
use crate::linalg::{DenseMat, Ring};
use crate::monoid::{Elt, Monoid};

/// Covariant Beck module: per-degree free modules M_x together with
/// action maps y_*: M_x -> M_{x+y}.
#[derive(Clone, Debug)]
pub struct BeckModule<R: Ring> {
    ring: R,
    data: ModuleData<R::Elem>,
}

/// Contravariant companion: maps phi_{x,y}: M^{x+y} -> M^x.
#[derive(Clone, Debug)]
pub struct RightBeckModule<R: Ring> {
    ring: R,
    data: ModuleData<R::Elem>,
}

#[derive(Clone, Debug)]
enum ModuleData<T> {
    /// act[y][x] is the matrix of the (y, x) action map.
    Finite { ranks: Vec<usize>, act: Vec<Vec<DenseMat<T>>> },
    /// Constant module on a free monoid: one commuting matrix per
    /// generator, extended multiplicatively.
    FreeConstant { rank: usize, gens: Vec<DenseMat<T>> },
}

impl<T: Clone + PartialEq> ModuleData<T> {
    fn rank_of(&self, e: &Elt) -> usize {
        match self {
            ModuleData::Finite { ranks, .. } => ranks[e.as_fin()],
            ModuleData::FreeConstant { rank, .. } => *rank,
        }
    }

    fn action<R: Ring<Elem = T>>(&self, ring: &R, y: &Elt) -> Option<&[DenseMat<T>]> {
        let _ = ring;
        match self {
            ModuleData::Finite { act, .. } => Some(&act[y.as_fin()]),
            ModuleData::FreeConstant { .. } => None,
        }
    }

    fn constant_action<R: Ring<Elem = T>>(&self, ring: &R, y: &Elt) -> DenseMat<T> {
        match self {
            ModuleData::FreeConstant { rank, gens } => {
                let Elt::Free(exps) = y else { panic!("free element expected") };
                let mut acc = DenseMat::identity(ring, *rank);
                for (g, &e) in gens.iter().zip(exps) {
                    for _ in 0..e {
                        acc = g.mul(ring, &acc);
                    }
                }
                acc
            }
            ModuleData::Finite { .. } => unreachable!(),
        }
    }
}

impl<R: Ring> BeckModule<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rank_of(&self, e: &Elt) -> usize {
        self.data.rank_of(e)
    }

    /// Matrix of y_*: M_x -> M_{x+y}.
    pub fn action(&self, y: &Elt, x: &Elt) -> DenseMat<R::Elem> {
        match self.data.action(&self.ring, y) {
            Some(row) => row[x.as_fin()].clone(),
            None => self.data.constant_action(&self.ring, y),
        }
    }

    /// Constant module with explicit per-element images (finite case).
    /// Every degree has the same rank and the action of y is
    /// independent of the source degree.
    pub fn constant_finite(
        monoid: &Monoid,
        ring: R,
        rank: usize,
        images: Vec<DenseMat<R::Elem>>,
    ) -> Result<Self> {
        let Monoid::Finite(fm) = monoid else {
            return Err(Error::InvalidInput("constant_finite needs a finite monoid".into()));
        };
        if images.len() != fm.size() {
            return Err(Error::InvalidInput(format!(
                "expected {} images, got {}",
                fm.size(),
                images.len()
            )));
        }
        for (y, img) in images.iter().enumerate() {
            if img.rows != rank || img.cols != rank {
                return Err(Error::FunctorialityViolation(format!(
                    "image of {y} is {}x{}, expected {rank}x{rank}",
                    img.rows, img.cols
                )));
            }
        }
        if !images[fm.identity()].is_identity(&ring) {
            return Err(Error::FunctorialityViolation(
                "identity element must act by the identity matrix".into(),
            ));
        }
        for y in 0..fm.size() {
            for z in 0..fm.size() {
                let lhs = images[z].mul(&ring, &images[y]);
                if lhs != images[fm.add(y, z)] {
                    return Err(Error::FunctorialityViolation(format!(
                        "images of {y} and {z} do not compose to the image of {}",
                        fm.add(y, z)
                    )));
                }
            }
        }
        let act = images
            .iter()
            .map(|img| vec![img.clone(); fm.size()])
            .collect();
        Ok(BeckModule { ring, data: ModuleData::Finite { ranks: vec![rank; fm.size()], act } })
    }

    /// Constant module on a free monoid from per-generator images.
    pub fn constant_free(
        monoid: &Monoid,
        ring: R,
        rank: usize,
        gens: Vec<DenseMat<R::Elem>>,
    ) -> Result<Self> {
        let Monoid::Free(fm) = monoid else {
            return Err(Error::InvalidInput("constant_free needs a free monoid".into()));
        };
        if gens.len() != fm.rank() {
            return Err(Error::InvalidInput(format!(
                "expected {} generator images, got {}",
                fm.rank(),
                gens.len()
            )));
        }
        for g in &gens {
            if g.rows != rank || g.cols != rank {
                return Err(Error::FunctorialityViolation("generator image has wrong shape".into()));
            }
        }
        for (i, g) in gens.iter().enumerate() {
            for h in gens.iter().skip(i + 1) {
                if g.mul(&ring, h) != h.mul(&ring, g) {
                    return Err(Error::FunctorialityViolation(
                        "generator images must commute".into(),
                    ));
                }
            }
        }
        Ok(BeckModule { ring, data: ModuleData::FreeConstant { rank, gens } })
    }

    /// Pullback of the rank-r module along X -> e: everything acts by
    /// the identity.
    pub fn constant_identity(monoid: &Monoid, ring: R, rank: usize) -> Self {
        match monoid {
            Monoid::Finite(fm) => {
                let images = vec![DenseMat::identity(&ring, rank); fm.size()];
                Self::constant_finite(monoid, ring, rank, images).unwrap()
            }
            Monoid::Free(fm) => {
                let gens = vec![DenseMat::identity(&ring, rank); fm.rank()];
                Self::constant_free(monoid, ring, rank, gens).unwrap()
            }
        }
    }

    /// Augmentation module on the naturals: each generator acts by zero.
    pub fn augmentation(monoid: &Monoid, ring: R, rank: usize) -> Result<Self> {
        let Monoid::Free(fm) = monoid else {
            return Err(Error::InvalidInput("the augmentation preset lives on a free monoid".into()));
        };
        let gens = vec![DenseMat::zero(&ring, rank, rank); fm.rank()];
        Self::constant_free(monoid, ring, rank, gens)
    }

    /// Left projective on a generator in degree x: rank |L(x,y)| at y,
    /// with actions translating witnesses.
    pub fn projective(monoid: &Monoid, ring: R, x: &Elt) -> Result<Self> {
        let Monoid::Finite(fm) = monoid else { return Err(Error::InfiniteRank) };
        let elems: Vec<Elt> = (0..fm.size()).map(Elt::Fin).collect();
        let witnesses: Vec<Vec<Elt>> =
            elems.iter().map(|y| monoid.leech_hom(x, y).witnesses).collect();
        let ranks: Vec<usize> = witnesses.iter().map(|w| w.len()).collect();
        let mut act = Vec::with_capacity(fm.size());
        for w in &elems {
            let mut row = Vec::with_capacity(fm.size());
            for y in &elems {
                let target = monoid.add(y, w);
                let src = &witnesses[y.as_fin()];
                let dst = &witnesses[target.as_fin()];
                let mut mat = DenseMat::zero(&ring, dst.len(), src.len());
                for (col, z) in src.iter().enumerate() {
                    let moved = monoid.add(z, w);
                    let row_idx = dst
                        .iter()
                        .position(|zz| *zz == moved)
                        .expect("translated witness must be a witness");
                    mat.set(row_idx, col, ring.one());
                }
                row.push(mat);
            }
            act.push(row);
        }
        Ok(BeckModule { ring, data: ModuleData::Finite { ranks, act } })
    }

    /// Explicit tables; fully validated.
    pub fn custom(
        monoid: &Monoid,
        ring: R,
        ranks: Vec<usize>,
        act: Vec<Vec<DenseMat<R::Elem>>>,
    ) -> Result<Self> {
        let Monoid::Finite(fm) = monoid else {
            return Err(Error::InvalidInput("custom modules need a finite monoid".into()));
        };
        let n = fm.size();
        if ranks.len() != n || act.len() != n || act.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("action table has wrong shape".into()));
        }
        let m = BeckModule { ring, data: ModuleData::Finite { ranks, act } };
        m.verify_functorial(monoid)?;
        Ok(m)
    }

    /// Exact functoriality check over all triples; cheap and total.
    pub fn verify_functorial(&self, monoid: &Monoid) -> Result<()> {
        let Monoid::Finite(fm) = monoid else { return Ok(()) };
        let elems: Vec<Elt> = (0..fm.size()).map(Elt::Fin).collect();
        let id = monoid.identity();
        for x in &elems {
            let a = self.action(&id, x);
            if a.rows != self.rank_of(x) || !a.is_identity(&self.ring) {
                return Err(Error::FunctorialityViolation(format!(
                    "identity action at {x} is not the identity matrix"
                )));
            }
            for y in &elems {
                let a_yx = self.action(y, x);
                if a_yx.rows != self.rank_of(&monoid.add(x, y)) || a_yx.cols != self.rank_of(x) {
                    return Err(Error::FunctorialityViolation(format!(
                        "action ({y}, {x}) has the wrong shape"
                    )));
                }
                for z in &elems {
                    let xy = monoid.add(x, y);
                    let lhs = self.action(z, &xy).mul(&self.ring, &a_yx);
                    let rhs = self.action(&monoid.add(y, z), x);
                    if lhs != rhs {
                        return Err(Error::FunctorialityViolation(format!(
                            "composite ({z}, {x}+{y}) . ({y}, {x}) differs from ({y}+{z}, {x})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> RightBeckModule<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rank_of(&self, e: &Elt) -> usize {
        self.data.rank_of(e)
    }

    /// Matrix of phi_{x,y}: M^{x+y} -> M^x.
    pub fn action(&self, y: &Elt, x: &Elt) -> DenseMat<R::Elem> {
        match self.data.action(&self.ring, y) {
            Some(row) => row[x.as_fin()].clone(),
            None => self.data.constant_action(&self.ring, y),
        }
    }

    /// Right projective on a target degree y: rank |L(x,y)| at x, with
    /// phi composing witnesses on the other side.
    pub fn projective(monoid: &Monoid, ring: R, y: &Elt) -> Result<Self> {
        let Monoid::Finite(fm) = monoid else { return Err(Error::InfiniteRank) };
        let elems: Vec<Elt> = (0..fm.size()).map(Elt::Fin).collect();
        let witnesses: Vec<Vec<Elt>> =
            elems.iter().map(|x| monoid.leech_hom(x, y).witnesses).collect();
        let ranks: Vec<usize> = witnesses.iter().map(|w| w.len()).collect();
        let mut act = Vec::with_capacity(fm.size());
        for w in &elems {
            let mut row = Vec::with_capacity(fm.size());
            for x in &elems {
                let upper = monoid.add(x, w);
                let src = &witnesses[upper.as_fin()];
                let dst = &witnesses[x.as_fin()];
                let mut mat = DenseMat::zero(&ring, dst.len(), src.len());
                for (col, z) in src.iter().enumerate() {
                    let moved = monoid.add(z, w);
                    let row_idx = dst
                        .iter()
                        .position(|zz| *zz == moved)
                        .expect("translated witness must be a witness");
                    mat.set(row_idx, col, ring.one());
                }
                row.push(mat);
            }
            act.push(row);
        }
        Ok(RightBeckModule { ring, data: ModuleData::Finite { ranks, act } })
    }

    /// Constant right module on a free monoid.
    pub fn constant_free(
        monoid: &Monoid,
        ring: R,
        rank: usize,
        gens: Vec<DenseMat<R::Elem>>,
    ) -> Result<Self> {
        let left = BeckModule::constant_free(monoid, ring, rank, gens)?;
        let BeckModule { ring, data } = left;
        Ok(RightBeckModule { ring, data })
    }

    /// phi_{x,0} = id and the coherence square, over all triples.
    pub fn verify_functorial(&self, monoid: &Monoid) -> Result<()> {
        let Monoid::Finite(fm) = monoid else { return Ok(()) };
        let elems: Vec<Elt> = (0..fm.size()).map(Elt::Fin).collect();
        let id = monoid.identity();
        for x in &elems {
            if !self.action(&id, x).is_identity(&self.ring) {
                return Err(Error::FunctorialityViolation(format!(
                    "phi_({x}, 0) is not the identity"
                )));
            }
            for y in &elems {
                for z in &elems {
                    let xy = monoid.add(x, y);
                    // phi_{x,y} . phi_{x+y,z} = phi_{x,y+z}
                    let lhs = self.action(y, x).mul(&self.ring, &self.action(z, &xy));
                    let rhs = self.action(&monoid.add(y, z), x);
                    if lhs != rhs {
                        return Err(Error::FunctorialityViolation(format!(
                            "phi coherence fails at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    #[test]
    fn constant_presets_on_naturals() {
        let nat = Monoid::naturals();
        let f2 = PrimeField::new(2);
        let id = BeckModule::constant_identity(&nat, f2.clone(), 1);
        assert_eq!(id.rank_of(&Elt::nat(7)), 1);
        assert!(id.action(&Elt::nat(3), &Elt::nat(2)).is_identity(&f2));

        let aug = BeckModule::augmentation(&nat, f2.clone(), 1).unwrap();
        let a = aug.action(&Elt::nat(1), &Elt::nat(0));
        assert_eq!(*a.get(0, 0), 0);
        // degree zero still acts by the identity
        assert!(aug.action(&Elt::nat(0), &Elt::nat(5)).is_identity(&f2));
    }

    #[test]
    fn zero_rank_module() {
        let nat = Monoid::naturals();
        let q = Rationals;
        let z = BeckModule::constant_identity(&nat, q, 0);
        assert_eq!(z.rank_of(&Elt::nat(3)), 0);
        let a = z.action(&Elt::nat(2), &Elt::nat(1));
        assert_eq!((a.rows, a.cols), (0, 0));
    }

    #[test]
    fn nonfunctorial_images_rejected() {
        // on Z/2 the image of 1 must square to the identity
        let z2 = Monoid::cyclic(2);
        let q = Rationals;
        use crate::linalg::Ring as _;
        let bad = DenseMat::from_rows(&q, vec![vec![q.from_i64(2)]]).unwrap();
        let images = vec![DenseMat::identity(&q, 1), bad];
        match BeckModule::constant_finite(&z2, q, 1, images) {
            Err(Error::FunctorialityViolation(_)) => {}
            other => panic!("expected functoriality violation, got {other:?}"),
        }
    }

    #[test]
    fn projective_ranks() {
        let q = Rationals;
        // Z/2 at 0: rank 1 at each element
        let z2 = Monoid::cyclic(2);
        let p = BeckModule::projective(&z2, q.clone(), &Elt::Fin(0)).unwrap();
        assert_eq!(p.rank_of(&Elt::Fin(0)), 1);
        assert_eq!(p.rank_of(&Elt::Fin(1)), 1);

        // semilattice at 1: rank 0 at 0, rank 2 at 1
        let sl = Monoid::semilattice_chain(2);
        let p = BeckModule::projective(&sl, q.clone(), &Elt::Fin(1)).unwrap();
        assert_eq!(p.rank_of(&Elt::Fin(0)), 0);
        assert_eq!(p.rank_of(&Elt::Fin(1)), 2);

        // trivial monoid at 0: rank 1
        let t = Monoid::trivial();
        let p = BeckModule::projective(&t, q.clone(), &Elt::Fin(0)).unwrap();
        assert_eq!(p.rank_of(&Elt::Fin(0)), 1);

        // free monoids are refused
        let nat = Monoid::naturals();
        assert!(matches!(
            BeckModule::projective(&nat, q, &Elt::nat(0)),
            Err(Error::InfiniteRank)
        ));
    }

    #[test]
    fn projective_rank_counts_hom_sets() {
        let q = Rationals;
        for m in [Monoid::cyclic(3), Monoid::semilattice_chain(3), Monoid::rees(2, 2)] {
            let elems = m.elements().unwrap();
            for x in &elems {
                let p = BeckModule::projective(&m, q.clone(), x).unwrap();
                for y in &elems {
                    assert_eq!(p.rank_of(y), m.leech_hom(x, y).witnesses.len());
                }
            }
        }
    }

    #[test]
    fn projectives_are_functorial() {
        let q = Rationals;
        for m in [Monoid::cyclic(3), Monoid::semilattice_chain(2), Monoid::rees(2, 2)] {
            for x in m.elements().unwrap() {
                let left = BeckModule::projective(&m, q.clone(), &x).unwrap();
                left.verify_functorial(&m).unwrap();
                let right = RightBeckModule::projective(&m, q.clone(), &x).unwrap();
                right.verify_functorial(&m).unwrap();
            }
        }
    }
}

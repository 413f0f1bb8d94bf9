//! Exact linear algebra over Z, Q and prime fields: sparse matrices,
//! Gaussian elimination, Smith normal form, and homology of
//! two-composable-maps (optionally as a subquotient of a presented
//! complex).

mod dense;
mod elim;
mod group;
mod ring;
mod snf;
mod sparse;
mod subspace;

pub use dense::DenseMat;
pub use elim::{kernel as field_kernel, rank as field_rank, rref, solve as field_solve, Rref};
pub use group::AbelianGroup;
pub use ring::{is_prime, Field, Integers, PrimeField, Rationals, Ring};
pub use snf::{mat_mul, smith_normal_form, Snf};
pub use sparse::SparseMat;
pub use subspace::Subspace;

use crate::error::{Error, Result};
use num::{BigInt, One, Zero};
use std::sync::Arc;

/// Cache for Smith normal forms, keyed by a canonical rendering of the
/// matrix. Implementations live outside the core crate.
pub trait SnfCache: Send + Sync {
    fn get(&self, key: &str) -> Option<Snf>;
    fn put(&self, key: &str, snf: &Snf);
}

/// Rings with enough structure to compute kernels, ranks and homology.
pub trait LinAlg: Ring {
    fn kernel(&self, m: &SparseMat<Self::Elem>) -> Subspace<Self::Elem>;
    fn rank(&self, m: &SparseMat<Self::Elem>) -> usize;

    /// R^ngens modulo the column span of `rels`.
    fn presented_group(&self, ngens: usize, rels: &SparseMat<Self::Elem>) -> AbelianGroup;

    /// span(gens) / span(rels); requires span(rels) to lie inside
    /// span(gens), which is verified exactly.
    fn quotient_group(
        &self,
        gens: &SparseMat<Self::Elem>,
        rels: &SparseMat<Self::Elem>,
    ) -> Result<AbelianGroup>;

    fn group_of_dim(&self, dim: usize) -> AbelianGroup;

    /// ker(d_out) / im(d_in); checks d_out * d_in = 0 first.
    fn homology_at(
        &self,
        d_in: &SparseMat<Self::Elem>,
        d_out: &SparseMat<Self::Elem>,
    ) -> Result<AbelianGroup> {
        self.subquotient_homology(d_in, d_out, None, None)
    }

    /// Homology of a complex of quotient modules. The middle term is
    /// presented as R^c / im(rels_mid) and the target as
    /// R^t / im(rels_out); `d_in` and `d_out` are lifted maps on the
    /// free levels.
    fn subquotient_homology(
        &self,
        d_in: &SparseMat<Self::Elem>,
        d_out: &SparseMat<Self::Elem>,
        rels_mid: Option<&SparseMat<Self::Elem>>,
        rels_out: Option<&SparseMat<Self::Elem>>,
    ) -> Result<AbelianGroup> {
        assert_eq!(d_in.nrows(), d_out.ncols(), "homology shape mismatch");
        let comp = d_out.mul(self, d_in);
        if rels_out.is_none() {
            if let Some((row, col)) = comp.first_nonzero() {
                return Err(Error::NotAComplex { n: d_out.ncols(), row, col });
            }
        }
        let c = d_out.ncols();
        // cycles: x with d_out(x) in the span of rels_out
        let gens = match rels_out {
            None => self.kernel(d_out).basis().clone(),
            Some(t) => {
                // composition must land in the span of rels_out; verified
                // by the coordinate solve below via quotient_group.
                let block = d_out.hstack(t);
                let z = self.kernel(&block);
                z.basis().row_slice(0, c)
            }
        };
        let rels = match rels_mid {
            None => d_in.clone(),
            Some(t) => d_in.hstack(t),
        };
        self.quotient_group(&gens, &rels)
    }
}

impl LinAlg for Rationals {
    fn kernel(&self, m: &SparseMat<Self::Elem>) -> Subspace<Self::Elem> {
        field_kernel(self, m)
    }
    fn rank(&self, m: &SparseMat<Self::Elem>) -> usize {
        field_rank(self, m)
    }
    fn presented_group(&self, ngens: usize, rels: &SparseMat<Self::Elem>) -> AbelianGroup {
        AbelianGroup::VectorSpace { field: self.name(), dim: ngens - field_rank(self, rels) }
    }
    fn quotient_group(
        &self,
        gens: &SparseMat<Self::Elem>,
        rels: &SparseMat<Self::Elem>,
    ) -> Result<AbelianGroup> {
        field_quotient(self, gens, rels)
    }
    fn group_of_dim(&self, dim: usize) -> AbelianGroup {
        AbelianGroup::VectorSpace { field: self.name(), dim }
    }
}

impl LinAlg for PrimeField {
    fn kernel(&self, m: &SparseMat<Self::Elem>) -> Subspace<Self::Elem> {
        field_kernel(self, m)
    }
    fn rank(&self, m: &SparseMat<Self::Elem>) -> usize {
        field_rank(self, m)
    }
    fn presented_group(&self, ngens: usize, rels: &SparseMat<Self::Elem>) -> AbelianGroup {
        AbelianGroup::VectorSpace { field: self.name(), dim: ngens - field_rank(self, rels) }
    }
    fn quotient_group(
        &self,
        gens: &SparseMat<Self::Elem>,
        rels: &SparseMat<Self::Elem>,
    ) -> Result<AbelianGroup> {
        field_quotient(self, gens, rels)
    }
    fn group_of_dim(&self, dim: usize) -> AbelianGroup {
        AbelianGroup::VectorSpace { field: self.name(), dim }
    }
}

fn field_quotient<F: Field>(
    f: &F,
    gens: &SparseMat<F::Elem>,
    rels: &SparseMat<F::Elem>,
) -> Result<AbelianGroup> {
    assert_eq!(gens.nrows(), rels.nrows(), "quotient shape mismatch");
    let rg = field_rank(f, gens);
    let rgr = field_rank(f, &gens.hstack(rels));
    if rgr != rg {
        return Err(Error::InvalidInput(
            "internal: relations escape the generator span".into(),
        ));
    }
    let rr = field_rank(f, rels);
    Ok(AbelianGroup::VectorSpace { field: f.name(), dim: rg - rr })
}

impl Integers {
    pub fn with_cache(cache: Arc<dyn SnfCache>) -> IntegersWithCache {
        IntegersWithCache { cache: Some(cache) }
    }
}

/// `Integers` plus an optional persistent SNF cache. Behaves exactly as
/// `Integers` for ring arithmetic.
#[derive(Clone, Default)]
pub struct IntegersWithCache {
    cache: Option<Arc<dyn SnfCache>>,
}

impl std::fmt::Debug for IntegersWithCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IntegersWithCache").field("cache", &self.cache.is_some()).finish()
    }
}

impl Ring for IntegersWithCache {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn name(&self) -> String {
        "Z".into()
    }
}

impl IntegersWithCache {
    fn snf(&self, m: &SparseMat<BigInt>) -> Snf {
        match &self.cache {
            None => smith_normal_form(&m.to_dense(&Integers)),
            Some(cache) => {
                let key = m.canonical_string(|v| v.to_string());
                if let Some(hit) = cache.get(&key) {
                    return hit;
                }
                let snf = smith_normal_form(&m.to_dense(&Integers));
                cache.put(&key, &snf);
                snf
            }
        }
    }
}

fn int_kernel_from_snf(snf: &Snf) -> Subspace<BigInt> {
    let int = Integers;
    let r = snf.rank();
    let c = snf.cols;
    let mut basis_triplets = Vec::new();
    for j in r..c {
        for i in 0..c {
            if !snf.v[i][j].is_zero() {
                basis_triplets.push((i, j - r, snf.v[i][j].clone()));
            }
        }
    }
    let mut coord_triplets = Vec::new();
    for i in r..c {
        for j in 0..c {
            if !snf.v_inv[i][j].is_zero() {
                coord_triplets.push((i - r, j, snf.v_inv[i][j].clone()));
            }
        }
    }
    Subspace::new(
        SparseMat::from_triplets(&int, c, c - r, basis_triplets),
        SparseMat::from_triplets(&int, c - r, c, coord_triplets),
    )
}

fn int_presented(ngens: usize, snf_of_rels: &Snf) -> AbelianGroup {
    let torsion: Vec<BigInt> =
        snf_of_rels.diag.iter().filter(|d| !d.is_one()).cloned().collect();
    AbelianGroup::ZModule { free_rank: ngens - snf_of_rels.rank(), torsion }
}

macro_rules! impl_int_linalg {
    ($t:ty, $snf_call:expr) => {
        impl LinAlg for $t {
            fn kernel(&self, m: &SparseMat<BigInt>) -> Subspace<BigInt> {
                let snf = $snf_call(self, m);
                int_kernel_from_snf(&snf)
            }

            fn rank(&self, m: &SparseMat<BigInt>) -> usize {
                $snf_call(self, m).rank()
            }

            fn presented_group(&self, ngens: usize, rels: &SparseMat<BigInt>) -> AbelianGroup {
                int_presented(ngens, &$snf_call(self, rels))
            }

            fn quotient_group(
                &self,
                gens: &SparseMat<BigInt>,
                rels: &SparseMat<BigInt>,
            ) -> Result<AbelianGroup> {
                assert_eq!(gens.nrows(), rels.nrows(), "quotient shape mismatch");
                let snf = $snf_call(self, gens);
                let r = snf.rank();
                // coordinates of each relation in the lattice basis
                // U^-1 * D[:, ..r]; membership and divisibility are exact.
                let u_sparse = SparseMat::from_dense(&Integers, &snf.u);
                let w = u_sparse.mul(&Integers, rels);
                let mut y_triplets = Vec::new();
                for rr in 0..w.nrows() {
                    for (cc, v) in w.row(rr) {
                        if rr >= r {
                            return Err(Error::InvalidInput(
                                "internal: relation outside generator lattice".into(),
                            ));
                        }
                        let (q, rem) = num::Integer::div_rem(v, &snf.diag[rr]);
                        if !rem.is_zero() {
                            return Err(Error::InvalidInput(
                                "internal: relation not integral in generator lattice".into(),
                            ));
                        }
                        y_triplets.push((rr, *cc, q));
                    }
                }
                let y = SparseMat::from_triplets(&Integers, r, rels.ncols(), y_triplets);
                Ok(int_presented(r, &$snf_call(self, &y)))
            }

            fn group_of_dim(&self, dim: usize) -> AbelianGroup {
                AbelianGroup::ZModule { free_rank: dim, torsion: Vec::new() }
            }
        }
    };
}

impl_int_linalg!(Integers, |_s: &Integers, m: &SparseMat<BigInt>| smith_normal_form(
    &m.to_dense(&Integers)
));
impl_int_linalg!(IntegersWithCache, |s: &IntegersWithCache, m: &SparseMat<BigInt>| s.snf(m));

#[cfg(test)]
mod tests {
    use super::*;

    fn int_mat(rows: &[&[i64]]) -> SparseMat<BigInt> {
        let dense: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        SparseMat::from_dense(&Integers, &dense)
    }

    fn rat_mat(rows: &[&[i64]]) -> SparseMat<num::BigRational> {
        let q = Rationals;
        let dense: Vec<Vec<num::BigRational>> =
            rows.iter().map(|r| r.iter().map(|&v| q.from_i64(v)).collect()).collect();
        SparseMat::from_dense(&q, &dense)
    }

    #[test]
    fn snf_small_example() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let m = int_mat(&[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&m.to_dense(&Integers));
        assert_eq!(snf.diag, vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = int_mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let snf = smith_normal_form(&id.to_dense(&Integers));
        assert_eq!(snf.diag, vec![BigInt::one(); 3]);

        let z = int_mat(&[&[0, 0], &[0, 0], &[0, 0]]);
        let snf = smith_normal_form(&z.to_dense(&Integers));
        assert!(snf.diag.is_empty());
    }

    #[test]
    fn snf_recomposition_and_transforms() {
        let cases: Vec<Vec<Vec<BigInt>>> = vec![
            int_mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]).to_dense(&Integers),
            int_mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).to_dense(&Integers),
            int_mat(&[&[0, 3], &[0, 0], &[5, 0]]).to_dense(&Integers),
        ];
        for m in cases {
            let snf = smith_normal_form(&m);
            let umv = mat_mul(&mat_mul(&snf.u, &m), &snf.v);
            for (i, row) in umv.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let expect = if i == j && i < snf.diag.len() {
                        snf.diag[i].clone()
                    } else {
                        BigInt::zero()
                    };
                    assert_eq!(*v, expect, "UMV mismatch at ({i},{j})");
                }
            }
            // transforms are exact inverses
            let uu = mat_mul(&snf.u, &snf.u_inv);
            let vv = mat_mul(&snf.v, &snf.v_inv);
            for (mat, n) in [(&uu, snf.rows), (&vv, snf.cols)] {
                for i in 0..n {
                    for j in 0..n {
                        let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                        assert_eq!(mat[i][j], expect);
                    }
                }
            }
            // divisibility chain
            for w in snf.diag.windows(2) {
                assert!((&w[1] % &w[0]).is_zero());
            }
        }
    }

    #[test]
    fn rank_over_q_matches_snf_nonzero_count() {
        let m = int_mat(&[&[2, 4, 6], &[1, 2, 3], &[0, 0, 5]]);
        let snf_rank = smith_normal_form(&m.to_dense(&Integers)).rank();
        let q_rank = field_rank(&Rationals, &m.map(|v| num::BigRational::from_integer(v.clone())));
        assert_eq!(snf_rank, q_rank);
        assert_eq!(q_rank, 2);
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        // identity: empty kernel
        let id = SparseMat::identity(&q, 3);
        assert_eq!(q.kernel(&id).dim(), 0);
        // zero 2x3 map: 3 basis vectors
        let z: SparseMat<num::BigRational> = SparseMat::zero(2, 3);
        assert_eq!(q.kernel(&z).dim(), 3);
        // [[1,1]] over F2: kernel {(1,1)}
        let f2 = PrimeField::new(2);
        let m = SparseMat::from_dense(&f2, &[vec![1u64, 1u64]]);
        let ker = f2.kernel(&m);
        assert_eq!(ker.dim(), 1);
        let b = ker.basis().to_dense(&f2);
        assert_eq!((b[0][0], b[1][0]), (1, 1));
        // exhaustive F2^2 oracle: the only nonzero kernel vector is (1,1)
        for x in 0..2u64 {
            for y in 0..2u64 {
                let in_kernel = (x + y) % 2 == 0;
                let is_span = (x, y) == (0, 0) || (x, y) == (1, 1);
                assert_eq!(in_kernel, is_span);
            }
        }
    }

    #[test]
    fn kernel_coords_are_a_retraction() {
        let int = Integers;
        let m = int_mat(&[&[2, 4, 6], &[0, 0, 3]]);
        let ker = int.kernel(&m);
        let prod = ker.coords().mul(&int, ker.basis());
        assert_eq!(prod, SparseMat::identity(&int, ker.dim()));
        // basis columns really are in the kernel
        assert!(m.mul(&int, ker.basis()).is_zero_mat());
    }

    #[test]
    fn homology_examples() {
        let int = Integers;
        // 0 -> Z -> 0 : group Z
        let d_in: SparseMat<BigInt> = SparseMat::zero(1, 0);
        let d_out: SparseMat<BigInt> = SparseMat::zero(0, 1);
        let g = int.homology_at(&d_in, &d_out).unwrap();
        assert_eq!(g, AbelianGroup::ZModule { free_rank: 1, torsion: vec![] });

        // multiplication by 2 on Z, then 0: torsion Z/2
        let d_in = int_mat(&[&[2]]);
        let d_out: SparseMat<BigInt> = SparseMat::zero(0, 1);
        let g = int.homology_at(&d_in, &d_out).unwrap();
        assert_eq!(g, AbelianGroup::ZModule { free_rank: 0, torsion: vec![BigInt::from(2)] });

        // over F2: d_in = 0, d_out = [[1,1]]: dimension 1
        let f2 = PrimeField::new(2);
        let d_in: SparseMat<u64> = SparseMat::zero(2, 0);
        let d_out = SparseMat::from_dense(&f2, &[vec![1u64, 1u64]]);
        let g = f2.homology_at(&d_in, &d_out).unwrap();
        assert_eq!(g, AbelianGroup::VectorSpace { field: "F2".into(), dim: 1 });
    }

    #[test]
    fn homology_rejects_nonzero_composition() {
        let int = Integers;
        let d_in = int_mat(&[&[1]]);
        let d_out = int_mat(&[&[1]]);
        match int.homology_at(&d_in, &d_out) {
            Err(Error::NotAComplex { .. }) => {}
            other => panic!("expected NotAComplex, got {other:?}"),
        }
    }

    #[test]
    fn quotient_group_with_torsion() {
        let int = Integers;
        // span{(2,0),(0,3)} inside Z^2, modulo (2,3): Z with no torsion?
        // (2,0),(0,3) basis; relation (2,3) = 1*(2,0) + 1*(0,3): quotient Z
        let gens = int_mat(&[&[2, 0], &[0, 3]]);
        let rels = int_mat(&[&[2], &[3]]);
        let g = int.quotient_group(&gens, &rels).unwrap();
        assert_eq!(g, AbelianGroup::ZModule { free_rank: 1, torsion: vec![] });

        // Z^2 / (2e1, 3e2): torsion 1|6 -> Z/6
        let gens = SparseMat::identity(&int, 2);
        let rels = int_mat(&[&[2, 0], &[0, 3]]);
        let g = int.quotient_group(&gens, &rels).unwrap();
        assert_eq!(g, AbelianGroup::ZModule { free_rank: 0, torsion: vec![BigInt::from(6)] });
    }

    #[test]
    fn field_solve_and_rank() {
        let q = Rationals;
        let a = rat_mat(&[&[1, 2], &[3, 4]]);
        let b = rat_mat(&[&[5], &[6]]);
        let x = field_solve(&q, &a, &b).expect("solvable");
        let ax = a.mul(&q, &x);
        assert_eq!(ax, b);

        let sing = rat_mat(&[&[1, 2], &[2, 4]]);
        let bad = rat_mat(&[&[1], &[3]]);
        assert!(field_solve(&q, &sing, &bad).is_none());
    }

    #[test]
    fn display_groups() {
        let g = AbelianGroup::ZModule {
            free_rank: 2,
            torsion: vec![BigInt::from(2), BigInt::from(4)],
        };
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/4");
        let g = AbelianGroup::VectorSpace { field: "F2".into(), dim: 3 };
        assert_eq!(g.to_string(), "F2^3");
        let g = AbelianGroup::ZModule { free_rank: 0, torsion: vec![] };
        assert_eq!(g.to_string(), "0");
    }
}

use crate::beck::RightBeckModule;
use crate::error::{Error, Result};
use crate::linalg::{AbelianGroup, LinAlg, SparseMat};
use crate::monoid::{Elt, Monoid};
use std::collections::BTreeMap;

/// Basis of one chain group: normalized bar words of monoid elements,
/// each carrying the right module at its letter sum.
struct WordBasis {
    words: Vec<Vec<Elt>>,
    offsets: Vec<usize>,
    ranks: Vec<usize>,
    total_rank: usize,
    index: BTreeMap<Vec<Elt>, usize>,
}

fn word_basis<R: LinAlg>(
    monoid: &Monoid,
    module: &RightBeckModule<R>,
    n: usize,
    bound: Option<u32>,
) -> Result<WordBasis> {
    let mut words: Vec<Vec<Elt>> = match monoid {
        Monoid::Finite(fm) => {
            let mut out = Vec::new();
            for d in 0..fm.size() {
                out.extend(monoid.tuples_with_sum(n, &Elt::Fin(d), true));
            }
            out
        }
        Monoid::Free(fm) => {
            if fm.rank() != 1 {
                return Err(Error::InvalidInput(
                    "chain homology over free monoids is implemented for rank 1".into(),
                ));
            }
            let Some(b) = bound else { return Err(Error::DegreeRequired) };
            let mut out = Vec::new();
            for d in 0..=b {
                out.extend(monoid.tuples_with_sum(n, &Elt::nat(d), true));
            }
            out
        }
    };
    words.sort();
    words.dedup();
    let ranks: Vec<usize> = words.iter().map(|w| module.rank_of(&monoid.sum(w))).collect();
    let mut offsets = Vec::with_capacity(words.len());
    let mut total_rank = 0;
    for r in &ranks {
        offsets.push(total_rank);
        total_rank += r;
    }
    let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    Ok(WordBasis { words, offsets, ranks, total_rank, index })
}

/// Boundary C_n -> C_{n-1}: outer faces act through the right module,
/// inner faces merge letters (killed when they create the identity).
/// In dimension 1 the target of the reduced complex is zero.
fn boundary<R: LinAlg>(
    monoid: &Monoid,
    module: &RightBeckModule<R>,
    src: &WordBasis,
    dst: Option<&WordBasis>,
    n: usize,
) -> SparseMat<R::Elem> {
    let ring = module.ring();
    let dst_rank = dst.map_or(0, |d| d.total_rank);
    if n <= 1 || dst.is_none() {
        return SparseMat::zero(dst_rank, src.total_rank);
    }
    let dst = dst.unwrap();
    let mut triplets = Vec::new();
    for (wi, word) in src.words.iter().enumerate() {
        let col0 = src.offsets[wi];

        // d_0: multiply the first letter into the coefficient
        let tail = &word[1..];
        let d_tail = monoid.sum(tail);
        if let Some(ti) = dst.index_of(tail) {
            let act = module.action(&word[0], &d_tail); // M^{sum} -> M^{sum - x_1}
            let row0 = dst.offsets[ti];
            for (r, c, v) in act.entries() {
                if !ring.is_zero(v) {
                    triplets.push((row0 + r, col0 + c, v.clone()));
                }
            }
        }

        // inner faces with sign (-1)^i
        for i in 0..n - 1 {
            let merged_entry = monoid.add(&word[i], &word[i + 1]);
            if monoid.is_identity(&merged_entry) {
                continue;
            }
            let mut merged: Vec<Elt> = Vec::with_capacity(n - 1);
            merged.extend_from_slice(&word[..i]);
            merged.push(merged_entry);
            merged.extend_from_slice(&word[i + 2..]);
            let ti = dst.index_of(&merged).expect("merged word stays in the basis");
            let sign = ring.from_i64(if (i + 1) % 2 == 0 { 1 } else { -1 });
            let row0 = dst.offsets[ti];
            for r in 0..src.ranks[wi] {
                triplets.push((row0 + r, col0 + r, sign.clone()));
            }
        }

        // d_n: multiply the last letter into the coefficient
        let head = &word[..n - 1];
        let d_head = monoid.sum(head);
        if let Some(ti) = dst.index_of(head) {
            let act = module.action(&word[n - 1], &d_head);
            let sign = n % 2 == 0;
            let row0 = dst.offsets[ti];
            for (r, c, v) in act.entries() {
                if !ring.is_zero(v) {
                    let signed = if sign { v.clone() } else { ring.neg(v) };
                    triplets.push((row0 + r, col0 + c, signed));
                }
            }
        }
    }
    SparseMat::from_triplets(ring, dst.total_rank, src.total_rank, triplets)
}

impl WordBasis {
    fn index_of(&self, w: &[Elt]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Columns spanning the shuffle-decomposable submodule of C_n, tensored
/// with the module coordinates.
fn decomposable_relations<R: LinAlg>(
    monoid: &Monoid,
    module: &RightBeckModule<R>,
    basis: &WordBasis,
    n: usize,
) -> SparseMat<R::Elem> {
    use crate::words::{shuffle_product, BarWord};
    let ring = module.ring();
    if n < 2 {
        return SparseMat::zero(basis.total_rank, 0);
    }

    // letters seen in the basis, interned as ids for the word engine
    let mut letters: Vec<Elt> = basis.words.iter().flatten().cloned().collect();
    letters.sort();
    letters.dedup();
    let letter_id: BTreeMap<&Elt, u32> =
        letters.iter().enumerate().map(|(i, e)| (e, i as u32)).collect();

    let mut columns: Vec<Vec<(usize, R::Elem)>> = Vec::new();
    let words_of_len = |k: usize| -> Vec<Vec<Elt>> {
        let mut out: Vec<Vec<Elt>> = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(letters: &[Elt], k: usize, cur: &mut Vec<Elt>, out: &mut Vec<Vec<Elt>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for l in letters {
                cur.push(l.clone());
                rec(letters, k, cur, out);
                cur.pop();
            }
        }
        rec(&letters, k, &mut cur, &mut out);
        out
    };

    for i in 1..=n / 2 {
        let j = n - i;
        for u in words_of_len(i) {
            for v in words_of_len(j) {
                if i == j && u > v {
                    continue; // graded commutativity makes the mirror redundant
                }
                let du = monoid.sum(&u);
                let dv = monoid.sum(&v);
                let d = monoid.add(&du, &dv);
                let rank = module.rank_of(&d);
                if rank == 0 {
                    continue;
                }
                let uw = BarWord::new(u.iter().map(|e| letter_id[e]).collect());
                let vw = BarWord::new(v.iter().map(|e| letter_id[e]).collect());
                let product = shuffle_product(&uw, &vw);
                if product.is_zero() {
                    continue;
                }
                let mut per_word: Vec<(usize, i64)> = Vec::new();
                let mut all_present = true;
                for (word, coeff) in product.terms() {
                    let concrete: Vec<Elt> = word
                        .letters()
                        .iter()
                        .map(|&l| letters[l as usize].clone())
                        .collect();
                    match basis.index_of(&concrete) {
                        Some(ti) => per_word.push((ti, coeff)),
                        None => {
                            all_present = false;
                            break;
                        }
                    }
                }
                // all terms share the degree d, so either the whole
                // product lies in a truncated basis or none of it does
                if !all_present {
                    continue;
                }
                for r in 0..rank {
                    let mut col: Vec<(usize, R::Elem)> = per_word
                        .iter()
                        .map(|&(ti, c)| (basis.offsets[ti] + r, ring.from_i64(c)))
                        .collect();
                    col.sort_by_key(|(row, _)| *row);
                    columns.push(col);
                }
            }
        }
    }

    let mut triplets = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        for (row, v) in col {
            triplets.push((*row, j, v.clone()));
        }
    }
    SparseMat::from_triplets(ring, basis.total_rank, columns.len(), triplets)
}

/// Chain-level Harrison homology at dimension n: bar words modulo the
/// decomposable span, tensored with a right module, then homology. For
/// a free monoid the complex is truncated at letter sums <= bound,
/// which is closed under the boundary.
pub fn chain_homology<R: LinAlg>(
    monoid: &Monoid,
    module: &RightBeckModule<R>,
    n: usize,
    bound: Option<u32>,
) -> Result<AbelianGroup> {
    let ring = module.ring().clone();
    if n == 0 {
        return Ok(ring.group_of_dim(0));
    }
    let basis_lo = if n >= 2 { Some(word_basis(monoid, module, n - 1, bound)?) } else { None };
    let basis_n = word_basis(monoid, module, n, bound)?;
    let basis_hi = word_basis(monoid, module, n + 1, bound)?;

    let d_out = boundary(monoid, module, &basis_n, basis_lo.as_ref(), n);
    let d_in = boundary(monoid, module, &basis_hi, Some(&basis_n), n + 1);
    let comp = d_out.mul(&ring, &d_in);
    if let Some((row, col)) = comp.first_nonzero() {
        return Err(Error::NotAComplex { n, row, col });
    }

    let rels_mid = decomposable_relations(monoid, module, &basis_n, n);
    let rels_out = basis_lo
        .as_ref()
        .map(|b| decomposable_relations(monoid, module, b, n - 1));

    ring.subquotient_homology(&d_in, &d_out, Some(&rels_mid), rels_out.as_ref())
}

/// Same chain complex without the decomposable quotient: plain
/// Hochschild homology of the slice, used as a cross-check.
pub fn hochschild_chain_homology<R: LinAlg>(
    monoid: &Monoid,
    module: &RightBeckModule<R>,
    n: usize,
    bound: Option<u32>,
) -> Result<AbelianGroup> {
    let ring = module.ring().clone();
    if n == 0 {
        // C_0 = the module itself; the reduced boundary from C_1 is zero
        let basis0 = word_basis(monoid, module, 0, bound)?;
        return Ok(ring.group_of_dim(basis0.total_rank));
    }
    let basis_lo = word_basis(monoid, module, n - 1, bound)?;
    let basis_n = word_basis(monoid, module, n, bound)?;
    let basis_hi = word_basis(monoid, module, n + 1, bound)?;
    let d_out = boundary(monoid, module, &basis_n, Some(&basis_lo), n);
    let d_in = boundary(monoid, module, &basis_hi, Some(&basis_n), n + 1);
    ring.homology_at(&d_in, &d_out)
}

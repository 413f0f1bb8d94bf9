use super::ring::Field;
use super::sparse::SparseMat;
use super::subspace::Subspace;

/// Reduced row echelon form over a field. Rows are stored sparse and
/// sorted by pivot column; each pivot entry is 1 and its column is
/// cleared elsewhere.
pub struct Rref<T> {
    pub rows: Vec<Vec<(usize, T)>>,
    pub pivot_cols: Vec<usize>,
    pub ncols: usize,
}

const DENSE_LIMIT: usize = 64;

pub fn rref<F: Field>(f: &F, m: &SparseMat<F::Elem>) -> Rref<F::Elem> {
    if m.nrows() < DENSE_LIMIT && m.ncols() < DENSE_LIMIT {
        rref_dense(f, m)
    } else {
        rref_sparse(f, m)
    }
}

fn rref_dense<F: Field>(f: &F, m: &SparseMat<F::Elem>) -> Rref<F::Elem> {
    let mut a = m.to_dense(f);
    let (nr, nc) = (m.nrows(), m.ncols());
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        let Some(pr) = (r..nr).find(|&i| !f.is_zero(&a[i][c])) else { continue };
        a.swap(r, pr);
        let inv = f.inv(&a[r][c]);
        for j in c..nc {
            a[r][j] = f.mul(&a[r][j], &inv);
        }
        for i in 0..nr {
            if i != r && !f.is_zero(&a[i][c]) {
                let factor = a[i][c].clone();
                for j in c..nc {
                    let t = f.mul(&factor, &a[r][j]);
                    a[i][j] = f.sub(&a[i][j], &t);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == nr {
            break;
        }
    }
    let rows = a[..r]
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !f.is_zero(v))
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
        .collect();
    Rref { rows, pivot_cols, ncols: nc }
}

fn rref_sparse<F: Field>(f: &F, m: &SparseMat<F::Elem>) -> Rref<F::Elem> {
    // echelon[i] has pivot pivot_cols[i]; invariant: fully reduced.
    let mut echelon: Vec<Vec<(usize, F::Elem)>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();

    // Insert shorter rows first; keeps fill-in down on symmetry systems.
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by_key(|&r| (m.row(r).len(), r));

    for r in order {
        let mut row: Vec<(usize, F::Elem)> = m.row(r).to_vec();
        // reduce against existing pivots
        loop {
            let Some(&(lead, ref lv)) = row.first() else { break };
            match pivot_cols.binary_search(&lead) {
                Ok(i) => {
                    let factor = lv.clone();
                    row = axpy(f, &row, &echelon[i], &f.neg(&factor));
                }
                Err(_) => break,
            }
        }
        let Some(&(lead, ref lv)) = row.first() else { continue };
        let inv = f.inv(lv);
        for (_, v) in row.iter_mut() {
            *v = f.mul(v, &inv);
        }
        // clear the new pivot column from existing rows
        let pos = pivot_cols.binary_search(&lead).unwrap_err();
        for i in 0..echelon.len() {
            if let Ok(k) = echelon[i].binary_search_by_key(&lead, |(c, _)| *c) {
                let factor = echelon[i][k].1.clone();
                echelon[i] = axpy(f, &echelon[i], &row, &f.neg(&factor));
            }
        }
        pivot_cols.insert(pos, lead);
        echelon.insert(pos, row);
    }

    Rref { rows: echelon, pivot_cols, ncols: m.ncols() }
}

/// out = a + scale * b, both sparse sorted rows.
fn axpy<F: Field>(
    f: &F,
    a: &[(usize, F::Elem)],
    b: &[(usize, F::Elem)],
    scale: &F::Elem,
) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let v = f.mul(&b[j].1, scale);
            if !f.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = f.add(&a[i].1, &f.mul(&b[j].1, scale));
            if !f.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn rank<F: Field>(f: &F, m: &SparseMat<F::Elem>) -> usize {
    rref(f, m).pivot_cols.len()
}

/// Null-space basis, with coordinate projection onto the free columns.
pub fn kernel<F: Field>(f: &F, m: &SparseMat<F::Elem>) -> Subspace<F::Elem> {
    let red = rref(f, m);
    let nc = m.ncols();
    let mut is_pivot = vec![false; nc];
    for &c in &red.pivot_cols {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..nc).filter(|&c| !is_pivot[c]).collect();
    let mut basis_triplets: Vec<(usize, usize, F::Elem)> = Vec::new();
    let mut coord_triplets: Vec<(usize, usize, F::Elem)> = Vec::new();
    for (k, &fc) in free.iter().enumerate() {
        basis_triplets.push((fc, k, f.one()));
        coord_triplets.push((k, fc, f.one()));
        for (i, row) in red.rows.iter().enumerate() {
            if let Ok(idx) = row.binary_search_by_key(&fc, |(c, _)| *c) {
                basis_triplets.push((red.pivot_cols[i], k, f.neg(&row[idx].1)));
            }
        }
    }
    let basis = SparseMat::from_triplets(f, nc, free.len(), basis_triplets);
    let coords = SparseMat::from_triplets(f, free.len(), nc, coord_triplets);
    Subspace::new(basis, coords)
}

/// Solve A X = B column-wise; `None` when inconsistent.
pub fn solve<F: Field>(
    f: &F,
    a: &SparseMat<F::Elem>,
    b: &SparseMat<F::Elem>,
) -> Option<SparseMat<F::Elem>> {
    assert_eq!(a.nrows(), b.nrows(), "solve shape mismatch");
    let aug = a.hstack(b);
    let red = rref(f, &aug);
    // any pivot in the B block means inconsistency
    if red.pivot_cols.iter().any(|&c| c >= a.ncols()) {
        return None;
    }
    let mut triplets = Vec::new();
    for (i, row) in red.rows.iter().enumerate() {
        let pivot = red.pivot_cols[i];
        for (c, v) in row {
            if *c >= a.ncols() {
                triplets.push((pivot, *c - a.ncols(), v.clone()));
            }
        }
    }
    Some(SparseMat::from_triplets(f, a.ncols(), b.ncols(), triplets))
}

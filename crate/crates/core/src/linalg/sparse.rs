use super::ring::Ring;

/// Sparse matrix in sorted row-major form. Cochain differentials touch
/// only a handful of basis elements per column, so this is the working
/// representation everywhere; eliminations densify small blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, T)>>,
}

impl<T: Clone + PartialEq> SparseMat<T> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity<R: Ring<Elem = T>>(ring: &R, n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, ring.one())]).collect();
        SparseMat { nrows: n, ncols: n, rows }
    }

    /// Build from (row, col, value) triplets, summing duplicates.
    pub fn from_triplets<R: Ring<Elem = T>>(
        ring: &R,
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); nrows];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet out of range");
            rows[r].push((c, v));
        }
        for row in &mut rows {
            row.sort_by_key(|(c, _)| *c);
            let mut out: Vec<(usize, T)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match out.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv = ring.add(lv, &v),
                    _ => out.push((c, v)),
                }
            }
            out.retain(|(_, v)| !ring.is_zero(v));
            *row = out;
        }
        SparseMat { nrows, ncols, rows }
    }

    pub fn from_dense<R: Ring<Elem = T>>(ring: &R, rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !ring.is_zero(v))
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMat { nrows, ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn row(&self, r: usize) -> &[(usize, T)] {
        &self.rows[r]
    }
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }
    pub fn is_zero_mat(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        for (r, row) in self.rows.iter().enumerate() {
            if let Some((c, _)) = row.first() {
                return Some((r, *c));
            }
        }
        None
    }

    pub fn get<R: Ring<Elem = T>>(&self, ring: &R, r: usize, c: usize) -> T {
        self.rows[r]
            .binary_search_by_key(&c, |(cc, _)| *cc)
            .map(|i| self.rows[r][i].1.clone())
            .unwrap_or_else(|_| ring.zero())
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Vec<(usize, T)>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.clone()));
            }
        }
        SparseMat { nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn mul<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "sparse shape mismatch");
        let mut rows: Vec<Vec<(usize, T)>> = Vec::with_capacity(self.nrows);
        let mut acc: Vec<Option<T>> = vec![None; other.ncols];
        for row in &self.rows {
            let mut touched: Vec<usize> = Vec::new();
            for (k, a) in row {
                for (c, b) in &other.rows[*k] {
                    let prod = ring.mul(a, b);
                    match &mut acc[*c] {
                        Some(v) => *v = ring.add(v, &prod),
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*c);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for c in touched {
                let v = acc[c].take().unwrap();
                if !ring.is_zero(&v) {
                    out.push((c, v));
                }
            }
            rows.push(out);
        }
        SparseMat { nrows: self.nrows, ncols: other.ncols, rows }
    }

    /// Stack vertically: self on top of other.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.ncols, "vstack width mismatch");
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SparseMat { nrows: self.nrows + other.nrows, ncols: self.ncols, rows }
    }

    /// Stack horizontally: [self | other].
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.nrows, other.nrows, "hstack height mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut row = a.clone();
                row.extend(b.iter().map(|(c, v)| (c + self.ncols, v.clone())));
                row
            })
            .collect();
        SparseMat { nrows: self.nrows, ncols: self.ncols + other.ncols, rows }
    }

    pub fn to_dense<R: Ring<Elem = T>>(&self, ring: &R) -> Vec<Vec<T>> {
        let mut out = vec![vec![ring.zero(); self.ncols]; self.nrows];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    /// Columns as single-column matrices appended, used for relation sets.
    pub fn column(&self, j: usize) -> Vec<(usize, T)> {
        let mut col = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            if let Ok(i) = row.binary_search_by_key(&j, |(cc, _)| *cc) {
                col.push((r, row[i].1.clone()));
            }
        }
        col
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_slice(&self, start: usize, end: usize) -> Self {
        SparseMat {
            nrows: end - start,
            ncols: self.ncols,
            rows: self.rows[start..end].to_vec(),
        }
    }

    /// Map entries into another ring.
    pub fn map<U: Clone + PartialEq>(&self, f: impl Fn(&T) -> U) -> SparseMat<U> {
        SparseMat {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|(c, v)| (*c, f(v))).collect())
                .collect(),
        }
    }

    /// Canonical textual form; stable across runs, used for content hashing.
    pub fn canonical_string(&self, fmt_elem: impl Fn(&T) -> String) -> String {
        let mut s = format!("{}x{}", self.nrows, self.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                s.push_str(&format!(";{},{},{}", r, c, fmt_elem(v)));
            }
        }
        s
    }
}

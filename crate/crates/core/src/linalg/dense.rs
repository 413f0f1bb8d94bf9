use super::ring::Ring;

/// Small dense matrix, used for Beck-module action blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone + PartialEq> DenseMat<T> {
    pub fn from_fn<R: Ring<Elem = T>>(
        _ring: &R,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DenseMat { rows, cols, data }
    }

    pub fn zero<R: Ring<Elem = T>>(ring: &R, rows: usize, cols: usize) -> Self {
        Self::from_fn(ring, rows, cols, |_, _| ring.zero())
    }

    pub fn identity<R: Ring<Elem = T>>(ring: &R, n: usize) -> Self {
        Self::from_fn(ring, n, n, |r, c| if r == c { ring.one() } else { ring.zero() })
    }

    pub fn from_rows<R: Ring<Elem = T>>(ring: &R, rows: Vec<Vec<T>>) -> super::super::error::Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != ncols {
                return Err(crate::error::Error::InvalidInput(
                    "ragged matrix rows".into(),
                ));
            }
        }
        let _ = ring;
        Ok(DenseMat { rows: nrows, cols: ncols, data: rows.into_iter().flatten().collect() })
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul<R: Ring<Elem = T>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dense shape mismatch");
        Self::from_fn(ring, self.rows, other.cols, |r, c| {
            let mut acc = ring.zero();
            for k in 0..self.cols {
                acc = ring.add(&acc, &ring.mul(self.get(r, k), other.get(k, c)));
            }
            acc
        })
    }

    pub fn is_identity<R: Ring<Elem = T>>(&self, ring: &R) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        ring.is_one(self.get(r, c))
                    } else {
                        ring.is_zero(self.get(r, c))
                    }
                })
            })
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let cols = self.cols;
        self.data.iter().enumerate().map(move |(i, v)| (i / cols, i % cols, v))
    }
}

use num::integer::Integer as _;
use num::{BigInt, One, Signed, Zero};

/// Smith normal form of an integer matrix: U * M * V = D with U, V
/// unimodular and the nonzero diagonal d1 | d2 | ... All four transforms
/// are tracked so kernels and exact coordinate solves come for free.
#[derive(Clone, Debug)]
pub struct Snf {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero invariant factors, each dividing the next.
    pub diag: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub u_inv: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Calc {
    m: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.m.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in &mut self.m {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    /// row_i += c * row_k
    fn addmul_row(&mut self, i: usize, k: usize, c: &BigInt) {
        for j in 0..self.cols {
            let t = &self.m[k][j] * c;
            self.m[i][j] += t;
        }
        for j in 0..self.rows {
            let t = &self.u[k][j] * c;
            self.u[i][j] += t;
        }
        for r in 0..self.rows {
            let t = &self.u_inv[r][i] * c;
            self.u_inv[r][k] -= t;
        }
    }

    /// col_j += c * col_k
    fn addmul_col(&mut self, j: usize, k: usize, c: &BigInt) {
        for r in 0..self.rows {
            let t = &self.m[r][k] * c;
            self.m[r][j] += t;
        }
        for r in 0..self.cols {
            let t = &self.v[r][k] * c;
            self.v[r][j] += t;
        }
        for jj in 0..self.cols {
            let t = &self.v_inv[j][jj] * c;
            self.v_inv[k][jj] -= t;
        }
    }

    fn neg_row(&mut self, i: usize) {
        for v in &mut self.m[i] {
            *v = -std::mem::take(v);
        }
        for v in &mut self.u[i] {
            *v = -std::mem::take(v);
        }
        for r in 0..self.rows {
            let t = -std::mem::take(&mut self.u_inv[r][i]);
            self.u_inv[r][i] = t;
        }
    }

    /// Smallest-nonzero-magnitude entry of the trailing submatrix.
    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = BigInt::zero();
        for i in k..self.rows {
            for j in k..self.cols {
                let a = &self.m[i][j];
                if a.is_zero() {
                    continue;
                }
                let ab = a.abs();
                if best.is_none() || ab < best_abs {
                    best = Some((i, j));
                    best_abs = ab;
                }
            }
        }
        best
    }
}

pub fn smith_normal_form(mat: &[Vec<BigInt>]) -> Snf {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut c = Calc {
        m: mat.to_vec(),
        rows,
        cols,
        u: ident(rows),
        u_inv: ident(rows),
        v: ident(cols),
        v_inv: ident(cols),
    };

    let max_rank = rows.min(cols);
    let mut rank = 0;
    'outer: for k in 0..max_rank {
        loop {
            let Some((pi, pj)) = c.find_pivot(k) else { break 'outer };
            c.swap_rows(k, pi);
            c.swap_cols(k, pj);

            let mut dirty = false;
            for i in k + 1..rows {
                if !c.m[i][k].is_zero() {
                    let q = c.m[i][k].div_floor(&c.m[k][k]);
                    if !q.is_zero() {
                        c.addmul_row(i, k, &-q);
                    }
                    if !c.m[i][k].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            for j in k + 1..cols {
                if !c.m[k][j].is_zero() {
                    let q = c.m[k][j].div_floor(&c.m[k][k]);
                    if !q.is_zero() {
                        c.addmul_col(j, k, &-q);
                    }
                    if !c.m[k][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }

            // force the divisibility chain: fold a bad row into row k
            let d = c.m[k][k].clone();
            let bad = (k + 1..rows).find(|&i| {
                (k + 1..cols).any(|j| !(&c.m[i][j] % &d).is_zero())
            });
            if let Some(i) = bad {
                c.addmul_row(k, i, &BigInt::one());
                continue;
            }

            if c.m[k][k].is_negative() {
                c.neg_row(k);
            }
            rank = k + 1;
            break;
        }
    }

    let diag = (0..rank).map(|k| c.m[k][k].clone()).collect();
    Snf { rows, cols, diag, u: c.u, u_inv: c.u_inv, v: c.v, v_inv: c.v_inv }
}

/// Dense integer matrix product, used by callers verifying U * M * V.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for kk in 0..k {
            if a[i][kk].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][kk] * &b[kk][j];
                out[i][j] += t;
            }
        }
    }
    out
}

//! Exact integer matrices: Smith normal form with transforms and Hermite lattice bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            data: values.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_block(&self, lo: usize, hi: usize) -> IntMatrix {
        IntMatrix {
            rows: hi - lo,
            cols: self.cols,
            data: self.data[lo * self.cols..hi * self.cols].to_vec(),
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }
}

/// `u * a * v = diag(diag, 0, ...)` with unimodular `u`, `v` and their inverses.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Work {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.row_axpy(dst, src, q);
        self.u.row_axpy(dst, src, q);
        self.u_inv.col_axpy(src, dst, &-q);
    }

    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.col_axpy(dst, src, q);
        self.v.col_axpy(dst, src, q);
        self.v_inv.row_axpy(src, dst, &-q);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Inverse of a square matrix with determinant ±1.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    let n = a.rows();
    if a.cols() != n {
        return None;
    }
    let s = smith(a);
    if s.diag.len() != n || s.diag.iter().any(|x| !x.abs().is_one()) {
        return None;
    }
    let mut d = IntMatrix::zeros(n, n);
    for (i, x) in s.diag.iter().enumerate() {
        d.set(i, i, x.clone());
    }
    Some(s.v.mul(&d).mul(&s.u))
}

pub fn smith(a: &IntMatrix) -> Smith {
    let (r, c) = (a.rows, a.cols);
    let mut w = Work {
        s: a.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        let Some((pi, pj)) = smallest_nonzero(&w.s, t, t..r, t..c) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.s.get(t, t).clone();
            for i in t + 1..r {
                let q = w.s.get(i, t).div_floor(&p);
                w.row_axpy(i, t, &-q);
            }
            for j in t + 1..c {
                let q = w.s.get(t, j).div_floor(&p);
                w.col_axpy(j, t, &-q);
            }
            let col_rest = (t + 1..r).find(|&i| !w.s.get(i, t).is_zero());
            let row_rest = (t + 1..c).find(|&j| !w.s.get(t, j).is_zero());
            if col_rest.is_some() || row_rest.is_some() {
                let (i, j) = smallest_nonzero(&w.s, t, t..r, t..c).expect("a nonzero remainder exists");
                w.swap_rows(t, i);
                w.swap_cols(t, j);
                continue;
            }
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !w.s.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => w.row_axpy(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.s.get(t, t).is_negative() {
            w.negate_row(t);
        }
        diag.push(w.s.get(t, t).clone());
    }
    Smith {
        diag,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
    }
}

/// Position of a nonzero entry of least absolute value in row `t` or column `t`
/// of the lower-right block when one exists there, else anywhere in the block.
fn smallest_nonzero(
    s: &IntMatrix,
    t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let consider = |i: usize, j: usize, best: &mut Option<(usize, usize)>| {
        let v = s.get(i, j);
        if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < s.get(bi, bj).abs()) {
            *best = Some((i, j));
        }
    };
    for i in rows.clone() {
        consider(i, t, &mut best);
    }
    for j in cols.clone() {
        consider(t, j, &mut best);
    }
    if best.is_some() {
        return best;
    }
    for i in rows {
        for j in cols.clone() {
            consider(i, j, &mut best);
        }
    }
    best
}

/// A sublattice of Z^dim kept as a row basis in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn new(dim: usize, generators: impl IntoIterator<Item = Vec<BigInt>>) -> Self {
        let mut rows: Vec<Vec<BigInt>> = generators
            .into_iter()
            .inspect(|g| assert_eq!(g.len(), dim, "generator length"))
            .filter(|g| g.iter().any(|x| !x.is_zero()))
            .collect();
        let mut basis: Vec<Vec<BigInt>> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            loop {
                let Some(p) = rows
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| !r[col].is_zero())
                    .min_by(|a, b| a.1[col].abs().cmp(&b.1[col].abs()))
                    .map(|(i, _)| i)
                else {
                    break;
                };
                let pivot = rows[p].clone();
                let mut done = true;
                for (i, r) in rows.iter_mut().enumerate() {
                    if i == p || r[col].is_zero() {
                        continue;
                    }
                    let q = r[col].div_floor(&pivot[col]);
                    for (x, y) in r.iter_mut().zip(&pivot) {
                        *x -= &q * y;
                    }
                    if !r[col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    let mut row = rows.swap_remove(p);
                    if row[col].is_negative() {
                        row.iter_mut().for_each(|x| *x = -&*x);
                    }
                    basis.push(row);
                    pivots.push(col);
                    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
                    break;
                }
            }
        }
        for j in 0..basis.len() {
            let pc = pivots[j];
            let pivot = basis[j].clone();
            for row in basis.iter_mut().take(j) {
                let q = row[pc].div_floor(&pivot[pc]);
                if !q.is_zero() {
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= &q * y;
                    }
                }
            }
        }
        Lattice { dim, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Coefficients of `v` in the basis, or `None` if `v` is outside the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim, "vector length");
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        let mut next = 0;
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if rest[next..pc].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = rest[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in rest.iter_mut().zip(row) {
                *x -= &q * y;
            }
            coords.push(q);
            next = pc + 1;
        }
        if rest.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }
}

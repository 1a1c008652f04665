//! Dense integer matrices with exact normal forms.
//!
//! Everything here is arbitrary-precision: Hermite and Smith normal forms
//! carry explicit unimodular transforms so every result can be re-multiplied
//! and checked, and integer/rational solvers never round.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rat::{rat_from_int, Rat};

/// Row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Result of row Hermite reduction: `u * m = h` with `u` unimodular.
#[derive(Debug, Clone)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of the pivot in each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

/// Result of Smith reduction: `u * m * v = s` with `u`, `v` unimodular and
/// `s` diagonal with a divisibility chain.
#[derive(Debug, Clone)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length mismatch");
        IntMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().cloned());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        IntMatrix::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
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

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        self.row(i).to_vec()
    }

    pub fn col_vec(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.get_mut(j, i) = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
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
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    acc += self.get(i, j) * &v[j];
                }
                acc
            })
            .collect()
    }

    /// `x * self` for a row vector `x`.
    pub fn vec_mul(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.rows, x.len());
        (0..self.cols)
            .map(|j| {
                let mut acc = BigInt::zero();
                for i in 0..self.rows {
                    acc += &x[i] * self.get(i, j);
                }
                acc
            })
            .collect()
    }

    /// `x * self` for a rational row vector `x`.
    pub fn vec_mul_rat(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.rows, x.len());
        (0..self.cols)
            .map(|j| {
                let mut acc = Rat::zero();
                for i in 0..self.rows {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc += &x[i] * rat_from_int(a);
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            *self.get_mut(i, j) = v;
        }
    }

    /// row_i -= q * row_k
    fn sub_scaled_row(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = q * self.get(k, j);
            *self.get_mut(i, j) -= delta;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// col_j -= q * col_k
    fn sub_scaled_col(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = q * self.get(i, k);
            *self.get_mut(i, j) -= delta;
        }
    }

    /// Row Hermite normal form with transform: `u * self = h`.
    ///
    /// Pivots are positive and entries above each pivot are reduced into
    /// `[0, pivot)`.
    pub fn hnf(&self) -> Hnf {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            if (r..self.rows).all(|i| h.get(i, c).is_zero()) {
                continue;
            }
            loop {
                // Move the smallest nonzero |entry| in this column to row r.
                let mut best: Option<usize> = None;
                for i in r..self.rows {
                    if h.get(i, c).is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if h.get(i, c).abs() < h.get(b, c).abs() {
                                best = Some(i);
                            }
                        }
                    }
                }
                let b = best.expect("nonzero entry exists");
                h.swap_rows(r, b);
                u.swap_rows(r, b);
                if h.get(r, c).is_negative() {
                    h.negate_row(r);
                    u.negate_row(r);
                }
                let mut done = true;
                for i in r + 1..self.rows {
                    if h.get(i, c).is_zero() {
                        continue;
                    }
                    let q = h.get(i, c).div_floor(h.get(r, c));
                    h.sub_scaled_row(i, r, &q);
                    u.sub_scaled_row(i, r, &q);
                    if !h.get(i, c).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            // Reduce entries above the pivot into [0, pivot).
            for i in 0..r {
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.sub_scaled_row(i, r, &q);
                u.sub_scaled_row(i, r, &q);
            }
            pivots.push(c);
            r += 1;
        }
        Hnf { h, u, pivots }
    }

    pub fn rank(&self) -> usize {
        self.hnf().pivots.len()
    }

    /// Smith normal form with transforms: `u * self * v = s`.
    pub fn snf(&self) -> Snf {
        let mut s = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        for k in 0..n {
            'outer: loop {
                // Locate the smallest nonzero |entry| in the trailing block.
                let mut best: Option<(usize, usize)> = None;
                for i in k..self.rows {
                    for j in k..self.cols {
                        if s.get(i, j).is_zero() {
                            continue;
                        }
                        match best {
                            None => best = Some((i, j)),
                            Some((bi, bj)) => {
                                if s.get(i, j).abs() < s.get(bi, bj).abs() {
                                    best = Some((i, j));
                                }
                            }
                        }
                    }
                }
                let (bi, bj) = match best {
                    None => break 'outer, // trailing block is zero
                    Some(p) => p,
                };
                s.swap_rows(k, bi);
                u.swap_rows(k, bi);
                s.swap_cols(k, bj);
                v.swap_cols(k, bj);
                if s.get(k, k).is_negative() {
                    s.negate_row(k);
                    u.negate_row(k);
                }
                let mut changed = false;
                for i in k + 1..self.rows {
                    if s.get(i, k).is_zero() {
                        continue;
                    }
                    let q = s.get(i, k).div_floor(s.get(k, k));
                    s.sub_scaled_row(i, k, &q);
                    u.sub_scaled_row(i, k, &q);
                    if !s.get(i, k).is_zero() {
                        changed = true;
                    }
                }
                if changed {
                    continue 'outer;
                }
                for j in k + 1..self.cols {
                    if s.get(k, j).is_zero() {
                        continue;
                    }
                    let q = s.get(k, j).div_floor(s.get(k, k));
                    s.sub_scaled_col(j, k, &q);
                    v.sub_scaled_col(j, k, &q);
                    if !s.get(k, j).is_zero() {
                        changed = true;
                    }
                }
                if changed {
                    continue 'outer;
                }
                // Enforce the divisibility chain.
                let d = s.get(k, k).clone();
                for i in k + 1..self.rows {
                    for j in k + 1..self.cols {
                        if !s.get(i, j).mod_floor(&d).is_zero() {
                            // Fold row i into row k and restart this step.
                            let one = BigInt::from(-1);
                            s.sub_scaled_row(k, i, &one);
                            u.sub_scaled_row(k, i, &one);
                            continue 'outer;
                        }
                    }
                }
                break 'outer;
            }
        }
        Snf { s, u, v }
    }

    /// Exact determinant (Bareiss fraction-free elimination).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                let swap = (k + 1..n).find(|&i| !m.get(i, k).is_zero());
                match swap {
                    None => return BigInt::zero(),
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let val = (m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j)) / &prev;
                    *m.get_mut(i, j) = val;
                }
                *m.get_mut(i, k) = BigInt::zero();
            }
            prev = m.get(k, k).clone();
        }
        sign * m.get(n - 1, n - 1).clone()
    }

    /// Basis of `{ x : self * x = 0 }` over the integers, as rows.
    ///
    /// The returned lattice is saturated (primitive basis).
    pub fn integer_kernel(&self) -> Vec<Vec<BigInt>> {
        let t = self.transpose();
        let Hnf { h, u, .. } = t.hnf();
        let mut basis = Vec::new();
        for i in 0..h.rows() {
            if h.row(i).iter().all(|x| x.is_zero()) {
                basis.push(u.row_vec(i));
            }
        }
        basis
    }

    /// Solve `self * x = b` over the integers.
    ///
    /// Returns a particular solution together with a basis of the integer
    /// kernel, or `None` when no integer solution exists.
    pub fn solve_integer(&self, b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
        assert_eq!(b.len(), self.rows);
        let Snf { s, u, v } = self.snf();
        let c = u.mul_vec(b);
        let n = self.cols;
        let mut y = vec![BigInt::zero(); n];
        let mut rank = 0usize;
        for i in 0..self.rows.min(n) {
            let d = s.get(i, i);
            if d.is_zero() {
                break;
            }
            rank = i + 1;
            let (q, r) = c[i].div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
        for (i, ci) in c.iter().enumerate().take(self.rows).skip(rank) {
            let _ = i;
            if !ci.is_zero() {
                return None;
            }
        }
        let x = v.mul_vec(&y);
        let kernel: Vec<Vec<BigInt>> = (rank..n).map(|j| v.col_vec(j)).collect();
        Some((x, kernel))
    }

    /// Solve `self * x = b` over the rationals (canonical solution: free
    /// variables set to zero). Returns `None` when inconsistent.
    pub fn solve_rational(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut a: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(rat_from_int).collect())
            .collect();
        let mut rhs: Vec<Rat> = b.to_vec();
        let rows = self.rows;
        let cols = self.cols;
        let mut pivot_cols = Vec::new();
        let mut r = 0usize;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let piv = (r..rows).find(|&i| !a[i][c].is_zero());
            let piv = match piv {
                None => continue,
                Some(p) => p,
            };
            a.swap(r, piv);
            rhs.swap(r, piv);
            let inv = a[r][c].recip();
            for j in c..cols {
                let val = &a[r][j] * &inv;
                a[r][j] = val;
            }
            let val = &rhs[r] * &inv;
            rhs[r] = val;
            for i in 0..rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..cols {
                        let val = &a[i][j] - &f * &a[r][j];
                        a[i][j] = val;
                    }
                    let val = &rhs[i] - &f * &rhs[r];
                    rhs[i] = val;
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        for i in r..rows {
            if !rhs[i].is_zero() {
                return None;
            }
        }
        let mut x = vec![Rat::zero(); cols];
        for (row_idx, &c) in pivot_cols.iter().enumerate() {
            x[c] = rhs[row_idx].clone();
        }
        Some(x)
    }

    /// Exact inverse of a square rational-invertible integer matrix.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<Rat>>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut cols_out: Vec<Vec<Rat>> = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rat::zero(); n];
            e[j] = Rat::one();
            let x = self.solve_rational(&e)?;
            // solve_rational returns the unique solution when invertible
            if self.mul_vec_rat(&x) != e {
                return None;
            }
            cols_out.push(x);
        }
        // Transpose the columns into row-major form.
        let mut inv = vec![vec![Rat::zero(); n]; n];
        for (j, col) in cols_out.iter().enumerate() {
            for i in 0..n {
                inv[i][j] = col[i].clone();
            }
        }
        Some(inv)
    }

    /// `self * v` for a rational column vector `v`.
    pub fn mul_vec_rat(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc += rat_from_int(a) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }
}

/// Smith data of a fixed matrix, kept for repeated integer solves.
#[derive(Debug, Clone)]
pub struct PresolvedSnf {
    rows: usize,
    cols: usize,
    diag: Vec<BigInt>,
    u: IntMatrix,
    v: IntMatrix,
    rank: usize,
}

impl PresolvedSnf {
    pub fn new(m: &IntMatrix) -> Self {
        let Snf { s, u, v } = m.snf();
        let mut diag = Vec::new();
        let mut rank = 0;
        for i in 0..m.rows().min(m.cols()) {
            let d = s.get(i, i).clone();
            if !d.is_zero() {
                rank = i + 1;
            }
            diag.push(d);
        }
        PresolvedSnf {
            rows: m.rows(),
            cols: m.cols(),
            diag,
            u,
            v,
            rank,
        }
    }

    /// Solve `m x = b` over the integers using the cached transforms.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let c = self.u.mul_vec(b);
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..self.rank {
            let (q, r) = c[i].div_rem(&self.diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
        for ci in c.iter().take(self.rows).skip(self.rank) {
            if !ci.is_zero() {
                return None;
            }
        }
        Some(self.v.mul_vec(&y))
    }
}

/// Multiply a rational square matrix (rows) by a rational column vector.
pub fn rat_mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            let mut acc = Rat::zero();
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() {
                    acc += a * b;
                }
            }
            acc
        })
        .collect()
}

pub fn rat_is_unimodular(m: &IntMatrix) -> bool {
    m.rows() == m.cols() && m.det().abs().is_one()
}

pub type RatMatrix = Vec<Vec<BigRational>>;

//! Dense integer matrices: Hermite and Smith normal forms, exact rational solve.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        Self {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols<T: Into<BigInt> + Clone>(cols: &[Vec<T>]) -> Self {
        Self::from_rows(cols).transpose()
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Row-style Hermite normal form `H = U * self` with `U` unimodular.
    ///
    /// `H` is in row echelon form, pivots are positive and entries above a
    /// pivot lie in `[0, pivot)`. Zero rows are kept at the bottom.
    pub fn hermite_normal_form(&self) -> (IntMatrix, IntMatrix) {
        let mut h = self.clone();
        let mut u = Self::identity(self.rows);
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            // gcd-combine the column below pivot_row into pivot_row
            loop {
                let nz: Vec<usize> = (pivot_row..self.rows)
                    .filter(|&i| !h.get(i, col).is_zero())
                    .collect();
                if nz.is_empty() {
                    break;
                }
                let best = *nz.iter().min_by_key(|&&i| h.get(i, col).abs()).unwrap();
                h.swap_rows(pivot_row, best);
                u.swap_rows(pivot_row, best);
                let mut done = true;
                for i in pivot_row + 1..self.rows {
                    if h.get(i, col).is_zero() {
                        continue;
                    }
                    let q = -h.get(i, col).div_floor(h.get(pivot_row, col));
                    h.add_row(i, pivot_row, &q);
                    u.add_row(i, pivot_row, &q);
                    if !h.get(i, col).is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h.get(pivot_row, col).is_zero() {
                continue;
            }
            if h.get(pivot_row, col).is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            let p = h.get(pivot_row, col).clone();
            for i in 0..pivot_row {
                let q = -h.get(i, col).div_floor(&p);
                h.add_row(i, pivot_row, &q);
                u.add_row(i, pivot_row, &q);
            }
            pivot_row += 1;
        }
        (h, u)
    }

    /// Smith normal form with transforms: `u * self * v == snf.diagonal_matrix()`.
    pub fn smith_normal_form(&self) -> Snf {
        snf_impl(self, true)
    }

    /// Invariant factors only (skips transform bookkeeping).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        snf_impl(self, false).diagonal
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }

    /// Solves `self * x = b` over the rationals.
    pub fn rational_solve(&self, b: &[BigRational]) -> Result<RationalSolution, ExactError> {
        if b.len() != self.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let m = self.rows;
        let n = self.cols;
        let mut a: Vec<Vec<BigRational>> = (0..m)
            .map(|i| {
                let mut row: Vec<BigRational> = self
                    .row(i)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect();
                row.push(b[i].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..m {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    let (pivot, row) = if i < r {
                        let (lo, hi) = a.split_at_mut(r);
                        (&hi[0], &mut lo[i])
                    } else {
                        let (lo, hi) = a.split_at_mut(i);
                        (&lo[r], &mut hi[0])
                    };
                    for (x, p) in row[c..=n].iter_mut().zip(&pivot[c..=n]) {
                        *x -= p * &f;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == m {
                break;
            }
        }
        if a[r..].iter().any(|row| !row[n].is_zero()) {
            return Err(ExactError::Inconsistent);
        }
        let mut x = vec![BigRational::zero(); n];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = a[i][n].clone();
        }
        Ok(RationalSolution {
            x,
            nullity: n - pivots.len(),
        })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A particular solution of a linear system plus the dimension of its
/// solution space. Free variables are set to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSolution {
    pub x: Vec<BigRational>,
    pub nullity: usize,
}

impl RationalSolution {
    pub fn is_unique(&self) -> bool {
        self.nullity == 0
    }
}

#[derive(Clone, Debug)]
pub struct Snf {
    /// `d_1 | d_2 | ...`, length `min(rows, cols)`, nonnegative.
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.u.rows(), self.v.cols());
        for (i, x) in self.diagonal.iter().enumerate() {
            d.set(i, i, x.clone());
        }
        d
    }
}

fn snf_impl(m: &IntMatrix, track: bool) -> Snf {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut u = if track {
        IntMatrix::identity(rows)
    } else {
        IntMatrix::zeros(0, 0)
    };
    let mut v = if track {
        IntMatrix::identity(cols)
    } else {
        IntMatrix::zeros(0, 0)
    };
    let k = rows.min(cols);
    for t in 0..k {
        loop {
            // smallest nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = a.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(a, u, v, k);
            };
            a.swap_rows(t, bi);
            a.swap_cols(t, bj);
            if track {
                u.swap_rows(t, bi);
                v.swap_cols(t, bj);
            }
            let p = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = -a.get(i, t).div_floor(&p);
                a.add_row(i, t, &q);
                if track {
                    u.add_row(i, t, &q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = -a.get(t, j).div_floor(&p);
                a.add_col(j, t, &q);
                if track {
                    v.add_col(j, t, &q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => {
                    a.add_row(t, i, &BigInt::one());
                    if track {
                        u.add_row(t, i, &BigInt::one());
                    }
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if track {
                u.negate_row(t);
            }
        }
    }
    finish(a, u, v, k)
}

fn finish(a: IntMatrix, u: IntMatrix, v: IntMatrix, k: usize) -> Snf {
    Snf {
        diagonal: (0..k).map(|i| a.get(i, i).clone()).collect(),
        u,
        v,
    }
}

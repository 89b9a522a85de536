//! Sublattices of `ZZ^n` kept in sparse row echelon form.
//!
//! This is the workhorse behind graded Chow group computations: relation
//! vectors are inserted one at a time, membership is decided by reduction
//! against the echelon basis, and the quotient `ZZ^n / L` is read off by
//! eliminating unit pivots and running a Smith normal form on what remains.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Sparse vector, entries sorted by column, no stored zeros.
pub type SparseVec = Vec<(usize, BigInt)>;

fn leading(v: &SparseVec) -> Option<(usize, &BigInt)> {
    v.first().map(|(c, x)| (*c, x))
}

/// `a*x + b*y` on sparse vectors.
fn combine(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (col, val) = match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, vy))) if cx == cy => {
                i += 1;
                j += 1;
                (*cx, a * vx + b * vy)
            }
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                i += 1;
                (*cx, a * vx)
            }
            (Some((cx, vx)), None) => {
                i += 1;
                (*cx, a * vx)
            }
            (_, Some((cy, vy))) => {
                j += 1;
                (*cy, b * vy)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// A sublattice of `ZZ^ncols` with an echelon basis indexed by pivot column.
#[derive(Clone, Debug)]
pub struct EchelonLattice {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonLattice {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a generator. Returns `true` when the lattice grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        v.retain(|(_, x)| !x.is_zero());
        debug_assert!(v.windows(2).all(|w| w[0].0 < w[1].0));
        let mut grew = false;
        while let Some((col, a)) = leading(&v) {
            let a = a.clone();
            let Some(row) = self.rows.get(&col) else {
                if a.is_negative() {
                    v = v.into_iter().map(|(c, x)| (c, -x)).collect();
                }
                self.rows.insert(col, v);
                return true;
            };
            let p = row[0].1.clone();
            if a.is_multiple_of(&p) {
                let q = a / &p;
                v = combine(&BigInt::one(), &v, &-q, row);
                continue;
            }
            // replace the pivot row by a gcd combination and keep reducing
            let eg = a.extended_gcd(&p);
            let (g, s, t) = (eg.gcd, eg.x, eg.y);
            let new_row = combine(&s, &v, &t, row);
            let rest = combine(&(&p / &g), &v, &-(&a / &g), row);
            self.rows.insert(col, new_row);
            v = rest;
            grew = true;
        }
        grew
    }

    /// Decides whether `v` lies in the lattice.
    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut v: SparseVec = v.iter().filter(|(_, x)| !x.is_zero()).cloned().collect();
        while let Some((col, a)) = leading(&v) {
            let Some(row) = self.rows.get(&col) else {
                return false;
            };
            let p = &row[0].1;
            if !a.is_multiple_of(p) {
                return false;
            }
            let q = a / p;
            v = combine(&BigInt::one(), &v, &-q, row);
        }
        true
    }

    /// Pivot columns whose pivot is `+-1`.
    pub fn unit_pivot_columns(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|(_, r)| r[0].1.abs().is_one())
            .map(|(c, _)| *c)
            .collect()
    }

    /// Structure of `ZZ^ncols / L`: free rank and the invariant factors
    /// greater than one.
    pub fn quotient(&self) -> (usize, Vec<BigInt>) {
        let mut unit: BTreeMap<usize, SparseVec> = BTreeMap::new();
        let mut other: Vec<SparseVec> = Vec::new();
        for (c, r) in &self.rows {
            if r[0].1.abs().is_one() {
                unit.insert(*c, r.clone());
            } else {
                other.push(r.clone());
            }
        }
        // Eliminate unit pivot columns from the remaining generators, in
        // increasing column order. Rows with a larger pivot never touch a
        // smaller column, so one pass suffices.
        for (c, r) in &unit {
            let p = &r[0].1;
            for v in other.iter_mut() {
                if let Some((_, x)) = v.iter().find(|(cc, _)| cc == c) {
                    let q = x * p; // p = +-1, so x/p == x*p
                    *v = combine(&BigInt::one(), v, &-q, r);
                }
            }
        }
        let free_cols: Vec<usize> = (0..self.ncols).filter(|c| !unit.contains_key(c)).collect();
        let index: BTreeMap<usize, usize> =
            free_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense = IntMatrix::zeros(other.len(), free_cols.len());
        for (i, v) in other.iter().enumerate() {
            for (c, x) in v {
                let j = *index.get(c).expect("unit columns eliminated");
                dense.set(i, j, x.clone());
            }
        }
        let factors = if other.is_empty() {
            Vec::new()
        } else {
            dense.invariant_factors()
        };
        let rank = factors.iter().filter(|d| !d.is_zero()).count();
        let torsion = factors.into_iter().filter(|d| d > &BigInt::one()).collect();
        (free_cols.len() - rank, torsion)
    }
}

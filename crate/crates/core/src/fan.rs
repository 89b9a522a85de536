//! Simplicial stacky fans and (weighted) star subdivision.
//!
//! Every ray carries a primitive generator, so the stacky structure is the
//! canonical one and no extra data is stored. Only maximal cones are kept;
//! faces are derived on demand.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{IntMatrix, MultiPoly};
use crate::LEFSCHETZ;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("vector {0:?} is zero")]
    ZeroVector(Vec<i64>),
    #[error("vector {0:?} is not primitive")]
    NonPrimitive(Vec<i64>),
    #[error("vector {0:?} lies outside the support of the fan")]
    OutsideSupport(Vec<i64>),
    #[error("expected a vector of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ray set {0:?} is not a cone of the fan")]
    ConeNotInFan(Vec<usize>),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("invalid level i = {i} for n = {n}")]
    InvalidLevel { n: usize, i: usize },
    #[error("fan dimension must be at least 1")]
    ZeroDimension,
    #[error("fan invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ray {
    pub label: String,
    pub vector: Vec<i64>,
}

fn gcd_of(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, x| g.gcd(x))
}

fn is_primitive(v: &[i64]) -> bool {
    gcd_of(v) == 1
}

/// A complete simplicial fan in `RR^dim` given by its maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackyFan {
    dim: usize,
    rays: Vec<Ray>,
    max_cones: BTreeSet<Vec<usize>>,
}

/// Serialized form: rays in insertion order, cones sorted lexicographically.
#[derive(Debug, Clone, Serialize)]
pub struct FanExport {
    pub dim: usize,
    pub rays: Vec<Ray>,
    pub max_cones: Vec<Vec<usize>>,
}

impl StackyFan {
    /// Builds a fan from raw parts. Cones are sorted index lists; no
    /// geometric validation happens here, see [`StackyFan::validate`].
    pub fn from_parts(
        dim: usize,
        rays: Vec<Ray>,
        max_cones: impl IntoIterator<Item = Vec<usize>>,
    ) -> Result<Self, FanError> {
        if dim == 0 {
            return Err(FanError::ZeroDimension);
        }
        for r in &rays {
            if r.vector.len() != dim {
                return Err(FanError::DimensionMismatch {
                    expected: dim,
                    found: r.vector.len(),
                });
            }
            if r.vector.iter().all(|&x| x == 0) {
                return Err(FanError::ZeroVector(r.vector.clone()));
            }
            if !is_primitive(&r.vector) {
                return Err(FanError::NonPrimitive(r.vector.clone()));
            }
        }
        let max_cones = max_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        Ok(Self {
            dim,
            rays,
            max_cones,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn max_cones(&self) -> &BTreeSet<Vec<usize>> {
        &self.max_cones
    }

    pub fn ray_index(&self, label: &str) -> Option<usize> {
        self.rays.iter().position(|r| r.label == label)
    }

    fn ray_index_of_vector(&self, v: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r.vector == v)
    }

    fn check_len(&self, v: &[i64]) -> Result<(), FanError> {
        if v.len() != self.dim {
            return Err(FanError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn cone_matrix(&self, cone: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<i64>> = cone.iter().map(|&i| self.rays[i].vector.clone()).collect();
        IntMatrix::from_cols(&cols)
    }

    /// Coordinates of `v` in the basis of a maximal cone's rays.
    fn coordinates(&self, cone: &[usize], v: &[i64]) -> Option<Vec<BigRational>> {
        let b: Vec<BigRational> = v
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        let sol = self.cone_matrix(cone).rational_solve(&b).ok()?;
        sol.is_unique().then_some(sol.x)
    }

    /// The cone whose relative interior contains `v`, with the (strictly
    /// positive) coefficients of `v` on its rays.
    pub fn minimal_cone(&self, v: &[i64]) -> Result<(Vec<usize>, Vec<BigRational>), FanError> {
        self.check_len(v)?;
        if v.iter().all(|&x| x == 0) {
            return Err(FanError::ZeroVector(v.to_vec()));
        }
        for cone in &self.max_cones {
            let Some(x) = self.coordinates(cone, v) else {
                continue;
            };
            if x.iter().any(|c| c.is_negative()) {
                continue;
            }
            let (idx, coeffs): (Vec<usize>, Vec<BigRational>) = cone
                .iter()
                .zip(x)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&i, c)| (i, c))
                .unzip();
            return Ok((idx, coeffs));
        }
        Err(FanError::OutsideSupport(v.to_vec()))
    }

    /// Star subdivision at a primitive vector; a no-op when `v` is already a
    /// ray of the fan.
    pub fn star_subdivide(&self, v: &[i64], label: &str) -> Result<StackyFan, FanError> {
        self.check_len(v)?;
        if v.iter().all(|&x| x == 0) {
            return Err(FanError::ZeroVector(v.to_vec()));
        }
        if !is_primitive(v) {
            return Err(FanError::NonPrimitive(v.to_vec()));
        }
        if self.ray_index_of_vector(v).is_some() {
            return Ok(self.clone());
        }
        let (center, _) = self.minimal_cone(v)?;
        let mut rays = self.rays.clone();
        let new = rays.len();
        rays.push(Ray {
            label: label.to_string(),
            vector: v.to_vec(),
        });
        let mut cones = BTreeSet::new();
        for cone in &self.max_cones {
            if !center.iter().all(|c| cone.contains(c)) {
                cones.insert(cone.clone());
                continue;
            }
            for drop in &center {
                let mut c: Vec<usize> = cone.iter().copied().filter(|x| x != drop).collect();
                c.push(new);
                c.sort_unstable();
                cones.insert(c);
            }
        }
        Ok(StackyFan {
            dim: self.dim,
            rays,
            max_cones: cones,
        })
    }

    /// Weighted blow-up along the orbit closure of `cone`: star subdivision at
    /// `sum w_k v_k`. The weighted sum must already be primitive.
    pub fn insert_weighted_ray(
        &self,
        cone: &[usize],
        weights: &[i64],
        label: &str,
    ) -> Result<StackyFan, FanError> {
        if cone.len() != weights.len() {
            return Err(FanError::InvalidWeights(format!(
                "{} rays but {} weights",
                cone.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w < 1) {
            return Err(FanError::InvalidWeights(format!(
                "weight {w} is not positive"
            )));
        }
        let mut sorted = cone.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != cone.len()
            || sorted.iter().any(|&i| i >= self.rays.len())
            || !self
                .max_cones
                .iter()
                .any(|m| sorted.iter().all(|i| m.contains(i)))
        {
            return Err(FanError::ConeNotInFan(cone.to_vec()));
        }
        let mut v = vec![0i64; self.dim];
        for (&i, &w) in cone.iter().zip(weights) {
            for (x, r) in v.iter_mut().zip(&self.rays[i].vector) {
                *x += w * r;
            }
        }
        if !is_primitive(&v) {
            return Err(FanError::NonPrimitive(v));
        }
        self.star_subdivide(&v, label)
    }

    /// All cones (faces of maximal cones), grouped by dimension `0..=dim`.
    pub fn cones_by_dim(&self) -> Vec<BTreeSet<Vec<usize>>> {
        let mut out = vec![BTreeSet::new(); self.dim + 1];
        for cone in &self.max_cones {
            let k = cone.len();
            for mask in 0u64..(1u64 << k) {
                let face: Vec<usize> = (0..k)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| cone[b])
                    .collect();
                out[face.len()].insert(face);
            }
        }
        out
    }

    /// Number of cones in each dimension `0..=dim`.
    pub fn cone_census(&self) -> Vec<usize> {
        self.cones_by_dim().iter().map(BTreeSet::len).collect()
    }

    /// Class in the Grothendieck ring from the orbit stratification:
    /// `sum_sigma (L - 1)^(dim - dim sigma)`.
    pub fn fan_motive(&self) -> Result<MultiPoly, FanError> {
        self.check_complete()?;
        let torus = &MultiPoly::var(LEFSCHETZ) - &MultiPoly::one();
        Ok(self
            .cone_census()
            .iter()
            .enumerate()
            .map(|(k, &count)| torus.pow((self.dim - k) as u32).scale(&BigInt::from(count)))
            .sum())
    }

    /// Minimal ray subsets that do not span a cone.
    pub fn minimal_non_faces(&self) -> BTreeSet<Vec<usize>> {
        let faces: BTreeSet<Vec<usize>> = self.cones_by_dim().into_iter().flatten().collect();
        let n = self.rays.len();
        let mut out = BTreeSet::new();
        // A minimal non-face has at most dim + 1 elements in a simplicial fan.
        let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..=self.dim {
            let mut next = Vec::new();
            for s in &frontier {
                let start = s.last().map_or(0, |&x| x + 1);
                for r in start..n {
                    let mut t = s.clone();
                    t.push(r);
                    if faces.contains(&t) {
                        next.push(t);
                    } else if (0..t.len()).all(|drop| {
                        let mut sub = t.clone();
                        sub.remove(drop);
                        faces.contains(&sub)
                    }) {
                        out.insert(t);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    /// Cone set keyed by ray vectors, independent of labels and ray order.
    pub fn geometric_cones(&self) -> BTreeSet<BTreeSet<Vec<i64>>> {
        self.max_cones
            .iter()
            .map(|c| c.iter().map(|&i| self.rays[i].vector.clone()).collect())
            .collect()
    }

    fn check_simplicial(&self) -> Result<(), FanError> {
        for cone in &self.max_cones {
            if cone.len() != self.dim || cone.iter().any(|&i| i >= self.rays.len()) {
                return Err(FanError::Invariant(format!(
                    "cone {cone:?} is not full-dimensional"
                )));
            }
            if self.cone_matrix(cone).determinant().is_zero() {
                return Err(FanError::Invariant(format!(
                    "rays of cone {cone:?} are dependent"
                )));
            }
        }
        Ok(())
    }

    /// Each codimension-one face lies in exactly two maximal cones.
    pub fn check_complete(&self) -> Result<(), FanError> {
        self.check_simplicial()?;
        for (facet, owners) in self.facet_owners() {
            if owners.len() != 2 {
                return Err(FanError::Invariant(format!(
                    "facet {facet:?} lies in {} maximal cones",
                    owners.len()
                )));
            }
        }
        Ok(())
    }

    fn facet_owners(&self) -> BTreeMap<Vec<usize>, Vec<&Vec<usize>>> {
        let mut owners: BTreeMap<Vec<usize>, Vec<&Vec<usize>>> = BTreeMap::new();
        for cone in &self.max_cones {
            for drop in 0..cone.len() {
                let mut f = cone.clone();
                f.remove(drop);
                owners.entry(f).or_default().push(cone);
            }
        }
        owners
    }

    /// Full validation: simplicial, complete, adjacent cones on opposite
    /// sides of their common facet, a generic vector covered exactly once,
    /// and (for `dim <= 5`) every pairwise intersection a common face.
    pub fn validate(&self) -> Result<(), FanError> {
        self.check_complete()?;
        self.check_facet_sides()?;
        self.check_generic_cover()?;
        if self.dim <= 5 {
            self.check_pairwise_intersections()?;
        }
        Ok(())
    }

    fn check_facet_sides(&self) -> Result<(), FanError> {
        for (facet, owners) in self.facet_owners() {
            let sides: Vec<BigInt> = owners
                .iter()
                .map(|cone| {
                    let apex = cone
                        .iter()
                        .find(|i| !facet.contains(i))
                        .expect("one extra ray");
                    let mut cols: Vec<Vec<i64>> =
                        facet.iter().map(|&i| self.rays[i].vector.clone()).collect();
                    cols.push(self.rays[*apex].vector.clone());
                    IntMatrix::from_cols(&cols).determinant()
                })
                .collect();
            if sides.len() == 2 && sides[0].signum() == sides[1].signum() {
                return Err(FanError::Invariant(format!(
                    "cones across facet {facet:?} overlap"
                )));
            }
        }
        Ok(())
    }

    fn check_generic_cover(&self) -> Result<(), FanError> {
        let primes = [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        'attempt: for shift in 0..6 {
            let v: Vec<i64> = (0..self.dim)
                .map(|k| {
                    let p = primes[(k + shift) % primes.len()];
                    let s = if (k + shift) % 2 == 0 { 1 } else { -1 };
                    s * p * (1000 + 7 * k as i64 + shift as i64)
                })
                .collect();
            let mut hits = 0;
            for cone in &self.max_cones {
                let x = self.coordinates(cone, &v).expect("simplicial");
                if x.iter().any(|c| c.is_zero()) {
                    continue 'attempt;
                }
                if x.iter().all(|c| c.is_positive()) {
                    hits += 1;
                }
            }
            if hits != 1 {
                return Err(FanError::Invariant(format!(
                    "generic vector {v:?} lies in {hits} maximal cones"
                )));
            }
            return Ok(());
        }
        Err(FanError::Invariant("no generic test vector found".into()))
    }

    /// For every pair of maximal cones, checks that their intersection is the
    /// cone on their common rays by enumerating the extreme rays of the
    /// intersection in the coordinates of the first cone.
    fn check_pairwise_intersections(&self) -> Result<(), FanError> {
        let cones: Vec<&Vec<usize>> = self.max_cones.iter().collect();
        let n = self.dim;
        // x = B1 lam lies in cone(c2) iff sign(det B2) adj(B2) B1 lam >= 0
        let signed_adj: Vec<IntMatrix> = cones
            .iter()
            .map(|c| {
                let b = self.cone_matrix(c);
                let adj = adjugate(&b);
                if b.determinant().is_negative() {
                    negate(&adj)
                } else {
                    adj
                }
            })
            .collect();
        for (a, c1) in cones.iter().enumerate() {
            let b1 = self.cone_matrix(c1);
            for (b, c2) in cones.iter().enumerate().skip(a + 1) {
                let shared: Vec<bool> = c1.iter().map(|r| c2.contains(r)).collect();
                // adjacent cones are already separated by their common facet
                if shared.iter().filter(|&&s| s).count() + 1 == n {
                    continue;
                }
                let m = signed_adj[b].mul(&b1);
                let mut constraints: Vec<Vec<BigInt>> = (0..n)
                    .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
                    .collect();
                constraints.extend((0..n).map(|i| primitive_row(m.row(i))));
                let rays = small_constraints(&constraints)
                    .and_then(|c| extreme_rays_small(&c, n))
                    .unwrap_or_else(|| extreme_rays(&constraints, n));
                for ray in rays {
                    if ray.iter().zip(&shared).any(|(x, s)| !s && !x.is_zero()) {
                        return Err(FanError::Invariant(format!(
                            "cones {c1:?} and {c2:?} meet outside a common face"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn export(&self) -> FanExport {
        FanExport {
            dim: self.dim,
            rays: self.rays.clone(),
            max_cones: self.max_cones.iter().cloned().collect(),
        }
    }
}

fn negate(m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, -m.get(i, j));
        }
    }
    out
}

fn minor(m: &IntMatrix, skip_row: usize, skip_col: usize) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = (0..m.rows())
        .filter(|&i| i != skip_row)
        .map(|i| {
            (0..m.cols())
                .filter(|&j| j != skip_col)
                .map(|j| m.get(i, j).clone())
                .collect()
        })
        .collect();
    if rows.is_empty() {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(&rows)
    }
}

fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let d = minor(m, j, i).determinant();
            adj.set(i, j, if (i + j) % 2 == 0 { d } else { -d });
        }
    }
    adj
}

fn primitive_row(row: &[BigInt]) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        row.to_vec()
    } else {
        row.iter().map(|x| x / &g).collect()
    }
}

fn small_constraints(c: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    c.iter()
        .map(|r| r.iter().map(|x| i128::try_from(x).ok()).collect())
        .collect()
}

/// Fraction-free determinant with overflow detection.
fn det_small(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[k][k];
    }
    m[n - 1][n - 1].checked_mul(sign)
}

/// [`extreme_rays`] in machine integers; `None` on overflow.
fn extreme_rays_small(constraints: &[Vec<i128>], n: usize) -> Option<Vec<Vec<BigInt>>> {
    let mut out = Vec::new();
    let k = constraints.len();
    let feasible = |y: &[i128]| -> Option<bool> {
        for c in constraints {
            let mut dot = 0i128;
            for (a, b) in c.iter().zip(y) {
                dot = dot.checked_add(a.checked_mul(*b)?)?;
            }
            if dot < 0 {
                return Some(false);
            }
        }
        Some(true)
    };
    if n == 1 {
        for s in [1i128, -1] {
            if feasible(&[s])? {
                out.push(vec![BigInt::from(s)]);
            }
        }
        return Some(out);
    }
    let mut subset: Vec<usize> = (0..n - 1).collect();
    loop {
        let mut x = Vec::with_capacity(n);
        for j in 0..n {
            let sub: Vec<Vec<i128>> = subset
                .iter()
                .map(|&r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| constraints[r][c])
                        .collect()
                })
                .collect();
            let d = det_small(sub)?;
            x.push(if j % 2 == 0 { d } else { -d });
        }
        if x.iter().any(|&v| v != 0) {
            for sign in [1i128, -1] {
                let y: Vec<i128> = x.iter().map(|v| v * sign).collect();
                if feasible(&y)? {
                    out.push(y.into_iter().map(BigInt::from).collect());
                }
            }
        }
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Some(out);
            }
            i -= 1;
            if subset[i] < k - (n - 1 - i) {
                subset[i] += 1;
                for j in i + 1..n - 1 {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Extreme rays of the pointed cone `{x : c . x >= 0 for every row c}`.
fn extreme_rays(constraints: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    if n == 1 {
        for s in [1i64, -1] {
            let x = vec![BigInt::from(s)];
            if constraints.iter().all(|c| !(&c[0] * &x[0]).is_negative()) {
                out.push(x);
            }
        }
        return out;
    }
    let k = constraints.len();
    let mut subset: Vec<usize> = (0..n - 1).collect();
    loop {
        let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| constraints[i].clone()).collect();
        let sub = IntMatrix::from_rows(&rows);
        // generalized cross product: null vector of an (n-1) x n matrix
        let x: Vec<BigInt> = (0..n)
            .map(|j| {
                let d = minor(&sub, usize::MAX, j).determinant();
                if j % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .collect();
        if x.iter().any(|v| !v.is_zero()) {
            for sign in [1i64, -1] {
                let y: Vec<BigInt> = x.iter().map(|v| v * sign).collect();
                let feasible = constraints.iter().all(|c| {
                    let dot: BigInt = c.iter().zip(&y).map(|(a, b)| a * b).sum();
                    !dot.is_negative()
                });
                if feasible {
                    out.push(y);
                }
            }
        }
        // next combination
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] < k - (n - 1 - i) {
                subset[i] += 1;
                for j in i + 1..n - 1 {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn unit_vector(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

/// Fan of `P^n`: rays `sigma_k = e_k`, `tau = -sum e_k`, maximal cones all
/// `n`-subsets.
pub fn projective_fan(n: usize) -> Result<StackyFan, FanError> {
    if n == 0 {
        return Err(FanError::ZeroDimension);
    }
    let mut rays: Vec<Ray> = (0..n)
        .map(|k| Ray {
            label: format!("sigma_{}", k + 1),
            vector: unit_vector(n, k),
        })
        .collect();
    rays.push(Ray {
        label: "tau".into(),
        vector: vec![-1; n],
    });
    let cones = (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect::<Vec<_>>());
    StackyFan::from_parts(n, rays, cones)
}

/// Primitive generator of the ray added when passing from level `j` to
/// level `j - 1`: `sum_{k=n-j+1}^{n} (k + j - n) e_k`.
pub fn rho_vector(n: usize, j: usize) -> Vec<i64> {
    assert!((1..=n).contains(&j), "rho index out of range");
    (1..=n)
        .map(|k| if k + j > n { (k + j - n) as i64 } else { 0 })
        .collect()
}

/// Lattice automorphism induced by `t -> 1/t` on `Sym^n P^1 = P^n`:
/// it swaps the coordinate divisors of `e_k` and `e_{n-k}`, so `e_k -> e_{n-k}`
/// for `k < n` and `e_n -> tau`.
pub fn infinity_involution(n: usize, v: &[i64]) -> Vec<i64> {
    assert_eq!(v.len(), n);
    let mut out = vec![0i64; n];
    for (k, &c) in v.iter().enumerate() {
        let k1 = k + 1;
        if k1 < n {
            out[n - k1 - 1] += c;
        } else {
            for x in out.iter_mut() {
                *x -= c;
            }
        }
    }
    out
}

fn check_level(n: usize, i: usize) -> Result<(), FanError> {
    if n == 0 {
        return Err(FanError::ZeroDimension);
    }
    if i > n {
        return Err(FanError::InvalidLevel { n, i });
    }
    Ok(())
}

/// Fan of `Hilb^n(P^1|0)_{<= i}`: `P^n` star-subdivided at `rho_n, ..., rho_{i+1}`.
/// Level `0` gives the same fan as level `1`.
pub fn hilb_fan(n: usize, i: usize) -> Result<StackyFan, FanError> {
    check_level(n, i)?;
    let mut fan = projective_fan(n)?;
    for j in (i.max(1) + 1..=n).rev() {
        fan = fan.star_subdivide(&rho_vector(n, j), &format!("rho_{j}"))?;
    }
    Ok(fan)
}

/// Fan of `Hilb^n(P^1|0+inf)` at levels `(i_zero, i_inf)`: the zero-side rays
/// followed by their images under [`infinity_involution`].
pub fn hilb_fan_two_markings(n: usize, i_zero: usize, i_inf: usize) -> Result<StackyFan, FanError> {
    check_level(n, i_zero)?;
    check_level(n, i_inf)?;
    let mut fan = hilb_fan(n, i_zero)?;
    for j in (i_inf.max(1) + 1..=n).rev() {
        let v = infinity_involution(n, &rho_vector(n, j));
        fan = fan.star_subdivide(&v, &format!("rho_inf_{j}"))?;
    }
    Ok(fan)
}

/// A subdivision step of the two-marking tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Zero,
    Infinity,
}

/// Applies the two-marking subdivisions in an arbitrary interleaving.
pub fn two_marking_fan_in_order(n: usize, steps: &[(Side, usize)]) -> Result<StackyFan, FanError> {
    let mut fan = projective_fan(n)?;
    for &(side, j) in steps {
        if !(1..=n).contains(&j) {
            return Err(FanError::InvalidLevel { n, i: j });
        }
        let (v, label) = match side {
            Side::Zero => (rho_vector(n, j), format!("rho_{j}")),
            Side::Infinity => (
                infinity_involution(n, &rho_vector(n, j)),
                format!("rho_inf_{j}"),
            ),
        };
        fan = fan.star_subdivide(&v, &label)?;
    }
    Ok(fan)
}

//! Graded pieces of a presented ring by monomial enumeration.
//!
//! The degree-`k` piece of the ideal is spanned by `relation * monomial` for
//! every relation of degree `d <= k` and every monomial of degree `k - d`.
//! Those vectors go into an [`EchelonLattice`] over the degree-`k` monomial
//! basis, which answers membership and yields the quotient group.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use super::{ChowError, GradedPresentation};
use crate::exact::{EchelonLattice, MultiPoly, SparseVec};

/// Structure of one graded piece: `ZZ^rank + sum ZZ/d_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub degree: usize,
    pub rank: usize,
    #[serde(serialize_with = "serialize_factors")]
    pub torsion: Vec<BigInt>,
}

fn serialize_factors<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for d in v {
        match u64::try_from(d) {
            Ok(x) => seq.serialize_element(&x)?,
            Err(_) => seq.serialize_element(&d.to_string())?,
        }
    }
    seq.end()
}

/// All exponent vectors of weighted degree `k`.
fn monomials_of_degree(degrees: &[u32], k: u32) -> Vec<Vec<u32>> {
    fn rec(degrees: &[u32], pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let d = degrees[pos];
        let max = left.checked_div(d).unwrap_or(0);
        for e in 0..=max {
            cur[pos] = e;
            rec(degrees, pos + 1, left - e * d, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; degrees.len()];
    rec(degrees, 0, k, &mut cur, &mut out);
    out
}

/// A relation of fixed degree as exponent vectors with coefficients.
type Relation = (u32, Vec<(Vec<u32>, BigInt)>);

#[derive(Debug, Clone)]
struct Piece {
    monomials: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    lattice: EchelonLattice,
}

/// The homogeneous pieces of an ideal in degrees `0..=max_degree`.
#[derive(Debug, Clone)]
pub struct GradedIdeal {
    vars: Vec<String>,
    degrees: Vec<u32>,
    pieces: Vec<Piece>,
}

impl GradedIdeal {
    /// Builds the pieces of the ideal of `pres` (base relations included).
    pub fn new(pres: &GradedPresentation, max_degree: usize) -> Result<Self, ChowError> {
        if pres.base().is_symbolic() {
            return Err(ChowError::SymbolicGroups);
        }
        let (vars, degrees): (Vec<String>, Vec<u32>) = pres.variables().into_iter().unzip();
        let mut rels: Vec<Relation> = Vec::new();
        for r in pres.all_relations() {
            if let Some(d) = pres.relation_degree(&r)? {
                rels.push((d, r.exponents_over(&vars)));
            }
        }
        let pieces = (0..=max_degree)
            .map(|k| build_piece(&degrees, &rels, k as u32))
            .collect();
        Ok(Self {
            vars,
            degrees,
            pieces,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    /// Structure of the quotient ring in degree `k`.
    pub fn piece(&self, k: usize) -> GradedPiece {
        let (rank, torsion) = self.pieces[k].lattice.quotient();
        GradedPiece {
            degree: k,
            rank,
            torsion,
        }
    }

    pub fn pieces(&self) -> Vec<GradedPiece> {
        (0..self.pieces.len()).map(|k| self.piece(k)).collect()
    }

    fn weight(&self, v: &str) -> u32 {
        self.vars
            .iter()
            .position(|w| w == v)
            .map_or(0, |i| self.degrees[i])
    }

    /// Coordinates of a homogeneous polynomial of degree `k` in the monomial
    /// basis of that degree.
    pub(crate) fn coordinates(&self, p: &MultiPoly, k: usize) -> Result<SparseVec, ChowError> {
        let piece = &self.pieces[k];
        if let Some(v) = p.vars().iter().find(|v| !self.vars.contains(v)) {
            return Err(ChowError::UnknownVariable(v.clone()));
        }
        let mut v: SparseVec = p
            .exponents_over(&self.vars)
            .into_iter()
            .map(|(e, c)| (piece.index[&e], c))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        Ok(v)
    }

    /// Degree-`k` monomial basis, in column order.
    pub(crate) fn monomials(&self, k: usize) -> &[Vec<u32>] {
        &self.pieces[k].monomials
    }

    pub(crate) fn lattice(&self, k: usize) -> &EchelonLattice {
        &self.pieces[k].lattice
    }

    /// Ideal membership, checked on every homogeneous component up to
    /// [`GradedIdeal::max_degree`]; components of higher degree count as
    /// members.
    pub fn contains(&self, p: &MultiPoly) -> Result<bool, ChowError> {
        let weight = |v: &str| self.weight(v);
        for (d, comp) in p.homogeneous_components(&weight) {
            let d = d as usize;
            if d > self.max_degree() {
                continue;
            }
            let v = self.coordinates(&comp, d)?;
            if !self.pieces[d].lattice.contains(&v) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn build_piece(degrees: &[u32], rels: &[Relation], k: u32) -> Piece {
    let monomials = monomials_of_degree(degrees, k);
    let index: HashMap<Vec<u32>, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let mut lattice = EchelonLattice::new(monomials.len());
    let mut multipliers: HashMap<u32, Vec<Vec<u32>>> = HashMap::new();
    for (d, terms) in rels {
        if *d > k {
            continue;
        }
        let mults = multipliers
            .entry(k - d)
            .or_insert_with(|| monomials_of_degree(degrees, k - d));
        for mu in mults.iter() {
            let mut v: SparseVec = terms
                .iter()
                .map(|(e, c)| {
                    let prod: Vec<u32> = e.iter().zip(mu).map(|(a, b)| a + b).collect();
                    (index[&prod], c.clone())
                })
                .collect();
            v.sort_by_key(|(i, _)| *i);
            lattice.insert(v);
        }
    }
    Piece {
        monomials,
        index,
        lattice,
    }
}

/// Degree-`k` piece of `pres`.
pub fn graded_group(pres: &GradedPresentation, k: usize) -> Result<GradedPiece, ChowError> {
    if k > pres.top_degree() {
        return Err(ChowError::DegreeOutOfRange {
            degree: k,
            top: pres.top_degree(),
        });
    }
    if pres.base().is_symbolic() {
        return Err(ChowError::SymbolicGroups);
    }
    let (vars, degrees): (Vec<String>, Vec<u32>) = pres.variables().into_iter().unzip();
    let mut rels = Vec::new();
    for r in pres.all_relations() {
        if let Some(d) = pres.relation_degree(&r)? {
            rels.push((d, r.exponents_over(&vars)));
        }
    }
    let (rank, torsion) = build_piece(&degrees, &rels, k as u32).lattice.quotient();
    Ok(GradedPiece {
        degree: k,
        rank,
        torsion,
    })
}

/// All pieces in degrees `0..=top_degree`.
pub fn graded_groups(pres: &GradedPresentation) -> Result<Vec<GradedPiece>, ChowError> {
    Ok(GradedIdeal::new(pres, pres.top_degree())?.pieces())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(&[1, 1, 1], 2).len(), 6);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
        assert_eq!(monomials_of_degree(&[], 0), vec![Vec::<u32>::new()]);
        assert!(monomials_of_degree(&[], 1).is_empty());
    }
}

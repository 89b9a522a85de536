use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{eps_name, ChowError, GradedIdeal, GradedPiece, GradedPresentation, HYPERPLANE};
use crate::exact::{EchelonLattice, MultiPoly};
use crate::fan::{infinity_involution, projective_fan, rho_vector, StackyFan};

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub image: String,
    pub holds: bool,
}

/// Outcome of mapping one presentation into another.
#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub map: BTreeMap<String, String>,
    pub relations: Vec<RelationCheck>,
    pub groups_source: Vec<GradedPiece>,
    pub groups_target: Vec<GradedPiece>,
    pub groups_equal: bool,
    /// The images of the degree-one generators span the target in degree one.
    pub degree_one_surjective: bool,
}

impl CompareReport {
    /// Every relation maps into the target ideal and the graded groups agree.
    pub fn passed(&self) -> bool {
        self.groups_equal && self.relations.iter().all(|r| r.holds)
    }
}

fn check_map(
    a: &GradedPresentation,
    b: &GradedPresentation,
    map: &BTreeMap<String, MultiPoly>,
) -> Result<(), ChowError> {
    for (v, d) in a.variables() {
        let image = map
            .get(&v)
            .ok_or_else(|| ChowError::BadMap(format!("{v} is not mapped")))?;
        if let Some(e) = b.relation_degree(image)? {
            if e != d {
                return Err(ChowError::BadMap(format!(
                    "{v} has degree {d} but its image has degree {e}"
                )));
            }
        }
    }
    Ok(())
}

fn degree_one_span(target: &GradedIdeal, images: &[MultiPoly]) -> Result<bool, ChowError> {
    if target.max_degree() < 1 {
        return Ok(true);
    }
    let mut lattice: EchelonLattice = target.lattice(1).clone();
    for p in images {
        let weight = |v: &str| {
            if target.variables().iter().any(|w| w == v) {
                1
            } else {
                0
            }
        };
        if let Some(c) = p.homogeneous_components(&weight).get(&1) {
            lattice.insert(target.coordinates(c, 1)?);
        }
    }
    Ok(lattice.quotient() == (0, Vec::new()))
}

/// Checks that `map` induces a ring map `a -> b` and compares graded groups.
pub fn compare_presentations(
    a: &GradedPresentation,
    b: &GradedPresentation,
    map: &BTreeMap<String, MultiPoly>,
) -> Result<CompareReport, ChowError> {
    check_map(a, b, map)?;
    let top = a.top_degree().max(b.top_degree());
    let ia = GradedIdeal::new(a, top)?;
    let ib = GradedIdeal::new(b, top)?;
    let mut relations = Vec::new();
    for r in a.all_relations() {
        let image = r.specialize(map);
        let holds = ib.contains(&image)?;
        relations.push(RelationCheck {
            relation: r.to_canonical_string(),
            image: image.to_canonical_string(),
            holds,
        });
    }
    let groups_source = ia.pieces();
    let groups_target = ib.pieces();
    let images: Vec<MultiPoly> = a
        .variables()
        .iter()
        .filter(|(_, d)| *d == 1)
        .map(|(v, _)| map[v].clone())
        .collect();
    Ok(CompareReport {
        map: map
            .iter()
            .map(|(k, v)| (k.clone(), v.to_canonical_string()))
            .collect(),
        relations,
        groups_equal: groups_source == groups_target,
        groups_source,
        groups_target,
        degree_one_surjective: degree_one_span(&ib, &images)?,
    })
}

/// Toric model of `Hilb^n(P^1|0, inf)` at the given levels (one or two
/// markings) with the pullback map into its Stanley–Reisner presentation:
/// `H` and each `eps^{(r)}_j` go to the total transforms of `tau` and of the
/// exceptional ray `rho_j` (`rho_inf_j` for the second marking).
pub fn toric_pullback_map(
    n: usize,
    levels: &[usize],
) -> Result<(StackyFan, BTreeMap<String, MultiPoly>), ChowError> {
    if levels.is_empty() || levels.len() > 2 || levels.iter().any(|&i| i > n) {
        return Err(ChowError::InvalidLevels {
            n,
            levels: levels.to_vec(),
        });
    }
    let mut fan = projective_fan(n)?;
    let mut divisors: BTreeMap<String, BTreeMap<String, BigInt>> = BTreeMap::from([(
        HYPERPLANE.to_string(),
        BTreeMap::from([("tau".to_string(), BigInt::one())]),
    )]);
    for (idx, &i) in levels.iter().enumerate() {
        for j in (i.max(1) + 1..=n).rev() {
            let (v, label) = if idx == 0 {
                (rho_vector(n, j), format!("rho_{j}"))
            } else {
                (
                    infinity_involution(n, &rho_vector(n, j)),
                    format!("rho_inf_{j}"),
                )
            };
            let (cone, weights) = fan.minimal_cone(&v)?;
            for divisor in divisors.values_mut() {
                let mut c = BigRational::zero();
                for (&ray, w) in cone.iter().zip(&weights) {
                    if let Some(a) = divisor.get(&fan.rays()[ray].label) {
                        c += BigRational::from_integer(a.clone()) * w;
                    }
                }
                if !c.is_integer() {
                    return Err(ChowError::BadMap(format!(
                        "total transform along {label} is not integral"
                    )));
                }
                if !c.is_zero() {
                    divisor.insert(label.clone(), c.to_integer());
                }
            }
            fan = fan.star_subdivide(&v, &label)?;
            divisors.insert(
                eps_name(idx + 1, j),
                BTreeMap::from([(label, BigInt::one())]),
            );
        }
    }
    let map = divisors
        .into_iter()
        .map(|(k, d)| {
            (
                k,
                d.into_iter()
                    .map(|(v, c)| MultiPoly::var(&v).scale(&c))
                    .sum(),
            )
        })
        .collect();
    Ok((fan, map))
}

/// Result of [`find_comparison_map`].
#[derive(Debug, Clone)]
pub enum MapSearch {
    Found(BTreeMap<String, MultiPoly>),
    NotFound,
    /// The node budget ran out before the space was exhausted.
    Exhausted,
}

/// Integer vectors with entries in `[-bound, bound]`, by increasing l1 norm.
fn candidates(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.sort_by_key(|v| {
        (
            v.iter().map(|x| x.abs()).sum::<i64>(),
            std::cmp::Reverse(v.clone()),
        )
    });
    out
}

/// Brute-force search for a map sending every degree-one variable of `a` to
/// an integer combination, coefficients in `[-bound, bound]`, of the
/// degree-one variables of `b` that are not eliminated by a unit pivot.
/// Accepts the first map that passes [`compare_presentations`] and is onto in
/// degree one.
pub fn find_comparison_map(
    a: &GradedPresentation,
    b: &GradedPresentation,
    bound: i64,
    budget: usize,
) -> Result<MapSearch, ChowError> {
    let top = a.top_degree().max(b.top_degree());
    let ib = GradedIdeal::new(b, top)?;
    if a.variables().iter().any(|(_, d)| *d != 1) {
        return Err(ChowError::BadMap(
            "search only handles degree-one generators".into(),
        ));
    }
    let unit = ib.lattice(1).unit_pivot_columns();
    let basis: Vec<MultiPoly> = ib
        .monomials(1)
        .iter()
        .enumerate()
        .filter(|(i, _)| !unit.contains(i))
        .map(|(_, e)| {
            let v = e.iter().position(|x| *x == 1).expect("degree-one monomial");
            MultiPoly::var(&ib.variables()[v])
        })
        .collect();
    let images: Vec<MultiPoly> = candidates(basis.len(), bound)
        .into_iter()
        .map(|c| {
            c.iter()
                .zip(&basis)
                .map(|(x, v)| v.scale(&BigInt::from(*x)))
                .sum()
        })
        .collect();
    let vars: Vec<String> = a.variables().into_iter().map(|(v, _)| v).collect();
    // each relation is checked once its last variable is assigned
    let mut due: Vec<Vec<MultiPoly>> = vec![Vec::new(); vars.len()];
    for r in a.all_relations() {
        let last = r
            .vars()
            .iter()
            .filter_map(|v| vars.iter().position(|w| w == v))
            .max();
        if let Some(last) = last {
            due[last].push(r);
        }
    }
    let mut state = Search {
        ib: &ib,
        vars: &vars,
        due: &due,
        images: &images,
        budget,
        nodes: 0,
    };
    let mut assignment = BTreeMap::new();
    match state.descend(0, &mut assignment)? {
        Some(map) => {
            let report = compare_presentations(a, b, &map)?;
            if report.passed() && report.degree_one_surjective {
                Ok(MapSearch::Found(map))
            } else {
                Ok(MapSearch::NotFound)
            }
        }
        None if state.nodes >= budget => Ok(MapSearch::Exhausted),
        None => Ok(MapSearch::NotFound),
    }
}

struct Search<'a> {
    ib: &'a GradedIdeal,
    vars: &'a [String],
    due: &'a [Vec<MultiPoly>],
    images: &'a [MultiPoly],
    budget: usize,
    nodes: usize,
}

impl Search<'_> {
    fn descend(
        &mut self,
        pos: usize,
        assignment: &mut BTreeMap<String, MultiPoly>,
    ) -> Result<Option<BTreeMap<String, MultiPoly>>, ChowError> {
        if pos == self.vars.len() {
            let images: Vec<MultiPoly> = assignment.values().cloned().collect();
            return Ok(degree_one_span(self.ib, &images)?.then(|| assignment.clone()));
        }
        for img in self.images {
            if self.nodes >= self.budget {
                return Ok(None);
            }
            self.nodes += 1;
            assignment.insert(self.vars[pos].clone(), img.clone());
            let mut ok = true;
            for r in &self.due[pos] {
                if !self.ib.contains(&r.specialize(assignment))? {
                    ok = false;
                    break;
                }
            }
            if ok {
                if let Some(found) = self.descend(pos + 1, assignment)? {
                    return Ok(Some(found));
                }
            }
        }
        assignment.remove(&self.vars[pos]);
        Ok(None)
    }
}

use std::collections::BTreeSet;

use serde::Serialize;

use super::ChowError;
use crate::exact::MultiPoly;

/// Name of the hyperplane class of `Sym^n P^1 = P^n`.
pub const HYPERPLANE: &str = "H";

/// Exceptional divisor `eps^{(r)}_j`.
pub fn eps_name(marking: usize, j: usize) -> String {
    format!("eps_{marking}_{j}")
}

/// Opaque `c_1(L_{p_r})` in symbolic mode.
pub fn c1_name(marking: usize) -> String {
    format!("c1L_{marking}")
}

/// Opaque generator of `ker s^*_{(a),n}` for marking `r` in symbolic mode.
pub fn kernel_token_name(marking: usize, a: usize) -> String {
    format!("kappa_{marking}_{a}")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseToken {
    pub name: String,
    pub degree: u32,
}

/// Coefficient ring of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseRing {
    Integers,
    /// `ZZ[H]/(H^{n+1})`.
    TruncatedHyperplane {
        n: usize,
    },
    /// Degree-one classes `c1L_r` and kernel tokens with declared degrees.
    SymbolicCurve {
        classes: Vec<String>,
        kernel_tokens: Vec<BaseToken>,
    },
}

impl BaseRing {
    pub fn p1(n: usize) -> Self {
        BaseRing::TruncatedHyperplane { n }
    }

    /// Symbolic base for `ell` markings on `Sym^n C`: classes `c1L_r` and
    /// tokens `kappa_r_a` of degree `a + 1` for `0 <= a < n`.
    pub fn symbolic(n: usize, ell: usize) -> Self {
        let classes = (1..=ell).map(c1_name).collect();
        let kernel_tokens = (1..=ell)
            .flat_map(|r| {
                (0..n).map(move |a| BaseToken {
                    name: kernel_token_name(r, a),
                    degree: a as u32 + 1,
                })
            })
            .collect();
        BaseRing::SymbolicCurve {
            classes,
            kernel_tokens,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, BaseRing::SymbolicCurve { .. })
    }

    /// Base variables with their degrees.
    pub fn variables(&self) -> Vec<(String, u32)> {
        match self {
            BaseRing::Integers => Vec::new(),
            BaseRing::TruncatedHyperplane { .. } => vec![(HYPERPLANE.to_string(), 1)],
            BaseRing::SymbolicCurve {
                classes,
                kernel_tokens,
            } => classes
                .iter()
                .map(|c| (c.clone(), 1))
                .chain(kernel_tokens.iter().map(|t| (t.name.clone(), t.degree)))
                .collect(),
        }
    }

    /// Relations carried implicitly by the base.
    pub fn relations(&self) -> Vec<MultiPoly> {
        match self {
            BaseRing::TruncatedHyperplane { n } => {
                vec![MultiPoly::var(HYPERPLANE).pow(*n as u32 + 1)]
            }
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// A graded ring `base[generators] / (relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPresentation {
    base: BaseRing,
    generators: Vec<Generator>,
    relations: Vec<MultiPoly>,
    top_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PresentationExport {
    pub base: BaseRing,
    pub generators: Vec<Generator>,
    pub relations: Vec<String>,
}

impl GradedPresentation {
    pub fn new(base: BaseRing, top_degree: usize) -> Self {
        Self {
            base,
            generators: Vec::new(),
            relations: Vec::new(),
            top_degree,
        }
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Explicit relations, not including those of the base.
    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    /// Base relations followed by the explicit ones.
    pub fn all_relations(&self) -> Vec<MultiPoly> {
        let mut out = self.base.relations();
        out.extend(self.relations.iter().cloned());
        out
    }

    /// Base variables then generators, with degrees.
    pub fn variables(&self) -> Vec<(String, u32)> {
        let mut out = self.base.variables();
        out.extend(self.generators.iter().map(|g| (g.name.clone(), g.degree)));
        out
    }

    pub fn degree_of(&self, name: &str) -> Option<u32> {
        self.variables()
            .into_iter()
            .find(|(v, _)| v == name)
            .map(|(_, d)| d)
    }

    pub fn add_generator(&mut self, name: &str, degree: u32) -> Result<(), ChowError> {
        if self.degree_of(name).is_some() {
            return Err(ChowError::DuplicateGenerator(name.to_string()));
        }
        self.generators.push(Generator {
            name: name.to_string(),
            degree,
        });
        Ok(())
    }

    /// Degree of `p` under the declared grading, or an error when `p` is not
    /// homogeneous or uses unknown variables. The zero polynomial has no degree.
    pub fn relation_degree(&self, p: &MultiPoly) -> Result<Option<u32>, ChowError> {
        let vars = self.variables();
        if let Some(v) = p.vars().iter().find(|v| !vars.iter().any(|(w, _)| w == *v)) {
            return Err(ChowError::UnknownVariable(v.clone()));
        }
        if p.is_zero() {
            return Ok(None);
        }
        let weight = |v: &str| vars.iter().find(|(w, _)| w == v).map_or(0, |(_, d)| *d);
        p.homogeneous_degree(&weight)
            .map(Some)
            .ok_or_else(|| ChowError::Inhomogeneous(p.to_canonical_string()))
    }

    /// Appends a homogeneous relation; zero relations are dropped.
    pub fn add_relation(&mut self, p: MultiPoly) -> Result<(), ChowError> {
        if self.relation_degree(&p)?.is_some() {
            self.relations.push(p);
        }
        Ok(())
    }

    pub fn relation_set(&self) -> BTreeSet<String> {
        self.relations
            .iter()
            .map(MultiPoly::to_canonical_string)
            .collect()
    }

    pub fn export(&self) -> PresentationExport {
        PresentationExport {
            base: self.base.clone(),
            generators: self.generators.clone(),
            relations: self
                .relations
                .iter()
                .map(MultiPoly::to_canonical_string)
                .collect(),
        }
    }
}

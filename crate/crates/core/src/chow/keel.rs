//! Presentations built from exceptional divisors.
//!
//! Each level `Hilb^n(C|p)_{<=j-1}` is a weighted blow-up of level `<= j`,
//! and Keel's formula adjoins one class `eps_j` with relations
//! `eps_j * ker(restriction)` and the top Chern class relation `R_{n,j}(eps)`. Two constructions live here:
//! the closed form [`thm_d_presentation`] and the literal recursion
//! [`iterated_keel`], which lifts the relations of the center.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::presentation::{c1_name, eps_name, kernel_token_name, HYPERPLANE};
use super::{BaseRing, ChowError, GradedPresentation};
use crate::exact::MultiPoly;
use crate::motive::StratumProfile;

/// `Q_{m,h}(t_m, ..., t_{h+1}, t_h)` with `t_x = t(x)` and `c_1(L) = c`.
///
/// For `m > h > 0` this is `prod_{k=1}^{h} (k t_h + c - sum_{j=1}^{m-h} (k+j) t_{j+h})`,
/// for `m = h > 0` the same product without the sum, and `Q_{0,k} = 0`.
pub fn q_polynomial_in(
    m: usize,
    h: usize,
    c: &MultiPoly,
    t: &dyn Fn(usize) -> MultiPoly,
) -> Result<MultiPoly, ChowError> {
    if m == 0 {
        return Ok(MultiPoly::zero());
    }
    if m < h {
        return Err(ChowError::InvalidQ { m, h });
    }
    Ok((1..=h)
        .map(|k| {
            let tail: MultiPoly = (1..=m - h)
                .map(|j| t(j + h).scale(&BigInt::from(k + j)))
                .sum();
            &(&t(h).scale(&BigInt::from(k)) + c) - &tail
        })
        .product())
}

/// Relation adjoined by a Keel step when `t_x` stands for the class of the
/// exceptional divisor `[E_x]`:
/// `R_{m,h} = prod_{k=1}^{h} (c - k t_h - sum_{j=1}^{m-h} (k+j) t_{j+h})`.
///
/// This is the top Chern class of the normal bundle of the center evaluated
/// at `-[E]`. It differs from [`q_polynomial_in`] in the sign of `k t_h`;
/// the two agree up to `t_h -> -t_h` only when `m = h`. `R_{0,k} = 0`.
pub fn keel_relation_in(
    m: usize,
    h: usize,
    c: &MultiPoly,
    t: &dyn Fn(usize) -> MultiPoly,
) -> Result<MultiPoly, ChowError> {
    if m == 0 {
        return Ok(MultiPoly::zero());
    }
    if m < h {
        return Err(ChowError::InvalidQ { m, h });
    }
    Ok((1..=h)
        .map(|k| {
            let tail: MultiPoly = (1..=m - h)
                .map(|j| t(j + h).scale(&BigInt::from(k + j)))
                .sum();
            &(c - &t(h).scale(&BigInt::from(k))) - &tail
        })
        .product())
}

/// `c_1(L_{p_r})` in the given base.
pub fn line_bundle_class(base: &BaseRing, marking: usize) -> MultiPoly {
    match base {
        BaseRing::SymbolicCurve { .. } => MultiPoly::var(&c1_name(marking)),
        _ => MultiPoly::var(HYPERPLANE),
    }
}

/// Generator of `ker s^*_{(a),n}` for the pushforward along `Z -> Z + (n-a) p_r`.
///
/// On `P^1` this is `H^{a+1}`; symbolically an opaque token, zero when
/// `a = n` since then the map is the identity.
pub fn kernel_generator(base: &BaseRing, n: usize, marking: usize, a: usize) -> MultiPoly {
    match base {
        BaseRing::SymbolicCurve { .. } if a >= n => MultiPoly::zero(),
        BaseRing::SymbolicCurve { .. } => MultiPoly::var(&kernel_token_name(marking, a)),
        _ => MultiPoly::var(HYPERPLANE).pow(a as u32 + 1),
    }
}

fn marking_vars(n: usize, marking: usize, m: usize) -> impl Fn(usize) -> MultiPoly {
    let shift = n - m;
    move |x: usize| MultiPoly::var(&eps_name(marking, x + shift))
}

/// [`q_polynomial_in`] for marking `r` inside `Hilb^n`, with
/// `t_x = eps^{(r)}_{x + n - m}`.
pub fn q_polynomial(
    base: &BaseRing,
    n: usize,
    marking: usize,
    m: usize,
    h: usize,
) -> Result<MultiPoly, ChowError> {
    if m > n {
        return Err(ChowError::InvalidQ { m, h });
    }
    q_polynomial_in(
        m,
        h,
        &line_bundle_class(base, marking),
        &marking_vars(n, marking, m),
    )
}

/// [`keel_relation_in`] for marking `r` inside `Hilb^n`, with
/// `t_x = eps^{(r)}_{x + n - m}`.
pub fn keel_relation(
    base: &BaseRing,
    n: usize,
    marking: usize,
    m: usize,
    h: usize,
) -> Result<MultiPoly, ChowError> {
    if m > n {
        return Err(ChowError::InvalidQ { m, h });
    }
    keel_relation_in(
        m,
        h,
        &line_bundle_class(base, marking),
        &marking_vars(n, marking, m),
    )
}

/// Keel's formula: adjoins `new_name` in degree one with relations
/// `new_name * g` for `g` in `ker_gens`, and `q`.
pub fn keel_step(
    pres: &GradedPresentation,
    ker_gens: &[MultiPoly],
    q: &MultiPoly,
    new_name: &str,
) -> Result<GradedPresentation, ChowError> {
    for g in ker_gens {
        pres.relation_degree(g)?;
    }
    let mut out = pres.clone();
    out.add_generator(new_name, 1)?;
    out.relation_degree(q)?;
    let t = MultiPoly::var(new_name);
    for g in ker_gens {
        out.add_relation(&t * g)?;
    }
    out.add_relation(q.clone())?;
    Ok(out)
}

fn check_base(n: usize, ell: usize, base: &BaseRing) -> Result<(), ChowError> {
    match base {
        BaseRing::Integers => Err(ChowError::BaseMismatch("integers".into())),
        BaseRing::TruncatedHyperplane { n: m } if *m != n => Err(ChowError::BaseMismatch(format!(
            "hyperplane base truncated at {m}, expected {n}"
        ))),
        BaseRing::SymbolicCurve { classes, .. } if classes.len() < ell => {
            Err(ChowError::BaseMismatch(format!(
                "{} line bundle classes for {ell} markings",
                classes.len()
            )))
        }
        _ => Ok(()),
    }
}

fn check_levels(n: usize, levels: &[usize]) -> Result<(), ChowError> {
    if n == 0 || levels.is_empty() {
        return Err(ChowError::InvalidLevels {
            n,
            levels: levels.to_vec(),
        });
    }
    if levels.iter().any(|&i| i > n) {
        return Err(ChowError::InvalidLevels {
            n,
            levels: levels.to_vec(),
        });
    }
    Ok(())
}

/// Levels `i_r = 0` give the same space as `i_r = 1`.
fn effective_level(i: usize) -> usize {
    i.max(1)
}

/// The three relation families for each marking `r` and `j = n, ..., i_r + 1`:
/// `R_{n,j}(eps_n, ..., eps_j)`, `ker(s^*_{(n-j),n}) * eps_j`, and
/// `R_{n-j,k}(eps_n, ..., eps_{j+k}) * eps_j` for `k = 1, ..., n - j`,
/// where `R` is [`keel_relation_in`] and `eps_j` is the class of the
/// exceptional divisor. With several markings, products of exceptional
/// classes over distinct markings whose indices sum past `n` vanish.
pub fn thm_d_presentation(
    n: usize,
    levels: &[usize],
    base: &BaseRing,
) -> Result<GradedPresentation, ChowError> {
    check_levels(n, levels)?;
    check_base(n, levels.len(), base)?;
    let mut pres = GradedPresentation::new(base.clone(), n);
    for (idx, &i) in levels.iter().enumerate() {
        let r = idx + 1;
        for j in (effective_level(i) + 1..=n).rev() {
            pres.add_generator(&eps_name(r, j), 1)?;
        }
    }
    for (idx, &i) in levels.iter().enumerate() {
        let r = idx + 1;
        for j in (effective_level(i) + 1..=n).rev() {
            let eps = MultiPoly::var(&eps_name(r, j));
            pres.add_relation(keel_relation(base, n, r, n, j)?)?;
            pres.add_relation(&kernel_generator(base, n, r, n - j) * &eps)?;
            for k in (1..=n - j).rev() {
                pres.add_relation(&keel_relation(base, n, r, n - j, k)? * &eps)?;
            }
        }
    }
    for m in disjointness_monomials(levels, effective_level, n, levels.len(), n) {
        pres.add_relation(m)?;
    }
    Ok(pres)
}

/// Products `eps^{(r_1)}_{j_1} ... eps^{(r_s)}_{j_s}` over distinct markings
/// `r_i < markings_end` with `j_1 + ... + j_s > bound`, minimal under
/// removing a factor.
fn disjointness_monomials(
    levels: &[usize],
    level_of: fn(usize) -> usize,
    n: usize,
    markings_end: usize,
    bound: usize,
) -> Vec<MultiPoly> {
    struct Walk<'a> {
        levels: &'a [usize],
        level_of: fn(usize) -> usize,
    }
    fn walk(
        w: &Walk<'_>,
        n: usize,
        from: usize,
        end: usize,
        bound: usize,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<MultiPoly>,
    ) {
        let sum: usize = chosen.iter().map(|(_, j)| j).sum();
        if sum > bound {
            let min = chosen.iter().map(|(_, j)| *j).min().unwrap_or(0);
            if sum - min <= bound {
                out.push(
                    chosen
                        .iter()
                        .map(|&(r, j)| MultiPoly::var(&eps_name(r, j)))
                        .product(),
                );
            }
            return;
        }
        for idx in from..end {
            for j in (w.level_of)(w.levels[idx]) + 1..=n {
                chosen.push((idx + 1, j));
                walk(w, n, idx + 1, end, bound, chosen, out);
                chosen.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(
        &Walk { levels, level_of },
        n,
        0,
        markings_end,
        bound,
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Relations of `Hilb^m(C|p_r)_{<=0}` inside `Hilb^n`, including the base
/// relation `ker s^*_{(m),n}`, with generators `eps^{(r)}_1, ..., eps^{(r)}_m`.
fn level_zero_relations(
    base: &BaseRing,
    n: usize,
    r: usize,
    m: usize,
    memo: &mut BTreeMap<usize, Vec<MultiPoly>>,
) -> Result<Vec<MultiPoly>, ChowError> {
    if let Some(v) = memo.get(&m) {
        return Ok(v.clone());
    }
    let mut rels = vec![kernel_generator(base, n, r, m)];
    for j in (1..=m).rev() {
        let eps = MultiPoly::var(&eps_name(r, j));
        let t = |x: usize| MultiPoly::var(&eps_name(r, x));
        rels.push(keel_relation_in(m, j, &line_bundle_class(base, r), &t)?);
        for g in center_kernel(base, n, r, m - j, j, memo)? {
            rels.push(&g * &eps);
        }
    }
    rels.retain(|p| !p.is_zero());
    memo.insert(m, rels.clone());
    Ok(rels)
}

/// Kernel of the restriction to the center `Z ~ Hilb^m(C|p_r)_{<=0}` of the
/// blow-up adjoining `eps_j`: lifts of the center's relations along
/// `eps_x -> eps_{x + j}`.
fn center_kernel(
    base: &BaseRing,
    n: usize,
    r: usize,
    m: usize,
    j: usize,
    memo: &mut BTreeMap<usize, Vec<MultiPoly>>,
) -> Result<Vec<MultiPoly>, ChowError> {
    let lift: BTreeMap<String, MultiPoly> = (1..=m)
        .map(|x| (eps_name(r, x), MultiPoly::var(&eps_name(r, x + j))))
        .collect();
    Ok(level_zero_relations(base, n, r, m, memo)?
        .iter()
        .map(|g| g.specialize(&lift))
        .collect())
}

fn iterate(
    n: usize,
    levels: &[usize],
    base: &BaseRing,
    level_of: fn(usize) -> usize,
) -> Result<GradedPresentation, ChowError> {
    check_levels(n, levels)?;
    check_base(n, levels.len(), base)?;
    let mut pres = GradedPresentation::new(base.clone(), n);
    for (idx, &i) in levels.iter().enumerate() {
        let r = idx + 1;
        let mut memo = BTreeMap::new();
        for j in (level_of(i) + 1..=n).rev() {
            let mut ker = center_kernel(base, n, r, n - j, j, &mut memo)?;
            ker.extend(disjointness_monomials(levels, level_of, n, idx, n - j));
            let q = keel_relation(base, n, r, n, j)?;
            pres = keel_step(&pres, &ker, &q, &eps_name(r, j))?;
        }
    }
    Ok(pres)
}

/// Chains [`keel_step`] from `Sym^n C` down to the target levels, computing
/// each kernel by lifting the relations of the center. Level `0` is treated
/// as level `1`.
pub fn iterated_keel(
    n: usize,
    levels: &[usize],
    base: &BaseRing,
) -> Result<GradedPresentation, ChowError> {
    iterate(n, levels, base, effective_level)
}

/// As [`iterated_keel`], but level `0` adjoins the class `eps_1` of the
/// (isomorphic) weight-one blow-up as a separate generator.
pub fn iterated_keel_literal(
    n: usize,
    levels: &[usize],
    base: &BaseRing,
) -> Result<GradedPresentation, ChowError> {
    iterate(n, levels, base, |i| i)
}

/// Cycle class of a boundary stratum: `prod_r prod_{j=1}^{k_r} eps^{(r)}_{N_{r,j}}`
/// with `N_{r,j}` the sum of the last `j` entries of `nu_r`.
pub fn stratum_cycle_class(profile: &StratumProfile, n: usize) -> Result<MultiPoly, ChowError> {
    if profile.total() != n {
        return Err(ChowError::ProfileTotal {
            expected: n,
            found: profile.total(),
        });
    }
    let mut class = MultiPoly::one();
    for (idx, nu) in profile.nu().iter().enumerate() {
        let mut partial = 0;
        for part in nu.iter().rev() {
            partial += part;
            class = &class * &MultiPoly::var(&eps_name(idx + 1, partial));
        }
    }
    Ok(class)
}

//! Motivic generating functions and the boundary stratification.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{one_minus_t_pow, series_from_rational, ExactError, MultiPoly, TruncSeries};
use crate::LEFSCHETZ;

const T: &str = "t";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("the motivic P^1 mode has genus 0, got {0}")]
    MotivicGenus(u32),
    #[error("unknown mode {0}")]
    UnknownMode(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Coefficient ring of a zeta function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ZetaMode {
    /// `ZZ[L]`, for `C = P^1`.
    MotivicP1,
    /// `ZZ[u, v]`.
    HodgeDeligne { g: u32 },
    /// `ZZ[x]`.
    Poincare { g: u32 },
    /// `ZZ`.
    Euler { g: u32 },
}

impl ZetaMode {
    /// Parses `motivic-p1`, `hodge-deligne`, `poincare` or `euler`.
    pub fn parse(name: &str, g: u32) -> Result<Self, MotiveError> {
        match name {
            "motivic-p1" | "motivic" if g == 0 => Ok(ZetaMode::MotivicP1),
            "motivic-p1" | "motivic" => Err(MotiveError::MotivicGenus(g)),
            "hodge-deligne" | "hodge" => Ok(ZetaMode::HodgeDeligne { g }),
            "poincare" => Ok(ZetaMode::Poincare { g }),
            "euler" => Ok(ZetaMode::Euler { g }),
            other => Err(MotiveError::UnknownMode(other.to_string())),
        }
    }

    pub fn genus(&self) -> u32 {
        match *self {
            ZetaMode::MotivicP1 => 0,
            ZetaMode::HodgeDeligne { g } | ZetaMode::Poincare { g } | ZetaMode::Euler { g } => g,
        }
    }

    /// Image of the Lefschetz class.
    pub fn lefschetz(&self) -> MultiPoly {
        match self {
            ZetaMode::MotivicP1 => MultiPoly::var(LEFSCHETZ),
            ZetaMode::HodgeDeligne { .. } => MultiPoly::monomial(1, &[("u", 1), ("v", 1)]),
            ZetaMode::Poincare { .. } => MultiPoly::monomial(1, &[("x", 2)]),
            ZetaMode::Euler { .. } => MultiPoly::one(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ZetaMode::MotivicP1 => "motivic-p1",
            ZetaMode::HodgeDeligne { .. } => "hodge-deligne",
            ZetaMode::Poincare { .. } => "poincare",
            ZetaMode::Euler { .. } => "euler",
        }
    }
}

fn t_var() -> MultiPoly {
    MultiPoly::var(T)
}

/// `1 - a t`.
fn one_minus_at(a: &MultiPoly) -> MultiPoly {
    &MultiPoly::one() - &(a * &t_var())
}

/// `Z_C(t)` up to `t^order`.
pub fn zeta_series(mode: ZetaMode, order: usize) -> Result<TruncSeries, MotiveError> {
    let lt = one_minus_at(&mode.lefschetz());
    let one_t = one_minus_at(&MultiPoly::one());
    let s = match mode {
        ZetaMode::MotivicP1 => series_from_rational(&MultiPoly::one(), &(&one_t * &lt), T, order)?,
        ZetaMode::HodgeDeligne { g } => {
            let num = &one_minus_at(&MultiPoly::var("u")).pow(g)
                * &one_minus_at(&MultiPoly::var("v")).pow(g);
            series_from_rational(&num, &(&one_t * &lt), T, order)?
        }
        ZetaMode::Poincare { g } => {
            let num = one_minus_at(&MultiPoly::var("x")).pow(2 * g);
            series_from_rational(&num, &(&one_t * &lt), T, order)?
        }
        ZetaMode::Euler { g } => one_minus_t_pow(2 * g as i64 - 2, order),
    };
    Ok(s)
}

/// `Z_C(t) ((1 - L t)(1 - t) / (1 - (L + 1) t))^ell` up to `t^order`, with `L`
/// replaced by the mode's substitute.
pub fn closed_form(mode: ZetaMode, ell: usize, order: usize) -> Result<TruncSeries, MotiveError> {
    let l = mode.lefschetz();
    let num = &one_minus_at(&l) * &one_minus_at(&MultiPoly::one());
    let den = one_minus_at(&(&l + &MultiPoly::one()));
    let factor = series_from_rational(&num, &den, T, order)?;
    Ok(zeta_series(mode, order)?.mul(&factor.pow(ell as u32)))
}

/// A boundary stratum: interior length `m` and, per marking, the ordered
/// lengths along the chain of bubbles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StratumProfile {
    m: usize,
    nu: Vec<Vec<usize>>,
}

impl StratumProfile {
    pub fn new(m: usize, nu: Vec<Vec<usize>>) -> Result<Self, MotiveError> {
        if nu.iter().flatten().any(|&x| x == 0) {
            return Err(MotiveError::InvalidProfile(
                "bubble lengths must be positive".into(),
            ));
        }
        Ok(Self { m, nu })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn nu(&self) -> &[Vec<usize>] {
        &self.nu
    }

    pub fn markings(&self) -> usize {
        self.nu.len()
    }

    /// `m + sum_i |nu_i|`.
    pub fn total(&self) -> usize {
        self.m + self.nu.iter().flatten().sum::<usize>()
    }

    /// Number of bubbles, which is the codimension of the stratum.
    pub fn codimension(&self) -> usize {
        self.nu.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for StratumProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)?;
        for nu in &self.nu {
            let parts: Vec<String> = nu.iter().map(usize::to_string).collect();
            write!(f, ";({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for StratumProfile {
    type Err = MotiveError;

    /// Syntax `m;(a,b,...);();(c)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| MotiveError::InvalidProfile(format!("{s:?}: {why}"));
        let mut fields = s.split(';').map(str::trim);
        let m = fields
            .next()
            .filter(|f| !f.is_empty())
            .ok_or_else(|| bad("missing interior length"))?
            .parse::<usize>()
            .map_err(|_| bad("interior length is not a non-negative integer"))?;
        let mut nu = Vec::new();
        for field in fields {
            let inner = field
                .strip_prefix('(')
                .and_then(|f| f.strip_suffix(')'))
                .ok_or_else(|| bad("compositions are written in parentheses"))?
                .trim();
            if inner.is_empty() {
                nu.push(Vec::new());
                continue;
            }
            let parts = inner
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| bad("composition entries are integers"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            nu.push(parts);
        }
        StratumProfile::new(m, nu).map_err(|_| bad("composition entries must be positive"))
    }
}

/// Compositions of `total`, ordered by length and then entries.
pub fn compositions(total: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for first in 1..=left.saturating_sub(parts - 1) {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for len in 1..=total {
        rec(total, len, &mut Vec::new(), &mut out);
    }
    out
}

/// Ordered `ell`-tuples of non-negative integers summing to `total`, with
/// larger entries for earlier markings first.
fn splits(total: usize, ell: usize) -> Vec<Vec<usize>> {
    if ell == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in splits(total - first, ell - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every profile with `m + sum |nu_i| = n`, by decreasing `m`.
pub fn enumerate_profiles(n: usize, ell: usize) -> Vec<StratumProfile> {
    let mut out = Vec::new();
    for m in (0..=n).rev() {
        for split in splits(n - m, ell) {
            let mut acc: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
            for &s in &split {
                let comps = compositions(s);
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        comps.iter().map(move |c| {
                            let mut p = prefix.clone();
                            p.push(c.clone());
                            p
                        })
                    })
                    .collect();
            }
            out.extend(acc.into_iter().map(|nu| StratumProfile { m, nu }));
        }
    }
    out
}

/// `[Sym^m(C \ D)]` for `m = 0..=order`, read off `Z_C(t) (1 - t)^ell`.
pub fn interior_classes(
    mode: ZetaMode,
    ell: usize,
    order: usize,
) -> Result<TruncSeries, MotiveError> {
    Ok(zeta_series(mode, order)?.mul(&one_minus_t_pow(ell as i64, order)))
}

/// `[Sym^m(C \ D)] * prod_{i,j} L^{nu_i^{(j)} - 1}`.
pub fn stratum_class(profile: &StratumProfile, mode: ZetaMode) -> Result<MultiPoly, MotiveError> {
    let interior = interior_classes(mode, profile.markings(), profile.m())?;
    let exponent: usize = profile.nu().iter().flatten().map(|x| x - 1).sum();
    Ok(interior.coeff(profile.m()) * &mode.lefschetz().pow(exponent as u32))
}

/// Sum of [`stratum_class`] over [`enumerate_profiles`].
pub fn strata_sum(n: usize, ell: usize, mode: ZetaMode) -> Result<MultiPoly, MotiveError> {
    let interior = interior_classes(mode, ell, n)?;
    let l = mode.lefschetz();
    let powers: Vec<MultiPoly> = (0..=n).map(|k| l.pow(k as u32)).collect();
    // group profiles by (m, L-exponent) before multiplying out
    let mut counts = vec![vec![0u64; n + 1]; n + 1];
    for p in enumerate_profiles(n, ell) {
        let e: usize = p.nu().iter().flatten().map(|x| x - 1).sum();
        counts[p.m()][e] += 1;
    }
    let mut total = MultiPoly::zero();
    for (m, row) in counts.iter().enumerate() {
        let lsum: MultiPoly = row
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(e, &c)| powers[e].scale(&BigInt::from(c)))
            .sum();
        total = &total + &(interior.coeff(m) * &lsum);
    }
    Ok(total)
}

/// Maximal cyclic stabilizer order contributed by each bubble.
pub fn stabilizer_bounds(profile: &StratumProfile) -> Vec<usize> {
    profile.nu().iter().flatten().copied().collect()
}

/// One row of a generating-function table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MotiveRow {
    pub n: usize,
    pub closed_form: String,
    pub strata_sum: String,
    pub verified: bool,
}

/// Closed-form coefficients for `n = 0..=order` next to the stratification sum.
pub fn motive_table(
    mode: ZetaMode,
    ell: usize,
    order: usize,
) -> Result<Vec<MotiveRow>, MotiveError> {
    let series = closed_form(mode, ell, order)?;
    (0..=order)
        .map(|n| {
            let oracle = strata_sum(n, ell, mode)?;
            let cf = series.coeff(n);
            Ok(MotiveRow {
                n,
                closed_form: cf.to_canonical_string(),
                strata_sum: oracle.to_canonical_string(),
                verified: cf == &oracle,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly;

    #[test]
    fn zeta_examples() {
        let z = zeta_series(ZetaMode::MotivicP1, 2).unwrap();
        assert_eq!(z.coeffs(), &[poly("1"), poly("L + 1"), poly("L^2 + L + 1")]);
        let e = zeta_series(ZetaMode::Euler { g: 1 }, 2).unwrap();
        assert_eq!(e.coeffs(), &[poly("1"), poly("0"), poly("0")]);
        let p = zeta_series(ZetaMode::Poincare { g: 0 }, 1).unwrap();
        assert_eq!(p.coeffs(), &[poly("1"), poly("1 + x^2")]);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!(ZetaMode::parse("motivic-p1", 0), Ok(ZetaMode::MotivicP1));
        assert_eq!(
            ZetaMode::parse("motivic-p1", 1),
            Err(MotiveError::MotivicGenus(1))
        );
        assert_eq!(ZetaMode::parse("euler", 2), Ok(ZetaMode::Euler { g: 2 }));
        assert!(ZetaMode::parse("serre", 0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let one = closed_form(ZetaMode::MotivicP1, 1, 4).unwrap();
        for n in 0..=4 {
            assert_eq!(one.coeff(n), &poly("L + 1").pow(n as u32));
        }
        let e = closed_form(ZetaMode::Euler { g: 0 }, 2, 3).unwrap();
        assert_eq!(e.coeffs(), &[poly("1"), poly("2"), poly("5"), poly("12")]);
        let e1 = closed_form(ZetaMode::Euler { g: 1 }, 1, 4).unwrap();
        assert_eq!(
            e1.coeffs(),
            &[poly("1"), poly("0"), poly("1"), poly("2"), poly("4")]
        );
        let two = closed_form(ZetaMode::MotivicP1, 2, 2).unwrap();
        assert_eq!(two.coeff(2), &poly("L^2 + 3*L + 1"));
    }

    #[test]
    fn profile_enumeration() {
        let p = enumerate_profiles(2, 1);
        let shown: Vec<String> = p.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["2;()", "1;(1)", "0;(2)", "0;(1,1)"]);
        assert_eq!(enumerate_profiles(0, 3).len(), 1);
        let shown: Vec<String> = enumerate_profiles(1, 2)
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(shown, ["1;();()", "0;(1);()", "0;();(1)"]);
    }

    #[test]
    fn profile_counts_match_generating_function() {
        // sum_n #profiles t^n = 1/(1-t) * ((1-t)/(1-2t))^ell
        for ell in 1..=3 {
            let counts = series_from_rational(
                &one_minus_at(&MultiPoly::one()).pow(ell as u32 - 1),
                &one_minus_at(&MultiPoly::constant(2)).pow(ell as u32),
                T,
                8,
            )
            .unwrap();
            for n in 0..=8 {
                let got = enumerate_profiles(n, ell).len() as i64;
                assert_eq!(
                    counts.coeff(n),
                    &MultiPoly::from(got),
                    "n = {n}, ell = {ell}"
                );
            }
        }
    }

    #[test]
    fn compositions_are_ordered() {
        assert_eq!(
            compositions(3),
            vec![vec![3], vec![1, 2], vec![2, 1], vec![1, 1, 1]]
        );
        assert_eq!(compositions(0), vec![Vec::<usize>::new()]);
        for n in 1..=8 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
    }

    #[test]
    fn stratum_class_examples() {
        let mode = ZetaMode::MotivicP1;
        let c = |s: &str| stratum_class(&s.parse().unwrap(), mode).unwrap();
        assert_eq!(c("0;(1,1)"), poly("1"));
        assert_eq!(c("2;()"), poly("L^2"));
        assert_eq!(c("0;(2)"), poly("L"));
    }

    #[test]
    fn strata_sum_examples() {
        assert_eq!(
            strata_sum(2, 1, ZetaMode::MotivicP1).unwrap(),
            poly("L + 1").pow(2)
        );
        assert_eq!(
            strata_sum(1, 2, ZetaMode::Euler { g: 0 }).unwrap(),
            poly("2")
        );
        assert_eq!(strata_sum(0, 3, ZetaMode::MotivicP1).unwrap(), poly("1"));
    }

    #[test]
    fn stabilizers() {
        let s = |p: &str| stabilizer_bounds(&p.parse().unwrap());
        assert_eq!(s("0;(1,1)"), vec![1, 1]);
        assert_eq!(s("0;(2)"), vec![2]);
        assert_eq!(s("1;(1,2);();(1)"), vec![1, 2, 1]);
    }

    #[test]
    fn profile_parsing() {
        let p: StratumProfile = "1;(1,2);();(1)".parse().unwrap();
        assert_eq!(p.m(), 1);
        assert_eq!(p.nu(), &[vec![1, 2], vec![], vec![1]]);
        assert_eq!(p.total(), 5);
        assert_eq!(p.codimension(), 3);
        assert_eq!(p.to_string(), "1;(1,2);();(1)");
        assert_eq!(
            " 3 ; ( 1 , 1 ) "
                .parse::<StratumProfile>()
                .unwrap()
                .to_string(),
            "3;(1,1)"
        );
        for bad in ["", "x", "1;(0)", "1;1,2", "1;(a)", "-1"] {
            assert!(bad.parse::<StratumProfile>().is_err(), "{bad}");
        }
    }

    #[test]
    fn table_is_verified() {
        let rows = motive_table(ZetaMode::MotivicP1, 1, 6).unwrap();
        assert!(rows.iter().all(|r| r.verified));
        assert_eq!(
            rows[6].closed_form,
            poly("L + 1").pow(6).to_canonical_string()
        );
    }
}

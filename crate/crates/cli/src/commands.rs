//! The four subcommands. Each builds a [`Report`]; failed cross-checks are
//! recorded in it rather than returned as errors.

use std::collections::BTreeMap;

use loghilb::chow::{
    compare_presentations, graded_groups, iterated_keel, sr_presentation, stratum_cycle_class,
    thm_d_presentation, toric_pullback_map, BaseRing, GradedIdeal, GradedPresentation,
};
use loghilb::fan::{hilb_fan, hilb_fan_two_markings, two_marking_fan_in_order, Side};
use loghilb::motive::{
    closed_form, enumerate_profiles, motive_table, stabilizer_bounds, strata_sum, stratum_class,
};
use loghilb::{ChowError, FanError, MotiveError, MultiPoly, StratumProfile, ZetaMode, LEFSCHETZ};
use serde_json::json;
use thiserror::Error;

use crate::report::{Report, Table};

const MAX_N_FAN: usize = 6;
const MAX_N_GROUPS: usize = 4;
const MAX_N_MOTIVE: usize = 12;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Failed(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<FanError> for CliError {
    fn from(e: FanError) -> Self {
        match e {
            FanError::Invariant(_) => CliError::Failed(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ChowError> for CliError {
    fn from(e: ChowError) -> Self {
        match e {
            ChowError::Fan(f) => f.into(),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<MotiveError> for CliError {
    fn from(e: MotiveError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

/// Size caps on `n`, overridden by `--force` or `LOGHILB_MAX_N`.
pub struct Limits {
    force: bool,
    env: Option<usize>,
}

impl Limits {
    pub fn from_env(force: bool) -> Result<Self, CliError> {
        let env = match std::env::var("LOGHILB_MAX_N") {
            Ok(s) => Some(
                s.trim()
                    .parse()
                    .map_err(|_| invalid(format!("LOGHILB_MAX_N={s} is not a number")))?,
            ),
            Err(_) => None,
        };
        Ok(Self { force, env })
    }

    fn check(&self, what: &str, n: usize, default: usize) -> Result<(), CliError> {
        if self.force {
            return Ok(());
        }
        let cap = self.env.unwrap_or(default);
        if n > cap {
            return Err(invalid(format!(
                "{what} with n = {n} exceeds the cap {cap}; use --force or LOGHILB_MAX_N"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Markings {
    #[value(name = "0")]
    Zero,
    #[value(name = "0+inf")]
    ZeroInf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ChowKind {
    Sr,
    #[value(name = "thmD")]
    ThmD,
    Keel,
    Compare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Curve {
    P1,
    Symbolic,
}

fn lefschetz_at_one(p: &MultiPoly) -> MultiPoly {
    p.specialize(&BTreeMap::from([(LEFSCHETZ.to_string(), MultiPoly::one())]))
}

pub fn fan(
    limits: &Limits,
    n: usize,
    i: usize,
    i_inf: Option<usize>,
    markings: Markings,
    census_table: bool,
) -> Result<Report, CliError> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let i_inf = i_inf.unwrap_or(i);
    for level in [i, i_inf] {
        if !(1..=n).contains(&level) {
            return Err(invalid(format!("level {level} outside 1..={n}")));
        }
    }
    limits.check("fan", n, MAX_N_FAN)?;
    let (fan, levels) = match markings {
        Markings::Zero => (hilb_fan(n, i)?, vec![i]),
        Markings::ZeroInf => (hilb_fan_two_markings(n, i, i_inf)?, vec![i, i_inf]),
    };
    let mut report = Report::new(
        "fan",
        json!({ "n": n, "levels": levels, "markings": match markings { Markings::Zero => "0", Markings::ZeroInf => "0+inf" } }),
    );
    let census = fan.cone_census();
    let motive = fan.fan_motive()?;
    report.insert("fan", fan.export());
    report.insert("census", &census);
    report.insert("motive", motive.to_canonical_string());

    match fan.validate() {
        Ok(()) => report.check(
            "fan invariants",
            true,
            "simplicial, complete, intersections are faces",
        ),
        Err(e) => report.check("fan invariants", false, e.to_string()),
    }
    if markings == Markings::ZeroInf {
        let mut steps: Vec<(Side, usize)> =
            (i_inf + 1..=n).rev().map(|j| (Side::Infinity, j)).collect();
        steps.extend((i + 1..=n).rev().map(|j| (Side::Zero, j)));
        let reversed = two_marking_fan_in_order(n, &steps)?;
        let same = reversed.geometric_cones() == fan.geometric_cones();
        report.check(
            "infinity side first",
            same,
            format!("census {:?}", reversed.cone_census()),
        );
    }
    if levels.iter().all(|&l| l == 1) {
        let ell = levels.len();
        let expected = strata_sum(n, ell, ZetaMode::MotivicP1)?;
        report.check(
            "motive",
            motive == expected,
            format!(
                "{} vs strata sum {}",
                motive.to_canonical_string(),
                expected.to_canonical_string()
            ),
        );
        let euler = strata_sum(n, ell, ZetaMode::Euler { g: 0 })?;
        let chi = fan.max_cones().len();
        report.check(
            "euler",
            lefschetz_at_one(&expected) == euler && euler == MultiPoly::from(chi as i64),
            format!("{chi} maximal cones"),
        );
    }

    let mut census_rows = Table::new("cone census", &["dim", "cones"]);
    for (k, c) in census.iter().enumerate() {
        census_rows.push(vec![k.to_string(), c.to_string()]);
    }
    let mut rays = Table::new("rays", &["label", "vector"]);
    for r in fan.rays() {
        let v: Vec<String> = r.vector.iter().map(|x| x.to_string()).collect();
        rays.push(vec![r.label.clone(), format!("({})", v.join(","))]);
    }
    report.tables = if census_table {
        vec![census_rows, rays]
    } else {
        vec![rays, census_rows]
    };
    Ok(report)
}

fn build_presentation(
    kind: ChowKind,
    n: usize,
    levels: &[usize],
    base: &BaseRing,
) -> Result<GradedPresentation, CliError> {
    Ok(match kind {
        ChowKind::Sr => {
            let (fan, _) = toric_pullback_map(n, levels)?;
            sr_presentation(&fan)?
        }
        ChowKind::Keel => iterated_keel(n, levels, base)?,
        ChowKind::ThmD | ChowKind::Compare => thm_d_presentation(n, levels, base)?,
    })
}

fn groups_table(pres: &GradedPresentation) -> Result<(Vec<loghilb::GradedPiece>, Table), CliError> {
    let groups = graded_groups(pres)?;
    let mut t = Table::new("graded groups", &["degree", "rank", "torsion"]);
    for g in &groups {
        let tors: Vec<String> = g.torsion.iter().map(|d| d.to_string()).collect();
        t.push(vec![
            g.degree.to_string(),
            g.rank.to_string(),
            tors.join(" "),
        ]);
    }
    Ok((groups, t))
}

#[allow(clippy::too_many_arguments)]
pub fn chow(
    limits: &Limits,
    kind: ChowKind,
    n: usize,
    levels: &[usize],
    curve: Curve,
    ell: Option<usize>,
    groups: bool,
    compare_sr: bool,
) -> Result<Report, CliError> {
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let ell = ell.unwrap_or(levels.len());
    let levels: Vec<usize> = match levels.len() {
        1 => vec![levels[0]; ell],
        k if k == ell => levels.to_vec(),
        k => return Err(invalid(format!("{k} levels for {ell} markings"))),
    };
    if ell == 0 {
        return Err(invalid("at least one marking is required"));
    }
    if let Some(&l) = levels.iter().find(|&&l| l > n) {
        return Err(invalid(format!("level {l} exceeds n = {n}")));
    }
    let toric = kind == ChowKind::Sr || kind == ChowKind::Compare || compare_sr;
    if toric && (curve == Curve::Symbolic || ell > 2) {
        return Err(invalid(
            "toric presentations exist for P^1 with one or two markings",
        ));
    }
    if curve == Curve::Symbolic && groups {
        return Err(invalid("graded groups need a P^1 base"));
    }
    if groups || toric {
        limits.check("graded groups", n, MAX_N_GROUPS)?;
    } else {
        limits.check("presentation", n, MAX_N_FAN)?;
    }
    let base = match curve {
        Curve::P1 => BaseRing::p1(n),
        Curve::Symbolic => BaseRing::symbolic(n, ell),
    };
    let pres = build_presentation(kind, n, &levels, &base)?;
    let name = match kind {
        ChowKind::Sr => "sr",
        ChowKind::ThmD => "thmD",
        ChowKind::Keel => "keel",
        ChowKind::Compare => "compare",
    };
    let mut report = Report::new(
        "chow",
        json!({ "kind": name, "n": n, "levels": levels, "curve": match curve { Curve::P1 => "p1", Curve::Symbolic => "symbolic" } }),
    );
    report.insert("presentation", pres.export());

    let mut relations = Table::new("relations", &["index", "degree", "relation"]);
    for (k, r) in pres.relations().iter().enumerate() {
        let d = pres
            .relation_degree(r)?
            .map(|d| d.to_string())
            .unwrap_or_default();
        relations.push(vec![k.to_string(), d, r.to_canonical_string()]);
    }
    let mut tables = vec![relations];
    if groups {
        let (g, t) = groups_table(&pres)?;
        report.insert("groups", g);
        tables.insert(0, t);
    }
    if kind == ChowKind::Compare || (compare_sr && kind != ChowKind::Sr) {
        let (fan, map) = toric_pullback_map(n, &levels)?;
        let sr = sr_presentation(&fan)?;
        let cmp = compare_presentations(&pres, &sr, &map)?;
        let failing = cmp.relations.iter().filter(|r| !r.holds).count();
        report.check(
            "relations map into the toric ideal",
            failing == 0,
            format!("{failing} of {} fail", cmp.relations.len()),
        );
        report.check("graded groups agree", cmp.groups_equal, "");
        report.check("onto in degree one", cmp.degree_one_surjective, "");
        let mut t = Table::new("comparison", &["relation", "image", "holds"]);
        for r in &cmp.relations {
            t.push(vec![
                r.relation.clone(),
                r.image.clone(),
                r.holds.to_string(),
            ]);
        }
        tables.insert(0, t);
        report.insert("comparison", cmp);
    }
    if kind == ChowKind::Compare {
        let keel = iterated_keel(n, &levels, &base)?;
        let (ia, ib) = (GradedIdeal::new(&pres, n)?, GradedIdeal::new(&keel, n)?);
        let mut equal = true;
        for r in pres.all_relations() {
            equal &= ib.contains(&r)?;
        }
        for r in keel.all_relations() {
            equal &= ia.contains(&r)?;
        }
        report.check(
            "iterated keel ideal",
            equal,
            "mutual membership up to degree n",
        );
    }
    report.tables = tables;
    Ok(report)
}

pub fn motive(
    limits: &Limits,
    mode: &str,
    g: u32,
    ell: usize,
    order: usize,
) -> Result<Report, CliError> {
    let mode = ZetaMode::parse(mode, g)?;
    limits.check("motive", order, MAX_N_MOTIVE)?;
    let rows = motive_table(mode, ell, order)?;
    let mut report = Report::new(
        "motive",
        json!({ "mode": mode.name(), "g": g, "ell": ell, "N": order }),
    );
    let bad: Vec<usize> = rows.iter().filter(|r| !r.verified).map(|r| r.n).collect();
    report.check(
        "strata oracle",
        bad.is_empty(),
        if bad.is_empty() {
            "all rows".to_string()
        } else {
            format!("mismatch at n = {bad:?}")
        },
    );
    let mut t = Table::new(
        "coefficients",
        &["n", "closed_form", "strata_sum", "verified"],
    );
    for r in &rows {
        t.push(vec![
            r.n.to_string(),
            r.closed_form.clone(),
            r.strata_sum.clone(),
            r.verified.to_string(),
        ]);
    }
    report.insert("rows", rows);
    report.tables = vec![t];
    Ok(report)
}

pub fn strata(
    limits: &Limits,
    n: usize,
    ell: usize,
    profile: Option<&str>,
    mode: &str,
    g: u32,
) -> Result<Report, CliError> {
    let mode = ZetaMode::parse(mode, g)?;
    limits.check("strata", n, MAX_N_MOTIVE)?;
    let profiles = match profile {
        Some(s) => {
            let p: StratumProfile = s.parse()?;
            if p.total() != n || p.markings() != ell {
                return Err(invalid(format!(
                    "profile {p} has {} points on {} markings, expected {n} on {ell}",
                    p.total(),
                    p.markings()
                )));
            }
            vec![p]
        }
        None => enumerate_profiles(n, ell),
    };
    let mut report = Report::new(
        "strata",
        json!({ "n": n, "ell": ell, "mode": mode.name(), "g": g }),
    );
    let mut t = Table::new(
        "strata",
        &[
            "profile",
            "class",
            "codimension",
            "cycle_class",
            "stabilizers",
        ],
    );
    let mut rows = Vec::new();
    let mut total = MultiPoly::zero();
    for p in &profiles {
        let class = stratum_class(p, mode)?;
        let cycle = stratum_cycle_class(p, n)?;
        let stab: Vec<String> = stabilizer_bounds(p).iter().map(|s| s.to_string()).collect();
        total = &total + &class;
        t.push(vec![
            p.to_string(),
            class.to_canonical_string(),
            p.codimension().to_string(),
            cycle.to_canonical_string(),
            stab.join(" "),
        ]);
        rows.push(json!({
            "profile": p.to_string(),
            "class": class.to_canonical_string(),
            "codimension": p.codimension(),
            "cycle_class": cycle.to_canonical_string(),
            "stabilizer_bounds": stabilizer_bounds(p),
        }));
    }
    report.insert("strata", rows);
    if profile.is_none() {
        let expected = closed_form(mode, ell, n)?.coeff(n).clone();
        t.push(vec![
            "total".into(),
            total.to_canonical_string(),
            String::new(),
            String::new(),
            String::new(),
        ]);
        report.insert("total", total.to_canonical_string());
        report.check(
            "closed form",
            total == expected,
            format!("coefficient {}", expected.to_canonical_string()),
        );
    }
    report.tables = vec![t];
    Ok(report)
}

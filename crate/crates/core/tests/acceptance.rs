//! Acceptance suite: one line per criterion, nonzero exit on any failure.

#![allow(clippy::needless_range_loop, clippy::type_complexity)]

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use loghilb::chow::{
    compare_presentations, eps_name, find_comparison_map, graded_groups, iterated_keel,
    q_polynomial_in, sr_presentation, stratum_cycle_class, thm_d_presentation, toric_pullback_map,
    BaseRing, GradedIdeal, GradedPresentation, MapSearch, HYPERPLANE,
};
use loghilb::exact::{poly, MultiPoly};
use loghilb::fan::hilb_fan;
use loghilb::motive::{closed_form, strata_sum, StratumProfile, ZetaMode};
use num_bigint::BigInt;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn binom(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

// Dense polynomials in L with i128 coefficients, and truncated series over them.
type LPoly = Vec<i128>;

fn lp_trim(mut p: LPoly) -> LPoly {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

fn lp_add(a: &LPoly, b: &LPoly) -> LPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    lp_trim(out)
}

fn lp_mul(a: &LPoly, b: &LPoly) -> LPoly {
    let mut out = vec![0; a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    lp_trim(out)
}

fn lp_pow(a: &LPoly, e: usize) -> LPoly {
    (0..e).fold(vec![1], |acc, _| lp_mul(&acc, a))
}

fn ser_mul(a: &[LPoly], b: &[LPoly], order: usize) -> Vec<LPoly> {
    (0..=order)
        .map(|k| (0..=k).fold(vec![0], |acc, i| lp_add(&acc, &lp_mul(&a[i], &b[k - i]))))
        .collect()
}

/// `1 / (1 - a t)`.
fn ser_geometric(a: &LPoly, order: usize) -> Vec<LPoly> {
    (0..=order).map(|k| lp_pow(a, k)).collect()
}

/// `1 - a t`.
fn ser_linear(a: &LPoly, order: usize) -> Vec<LPoly> {
    let mut s = vec![vec![0]; order + 1];
    s[0] = vec![1];
    if order >= 1 {
        s[1] = a.iter().map(|x| -x).collect();
    }
    s
}

/// `Z(t) * ((1 - L t)(1 - t) / (1 - (L + 1) t))^ell` with `L = lef`.
fn oracle_generating_series(zeta: &[LPoly], lef: &LPoly, ell: usize, order: usize) -> Vec<LPoly> {
    let one: LPoly = vec![1];
    let factor = ser_mul(
        &ser_mul(&ser_linear(lef, order), &ser_linear(&one, order), order),
        &ser_geometric(&lp_add(lef, &one), order),
        order,
    );
    (0..ell).fold(zeta.to_vec(), |acc, _| ser_mul(&acc, &factor, order))
}

fn to_lpoly(p: &MultiPoly, var: &str) -> LPoly {
    let deg = p.degree_in(var) as usize;
    lp_trim(
        (0..=deg)
            .map(|k| {
                let c = if k == 0 {
                    p.constant_term()
                } else {
                    p.coeff(&[(var, k as u32)])
                };
                i128::try_from(c).expect("coefficient fits in i128")
            })
            .collect(),
    )
}

fn criterion_1() -> Check {
    let fan = hilb_fan(2, 1).map_err(|e| e.to_string())?;
    let rays: BTreeSet<Vec<i64>> = fan.rays().iter().map(|r| r.vector.clone()).collect();
    let expected: BTreeSet<Vec<i64>> = [vec![1, 0], vec![0, 1], vec![-1, -1], vec![1, 2]]
        .into_iter()
        .collect();
    ensure(rays == expected, format!("rays {rays:?}"))?;
    let census = fan.cone_census();
    ensure(census == [1, 4, 4], format!("census {census:?}"))?;
    fan.validate().map_err(|e| e.to_string())?;
    Ok(format!("rays {rays:?}, census {census:?}"))
}

fn criterion_2() -> Check {
    for n in 1..=5 {
        let census = hilb_fan(n, 1).map_err(|e| e.to_string())?.cone_census();
        let expected: Vec<usize> = (0..=n).map(|k| (binom(n, k) as usize) << k).collect();
        ensure(
            census == expected,
            format!("n = {n}: {census:?} != {expected:?}"),
        )?;
    }
    Ok("n = 1..5".into())
}

fn criterion_3() -> Check {
    for n in 1..=5 {
        let motive = hilb_fan(n, 1)
            .and_then(|f| f.fan_motive())
            .map_err(|e| e.to_string())?;
        let expected: LPoly = (0..=n).map(|k| binom(n, k)).collect();
        let got = to_lpoly(&motive, "L");
        ensure(got == expected, format!("n = {n}: {motive}"))?;
    }
    Ok("(L+1)^n for n = 1..5".into())
}

fn criterion_4() -> Check {
    const N: usize = 10;
    let lef: LPoly = vec![0, 1];
    let p1_zeta: Vec<LPoly> = (0..=N).map(|m| vec![1; m + 1]).collect();
    for ell in 1..=3 {
        let oracle = oracle_generating_series(&p1_zeta, &lef, ell, N);
        for n in 0..=N {
            let got = strata_sum(n, ell, ZetaMode::MotivicP1).map_err(|e| e.to_string())?;
            ensure(
                to_lpoly(&got, "L") == oracle[n],
                format!("motivic n = {n}, ell = {ell}: {got}"),
            )?;
        }
    }
    let one: LPoly = vec![1];
    for g in 0..=3usize {
        // (1 - t)^(2g - 2)
        let e = 2 * g as i64 - 2;
        let zeta: Vec<LPoly> = if e >= 0 {
            (0..=N)
                .map(|m| vec![(-1i128).pow(m as u32) * binom(e as usize, m)])
                .collect()
        } else {
            let g1 = ser_geometric(&one, N);
            ser_mul(&g1, &g1, N)
        };
        for ell in 1..=3 {
            let oracle = oracle_generating_series(&zeta, &one, ell, N);
            for n in 0..=N {
                let got = strata_sum(n, ell, ZetaMode::Euler { g: g as u32 })
                    .map_err(|e| e.to_string())?;
                ensure(
                    to_lpoly(&got, "L") == oracle[n],
                    format!("euler g = {g} n = {n}, ell = {ell}: {got}"),
                )?;
            }
        }
    }
    Ok("n <= 10, ell = 1..3; Euler g <= 3".into())
}

fn criterion_5() -> Check {
    const N: usize = 8;
    let targets = [
        (ZetaMode::Euler { g: 0 }, poly("1")),
        (ZetaMode::HodgeDeligne { g: 0 }, poly("u*v")),
        (ZetaMode::Poincare { g: 0 }, poly("x^2")),
    ];
    for ell in 1..=3 {
        let motivic = closed_form(ZetaMode::MotivicP1, ell, N).map_err(|e| e.to_string())?;
        for (mode, value) in &targets {
            let sub = BTreeMap::from([("L".to_string(), value.clone())]);
            let other = closed_form(*mode, ell, N).map_err(|e| e.to_string())?;
            for n in 0..=N {
                let specialized = motivic.coeff(n).specialize(&sub);
                ensure(
                    &specialized == other.coeff(n),
                    format!(
                        "{} ell = {ell} n = {n}: {specialized} != {}",
                        mode.name(),
                        other.coeff(n)
                    ),
                )?;
                let strata = strata_sum(n, ell, *mode).map_err(|e| e.to_string())?;
                ensure(
                    &strata == other.coeff(n),
                    format!("{} strata ell = {ell} n = {n}", mode.name()),
                )?;
            }
        }
    }
    Ok("L -> 1, uv, x^2 for n <= 8".into())
}

/// Relation families of the toric presentation, built directly from the
/// ray data.
fn lemma_families(n: usize, i: usize) -> (BTreeSet<String>, BTreeSet<String>) {
    let i = i.max(1);
    let sigma = |j: usize| {
        if j == 0 {
            poly("tau")
        } else {
            MultiPoly::var(&format!("sigma_{j}"))
        }
    };
    let rho = |k: usize| MultiPoly::var(&format!("rho_{k}"));
    let mut linear = BTreeSet::new();
    for j in 1..=n {
        let mut r = &sigma(j) - &poly("tau");
        for k in (n - j + 1).max(i + 1)..=n {
            r = &r + &rho(k).scale(&BigInt::from(k + j - n));
        }
        linear.insert(r.to_canonical_string());
    }
    let mut monomial = BTreeSet::new();
    for j in 1..=n - i + 1 {
        if j < n && n - j > i {
            monomial.insert((&sigma(j) * &rho(n - j)).to_canonical_string());
        }
    }
    if i < n {
        monomial.insert((&poly("tau") * &rho(n)).to_canonical_string());
    }
    let last: MultiPoly = (n - i..=n).map(sigma).product();
    monomial.insert(last.to_canonical_string());
    (linear, monomial)
}

fn eliminate_sigma(p: &str, n: usize, i: usize) -> String {
    let i = i.max(1);
    let sub: BTreeMap<String, MultiPoly> = (1..=n)
        .map(|j| {
            let mut s = poly("tau");
            for k in (n - j + 1).max(i + 1)..=n {
                s = &s - &MultiPoly::var(&format!("rho_{k}")).scale(&BigInt::from(k + j - n));
            }
            (format!("sigma_{j}"), s)
        })
        .collect();
    poly(p).specialize(&sub).to_canonical_string()
}

fn criterion_6() -> Check {
    let mut cases = 0;
    for n in 1..=4 {
        for i in 1..=n {
            let fan = hilb_fan(n, i).map_err(|e| e.to_string())?;
            let pres = sr_presentation(&fan).map_err(|e| e.to_string())?;
            let (linear, monomial) = lemma_families(n, i);
            let rels = pres.relation_set();
            let (sr_linear, sr_monomial): (BTreeSet<String>, BTreeSet<String>) = rels
                .into_iter()
                .partition(|r| poly(r).total_degree() == Some(1));
            ensure(
                sr_linear == linear,
                format!("({n},{i}) linear {sr_linear:?} vs {linear:?}"),
            )?;
            let reduce = |s: &BTreeSet<String>| -> BTreeSet<String> {
                s.iter().map(|r| eliminate_sigma(r, n, i)).collect()
            };
            ensure(
                reduce(&sr_monomial) == reduce(&monomial),
                format!("({n},{i}) monomials {sr_monomial:?} vs {monomial:?}"),
            )?;
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, n <= 4"))
}

fn criterion_7() -> Check {
    let mut torsion_report = Vec::new();
    for n in 1..=4 {
        for i in 1..=n {
            let fan = hilb_fan(n, i).map_err(|e| e.to_string())?;
            let census = fan.cone_census();
            // h-vector: sum_k f_k (L - 1)^(n - k)
            let mut h = vec![0i128; n + 1];
            for (k, &f) in census.iter().enumerate() {
                for a in 0..=n - k {
                    h[a] += f as i128 * binom(n - k, a) * (-1i128).pow((n - k - a) as u32);
                }
            }
            let pres = sr_presentation(&fan).map_err(|e| e.to_string())?;
            let groups = graded_groups(&pres).map_err(|e| e.to_string())?;
            let ranks: Vec<i128> = groups.iter().map(|g| g.rank as i128).collect();
            ensure(
                ranks == h,
                format!("({n},{i}) ranks {ranks:?}, h-vector {h:?}, census {census:?}"),
            )?;
            for g in groups.iter().filter(|g| !g.torsion.is_empty()) {
                let t: Vec<String> = g.torsion.iter().map(|d| d.to_string()).collect();
                torsion_report.push(format!("({n},{i}) deg {}: Z/[{}]", g.degree, t.join(",")));
            }
        }
    }
    Ok(format!(
        "ranks = h-vector of census; torsion {}",
        torsion_report.join("; ")
    ))
}

fn mutual(a: &GradedPresentation, b: &GradedPresentation, top: usize) -> Result<bool, String> {
    let ia = GradedIdeal::new(a, top).map_err(|e| e.to_string())?;
    let ib = GradedIdeal::new(b, top).map_err(|e| e.to_string())?;
    for r in a.all_relations() {
        if !ib.contains(&r).map_err(|e| e.to_string())? {
            return Ok(false);
        }
    }
    for r in b.all_relations() {
        if !ia.contains(&r).map_err(|e| e.to_string())? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Z[H, e] / (H^{n+1}, prod_k (k e + H), H e)`.
fn literal_example(n: usize) -> Result<GradedPresentation, String> {
    let mut pres = GradedPresentation::new(BaseRing::p1(n), n);
    let e = eps_name(1, n);
    pres.add_generator(&e, 1).map_err(|x| x.to_string())?;
    let q: MultiPoly = (1..=n)
        .map(|k| &MultiPoly::var(&e).scale(&BigInt::from(k)) + &MultiPoly::var(HYPERPLANE))
        .product();
    pres.add_relation(q).map_err(|x| x.to_string())?;
    pres.add_relation(&MultiPoly::var(&e) * &MultiPoly::var(HYPERPLANE))
        .map_err(|x| x.to_string())?;
    Ok(pres)
}

fn criterion_8() -> Check {
    for n in 1..=4 {
        for i in 0..=n {
            let a = thm_d_presentation(n, &[i], &BaseRing::p1(n)).map_err(|e| e.to_string())?;
            let b = iterated_keel(n, &[i], &BaseRing::p1(n)).map_err(|e| e.to_string())?;
            ensure(mutual(&a, &b, n)?, format!("ideals differ at ({n},{i})"))?;
        }
    }
    for n in 2..=5 {
        let pres = thm_d_presentation(n, &[n - 1], &BaseRing::p1(n)).map_err(|e| e.to_string())?;
        ensure(
            pres.generators().len() == 1,
            format!("n = {n}: expected one exceptional class"),
        )?;
        ensure(
            pres.relations().len() == 2,
            format!("n = {n}: {:?}", pres.relation_set()),
        )?;
        let example = literal_example(n)?;
        let e = eps_name(1, n);
        let flip = BTreeMap::from([
            (HYPERPLANE.to_string(), MultiPoly::var(HYPERPLANE)),
            (e.clone(), -&MultiPoly::var(&e)),
        ]);
        let there = compare_presentations(&example, &pres, &flip).map_err(|x| x.to_string())?;
        let back = compare_presentations(&pres, &example, &flip).map_err(|x| x.to_string())?;
        ensure(
            there.passed() && back.passed(),
            format!("example at n = {n} not reproduced"),
        )?;
    }
    Ok("mutual membership n <= 4, all i; example i = n-1 up to eps -> -eps, n = 2..5".into())
}

fn show_groups(p: &[loghilb::GradedPiece]) -> String {
    p.iter()
        .map(|g| {
            if g.torsion.is_empty() {
                format!("Z^{}", g.rank)
            } else {
                let t: Vec<String> = g.torsion.iter().map(|d| d.to_string()).collect();
                format!("Z^{}+[{}]", g.rank, t.join(","))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn criterion_9() -> Check {
    let mut notes = Vec::new();
    for (n, i) in [(2, 1), (3, 1), (3, 2), (4, 2), (4, 3)] {
        let (fan, map) = toric_pullback_map(n, &[i]).map_err(|e| e.to_string())?;
        let sr = sr_presentation(&fan).map_err(|e| e.to_string())?;
        let pres = thm_d_presentation(n, &[i], &BaseRing::p1(n)).map_err(|e| e.to_string())?;
        let report = compare_presentations(&pres, &sr, &map).map_err(|e| e.to_string())?;
        ensure(report.groups_equal, format!("({n},{i}) groups differ"))?;
        let failing: Vec<&str> = report
            .relations
            .iter()
            .filter(|r| !r.holds)
            .map(|r| r.relation.as_str())
            .collect();
        ensure(
            failing.is_empty(),
            format!("({n},{i}) relations fail: {failing:?}"),
        )?;
        ensure(
            report.degree_one_surjective,
            format!("({n},{i}) not onto in degree one"),
        )?;
        let searched =
            match find_comparison_map(&pres, &sr, 2, 200_000).map_err(|e| e.to_string())? {
                MapSearch::Found(_) => "search ok",
                MapSearch::NotFound => "search none",
                MapSearch::Exhausted => "search budget",
            };
        notes.push(format!(
            "({n},{i}) {} [{searched}]",
            show_groups(&report.groups_source)
        ));
    }
    Ok(format!("H->tau, eps_j->rho_j; {}", notes.join("; ")))
}

fn criterion_10() -> Check {
    let c = MultiPoly::var("c");
    let t = |x: usize| {
        if x == 1 {
            MultiPoly::var("t")
        } else {
            MultiPoly::var(&format!("t{x}"))
        }
    };
    for k in 0..=3 {
        let q = q_polynomial_in(0, k, &c, &t).map_err(|e| e.to_string())?;
        ensure(q.is_zero(), format!("Q_0,{k} = {q}"))?;
    }
    let q22 = q_polynomial_in(2, 2, &c, &|_| MultiPoly::var("t")).map_err(|e| e.to_string())?;
    ensure(q22 == poly("2*t^2 + 3*c*t + c^2"), format!("Q_2,2 = {q22}"))?;
    let q21 = q_polynomial_in(2, 1, &c, &t).map_err(|e| e.to_string())?;
    ensure(q21 == poly("t + c - 2*t2"), format!("Q_2,1 = {q21}"))?;
    for m in 1..=6 {
        for h in 1..=m {
            let q = q_polynomial_in(m, h, &c, &t).map_err(|e| e.to_string())?;
            ensure(
                q.homogeneous_degree(&|_| 1) == Some(h as u32),
                format!("Q_{m},{h} not homogeneous"),
            )?;
        }
    }
    Ok(format!("Q_2,2 = {q22}; Q_2,1 = {q21}; homogeneous m <= 6"))
}

fn criterion_11() -> Check {
    let profile =
        StratumProfile::new(1, vec![vec![1, 2], vec![], vec![1]]).map_err(|e| e.to_string())?;
    let class = stratum_cycle_class(&profile, 5).map_err(|e| e.to_string())?;
    let expected = &(&MultiPoly::var(&eps_name(1, 2)) * &MultiPoly::var(&eps_name(1, 3)))
        * &MultiPoly::var(&eps_name(3, 1));
    ensure(class == expected, format!("class {class}"))?;
    ensure(
        profile.codimension() == 3 && class.total_degree() == Some(3),
        "codimension",
    )?;
    Ok(format!("{profile} -> {class}, codimension 3"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 11] = [
        (
            "hilb2 fan rays and census",
            criterion_1,
            Duration::from_secs(1),
        ),
        (
            "cone census binom(n,k) 2^k",
            criterion_2,
            Duration::from_secs(5),
        ),
        ("fan motive (L+1)^n", criterion_3, Duration::from_secs(5)),
        (
            "strata sum = closed form",
            criterion_4,
            Duration::from_secs(30),
        ),
        ("specialization table", criterion_5, Duration::from_secs(10)),
        (
            "toric relation families",
            criterion_6,
            Duration::from_secs(10),
        ),
        ("toric graded ranks", criterion_7, Duration::from_secs(60)),
        (
            "iterated keel = closed form",
            criterion_8,
            Duration::from_secs(60),
        ),
        (
            "keel vs toric presentation",
            criterion_9,
            Duration::from_secs(120),
        ),
        (
            "Q polynomial identities",
            criterion_10,
            Duration::from_secs(1),
        ),
        ("stratum cycle class", criterion_11, Duration::from_secs(1)),
    ];
    let mut failures = 0;
    for (idx, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => (
                "FAIL",
                format!("too slow ({:.2?} > {:.0?}): {d}", elapsed, limit),
            ),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("[{status}] {:>2} {name} ({elapsed:.2?}): {detail}", idx + 1);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Workloads shared by the criterion benches in `benches/`.

use loghilb::chow::{graded_groups, sr_presentation, thm_d_presentation, BaseRing};
use loghilb::fan::hilb_fan;
use loghilb::motive::{closed_form, strata_sum, ZetaMode};
use loghilb::{GradedPiece, MultiPoly};

/// Builds and fully validates the fan of `Hilb^n(P^1|0)_{<=i}`.
pub fn validated_fan(n: usize, i: usize) -> Vec<usize> {
    let fan = hilb_fan(n, i).expect("valid level");
    fan.validate().expect("fan invariants hold");
    fan.cone_census()
}

pub fn toric_groups(n: usize, i: usize) -> Vec<GradedPiece> {
    let fan = hilb_fan(n, i).expect("valid level");
    graded_groups(&sr_presentation(&fan).expect("complete fan")).expect("integral base")
}

pub fn keel_groups(n: usize, i: usize) -> Vec<GradedPiece> {
    let pres = thm_d_presentation(n, &[i], &BaseRing::p1(n)).expect("valid levels");
    graded_groups(&pres).expect("integral base")
}

/// Closed form coefficient and strata sum at `t^n`.
pub fn motive_pair(n: usize, ell: usize) -> (MultiPoly, MultiPoly) {
    let mode = ZetaMode::MotivicP1;
    let series = closed_form(mode, ell, n).expect("valid mode");
    (
        series.coeff(n).clone(),
        strata_sum(n, ell, mode).expect("valid mode"),
    )
}

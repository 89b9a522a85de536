use num_bigint::BigInt;

use super::{BaseRing, ChowError, GradedPresentation};
use crate::exact::MultiPoly;
use crate::fan::StackyFan;

/// Stanley–Reisner presentation of a complete simplicial fan: one generator
/// per ray, the `dim` linear relations `sum_rho <e_k^*, v_rho> x_rho`, then
/// one squarefree monomial per minimal non-face.
pub fn sr_presentation(fan: &StackyFan) -> Result<GradedPresentation, ChowError> {
    fan.check_complete()?;
    let mut pres = GradedPresentation::new(BaseRing::Integers, fan.dim());
    for ray in fan.rays() {
        pres.add_generator(&ray.label, 1)?;
    }
    for k in 0..fan.dim() {
        let linear: MultiPoly = fan
            .rays()
            .iter()
            .map(|r| MultiPoly::var(&r.label).scale(&BigInt::from(r.vector[k])))
            .sum();
        pres.add_relation(linear)?;
    }
    for face in fan.minimal_non_faces() {
        let mono: MultiPoly = face
            .iter()
            .map(|&i| MultiPoly::var(&fan.rays()[i].label))
            .product();
        pres.add_relation(mono)?;
    }
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::graded_groups;
    use crate::fan::{hilb_fan, projective_fan};

    #[test]
    fn projective_space() {
        for n in 1..=4 {
            let pres = sr_presentation(&projective_fan(n).unwrap()).unwrap();
            let groups = graded_groups(&pres).unwrap();
            assert_eq!(groups.len(), n + 1);
            assert!(groups.iter().all(|g| g.rank == 1 && g.torsion.is_empty()));
        }
    }

    #[test]
    fn first_blow_up() {
        let pres = sr_presentation(&hilb_fan(2, 1).unwrap()).unwrap();
        let rels = pres.relation_set();
        assert!(rels.contains("rho_2 + sigma_1 - tau"));
        assert!(rels.contains("2*rho_2 + sigma_2 - tau"));
        assert!(rels.contains("sigma_1*sigma_2"));
        assert!(rels.contains("rho_2*tau"));
        let ranks: Vec<usize> = graded_groups(&pres)
            .unwrap()
            .iter()
            .map(|g| g.rank)
            .collect();
        assert_eq!(ranks, vec![1, 2, 1]);
    }
}

mod common;

use num_traits::Zero;

use common::*;
use superdegen::degeneration::{
    check_commutativity, family_ideal, find_weight_vector, gr_ideal, lift_relations, pow, rescale,
    specialize, weight_constraints, GeneratorRing, RingData,
};
use superdegen::linalg::{rat, ratio, Rational};
use superdegen::pipeline::Setup;

fn family_for(setup: &Setup, degree: u32) {
    let mut data =
        RingData::new(&setup.alg, &setup.level_one, &setup.basis, &glex(setup), degree as usize, setup.divided)
            .unwrap();
    assert!(check_commutativity(&mut data, 1).unwrap().is_empty());
    let ring = GeneratorRing::new(data.essential(1));
    let lifted = lift_relations(&ring, &mut data, &gr_ideal(&ring, degree)).unwrap();
    let w = find_weight_vector(&lifted, setup.vars()).unwrap();
    for row in weight_constraints(&lifted) {
        assert!(row.iter().zip(&w).map(|(a, b)| a * b).sum::<i64>() >= 1, "{row:?} . {w:?}");
    }
    let family = family_ideal(&ring, &data, &lifted, &w, degree).unwrap();
    // every fiber away from zero is the rescaled relation set
    for a in [rat(1), rat(2), rat(-3), ratio(1, 2)] {
        let fiber = specialize(&family, &a);
        let mut gens = family.all_generators().into_iter();
        for (rel, got) in lifted.iter().zip(&fiber.relations) {
            let g = gens.next().unwrap();
            let base = if g.base_weight >= 0 {
                pow(&a, g.base_weight as u32).recip()
            } else {
                pow(&a, (-g.base_weight) as u32)
            };
            let want = rescale(&ring, &w, &rel.full(), &a.recip()).scale(&base);
            assert_eq!(got, &want, "fiber {a} of {}", ring.format(&rel.full()));
        }
    }
    let special = specialize(&family, &Rational::zero());
    for (rel, got) in lifted.iter().zip(&special.relations) {
        assert_eq!(got, &rel.lead);
    }
}

#[test]
fn fibers_are_rescalings_sl2() {
    family_for(&sl2(), 3);
}

#[test]
fn fibers_are_rescalings_osp14() {
    family_for(&osp14(), 2);
}

#[test]
fn fibers_are_rescalings_sl12() {
    family_for(&sl12(), 3);
}

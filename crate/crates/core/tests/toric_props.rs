use num_integer::Integer;
use proptest::prelude::*;

use superdegen::toric::{
    check_even_laurent, check_odd_reachable, check_odd_removal, classical_lattice_full, solve_action,
    verify_derivation_closure, ExponentSet, Reach, Reading, SumSearch,
};
use superdegen::linalg::Rational;
use superdegen::superpoly::MultiExponent;

fn exponent_set(n: usize, q: usize) -> impl Strategy<Value = ExponentSet> {
    prop::collection::vec(
        (prop::collection::vec(0u8..=1, q), prop::collection::vec(0u32..=2, n)),
        1..7,
    )
    .prop_map(move |items| {
        let monos: Vec<MultiExponent> = items.into_iter().map(|(o, e)| MultiExponent::new(o, e)).collect();
        ExponentSet::from_monomials(n, q, &monos).unwrap()
    })
}

/// Closes a set under removing odd indices, so odd removal holds.
fn removal_closed(k: &ExponentSet) -> ExponentSet {
    let mut monos: Vec<MultiExponent> = k.elements.iter().map(|(e, _)| e.clone()).collect();
    let mut i = 0;
    while i < monos.len() {
        for j in 0..k.q {
            if monos[i].odd[j] == 1 {
                let mut r = monos[i].clone();
                r.odd[j] = 0;
                if !monos.contains(&r) {
                    monos.push(r);
                }
            }
        }
        i += 1;
    }
    ExponentSet::from_monomials(k.n, k.q, &monos).unwrap()
}

fn zero_action(k: &ExponentSet) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![Rational::from_integer(0.into()); k.n + 1]; k.q]; k.q]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zero_action_closure_is_odd_removal(k in exponent_set(2, 3)) {
        let search = SumSearch::new(&k, 2);
        let closure = verify_derivation_closure(&k, &search, &zero_action(&k));
        prop_assert_eq!(closure.holds, check_odd_removal(&k).holds);
    }

    #[test]
    fn solved_action_has_zero_residual(k in exponent_set(2, 3)) {
        let k = removal_closed(&k);
        let search = SumSearch::new(&k, 3);
        let action = solve_action(&k, &search, Reading::Graded);
        for (&key, vecs) in &action.basis_exact {
            for v in vecs {
                let r = verify_derivation_closure(&k, &search, &action.single(k.n, k.q, key, v));
                prop_assert!(r.residuals.is_empty(), "{:?}", r.residuals);
            }
        }
    }

    /// `(m_i, 1)` generate `Z^2` exactly when the differences have gcd one.
    #[test]
    fn classical_lattice_matches_gcd(points in prop::collection::btree_set(0u32..=12, 1..6)) {
        let pts: Vec<u32> = points.into_iter().collect();
        let g = pts.iter().fold(0i64, |g, &p| g.gcd(&(p as i64 - pts[0] as i64)));
        let rows: Vec<Vec<u32>> = pts.iter().map(|&p| vec![p]).collect();
        prop_assert_eq!(classical_lattice_full(&rows), g == 1);
        let monos: Vec<MultiExponent> = pts.iter().map(|&p| MultiExponent::new(vec![], vec![p])).collect();
        let k = ExponentSet::from_monomials(1, 0, &monos).unwrap();
        prop_assert_eq!(check_even_laurent(&k).holds, g == 1);
    }

    /// Witnesses are genuine sums; unreachable directions have no sum of up
    /// to three elements with that odd part.
    #[test]
    fn reachability_is_exact(k in exponent_set(1, 3)) {
        for (i, r) in check_odd_reachable(&k, 3).iter().enumerate() {
            let target: Vec<u8> = (0..3).map(|j| u8::from(j == i)).collect();
            match r {
                Reach::Witness { exponent, summands } => {
                    prop_assert_eq!(&exponent.odd, &target);
                    let mut sum = MultiExponent::zero(1, 3);
                    for &s in summands {
                        sum = sum.checked_add(&k.elements[s].0).unwrap();
                    }
                    prop_assert_eq!(&sum, exponent);
                }
                Reach::Unreachable => {
                    let els: Vec<&MultiExponent> = k.elements.iter().map(|(e, _)| e).collect();
                    for a in &els {
                        prop_assert_ne!(&a.odd, &target);
                        for b in &els {
                            if let Some(ab) = a.checked_add(b) {
                                prop_assert_ne!(&ab.odd, &target);
                                for c in &els {
                                    if let Some(abc) = ab.checked_add(c) {
                                        prop_assert_ne!(&abc.odd, &target);
                                    }
                                }
                            }
                        }
                    }
                }
                Reach::Inconclusive { .. } => prop_assert!(false, "q = 3 is decided within 3 summands"),
            }
        }
    }
}

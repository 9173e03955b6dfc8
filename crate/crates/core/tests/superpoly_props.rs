use std::cmp::Ordering;

use proptest::prelude::*;

use superdegen::linalg::rat;
use superdegen::superpoly::{
    koszul_count, monomial_product, MonomialOrder, MultiExponent, OrderKind, SuperPolynomial,
};

fn exponent(n: usize, q: usize) -> impl Strategy<Value = MultiExponent> {
    (prop::collection::vec(0u8..=1, q), prop::collection::vec(0u32..=3, n))
        .prop_map(|(odd, even)| MultiExponent::new(odd, even))
}

fn poly(n: usize, q: usize) -> impl Strategy<Value = SuperPolynomial> {
    prop::collection::vec((exponent(n, q), -3i64..=3), 1..4).prop_map(move |terms| {
        let mut p = SuperPolynomial::zero(n, q);
        for (e, c) in terms {
            p.add_term(e, &rat(c));
        }
        p
    })
}

/// Sign of sorting the word `desc(I) desc(J)` into descending order by
/// adjacent transpositions.
fn bubble_sign(i: &[u8], j: &[u8]) -> i64 {
    let desc = |s: &[u8]| (0..s.len()).rev().filter(|&k| s[k] == 1).collect::<Vec<_>>();
    let mut word = desc(i);
    word.extend(desc(j));
    let mut sign = 1;
    for end in (1..word.len()).rev() {
        for k in 0..end {
            if word[k] < word[k + 1] {
                word.swap(k, k + 1);
                sign = -sign;
            }
        }
    }
    sign
}

fn order(vars: usize) -> impl Strategy<Value = MonomialOrder> {
    (Just((0..vars).collect::<Vec<_>>()).prop_shuffle(), 0..3usize, prop::collection::vec(0i64..=3, vars)).prop_map(
        |(prio, kind, w)| {
            let kind = match kind {
                0 => OrderKind::GradedLex,
                1 => OrderKind::GradedRevLex,
                _ => OrderKind::Weighted(w),
            };
            MonomialOrder::new(kind, prio).unwrap()
        },
    )
}

fn split(p: &SuperPolynomial) -> [SuperPolynomial; 2] {
    let mut parts = [SuperPolynomial::zero(p.n(), p.q()), SuperPolynomial::zero(p.n(), p.q())];
    for (m, c) in p.terms() {
        parts[m.parity() as usize].add_term(m.clone(), c);
    }
    parts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn koszul_identity(i in prop::collection::vec(0u8..=1, 0..6), mask in any::<u8>()) {
        let j: Vec<u8> = i.iter().enumerate().map(|(k, &x)| (1 - x) & ((mask >> k) & 1)).collect();
        let (a, b) = (i.iter().filter(|&&x| x == 1).count(), j.iter().filter(|&&x| x == 1).count());
        prop_assert_eq!((koszul_count(&i, &j) + koszul_count(&j, &i)) as usize, a * b);
    }

    #[test]
    fn product_sign_matches_sorting(a in exponent(2, 5), b in exponent(2, 5)) {
        match monomial_product(&a, &b) {
            None => prop_assert!(a.odd.iter().zip(&b.odd).any(|(x, y)| x & y == 1)),
            Some((sum, sign)) => {
                prop_assert_eq!(sign, bubble_sign(&a.odd, &b.odd));
                prop_assert_eq!(sum.flat(), a.flat().iter().zip(b.flat()).map(|(x, y)| x + y).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn associative(a in poly(2, 3), b in poly(2, 3), c in poly(2, 3)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn supercommutative(a in poly(2, 4), b in poly(2, 4)) {
        for (pa, x) in split(&a).iter().enumerate() {
            for (pb, y) in split(&b).iter().enumerate() {
                let sign = if pa * pb == 1 { -1 } else { 1 };
                prop_assert_eq!(x.multiply(y).unwrap(), y.multiply(x).unwrap().scale(&rat(sign)));
            }
        }
    }

    #[test]
    fn distributive(a in poly(1, 3), b in poly(1, 3), c in poly(1, 3)) {
        let left = a.multiply(&b.add(&c).unwrap()).unwrap();
        let right = a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn format_parse_roundtrip(a in poly(3, 3)) {
        let text = format!("{a}");
        prop_assert_eq!(SuperPolynomial::parse(&text, 3, 3).unwrap(), a);
    }

    #[test]
    fn order_is_compatible(o in order(5), a in exponent(3, 2), b in exponent(3, 2), c in exponent(3, 2)) {
        let ab = o.compare(&a, &b);
        prop_assert_eq!(ab, o.compare(&b, &a).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        if let (Some(ac), Some(bc)) = (a.checked_add(&c), b.checked_add(&c)) {
            prop_assert_eq!(o.compare(&ac, &bc), ab);
        }
        prop_assert_ne!(o.compare(&MultiExponent::zero(3, 2), &c), Ordering::Greater);
    }

    #[test]
    fn order_is_transitive(o in order(4), a in exponent(2, 2), b in exponent(2, 2), c in exponent(2, 2)) {
        if o.compare(&a, &b).is_le() && o.compare(&b, &c).is_le() {
            prop_assert!(o.compare(&a, &c).is_le());
        }
    }
}

#[test]
fn odd_factors_anticommute_when_parsed() {
    let a = SuperPolynomial::parse("xi1*xi2", 0, 2).unwrap();
    let b = SuperPolynomial::parse("xi2*xi1", 0, 2).unwrap();
    assert_eq!(a, b.scale(&rat(-1)));
    assert!(SuperPolynomial::parse("xi1*xi1", 0, 2).unwrap().is_zero());
}

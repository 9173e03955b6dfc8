use num_traits::Zero;
use proptest::prelude::*;

use superdegen::lie::{choose_borel, AlgebraSpec, Family, LieSuperalgebra};
use superdegen::linalg::{rat, Rational, SparseVector};

fn algebras() -> Vec<LieSuperalgebra> {
    [
        (Family::Gl, 1, 1),
        (Family::Gl, 2, 1),
        (Family::Sl, 1, 2),
        (Family::Sl, 2, 2),
        (Family::Osp, 1, 1),
        (Family::Osp, 1, 2),
        (Family::Osp, 2, 1),
        (Family::Osp, 3, 1),
    ]
    .into_iter()
    .map(|(f, m, n)| LieSuperalgebra::build(AlgebraSpec::new(f, m, n)).unwrap())
    .collect()
}

fn sign(alg: &LieSuperalgebra, x: usize, y: usize) -> Rational {
    rat(alg.bracket_sign(x, y))
}

#[test]
fn bracket_table_matches_matrix_supercommutator() {
    for g in algebras() {
        for a in 0..g.dim() {
            for b in 0..g.dim() {
                let (x, y) = (&g.basis()[a], &g.basis()[b]);
                let want = x.compose(y).add_scaled(&-sign(&g, a, b), &y.compose(x));
                assert_eq!(g.element_matrix(g.bracket(a, b)), want, "{} ({a},{b})", g.spec);
            }
        }
    }
}

#[test]
fn super_skew_symmetry_and_jacobi() {
    for g in algebras() {
        let d = g.dim();
        for a in 0..d {
            for b in 0..d {
                let ab = g.bracket(a, b);
                assert_eq!(ab, &g.bracket(b, a).scaled(&-sign(&g, a, b)), "{} skew ({a},{b})", g.spec);
            }
        }
        if d > 20 {
            continue;
        }
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let (ex, ey, ez) = (SparseVector::unit(x), SparseVector::unit(y), SparseVector::unit(z));
                    let lhs = g.bracket_elements(&ex, &g.bracket_elements(&ey, &ez));
                    let mut rhs = g.bracket_elements(&g.bracket_elements(&ex, &ey), &ez);
                    rhs.add_scaled(&sign(&g, x, y), &g.bracket_elements(&ey, &g.bracket_elements(&ex, &ez)));
                    assert_eq!(lhs, rhs, "{} Jacobi ({x},{y},{z})", g.spec);
                }
            }
        }
    }
}

#[test]
fn root_vectors_are_eigenvectors() {
    for g in algebras() {
        for r in g.roots() {
            for h in 0..g.cartan_dim() {
                let want = SparseVector::unit(r.basis_index).scaled(&r.coords[h]);
                assert_eq!(g.bracket(h, r.basis_index), &want, "{}", g.spec);
            }
            assert_eq!(g.parity(r.basis_index), r.parity);
        }
        assert_eq!(g.cartan_dim() + g.roots().len(), g.dim());
    }
}

#[test]
fn supertraceless_except_gl() {
    for g in algebras() {
        if g.spec.family == Family::Gl {
            continue;
        }
        for m in g.basis() {
            assert!(g.supertrace(m).is_zero(), "{}", g.spec);
        }
    }
}

fn element(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-2i64..=2, dim)
}

fn homogeneous(g: &LieSuperalgebra, coeffs: &[i64], parity: u8) -> SparseVector {
    let mut v = SparseVector::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if g.parity(i) == parity {
            v.set(i, rat(c));
        }
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `str(X [Y, Z]) = str([X, Y] Z)` on homogeneous elements of osp(1|4).
    #[test]
    fn supertrace_form_is_invariant(
        x in element(14), y in element(14), z in element(14), px in 0u8..2, py in 0u8..2, pz in 0u8..2,
    ) {
        let g = LieSuperalgebra::build(AlgebraSpec::new(Family::Osp, 1, 2)).unwrap();
        let (x, y, z) = (homogeneous(&g, &x, px), homogeneous(&g, &y, py), homogeneous(&g, &z, pz));
        let m = |v: &SparseVector| g.element_matrix(v);
        let lhs = g.supertrace(&m(&x).compose(&m(&g.bracket_elements(&y, &z))));
        let rhs = g.supertrace(&m(&g.bracket_elements(&x, &y)).compose(&m(&z)));
        prop_assert_eq!(lhs, rhs);
    }

    /// Any regular functional splits the roots into two opposite halves.
    #[test]
    fn borel_halves_are_opposite(f in prop::collection::vec(-7i64..=7, 3)) {
        let g = LieSuperalgebra::build(AlgebraSpec::new(Family::Sl, 1, 2)).unwrap();
        let functional: Vec<Rational> = f.iter().map(|&x| rat(x)).collect();
        if let Ok(b) = choose_borel(&g, &functional) {
            prop_assert_eq!(b.positive.len(), b.negative.len());
            for &p in &b.positive {
                let neg: Vec<Rational> = g.roots()[p].coords.iter().map(|c| -c).collect();
                let idx = g.root_index_by_coords(&neg).unwrap();
                prop_assert!(b.negative.contains(&idx));
            }
            prop_assert!(!b.simple.is_empty());
        }
    }
}

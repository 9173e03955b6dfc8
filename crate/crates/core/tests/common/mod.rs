#![allow(dead_code)]

use std::path::PathBuf;

use superdegen::pipeline::{AlgebraConfig, FactorConfig, OrderConfig, RealizationConfig, Setup};
use superdegen::superpoly::MonomialOrder;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn algebra(family: &str, m: usize, n: usize) -> AlgebraConfig {
    AlgebraConfig {
        family: family.into(),
        m,
        n,
        functional: None,
        basis_perm: None,
    }
}

pub fn naturals(count: usize, weight: Option<&[&str]>) -> RealizationConfig {
    RealizationConfig {
        factors: if count == 0 {
            Vec::new()
        } else {
            vec![FactorConfig {
                kind: "natural".into(),
                count,
            }]
        },
        weight: weight.map(|w| w.iter().map(|s| s.to_string()).collect()),
        hw_indices: None,
        divided_powers: true,
        assume_typical: false,
    }
}

/// osp(1|4) with highest weight delta1 + delta2 inside natural (x) natural.
pub fn osp14() -> Setup {
    Setup::build(&algebra("osp", 1, 2), &naturals(2, Some(&["1", "1"]))).unwrap()
}

/// sl(1|2) on its natural representation.
pub fn sl12() -> Setup {
    Setup::build(&algebra("sl", 1, 2), &naturals(1, None)).unwrap()
}

/// sl(2) with highest weight 2.
pub fn sl2() -> Setup {
    Setup::build(&algebra("sl", 2, 0), &naturals(2, None)).unwrap()
}

pub fn glex(setup: &Setup) -> MonomialOrder {
    setup.order(&OrderConfig::default()).unwrap()
}

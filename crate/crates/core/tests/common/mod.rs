//! Shared helpers for integration tests: fixture loading and compact
//! construction of set functions, families, and masks.

#![allow(dead_code)]

use std::path::PathBuf;

use dca_core::func::{PriceVector, SetFunction};
use dca_core::family::SetFamily;
use dca_core::ground::{GroundSet, SubsetMask};
use dca_core::io;
use dca_core::value::ExtValue;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn load_function(name: &str) -> SetFunction {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    io::parse_function_json(&text, dca_core::ground::DEFAULT_MAX_N).unwrap()
}

pub fn load_family(name: &str) -> SetFamily {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    io::parse_family_json(&text, dca_core::ground::DEFAULT_MAX_N).unwrap()
}

pub fn mask(elements: &[u8]) -> SubsetMask {
    SubsetMask::from_elements(elements).unwrap()
}

/// Builds a function from its finite entries; every other subset is -inf.
pub fn func(n: u8, finite: &[(&[u8], f64)]) -> SetFunction {
    let ground = GroundSet::new(n).unwrap();
    let mut table = vec![ExtValue::NEG_INF; ground.size()];
    for (els, v) in finite {
        table[mask(els).bits() as usize] = ExtValue::finite(*v);
    }
    SetFunction::new(ground, table).unwrap()
}

pub fn constant_zero(n: u8) -> SetFunction {
    let ground = GroundSet::new(n).unwrap();
    SetFunction::new(ground, vec![ExtValue::finite(0.0); ground.size()]).unwrap()
}

pub fn family(n: u8, members: &[&[u8]]) -> SetFamily {
    let ground = GroundSet::new(n).unwrap();
    SetFamily::new(ground, members.iter().map(|els| mask(els)).collect()).unwrap()
}

pub fn prices(values: &[f64]) -> PriceVector {
    PriceVector::new(values.to_vec()).unwrap()
}

/// The fixture from the domain-condition counterexample: n = 6,
/// f({1,2,3}) = f({4,5,6}) = 0, -inf elsewhere.
pub fn two_blocks_fixture() -> SetFunction {
    func(6, &[(&[1, 2, 3], 0.0), (&[4, 5, 6], 0.0)])
}

/// The running three-element example: f(∅) = f({1}) = 0, f = 1 on the other
/// five proper subsets, f({1,2,3}) = -inf.
pub fn truncated_rank_fixture() -> SetFunction {
    func(
        3,
        &[
            (&[], 0.0),
            (&[1], 0.0),
            (&[2], 1.0),
            (&[3], 1.0),
            (&[1, 2], 1.0),
            (&[1, 3], 1.0),
            (&[2, 3], 1.0),
        ],
    )
}

//! Shared fixtures for the criterion benchmarks: deterministic arrangements
//! at a few sizes per pipeline.

use ordinary_core::generators::{generate, Arrangement, GenKind, GenSpec};
use ordinary_core::plane::Line2;
use ordinary_core::pseudolines::Pseudoline;
use ordinary_core::HyperplaneD;

pub fn random_lines(n: usize, seed: u64) -> Vec<Line2> {
    match generate(&GenSpec::new(GenKind::Random, n).with_seed(seed)).unwrap() {
        Arrangement::Lines(v) => v,
        _ => unreachable!(),
    }
}

pub fn random_hyperplanes(n: usize, d: usize, seed: u64) -> Vec<HyperplaneD> {
    match generate(&GenSpec::new(GenKind::Random, n).with_d(d).with_seed(seed)).unwrap() {
        Arrangement::Hyperplanes(v) => v,
        _ => unreachable!(),
    }
}

pub fn wiring(n: usize, seed: u64) -> Vec<Pseudoline> {
    match generate(&GenSpec::new(GenKind::WiringDiagram, n).with_seed(seed)).unwrap() {
        Arrangement::Pseudolines(v) => v,
        _ => unreachable!(),
    }
}

pub fn biased(n: usize, seed: u64) -> Vec<Pseudoline> {
    match generate(&GenSpec::new(GenKind::Biased, n).with_seed(seed)).unwrap() {
        Arrangement::Pseudolines(v) => v,
        _ => unreachable!(),
    }
}

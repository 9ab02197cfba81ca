//! Shared workloads for the benchmarks.

use toric_core::catalog;
use toric_core::{ArrangementSpec, GroupPresentation, HomologyGroup, Model, Space};

/// Arrangements benchmarked, by name.
pub fn workloads() -> Vec<(&'static str, ArrangementSpec)> {
    vec![("crossing-circles", catalog::crossing_circles()), ("grid", catalog::grid()), ("coordinate-cube", catalog::coordinate_cube())]
}

/// Everything the CLI can report, end to end.
pub fn full_pipeline(spec: &ArrangementSpec, k: u32) -> (Vec<HomologyGroup>, GroupPresentation) {
    let m = Model::build(spec, k).expect("catalog arrangement builds");
    let h = m.homology(Space::Salvetti, None).expect("homology");
    let p = m.presentation().expect("presentation");
    (h, p)
}

//! Small named arrangements used in tests, benchmarks and the CLI.

use crate::arrangement::ArrangementSpec;

fn build(rank: usize, pairs: &[(&[i64], &str)]) -> ArrangementSpec {
    ArrangementSpec::from_pairs(rank, pairs).expect("catalog entry is valid")
}

/// `k` equally spaced points on `C*` (angles `j / k`).
pub fn points_on_circle(k: usize) -> ArrangementSpec {
    let angles: Vec<String> = (0..k).map(|j| format!("{j}/{k}")).collect();
    let pairs: Vec<(&[i64], &str)> = angles.iter().map(|q| (&[1i64][..], q.as_str())).collect();
    build(1, &pairs)
}

/// The two circles `ts = 1` and `ts^{-1} = 1` on `(C*)^2`.
pub fn crossing_circles() -> ArrangementSpec {
    build(2, &[(&[1, 1], "0"), (&[1, -1], "0")])
}

/// `t = ±1`, `s = ±1` on `(C*)^2`.
pub fn grid() -> ArrangementSpec {
    build(2, &[(&[1, 0], "0"), (&[1, 0], "1/2"), (&[0, 1], "0"), (&[0, 1], "1/2")])
}

/// `t = 1`, `s = 1`, `r = 1` on `(C*)^3`.
pub fn coordinate_cube() -> ArrangementSpec {
    build(3, &[(&[1, 0, 0], "0"), (&[0, 1, 0], "0"), (&[0, 0, 1], "0")])
}

/// Every named arrangement, in a fixed order.
pub fn all() -> Vec<(&'static str, ArrangementSpec)> {
    vec![
        ("one-point", points_on_circle(1)),
        ("two-points", points_on_circle(2)),
        ("crossing-circles", crossing_circles()),
        ("grid", grid()),
        ("coordinate-cube", coordinate_cube()),
    ]
}

pub fn by_name(name: &str) -> Option<ArrangementSpec> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, s)| s)
}

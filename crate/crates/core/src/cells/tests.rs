use std::collections::BTreeSet;

use super::*;
use crate::arrangement::{lift_to_window, ArrangementSpec};
use crate::catalog;
use crate::exact::{dot_int, ratio};

fn lifted(spec: &ArrangementSpec, k: u32) -> LiftedFacePoset {
    let w = Window::cube(spec.rank(), k);
    enumerate_faces(&lift_to_window(spec, &w), Some(&w)).unwrap()
}

fn point(xs: &[(i64, i64)]) -> Vec<Rational> {
    xs.iter().map(|&(n, d)| ratio(n, d)).collect()
}

/// Vertex orbits of a rank-2 arrangement by Cramer's rule on all pairs of
/// lifted lines, kept when they land in `[0,1)^2`.
fn vertex_orbits_2d(spec: &ArrangementSpec) -> usize {
    let hs = spec.hypersurfaces();
    let mut pts = BTreeSet::new();
    for a in hs {
        for b in hs {
            let (p, q) = (a.character.exponents(), b.character.exponents());
            let det = p[0] * q[1] - p[1] * q[0];
            if det == 0 {
                continue;
            }
            for k1 in -6..=6 {
                for k2 in -6..=6 {
                    let c1 = a.angle.value() + rat(k1);
                    let c2 = b.angle.value() + rat(k2);
                    let x = (&c1 * rat(q[1]) - &c2 * rat(p[1])) / rat(det);
                    let y = (&c2 * rat(p[0]) - &c1 * rat(q[0])) / rat(det);
                    let inside = |v: &Rational| *v >= rat(0) && *v < rat(1);
                    if inside(&x) && inside(&y) {
                        pts.insert((x, y));
                    }
                }
            }
        }
    }
    pts.len()
}

/// Chamber orbits by sampling: a generic point's chamber is determined by the
/// integer parts of `<alpha_i, x> - q_i`, and two such vectors describe
/// translated chambers iff they differ by `A u` for an integer `u`.
fn chamber_orbits(spec: &ArrangementSpec, m: i64) -> usize {
    let n = spec.rank();
    let thetas = [ratio(1, 3), ratio(2, 7), ratio(3, 11)];
    let chars: Vec<&[i64]> = spec.hypersurfaces().iter().map(|h| h.character.exponents()).collect();
    let mut classes: Vec<Vec<i64>> = Vec::new();
    let mut idx = vec![0i64; n];
    'points: loop {
        let x: Vec<Rational> = (0..n).map(|i| (rat(idx[i]) + &thetas[i]) / rat(m)).collect();
        let mut v = Vec::new();
        let mut generic = true;
        for h in spec.hypersurfaces() {
            let s = dot_int(h.character.exponents(), &x) - h.angle.value();
            generic &= !s.fract().is_zero();
            v.push(floor_i64(&s));
        }
        if generic {
            let known = classes.iter().any(|w| {
                small_vectors(n, 3).iter().any(|u| {
                    chars.iter().zip(v.iter().zip(w)).all(|(a, (vi, wi))| {
                        vi - wi == a.iter().zip(u).map(|(x, y)| x * y).sum::<i64>()
                    })
                })
            });
            if !known {
                classes.push(v);
            }
        }
        for i in 0..n {
            idx[i] += 1;
            if idx[i] < m {
                continue 'points;
            }
            idx[i] = 0;
        }
        break;
    }
    classes.len()
}

fn small_vectors(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-r..=r).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out
}

use num_traits::Zero;

#[test]
fn circle_with_one_point() {
    let l = lifted(&catalog::points_on_circle(1), 1);
    let dims: Vec<usize> = l.faces().iter().map(|f| f.dim).collect();
    // Three bounded intervals plus the two rays leaving the window.
    assert_eq!(dims, vec![0, 0, 0, 0, 1, 1, 1, 1, 1]);
    assert_eq!(l.faces().iter().filter(|f| !f.complete).count(), 2);
    let xs: Vec<Rational> = l.faces()[..4].iter().map(|f| f.barycenter[0].clone()).collect();
    assert_eq!(xs, vec![rat(-1), rat(0), rat(1), rat(2)]);
    let fc = quotient_faces(&l).unwrap();
    assert_eq!(fc.census(1), vec![1, 1]);
    assert_eq!(fc.category().morphism_count(), 2);
    assert_eq!(fc.category().hom_count(0, 1), 2);
    assert!(!fc.is_poset());
}

#[test]
fn crossing_circles_census_matches_oracles() {
    let spec = catalog::crossing_circles();
    let fc = quotient_faces(&lifted(&spec, 1)).unwrap();
    let v = vertex_orbits_2d(&spec);
    let c = chamber_orbits(&spec, 12);
    assert_eq!((v, c), (2, 2));
    assert_eq!(fc.census(2), vec![v, v + c, c]);
    assert!(!fc.is_poset());
}

#[test]
fn grid_is_regular() {
    let spec = catalog::grid();
    let fc = quotient_faces(&lifted(&spec, 1)).unwrap();
    assert_eq!(fc.census(2), vec![vertex_orbits_2d(&spec), 8, chamber_orbits(&spec, 12)]);
    assert!(fc.is_poset());
}

#[test]
fn coordinate_cube_census() {
    let spec = catalog::coordinate_cube();
    let fc = quotient_faces(&lifted(&spec, 1)).unwrap();
    assert_eq!(fc.census(3), vec![1, 3, 3, 1]);
    assert_eq!(chamber_orbits(&spec, 4), 1);
}

#[test]
fn euler_relation_and_window_independence() {
    for (name, spec) in catalog::all() {
        let n = spec.rank();
        let a = quotient_faces(&lifted(&spec, 1)).unwrap();
        let b = quotient_faces(&lifted(&spec, 2)).unwrap();
        assert_eq!(a.euler_characteristic(), 0, "{name}");
        assert_eq!(a.census(n), b.census(n), "{name}");
        let homs = |f: &FaceCategory| {
            let c = f.category();
            let mut v: Vec<(Vec<Rational>, Vec<Rational>, usize)> = Vec::new();
            for s in 0..c.object_count() {
                for t in 0..c.object_count() {
                    let k = c.hom_count(s, t);
                    if k > 0 {
                        v.push((f.orbits()[s].barycenter.clone(), f.orbits()[t].barycenter.clone(), k));
                    }
                }
            }
            v.sort();
            v
        };
        assert_eq!(homs(&a), homs(&b), "{name}");
    }
}

#[test]
fn barycenters_satisfy_sign_vectors() {
    for (name, spec) in catalog::all() {
        let l = lifted(&spec, 1);
        for f in l.faces().iter().filter(|f| f.complete) {
            assert_eq!(l.sign_of_point(&f.barycenter), f.sign, "{name} face {}", f.id);
        }
    }
}

#[test]
fn covers_increase_dimension_by_one() {
    let l = lifted(&catalog::crossing_circles(), 1);
    for &(a, b) in l.covering_relations() {
        assert_eq!(l.face(a).dim + 1, l.face(b).dim);
        assert!(l.is_le(a, b));
    }
}

#[test]
fn opposite_and_fiber() {
    let l = lifted(&catalog::crossing_circles(), 1);
    for &c in l.chambers() {
        assert_eq!(chamber_fiber(&l, c, c).unwrap(), c);
        for &f in l.below(c) {
            if !l.face(f).complete || !l.above(f).iter().all(|&g| l.face(g).complete) {
                continue;
            }
            let o = opposite_chamber(&l, c, f).unwrap();
            assert_eq!(opposite_chamber(&l, o, f).unwrap(), c);
            assert_eq!(chamber_fiber(&l, c, f).unwrap(), c);
            assert!(l.is_le(f, chamber_fiber(&l, o, f).unwrap()));
        }
    }
    let origin = l.find_by_barycenter(&point(&[(0, 1), (0, 1)])).unwrap();
    let star: Vec<SignVector> = project_pi_f(&l, origin)
        .into_iter()
        .filter(|(g, _)| l.is_chamber(*g))
        .map(|(_, s)| s)
        .collect();
    let quadrants: BTreeSet<&SignVector> = star.iter().collect();
    assert_eq!(star.len(), 4);
    assert_eq!(quadrants.len(), 4);
    let up = l.find_by_barycenter(&point(&[(1, 2), (0, 1)])).unwrap();
    let down = l.find_by_barycenter(&point(&[(-1, 2), (0, 1)])).unwrap();
    assert_eq!(opposite_chamber(&l, up, origin).unwrap(), down);
}

#[test]
fn fiber_on_the_line() {
    let l = lifted(&catalog::points_on_circle(1), 1);
    let zero = l.find_by_barycenter(&point(&[(0, 1)])).unwrap();
    let right = l.find_by_barycenter(&point(&[(3, 2)])).unwrap();
    let first = l.find_by_barycenter(&point(&[(1, 2)])).unwrap();
    assert_eq!(chamber_fiber(&l, right, zero).unwrap(), first);
    let proj = project_pi_f(&l, zero);
    let signs: BTreeSet<SignVector> = proj.iter().map(|(_, s)| s.clone()).collect();
    assert_eq!(signs, BTreeSet::from([vec![-1], vec![0], vec![1]]));
}

#[test]
fn layer_posets() {
    let census = |spec: &ArrangementSpec| {
        let l = lifted(spec, 1);
        let fc = quotient_faces(&l).unwrap();
        let lp = layers(&l, &fc).unwrap();
        assert!(lp.relations.iter().all(|&(_, b)| b != usize::MAX));
        let top = lp.top();
        assert!((0..lp.layers.len()).filter(|&x| x != top).all(|x| lp.relations.contains(&(x, top))));
        lp.census()
    };
    assert_eq!(census(&catalog::points_on_circle(1)), vec![1, 1]);
    assert_eq!(census(&catalog::crossing_circles()), vec![2, 2, 1]);
    assert_eq!(census(&catalog::grid()), vec![4, 4, 1]);
    assert_eq!(census(&catalog::coordinate_cube()), vec![1, 3, 3, 1]);
    assert_eq!(LayerPoset::torus_only(2).census(), vec![0, 0, 1]);
}

#[test]
fn rejects_degenerate_input() {
    assert!(matches!(enumerate_faces(&[], None), Err(Error::NonSpanning(0))));
    let spec = ArrangementSpec::from_pairs(2, &[(&[1, 1], "0")]).unwrap();
    let w = Window::cube(2, 1);
    assert!(matches!(enumerate_faces(&lift_to_window(&spec, &w), Some(&w)), Err(Error::NonSpanning(1))));
}

#[test]
fn finite_arrangement_without_window() {
    let h = |alpha: Vec<i64>, c: i64| AffineHyperplane { alpha, c: rat(c), source: 0, shift: 0 };
    let l = enumerate_faces(&[h(vec![1, 0], 0), h(vec![0, 1], 0)], None).unwrap();
    let dims: Vec<usize> = l.faces().iter().map(|f| f.dim).collect();
    assert_eq!(dims, vec![0, 1, 1, 1, 1, 2, 2, 2, 2]);
    assert_eq!(l.faces().iter().filter(|f| f.complete).count(), 1);
}

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};

use toric_core::arrangement::{AffineHyperplane, ArrangementSpec};
use toric_core::catalog;
use toric_core::category::{euler_characteristic, nerve_chains, nerve_homology};
use toric_core::cells::enumerate_faces;
use toric_core::exact::{floor_i64, rat, ratio};
use toric_core::pi1::{abelianize, kill_generators};
use toric_core::salvetti::{finite_salvetti_category, finite_salvetti_poset, lifted_chain_orbits};
use toric_core::{ChainComplex, GroupPresentation, HomologyGroup, Model, Rational, Space};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn model(spec: &ArrangementSpec, k: u32) -> Model {
    Model::build(spec, k).expect("model builds")
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn free(b: usize) -> HomologyGroup {
    HomologyGroup { betti: b, torsion: vec![] }
}

fn betti(h: &[HomologyGroup]) -> Vec<usize> {
    h.iter().map(|g| g.betti).collect()
}

fn torus_recovery() -> Outcome {
    for (name, spec) in catalog::all() {
        let n = spec.rank();
        let h = model(&spec, 1).homology(Space::Face, None).map_err(|e| e.to_string())?;
        for (k, g) in h.iter().enumerate() {
            let want = if k <= n { binomial(n, k) } else { 0 };
            ensure(*g == free(want), || format!("{name}: H_{k} = {g}, expected Z^{want}"))?;
        }
        ensure(h.len() > n, || format!("{name}: homology stops below degree {n}"))?;
    }
    Ok(())
}

fn circle_complements() -> Outcome {
    for k in 1..=3usize {
        let m = model(&catalog::points_on_circle(k), 1);
        let h = m.homology(Space::Salvetti, None).map_err(|e| e.to_string())?;
        ensure(h.len() >= 2 && h[0] == free(1) && h[1] == free(k + 1), || format!("{k} points: homology {h:?}"))?;
        ensure(h[2..].iter().all(|g| *g == free(0)), || format!("{k} points: higher homology {h:?}"))?;
        let c = m.salvetti().category();
        let chi = euler_characteristic(&nerve_chains(c, c.max_grade_span()));
        ensure(chi == -(k as i64), || format!("{k} points: χ = {chi}"))?;
        let p = m.presentation().map_err(|e| e.to_string())?;
        ensure(p.generators.len() == k + 1 && p.relators.is_empty(), || {
            format!("{k} points: {} generators, {} relators", p.generators.len(), p.relators.len())
        })?;
    }
    Ok(())
}

/// Face orbits of a rank-2 arrangement with invertible character matrix, by
/// sampling the grid `(1/d) Z^2 ∩ [0,1)^2`. The lifted face through `p` is
/// determined by the floors of `<chi_j, p> - q_j` and which of them are
/// integral; translating `p` by `u` adds `A u` to the floors, so
/// `frac(A^{-1} floors)` together with the integrality pattern names the
/// orbit. Returns, per dimension, the orbits found and for each the number
/// of lifted chambers around it (sampled on a small circle).
fn sampled_faces(spec: &ArrangementSpec, d: i64) -> Vec<BTreeMap<Vec<Rational>, usize>> {
    let hs = spec.hypersurfaces();
    let a: Vec<Vec<i64>> = hs.iter().map(|h| h.character.exponents().to_vec()).collect();
    assert!(a.len() == 2, "oracle handles two hypersurfaces");
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    assert!(det != 0);
    let q: Vec<Rational> = hs.iter().map(|h| h.angle.value().clone()).collect();
    let vals = |p: &[Rational]| -> Vec<Rational> {
        (0..2).map(|j| rat(a[j][0]) * &p[0] + rat(a[j][1]) * &p[1] - &q[j]).collect()
    };
    let floors = |p: &[Rational]| -> Vec<i64> { vals(p).iter().map(floor_i64).collect() };
    let key = |p: &[Rational]| -> (Vec<Rational>, usize) {
        let v = vals(p);
        let f: Vec<i64> = v.iter().map(floor_i64).collect();
        let inv = [
            ratio(a[1][1] * f[0] - a[0][1] * f[1], det),
            ratio(-a[1][0] * f[0] + a[0][0] * f[1], det),
        ];
        let mut k: Vec<Rational> = inv.iter().map(|x| x - rat(floor_i64(x))).collect();
        let ints: Vec<bool> = v.iter().map(|x| x.is_integer()).collect();
        k.extend(ints.iter().map(|&b| rat(i64::from(b))));
        (k, 2 - ints.iter().filter(|&&b| b).count())
    };
    let mut out = vec![BTreeMap::new(); 3];
    let dirs: Vec<(i64, i64)> = (0..32).map(|t| [(1, 0), (1, 1), (0, 1), (-1, 1)][t % 4]).collect();
    for i in 0..d {
        for j in 0..d {
            let p = vec![ratio(i, d), ratio(j, d)];
            let (k, dim) = key(&p);
            if out[dim].contains_key(&k) {
                continue;
            }
            let eps = ratio(1, 1000 * d);
            let mut around = BTreeSet::new();
            for (t, &(x, y)) in dirs.iter().enumerate() {
                let s = if t < 16 { rat(1) } else { rat(-1) };
                let e = &eps * ratio(1 + (t % 16) as i64, 17);
                let r = vec![&p[0] + &s * &e * rat(x), &p[1] + &s * &e * rat(y)];
                if vals(&r).iter().all(|v| !v.is_integer()) {
                    around.insert(floors(&r));
                }
            }
            out[dim].insert(k, around.len());
        }
    }
    out
}

fn fig1_census() -> Outcome {
    let spec = catalog::crossing_circles();
    let m = model(&spec, 1);
    let oracle = sampled_faces(&spec, 24);
    let faces: Vec<usize> = oracle.iter().map(|o| o.len()).collect();
    let objects: Vec<usize> = (0..3).map(|c| oracle[2 - c].values().sum()).collect();
    ensure(faces == vec![2, 4, 2], || format!("sampled face census {faces:?}"))?;
    ensure(objects == vec![2, 8, 8], || format!("sampled object census {objects:?}"))?;
    ensure(m.face_census() == faces, || format!("face census {:?}", m.face_census()))?;
    let cw = m.salvetti_census();
    ensure(cw.by_codim == objects, || format!("Salvetti census {:?}", cw.by_codim))?;
    let c = m.salvetti().category();
    let chi = euler_characteristic(&nerve_chains(c, c.max_grade_span()));
    ensure(cw.euler_characteristic == 2 && chi == 2, || format!("χ_CW = {}, χ(nerve) = {chi}", cw.euler_characteristic))
}

fn cube_betti() -> Outcome {
    let m = model(&catalog::coordinate_cube(), 1);
    let h = m.homology(Space::Salvetti, None).map_err(|e| e.to_string())?;
    let b = betti(&h);
    ensure(b.len() >= 4 && b[..4] == [1, 6, 12, 8] && b[4..].iter().all(|&x| x == 0), || format!("Betti {b:?}"))?;
    ensure(h.iter().all(|g| g.torsion.is_empty()), || format!("torsion in {h:?}"))?;
    let chi: i64 = b.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    ensure(chi == -1, || format!("χ = {chi}"))
}

fn pi1_h1() -> Outcome {
    for (name, spec) in catalog::all() {
        let m = model(&spec, 1);
        let h = m.homology(Space::Salvetti, Some(1)).map_err(|e| e.to_string())?;
        let p = m.presentation().map_err(|e| e.to_string())?;
        let ab = abelianize(&p);
        ensure(ab == h[1], || format!("{name}: abelianization {ab} vs H_1 {}", h[1]))?;
        let killed = abelianize(&kill_generators(&p, |g| g.starts_with('g')));
        ensure(killed == free(spec.rank()), || format!("{name}: killing γ leaves {killed}"))?;
    }
    Ok(())
}

fn thickness() -> Outcome {
    let cases = [
        ("grid", catalog::grid(), true),
        ("one-point", catalog::points_on_circle(1), false),
        ("crossing-circles", catalog::crossing_circles(), false),
    ];
    for (name, spec, want) in cases {
        let m = model(&spec, 1);
        ensure(m.is_thick() == want, || format!("{name}: thick = {}", m.is_thick()))?;
        ensure(m.salvetti().is_poset() == want, || format!("{name}: ζ poset = {}", m.salvetti().is_poset()))?;
    }
    Ok(())
}

fn commutation() -> Outcome {
    for (name, spec) in catalog::all() {
        let n = spec.rank();
        let m = model(&spec, 1);
        let ours = nerve_chains(m.salvetti().category(), n).counts();
        let lifted = lifted_chain_orbits(m.lifted(), n).map_err(|e| e.to_string())?;
        let ours: Vec<usize> = (0..=n).map(|k| ours.get(k).copied().unwrap_or(0)).collect();
        ensure(ours == lifted, || format!("{name}: nerve {ours:?} vs lifted orbits {lifted:?}"))?;
    }
    Ok(())
}

fn plane(alpha: Vec<i64>, c: i64) -> AffineHyperplane {
    AffineHyperplane { alpha, c: rat(c), source: 0, shift: 0 }
}

fn affine_examples() -> Vec<(&'static str, Vec<AffineHyperplane>, Vec<usize>)> {
    vec![
        ("point in R^1", vec![plane(vec![1], 0)], vec![1, 1]),
        ("two lines in R^2", vec![plane(vec![1, 0], 0), plane(vec![0, 1], 0)], vec![1, 2, 1]),
    ]
}

fn affine_sanity() -> Outcome {
    for (name, planes, want) in affine_examples() {
        let l = enumerate_faces(&planes, None).map_err(|e| e.to_string())?;
        let c = finite_salvetti_category(&finite_salvetti_poset(&l)).map_err(|e| e.to_string())?;
        let h = nerve_homology(&c).map_err(|e| e.to_string())?;
        let b = betti(&h);
        ensure(b.len() >= want.len() && b[..want.len()] == want[..], || format!("{name}: Betti {b:?}"))?;
        ensure(h.iter().all(|g| g.torsion.is_empty()) && b[want.len()..].iter().all(|&x| x == 0), || {
            format!("{name}: homology {h:?}")
        })?;
    }
    Ok(())
}

/// Generator names of `p` rewritten through `rename`, relators as a sorted
/// list of words over the renamed generators.
fn relabelled(p: &GroupPresentation, rename: &HashMap<String, String>) -> Vec<Vec<(String, i32)>> {
    let mut rs: Vec<Vec<(String, i32)>> = p
        .relators
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| {
                    let g = &p.generators[x.unsigned_abs() as usize - 1];
                    (rename.get(g).cloned().unwrap_or_else(|| g.clone()), x.signum())
                })
                .collect()
        })
        .collect();
    rs.sort();
    rs
}

/// Names each `g<orbit>` by the dimension and barycenter of its canonical
/// representative, which do not depend on the window.
fn orbit_names(m: &Model) -> HashMap<String, String> {
    let mut out = HashMap::new();
    for (o, orbit) in m.faces().orbits().iter().enumerate() {
        let b: Vec<String> = orbit.barycenter.iter().map(|x| x.to_string()).collect();
        out.insert(format!("g{o}"), format!("{}@{}", orbit.dim, b.join(",")));
    }
    out
}

fn window_independence() -> Outcome {
    for (name, spec) in catalog::all() {
        let (a, b) = (model(&spec, 1), model(&spec, 2));
        ensure(a.face_census() == b.face_census(), || format!("{name}: face census"))?;
        ensure(a.salvetti_census() == b.salvetti_census(), || format!("{name}: Salvetti census"))?;
        ensure(a.is_thick() == b.is_thick(), || format!("{name}: thickness"))?;
        let (la, lb) = (a.layers().map_err(|e| e.to_string())?, b.layers().map_err(|e| e.to_string())?);
        ensure(la.census() == lb.census(), || format!("{name}: layer census"))?;
        for space in [Space::Face, Space::Salvetti] {
            let ha = a.homology(space, None).map_err(|e| e.to_string())?;
            let hb = b.homology(space, None).map_err(|e| e.to_string())?;
            ensure(ha == hb, || format!("{name}: homology of {space:?}"))?;
        }
        let (pa, pb) = (a.presentation().map_err(|e| e.to_string())?, b.presentation().map_err(|e| e.to_string())?);
        let (ra, rb) = (relabelled(&pa, &orbit_names(&a)), relabelled(&pb, &orbit_names(&b)));
        ensure(pa.generators.len() == pb.generators.len() && ra == rb, || format!("{name}: presentations differ"))?;
    }
    Ok(())
}

fn sound(cc: &ChainComplex, what: &str) -> Outcome {
    ensure(cc.is_complex(), || format!("{what}: ∂∂ ≠ 0"))?;
    for k in 0..=cc.top_dim() {
        if let Some(m) = cc.boundary(k) {
            ensure(m.smith().divisibility_holds(), || format!("{what}: invariant factors of ∂_{k}"))?;
        }
    }
    Ok(())
}

fn boundary_soundness() -> Outcome {
    for (name, spec) in catalog::all() {
        for k in [1, 2] {
            let m = model(&spec, k);
            for space in [Space::Face, Space::Salvetti] {
                sound(&m.chain_complex(space, None).map_err(|e| e.to_string())?, &format!("{name} {space:?} K={k}"))?;
            }
        }
    }
    for (name, planes, _) in affine_examples() {
        let l = enumerate_faces(&planes, None).map_err(|e| e.to_string())?;
        let c = finite_salvetti_category(&finite_salvetti_poset(&l)).map_err(|e| e.to_string())?;
        let nerve = nerve_chains(&c, c.max_grade_span());
        let cc = toric_core::category::boundary_matrices(&c, &nerve).map_err(|e| e.to_string())?;
        sound(&cc, name)?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 torus recovery", torus_recovery),
        ("2 n=1 complements", circle_complements),
        ("3 Fig-1 censuses and Euler characteristic", fig1_census),
        ("4 n=3 product Betti numbers", cube_betti),
        ("5 π1/H1 consistency", pi1_h1),
        ("6 thickness", thickness),
        ("7 quotient/nerve commutation", commutation),
        ("8 affine sanity", affine_sanity),
        ("9 window independence", window_independence),
        ("10 boundary soundness", boundary_soundness),
    ];
    let mut failed = Vec::new();
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(()) => println!("PASS criterion {name}"),
            Err(msg) => {
                println!("FAIL criterion {name}: {msg}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

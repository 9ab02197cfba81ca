use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use num_traits::Zero;

use crate::arrangement::hyperplane_key;
use crate::cells::{opposite_chamber, FaceCategory, LiftedFacePoset};
use crate::error::{Error, Result};
use crate::exact::{dot_int, floor_i64, rat, ratio, sign, Rational};

/// A face of the infinite lift, written as `shift + base` with `base` the
/// canonical lifted face of its orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicFace {
    pub base: usize,
    pub shift: Vec<i64>,
}

impl PeriodicFace {
    pub fn translated(&self, v: &[i64]) -> PeriodicFace {
        PeriodicFace { base: self.base, shift: self.shift.iter().zip(v).map(|(a, b)| a + b).collect() }
    }
}

/// Directed chamber graph of the window: one edge `C -> op(C, F)` for every
/// codimension-one face `F` and chamber `C >= F`, as `(C, op(C, F), F)`.
pub fn chamber_graph(lifted: &LiftedFacePoset) -> Vec<(usize, usize, usize)> {
    let n = lifted.dim();
    let mut edges = Vec::new();
    for f in lifted.faces().iter().filter(|f| f.dim + 1 == n) {
        for &c in lifted.above(f.id) {
            if let Ok(o) = opposite_chamber(lifted, c, f.id) {
                edges.push((c, o, f.id));
            }
        }
    }
    edges
}

/// Σ: repeatedly scans the sequence from right to left, deleting each
/// element whose key occurs an odd number of times among the surviving
/// elements after it, until a scan deletes nothing. Returns the indices of
/// the survivors.
pub fn sigma<K: Eq + Hash + Clone>(keys: &[K]) -> Vec<usize> {
    let mut alive: Vec<usize> = (0..keys.len()).collect();
    loop {
        let mut later: HashMap<K, usize> = HashMap::new();
        let mut kept = Vec::with_capacity(alive.len());
        for &i in alive.iter().rev() {
            let c = later.get(&keys[i]).copied().unwrap_or(0);
            if c % 2 == 1 {
                continue;
            }
            *later.entry(keys[i].clone()).or_default() += 1;
            kept.push(i);
        }
        kept.reverse();
        if kept.len() == alive.len() {
            return kept;
        }
        alive = kept;
    }
}

/// Base point, base chamber and the crossing sequences of the unit segments
/// `x0 -> x0 + e_i`.
#[derive(Clone, Debug)]
pub struct Pi1Context<'a> {
    lifted: &'a LiftedFacePoset,
    faces: &'a FaceCategory,
    x0: Vec<Rational>,
    c0: PeriodicFace,
    omegas: Vec<Vec<PeriodicFace>>,
}

const PRIMES: [i64; 16] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61];

impl<'a> Pi1Context<'a> {
    /// Chooses `x0 = (1/p, 1/p^2, ...)` for the first prime `p` making every
    /// segment `x0 -> x0 + e_i` generic (off the hyperplanes at its ends and
    /// crossing one hyperplane at a time).
    pub fn new(lifted: &'a LiftedFacePoset, faces: &'a FaceCategory) -> Result<Self> {
        let n = lifted.dim();
        for p in PRIMES {
            let x0: Vec<Rational> = (0..n).map(|i| ratio(1, p.pow(i as u32 + 1))).collect();
            let mut ctx = Pi1Context { lifted, faces, x0, c0: PeriodicFace { base: 0, shift: vec![] }, omegas: vec![] };
            if let Some(omegas) = ctx.crossings()? {
                ctx.c0 = ctx.face_at_point(&ctx.x0)?;
                ctx.omegas = omegas;
                return Ok(ctx);
            }
        }
        Err(Error::Internal("no generic base point found".into()))
    }

    pub fn lifted(&self) -> &LiftedFacePoset {
        self.lifted
    }

    pub fn faces(&self) -> &FaceCategory {
        self.faces
    }

    pub fn x0(&self) -> &[Rational] {
        &self.x0
    }

    pub fn c0(&self) -> &PeriodicFace {
        &self.c0
    }

    /// Faces crossed by `x0 -> x0 + e_i`, in order.
    pub fn omega(&self, i: usize) -> &[PeriodicFace] {
        &self.omegas[i]
    }

    /// Crossing sequences, or `None` if `x0` is not generic.
    fn crossings(&self) -> Result<Option<Vec<Vec<PeriodicFace>>>> {
        let planes = self.lifted.planes();
        for h in planes {
            if h.side(&self.x0).fract().is_zero() {
                return Ok(None);
            }
        }
        // The periodic families: one per distinct (normal, offset mod 1).
        let families: BTreeSet<(Vec<i64>, Rational)> = planes
            .iter()
            .map(|h| {
                let (a, c) = hyperplane_key(&h.alpha, &h.c);
                let f = c.fract();
                let f = if f < Rational::zero() { f + rat(1) } else { f };
                (a, f)
            })
            .collect();
        let n = self.lifted.dim();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut hits: Vec<(Rational, (Vec<i64>, Rational))> = Vec::new();
            for (a, q) in &families {
                if a[i] == 0 {
                    continue;
                }
                // <a, x0 + t e_i> = q + m  with  0 < t < 1.
                let base = dot_int(a, &self.x0);
                let ai = rat(a[i]);
                let (lo, hi) = if a[i] > 0 { (base.clone(), &base + &ai) } else { (&base + &ai, base.clone()) };
                let mut m = floor_i64(&(lo - q)) - 1;
                while &(q + rat(m)) < &hi {
                    let c = q + rat(m);
                    let t = (&c - &base) / &ai;
                    if t > Rational::zero() && t < rat(1) {
                        hits.push((t, (a.clone(), c)));
                    }
                    m += 1;
                }
            }
            hits.sort();
            if hits.windows(2).any(|w| w[0].0 == w[1].0) {
                return Ok(None);
            }
            let mut seq = Vec::with_capacity(hits.len());
            for (t, _) in hits {
                let mut p = self.x0.clone();
                p[i] += t;
                let f = self.face_at_point(&p)?;
                if self.lifted.face(f.base).dim + 1 != n {
                    return Ok(None);
                }
                seq.push(f);
            }
            out.push(seq);
        }
        Ok(Some(out))
    }

    /// Periodic face of a complete lifted face.
    pub fn periodic(&self, f: usize) -> Result<PeriodicFace> {
        let base = self
            .lifted
            .canonical_of(f)
            .ok_or_else(|| Error::WindowTooSmall(format!("face {f} has no canonical translate")))?;
        Ok(PeriodicFace { base, shift: self.lifted.shift_of(f) })
    }

    /// Face of the lift containing the point `p` (anywhere in `R^n`).
    pub fn face_at_point(&self, p: &[Rational]) -> Result<PeriodicFace> {
        let w: Vec<i64> = p.iter().map(floor_i64).collect();
        let q: Vec<Rational> = p.iter().zip(&w).map(|(x, k)| x - rat(*k)).collect();
        let f = self
            .lifted
            .face_containing(&q)
            .ok_or_else(|| Error::WindowTooSmall("point of the unit cube in no known face".into()))?;
        Ok(self.periodic(f)?.translated(&w))
    }

    pub fn barycenter(&self, f: &PeriodicFace) -> Vec<Rational> {
        self.lifted.face(f.base).barycenter.iter().zip(&f.shift).map(|(x, u)| x + rat(*u)).collect()
    }

    pub fn dim(&self, f: &PeriodicFace) -> usize {
        self.lifted.face(f.base).dim
    }

    /// Normalised equation of the hyperplane carrying a codimension-one face.
    pub fn hyperplane(&self, f: &PeriodicFace) -> Result<(Vec<i64>, Rational)> {
        let h = &self.lifted.planes()[self.lifted.supporting_plane(f.base)?];
        let c = &h.c + rat(h.alpha.iter().zip(&f.shift).map(|(a, u)| a * u).sum::<i64>());
        Ok(hyperplane_key(&h.alpha, &c))
    }

    /// Orbit index (in the face category) of a periodic face.
    pub fn orbit(&self, f: &PeriodicFace) -> usize {
        self.faces.orbit_of_canonical(f.base).expect("base is canonical")
    }

    /// Codimension-one faces in the boundary of a chamber.
    pub fn walls(&self, c: &PeriodicFace) -> Result<Vec<PeriodicFace>> {
        let n = self.lifted.dim();
        let mut out = Vec::new();
        for &f in self.lifted.below(c.base) {
            if self.lifted.face(f).dim + 1 == n {
                out.push(self.periodic(f)?.translated(&c.shift));
            }
        }
        out.sort();
        Ok(out)
    }

    /// The chamber opposite to `c` across the face `f <= c`.
    pub fn opposite(&self, c: &PeriodicFace, f: &PeriodicFace) -> Result<PeriodicFace> {
        let rel: Vec<i64> = c.shift.iter().zip(&f.shift).map(|(a, b)| a - b).collect();
        let local = self
            .lifted
            .translate(c.base, &rel)
            .ok_or_else(|| Error::WindowTooSmall(format!("chamber near face {} outside window", f.base)))?;
        let o = opposite_chamber(self.lifted, local, f.base)?;
        Ok(self.periodic(o)?.translated(&f.shift))
    }

    /// The chamber at `f` on the same side as `c` of every hyperplane
    /// through `f`.
    pub fn chamber_fiber(&self, c: &PeriodicFace, f: &PeriodicFace) -> Result<PeriodicFace> {
        let point: Vec<Rational> = self
            .barycenter(c)
            .iter()
            .zip(&f.shift)
            .map(|(x, u)| x - rat(*u))
            .collect();
        let zero = self.lifted.zero_set(f.base);
        let want: Vec<i8> = zero.iter().map(|&h| sign(&self.lifted.planes()[h].side(&point))).collect();
        let star = std::iter::once(f.base).chain(self.lifted.above(f.base).iter().copied());
        for g in star.filter(|&g| self.lifted.is_chamber(g)) {
            let s = &self.lifted.face(g).sign;
            if zero.iter().zip(&want).all(|(&h, &v)| s[h] == v) {
                return Ok(self.periodic(g)?.translated(&f.shift));
            }
        }
        Err(Error::Internal(format!("no chamber at face {} matches the requested side", f.base)))
    }

    /// A positive minimal path: crosses, one at a time, a wall of the current
    /// chamber separating it from the target (the smallest such wall), until
    /// the target is reached. Each separating hyperplane is crossed once.
    pub fn positive_minimal_path(&self, from: &PeriodicFace, to: &PeriodicFace) -> Result<Vec<PeriodicFace>> {
        let target = self.barycenter(to);
        let mut cur = from.clone();
        let mut path = Vec::new();
        while cur != *to {
            let here = self.barycenter(&cur);
            let mut next = None;
            for w in self.walls(&cur)? {
                let (a, c) = self.hyperplane(&w)?;
                if sign(&(dot_int(&a, &here) - &c)) != sign(&(dot_int(&a, &target) - &c)) {
                    next = Some(w);
                    break;
                }
            }
            let w = next.ok_or_else(|| Error::Internal("no separating wall between distinct chambers".into()))?;
            cur = self.opposite(&cur, &w)?;
            path.push(w);
            if path.len() > 100_000 {
                return Err(Error::Internal("positive path does not terminate".into()));
            }
        }
        Ok(path)
    }

    /// Side of the hyperplane `(a, c)` containing the chamber `c`.
    pub fn side(&self, plane: &(Vec<i64>, Rational), c: &PeriodicFace) -> i8 {
        sign(&(dot_int(&plane.0, &self.barycenter(c)) - &plane.1))
    }

    /// Like [`Self::positive_minimal_path`], also returning the chamber
    /// reached after each crossing.
    pub fn positive_minimal_walk(
        &self,
        from: &PeriodicFace,
        to: &PeriodicFace,
    ) -> Result<Vec<(PeriodicFace, PeriodicFace)>> {
        let mut cur = from.clone();
        let mut walk = Vec::new();
        for w in self.positive_minimal_path(from, to)? {
            cur = self.opposite(&cur, &w)?;
            walk.push((w, cur.clone()));
        }
        Ok(walk)
    }

    /// `ω_u`: the crossings of `x0 -> x0 + u` travelled along `e_1` first,
    /// then `e_2`, and so on, one unit segment at a time.
    pub fn omega_path(&self, u: &[i64]) -> Result<Vec<PeriodicFace>> {
        if u.iter().any(|&k| k < 0) {
            return Err(Error::Argument(format!("ω_u needs a nonnegative u, got {u:?}")));
        }
        let n = self.lifted.dim();
        let mut offset = vec![0i64; n];
        let mut path = Vec::new();
        for i in 0..n {
            for _ in 0..u[i] {
                path.extend(self.omegas[i].iter().map(|f| f.translated(&offset)));
                offset[i] += 1;
            }
        }
        Ok(path)
    }
}

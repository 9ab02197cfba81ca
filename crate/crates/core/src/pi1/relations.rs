use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::group::{free_reduce, inverse, GroupPresentation, Word};
use super::paths::{PeriodicFace, Pi1Context};
use crate::cells::{FaceCategory, LiftedFacePoset};
use crate::error::{Error, Result};
use crate::exact::{dot_int, Rational};

/// Bound on the number of faces whose `β` one expansion may involve.
const MAX_FACES: usize = 4096;

/// Codimension-one faces around the codimension-two face `g`, in angular
/// order in a plane transverse to `g`, starting from the smallest id. The
/// result has even length `2k` and entry `i + k` lies on the same
/// hyperplane as entry `i`.
pub fn h_of_g(lifted: &LiftedFacePoset, g: usize) -> Result<Vec<usize>> {
    let n = lifted.dim();
    if lifted.face(g).dim + 2 != n {
        return Err(Error::Argument(format!("face {g} is not of codimension two")));
    }
    let planes = lifted.planes();
    let zero = lifted.zero_set(g);
    let n1 = &planes[zero[0]].alpha;
    let n2 = zero
        .iter()
        .map(|&h| &planes[h].alpha)
        .find(|a| (0..n).any(|i| (0..n).any(|j| n1[i] * a[j] != n1[j] * a[i])))
        .ok_or_else(|| Error::Internal(format!("face {g} lies on parallel hyperplanes only")))?;
    let centre = &lifted.face(g).barycenter;
    let coords = |f: usize| -> (Rational, Rational) {
        let d: Vec<Rational> = lifted.face(f).barycenter.iter().zip(centre).map(|(x, y)| x - y).collect();
        (dot_int(n1, &d), dot_int(n2, &d))
    };
    let half = |(a, b): &(Rational, Rational)| -> u8 {
        if b.is_positive() || (b.is_zero() && a.is_positive()) {
            0
        } else {
            1
        }
    };
    let mut around: Vec<(usize, (Rational, Rational))> = lifted
        .above(g)
        .iter()
        .copied()
        .filter(|&f| lifted.face(f).dim + 1 == n)
        .map(|f| (f, coords(f)))
        .collect();
    around.sort_by(|(_, p), (_, q)| {
        half(p).cmp(&half(q)).then_with(|| {
            let cross = &p.0 * &q.1 - &p.1 * &q.0;
            if cross.is_positive() {
                Ordering::Less
            } else if cross.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    let mut ids: Vec<usize> = around.into_iter().map(|(f, _)| f).collect();
    let start = (0..ids.len()).min_by_key(|&i| ids[i]).unwrap_or(0);
    ids.rotate_left(start);
    let k = ids.len() / 2;
    if ids.len() < 4 || ids.len() % 2 == 1 || (0..k).any(|i| lifted.zero_set(ids[i]) != lifted.zero_set(ids[i + k])) {
        return Err(Error::Internal(format!("faces around {g} do not come in opposite pairs")));
    }
    Ok(ids)
}

/// A crossing of a path in the chamber graph of the lift: the wall and the
/// chamber reached.
type Walk = Vec<(PeriodicFace, PeriodicFace)>;

/// One way of writing `β_F` through a known `β_H` of the same orbit: both
/// are carried to `M = F + d = H + up` (`d, up >= 0`) along unit legs, so
/// `β_F = W^{-1} β_H W` with `W = τ_up^{-1} X_1 X_2^{-1} τ_d`, where `X_1`
/// and `X_2` are the words of the two paths.
#[derive(Clone, Debug)]
struct Route {
    base: PeriodicFace,
    up: Vec<usize>,
    down: Vec<usize>,
    needs: Vec<PeriodicFace>,
}

/// Assembles the presentation: generators `t1..tn` and one `g<orbit>` per
/// codimension-one orbit; relators are the commutators of the `t`s and, for
/// every codimension-two orbit and every chamber around it, the equality of
/// the two ways round.
///
/// A positive path `ν` from the base chamber `C0` differs from a positive
/// minimal path to its end by the product, over the crossings of `ν` that
/// move towards `C0` and taken last first, of the loops `L(ν_{<F}, F)`. The
/// paths used are unit legs `ω` followed by a translate `v.μ` of a path `μ`
/// from `C0`, so each of these loops projects to `τ_v P β_H P^{-1} τ_v^{-1}`
/// with `H = F - v` near `C0` and `P` the word of the prefix of `μ`. The
/// loops `β_H` are written in the generators through `γ^δ_H`.
pub struct PresentationBuilder<'a> {
    ctx: Pi1Context<'a>,
    generators: RefCell<Vec<String>>,
    gen_of_orbit: HashMap<usize, i32>,
    /// Per orbit, the lift whose `β` is `g<orbit>`.
    reference: HashMap<usize, PeriodicFace>,
    /// Faces crossed by the unit segments, with the segment prefix before
    /// the first crossing.
    crossed: HashMap<PeriodicFace, Walk>,
    by_orbit: HashMap<usize, Vec<PeriodicFace>>,
    segments: Vec<Walk>,
    betas: RefCell<HashMap<PeriodicFace, Word>>,
    /// Relators tying the extra meridians to the rest.
    extra: RefCell<Vec<Word>>,
}

impl<'a> PresentationBuilder<'a> {
    pub fn new(lifted: &'a LiftedFacePoset, faces: &'a FaceCategory) -> Result<Self> {
        let ctx = Pi1Context::new(lifted, faces)?;
        let n = lifted.dim();
        let mut generators: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
        let mut gen_of_orbit = HashMap::new();
        for (o, orbit) in faces.orbits().iter().enumerate() {
            if orbit.dim + 1 == n {
                generators.push(format!("g{o}"));
                gen_of_orbit.insert(o, generators.len() as i32);
            }
        }
        // The meridian of an orbit is taken at its first crossing by a unit
        // segment from `x0`, or at the canonical face if none crosses it.
        let mut reference = HashMap::new();
        let mut crossed = HashMap::new();
        let mut by_orbit: HashMap<usize, Vec<PeriodicFace>> = HashMap::new();
        let mut segments = Vec::with_capacity(n);
        for i in 0..n {
            let mut cur = ctx.c0().clone();
            let mut walk = Vec::new();
            for f in ctx.omega(i) {
                let o = ctx.orbit(f);
                reference.entry(o).or_insert_with(|| f.clone());
                if !crossed.contains_key(f) {
                    crossed.insert(f.clone(), walk.clone());
                    by_orbit.entry(o).or_default().push(f.clone());
                }
                cur = ctx.opposite(&cur, f)?;
                walk.push((f.clone(), cur.clone()));
            }
            segments.push(walk);
        }
        Ok(PresentationBuilder {
            ctx,
            generators: RefCell::new(generators),
            gen_of_orbit,
            reference,
            crossed,
            by_orbit,
            segments,
            betas: RefCell::new(HashMap::new()),
            extra: RefCell::new(Vec::new()),
        })
    }

    pub fn context(&self) -> &Pi1Context<'a> {
        &self.ctx
    }

    /// `τ_u = t1^{u1} ... tn^{un}`.
    pub fn tau(&self, u: &[i64]) -> Word {
        let mut w = Vec::new();
        for (i, &k) in u.iter().enumerate() {
            let g = i as i32 + 1;
            for _ in 0..k.abs() {
                w.push(if k > 0 { g } else { -g });
            }
        }
        w
    }

    /// The lift of the orbit of `f` whose `β` is the generator `g<orbit>`.
    pub fn reference(&self, f: &PeriodicFace) -> PeriodicFace {
        match self.reference.get(&self.ctx.orbit(f)) {
            Some(r) => r.clone(),
            None => PeriodicFace { base: f.base, shift: vec![0; f.shift.len()] },
        }
    }

    fn towards_base(&self, face: &PeriodicFace, chamber: &PeriodicFace) -> Result<bool> {
        let plane = self.ctx.hyperplane(face)?;
        Ok(self.ctx.side(&plane, chamber) == self.ctx.side(&plane, self.ctx.c0()))
    }

    /// A positive minimal walk from `C0` to the chamber at `f` on the side
    /// of `C0`: along a unit segment when one crosses `f`.
    fn approach(&self, f: &PeriodicFace) -> Result<Walk> {
        match self.crossed.get(f) {
            Some(w) => Ok(w.clone()),
            None => self.ctx.positive_minimal_walk(self.ctx.c0(), &self.ctx.chamber_fiber(self.ctx.c0(), f)?),
        }
    }

    /// Word of the loop `ν` followed by a positive minimal path back to
    /// `C0`, for `ν` the unit legs along `legs` (from `C0`) and then the
    /// translate of `tail` (a walk from `C0`) to where the legs end. `beta`
    /// supplies the words of the `β_H` needed.
    fn read_with(
        &self,
        legs: &[usize],
        tail: &[(PeriodicFace, PeriodicFace)],
        beta: &mut dyn FnMut(&PeriodicFace) -> Result<Word>,
    ) -> Result<Word> {
        let n = self.ctx.lifted().dim();
        let mut offset = vec![0i64; n];
        let mut lattice: Word = Vec::new();
        let mut terms: Vec<Word> = Vec::new();
        let pieces = legs.iter().map(|&i| Some(i)).chain(std::iter::once(None));
        for leg in pieces {
            let walk = match leg {
                Some(i) => &self.segments[i],
                None => tail,
            };
            let mut prefix: Word = Vec::new();
            for (h, c) in walk {
                if self.towards_base(&h.translated(&offset), &c.translated(&offset))? {
                    let b = beta(h)?;
                    terms.push([lattice.clone(), prefix.clone(), b, inverse(&prefix), inverse(&lattice)].concat());
                }
                if leg.is_none() && self.towards_base(h, c)? {
                    prefix.extend(beta(h)?);
                }
            }
            if let Some(i) = leg {
                offset[i] += 1;
                lattice.push(i as i32 + 1);
            }
        }
        terms.reverse();
        Ok(free_reduce(&terms.concat()))
    }

    fn read(&self, legs: &[usize], tail: &[(PeriodicFace, PeriodicFace)]) -> Result<Word> {
        self.read_with(legs, tail, &mut |h| self.gamma_delta(h))
    }

    /// Faces whose `β` a reading needs.
    fn needs(&self, legs: &[usize], tail: &[(PeriodicFace, PeriodicFace)]) -> Result<Vec<PeriodicFace>> {
        let mut out = Vec::new();
        self.read_with(legs, tail, &mut |h| {
            out.push(h.clone());
            Ok(Vec::new())
        })?;
        Ok(out)
    }

    /// Unit legs along `v >= 0`, in the axis order `order`.
    fn legs(v: &[i64], order: &[usize]) -> Vec<usize> {
        order.iter().flat_map(|&i| std::iter::repeat(i).take(v[i].max(0) as usize)).collect()
    }

    /// `δ_F` for `F` at `u_F >= 0` from its reference lift `R`: the word of
    /// `ω_{u_F} (u_F C0 -> (u_F C0)_F)`, so that
    /// `β_F = δ_F^{-1} τ_{u_F} γ τ_{u_F}^{-1} δ_F`.
    pub fn delta_word(&self, f: &PeriodicFace) -> Result<Word> {
        let r = self.reference(f);
        let u: Vec<i64> = f.shift.iter().zip(&r.shift).map(|(a, b)| a - b).collect();
        if u.iter().any(|&x| x < 0) {
            return Err(Error::Argument(format!("face {f:?} lies below its reference lift")));
        }
        self.read(&Self::legs(&u, &(0..u.len()).collect::<Vec<_>>()), &self.approach(&r)?)
    }

    /// Ways of writing `β_F`, simplest first: from the reference lift and
    /// then from the other lifts crossed by the unit segments, through the
    /// least `M` and one step further, with the legs in every axis order.
    fn routes(&self, f: &PeriodicFace) -> Result<Vec<Route>> {
        let n = f.shift.len();
        let r = self.reference(f);
        let mut bases = vec![r.clone()];
        if let Some(others) = self.by_orbit.get(&self.ctx.orbit(f)) {
            bases.extend(others.iter().filter(|h| **h != r).cloned());
        }
        let to_f = self.approach(f)?;
        let mut out = Vec::new();
        for extra in 0..2 {
            for h in bases.iter().filter(|h| *h != f) {
                let to_h = self.approach(h)?;
                let d: Vec<i64> = f.shift.iter().zip(&h.shift).map(|(a, b)| (b - a).max(0) + extra).collect();
                let up: Vec<i64> = (0..n).map(|i| f.shift[i] - h.shift[i] + d[i]).collect();
                let seqs = |v: &[i64]| -> Vec<Vec<usize>> {
                    (0..n).permutations(n).map(|o| Self::legs(v, &o)).unique().collect()
                };
                for legs_up in seqs(&up) {
                    for down in seqs(&d) {
                        let mut needs = self.needs(&legs_up, &to_h)?;
                        needs.extend(self.needs(&down, &to_f)?);
                        needs.push(h.clone());
                        out.push(Route { base: h.clone(), up: legs_up.clone(), down, needs });
                    }
                }
            }
        }
        Ok(out)
    }

    fn follow(&self, f: &PeriodicFace, route: &Route) -> Result<Word> {
        let lattice = |legs: &[usize]| -> Word { legs.iter().map(|&i| i as i32 + 1).collect() };
        let x1 = self.read(&route.up, &self.approach(&route.base)?)?;
        let x2 = self.read(&route.down, &self.approach(f)?)?;
        let w = free_reduce(&[inverse(&lattice(&route.up)), x1, inverse(&x2), lattice(&route.down)].concat());
        let b = self.gamma_delta(&route.base)?;
        Ok(free_reduce(&[inverse(&w), b, w].concat()))
    }

    /// `γ^δ_F`, the image of `β_F` in the generators.
    ///
    /// Every route gives a valid identity but may need `β` of `F` itself or
    /// of faces whose routes need `F`. Routes are listed for `F` and for
    /// every face they need, and faces are then solved as soon as one of
    /// their routes needs only solved faces. When lifts of an orbit are so
    /// entangled that none can be solved, the most needed one becomes a
    /// generator `g<orbit>.<k>` of its own, another meridian of the orbit.
    /// Every route of every face met along the way is then kept as a
    /// relator.
    pub fn gamma_delta(&self, f: &PeriodicFace) -> Result<Word> {
        if let Some(w) = self.betas.borrow().get(f) {
            return Ok(w.clone());
        }
        let mut routes: Vec<(PeriodicFace, Vec<Route>)> = Vec::new();
        let mut seen: HashSet<PeriodicFace> = HashSet::new();
        let mut queue = vec![f.clone()];
        while let Some(x) = queue.pop() {
            if self.betas.borrow().contains_key(&x) || !seen.insert(x.clone()) {
                continue;
            }
            if x == self.reference(&x) {
                let g = self.gen_of_orbit[&self.ctx.orbit(&x)];
                self.betas.borrow_mut().insert(x, vec![g]);
                continue;
            }
            if seen.len() > MAX_FACES {
                return Err(Error::Internal(format!("expanding β of {f:?} involves more than {MAX_FACES} faces")));
            }
            let rs = self.routes(&x)?;
            queue.extend(rs.iter().flat_map(|r| r.needs.iter().cloned()));
            routes.push((x, rs));
        }
        let solved = |h: &PeriodicFace| self.betas.borrow().contains_key(h);
        let mut free: Vec<usize> = Vec::new();
        while !solved(f) {
            let mut progress = false;
            for (x, rs) in &routes {
                if solved(x) {
                    continue;
                }
                if let Some(r) = rs.iter().find(|r| r.needs.iter().all(solved)) {
                    let w = self.follow(x, r)?;
                    self.betas.borrow_mut().insert(x.clone(), w);
                    progress = true;
                }
            }
            if progress {
                continue;
            }
            let mut demand: HashMap<&PeriodicFace, usize> = HashMap::new();
            for (_, rs) in routes.iter().filter(|(x, _)| !solved(x)) {
                for h in rs.iter().flat_map(|r| &r.needs).filter(|h| !solved(h)) {
                    *demand.entry(h).or_default() += 1;
                }
            }
            let pick = routes
                .iter()
                .position(|(x, _)| !solved(x) && demand.get(x) == demand.values().max())
                .ok_or_else(|| Error::Internal(format!("no well-founded expansion of β for face {f:?}")))?;
            let x = &routes[pick].0;
            let o = self.ctx.orbit(x);
            let mut gens = self.generators.borrow_mut();
            let k = gens.iter().filter(|g| g.starts_with(&format!("g{o}."))).count() + 1;
            gens.push(format!("g{o}.{k}"));
            self.betas.borrow_mut().insert(x.clone(), vec![gens.len() as i32]);
            free.push(pick);
        }
        let pinned = if free.is_empty() { &routes[..0] } else { &routes[..] };
        for (x, rs) in pinned {
            let Some(b) = self.betas.borrow().get(x).cloned() else { continue };
            for r in rs.iter().filter(|r| r.needs.iter().all(solved)) {
                let rel = free_reduce(&[inverse(&b), self.follow(x, r)?].concat());
                if !rel.is_empty() {
                    self.extra.borrow_mut().push(rel);
                }
            }
        }
        Ok(self.betas.borrow()[f].clone())
    }

    /// `t_i t_j t_i^{-1} t_j^{-1}` times the inverse word of the loop
    /// `ω_i (e_i + ω_j) (e_j + ω_i)^{-1} ω_j^{-1}`: the two ways to `e_i + e_j`
    /// need not be homotopic in the lift, so the `t`s commute only up to it.
    pub fn commutation(&self, i: usize, j: usize) -> Result<Word> {
        let loop_word = [self.read(&[i, j], &[])?, inverse(&self.read(&[j, i], &[])?)].concat();
        let (a, b) = (i as i32 + 1, j as i32 + 1);
        Ok(free_reduce(&[vec![a, b, -a, -b], inverse(&loop_word)].concat()))
    }

    /// Relators at the codimension-two orbit with canonical face `g`. With
    /// `F_0 .. F_{2k-1}` around it and `C_a` the chamber between `F_a` and
    /// `F_{a+1}`, the two positive minimal paths from `C_a` to its opposite
    /// (through `F_{a+1} .. F_{a+k}` and through `F_a .. F_{a-k+1}`), each
    /// reached from `C0` by the same positive minimal path, give one relator.
    pub fn relations_for_g(&self, g: usize) -> Result<Vec<Word>> {
        self.relations_at(g, &vec![0; self.ctx.lifted().dim()])
    }

    /// The relators around the translate of `g` by `v`.
    pub fn relations_at(&self, g: usize, v: &[i64]) -> Result<Vec<Word>> {
        let lifted = self.ctx.lifted();
        let around = h_of_g(lifted, g)?;
        let len = around.len();
        let k = len / 2;
        let mut chambers = Vec::with_capacity(len);
        for a in 0..len {
            let next = around[(a + 1) % len];
            let c = lifted
                .above(around[a])
                .iter()
                .copied()
                .find(|&c| lifted.is_chamber(c) && lifted.above(next).contains(&c))
                .ok_or_else(|| Error::Internal(format!("no chamber between faces {} and {next}", around[a])))?;
            chambers.push(self.ctx.periodic(c)?.translated(v));
        }
        let faces: Vec<PeriodicFace> =
            around.iter().map(|&f| Ok(self.ctx.periodic(f)?.translated(v))).collect::<Result<_>>()?;
        let mut out = Vec::with_capacity(len);
        for a in 0..len {
            let to = self.ctx.positive_minimal_walk(self.ctx.c0(), &chambers[a])?;
            let mut ccw = to.clone();
            ccw.extend((1..=k).map(|j| (faces[(a + j) % len].clone(), chambers[(a + j) % len].clone())));
            let mut cw = to;
            cw.extend((0..k).map(|j| (faces[(a + len - j) % len].clone(), chambers[(a + len - j - 1) % len].clone())));
            out.push(free_reduce(&[self.read(&[], &ccw)?, inverse(&self.read(&[], &cw)?)].concat()));
        }
        Ok(out)
    }

    pub fn build(&self) -> Result<GroupPresentation> {
        let n = self.ctx.lifted().dim();
        let mut relators = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                relators.push(self.commutation(i, j)?);
            }
        }
        for orbit in self.ctx.faces().orbits() {
            if orbit.dim + 2 == n {
                relators.extend(self.relations_for_g(orbit.representative)?);
            }
        }
        // Extra meridians are pinned down by the relators around translates
        // of the codimension-two orbits, over every shift near the faces
        // expanded so far.
        if self.generators.borrow().len() > self.gen_of_orbit.len() + n {
            let shifts: Vec<Vec<i64>> = self.betas.borrow().keys().map(|f| f.shift.clone()).collect();
            let boxed = (0..n).map(|i| {
                let lo = shifts.iter().map(|s| s[i]).min().unwrap_or(0) - 1;
                let hi = shifts.iter().map(|s| s[i]).max().unwrap_or(0) + 1;
                lo..=hi
            });
            for v in boxed.multi_cartesian_product() {
                for o in self.ctx.faces().orbits().iter().filter(|o| o.dim + 2 == n) {
                    relators.extend(self.relations_at(o.representative, &v)?);
                }
            }
        }
        relators.extend(self.extra.borrow().iter().cloned());
        relators.retain(|r| !r.is_empty());
        Ok(GroupPresentation::new(self.generators.borrow().clone(), relators))
    }
}

/// The presentation of the fundamental group of the complement.
pub fn presentation(lifted: &LiftedFacePoset, faces: &FaceCategory) -> Result<GroupPresentation> {
    PresentationBuilder::new(lifted, faces)?.build()
}

//! The Salvetti poset of an affine arrangement and the toric Salvetti
//! category obtained from the periodic lift.

use std::collections::HashMap;

use crate::category::{quotient, AcyclicCategory, PeriodicPoset};
use crate::cells::{chamber_fiber, FaceCategory, LiftedFacePoset};
use crate::error::{Error, Result};

/// Elements `[F, C]` with `F <= C`, `C` a chamber, graded by the codimension
/// of `F`. `[F1, C1] <= [F2, C2]` iff `F2 <= F1` and `C1` is the chamber at
/// `F1` on the same side as `C2` of every hyperplane through `F1`.
#[derive(Clone, Debug)]
pub struct SalvettiPoset<'a> {
    lifted: &'a LiftedFacePoset,
    elements: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl<'a> SalvettiPoset<'a> {
    fn build(lifted: &'a LiftedFacePoset, keep: impl Fn(usize) -> bool) -> Self {
        let mut elements = Vec::new();
        for f in (0..lifted.len()).filter(|&f| keep(f)) {
            let star = std::iter::once(f).chain(lifted.above(f).iter().copied());
            for c in star.filter(|&c| lifted.is_chamber(c) && keep(c)) {
                elements.push((f, c));
            }
        }
        let index = elements.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        SalvettiPoset { lifted, elements, index }
    }

    pub fn lifted(&self) -> &LiftedFacePoset {
        self.lifted
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(F, C)` for element `x`.
    pub fn element(&self, x: usize) -> (usize, usize) {
        self.elements[x]
    }

    pub fn find(&self, f: usize, c: usize) -> Option<usize> {
        self.index.get(&(f, c)).copied()
    }

    pub fn codim(&self, x: usize) -> usize {
        self.lifted.dim() - self.lifted.face(self.elements[x].0).dim
    }

    /// All elements strictly below `x`, or an error if one of them was not
    /// generated (its face lies outside the known part of the lift).
    pub fn below(&self, x: usize) -> Result<Vec<usize>> {
        let (f2, c2) = self.elements[x];
        let mut out = Vec::new();
        for &f1 in self.lifted.above(f2) {
            let c1 = chamber_fiber(self.lifted, c2, f1)?;
            let y = self.find(f1, c1).ok_or_else(|| {
                Error::WindowTooSmall(format!("Salvetti element [{f1}, {c1}] below [{f2}, {c2}] is missing"))
            })?;
            out.push(y);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Whether `x <= y` in the Salvetti order.
    pub fn is_le(&self, x: usize, y: usize) -> bool {
        let (f1, c1) = self.elements[x];
        let (f2, c2) = self.elements[y];
        self.lifted.is_le(f2, f1) && chamber_fiber(self.lifted, c2, f1).map_or(false, |c| c == c1)
    }
}

/// Salvetti poset of the complete part of a windowed lift: pairs whose face
/// and chamber lie entirely inside the window.
pub fn salvetti_poset(lifted: &LiftedFacePoset) -> SalvettiPoset<'_> {
    SalvettiPoset::build(lifted, |f| lifted.face(f).complete)
}

/// Salvetti poset of a finite affine arrangement (every face, bounded or not).
pub fn finite_salvetti_poset(lifted: &LiftedFacePoset) -> SalvettiPoset<'_> {
    SalvettiPoset::build(lifted, |_| true)
}

/// The Salvetti complex of a finite affine arrangement as the category of
/// its Salvetti poset.
pub fn finite_salvetti_category(sal: &SalvettiPoset<'_>) -> Result<AcyclicCategory> {
    let mut less = Vec::new();
    for y in 0..sal.len() {
        for x in sal.below(y)? {
            less.push((x, y));
        }
    }
    let grades = (0..sal.len()).map(|x| sal.codim(x)).collect();
    Ok(AcyclicCategory::from_poset(grades, &less))
}

impl PeriodicPoset for SalvettiPoset<'_> {
    fn canonical_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lifted.is_canonical(self.elements[x].0)).collect()
    }

    fn grade(&self, x: usize) -> usize {
        self.codim(x)
    }

    fn strictly_below(&self, x: usize) -> Vec<usize> {
        self.below(x).expect("star of a canonical face lies in the window")
    }

    fn shift(&self, x: usize) -> Vec<i64> {
        self.lifted.shift_of(self.elements[x].0)
    }

    fn translate(&self, x: usize, u: &[i64]) -> Option<usize> {
        let (f, c) = self.elements[x];
        self.find(self.lifted.translate(f, u)?, self.lifted.translate(c, u)?)
    }
}

/// An object of the toric Salvetti category: the orbit of `[F, C]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalvettiObject {
    /// Canonical lifted face `F`.
    pub face: usize,
    /// Lifted chamber `C >= F`.
    pub chamber: usize,
    pub codim: usize,
}

/// The toric Salvetti category: the quotient of the lifted Salvetti poset by
/// integer translations.
#[derive(Clone, Debug)]
pub struct SalvettiCategory {
    objects: Vec<SalvettiObject>,
    category: AcyclicCategory,
    lifts: Vec<(usize, usize)>,
}

impl SalvettiCategory {
    pub fn objects(&self) -> &[SalvettiObject] {
        &self.objects
    }

    pub fn category(&self) -> &AcyclicCategory {
        &self.category
    }

    /// Lifted source pair of morphism `m`, lying below the canonical pair of
    /// its target.
    pub fn morphism_lift(&self, m: usize) -> (usize, usize) {
        self.lifts[m]
    }

    pub fn is_poset(&self) -> bool {
        self.category.is_poset()
    }
}

/// Builds the toric Salvetti category. Every lifted element whose face is
/// canonical is checked to have all its lower elements inside the window.
pub fn toric_salvetti(lifted: &LiftedFacePoset, fc: &FaceCategory) -> Result<SalvettiCategory> {
    let sal = salvetti_poset(lifted);
    for x in sal.canonical_elements() {
        sal.below(x)?;
    }
    let q = quotient(&sal)?;
    let objects: Vec<SalvettiObject> = q
        .representatives
        .iter()
        .map(|&x| {
            let (face, chamber) = sal.element(x);
            SalvettiObject { face, chamber, codim: sal.codim(x) }
        })
        .collect();
    let expected = fc.orbits().iter().filter(|o| o.dim == lifted.dim()).count()
        + fc
            .category()
            .morphisms()
            .iter()
            .filter(|&&(_, t)| fc.orbits()[t].dim == lifted.dim())
            .count();
    if objects.len() != expected {
        return Err(Error::Internal(format!(
            "{} Salvetti objects but {expected} face-to-chamber morphisms",
            objects.len()
        )));
    }
    let lifts = q.lifts.iter().map(|&x| sal.element(x)).collect();
    Ok(SalvettiCategory { objects, category: q.category, lifts })
}

/// Regular cell structure on the torus: the face category is a poset.
pub fn is_thick(fc: &FaceCategory) -> bool {
    fc.is_poset()
}

/// Cells of the canonical CW structure by codimension, and its Euler
/// characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwCensus {
    pub by_codim: Vec<usize>,
    pub euler_characteristic: i64,
}

pub fn cw_census(z: &SalvettiCategory, n: usize) -> CwCensus {
    let mut by_codim = vec![0; n + 1];
    for o in &z.objects {
        by_codim[o.codim] += 1;
    }
    let euler_characteristic =
        by_codim.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
    CwCensus { by_codim, euler_characteristic }
}

/// Number of translation orbits of `k`-chains `x_0 < ... < x_k` in the lifted
/// Salvetti poset, for `k = 0..=max_dim`, counted as chains whose top element
/// has a canonical face.
pub fn lifted_chain_orbits(lifted: &LiftedFacePoset, max_dim: usize) -> Result<Vec<usize>> {
    let sal = salvetti_poset(lifted);
    let mut below: HashMap<usize, Vec<usize>> = HashMap::new();
    // chains[k][x] = number of k-chains with top x
    let tops = sal.canonical_elements();
    let mut counts = vec![0usize; max_dim + 1];
    let mut memo: HashMap<(usize, usize), usize> = HashMap::new();
    fn chains_ending(
        sal: &SalvettiPoset<'_>,
        x: usize,
        k: usize,
        below: &mut HashMap<usize, Vec<usize>>,
        memo: &mut HashMap<(usize, usize), usize>,
    ) -> Result<usize> {
        if k == 0 {
            return Ok(1);
        }
        if let Some(&v) = memo.get(&(x, k)) {
            return Ok(v);
        }
        if !below.contains_key(&x) {
            below.insert(x, sal.below(x)?);
        }
        let lower = below[&x].clone();
        let mut total = 0;
        for y in lower {
            total += chains_ending(sal, y, k - 1, below, memo)?;
        }
        memo.insert((x, k), total);
        Ok(total)
    }
    for &z in &tops {
        for (k, c) in counts.iter_mut().enumerate() {
            *c += chains_ending(&sal, z, k, &mut below, &mut memo)?;
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{lift_to_window, AffineHyperplane, ArrangementSpec, Window};
    use crate::catalog;
    use crate::category::{euler_characteristic, nerve_chains, nerve_homology};
    use crate::cells::{enumerate_faces, quotient_faces};
    use crate::exact::rat;

    fn zeta(spec: &ArrangementSpec, k: u32) -> (LiftedFacePoset, FaceCategory, SalvettiCategory) {
        let w = Window::cube(spec.rank(), k);
        let l = enumerate_faces(&lift_to_window(spec, &w), Some(&w)).unwrap();
        let fc = quotient_faces(&l).unwrap();
        let z = toric_salvetti(&l, &fc).unwrap();
        (l, fc, z)
    }

    fn bettis(c: &AcyclicCategory) -> Vec<usize> {
        nerve_homology(c).unwrap().iter().map(|g| g.betti).collect()
    }

    #[test]
    fn points_on_the_circle() {
        for k in 1..=3 {
            let (_, _, z) = zeta(&catalog::points_on_circle(k), 1);
            assert_eq!(z.objects().len(), 3 * k);
            assert_eq!(z.category().morphism_count(), 4 * k);
            assert_eq!(cw_census(&z, 1).euler_characteristic, -(k as i64));
            assert_eq!(bettis(z.category()), vec![1, k + 1]);
        }
    }

    #[test]
    fn crossing_circles() {
        let (_, fc, z) = zeta(&catalog::crossing_circles(), 1);
        let census = cw_census(&z, 2);
        assert_eq!(census.by_codim, vec![2, 8, 8]);
        assert_eq!(census.euler_characteristic, 2);
        let nerve = nerve_chains(z.category(), 2);
        assert_eq!(euler_characteristic(&nerve), 2);
        assert!(!is_thick(&fc));
        assert_eq!(bettis(z.category()), vec![1, 4, 5]);
    }

    #[test]
    fn thickness() {
        let (_, fc, z) = zeta(&catalog::grid(), 1);
        assert!(is_thick(&fc));
        assert!(z.is_poset());
        let (_, fc, _) = zeta(&catalog::points_on_circle(1), 1);
        assert!(!is_thick(&fc));
    }

    #[test]
    fn quotient_commutes_with_nerve() {
        for (name, spec) in catalog::all() {
            let n = spec.rank();
            let (l, _, z) = zeta(&spec, 1);
            let nerve = nerve_chains(z.category(), n);
            assert_eq!(nerve.counts(), lifted_chain_orbits(&l, n).unwrap(), "{name}");
        }
    }

    #[test]
    fn affine_examples() {
        let h = |alpha: Vec<i64>, c: i64| AffineHyperplane { alpha, c: rat(c), source: 0, shift: 0 };
        let l = enumerate_faces(&[h(vec![1], 0)], None).unwrap();
        let sal = finite_salvetti_poset(&l);
        assert_eq!(sal.len(), 4);
        let c = finite_salvetti_category(&sal).unwrap();
        assert_eq!(bettis(&c), vec![1, 1]);

        let l = enumerate_faces(&[h(vec![1, 0], 0), h(vec![1, 1], 1)], None).unwrap();
        let sal = finite_salvetti_poset(&l);
        let c = finite_salvetti_category(&sal).unwrap();
        assert_eq!(bettis(&c), vec![1, 2, 1]);
        // Chamber pairs [C, C] are the 0-cells, hence minimal.
        let minimal: Vec<usize> = (0..sal.len())
            .filter(|&x| (0..sal.len()).all(|y| y == x || !sal.is_le(y, x)))
            .collect();
        assert_eq!(minimal.len(), 4);
        assert!(minimal.iter().all(|&x| sal.codim(x) == 0));
    }
}

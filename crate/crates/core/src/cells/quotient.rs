use num_traits::Zero;

use super::LiftedFacePoset;
use crate::category::{quotient, AcyclicCategory, PeriodicPoset};
use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// One `Z^n`-orbit of faces, i.e. one cell of the torus decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceOrbit {
    /// Lifted face with barycenter in `[0,1)^n`.
    pub representative: usize,
    pub dim: usize,
    pub barycenter: Vec<Rational>,
}

/// The face category of the torus decomposition: objects are face orbits,
/// and the morphisms into an orbit `G` are the faces strictly below the
/// canonical lift of `G`.
#[derive(Clone, Debug)]
pub struct FaceCategory {
    orbits: Vec<FaceOrbit>,
    category: AcyclicCategory,
    lifts: Vec<usize>,
    shifts: Vec<Vec<i64>>,
    orbit_of_rep: std::collections::HashMap<usize, usize>,
}

impl FaceCategory {
    pub fn orbits(&self) -> &[FaceOrbit] {
        &self.orbits
    }

    pub fn category(&self) -> &AcyclicCategory {
        &self.category
    }

    /// Lifted source face of each morphism (it lies below the canonical
    /// representative of the target).
    pub fn morphism_lift(&self, m: usize) -> usize {
        self.lifts[m]
    }

    /// Translation `u` with `lift = canonical source + u`.
    pub fn morphism_shift(&self, m: usize) -> &[i64] {
        &self.shifts[m]
    }

    /// Number of orbits in each dimension `0..=n`.
    pub fn census(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0; n + 1];
        for o in &self.orbits {
            c[o.dim] += 1;
        }
        c
    }

    /// Orbit whose canonical representative is the lifted face `rep`.
    pub fn orbit_of_canonical(&self, rep: usize) -> Option<usize> {
        self.orbit_of_rep.get(&rep).copied()
    }

    /// Orbit of any lifted face whose canonical translate is known.
    pub fn orbit_of(&self, lifted: &LiftedFacePoset, face: usize) -> Option<usize> {
        lifted.canonical_of(face).and_then(|c| self.orbit_of_canonical(c))
    }

    /// Whether the decomposition is a regular CW complex (at most one
    /// morphism between any two objects).
    pub fn is_poset(&self) -> bool {
        self.category.is_poset()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.orbits.iter().map(|o| if o.dim % 2 == 0 { 1 } else { -1 }).sum()
    }
}

struct FacePoset<'a>(&'a LiftedFacePoset);

impl PeriodicPoset for FacePoset<'_> {
    fn canonical_elements(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&f| self.0.is_canonical(f)).collect()
    }

    fn grade(&self, x: usize) -> usize {
        self.0.face(x).dim
    }

    fn strictly_below(&self, x: usize) -> Vec<usize> {
        self.0.below(x).to_vec()
    }

    fn shift(&self, x: usize) -> Vec<i64> {
        self.0.shift_of(x)
    }

    fn translate(&self, x: usize, u: &[i64]) -> Option<usize> {
        self.0.translate(x, u)
    }
}

/// Checks that every canonical face has its closed star inside the window
/// and that every face of such a star has a known canonical translate.
pub(crate) fn check_stars(lifted: &LiftedFacePoset) -> Result<()> {
    for f in (0..lifted.len()).filter(|&f| lifted.is_canonical(f)) {
        for &g in lifted.above(f) {
            if lifted.canonical_of(g).is_none() {
                return Err(Error::WindowTooSmall(format!(
                    "star of face {f} reaches face {g} whose orbit has no complete representative"
                )));
            }
        }
    }
    Ok(())
}

/// Quotient of the lifted face poset by the lattice of translations.
pub fn quotient_faces(lifted: &LiftedFacePoset) -> Result<FaceCategory> {
    if lifted.window().is_none() {
        return Err(Error::Argument("quotient needs a periodic lift inside a window".into()));
    }
    check_stars(lifted)?;
    let q = quotient(&FacePoset(lifted))?;
    let orbits: Vec<FaceOrbit> = q
        .representatives
        .iter()
        .map(|&r| FaceOrbit {
            representative: r,
            dim: lifted.face(r).dim,
            barycenter: lifted.face(r).barycenter.clone(),
        })
        .collect();
    let shifts = q.lifts.iter().map(|&x| lifted.shift_of(x)).collect();
    let orbit_of_rep = q.representatives.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    if orbits.iter().all(|o| o.dim != 0) {
        return Err(Error::WindowTooSmall("no vertex orbit found".into()));
    }
    debug_assert!(orbits.iter().all(|o| o.barycenter.iter().all(|x| *x >= Rational::zero() && *x < rat(1))));
    Ok(FaceCategory { orbits, category: q.category, lifts: q.lifts, shifts, orbit_of_rep })
}

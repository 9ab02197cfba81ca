//! Faces of the periodic lift, the face category of the torus decomposition,
//! layers, and the local projections onto localised arrangements.

mod enumerate;
mod layers;
mod quotient;

pub use enumerate::enumerate_faces;
pub use layers::{layers, Layer, LayerPoset};
pub use quotient::{quotient_faces, FaceCategory, FaceOrbit};

use std::collections::HashMap;

use crate::arrangement::{AffineHyperplane, Window};
use crate::error::{Error, Result};
use crate::exact::{floor_i64, rat, sign, Rational};

/// Position of a face relative to each hyperplane: -1, 0 or +1.
pub type SignVector = Vec<i8>;

/// A relatively open cell of the lifted affine arrangement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFace {
    pub id: usize,
    pub sign: SignVector,
    pub dim: usize,
    /// Ids of the vertex faces in the closure that were seen inside the window.
    pub vertices: Vec<usize>,
    /// Average of `vertices`; lies in the relative interior when `complete`.
    pub barycenter: Vec<Rational>,
    /// Every vertex of the closure lies in the window (so the face is bounded
    /// and fully known).
    pub complete: bool,
}

/// Face poset (ordered by inclusion of closures) of an affine arrangement,
/// restricted to faces with a vertex in the window.
#[derive(Clone, Debug)]
pub struct LiftedFacePoset {
    dim: usize,
    window: Option<Window>,
    planes: Vec<AffineHyperplane>,
    faces: Vec<AffineFace>,
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
    below: Vec<Vec<usize>>,
    chambers: Vec<usize>,
    by_sign: HashMap<SignVector, usize>,
    by_barycenter: HashMap<Vec<Rational>, usize>,
}

impl LiftedFacePoset {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn window(&self) -> Option<&Window> {
        self.window.as_ref()
    }

    /// Distinct hyperplanes indexing the sign vectors.
    pub fn planes(&self) -> &[AffineHyperplane] {
        &self.planes
    }

    pub fn faces(&self) -> &[AffineFace] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &AffineFace {
        &self.faces[id]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Covering relations `(lower, upper)`.
    pub fn covering_relations(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn covers_of(&self, id: usize) -> &[usize] {
        &self.up[id]
    }

    /// All faces strictly containing `id` in their closure.
    pub fn above(&self, id: usize) -> &[usize] {
        &self.above[id]
    }

    /// All faces strictly contained in the closure of `id`.
    pub fn below(&self, id: usize) -> &[usize] {
        &self.below[id]
    }

    pub fn chambers(&self) -> &[usize] {
        &self.chambers
    }

    pub fn is_chamber(&self, id: usize) -> bool {
        self.faces[id].dim == self.dim
    }

    pub fn find_by_sign(&self, s: &[i8]) -> Option<usize> {
        self.by_sign.get(s).copied()
    }

    pub fn find_by_barycenter(&self, b: &[Rational]) -> Option<usize> {
        self.by_barycenter.get(b).copied()
    }

    /// `a <= b`: the closure of `b` contains `a`.
    pub fn is_le(&self, a: usize, b: usize) -> bool {
        sign_le(&self.faces[a].sign, &self.faces[b].sign)
    }

    /// Hyperplanes containing the face, i.e. those cutting out its affine span.
    pub fn zero_set(&self, id: usize) -> Vec<usize> {
        let s = &self.faces[id].sign;
        (0..s.len()).filter(|&h| s[h] == 0).collect()
    }

    pub fn sign_of_point(&self, x: &[Rational]) -> SignVector {
        self.planes.iter().map(|h| sign(&h.side(x))).collect()
    }

    pub fn face_containing(&self, x: &[Rational]) -> Option<usize> {
        self.find_by_sign(&self.sign_of_point(x))
    }

    /// Lattice vector `u` with barycenter in `u + [0,1)^n`.
    pub fn shift_of(&self, id: usize) -> Vec<i64> {
        self.faces[id].barycenter.iter().map(floor_i64).collect()
    }

    /// The translate `id + u`, if it is a complete face of the window.
    pub fn translate(&self, id: usize, u: &[i64]) -> Option<usize> {
        let f = &self.faces[id];
        if !f.complete {
            return None;
        }
        let b: Vec<Rational> = f.barycenter.iter().zip(u).map(|(x, k)| x + rat(*k)).collect();
        self.find_by_barycenter(&b)
    }

    /// Translate of `id` with barycenter in `[0,1)^n`.
    pub fn canonical_of(&self, id: usize) -> Option<usize> {
        let u: Vec<i64> = self.shift_of(id).iter().map(|k| -k).collect();
        self.translate(id, &u)
    }

    pub fn is_canonical(&self, id: usize) -> bool {
        self.faces[id].complete && self.shift_of(id).iter().all(|&k| k == 0)
    }

    /// Unique hyperplane carrying a codimension-one face.
    pub fn supporting_plane(&self, id: usize) -> Result<usize> {
        match self.zero_set(id).as_slice() {
            [h] => Ok(*h),
            _ => Err(Error::Argument(format!("face {id} is not of codimension one"))),
        }
    }
}

fn sign_le(a: &[i8], b: &[i8]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || x == y)
}

/// The localisation map at `f`: for every face `g >= f` (including `f`), the
/// restriction of the sign vector of `g` to the hyperplanes through `f`.
/// Two chambers have equal images iff they lie on the same side of every
/// hyperplane through `f`.
pub fn project_pi_f(lifted: &LiftedFacePoset, f: usize) -> Vec<(usize, SignVector)> {
    let zero = lifted.zero_set(f);
    std::iter::once(f)
        .chain(lifted.above(f).iter().copied())
        .map(|g| (g, zero.iter().map(|&h| lifted.faces[g].sign[h]).collect()))
        .collect()
}

/// The chamber opposite to `c` across `f`: signs on hyperplanes through `f`
/// negated, all other signs kept.
pub fn opposite_chamber(lifted: &LiftedFacePoset, c: usize, f: usize) -> Result<usize> {
    if !lifted.is_chamber(c) || !lifted.is_le(f, c) {
        return Err(Error::Argument(format!("face {f} is not a face of chamber {c}")));
    }
    let fs = &lifted.faces[f].sign;
    let s: SignVector =
        lifted.faces[c].sign.iter().zip(fs).map(|(&x, &y)| if y == 0 { -x } else { x }).collect();
    lifted
        .find_by_sign(&s)
        .ok_or_else(|| Error::WindowTooSmall(format!("opposite of chamber {c} across face {f}")))
}

/// The chamber adjacent to `f` that lies on the same side as `c` of every
/// hyperplane through `f`.
pub fn chamber_fiber(lifted: &LiftedFacePoset, c: usize, f: usize) -> Result<usize> {
    if !lifted.is_chamber(c) {
        return Err(Error::Argument(format!("{c} is not a chamber")));
    }
    let fs = &lifted.faces[f].sign;
    let s: SignVector =
        lifted.faces[c].sign.iter().zip(fs).map(|(&x, &y)| if y == 0 { x } else { y }).collect();
    lifted.find_by_sign(&s).ok_or_else(|| {
        if lifted.faces[f].complete {
            Error::Internal(format!("merged sign vector of chamber {c} at face {f} is infeasible"))
        } else {
            Error::WindowTooSmall(format!("chamber at incomplete face {f}"))
        }
    })
}

#[cfg(test)]
mod tests;

//! The full pipeline for one arrangement and window.

use crate::arrangement::{is_essential, lift_to_window, ArrangementSpec, Window};
use crate::category::{boundary_matrices, homology, nerve_chains, AcyclicCategory, ChainComplex, HomologyGroup};
use crate::cells::{enumerate_faces, layers, quotient_faces, FaceCategory, LayerPoset, LiftedFacePoset};
use crate::error::{Error, Result};
use crate::pi1::{presentation, GroupPresentation};
use crate::salvetti::{cw_census, is_thick, toric_salvetti, CwCensus, SalvettiCategory};

/// Which acyclic category a homology computation runs on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// The face category of the cell structure on the compact torus.
    Face,
    /// The toric Salvetti category, a model of the complement.
    Salvetti,
}

/// Lifted faces, face category and Salvetti category of an essential
/// arrangement, computed in the window `[-k, k + 1]^n`.
pub struct Model {
    spec: ArrangementSpec,
    window: Window,
    k: u32,
    lifted: LiftedFacePoset,
    faces: FaceCategory,
    salvetti: SalvettiCategory,
}

impl Model {
    pub fn build(spec: &ArrangementSpec, k: u32) -> Result<Model> {
        let n = spec.rank();
        if !is_essential(spec) {
            return Err(Error::NotEssential { rank: spec.character_rank(), dim: n });
        }
        let window = Window::cube(n, k);
        let lifted = enumerate_faces(&lift_to_window(spec, &window), Some(&window))?;
        let faces = quotient_faces(&lifted)?;
        let salvetti = toric_salvetti(&lifted, &faces)?;
        Ok(Model { spec: spec.clone(), window, k, lifted, faces, salvetti })
    }

    pub fn spec(&self) -> &ArrangementSpec {
        &self.spec
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    /// The `k` of the window `[-k, k + 1]^n`.
    pub fn window_k(&self) -> u32 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.spec.rank()
    }

    pub fn lifted(&self) -> &LiftedFacePoset {
        &self.lifted
    }

    pub fn faces(&self) -> &FaceCategory {
        &self.faces
    }

    pub fn salvetti(&self) -> &SalvettiCategory {
        &self.salvetti
    }

    pub fn category(&self, space: Space) -> &AcyclicCategory {
        match space {
            Space::Face => self.faces.category(),
            Space::Salvetti => self.salvetti.category(),
        }
    }

    /// Face orbits by dimension.
    pub fn face_census(&self) -> Vec<usize> {
        self.faces.census(self.dim())
    }

    /// Objects of the Salvetti category by codimension of their face.
    pub fn salvetti_census(&self) -> CwCensus {
        cw_census(&self.salvetti, self.dim())
    }

    pub fn is_thick(&self) -> bool {
        is_thick(&self.faces)
    }

    pub fn layers(&self) -> Result<LayerPoset> {
        layers(&self.lifted, &self.faces)
    }

    /// Chain complex of the nerve, with chains up to degree `max_dim + 1`
    /// when a cap is given.
    pub fn chain_complex(&self, space: Space, max_dim: Option<usize>) -> Result<ChainComplex> {
        let c = self.category(space);
        let top = c.max_grade_span();
        let top = max_dim.map_or(top, |d| top.min(d + 1));
        boundary_matrices(c, &nerve_chains(c, top))
    }

    /// Integral homology of the nerve, in degrees up to `max_dim` if given.
    pub fn homology(&self, space: Space, max_dim: Option<usize>) -> Result<Vec<HomologyGroup>> {
        let mut h = homology(&self.chain_complex(space, max_dim)?);
        if let Some(d) = max_dim {
            h.truncate(d + 1);
        }
        Ok(h)
    }

    pub fn presentation(&self) -> Result<GroupPresentation> {
        presentation(&self.lifted, &self.faces)
    }
}

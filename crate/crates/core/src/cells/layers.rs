use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FaceCategory, LiftedFacePoset};
use crate::arrangement::hyperplane_key;
use crate::error::Result;
use crate::exact::{hnf, IntMatrix, Rational};

/// A connected component of an intersection of hypersurfaces on the torus
/// (the torus itself being the empty intersection).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub dim: usize,
    /// A canonical face spanning a lift of the layer, if the arrangement is
    /// nonempty.
    pub representative: Option<usize>,
    /// Primitive normals and offsets of the hyperplanes cutting out that lift.
    pub normals: Vec<Vec<i64>>,
    pub offsets: Vec<Rational>,
}

/// Layers ordered by inclusion; `relations` lists all strict pairs
/// `(smaller, larger)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerPoset {
    pub layers: Vec<Layer>,
    pub relations: Vec<(usize, usize)>,
}

impl LayerPoset {
    /// Poset of the empty arrangement on `(C*)^n`.
    pub fn torus_only(n: usize) -> Self {
        LayerPoset {
            layers: vec![Layer { dim: n, representative: None, normals: vec![], offsets: vec![] }],
            relations: vec![],
        }
    }

    /// Index of the whole torus.
    pub fn top(&self) -> usize {
        let n = self.layers.iter().map(|l| l.dim).max().unwrap_or(0);
        self.layers.iter().position(|l| l.dim == n && l.normals.is_empty()).expect("torus layer")
    }

    /// Number of layers in each dimension.
    pub fn census(&self) -> Vec<usize> {
        let n = self.layers.iter().map(|l| l.dim).max().unwrap_or(0);
        let mut c = vec![0; n + 1];
        for l in &self.layers {
            c[l.dim] += 1;
        }
        c
    }
}

type FlatKey = (Vec<Vec<i64>>, Vec<BigInt>, BigInt);

/// Orbit key of the flat `{x : <a_i, x> = c_i}` under integer translations:
/// the offsets (scaled to integers) reduced modulo the lattice `N Z^n`.
fn flat_key(normals: &[Vec<i64>], offsets: &[Rational]) -> FlatKey {
    let d = offsets.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v: Vec<BigInt> = offsets.iter().map(|c| (c * Rational::from_integer(d.clone())).to_integer()).collect();
    let n = normals.first().map_or(0, Vec::len);
    // Columns of d * N generate the lattice; put them as rows.
    let gens: Vec<Vec<BigInt>> = (0..n)
        .map(|j| normals.iter().map(|a| &d * BigInt::from(a[j])).collect())
        .collect();
    let (h, _) = hnf(&IntMatrix::from_rows(&gens));
    let mut v = v;
    for r in 0..h.rows() {
        let row = h.row(r);
        let Some(p) = row.iter().position(|x| !x.is_zero()) else { continue };
        let q = v[p].div_floor(&row[p]);
        for (vi, x) in v.iter_mut().zip(row) {
            *vi -= &q * x;
        }
        debug_assert!(!v[p].is_negative());
    }
    (normals.to_vec(), v, d)
}

/// Layers as orbits of the flats spanned by faces. A layer `X` lies in `Y`
/// iff `Y` is spanned by some face in the star of a face spanning `X`.
pub fn layers(lifted: &LiftedFacePoset, faces: &FaceCategory) -> Result<LayerPoset> {
    let planes = lifted.planes();
    let flat_of = |f: usize| -> (Vec<Vec<i64>>, Vec<Rational>) {
        let mut rows: Vec<(Vec<i64>, Rational)> =
            lifted.zero_set(f).iter().map(|&h| hyperplane_key(&planes[h].alpha, &planes[h].c)).collect();
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        rows.into_iter().unzip()
    };

    let mut by_key: BTreeMap<FlatKey, usize> = BTreeMap::new();
    let mut layers: Vec<Layer> = Vec::new();
    let mut layer_of_face = |f: usize, layers: &mut Vec<Layer>| -> usize {
        let (normals, offsets) = flat_of(f);
        let key = flat_key(&normals, &offsets);
        *by_key.entry(key).or_insert_with(|| {
            layers.push(Layer {
                dim: lifted.face(f).dim,
                representative: Some(f),
                normals,
                offsets,
            });
            layers.len() - 1
        })
    };
    for o in faces.orbits() {
        layer_of_face(o.representative, &mut layers);
    }
    let mut relations = BTreeSet::new();
    for o in faces.orbits() {
        let x = layer_of_face(o.representative, &mut layers);
        for &g in lifted.above(o.representative) {
            let y = layer_of_face(g, &mut layers);
            if x != y {
                relations.insert((x, y));
            }
        }
    }

    // Renumber by (dim, first appearance).
    let mut order: Vec<usize> = (0..layers.len()).collect();
    order.sort_by_key(|&i| (layers[i].dim, i));
    let mut new_id = vec![0; layers.len()];
    for (k, &i) in order.iter().enumerate() {
        new_id[i] = k;
    }
    let layers = order.iter().map(|&i| layers[i].clone()).collect();
    let mut relations: Vec<(usize, usize)> = relations.into_iter().map(|(a, b)| (new_id[a], new_id[b])).collect();
    relations.sort();
    Ok(LayerPoset { layers, relations })
}

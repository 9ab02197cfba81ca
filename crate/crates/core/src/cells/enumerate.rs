use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use num_traits::Zero;

use super::{AffineFace, LiftedFacePoset, SignVector};
use crate::arrangement::{hyperplane_key, AffineHyperplane, Window};
use crate::error::{Error, Result};
use crate::exact::{feasible_point, rat, rational_rank, sign, solve_affine, Rational};

/// Builds the face poset of the affine arrangement `planes`, restricted to
/// faces having a vertex inside `window` (all faces with a vertex when
/// `window` is `None`).
///
/// Faces are found through their vertices: for every vertex the faces of the
/// central arrangement of hyperplanes through it are enumerated by exact
/// feasibility tests, and then glued along their global sign vectors. The
/// arrangement must be essential so that every face has a vertex.
pub fn enumerate_faces(
    planes: &[AffineHyperplane],
    window: Option<&Window>,
) -> Result<LiftedFacePoset> {
    let n = match (window, planes.first()) {
        (Some(w), _) => w.dim(),
        (None, Some(h)) => h.alpha.len(),
        (None, None) => return Err(Error::NonSpanning(0)),
    };

    let mut seen = HashSet::new();
    let mut kept: Vec<AffineHyperplane> = Vec::new();
    let mut keys: Vec<(Vec<i64>, Rational)> = Vec::new();
    for h in planes {
        if h.alpha.len() != n {
            return Err(Error::Argument("hyperplane of wrong dimension".into()));
        }
        let key = hyperplane_key(&h.alpha, &h.c);
        if seen.insert(key.clone()) {
            kept.push(h.clone());
            keys.push(key);
        }
    }
    // Oriented as the kept planes, which fix the meaning of the signs.
    let normals: Vec<Vec<Rational>> =
        kept.iter().map(|h| h.alpha.iter().map(|&x| rat(x)).collect()).collect();
    let rank = rational_rank(&normals, n);
    if rank < n {
        return Err(Error::NonSpanning(rank));
    }

    let points = find_vertices(&keys, n, window);
    let mut builder = Builder::new(n);
    for (vi, p) in points.iter().enumerate() {
        builder.add_vertex(vi, p, &kept, &normals);
    }
    Ok(builder.finish(n, window.cloned(), kept, &points))
}

/// All intersection points of `n` hyperplanes with independent normals, in
/// the window, sorted.
fn find_vertices(keys: &[(Vec<i64>, Rational)], n: usize, window: Option<&Window>) -> Vec<Vec<Rational>> {
    let mut groups: Vec<(Vec<i64>, Vec<Rational>)> = Vec::new();
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    for (a, c) in keys {
        let g = *index.entry(a.clone()).or_insert_with(|| {
            groups.push((a.clone(), Vec::new()));
            groups.len() - 1
        });
        groups[g].1.push(c.clone());
    }

    let mut found = BTreeSet::new();
    for combo in (0..groups.len()).combinations(n) {
        let a: Vec<Vec<Rational>> =
            combo.iter().map(|&g| groups[g].0.iter().map(|&x| rat(x)).collect()).collect();
        if rational_rank(&a, n) < n {
            continue;
        }
        // Columns of the inverse matrix.
        let inv: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let e: Vec<Rational> = (0..n).map(|i| rat(i64::from(i == j))).collect();
                solve_affine(&a, &e, n).expect("invertible").particular
            })
            .collect();
        for offsets in combo.iter().map(|&g| groups[g].1.iter()).multi_cartesian_product() {
            let mut x = vec![Rational::zero(); n];
            for (col, c) in inv.iter().zip(&offsets) {
                for (xi, v) in x.iter_mut().zip(col) {
                    *xi += v * *c;
                }
            }
            if window.map_or(true, |w| w.contains(&x)) {
                found.insert(x);
            }
        }
    }
    found.into_iter().collect()
}

struct RawFace {
    sign: SignVector,
    dim: usize,
    vertices: BTreeSet<usize>,
}

struct Builder {
    n: usize,
    faces: Vec<RawFace>,
    by_sign: HashMap<SignVector, usize>,
    covers: HashSet<(usize, usize)>,
    vertex_face: Vec<usize>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            faces: Vec::new(),
            by_sign: HashMap::new(),
            covers: HashSet::new(),
            vertex_face: Vec::new(),
        }
    }

    fn add_vertex(
        &mut self,
        vi: usize,
        p: &[Rational],
        planes: &[AffineHyperplane],
        normals: &[Vec<Rational>],
    ) {
        let base: SignVector = planes.iter().map(|h| sign(&h.side(p))).collect();
        let through: Vec<usize> = (0..planes.len()).filter(|&h| base[h] == 0).collect();
        let local = local_covectors(self.n, &through, normals);

        let mut ids = Vec::with_capacity(local.len());
        let mut dims = Vec::with_capacity(local.len());
        for sigma in &local {
            let mut s = base.clone();
            for (&h, &v) in through.iter().zip(sigma) {
                s[h] = v;
            }
            let zero_normals: Vec<Vec<Rational>> = through
                .iter()
                .zip(sigma)
                .filter(|(_, &v)| v == 0)
                .map(|(&h, _)| normals[h].clone())
                .collect();
            let dim = self.n - rational_rank(&zero_normals, self.n);
            let id = match self.by_sign.get(&s) {
                Some(&id) => id,
                None => {
                    self.faces.push(RawFace { sign: s.clone(), dim, vertices: BTreeSet::new() });
                    self.by_sign.insert(s, self.faces.len() - 1);
                    self.faces.len() - 1
                }
            };
            self.faces[id].vertices.insert(vi);
            ids.push(id);
            dims.push(dim);
        }
        let vertex = ids[local.iter().position(|s| s.iter().all(|&v| v == 0)).expect("vertex germ")];
        debug_assert_eq!(self.vertex_face.len(), vi);
        self.vertex_face.push(vertex);

        for i in 0..local.len() {
            for j in 0..local.len() {
                if dims[j] == dims[i] + 1 && super::sign_le(&local[i], &local[j]) {
                    self.covers.insert((ids[i], ids[j]));
                }
            }
        }
    }

    fn finish(
        self,
        n: usize,
        window: Option<Window>,
        planes: Vec<AffineHyperplane>,
        points: &[Vec<Rational>],
    ) -> LiftedFacePoset {
        let nv = rat(0);
        let bary = |f: &RawFace| -> Vec<Rational> {
            let mut b = vec![nv.clone(); n];
            for &v in &f.vertices {
                for (bi, x) in b.iter_mut().zip(&points[v]) {
                    *bi += x;
                }
            }
            let k = rat(f.vertices.len() as i64);
            b.into_iter().map(|x| x / &k).collect()
        };
        let mut order: Vec<(usize, Vec<Rational>)> =
            self.faces.iter().enumerate().map(|(i, f)| (i, bary(f))).collect();
        order.sort_by(|(i, a), (j, b)| {
            let (fi, fj) = (&self.faces[*i], &self.faces[*j]);
            (fi.dim, a, &fi.sign).cmp(&(fj.dim, b, &fj.sign))
        });
        let mut new_id = vec![0; self.faces.len()];
        for (k, (old, _)) in order.iter().enumerate() {
            new_id[*old] = k;
        }

        let mut covers: Vec<(usize, usize)> =
            self.covers.iter().map(|&(a, b)| (new_id[a], new_id[b])).collect();
        covers.sort();
        let total = order.len();
        let mut up = vec![Vec::new(); total];
        let mut down = vec![Vec::new(); total];
        for &(a, b) in &covers {
            up[a].push(b);
            down[b].push(a);
        }

        let mut faces: Vec<AffineFace> = Vec::with_capacity(total);
        for (k, (old, b)) in order.into_iter().enumerate() {
            let raw = &self.faces[old];
            let mut vertices: Vec<usize> = raw.vertices.iter().map(|&v| new_id[self.vertex_face[v]]).collect();
            vertices.sort();
            let complete = match raw.dim {
                0 => true,
                1 => vertices.len() == 2,
                _ => !down[k].is_empty() && down[k].iter().all(|&d| faces[d].complete),
            };
            faces.push(AffineFace { id: k, sign: raw.sign.clone(), dim: raw.dim, vertices, barycenter: b, complete });
        }

        let mut below: Vec<Vec<usize>> = vec![Vec::new(); total];
        for k in 0..total {
            let mut set = BTreeSet::new();
            for &d in &down[k] {
                set.insert(d);
                set.extend(below[d].iter().copied());
            }
            below[k] = set.into_iter().collect();
        }
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); total];
        for k in 0..total {
            for &d in &below[k] {
                above[d].push(k);
            }
        }

        let chambers = faces.iter().filter(|f| f.dim == n).map(|f| f.id).collect();
        let by_sign = faces.iter().map(|f| (f.sign.clone(), f.id)).collect();
        let by_barycenter =
            faces.iter().filter(|f| f.complete).map(|f| (f.barycenter.clone(), f.id)).collect();
        LiftedFacePoset { dim: n, window, planes, faces, covers, up, above, below, chambers, by_sign, by_barycenter }
    }
}

/// Sign vectors of the central arrangement of the hyperplanes `through`
/// (all containing the current vertex), built one hyperplane at a time.
fn local_covectors(n: usize, through: &[usize], normals: &[Vec<Rational>]) -> Vec<SignVector> {
    let mut partial: Vec<SignVector> = vec![Vec::new()];
    for k in 0..through.len() {
        let mut next = Vec::new();
        for sigma in &partial {
            for s in [-1i8, 0, 1] {
                let mut cand = sigma.clone();
                cand.push(s);
                if direction_exists(n, &through[..=k], &cand, normals) {
                    next.push(cand);
                }
            }
        }
        partial = next;
    }
    partial
}

fn direction_exists(n: usize, hs: &[usize], sigma: &[i8], normals: &[Vec<Rational>]) -> bool {
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    for (&h, &s) in hs.iter().zip(sigma) {
        let a = &normals[h];
        match s {
            0 => eqs.push((a.clone(), rat(0))),
            1 => ineqs.push((a.clone(), rat(1))),
            _ => ineqs.push((a.iter().map(|x| -x).collect(), rat(1))),
        }
    }
    feasible_point(n, &eqs, &ineqs).is_some()
}

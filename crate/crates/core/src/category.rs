//! Acyclic categories, their nerves, and integral homology of the nerve.

use std::collections::HashMap;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::SparseIntMatrix;

/// A small category in which only identities are invertible and every
/// endomorphism is an identity. Identities are implicit: `morphisms` lists
/// the nonidentity arrows as `(source, target)` and `composition` maps
/// `(first, second)` to `second ∘ first`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicCategory {
    grades: Vec<usize>,
    morphisms: Vec<(usize, usize)>,
    composition: HashMap<(usize, usize), usize>,
    outgoing: Vec<Vec<usize>>,
}

impl AcyclicCategory {
    /// Assembles a category without checking the axioms; see [`check_acyclic`].
    pub fn new(
        grades: Vec<usize>,
        morphisms: Vec<(usize, usize)>,
        composition: HashMap<(usize, usize), usize>,
    ) -> Self {
        let mut outgoing = vec![Vec::new(); grades.len()];
        for (m, &(s, _)) in morphisms.iter().enumerate() {
            outgoing[s].push(m);
        }
        AcyclicCategory { grades, morphisms, composition, outgoing }
    }

    /// The category of a finite poset given by its grades and all strict
    /// relations `a < b`; one morphism per relation.
    pub fn from_poset(grades: Vec<usize>, less: &[(usize, usize)]) -> Self {
        let mut rel: Vec<(usize, usize)> = less.to_vec();
        rel.sort();
        rel.dedup();
        let index: HashMap<(usize, usize), usize> = rel.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut composition = HashMap::new();
        for (i, &(a, b)) in rel.iter().enumerate() {
            for (j, &(b2, c)) in rel.iter().enumerate() {
                if b == b2 {
                    if let Some(&k) = index.get(&(a, c)) {
                        composition.insert((i, j), k);
                    }
                }
            }
        }
        Self::new(grades, rel, composition)
    }

    pub fn object_count(&self) -> usize {
        self.grades.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn grade(&self, object: usize) -> usize {
        self.grades[object]
    }

    pub fn grades(&self) -> &[usize] {
        &self.grades
    }

    pub fn morphisms(&self) -> &[(usize, usize)] {
        &self.morphisms
    }

    pub fn source(&self, m: usize) -> usize {
        self.morphisms[m].0
    }

    pub fn target(&self, m: usize) -> usize {
        self.morphisms[m].1
    }

    pub fn outgoing(&self, object: usize) -> &[usize] {
        &self.outgoing[object]
    }

    /// `second ∘ first`, for composable nonidentity morphisms.
    pub fn compose(&self, first: usize, second: usize) -> Option<usize> {
        self.composition.get(&(first, second)).copied()
    }

    /// Number of morphisms from `a` to `b`.
    pub fn hom_count(&self, a: usize, b: usize) -> usize {
        self.outgoing[a].iter().filter(|&&m| self.morphisms[m].1 == b).count()
    }

    /// At most one morphism between any ordered pair of objects.
    pub fn is_poset(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.morphisms.iter().all(|p| seen.insert(*p))
    }

    pub fn max_grade_span(&self) -> usize {
        match (self.grades.iter().min(), self.grades.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }
}

/// Outcome of [`check_acyclic`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryCheck {
    pub diagnostics: Vec<String>,
}

impl CategoryCheck {
    pub fn ok(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

/// Verifies the acyclic category axioms, closure of composition, and
/// associativity on every composable triple.
pub fn check_acyclic(c: &AcyclicCategory) -> CategoryCheck {
    let mut diagnostics = Vec::new();
    let n = c.object_count();
    for (m, &(s, t)) in c.morphisms.iter().enumerate() {
        if s >= n || t >= n {
            diagnostics.push(format!("morphism {m} has an endpoint outside the object list"));
            return CategoryCheck { diagnostics };
        }
        if s == t {
            diagnostics.push(format!("morphism {m} is a nonidentity endomorphism of {s}"));
        } else if c.grades[s] >= c.grades[t] {
            diagnostics.push(format!("morphism {m} does not increase the grade"));
        }
    }
    for (&(f, g), &h) in &c.composition {
        if c.target(f) != c.source(g) || c.source(h) != c.source(f) || c.target(h) != c.target(g) {
            diagnostics.push(format!("composite of {f} and {g} has wrong endpoints"));
        }
    }
    for f in 0..c.morphism_count() {
        for &g in c.outgoing(c.target(f)) {
            let Some(gf) = c.compose(f, g) else {
                diagnostics.push(format!("composable pair ({f}, {g}) has no composite"));
                continue;
            };
            for &h in c.outgoing(c.target(g)) {
                let left = c.compose(gf, h);
                let right = c.compose(g, h).and_then(|hg| c.compose(f, hg));
                if left.is_none() || left != right {
                    diagnostics.push(format!("associativity fails on ({f}, {g}, {h})"));
                }
            }
        }
    }
    diagnostics.sort();
    diagnostics.dedup();
    CategoryCheck { diagnostics }
}

/// Chains of composable nonidentity morphisms; `chains[k - 1]` holds the
/// `k`-chains, degree 0 being the objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nerve {
    pub objects: usize,
    pub chains: Vec<Vec<Vec<usize>>>,
}

impl Nerve {
    pub fn top_dim(&self) -> usize {
        self.chains.len()
    }

    pub fn count(&self, k: usize) -> usize {
        match k {
            0 => self.objects,
            _ => self.chains.get(k - 1).map_or(0, Vec::len),
        }
    }

    pub fn counts(&self) -> Vec<usize> {
        (0..=self.top_dim()).map(|k| self.count(k)).collect()
    }
}

/// All chains of up to `max_dim` composable nonidentity morphisms, each
/// degree in lexicographic order of morphism ids.
pub fn nerve_chains(c: &AcyclicCategory, max_dim: usize) -> Nerve {
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut current: Vec<Vec<usize>> = (0..c.morphism_count()).map(|m| vec![m]).collect();
    for _ in 0..max_dim {
        if current.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for ch in &current {
            let last = *ch.last().expect("nonempty chain");
            for &m in c.outgoing(c.target(last)) {
                let mut longer = ch.clone();
                longer.push(m);
                next.push(longer);
            }
        }
        chains.push(std::mem::replace(&mut current, next));
    }
    Nerve { objects: c.object_count(), chains }
}

pub fn euler_characteristic(nerve: &Nerve) -> i64 {
    nerve.counts().iter().enumerate().map(|(k, &m)| if k % 2 == 0 { m as i64 } else { -(m as i64) }).sum()
}

/// Cellular chain complex of a nerve; `boundary(k)` maps `C_k` to `C_{k-1}`
/// with rows indexed by `(k-1)`-chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<SparseIntMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Self {
        assert_eq!(boundaries.len() + 1, ranks.len().max(1));
        ChainComplex { ranks, boundaries }
    }

    pub fn top_dim(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks.get(k).copied().unwrap_or(0)
    }

    pub fn boundary(&self, k: usize) -> Option<&SparseIntMatrix> {
        if k == 0 {
            None
        } else {
            self.boundaries.get(k - 1)
        }
    }

    /// Checks `∂_{k-1} ∂_k = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

pub fn boundary_matrices(c: &AcyclicCategory, nerve: &Nerve) -> Result<ChainComplex> {
    let index: Vec<HashMap<&[usize], usize>> = nerve
        .chains
        .iter()
        .map(|deg| deg.iter().enumerate().map(|(i, ch)| (ch.as_slice(), i)).collect())
        .collect();
    let mut boundaries = Vec::new();
    for (d, deg) in nerve.chains.iter().enumerate() {
        let k = d + 1;
        let mut m = SparseIntMatrix::new(nerve.count(k - 1), deg.len());
        for (col, ch) in deg.iter().enumerate() {
            if k == 1 {
                m.add(c.target(ch[0]), col, 1);
                m.add(c.source(ch[0]), col, -1);
                continue;
            }
            let lower = &index[k - 2];
            let mut face = |j: usize, f: Vec<usize>| -> Result<()> {
                let row = *lower
                    .get(f.as_slice())
                    .ok_or_else(|| Error::Internal(format!("missing face of nerve chain {ch:?}")))?;
                m.add(row, col, if j % 2 == 0 { 1 } else { -1 });
                Ok(())
            };
            face(0, ch[1..].to_vec())?;
            for j in 1..k {
                let comp = c
                    .compose(ch[j - 1], ch[j])
                    .ok_or_else(|| Error::Internal(format!("composite missing in chain {ch:?}")))?;
                let mut f = ch[..j - 1].to_vec();
                f.push(comp);
                f.extend_from_slice(&ch[j + 1..]);
                face(j, f)?;
            }
            face(k, ch[..k - 1].to_vec())?;
        }
        boundaries.push(m);
    }
    Ok(ChainComplex::new(nerve.counts(), boundaries))
}

/// `Z^betti ⊕ Z/t_1 ⊕ ... ⊕ Z/t_r`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Integral homology in degrees `0..=cc.top_dim()`. The top degree is exact
/// only when no chains exist above it.
pub fn homology(cc: &ChainComplex) -> Vec<HomologyGroup> {
    let smiths: Vec<_> = cc.boundaries.iter().map(|m| m.smith()).collect();
    (0..=cc.top_dim())
        .map(|k| {
            let rank_out = if k == 0 { 0 } else { smiths[k - 1].rank };
            let (rank_in, torsion) = match smiths.get(k) {
                Some(s) => (
                    s.rank,
                    s.torsion().iter().map(|t| t.to_u64().expect("torsion coefficient fits in u64")).collect(),
                ),
                None => (0, Vec::new()),
            };
            HomologyGroup { betti: cc.rank(k) - rank_out - rank_in, torsion }
        })
        .collect()
}

/// Homology of the full nerve of `c`.
pub fn nerve_homology(c: &AcyclicCategory) -> Result<Vec<HomologyGroup>> {
    let nerve = nerve_chains(c, c.max_grade_span());
    Ok(homology(&boundary_matrices(c, &nerve)?))
}

/// A poset with a free action of `Z^n` whose quotient is an acyclic
/// category. Elements are indexed; only elements inside some finite window
/// are known, and translations may fail by leaving it.
pub trait PeriodicPoset {
    /// One element per orbit, in increasing order.
    fn canonical_elements(&self) -> Vec<usize>;
    fn grade(&self, x: usize) -> usize;
    /// All `y < x` (not only covers).
    fn strictly_below(&self, x: usize) -> Vec<usize>;
    /// `u` with `x = canonical + u`.
    fn shift(&self, x: usize) -> Vec<i64>;
    fn translate(&self, x: usize, u: &[i64]) -> Option<usize>;

    fn canonical_of(&self, x: usize) -> Option<usize> {
        let u: Vec<i64> = self.shift(x).iter().map(|k| -k).collect();
        self.translate(x, &u)
    }
}

/// The orbit category of a periodic poset together with the lifts used to
/// build it.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub category: AcyclicCategory,
    /// Canonical element representing each object.
    pub representatives: Vec<usize>,
    /// For each morphism, the lifted source element lying below the
    /// canonical representative of its target.
    pub lifts: Vec<usize>,
}

/// Objects are orbits; for each canonical `z` and each `x < z` there is one
/// morphism from the orbit of `x` to the orbit of `z`. Composition of
/// `x -> z1` with `y' -> z2`, where `y' = z1 + u`, is `x + u -> z2`.
pub fn quotient<P: PeriodicPoset + ?Sized>(p: &P) -> Result<Quotient> {
    let representatives = p.canonical_elements();
    let object_of: HashMap<usize, usize> = representatives.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let grades = representatives.iter().map(|&x| p.grade(x)).collect();

    let mut morphisms = Vec::new();
    let mut lifts = Vec::new();
    let mut key: HashMap<(usize, usize), usize> = HashMap::new();
    for (t, &z) in representatives.iter().enumerate() {
        let mut below = p.strictly_below(z);
        below.sort_unstable();
        for x in below {
            let c = p
                .canonical_of(x)
                .ok_or_else(|| Error::WindowTooSmall(format!("no canonical translate of element {x}")))?;
            let s = *object_of
                .get(&c)
                .ok_or_else(|| Error::Internal(format!("translate {c} of {x} is not a listed orbit")))?;
            key.insert((t, x), morphisms.len());
            morphisms.push((s, t));
            lifts.push(x);
        }
    }

    let mut into: Vec<Vec<usize>> = vec![Vec::new(); representatives.len()];
    for (m, &(_, t)) in morphisms.iter().enumerate() {
        into[t].push(m);
    }
    let mut composition = HashMap::new();
    for (m2, &(s2, t2)) in morphisms.iter().enumerate() {
        let u = p.shift(lifts[m2]);
        for &m1 in &into[s2] {
            let x = p
                .translate(lifts[m1], &u)
                .ok_or_else(|| Error::WindowTooSmall(format!("translate of element {} leaves window", lifts[m1])))?;
            let m = *key
                .get(&(t2, x))
                .ok_or_else(|| Error::Internal(format!("composite of morphisms {m1} and {m2} not found")))?;
            composition.insert((m1, m2), m);
        }
    }
    Ok(Quotient { category: AcyclicCategory::new(grades, morphisms, composition), representatives, lifts })
}

use std::collections::HashMap;

use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::category::HomologyGroup;
use crate::exact::{snf, IntMatrix};

/// A word in the generators: `k` stands for generator `k` (1-based) and `-k`
/// for its inverse.
pub type Word = Vec<i32>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Self {
        GroupPresentation { generators, relators }
    }

    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Renders a word with generator names, `x^-1` for inverses.
    pub fn format_word(&self, w: &[i32]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&g| {
                let name = &self.generators[g.unsigned_abs() as usize - 1];
                if g > 0 {
                    name.clone()
                } else {
                    format!("{name}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|g| -g).collect()
}

/// Cancels adjacent `x x^-1` pairs.
pub fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &g in w {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

/// Free reduction followed by cancellation between the two ends.
pub fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

/// First homology of the presented group: Smith form of the matrix of
/// exponent sums.
pub fn abelianize(p: &GroupPresentation) -> HomologyGroup {
    let cols = p.generators.len();
    let rows: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![0i64; cols];
            for &g in r {
                row[g.unsigned_abs() as usize - 1] += i64::from(g.signum());
            }
            row
        })
        .collect();
    if rows.is_empty() || cols == 0 {
        return HomologyGroup { betti: cols, torsion: vec![] };
    }
    let s = snf(&IntMatrix::from_rows(&rows));
    HomologyGroup {
        betti: cols - s.rank(),
        torsion: s
            .invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().expect("torsion coefficient fits in u64"))
            .collect(),
    }
}

/// Adds every generator selected by `kill` as a relator.
pub fn kill_generators(p: &GroupPresentation, kill: impl Fn(&str) -> bool) -> GroupPresentation {
    let mut relators = p.relators.clone();
    for (i, name) in p.generators.iter().enumerate() {
        if kill(name) {
            relators.push(vec![i as i32 + 1]);
        }
    }
    GroupPresentation { generators: p.generators.clone(), relators }
}

/// Tietze simplification: reduces relators, drops trivial and repeated ones,
/// and eliminates a generator whenever some relator contains it exactly
/// once (as long as the substitution does not blow up the total length).
pub fn simplify_presentation(p: &GroupPresentation) -> GroupPresentation {
    let mut gens: Vec<Option<String>> = p.generators.iter().cloned().map(Some).collect();
    let mut rels: Vec<Word> = p.relators.clone();
    loop {
        rels = tidy(&rels);
        let total: usize = rels.iter().map(Vec::len).sum();
        let mut best: Option<(usize, usize, i32)> = None;
        for (ri, r) in rels.iter().enumerate() {
            let mut count: HashMap<u32, usize> = HashMap::new();
            for g in r {
                *count.entry(g.unsigned_abs()).or_default() += 1;
            }
            for (pos, &g) in r.iter().enumerate() {
                if count[&g.unsigned_abs()] == 1 && best.map_or(true, |(bi, _, _)| rels[bi].len() > r.len()) {
                    best = Some((ri, pos, g));
                }
            }
        }
        let Some((ri, pos, g)) = best else { break };
        // r = a g b  =>  g = a^-1 b^-1 (for g > 0), g^-1 = b a (for g < 0 read accordingly).
        let r = rels[ri].clone();
        let (a, b) = (&r[..pos], &r[pos + 1..]);
        let value: Word = if g > 0 {
            [inverse(a), inverse(b)].concat()
        } else {
            [b.to_vec(), a.to_vec()].concat()
        };
        let x = g.unsigned_abs() as i32;
        let substituted: Vec<Word> = rels
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != ri)
            .map(|(_, w)| {
                let mut out = Vec::new();
                for &h in w {
                    if h == x {
                        out.extend_from_slice(&value);
                    } else if h == -x {
                        out.extend(inverse(&value));
                    } else {
                        out.push(h);
                    }
                }
                free_reduce(&out)
            })
            .collect();
        let new_total: usize = substituted.iter().map(Vec::len).sum();
        if new_total > 4 * total + 64 {
            break;
        }
        gens[x as usize - 1] = None;
        rels = substituted;
    }
    // Renumber surviving generators.
    let mut new_index = vec![0i32; gens.len()];
    let mut names = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if let Some(name) = g {
            names.push(name.clone());
            new_index[i] = names.len() as i32;
        }
    }
    let relators = tidy(&rels)
        .into_iter()
        .map(|w| w.iter().map(|&g| new_index[g.unsigned_abs() as usize - 1] * g.signum()).collect())
        .collect();
    GroupPresentation { generators: names, relators }
}

fn tidy(rels: &[Word]) -> Vec<Word> {
    let mut out: Vec<Word> = Vec::new();
    for r in rels {
        let r = cyclic_reduce(r);
        if !r.is_empty() && !out.contains(&r) && !out.contains(&inverse(&r)) {
            out.push(r);
        }
    }
    out
}

/// A permutation group given by its elements (each a permutation of `0..d`).
pub fn symmetric_group(d: usize) -> Vec<Vec<usize>> {
    let mut all = vec![vec![]];
    for k in 0..d {
        all = all
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, k);
                    q
                })
            })
            .collect();
    }
    all.sort();
    all
}

/// Number of homomorphisms from the presented group to the finite
/// permutation group `group`, by backtracking over generator images.
pub fn count_homomorphisms(p: &GroupPresentation, group: &[Vec<usize>]) -> u64 {
    let d = group.first().map_or(0, Vec::len);
    let identity: Vec<usize> = (0..d).collect();
    let inv = |x: &[usize]| {
        let mut y = vec![0; d];
        for (i, &v) in x.iter().enumerate() {
            y[v] = i;
        }
        y
    };
    let n = p.generators.len();
    // Check each relator as soon as its largest generator is assigned.
    let mut due: Vec<Vec<&Word>> = vec![Vec::new(); n];
    for r in &p.relators {
        if let Some(m) = r.iter().map(|g| g.unsigned_abs() as usize - 1).max() {
            due[m].push(r);
        }
    }
    let images: Vec<(Vec<usize>, Vec<usize>)> = group.iter().map(|g| (g.clone(), inv(g))).collect();
    let mut assignment: Vec<usize> = vec![0; n];
    fn go(
        k: usize,
        assignment: &mut Vec<usize>,
        images: &[(Vec<usize>, Vec<usize>)],
        due: &[Vec<&Word>],
        identity: &[usize],
    ) -> u64 {
        if k == assignment.len() {
            return 1;
        }
        let mut total = 0;
        for e in 0..images.len() {
            assignment[k] = e;
            let ok = due[k].iter().all(|r| {
                let mut x = identity.to_vec();
                for &g in r.iter() {
                    let (f, fi) = &images[assignment[g.unsigned_abs() as usize - 1]];
                    let m = if g > 0 { f } else { fi };
                    x = x.iter().map(|&i| m[i]).collect();
                }
                x == identity
            });
            if ok {
                total += go(k + 1, assignment, images, due, identity);
            }
        }
        total
    }
    go(0, &mut assignment, &images, &due, &identity)
}

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use toric_core::{ArrangementSpec, HomologyGroup, Window, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub arrangement: SpecEcho,
    pub window: WindowEcho,
    pub result: Payload,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecEcho {
    pub rank: usize,
    pub hypersurfaces: Vec<HypersurfaceEcho>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypersurfaceEcho {
    pub chi: Vec<i64>,
    pub q: String,
}

impl SpecEcho {
    pub fn of(spec: &ArrangementSpec) -> Self {
        SpecEcho {
            rank: spec.rank(),
            hypersurfaces: spec
                .hypersurfaces()
                .iter()
                .map(|h| HypersurfaceEcho { chi: h.character.exponents().to_vec(), q: h.angle.value().to_string() })
                .collect(),
        }
    }
}

/// The box `[lo, hi]`, with `k` when it is the cube `[-k, k + 1]^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEcho {
    pub k: u32,
    pub lo: Vec<String>,
    pub hi: Vec<String>,
}

impl WindowEcho {
    pub fn of(w: &Window, k: u32) -> Self {
        WindowEcho {
            k,
            lo: w.lo().iter().map(|x| x.to_string()).collect(),
            hi: w.hi().iter().map(|x| x.to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEcho {
    pub dim: usize,
    pub barycenter: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerEcho {
    pub dim: usize,
    pub normals: Vec<Vec<i64>>,
    pub offsets: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Payload {
    Validate {
        essential: bool,
        character_rank: usize,
    },
    Faces {
        census: Vec<usize>,
        morphisms: usize,
        euler_characteristic: i64,
        thick: bool,
        nerve_chains: Vec<usize>,
        orbits: Vec<OrbitEcho>,
    },
    Layers {
        census: Vec<usize>,
        layers: Vec<LayerEcho>,
        relations: Vec<(usize, usize)>,
    },
    Salvetti {
        objects_by_codim: Vec<usize>,
        morphisms: usize,
        euler_characteristic: i64,
        thick: bool,
        poset: bool,
        nerve_chains: Vec<usize>,
    },
    Homology {
        space: String,
        groups: Vec<HomologyGroup>,
    },
    Pi1 {
        simplified: bool,
        generators: Vec<String>,
        relators: Vec<Word>,
        abelianization: HomologyGroup,
    },
    Check {
        passed: bool,
        checks: Vec<CheckItem>,
    },
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn word(generators: &[String], w: &[i32]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = w
        .iter()
        .map(|&x| {
            let g = &generators[x.unsigned_abs() as usize - 1];
            if x > 0 {
                g.clone()
            } else {
                format!("{g}^-1")
            }
        })
        .collect();
    parts.join(" ")
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let a = &self.arrangement;
        let hs: Vec<String> = a.hypersurfaces.iter().map(|h| format!("({:?}, {})", h.chi, h.q)).collect();
        let _ = writeln!(s, "arrangement: rank {} {{{}}}", a.rank, hs.join(", "));
        let sides: Vec<String> =
            self.window.lo.iter().zip(&self.window.hi).map(|(lo, hi)| format!("[{lo}, {hi}]")).collect();
        let _ = writeln!(s, "window: {} (k = {})", sides.join(" x "), self.window.k);
        match &self.result {
            Payload::Validate { essential, character_rank } => {
                let _ = writeln!(s, "essential: {essential} (character rank {character_rank})");
            }
            Payload::Faces { census, morphisms, euler_characteristic, thick, nerve_chains, orbits } => {
                let _ = writeln!(s, "faces by dimension: {}", list(census));
                let _ = writeln!(s, "morphisms: {morphisms}");
                let _ = writeln!(s, "euler characteristic: {euler_characteristic}");
                let _ = writeln!(s, "thick: {thick}");
                let _ = writeln!(s, "nerve chains: {}", list(nerve_chains));
                for (i, o) in orbits.iter().enumerate() {
                    let _ = writeln!(s, "  orbit {i}: dim {} at ({})", o.dim, list(&o.barycenter));
                }
            }
            Payload::Layers { census, layers, relations } => {
                let _ = writeln!(s, "layers by dimension: {}", list(census));
                for (i, l) in layers.iter().enumerate() {
                    let eqs: Vec<String> =
                        l.normals.iter().zip(&l.offsets).map(|(a, c)| format!("<{a:?}, x> = {c}")).collect();
                    let eqs = if eqs.is_empty() { "whole torus".to_string() } else { eqs.join(", ") };
                    let _ = writeln!(s, "  layer {i}: dim {}, {eqs}", l.dim);
                }
                let rel: Vec<String> = relations.iter().map(|(a, b)| format!("{a}<{b}")).collect();
                let _ = writeln!(s, "relations: {}", rel.join(" "));
            }
            Payload::Salvetti { objects_by_codim, morphisms, euler_characteristic, thick, poset, nerve_chains } => {
                let _ = writeln!(s, "objects by codimension: {}", list(objects_by_codim));
                let _ = writeln!(s, "morphisms: {morphisms}");
                let _ = writeln!(s, "euler characteristic: {euler_characteristic}");
                let _ = writeln!(s, "thick: {thick}");
                let _ = writeln!(s, "poset: {poset}");
                let _ = writeln!(s, "nerve chains: {}", list(nerve_chains));
            }
            Payload::Homology { space, groups } => {
                let _ = writeln!(s, "homology of the {space} nerve:");
                for (k, g) in groups.iter().enumerate() {
                    let _ = writeln!(s, "  H_{k} = {g}");
                }
            }
            Payload::Pi1 { simplified, generators, relators, abelianization } => {
                let tag = if *simplified { " (simplified)" } else { "" };
                let _ = writeln!(s, "generators{tag}: {}", generators.join(", "));
                let _ = writeln!(s, "relators: {}", relators.len());
                for r in relators {
                    let _ = writeln!(s, "  {}", word(generators, r));
                }
                let _ = writeln!(s, "abelianization: {abelianization}");
            }
            Payload::Check { passed, checks } => {
                for c in checks {
                    let mark = if c.passed { "ok  " } else { "FAIL" };
                    if c.detail.is_empty() {
                        let _ = writeln!(s, "  {mark} {}", c.name);
                    } else {
                        let _ = writeln!(s, "  {mark} {}: {}", c.name, c.detail);
                    }
                }
                let _ = writeln!(s, "verdict: {}", if *passed { "all checks passed" } else { "violations found" });
            }
        }
        s
    }
}

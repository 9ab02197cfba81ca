//! Complexified toric arrangements and their periodic lift to `R^n`.
//!
//! A hypersurface `{ x : x^alpha = e^{2 pi i q} }` of the complex torus is
//! stored as an integer exponent vector `alpha` and a rational angle `q` in
//! `[0, 1)`. Under the universal cover `R^n -> (S^1)^n` its trace on the compact
//! torus pulls back to the parallel family `<alpha, x> = q + k`, `k in Z`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exact::{dot_int, hnf, integer_kernel, rat, solve_affine, IntMatrix, Rational};

/// Exponent vector of a Laurent monomial character.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character(Vec<i64>);

impl Character {
    pub fn new(alpha: Vec<i64>) -> Result<Self> {
        if alpha.iter().all(|&a| a == 0) {
            return Err(Error::Spec("character vector must be nonzero".into()));
        }
        Ok(Character(alpha))
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }
}

/// Rational angle `q in [0, 1)` standing for the unit complex number `e^{2 pi i q}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(Rational);

impl Angle {
    pub fn new(q: Rational) -> Result<Self> {
        if q.is_negative() || q >= rat(1) {
            return Err(Error::Spec(format!("angle {q} is outside [0, 1)")));
        }
        Ok(Angle(q))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let q = Rational::from_str(s.trim())
            .map_err(|_| Error::Spec(format!("cannot parse angle {s:?} as a rational p/r")))?;
        Angle::new(q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypersurface {
    pub character: Character,
    pub angle: Angle,
}

/// A complexified toric arrangement on `(C^*)^rank`.
///
/// `rank` is positive for parsed input; restriction to the zero sublattice is
/// the one place a rank-0 arrangement appears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementSpec {
    rank: usize,
    hypersurfaces: Vec<Hypersurface>,
}

impl ArrangementSpec {
    pub fn new(rank: usize, hypersurfaces: Vec<Hypersurface>) -> Result<Self> {
        for (i, h) in hypersurfaces.iter().enumerate() {
            if h.character.0.len() != rank {
                return Err(Error::Spec(format!(
                    "hypersurface {i}: character has length {} but rank is {rank}",
                    h.character.0.len()
                )));
            }
            if hypersurfaces[..i].contains(h) {
                return Err(Error::Spec(format!("hypersurface {i} duplicates an earlier pair")));
            }
        }
        Ok(ArrangementSpec { rank, hypersurfaces })
    }

    /// Convenience constructor from `(alpha, "p/r")` pairs.
    pub fn from_pairs(rank: usize, pairs: &[(&[i64], &str)]) -> Result<Self> {
        let hs = pairs
            .iter()
            .map(|(a, q)| {
                Ok(Hypersurface { character: Character::new(a.to_vec())?, angle: q.parse()? })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rank, hs)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn hypersurfaces(&self) -> &[Hypersurface] {
        &self.hypersurfaces
    }

    pub fn is_empty(&self) -> bool {
        self.hypersurfaces.is_empty()
    }

    pub fn character_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.hypersurfaces.len(), self.rank);
        for (i, h) in self.hypersurfaces.iter().enumerate() {
            for (j, a) in h.character.0.iter().enumerate() {
                m[(i, j)] = BigInt::from(*a);
            }
        }
        m
    }

    /// Rank of the subgroup of the character lattice generated by the characters.
    pub fn character_rank(&self) -> usize {
        if self.hypersurfaces.is_empty() {
            0
        } else {
            self.character_matrix().rank()
        }
    }
}

impl fmt::Display for ArrangementSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} {{", self.rank)?;
        for (i, h) in self.hypersurfaces.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({:?}, {})", h.character.0, h.angle.0)?;
        }
        write!(f, "}}")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    rank: usize,
    hypersurfaces: Vec<RawHypersurface>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypersurface {
    chi: Vec<i64>,
    q: RawAngle,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawAngle {
    Text(String),
    Int(i64),
}

/// Parses the JSON arrangement format
/// `{"rank": n, "hypersurfaces": [{"chi": [..], "q": "p/r"}, ..]}`.
pub fn parse_spec(text: &str) -> Result<ArrangementSpec> {
    let raw: RawSpec =
        serde_json::from_str(text).map_err(|e| Error::Spec(format!("malformed document: {e}")))?;
    if raw.rank == 0 {
        return Err(Error::Spec("rank must be positive".into()));
    }
    let hs = raw
        .hypersurfaces
        .into_iter()
        .map(|h| {
            let angle = match h.q {
                RawAngle::Text(s) => s.parse()?,
                RawAngle::Int(i) => Angle::new(rat(i))?,
            };
            Ok(Hypersurface { character: Character::new(h.chi)?, angle })
        })
        .collect::<Result<Vec<_>>>()?;
    ArrangementSpec::new(raw.rank, hs)
}

/// Essential means the characters span a finite-index sublattice, so that the
/// minimal layers are points.
pub fn is_essential(spec: &ArrangementSpec) -> bool {
    spec.character_rank() == spec.rank
}

/// The saturation `{ chi : k chi in <characters> for some k != 0 }` together
/// with the arrangement rewritten on it. The basis rows are in Hermite normal
/// form; an essential input returns itself and the identity basis.
pub fn essentialize(spec: &ArrangementSpec) -> (ArrangementSpec, IntMatrix) {
    if is_essential(spec) {
        return (spec.clone(), IntMatrix::identity(spec.rank));
    }
    let n = spec.rank;
    let basis = if spec.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        let orthogonal = integer_kernel(&spec.character_matrix());
        let sat = if orthogonal.rows() == 0 { IntMatrix::identity(n) } else { integer_kernel(&orthogonal) };
        nonzero_hnf_rows(&sat)
    };
    (restrict(spec, &basis), basis)
}

fn nonzero_hnf_rows(m: &IntMatrix) -> IntMatrix {
    if m.rows() == 0 {
        return m.clone();
    }
    let (h, _) = hnf(m);
    let rows: Vec<Vec<BigInt>> =
        (0..h.rows()).map(|i| h.row(i).to_vec()).filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    if rows.is_empty() {
        IntMatrix::zeros(0, m.cols())
    } else {
        IntMatrix::from_rows(&rows)
    }
}

/// Sub-arrangement of the pairs whose character lies in the subgroup generated
/// by the rows of `gamma`, written in the coordinates of the Hermite basis of
/// that subgroup.
pub fn restrict(spec: &ArrangementSpec, gamma: &IntMatrix) -> ArrangementSpec {
    assert_eq!(gamma.cols(), spec.rank, "gamma rows must live in Z^rank");
    let basis = nonzero_hnf_rows(gamma);
    let r = basis.rows();
    // columns of basis^T: solve basis^T y = chi
    let bt: Vec<Vec<Rational>> = (0..spec.rank)
        .map(|j| (0..r).map(|i| Rational::from_integer(basis[(i, j)].clone())).collect())
        .collect();
    let hypersurfaces = spec
        .hypersurfaces
        .iter()
        .filter_map(|h| {
            let chi: Vec<Rational> = h.character.0.iter().map(|&a| rat(a)).collect();
            let sol = solve_affine(&bt, &chi, r)?;
            debug_assert!(sol.kernel.is_empty());
            let coords: Option<Vec<i64>> = sol
                .particular
                .iter()
                .map(|y| if y.is_integer() { y.to_integer().to_i64() } else { None })
                .collect();
            Some(Hypersurface { character: Character(coords?), angle: h.angle.clone() })
        })
        .collect();
    ArrangementSpec { rank: r, hypersurfaces }
}

/// One hyperplane `<alpha, x> = c` of the periodic lift, with `c = q + shift`
/// for the angle `q` of hypersurface `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineHyperplane {
    pub alpha: Vec<i64>,
    pub c: Rational,
    pub source: usize,
    pub shift: i64,
}

impl AffineHyperplane {
    /// Signed position of a point relative to the hyperplane.
    pub fn side(&self, x: &[Rational]) -> Rational {
        dot_int(&self.alpha, x) - &self.c
    }
}

/// Closed box `[lo, hi]` truncating the periodic lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

impl Window {
    pub fn new(lo: Vec<Rational>, hi: Vec<Rational>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::Argument("window bounds differ in length".into()));
        }
        for (l, h) in lo.iter().zip(&hi) {
            if l >= h {
                return Err(Error::Argument(format!("empty window side [{l}, {h}]")));
            }
            if *l > rat(0) || *h < rat(1) {
                return Err(Error::Argument("window must contain the unit cube".into()));
            }
        }
        Ok(Window { lo, hi })
    }

    /// The cube `[-k, k + 1]^n`.
    pub fn cube(n: usize, k: u32) -> Self {
        let k = i64::from(k);
        Window { lo: vec![rat(-k); n], hi: vec![rat(k + 1); n] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[Rational] {
        &self.lo
    }

    pub fn hi(&self) -> &[Rational] {
        &self.hi
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.iter().zip(&self.lo).zip(&self.hi).all(|((xi, l), h)| xi >= l && xi <= h)
    }

    /// Range of `<alpha, x>` over the box.
    pub fn range_of(&self, alpha: &[i64]) -> (Rational, Rational) {
        let mut min = Rational::zero();
        let mut max = Rational::zero();
        for ((a, l), h) in alpha.iter().zip(&self.lo).zip(&self.hi) {
            let a = BigInt::from(*a);
            let (x, y) = (l * &a, h * &a);
            if x <= y {
                min += x;
                max += y;
            } else {
                min += y;
                max += x;
            }
        }
        (min, max)
    }
}

/// The hyperplanes `<alpha, x> = q + k` of the lift that meet the window,
/// ordered by source hypersurface and then by `k`.
pub fn lift_to_window(spec: &ArrangementSpec, w: &Window) -> Vec<AffineHyperplane> {
    assert_eq!(w.dim(), spec.rank, "window dimension differs from arrangement rank");
    let mut out = Vec::new();
    for (source, h) in spec.hypersurfaces.iter().enumerate() {
        let alpha = h.character.0.clone();
        let q = h.angle.value();
        let (min, max) = w.range_of(&alpha);
        let k_lo = (min - q).ceil().to_integer();
        let k_hi = (max - q).floor().to_integer();
        let mut k = k_lo;
        while k <= k_hi {
            let shift = k.to_i64().expect("shift fits in i64");
            out.push(AffineHyperplane {
                alpha: alpha.clone(),
                c: q + Rational::from_integer(k.clone()),
                source,
                shift,
            });
            k += 1;
        }
    }
    out
}

/// Primitive, sign-normalised form of a hyperplane: two hyperplanes are equal
/// as point sets iff their keys agree.
pub fn hyperplane_key(alpha: &[i64], c: &Rational) -> (Vec<i64>, Rational) {
    let g = alpha.iter().fold(0i64, |g, &a| g.gcd(&a));
    let lead = alpha.iter().find(|&&a| a != 0).copied().unwrap_or(1);
    let g = if lead < 0 { -g } else { g };
    (alpha.iter().map(|a| a / g).collect(), c / rat(g))
}

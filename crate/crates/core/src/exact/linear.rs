use num_traits::{One, Signed, Zero};

use super::Rational;

/// Exact solution set `particular + span(kernel)` of a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

/// Reduced row echelon form of `rows` in place; returns pivot columns.
fn rref(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (pivot_row, other) = if i < r {
                    let (lo, hi) = rows.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = rows.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in other.iter_mut().zip(pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over Q of a list of rows.
pub fn rational_rank(rows: &[Vec<Rational>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Solves `a x = b` exactly. `cols` is the number of unknowns, needed when `a`
/// has no rows. Returns `None` when the system is inconsistent.
pub fn solve_affine(a: &[Vec<Rational>], b: &[Rational], cols: usize) -> Option<AffineSolution> {
    assert_eq!(a.len(), b.len());
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            assert_eq!(row.len(), cols);
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut particular = vec![Rational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[r][cols].clone();
    }
    let kernel = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[r][free].clone();
            }
            v
        })
        .collect();
    Some(AffineSolution { particular, kernel })
}

/// A constraint `coeffs . x >= rhs`.
type Ineq = (Vec<Rational>, Rational);

/// Finds a point with `e.0 . x = e.1` for all `eqs` and `i.0 . x >= i.1` for all
/// `ineqs`, or `None` if there is none. Equalities are eliminated by
/// parametrising their solution space; the remaining inequalities go through
/// Fourier-Motzkin elimination with back substitution.
pub fn feasible_point(cols: usize, eqs: &[Ineq], ineqs: &[Ineq]) -> Option<Vec<Rational>> {
    let a: Vec<Vec<Rational>> = eqs.iter().map(|e| e.0.clone()).collect();
    let b: Vec<Rational> = eqs.iter().map(|e| e.1.clone()).collect();
    let sol = solve_affine(&a, &b, cols)?;
    let free = sol.kernel.len();

    // substitute x = p + K t
    let mut system: Vec<Ineq> = ineqs
        .iter()
        .map(|(c, rhs)| {
            let coeffs: Vec<Rational> =
                sol.kernel.iter().map(|k| dot(c, k)).collect();
            (coeffs, rhs - dot(c, &sol.particular))
        })
        .collect();

    let mut stages = Vec::with_capacity(free);
    for var in 0..free {
        stages.push(system.clone());
        system = eliminate(&system, var);
    }
    if system.iter().any(|(_, rhs)| rhs.is_positive()) {
        return None;
    }

    let mut t = vec![Rational::zero(); free];
    for var in (0..free).rev() {
        let mut lower: Option<Rational> = None;
        let mut upper: Option<Rational> = None;
        for (c, rhs) in &stages[var] {
            let cv = &c[var];
            if cv.is_zero() {
                continue;
            }
            let rest: Rational = (var + 1..free).map(|j| &c[j] * &t[j]).sum();
            let bound = (rhs - rest) / cv;
            if cv.is_positive() {
                if lower.as_ref().map_or(true, |l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().map_or(true, |u| bound < *u) {
                upper = Some(bound);
            }
        }
        t[var] = match (lower, upper) {
            (Some(l), Some(u)) => (l + u) / Rational::from_integer(2.into()),
            (Some(l), None) => l,
            (None, Some(u)) => u,
            (None, None) => Rational::zero(),
        };
    }

    let mut x = sol.particular.clone();
    for (k, tk) in sol.kernel.iter().zip(&t) {
        for (xi, ki) in x.iter_mut().zip(k) {
            *xi += ki * tk;
        }
    }
    Some(x)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn eliminate(system: &[Ineq], var: usize) -> Vec<Ineq> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out: Vec<Ineq> = Vec::new();
    for ineq in system {
        let c = &ineq.0[var];
        if c.is_positive() {
            pos.push(ineq);
        } else if c.is_negative() {
            neg.push(ineq);
        } else {
            out.push(ineq.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            // scale so the coefficients of `var` cancel
            let fp = -q.0[var].clone();
            let fq = p.0[var].clone();
            let coeffs: Vec<Rational> =
                p.0.iter().zip(&q.0).map(|(a, b)| a * &fp + b * &fq).collect();
            let rhs = &p.1 * &fp + &q.1 * &fq;
            out.push(normalise((coeffs, rhs)));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    out.dedup();
    out
}

/// Scales a constraint so that its first nonzero coefficient has absolute value one.
fn normalise((c, rhs): Ineq) -> Ineq {
    match c.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let s = lead.abs();
            (c.iter().map(|x| x / &s).collect(), rhs / s)
        }
        None => (c, rhs),
    }
}

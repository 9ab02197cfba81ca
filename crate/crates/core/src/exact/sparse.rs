use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::{normalise_divisibility, snf_diagonal, IntMatrix};

/// Sparse integer matrix used for nerve boundary operators, which are large
/// and have entries in {-1, 0, 1} for the most part.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, BigInt>>,
}

/// Rank and invariant factors of a sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSmith {
    pub rank: usize,
    /// All nonzero invariant factors in divisibility order (leading ones included).
    pub invariant_factors: Vec<BigInt>,
}

impl SparseSmith {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn divisibility_holds(&self) -> bool {
        self.invariant_factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: vec![BTreeMap::new(); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols);
        let e = self.entries[r].entry(c).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            self.entries[r].remove(&c);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries[r].get(&c).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn row_entries(&self, r: usize) -> impl Iterator<Item = (usize, &BigInt)> {
        self.entries[r].iter().map(|(c, v)| (*c, v))
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (r, row) in self.entries.iter().enumerate() {
            for (c, v) in row {
                m[(r, *c)] = v.clone();
            }
        }
        m
    }

    /// `self * other`
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = SparseIntMatrix::new(self.rows, other.cols);
        for (r, row) in self.entries.iter().enumerate() {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (k, a) in row {
                for (c, b) in &other.entries[*k] {
                    *acc.entry(*c).or_insert_with(BigInt::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.entries[r] = acc;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }

    /// Invariant factors via unit-pivot elimination followed by a dense Smith
    /// reduction of whatever block is left.
    pub fn smith(&self) -> SparseSmith {
        let mut rows = self.entries.clone();
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); self.cols];
        for (r, row) in rows.iter().enumerate() {
            for c in row.keys() {
                col_rows[*c].insert(r);
            }
        }
        let mut units = 0usize;
        loop {
            // Markowitz-style choice among unit entries
            let mut best: Option<(usize, usize, usize)> = None;
            'scan: for (r, row) in rows.iter().enumerate() {
                for (c, v) in row {
                    if !v.abs().is_one() {
                        continue;
                    }
                    let cost = (row.len() - 1) * (col_rows[*c].len() - 1);
                    if best.map_or(true, |b| cost < b.2) {
                        best = Some((r, *c, cost));
                        if cost == 0 {
                            break 'scan;
                        }
                    }
                }
            }
            let Some((pr, pc, _)) = best else { break };
            let pivot_row = std::mem::take(&mut rows[pr]);
            let p = pivot_row[&pc].clone();
            for c in pivot_row.keys() {
                col_rows[*c].remove(&pr);
            }
            let others: Vec<usize> = col_rows[pc].iter().copied().collect();
            for i in others {
                let f = &rows[i][&pc] * &p;
                for (c, v) in &pivot_row {
                    let e = rows[i].entry(*c).or_insert_with(BigInt::zero);
                    let was_zero = e.is_zero();
                    *e -= &f * v;
                    if e.is_zero() {
                        rows[i].remove(c);
                        col_rows[*c].remove(&i);
                    } else if was_zero {
                        col_rows[*c].insert(i);
                    }
                }
            }
            units += 1;
        }

        let live_rows: Vec<usize> = (0..rows.len()).filter(|&r| !rows[r].is_empty()).collect();
        let live_cols: Vec<usize> = (0..self.cols).filter(|&c| !col_rows[c].is_empty()).collect();
        let mut factors = vec![BigInt::one(); units];
        if !live_rows.is_empty() {
            let col_pos: BTreeMap<usize, usize> =
                live_cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
            let mut dense = IntMatrix::zeros(live_rows.len(), live_cols.len());
            for (i, r) in live_rows.iter().enumerate() {
                for (c, v) in &rows[*r] {
                    dense[(i, col_pos[c])] = v.clone();
                }
            }
            factors.extend(normalise_divisibility(snf_diagonal(&mut dense)));
        }
        SparseSmith { rank: factors.len(), invariant_factors: factors }
    }
}

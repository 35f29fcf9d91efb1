//! Sparse integer matrices and exact rational elimination.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};

/// Square integer matrix stored by columns; each column lists its nonzero
/// `(row, value)` entries sorted by row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMatrix {
    dim: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

fn normalize(mut col: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix {
            dim,
            cols: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        SparseMatrix {
            dim,
            cols: (0..dim).map(|c| vec![(c, 1)]).collect(),
        }
    }

    pub fn from_columns(cols: Vec<Vec<(usize, i64)>>) -> Self {
        let dim = cols.len();
        SparseMatrix {
            dim,
            cols: cols.into_iter().map(normalize).collect(),
        }
    }

    /// Row-major dense input.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let mut cols = vec![Vec::new(); dim];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    cols[c].push((r, v));
                }
            }
        }
        SparseMatrix { dim, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![0; self.dim]; self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                rows[r][c] = v;
            }
        }
        rows
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.cols[c]
            .binary_search_by_key(&r, |e| e.0)
            .map(|k| self.cols[c][k].1)
            .unwrap_or(0)
    }

    pub fn set_column(&mut self, c: usize, col: Vec<(usize, i64)>) {
        self.cols[c] = normalize(col);
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut acc = Vec::new();
        for &(c, x) in v {
            acc.extend(self.cols[c].iter().map(|&(r, y)| (r, x * y)));
        }
        normalize(acc)
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            dim: self.dim,
            cols: other.cols.iter().map(|col| self.apply(col)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| normalize(a.iter().chain(b).copied().collect()))
                .collect(),
        }
    }

    pub fn scale(&self, k: i64) -> SparseMatrix {
        SparseMatrix {
            dim: self.dim,
            cols: self
                .cols
                .iter()
                .map(|col| normalize(col.iter().map(|&(r, v)| (r, k * v)).collect()))
                .collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                cols[r].push((c, v));
            }
        }
        SparseMatrix { dim: self.dim, cols }
    }

    /// The matrix induced on `indices` after dropping all other rows.
    pub fn restrict(&self, indices: &[usize]) -> SparseMatrix {
        let pos: BTreeMap<usize, usize> = indices.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        SparseMatrix {
            dim: indices.len(),
            cols: indices
                .iter()
                .map(|&c| {
                    self.cols[c]
                        .iter()
                        .filter_map(|&(r, v)| pos.get(&r).map(|&k| (k, v)))
                        .collect()
                })
                .collect(),
        }
    }

    /// Whether the span of `indices` is mapped into itself; returns the
    /// first offending column otherwise.
    pub fn preserves(&self, indices: &[usize]) -> Option<usize> {
        let mut inside = vec![false; self.dim];
        for &i in indices {
            inside[i] = true;
        }
        indices
            .iter()
            .copied()
            .find(|&c| self.cols[c].iter().any(|&(r, _)| !inside[r]))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }
}

/// Row echelon data of a sparse rational system built incrementally.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    /// Pivot rows in insertion order, each normalized to 1 at its pivot.
    rows: Vec<(usize, BTreeMap<usize, BigRational>)>,
    pivot_of: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            ..Default::default()
        }
    }

    /// Adds the equation `Σ coeff·x_col = 0`; returns whether the rank grew.
    pub fn push(&mut self, row: &[(usize, i64)]) -> bool {
        let mut r: BTreeMap<usize, BigRational> = BTreeMap::new();
        for &(c, v) in row {
            let e = r.entry(c).or_insert_with(BigRational::zero);
            *e += BigRational::from_integer(BigInt::from(v));
        }
        r.retain(|_, v| !v.is_zero());
        loop {
            let next = r
                .keys()
                .filter_map(|c| self.pivot_of.get(c).copied())
                .min();
            let Some(k) = next else { break };
            let (pc, prow) = &self.rows[k];
            let factor = r[pc].clone();
            for (c, v) in prow {
                let e = r.entry(*c).or_insert_with(BigRational::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    r.remove(c);
                }
            }
        }
        let Some((&pc, pv)) = r.iter().next() else {
            return false;
        };
        let inv = pv.recip();
        for v in r.values_mut() {
            *v *= &inv;
        }
        self.pivot_of.insert(pc, self.rows.len());
        self.rows.push((pc, r));
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// A basis of the solution space, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivot_of.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![BigRational::zero(); self.ncols];
                x[f] = BigRational::one();
                for (pc, row) in self.rows.iter().rev() {
                    let mut s = BigRational::zero();
                    for (c, v) in row {
                        if c != pc {
                            s -= v * &x[*c];
                        }
                    }
                    x[*pc] = s;
                }
                x
            })
            .collect()
    }
}

/// Rank of an integer matrix given by rows.
pub fn rank(rows: &[Vec<(usize, i64)>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for row in rows {
        e.push(row);
    }
    e.rank()
}

/// Clears denominators and content so that a rational vector becomes a
/// primitive integer vector with positive leading entry.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    use num::Integer;
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = ints.iter().find(|x| !x.is_zero()).map(|x| x.signum()).unwrap_or_else(BigInt::one);
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_match_dense() {
        let a = SparseMatrix::from_dense(&[vec![0, 1, 0], vec![0, 0, 0], vec![-1, 0, 2]]);
        let b = SparseMatrix::from_dense(&[vec![1, 0, 0], vec![3, 0, 1], vec![0, 0, -1]]);
        let dense = |x: &SparseMatrix| x.to_dense();
        let (da, db) = (dense(&a), dense(&b));
        let mut expect = vec![vec![0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                expect[i][j] = (0..3).map(|k| da[i][k] * db[k][j]).sum();
            }
        }
        assert_eq!(a.mul(&b).to_dense(), expect);
        assert_eq!(a.add(&a.scale(-1)), SparseMatrix::zero(3));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.get(2, 2), 2);
    }

    #[test]
    fn nullspace_solves_system() {
        let rows = vec![vec![(0, 1), (1, -1)], vec![(1, 2), (2, -2)], vec![(0, 1), (2, -1)]];
        let mut e = Echelon::new(4);
        for r in &rows {
            e.push(r);
        }
        assert_eq!(e.rank(), 2);
        let ns = e.nullspace();
        assert_eq!(ns.len(), 2);
        for x in &ns {
            for r in &rows {
                let s: BigRational = r
                    .iter()
                    .map(|&(c, v)| &x[c] * BigRational::from_integer(v.into()))
                    .sum();
                assert!(s.is_zero());
            }
        }
        assert_eq!(primitive(&ns[0]), vec![1.into(), 1.into(), 1.into(), 0.into()]);
    }

    #[test]
    fn restriction_and_invariance() {
        let m = SparseMatrix::from_columns(vec![vec![(1, 1)], vec![(1, -1)], vec![]]);
        assert_eq!(m.preserves(&[1, 2]), None);
        assert_eq!(m.preserves(&[0, 2]), Some(0));
        assert_eq!(m.restrict(&[0, 1]).to_dense(), vec![vec![0, 0], vec![1, -1]]);
    }
}

//! Dense exact linear algebra over a [`Scalar`] field.

use num_traits::Zero;

use crate::scalar::Scalar;

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution<S> {
    Unique(Vec<S>),
    /// Solvable, but the kernel is nontrivial. Carries one particular solution.
    Many(Vec<S>),
    Inconsistent,
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot columns.
pub fn rref<S: Scalar>(m: &mut [Vec<S>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x = x.clone() - &(f.clone() * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(m: &[Vec<S>]) -> usize {
    let mut work = m.to_vec();
    rref(&mut work).len()
}

/// A basis of `{x : A x = 0}`.
pub fn nullspace<S: Scalar>(m: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let mut work = m.to_vec();
    let pivots = rref(&mut work);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![S::zero(); cols];
        v[free] = S::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Solution<S> {
    let cols = a.first().map_or(0, Vec::len);
    Solver::new(a.to_vec(), cols).solve(b)
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let solver = Solver::new(m.to_vec(), n);
    if solver.rank() < n {
        return None;
    }
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![S::zero(); n];
        e[j] = S::one();
        match solver.solve(&e) {
            Solution::Unique(x) => cols.push(x),
            _ => return None,
        }
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub fn mat_mul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = S::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = acc + &(row[k].clone() * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<S: Scalar>(a: &[Vec<S>], v: &[S]) -> Vec<S> {
    a.iter()
        .map(|row| {
            let mut acc = S::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc = acc + &(x.clone() * y);
                }
            }
            acc
        })
        .collect()
}

pub fn identity<S: Scalar>(n: usize) -> Vec<Vec<S>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect()
}

/// Determinant of a square scalar matrix by Gaussian elimination.
pub fn det<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    let mut a = m.to_vec();
    let mut acc = S::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else { return S::zero() };
        if p != c {
            a.swap(p, c);
            acc = -acc;
        }
        acc = acc * &a[c][c];
        let inv = a[c][c].inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() * &inv;
            for j in c..n {
                if !a[c][j].is_zero() {
                    let t = f.clone() * &a[c][j];
                    a[i][j] = a[i][j].clone() - &t;
                }
            }
        }
    }
    acc
}

/// Factorisation `E·A = rref(A)` kept around so many right-hand sides can be
/// solved against the same coefficient matrix.
#[derive(Clone, Debug)]
pub struct Solver<S> {
    transform: Vec<Vec<S>>,
    pivots: Vec<usize>,
    cols: usize,
}

impl<S: Scalar> Solver<S> {
    pub fn new(a: Vec<Vec<S>>, cols: usize) -> Self {
        let rows = a.len();
        let mut aug: Vec<Vec<S>> = a
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                debug_assert_eq!(row.len(), cols);
                row.extend((0..rows).map(|j| if i == j { S::one() } else { S::zero() }));
                row
            })
            .collect();
        // Pivot only on the original columns.
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else { continue };
            aug.swap(r, p);
            let inv = aug[r][c].inv().expect("nonzero pivot");
            for x in aug[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() * &inv;
                }
            }
            let pivot_row = aug[r].clone();
            for (i, row) in aug.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !y.is_zero() {
                        *x = x.clone() - &(f.clone() * y);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let transform = aug.into_iter().map(|row| row[cols..].to_vec()).collect();
        Solver { transform, pivots, cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn solve(&self, b: &[S]) -> Solution<S> {
        let y = mat_vec(&self.transform, b);
        if y[self.pivots.len()..].iter().any(|v| !v.is_zero()) {
            return Solution::Inconsistent;
        }
        let mut x = vec![S::zero(); self.cols];
        for (r, &c) in self.pivots.iter().enumerate() {
            x[c] = y[r].clone();
        }
        if self.pivots.len() == self.cols {
            Solution::Unique(x)
        } else {
            Solution::Many(x)
        }
    }
}

/// Row-echelon basis grown one vector at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon<S> {
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<S>) -> Vec<S> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.clone() - &(f.clone() * y);
                }
            }
        }
        v
    }

    /// Adds `v` if it is independent of the vectors seen so far.
    pub fn insert(&mut self, v: Vec<S>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().expect("nonzero");
        let v: Vec<S> = v.into_iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x = x.clone() - &(f.clone() * y);
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }
}

//! Small dense exact-rational linear algebra: matrices, solves, kernels.
//!
//! Dimensions here are tiny (at most the ambient dimension of a root system
//! or the size of a low-set), so plain Gaussian elimination with exact pivots
//! is the right tool.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::vector::RatVec;
use crate::{Error, Result};

/// Dense rational matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigRational>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        RatMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn apply(&self, v: &RatVec) -> RatVec {
        assert_eq!(self.cols, v.dim());
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut s = BigRational::zero();
            for j in 0..self.cols {
                s += &self[(i, j)] * &v[j];
            }
            out.push(s);
        }
        RatVec(out)
    }

    pub fn matmul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMat {
        let mut out = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = m.rows;
        let mut det = BigRational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero());
            let Some(pivot) = pivot else { return BigRational::zero() };
            if pivot != col {
                m.swap_rows(pivot, col);
                det = -det;
            }
            let p = m[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                let factor = &m[(r, col)] / &p;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let t = &factor * &m[(col, c)];
                    m[(r, c)] -= t;
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Solve `A x = b` exactly for square nonsingular `A`.
pub fn solve(a: &RatMat, b: &[BigRational]) -> Result<Vec<BigRational>> {
    assert_eq!(a.rows, a.cols);
    assert_eq!(a.rows, b.len());
    let n = a.rows;
    let mut m = a.clone();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[(r, col)].is_zero())
            .ok_or(Error::SingularGram)?;
        m.swap_rows(pivot, col);
        rhs.swap(pivot, col);
        let p = m[(col, col)].clone();
        for r in 0..n {
            if r == col || m[(r, col)].is_zero() {
                continue;
            }
            let factor = &m[(r, col)] / &p;
            for c in col..n {
                let t = &factor * &m[(col, c)];
                m[(r, c)] -= t;
            }
            let t = &factor * &rhs[col];
            rhs[r] -= t;
        }
    }
    for i in 0..n {
        rhs[i] /= &m[(i, i)];
    }
    Ok(rhs)
}

/// Solve a possibly overdetermined consistent system `A x = b` where the
/// columns of `A` are linearly independent. Returns `None` if inconsistent.
pub fn solve_consistent(a: &RatMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    // Normal equations stay exact over the rationals and the Gram matrix of
    // independent columns is nonsingular.
    let at = a.transpose();
    let gram = at.matmul(a);
    let rhs = at.apply(&RatVec(b.to_vec()));
    let x = solve(&gram, &rhs.0).ok()?;
    // Verify consistency.
    let ax = a.apply(&RatVec(x.clone()));
    if ax.0.iter().zip(b).all(|(l, r)| l == r) {
        Some(x)
    } else {
        None
    }
}

/// Kernel basis of `A` (exact), as vectors of length `A.cols`.
pub fn kernel(a: &RatMat) -> Vec<Vec<BigRational>> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivot_col_of_row = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(p, row);
        let pv = m[(row, col)].clone();
        for r in 0..rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = &m[(r, col)] / &pv;
            for c in col..cols {
                let t = &factor * &m[(row, c)];
                m[(r, c)] -= t;
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![BigRational::zero(); cols];
        v[fc] = BigRational::one();
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            // pivot row r: m[r,pc]*x_pc + ... + m[r,fc]*x_fc = 0
            v[pc] = -&m[(r, fc)] / &m[(r, pc)];
        }
        basis.push(v);
    }
    basis
}

/// Sign of a rational as -1, 0, 1.
pub fn sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

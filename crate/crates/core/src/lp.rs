//! Exact-rational linear programming by the two-phase simplex method.
//!
//! Problem sizes here are tiny (orbit hulls and separating-direction boxes),
//! so a dense tableau with Bland's rule is plenty. Everything is exact; no
//! feasibility tolerance exists anywhere in this module.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    m: usize,
    n: usize,
    a: Vec<Vec<BigRational>>,
    b: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.a[row][col].clone();
        for j in 0..self.n {
            self.a[row][j] /= &p;
        }
        self.b[row] /= &p;
        for i in 0..self.m {
            if i == row || self.a[i][col].is_zero() {
                continue;
            }
            let f = self.a[i][col].clone();
            for j in 0..self.n {
                let t = &f * &self.a[row][j];
                self.a[i][j] -= t;
            }
            let t = &f * &self.b[row];
            self.b[i] -= t;
        }
        self.basis[row] = col;
    }

    /// Minimize `c . x` from the current basic feasible point, Bland's rule.
    /// Returns false on unboundedness.
    fn run_simplex(&mut self, c: &[BigRational]) -> bool {
        loop {
            let mut duals = vec![BigRational::zero(); self.n];
            for (i, &bi) in self.basis.iter().enumerate() {
                if !c[bi].is_zero() {
                    for j in 0..self.n {
                        let t = &c[bi] * &self.a[i][j];
                        duals[j] += t;
                    }
                }
            }
            let entering = (0..self.n).find(|&j| {
                let reduced = &c[j] - &duals[j];
                reduced.is_negative()
            });
            let Some(col) = entering else { return true };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.m {
                if self.a[i][col].is_positive() {
                    let ratio = &self.b[i] / &self.a[i][col];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else { return false };
            self.pivot(row, col);
        }
    }

    fn objective(&self, c: &[BigRational]) -> BigRational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &j)| &c[j] * &self.b[i])
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    fn solution(&self, nvars: usize) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); nvars];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < nvars {
                x[j] = self.b[i].clone();
            }
        }
        x
    }
}

/// Minimize `c . x` subject to `A x = b`, `x >= 0`.
pub fn minimize_eq(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert!(a.iter().all(|row| row.len() == n));
    assert_eq!(b.len(), m);

    // Phase I tableau with one artificial per row.
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<BigRational> = a[i].clone();
        let mut bi = b[i].clone();
        if bi.is_negative() {
            for v in &mut row {
                *v = -&*v;
            }
            bi = -bi;
        }
        row.extend((0..m).map(|k| {
            if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        rows.push(row);
        rhs.push(bi);
    }
    let mut t = Tableau { m, n: n + m, a: rows, b: rhs, basis: (n..n + m).collect() };
    let mut phase1 = vec![BigRational::zero(); n + m];
    for item in phase1.iter_mut().skip(n) {
        *item = BigRational::one();
    }
    if !t.run_simplex(&phase1) {
        unreachable!("phase-one objective is bounded below by zero");
    }
    if t.objective(&phase1).is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining zero-valued artificials out of the basis; a row whose
    // structural part is entirely zero is redundant and gets dropped.
    let mut keep = Vec::with_capacity(m);
    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(col) = (0..n).find(|&j| !t.a[i][j].is_zero()) {
                t.pivot(i, col);
                keep.push(i);
            }
        } else {
            keep.push(i);
        }
    }
    let mut a2 = Vec::with_capacity(keep.len());
    let mut b2 = Vec::with_capacity(keep.len());
    let mut basis2 = Vec::with_capacity(keep.len());
    for &i in &keep {
        let mut row = t.a[i].clone();
        row.truncate(n);
        a2.push(row);
        b2.push(t.b[i].clone());
        basis2.push(t.basis[i]);
    }
    let mut t = Tableau { m: keep.len(), n, a: a2, b: b2, basis: basis2 };
    if !t.run_simplex(c) {
        return LpOutcome::Unbounded;
    }
    let x = t.solution(n);
    let value = x
        .iter()
        .zip(c)
        .map(|(xi, ci)| xi * ci)
        .fold(BigRational::zero(), |acc, v| acc + v);
    LpOutcome::Optimal { x, value }
}

/// Existence of `x >= 0` with `A x = b`; returns one such point.
pub fn feasible_eq(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.first().map_or(0, Vec::len);
    let c = vec![BigRational::zero(); n];
    match minimize_eq(&c, a, b) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

/// Maximize `c . x` subject to `A x <= b`, `x >= 0` (slack form of the box
/// and orbit constraints used by the separating-functional search).
pub fn maximize_leq(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        let mut r = row.clone();
        r.extend((0..m).map(|k| {
            if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
        rows.push(r);
    }
    let mut cost = vec![BigRational::zero(); n + m];
    for (j, cj) in c.iter().enumerate() {
        cost[j] = -cj.clone();
    }
    match minimize_eq(&cost, &rows, b) {
        LpOutcome::Optimal { mut x, value } => {
            x.truncate(n);
            LpOutcome::Optimal { x, value: -value }
        }
        other => other,
    }
}

//! Weyl group enumeration.
//!
//! Elements are exact rational orthogonal matrices acting on the ambient
//! space, each carrying its determinant sign. Enumeration is breadth-first
//! over words in the simple reflections (generators applied in index order),
//! so the element list is deterministic: word length first, then the
//! lexicographically smallest producing word.

use std::collections::{HashMap, VecDeque};

use crate::linalg::RatMat;
use crate::rootsys::RootSystem;
use crate::vector::RatVec;
use crate::{Error, Result};

/// Default ceiling on the enumerated group order; E7/E8-scale groups need it
/// raised explicitly.
pub const DEFAULT_ORDER_BOUND: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub matrix: RatMat,
    /// Determinant sign: +1 or -1, multiplicative along words.
    pub sign: i32,
}

impl WeylElement {
    pub fn identity(dim: usize) -> Self {
        WeylElement { matrix: RatMat::identity(dim), sign: 1 }
    }

    pub fn apply(&self, v: &RatVec) -> RatVec {
        self.matrix.apply(v)
    }

    pub fn apply_f64(&self, v: &[f64]) -> Vec<f64> {
        let n = self.matrix.rows;
        let mut out = vec![0.0; n];
        for (i, o) in out.iter_mut().enumerate() {
            let mut s = 0.0;
            for (j, x) in v.iter().enumerate() {
                s += crate::ratio::to_f64(&self.matrix[(i, j)]) * x;
            }
            *o = s;
        }
        out
    }

    /// `self . other` as maps (apply `other` first).
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: self.matrix.matmul(&other.matrix),
            sign: self.sign * other.sign,
        }
    }

    pub fn inverse(&self) -> WeylElement {
        // Orthogonal over the rationals: inverse is the transpose.
        WeylElement { matrix: self.matrix.transpose(), sign: self.sign }
    }
}

#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    /// Cached f64 copies of the element matrices, for evaluation loops.
    mats_f64: Vec<Vec<f64>>,
    dim: usize,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Apply element `idx` to a float vector (hot path for evaluators).
    pub fn apply_f64(&self, idx: usize, v: &[f64], out: &mut [f64]) {
        let m = &self.mats_f64[idx];
        let n = self.dim;
        for i in 0..n {
            let row = &m[i * n..(i + 1) * n];
            out[i] = crate::vector::fdot(row, v);
        }
    }

    pub fn sign(&self, idx: usize) -> f64 {
        self.elements[idx].sign as f64
    }
}

/// Enumerate the full Weyl group within the default order bound.
pub fn weyl_group(rs: &RootSystem) -> Result<WeylGroup> {
    weyl_group_bounded(rs, DEFAULT_ORDER_BOUND)
}

/// Enumerate with an explicit bound on the group order.
pub fn weyl_group_bounded(rs: &RootSystem, bound: usize) -> Result<WeylGroup> {
    let dim = rs.ambient_dim;
    let gens: Vec<RatMat> = rs
        .simple_roots
        .iter()
        .map(|a| rs.reflection_matrix(a))
        .collect();
    let mut seen: HashMap<RatMat, usize> = HashMap::new();
    let mut elements = Vec::new();
    let identity = WeylElement::identity(dim);
    seen.insert(identity.matrix.clone(), 0);
    elements.push(identity);
    let mut queue: VecDeque<usize> = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let current = elements[idx].clone();
        for g in &gens {
            // Append the generator on the right: longer word, same BFS level
            // ordering as generator index order.
            let m = current.matrix.matmul(g);
            if seen.contains_key(&m) {
                continue;
            }
            if elements.len() >= bound {
                return Err(Error::EnumerationBound { bound, reached: elements.len() + 1 });
            }
            let e = WeylElement { matrix: m.clone(), sign: -current.sign };
            seen.insert(m, elements.len());
            queue.push_back(elements.len());
            elements.push(e);
        }
    }
    let mats_f64 = elements
        .iter()
        .map(|e| {
            let mut flat = Vec::with_capacity(dim * dim);
            for i in 0..dim {
                for j in 0..dim {
                    flat.push(crate::ratio::to_f64(&e.matrix[(i, j)]));
                }
            }
            flat
        })
        .collect();
    Ok(WeylGroup { elements, mats_f64, dim })
}

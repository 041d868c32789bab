//! Crystallographic root systems in fixed rational realizations.
//!
//! Classical families live in their standard coordinates (the A family in the
//! full ambient space, with the span of the roots being the sum-zero
//! hyperplane); G2, F4 and the E family are generated by reflection closure
//! from Bourbaki simple roots. Every coordinate is an exact rational and the
//! inner product is the standard dot product throughout, so all root and
//! weight combinatorics downstream stay exact.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::linalg::{self, RatMat};
use crate::ratio::{self, rat, rint};
use crate::vector::RatVec;
use crate::weyl::WeylElement;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CartanFamily {
    A,
    B,
    C,
    D,
    BC,
    G,
    F,
    E,
}

impl CartanFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(CartanFamily::A),
            "B" => Ok(CartanFamily::B),
            "C" => Ok(CartanFamily::C),
            "D" => Ok(CartanFamily::D),
            "BC" => Ok(CartanFamily::BC),
            "G" => Ok(CartanFamily::G),
            "F" => Ok(CartanFamily::F),
            "E" => Ok(CartanFamily::E),
            other => Err(Error::InvalidLabel(other.to_string())),
        }
    }
}

impl fmt::Display for CartanFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanFamily::A => "A",
            CartanFamily::B => "B",
            CartanFamily::C => "C",
            CartanFamily::D => "D",
            CartanFamily::BC => "BC",
            CartanFamily::G => "G",
            CartanFamily::F => "F",
            CartanFamily::E => "E",
        };
        write!(f, "{s}")
    }
}

/// A family/rank pair naming a root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanLabel {
    pub family: CartanFamily,
    pub rank: usize,
}

impl CartanLabel {
    pub fn new(family: CartanFamily, rank: usize) -> Result<Self> {
        let ok = match family {
            CartanFamily::A | CartanFamily::B | CartanFamily::C | CartanFamily::BC => rank >= 1,
            CartanFamily::D => rank >= 2,
            CartanFamily::G => rank == 2,
            CartanFamily::F => rank == 4,
            CartanFamily::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(CartanLabel { family, rank })
        } else {
            Err(Error::InvalidLabel(format!("{family}{rank}")))
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| {
            Error::InvalidLabel(s.to_string())
        })?;
        let family = CartanFamily::parse(&s[..split])?;
        let rank: usize = s[split..]
            .parse()
            .map_err(|_| Error::InvalidLabel(s.to_string()))?;
        CartanLabel::new(family, rank)
    }
}

impl fmt::Display for CartanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A realized root system with its weight combinatorics precomputed.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub label: CartanLabel,
    pub ambient_dim: usize,
    pub simple_roots: Vec<RatVec>,
    pub positive_roots: Vec<RatVec>,
    /// Gram matrix of the bilinear form in ambient coordinates (the identity
    /// in every realization used here; kept explicit as part of the contract).
    pub inner_product: RatMat,
    pub fundamental_weights: Vec<RatVec>,
    pub reduced: bool,
    /// cartan[(i, j)] = <alpha_j, alpha_i^vee>
    cartan: RatMat,
    all_roots: HashSet<RatVec>,
    /// Orbit id per positive root, orbits ordered by increasing squared length.
    orbit_of_positive: Vec<usize>,
    orbit_count: usize,
    /// `span_proj * v` gives simple-root coordinates of the projection of `v`
    /// onto the span of the roots.
    span_proj: RatMat,
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.label.rank
    }

    pub fn inner(&self, u: &RatVec, v: &RatVec) -> BigRational {
        // Identity Gram: plain dot product.
        u.dot(v)
    }

    pub fn coroot(&self, alpha: &RatVec) -> RatVec {
        let norm = self.inner(alpha, alpha);
        alpha.scale(&(rint(2) / norm))
    }

    /// `<v, alpha^vee>`
    pub fn pair_coroot(&self, v: &RatVec, alpha: &RatVec) -> BigRational {
        rint(2) * self.inner(v, alpha) / self.inner(alpha, alpha)
    }

    pub fn reflect(&self, v: &RatVec, alpha: &RatVec) -> RatVec {
        let c = self.pair_coroot(v, alpha);
        v - &alpha.scale(&c)
    }

    pub fn reflection_matrix(&self, alpha: &RatVec) -> RatMat {
        let n = self.ambient_dim;
        let mut m = RatMat::identity(n);
        let coroot = self.coroot(alpha);
        for j in 0..n {
            for i in 0..n {
                let t = &alpha[i] * &coroot[j];
                m[(i, j)] -= t;
            }
        }
        m
    }

    pub fn is_root(&self, v: &RatVec) -> bool {
        self.all_roots.contains(v)
    }

    pub fn cartan_matrix(&self) -> &RatMat {
        &self.cartan
    }

    pub fn is_dominant(&self, v: &RatVec) -> bool {
        self.simple_roots
            .iter()
            .all(|a| !self.inner(a, v).is_negative())
    }

    /// Simple-root coordinates of the span component, and the W-fixed
    /// component `v - span`.
    pub fn split_span_fixed(&self, v: &RatVec) -> (Vec<BigRational>, RatVec) {
        let coords = self.span_proj.apply(v);
        let mut span = RatVec::zero(self.ambient_dim);
        for (c, alpha) in coords.0.iter().zip(&self.simple_roots) {
            span = &span + &alpha.scale(c);
        }
        let fixed = v - &span;
        (coords.0, fixed)
    }

    /// Dominant orbit representative together with a group element mapping
    /// `v` onto it, found by repeated simple reflections.
    pub fn dominant_rep(&self, v: &RatVec) -> (RatVec, WeylElement) {
        let mut cur = v.clone();
        let mut w = WeylElement::identity(self.ambient_dim);
        loop {
            let neg = self
                .simple_roots
                .iter()
                .position(|a| self.inner(a, &cur).is_negative());
            match neg {
                None => return (cur, w),
                Some(i) => {
                    cur = self.reflect(&cur, &self.simple_roots[i]);
                    let s = WeylElement {
                        matrix: self.reflection_matrix(&self.simple_roots[i]),
                        sign: -1,
                    };
                    w = s.compose(&w);
                }
            }
        }
    }

    /// The full Weyl orbit of `v`, enumerated by closure under simple
    /// reflections (no global group enumeration required).
    pub fn weyl_orbit(&self, v: &RatVec) -> Vec<RatVec> {
        let mut seen: BTreeSet<RatVec> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v.clone());
        queue.push_back(v.clone());
        while let Some(u) = queue.pop_front() {
            for a in &self.simple_roots {
                let r = self.reflect(&u, a);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Weighted half-sum of positive roots `rho^(k)`.
    pub fn rho_k(&self, k: &MultiplicityParam) -> RatVec {
        let mut acc = RatVec::zero(self.ambient_dim);
        for (idx, alpha) in self.positive_roots.iter().enumerate() {
            let ka = k.value_for_positive(self, idx);
            if !ka.is_zero() {
                acc = &acc + &alpha.scale(ka);
            }
        }
        acc.scale(&rat(1, 2))
    }

    /// `rho` with unit multiplicities.
    pub fn rho(&self) -> RatVec {
        self.rho_k(&MultiplicityParam::constant(self, rint(1)))
    }

    /// Discriminant: product of pairings with all positive roots.
    pub fn discriminant(&self, v: &RatVec) -> BigRational {
        self.positive_roots
            .iter()
            .map(|a| self.inner(a, v))
            .fold(rint(1), |acc, t| acc * t)
    }

    pub fn discriminant_f64(&self, v: &[f64]) -> f64 {
        self.positive_roots
            .iter()
            .map(|a| crate::vector::fdot(&a.to_f64(), v))
            .product()
    }

    /// Indivisible positive roots orthogonal to a dominant `lambda`.
    pub fn phi_plus_lambda(&self, lambda: &RatVec) -> Vec<RatVec> {
        assert!(self.is_dominant(lambda), "phi_plus_lambda needs dominant input");
        self.positive_roots
            .iter()
            .filter(|a| {
                let half = a.scale(&rat(1, 2));
                !self.is_root(&half) && self.inner(a, lambda).is_zero()
            })
            .cloned()
            .collect()
    }

    /// The spherical-weight condition, evaluated literally:
    /// `<lambda, alpha> / <alpha, alpha>` must be a nonnegative integer for
    /// every positive root. (This is half of the coroot pairing; the
    /// discrepancy with the usual coweight convention is deliberate and
    /// documented at the call sites that care.)
    pub fn is_spherical_weight(&self, lambda: &RatVec) -> bool {
        self.positive_roots.iter().all(|a| {
            let ratio = self.inner(lambda, a) / self.inner(a, a);
            ratio.is_integer() && !ratio.is_negative()
        })
    }

    /// Coordinates of `lambda` in the fundamental-weight basis, when `lambda`
    /// lies in the weight lattice of the span of the roots.
    pub fn weight_lattice_coords(&self, lambda: &RatVec) -> Result<Vec<i64>> {
        let (_, fixed) = self.split_span_fixed(lambda);
        if !fixed.is_zero() {
            return Err(Error::NotInLattice);
        }
        let mut out = Vec::with_capacity(self.rank());
        for a in &self.simple_roots {
            let p = self.pair_coroot(lambda, a);
            match ratio::as_i64(&p) {
                Some(n) => out.push(n),
                None => return Err(Error::NotInLattice),
            }
        }
        Ok(out)
    }

    /// Ambient vector of a lattice point given in fundamental-weight
    /// coordinates.
    pub fn lattice_to_ambient(&self, coords: &[i64]) -> RatVec {
        assert_eq!(coords.len(), self.rank());
        let mut acc = RatVec::zero(self.ambient_dim);
        for (n, w) in coords.iter().zip(&self.fundamental_weights) {
            if *n != 0 {
                acc = &acc + &w.scale(&rint(*n));
            }
        }
        acc
    }

    /// Number of W-orbits of roots (1 for simply laced, 2 for B/C/G/F, 3 for
    /// BC of rank >= 2).
    pub fn orbit_count(&self) -> usize {
        self.orbit_count
    }

    pub fn orbit_of_positive_index(&self, idx: usize) -> usize {
        self.orbit_of_positive[idx]
    }

    /// Index of `2 alpha` among the positive roots, when present (BC only).
    pub fn double_of_positive(&self, idx: usize) -> Option<usize> {
        let double = self.positive_roots[idx].scale(&rint(2));
        self.positive_roots.iter().position(|b| *b == double)
    }

    /// Index of `alpha / 2` among the positive roots, when present.
    pub fn half_of_positive(&self, idx: usize) -> Option<usize> {
        let half = self.positive_roots[idx].scale(&rat(1, 2));
        self.positive_roots.iter().position(|b| *b == half)
    }
}

/// W-invariant multiplicity parameter: one nonnegative rational per root
/// orbit, orbits ordered by increasing squared root length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityParam {
    values: Vec<BigRational>,
}

impl MultiplicityParam {
    pub fn constant(rs: &RootSystem, k: BigRational) -> Self {
        assert!(!k.is_negative(), "multiplicities must be nonnegative");
        MultiplicityParam { values: vec![k; rs.orbit_count()] }
    }

    pub fn zero(rs: &RootSystem) -> Self {
        Self::constant(rs, BigRational::zero())
    }

    pub fn one(rs: &RootSystem) -> Self {
        Self::constant(rs, rint(1))
    }

    pub fn from_values(rs: &RootSystem, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != rs.orbit_count() {
            return Err(Error::InvalidArgument(format!(
                "expected {} multiplicity values (one per root orbit), got {}",
                rs.orbit_count(),
                values.len()
            )));
        }
        if values.iter().any(Signed::is_negative) {
            return Err(Error::InvalidArgument(
                "multiplicities must be nonnegative".into(),
            ));
        }
        Ok(MultiplicityParam { values })
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.values.iter().all(|v| *v == rint(1))
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(BigRational::is_integer)
    }

    pub fn value_for_orbit(&self, orbit: usize) -> &BigRational {
        &self.values[orbit]
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(ratio::to_f64).collect()
    }
}

impl MultiplicityParam {
    /// Multiplicity of the positive root with the given index in `rs`.
    pub fn value_for_positive(&self, rs: &RootSystem, idx: usize) -> &BigRational {
        &self.values[rs.orbit_of_positive[idx]]
    }
}

pub fn build(label: CartanLabel) -> Result<RootSystem> {
    let r = label.rank;
    let (ambient, simples, positives, reduced): (usize, Vec<RatVec>, Option<Vec<RatVec>>, bool) =
        match label.family {
            CartanFamily::A => {
                let n = r + 1;
                let simples = (0..r).map(|i| unit_diff(n, i, i + 1)).collect();
                let mut pos = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        pos.push(unit_diff(n, i, j));
                    }
                }
                (n, simples, Some(pos), true)
            }
            CartanFamily::B => {
                let mut simples: Vec<RatVec> =
                    (0..r.saturating_sub(1)).map(|i| unit_diff(r, i, i + 1)).collect();
                simples.push(unit(r, r - 1));
                let mut pos = Vec::new();
                for i in 0..r {
                    for j in i + 1..r {
                        pos.push(unit_diff(r, i, j));
                        pos.push(unit_sum(r, i, j));
                    }
                    pos.push(unit(r, i));
                }
                (r, simples, Some(pos), true)
            }
            CartanFamily::C => {
                let mut simples: Vec<RatVec> =
                    (0..r.saturating_sub(1)).map(|i| unit_diff(r, i, i + 1)).collect();
                simples.push(unit(r, r - 1).scale(&rint(2)));
                let mut pos = Vec::new();
                for i in 0..r {
                    for j in i + 1..r {
                        pos.push(unit_diff(r, i, j));
                        pos.push(unit_sum(r, i, j));
                    }
                    pos.push(unit(r, i).scale(&rint(2)));
                }
                (r, simples, Some(pos), true)
            }
            CartanFamily::D => {
                let mut simples: Vec<RatVec> =
                    (0..r - 1).map(|i| unit_diff(r, i, i + 1)).collect();
                simples.push(unit_sum(r, r - 2, r - 1));
                let mut pos = Vec::new();
                for i in 0..r {
                    for j in i + 1..r {
                        pos.push(unit_diff(r, i, j));
                        pos.push(unit_sum(r, i, j));
                    }
                }
                (r, simples, Some(pos), true)
            }
            CartanFamily::BC => {
                let mut simples: Vec<RatVec> =
                    (0..r.saturating_sub(1)).map(|i| unit_diff(r, i, i + 1)).collect();
                simples.push(unit(r, r - 1));
                let mut pos = Vec::new();
                for i in 0..r {
                    for j in i + 1..r {
                        pos.push(unit_diff(r, i, j));
                        pos.push(unit_sum(r, i, j));
                    }
                    pos.push(unit(r, i));
                    pos.push(unit(r, i).scale(&rint(2)));
                }
                (r, simples, Some(pos), false)
            }
            CartanFamily::G => {
                let a1 = RatVec::from_i64(&[1, -1, 0]);
                let a2 = RatVec::from_i64(&[-2, 1, 1]);
                (3, vec![a1, a2], None, true)
            }
            CartanFamily::F => {
                let a1 = unit_diff(4, 1, 2);
                let a2 = unit_diff(4, 2, 3);
                let a3 = unit(4, 3);
                let a4 = RatVec(vec![rat(1, 2), rat(-1, 2), rat(-1, 2), rat(-1, 2)]);
                (4, vec![a1, a2, a3, a4], None, true)
            }
            CartanFamily::E => {
                let mut a1 = vec![rat(-1, 2); 8];
                a1[0] = rat(1, 2);
                a1[7] = rat(1, 2);
                let a1 = RatVec(a1);
                let a2 = unit_sum(8, 0, 1);
                let mut simples = vec![a1, a2];
                for i in 0..6 {
                    simples.push(unit_diff(8, i + 1, i));
                }
                simples.truncate(r);
                (8, simples, None, true)
            }
        };

    let positives = match positives {
        Some(p) => p,
        None => closure_positive_roots(ambient, &simples),
    };

    finish_build(label, ambient, simples, positives, reduced)
}

fn unit(dim: usize, i: usize) -> RatVec {
    let mut v = vec![BigRational::zero(); dim];
    v[i] = rint(1);
    RatVec(v)
}

fn unit_diff(dim: usize, i: usize, j: usize) -> RatVec {
    let mut v = vec![BigRational::zero(); dim];
    v[i] = rint(1);
    v[j] = rint(-1);
    RatVec(v)
}

fn unit_sum(dim: usize, i: usize, j: usize) -> RatVec {
    let mut v = vec![BigRational::zero(); dim];
    v[i] = rint(1);
    v[j] = rint(1);
    RatVec(v)
}

/// Generate all roots by reflection closure of the simple roots (valid for
/// reduced systems, where every root is W-conjugate to a simple root), then
/// keep the positive half.
fn closure_positive_roots(ambient: usize, simples: &[RatVec]) -> Vec<RatVec> {
    let pair = |u: &RatVec, a: &RatVec| -> BigRational {
        rint(2) * u.dot(a) / a.dot(a)
    };
    let mut seen: BTreeSet<RatVec> = BTreeSet::new();
    let mut queue: VecDeque<RatVec> = VecDeque::new();
    for a in simples {
        if seen.insert(a.clone()) {
            queue.push_back(a.clone());
        }
    }
    while let Some(b) = queue.pop_front() {
        for a in simples {
            let c = pair(&b, a);
            let refl = &b - &a.scale(&c);
            if seen.insert(refl.clone()) {
                queue.push_back(refl);
            }
        }
    }
    // Positive roots: nonnegative simple-root coordinates. Solve through the
    // normal equations of the simple-root matrix.
    let mut cols = Vec::new();
    for a in simples {
        cols.push(a.clone());
    }
    let s = mat_from_cols(ambient, &cols);
    let st = s.transpose();
    let gram = st.matmul(&s);
    let mut out = Vec::new();
    for root in seen {
        let rhs = st.apply(&root);
        let coords = linalg::solve(&gram, &rhs.0).expect("simple roots are independent");
        if coords.iter().all(|c| !c.is_negative()) {
            out.push(root);
        }
    }
    out
}

fn mat_from_cols(rows: usize, cols: &[RatVec]) -> RatMat {
    let mut m = RatMat::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..rows {
            m[(i, j)] = c[i].clone();
        }
    }
    m
}

fn finish_build(
    label: CartanLabel,
    ambient: usize,
    simples: Vec<RatVec>,
    mut positives: Vec<RatVec>,
    reduced: bool,
) -> Result<RootSystem> {
    let r = simples.len();
    let dot = |u: &RatVec, v: &RatVec| u.dot(v);

    // Deterministic positive-root order: by height in the simple basis, then
    // lexicographic coordinates.
    let s = mat_from_cols(ambient, &simples);
    let st = s.transpose();
    let gram = st.matmul(&s);
    let height = |root: &RatVec| -> BigRational {
        let rhs = st.apply(root);
        let coords = linalg::solve(&gram, &rhs.0).expect("independent simples");
        coords.into_iter().fold(BigRational::zero(), |a, c| a + c)
    };
    positives.sort_by(|a, b| {
        height(a)
            .cmp(&height(b))
            .then_with(|| a.cmp(b))
    });

    let all_roots: HashSet<RatVec> = positives
        .iter()
        .cloned()
        .chain(positives.iter().map(|a| -a))
        .collect();

    // Cartan matrix: cartan[(i, j)] = <alpha_j, alpha_i^vee>.
    let mut cartan = RatMat::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            cartan[(i, j)] = rint(2) * dot(&simples[j], &simples[i]) / dot(&simples[i], &simples[i]);
        }
    }

    // Fundamental weights: omega_i = sum_l c_l alpha_l with
    // <omega_i, alpha_j^vee> = delta_ij, i.e. cartan^T-solve per weight.
    let mut fw = Vec::with_capacity(r);
    for i in 0..r {
        let mut rhs = vec![BigRational::zero(); r];
        rhs[i] = rint(1);
        // System: sum_l <alpha_l, alpha_j^vee> c_l = delta_ij.
        let coeffs = linalg::solve(&cartan, &rhs)?;
        let mut w = RatVec::zero(ambient);
        for (c, a) in coeffs.iter().zip(&simples) {
            w = &w + &a.scale(c);
        }
        fw.push(w);
    }

    // Span projection: coords(v) = (S^T S)^{-1} S^T v.
    let mut gram_inv_rows = Vec::with_capacity(r);
    for i in 0..r {
        let mut rhs = vec![BigRational::zero(); r];
        rhs[i] = rint(1);
        gram_inv_rows.push(linalg::solve(&gram, &rhs)?);
    }
    let gram_inv = RatMat::from_rows(gram_inv_rows);
    let span_proj = gram_inv.matmul(&st);

    // Root orbits under W, by closure with simple reflections over all roots.
    let mut orbit_of_root: std::collections::HashMap<RatVec, usize> = Default::default();
    let mut orbit_norms: Vec<BigRational> = Vec::new();
    let mut next_orbit = 0usize;
    for root in &positives {
        if orbit_of_root.contains_key(root) {
            continue;
        }
        let mut members = vec![root.clone()];
        let mut queue = VecDeque::from([root.clone()]);
        let mut seen: HashSet<RatVec> = HashSet::from([root.clone()]);
        while let Some(u) = queue.pop_front() {
            for a in &simples {
                let c = rint(2) * dot(&u, a) / dot(a, a);
                let refl = &u - &a.scale(&c);
                if seen.insert(refl.clone()) {
                    members.push(refl.clone());
                    queue.push_back(refl);
                }
            }
            // Also close under negation: -id need not be in W, but orbits of
            // roots always pair alpha with w(alpha); keeping only reflection
            // closure is correct for orbit identity, while negatives matter
            // for membership queries below.
        }
        for m in &members {
            orbit_of_root.insert(m.clone(), next_orbit);
        }
        orbit_norms.push(dot(root, root));
        next_orbit += 1;
    }
    // Canonical orbit order: increasing squared length.
    let mut order: Vec<usize> = (0..next_orbit).collect();
    order.sort_by(|&a, &b| orbit_norms[a].cmp(&orbit_norms[b]));
    let mut relabel = vec![0usize; next_orbit];
    for (new_id, &old_id) in order.iter().enumerate() {
        relabel[old_id] = new_id;
    }
    let orbit_of_positive: Vec<usize> = positives
        .iter()
        .map(|root| relabel[orbit_of_root[root]])
        .collect();

    Ok(RootSystem {
        label,
        ambient_dim: ambient,
        simple_roots: simples,
        positive_roots: positives,
        inner_product: RatMat::identity(ambient),
        fundamental_weights: fw,
        reduced,
        cartan,
        all_roots,
        orbit_of_positive,
        orbit_count: next_orbit,
        span_proj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(label: &str) -> RootSystem {
        build(CartanLabel::parse(label).unwrap()).unwrap()
    }

    #[test]
    fn a1_standard_realization() {
        let a1 = rs("A1");
        assert_eq!(a1.positive_roots, vec![RatVec::from_i64(&[1, -1])]);
        assert_eq!(a1.ambient_dim, 2);
        assert!(a1.reduced);
    }

    #[test]
    fn bc1_has_both_orbits() {
        let bc1 = rs("BC1");
        assert_eq!(
            bc1.positive_roots,
            vec![RatVec::from_i64(&[1]), RatVec::from_i64(&[2])]
        );
        assert!(!bc1.reduced);
        assert_eq!(bc1.orbit_count(), 2);
        // Short orbit first.
        assert_eq!(bc1.orbit_of_positive_index(0), 0);
        assert_eq!(bc1.orbit_of_positive_index(1), 1);
    }

    #[test]
    fn b2_counts() {
        let b2 = rs("B2");
        assert_eq!(b2.positive_roots.len(), 4);
        assert_eq!(b2.orbit_count(), 2);
    }

    #[test]
    fn g2_f4_e6_counts() {
        assert_eq!(rs("G2").positive_roots.len(), 6);
        assert_eq!(rs("F4").positive_roots.len(), 24);
        assert_eq!(rs("E6").positive_roots.len(), 36);
    }

    #[test]
    fn invalid_labels_rejected() {
        assert!(CartanLabel::parse("G3").is_err());
        assert!(CartanLabel::parse("E5").is_err());
        assert!(CartanLabel::parse("D1").is_err());
        assert!(CartanLabel::parse("Q2").is_err());
        assert!(CartanLabel::parse("A0").is_err());
    }

    #[test]
    fn reflections_permute_roots() {
        for label in ["A2", "B2", "G2", "BC2", "C3", "D4"] {
            let r = rs(label);
            for a in &r.simple_roots {
                for root in &r.positive_roots {
                    let image = r.reflect(root, a);
                    assert!(r.is_root(&image), "{label}: reflection left the root set");
                }
            }
        }
    }

    #[test]
    fn dominant_rep_sorts_a_type() {
        let a2 = rs("A2");
        let v = RatVec::from_i64(&[0, 2, 1]);
        let (dom, w) = a2.dominant_rep(&v);
        assert_eq!(dom, RatVec::from_i64(&[2, 1, 0]));
        assert_eq!(w.apply(&v), dom);
    }

    #[test]
    fn dominant_rep_of_dominant_is_identity() {
        let b2 = rs("B2");
        let v = RatVec::from_i64(&[3, 1]);
        let (dom, w) = b2.dominant_rep(&v);
        assert_eq!(dom, v);
        assert_eq!(w.sign, 1);
        assert_eq!(w.apply(&v), v);
    }

    #[test]
    fn dominant_rep_b2_sign_flip() {
        let b2 = rs("B2");
        let v = RatVec::from_i64(&[-3, 1]);
        let (dom, _) = b2.dominant_rep(&v);
        assert_eq!(dom, RatVec::from_i64(&[3, 1]));
        // Oracle: the dominant point is in the orbit and unique.
        let orbit = b2.weyl_orbit(&v);
        let doms: Vec<_> = orbit.iter().filter(|u| b2.is_dominant(u)).collect();
        assert_eq!(doms.len(), 1);
        assert_eq!(*doms[0], dom);
    }

    #[test]
    fn weyl_orbit_examples() {
        let a1 = rs("A1");
        assert_eq!(a1.weyl_orbit(&RatVec::zero(2)).len(), 1);
        let orbit = a1.weyl_orbit(&RatVec::from_i64(&[1, -1]));
        assert_eq!(orbit.len(), 2);
        let b2 = rs("B2");
        assert_eq!(b2.weyl_orbit(&RatVec::from_i64(&[2, 1])).len(), 8);
    }

    #[test]
    fn rho_k_examples() {
        let bc1 = rs("BC1");
        let k = MultiplicityParam::from_values(&bc1, vec![rat(3, 1), rat(5, 1)]).unwrap();
        // (k1/2 + k2) e1 with k1 = 3, k2 = 5.
        assert_eq!(bc1.rho_k(&k), RatVec::parse("13/2").unwrap());
        assert!(bc1.rho_k(&MultiplicityParam::zero(&bc1)).is_zero());
        let a1 = rs("A1");
        let rho = a1.rho();
        assert_eq!(rho, RatVec::parse("1/2,-1/2").unwrap());
    }

    #[test]
    fn discriminant_examples() {
        let a2 = rs("A2");
        assert!(a2.discriminant(&RatVec::zero(3)).is_zero());
        assert_eq!(a2.discriminant(&RatVec::from_i64(&[2, 1, 0])), rint(2));
        let a1 = rs("A1");
        assert_eq!(a1.discriminant(&a1.rho()), rint(1));
    }

    #[test]
    fn phi_plus_lambda_examples() {
        let b2 = rs("B2");
        // Regular lambda: empty.
        assert!(b2.phi_plus_lambda(&RatVec::from_i64(&[2, 1])).is_empty());
        // lambda = 0 on a reduced system: all positive roots.
        assert_eq!(b2.phi_plus_lambda(&RatVec::zero(2)).len(), 4);
        // BC1 at 0: only the indivisible root.
        let bc1 = rs("BC1");
        assert_eq!(
            bc1.phi_plus_lambda(&RatVec::zero(1)),
            vec![RatVec::from_i64(&[1])]
        );
    }

    #[test]
    fn spherical_weight_literal_convention() {
        let a1 = rs("A1");
        let alpha = RatVec::from_i64(&[1, -1]);
        assert!(a1.is_spherical_weight(&RatVec::zero(2)));
        // <alpha/2, alpha>/<alpha, alpha> = 1/2: literally not integral.
        assert!(!a1.is_spherical_weight(&alpha.scale(&rat(1, 2))));
        assert!(a1.is_spherical_weight(&alpha));
    }

    #[test]
    fn weight_lattice_coords_examples() {
        let a2 = rs("A2");
        let w1 = a2.fundamental_weights[0].clone();
        assert_eq!(a2.weight_lattice_coords(&w1).unwrap(), vec![1, 0]);
        let rho = a2.rho();
        assert_eq!(a2.weight_lattice_coords(&rho).unwrap(), vec![1, 1]);
        assert!(matches!(
            a2.weight_lattice_coords(&w1.scale(&rat(1, 2))),
            Err(Error::NotInLattice)
        ));
        // A vector with a W-fixed component is not in the lattice.
        assert!(matches!(
            a2.weight_lattice_coords(&RatVec::from_i64(&[1, 0, 0])),
            Err(Error::NotInLattice)
        ));
    }

    #[test]
    fn fundamental_weights_pair_correctly() {
        for label in ["A3", "B3", "C3", "D4", "G2", "F4", "BC2"] {
            let r = rs(label);
            for (i, w) in r.fundamental_weights.iter().enumerate() {
                for (j, a) in r.simple_roots.iter().enumerate() {
                    let p = r.pair_coroot(w, a);
                    let expect = if i == j { rint(1) } else { rint(0) };
                    assert_eq!(p, expect, "{label}: <w_{i}, a_{j}^v>");
                }
            }
        }
    }

    #[test]
    fn rho_pairs_to_one_with_simple_coroots() {
        for label in ["A2", "A3", "B2", "B3", "C3", "D4", "G2"] {
            let r = rs(label);
            let rho = r.rho();
            for a in &r.simple_roots {
                assert_eq!(r.pair_coroot(&rho, a), rint(1), "{label}");
            }
        }
    }

    #[test]
    fn split_span_fixed_a_type() {
        let a2 = rs("A2");
        let v = RatVec::from_i64(&[2, 1, 0]);
        let (_, fixed) = a2.split_span_fixed(&v);
        assert_eq!(fixed, RatVec::parse("1,1,1").unwrap());
        let (_, fixed0) = a2.split_span_fixed(&RatVec::from_i64(&[1, 0, -1]));
        assert!(fixed0.is_zero());
    }
}

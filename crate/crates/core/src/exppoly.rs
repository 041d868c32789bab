//! The group algebra of the weight lattice, as exponential polynomials.
//!
//! Lattice points are stored in integer fundamental-weight coordinates, so
//! supports are compact and Weyl actions are integer matrix moves. The
//! module provides the constant-term inner product (exact for integer
//! multiplicities, torus quadrature otherwise), monomial symmetric elements,
//! saturation sets, and the Cherednik operator in its closed form on basis
//! exponentials.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::numerics::CompensatedSum;
use crate::quadrature::TorusQuadrature;
use crate::ratio::{self, rint};
use crate::rootsys::{MultiplicityParam, RootSystem};
use crate::vector::RatVec;
use crate::{Error, Result};

/// Coefficient ring for exponential polynomials: exact rationals for the
/// algebraic layer, floats for quadrature-mode solves.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    fn to_f64(&self) -> f64;
    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        rint(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        ratio::to_f64(self)
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rational(q: &BigRational) -> Self {
        ratio::to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Lattice point in fundamental-weight coordinates.
pub type Lat = Vec<i64>;

/// Finitely supported function on the weight lattice; zero coefficients are
/// never stored. The BTreeMap keeps iteration (and hence all accumulation
/// orders) deterministic.
#[derive(Clone, PartialEq)]
pub struct ExpPoly<C: Coeff> {
    terms: BTreeMap<Lat, C>,
}

pub type RatPoly = ExpPoly<BigRational>;
pub type FloatPoly = ExpPoly<f64>;

impl<C: Coeff> Default for ExpPoly<C> {
    fn default() -> Self {
        ExpPoly { terms: BTreeMap::new() }
    }
}

impl<C: Coeff> std::fmt::Debug for ExpPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (pt, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c:?}*e{pt:?}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<C: Coeff> ExpPoly<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], C::one())
    }

    pub fn monomial(point: Lat, coeff: C) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(point, coeff);
        }
        ExpPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Lat, &C)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, point: &[i64]) -> C {
        self.terms.get(point).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn insert_add(&mut self, point: Lat, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(point) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add_ref(&coeff);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (pt, c) in &other.terms {
            out.insert_add(pt.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (pt, c) in &other.terms {
            out.insert_add(pt.clone(), c.neg_ref());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(pt, v)| (pt.clone(), v.mul_ref(c)))
                .collect(),
        }
    }

    /// Convolution of supports.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                let sum: Lat = p.iter().zip(q).map(|(x, y)| x + y).collect();
                out.insert_add(sum, a.mul_ref(b));
            }
        }
        out
    }

    /// Support negation: the image of `f` under `e^l -> e^{-l}`.
    pub fn bar(&self) -> Self {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(pt, c)| (pt.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: usize, rank: usize) -> Self {
        let mut out = Self::one(rank);
        for _ in 0..n {
            out = out.multiply(self);
        }
        out
    }

    /// Largest absolute fundamental-weight coordinate over the support.
    pub fn max_abs_coord(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|pt| pt.iter().map(|c| c.abs()))
            .max()
            .unwrap_or(0)
    }

    pub fn map_to_f64(&self) -> FloatPoly {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(pt, c)| (pt.clone(), c.to_f64()))
                .collect(),
        }
    }

    /// Evaluate at a real point of the ambient space.
    pub fn evaluate(&self, rs: &RootSystem, x: &[f64]) -> f64 {
        let weights: Vec<f64> = rs
            .fundamental_weights
            .iter()
            .map(|w| crate::vector::fdot(&w.to_f64(), x))
            .collect();
        let mut acc = CompensatedSum::new();
        for (pt, c) in &self.terms {
            let expo: f64 = pt.iter().zip(&weights).map(|(n, w)| *n as f64 * w).sum();
            acc.add(c.to_f64() * expo.exp());
        }
        acc.value()
    }

    /// Evaluate at `x + i y`.
    pub fn evaluate_complex(
        &self,
        rs: &RootSystem,
        x: &[f64],
        y: &[f64],
    ) -> num_complex::Complex64 {
        let wr: Vec<f64> = rs
            .fundamental_weights
            .iter()
            .map(|w| crate::vector::fdot(&w.to_f64(), x))
            .collect();
        let wi: Vec<f64> = rs
            .fundamental_weights
            .iter()
            .map(|w| crate::vector::fdot(&w.to_f64(), y))
            .collect();
        let mut re = CompensatedSum::new();
        let mut im = CompensatedSum::new();
        for (pt, c) in &self.terms {
            let er: f64 = pt.iter().zip(&wr).map(|(n, w)| *n as f64 * w).sum();
            let ei: f64 = pt.iter().zip(&wi).map(|(n, w)| *n as f64 * w).sum();
            let m = c.to_f64() * er.exp();
            re.add(m * ei.cos());
            im.add(m * ei.sin());
        }
        num_complex::Complex64::new(re.value(), im.value())
    }
}

// ---------------------------------------------------------------------------
// Lattice combinatorics in fundamental-weight coordinates.
// ---------------------------------------------------------------------------

/// Integer Cartan entry `<alpha_j, alpha_i^vee>` as i64.
fn cartan_i64(rs: &RootSystem, i: usize, j: usize) -> i64 {
    ratio::as_i64(&rs.cartan_matrix()[(i, j)]).expect("Cartan entries are integers")
}

/// Apply the i-th simple reflection to lattice coordinates.
pub fn simple_reflect_coords(rs: &RootSystem, i: usize, pt: &[i64]) -> Lat {
    let ni = pt[i];
    (0..pt.len())
        .map(|j| pt[j] - ni * cartan_i64(rs, j, i))
        .collect()
}

/// Full Weyl orbit of a lattice point, in coordinate form.
pub fn orbit_coords(rs: &RootSystem, pt: &[i64]) -> Vec<Lat> {
    let mut seen: BTreeSet<Lat> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(pt.to_vec());
    queue.push_back(pt.to_vec());
    while let Some(u) = queue.pop_front() {
        for i in 0..rs.rank() {
            let v = simple_reflect_coords(rs, i, &u);
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen.into_iter().collect()
}

pub fn is_dominant_coords(pt: &[i64]) -> bool {
    pt.iter().all(|&n| n >= 0)
}

/// `<y, lambda>` for a lattice point against an ambient rational vector.
pub fn pair_with_ambient(rs: &RootSystem, y: &RatVec, pt: &[i64]) -> BigRational {
    let mut acc = <BigRational as Zero>::zero();
    for (n, w) in pt.iter().zip(&rs.fundamental_weights) {
        if *n != 0 {
            acc += rint(*n) * y.dot(w);
        }
    }
    acc
}

/// Fundamental-weight coordinates of a positive root (exact integers for
/// every crystallographic root).
pub fn root_coords(rs: &RootSystem, root: &RatVec) -> Lat {
    rs.simple_roots
        .iter()
        .map(|a| {
            ratio::as_i64(&rs.pair_coroot(root, a)).expect("roots pair integrally with coroots")
        })
        .collect()
}

/// `<pt, alpha^vee>` for a positive root; may be a half-integer for the
/// divisible roots of BC, hence rational-valued.
pub fn pair_coroot_coords(rs: &RootSystem, pt: &[i64], root: &RatVec) -> BigRational {
    let lam = rs.lattice_to_ambient(pt);
    rs.pair_coroot(&lam, root)
}

// ---------------------------------------------------------------------------
// Named constructions.
// ---------------------------------------------------------------------------

/// `delta_k * bar(delta_k)` expanded in the group algebra; requires integer
/// multiplicities (each root contributes the lattice factor
/// `(1 - e^alpha)(1 - e^{-alpha})` to the k-th power, which stays in the
/// lattice even when `alpha/2` is not a weight).
pub fn delta_k_squared(rs: &RootSystem, k: &MultiplicityParam) -> Result<RatPoly> {
    if !k.is_integral() {
        return Err(Error::NonIntegerMultiplicity);
    }
    let rank = rs.rank();
    let mut out = RatPoly::one(rank);
    for (idx, alpha) in rs.positive_roots.iter().enumerate() {
        let ka = k
            .value_for_positive(rs, idx)
            .to_integer()
            .to_i64()
            .expect("integer multiplicity fits i64");
        if ka == 0 {
            continue;
        }
        let coords = root_coords(rs, alpha);
        let neg: Lat = coords.iter().map(|c| -c).collect();
        // (1 - e^a)(1 - e^{-a}) = 2 - e^a - e^{-a}
        let mut factor = RatPoly::monomial(vec![0; rank], rint(2));
        factor.insert_add(coords, rint(-1));
        factor.insert_add(neg, rint(-1));
        out = out.multiply(&factor.pow(ka as usize, rank));
    }
    Ok(out)
}

/// Monomial symmetric element: each orbit exponential with coefficient one.
pub fn monomial_symmetric(rs: &RootSystem, lambda: &[i64]) -> RatPoly {
    assert!(is_dominant_coords(lambda), "monomial basis needs dominant input");
    let mut out = RatPoly::zero();
    for pt in orbit_coords(rs, lambda) {
        out.insert_add(pt, rint(1));
    }
    out
}

/// All dominant lattice points below `lambda` in the root order
/// (`lambda - mu` a nonnegative integer combination of simple roots),
/// sorted by decreasing height with lexicographic tie-break. `lambda`
/// itself comes first.
pub fn low_set(rs: &RootSystem, lambda: &[i64]) -> Vec<Lat> {
    assert!(is_dominant_coords(lambda), "low set needs dominant input");
    let rank = rs.rank();
    let lam_vec = rs.lattice_to_ambient(lambda);
    let rho = rs.rho();
    let total = lam_vec.dot(&rho);
    // Bound each simple-root coefficient through the rho pairing.
    let bounds: Vec<i64> = rs
        .simple_roots
        .iter()
        .map(|a| {
            let per = a.dot(&rho);
            (&total / &per).floor().to_integer().to_i64().unwrap_or(0).max(0)
        })
        .collect();
    // Simple-root coordinate columns of the Cartan matrix.
    let col = |i: usize| -> Lat { (0..rank).map(|j| cartan_i64(rs, j, i)).collect() };
    let cols: Vec<Lat> = (0..rank).map(col).collect();
    let mut results: Vec<Lat> = Vec::new();
    let mut counter = vec![0i64; rank];
    'outer: loop {
        let mut cand: Lat = lambda.to_vec();
        for (i, &c) in counter.iter().enumerate() {
            for j in 0..rank {
                cand[j] -= c * cols[i][j];
            }
        }
        if is_dominant_coords(&cand) {
            results.push(cand);
        }
        // Odometer increment over the bounded box.
        for i in 0..rank {
            counter[i] += 1;
            if counter[i] <= bounds[i] {
                continue 'outer;
            }
            counter[i] = 0;
        }
        break;
    }
    // Decreasing height (sum of simple-root coordinates of mu), then lex.
    let height_of = |pt: &Lat| -> BigRational {
        let v = rs.lattice_to_ambient(pt);
        let (coords, _) = rs.split_span_fixed(&v);
        coords.into_iter().fold(<BigRational as Zero>::zero(), |a, c| a + c)
    };
    results.sort_by(|a, b| height_of(b).cmp(&height_of(a)).then_with(|| a.cmp(b)));
    results.dedup();
    results
}

/// W-average of an exponential polynomial; the output is W-invariant.
pub fn symmetrize<C: Coeff>(rs: &RootSystem, f: &ExpPoly<C>) -> ExpPoly<C> {
    let mut out = ExpPoly::zero();
    for (pt, c) in f.terms() {
        let orbit = orbit_coords(rs, pt);
        let share = c.div_ref(&C::from_rational(&rint(orbit.len() as i64)));
        for q in orbit {
            out.insert_add(q, share.clone());
        }
    }
    out
}

/// The Cherednik differential-difference operator applied to an element of
/// the group algebra, through its closed action on basis exponentials: the
/// divided-difference part of each root contributes a finite geometric
/// string, which requires every support point to pair integrally with the
/// root's coroot.
pub fn cherednik_apply(
    rs: &RootSystem,
    k: &MultiplicityParam,
    y: &RatVec,
    f: &RatPoly,
) -> Result<RatPoly> {
    y.check_dim(rs.ambient_dim)?;
    let rho_k = rs.rho_k(k);
    let y_rho = y.dot(&rho_k);
    let mut out = RatPoly::zero();
    struct RootData {
        coords: Lat,
        coroot_row: Vec<BigRational>,
        /// k_alpha <y, alpha>
        weight: BigRational,
    }
    let mut roots = Vec::new();
    for (idx, alpha) in rs.positive_roots.iter().enumerate() {
        let ka = k.value_for_positive(rs, idx);
        if Zero::is_zero(ka) {
            continue;
        }
        let coroot_row: Vec<BigRational> = rs
            .fundamental_weights
            .iter()
            .map(|w| rs.pair_coroot(w, alpha))
            .collect();
        let weight = ka * y.dot(alpha);
        roots.push(RootData { coords: root_coords(rs, alpha), coroot_row, weight });
    }
    for (pt, c) in f.terms() {
        // Directional derivative part minus the rho shift.
        let y_pt = pair_with_ambient(rs, y, pt);
        out.insert_add(pt.clone(), c * (&y_pt - &y_rho));
        for rd in &roots {
            // n = <pt, alpha^vee>, must be an integer for the string identity.
            let mut n_rat = <BigRational as Zero>::zero();
            for (nc, row) in pt.iter().zip(&rd.coroot_row) {
                if *nc != 0 {
                    n_rat += rint(*nc) * row;
                }
            }
            let n = ratio::as_i64(&n_rat).ok_or_else(|| {
                Error::NotInCherednikLattice(pt.iter().map(|&v| rint(v)).collect::<Vec<_>>())
            })?;
            if Zero::is_zero(&rd.weight) || n == 0 {
                continue;
            }
            let term = c * &rd.weight;
            if n >= 1 {
                for j in 0..n {
                    let target: Lat =
                        pt.iter().zip(&rd.coords).map(|(p, a)| p - j * a).collect();
                    out.insert_add(target, term.clone());
                }
            } else {
                for j in 1..=(-n) {
                    let target: Lat =
                        pt.iter().zip(&rd.coords).map(|(p, a)| p + j * a).collect();
                    out.insert_add(target, -&term);
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Inner products.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IpMode {
    ExactConstantTerm,
    TorusQuadrature,
}

/// How inner products are computed: exactly through the constant term
/// (integer multiplicities only) or by trapezoid quadrature over the torus,
/// with the grid doubled until stable.
#[derive(Debug, Clone)]
pub struct InnerProductPlan {
    pub mode: IpMode,
    pub base_grid: usize,
    pub k: MultiplicityParam,
}

impl InnerProductPlan {
    pub fn exact(k: MultiplicityParam) -> Self {
        InnerProductPlan { mode: IpMode::ExactConstantTerm, base_grid: 64, k }
    }

    pub fn quadrature(k: MultiplicityParam) -> Self {
        InnerProductPlan { mode: IpMode::TorusQuadrature, base_grid: 64, k }
    }

    /// Pick the mode the multiplicities allow: exact when integral.
    pub fn auto(k: MultiplicityParam) -> Self {
        if k.is_integral() {
            Self::exact(k)
        } else {
            Self::quadrature(k)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mode == IpMode::ExactConstantTerm && !self.k.is_integral() {
            return Err(Error::NonIntegerMultiplicity);
        }
        Ok(())
    }
}

/// Exact constant term of `f * bar(g) * delta_k * bar(delta_k)`.
pub fn inner_product_exact(
    rs: &RootSystem,
    f: &RatPoly,
    g: &RatPoly,
    k: &MultiplicityParam,
) -> Result<BigRational> {
    let dk = delta_k_squared(rs, k)?;
    Ok(constant_term_triple(f, g, &dk))
}

/// Constant term of `f * bar(g) * w`, organized to avoid the full triple
/// product: sum over f and g supports of the matching coefficient of `w`.
pub fn constant_term_triple<C: Coeff>(f: &ExpPoly<C>, g: &ExpPoly<C>, w: &ExpPoly<C>) -> C {
    // CT(f bar(g) w) = sum_{p, q} f_p g_q w_{q - p}
    let mut acc = C::zero();
    for (p, a) in f.terms() {
        for (q, b) in g.terms() {
            let need: Lat = q.iter().zip(p).map(|(y, x)| y - x).collect();
            let c = w.coeff(&need);
            if !c.is_zero() {
                acc = acc.add_ref(&a.mul_ref(b).mul_ref(&c));
            }
        }
    }
    acc
}

/// Inner product under a plan, returned as f64 (exact mode computes the
/// rational constant term and converts; quadrature mode integrates a
/// trapezoid ladder with Romberg acceleration until stable).
pub fn inner_product_k(
    rs: &RootSystem,
    f: &RatPoly,
    g: &RatPoly,
    plan: &InnerProductPlan,
) -> Result<f64> {
    plan.validate()?;
    match plan.mode {
        IpMode::ExactConstantTerm => Ok(ratio::to_f64(&inner_product_exact(rs, f, g, &plan.k)?)),
        IpMode::TorusQuadrature => {
            let quad = TorusQuadrature::new(rs, &plan.k, plan.base_grid)?;
            quad.inner_product(&f.map_to_f64(), &g.map_to_f64())
        }
    }
}

//! Heckman-Opdam polynomials and hypergeometric evaluation at spectral
//! points.
//!
//! Polynomials come from two independent constructions: a Gram solve of the
//! orthogonality relations in the monomial symmetric basis (production), and
//! the joint eigenvector of the Cherednik operators on the saturated span
//! (oracle, exact for rational multiplicities). Gamma-factor normalizers
//! connect the polynomials to hypergeometric values at spectral points; the
//! rational limit and the sharp exponential envelope complete the asymptotic
//! toolkit.

use num_rational::BigRational;
use num_traits::Zero;

use crate::compactfns::CharEvaluator;
use crate::exppoly::{
    self, inner_product_exact, low_set, monomial_symmetric, orbit_coords, Coeff, ExpPoly,
    InnerProductPlan, IpMode, Lat, RatPoly,
};
use crate::linalg::{self, RatMat};
use crate::numerics::{is_gamma_pole, ln_gamma, neville_to_zero};
use crate::quadrature::TorusQuadrature;
use crate::ratio::{self, rint};
use crate::rootsys::{MultiplicityParam, RootSystem};
use crate::vector::RatVec;
use crate::{tol, Error, Result};

/// A Heckman-Opdam polynomial: unit coefficient on the leading monomial
/// symmetric element, orthogonal to everything lower.
#[derive(Debug, Clone)]
pub struct HoPoly<C: Coeff> {
    pub lambda: Lat,
    /// Basis of the expansion: `low(lambda)`, leading point first.
    pub basis: Vec<Lat>,
    /// Coefficients aligned with `basis`; the first entry is one.
    pub coeffs: Vec<C>,
    /// The polynomial written out in exponentials.
    pub poly: ExpPoly<C>,
}

impl<C: Coeff> HoPoly<C> {
    pub fn evaluate(&self, rs: &RootSystem, x: &[f64]) -> f64 {
        self.poly.evaluate(rs, x)
    }

    pub fn coeff_for(&self, mu: &[i64]) -> Option<&C> {
        self.basis.iter().position(|b| b == mu).map(|i| &self.coeffs[i])
    }
}

impl HoPoly<BigRational> {
    pub fn map_to_f64(&self) -> HoPoly<f64> {
        HoPoly {
            lambda: self.lambda.clone(),
            basis: self.basis.clone(),
            coeffs: self.coeffs.iter().map(ratio::to_f64).collect(),
            poly: self.poly.map_to_f64(),
        }
    }
}

fn assemble<C: Coeff>(basis: &[Lat], coeffs: &[C], polys: &[RatPoly]) -> ExpPoly<C> {
    let mut out = ExpPoly::zero();
    for ((m, c), _) in polys.iter().zip(coeffs).zip(basis) {
        for (pt, mc) in m.terms() {
            out.insert_add(pt.clone(), c.mul_ref(&C::from_rational(mc)));
        }
    }
    out
}

/// Exact Gram-solve construction (integer multiplicities).
pub fn ho_poly_exact(
    rs: &RootSystem,
    lambda: &[i64],
    k: &MultiplicityParam,
) -> Result<HoPoly<BigRational>> {
    if !exppoly::is_dominant_coords(lambda) {
        return Err(Error::NotDominantIntegral);
    }
    let basis = low_set(rs, lambda);
    let m_polys: Vec<RatPoly> = basis.iter().map(|mu| monomial_symmetric(rs, mu)).collect();
    let n = basis.len();
    let mut coeffs = vec![<BigRational as Zero>::zero(); n];
    coeffs[0] = rint(1);
    if n > 1 {
        // Rows: orthogonality against M_mu for mu != lambda.
        let mut gram = RatMat::zeros(n - 1, n - 1);
        let mut rhs = Vec::with_capacity(n - 1);
        for (row, mu_poly) in m_polys.iter().enumerate().skip(1) {
            for (col, nu_poly) in m_polys.iter().enumerate().skip(1) {
                gram[(row - 1, col - 1)] = inner_product_exact(rs, nu_poly, mu_poly, k)?;
            }
            rhs.push(-inner_product_exact(rs, &m_polys[0], mu_poly, k)?);
        }
        let solved = linalg::solve(&gram, &rhs)?;
        coeffs[1..].clone_from_slice(&solved);
    }
    let poly = assemble(&basis, &coeffs, &m_polys);
    Ok(HoPoly { lambda: lambda.to_vec(), basis, coeffs, poly })
}

/// Quadrature-mode Gram solve (any nonnegative multiplicities), with
/// orthogonality residuals checked against the product norms.
pub fn ho_poly_quadrature(
    rs: &RootSystem,
    lambda: &[i64],
    k: &MultiplicityParam,
    base_grid: usize,
) -> Result<HoPoly<f64>> {
    if !exppoly::is_dominant_coords(lambda) {
        return Err(Error::NotDominantIntegral);
    }
    let basis = low_set(rs, lambda);
    let m_polys: Vec<RatPoly> = basis.iter().map(|mu| monomial_symmetric(rs, mu)).collect();
    let m_f64: Vec<ExpPoly<f64>> = m_polys.iter().map(RatPoly::map_to_f64).collect();
    let mut quad = TorusQuadrature::new(rs, k, base_grid)?;
    // One frequency box for the whole solve keeps the assembled entries and
    // the residual checks on identical grid levels.
    let kbox = m_f64.iter().map(|m| m.max_abs_coord()).max().unwrap_or(0) * 2;
    quad.set_min_box(kbox);
    let n = basis.len();
    let mut coeffs = vec![0.0f64; n];
    coeffs[0] = 1.0;
    if n > 1 {
        let mut gram = vec![vec![0.0f64; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let v = quad.inner_product(&m_f64[i], &m_f64[j])?;
                gram[i][j] = v;
                gram[j][i] = v;
            }
        }
        // Solve sum_{col>=1} c_col G[row][col] = -G[row][0], rows >= 1.
        let mut a: Vec<Vec<f64>> = (1..n).map(|row| gram[row][1..].to_vec()).collect();
        let mut b: Vec<f64> = (1..n).map(|row| -gram[row][0]).collect();
        solve_f64(&mut a, &mut b)?;
        coeffs[1..].copy_from_slice(&b);
        // Residual check: |(P, M_mu)| <= tol * |P| |M_mu|.
        let mut p = ExpPoly::zero();
        for (c, m) in coeffs.iter().zip(&m_f64) {
            for (pt, mc) in m.terms() {
                p.insert_add(pt.clone(), c * mc);
            }
        }
        let p_norm = quad.norm(&p)?;
        for m in m_f64.iter().skip(1) {
            let resid = quad.inner_product(&p, m)?.abs();
            let m_norm = quad.norm(m)?;
            if resid > tol::ORTHOGONALITY_REL * p_norm * m_norm {
                return Err(Error::SingularGram);
            }
        }
        let poly = p;
        return Ok(HoPoly { lambda: lambda.to_vec(), basis, coeffs, poly });
    }
    let poly = m_f64[0].clone();
    Ok(HoPoly { lambda: lambda.to_vec(), basis, coeffs, poly })
}

/// Plan-dispatched construction, as floats.
pub fn ho_poly(rs: &RootSystem, lambda: &[i64], plan: &InnerProductPlan) -> Result<HoPoly<f64>> {
    plan.validate()?;
    match plan.mode {
        IpMode::ExactConstantTerm => Ok(ho_poly_exact(rs, lambda, &plan.k)?.map_to_f64()),
        IpMode::TorusQuadrature => ho_poly_quadrature(rs, lambda, &plan.k, plan.base_grid),
    }
}

fn solve_f64(a: &mut [Vec<f64>], b: &mut [f64]) -> Result<()> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&p, &q| a[p][col].abs().partial_cmp(&a[q][col].abs()).unwrap())
            .unwrap();
        if a[pivot][col] == 0.0 {
            return Err(Error::SingularGram);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..n {
            if row == col {
                continue;
            }
            let f = a[row][col] / a[col][col];
            if f != 0.0 {
                for c in col..n {
                    a[row][c] -= f * a[col][c];
                }
                b[row] -= f * b[col];
            }
        }
    }
    for i in 0..n {
        b[i] /= a[i][i];
    }
    Ok(())
}

/// Cherednik-eigenproblem construction, restricted to the saturated span of
/// `low(lambda)`: build the operator matrices for a spanning set of
/// directions, take the joint kernel of the spectral shifts read off the
/// leading diagonal entry, symmetrize, and normalize the leading monomial
/// coefficient. Exact for rational multiplicities; oracle only.
pub fn ho_poly_cherednik_oracle(
    rs: &RootSystem,
    lambda: &[i64],
    k: &MultiplicityParam,
) -> Result<HoPoly<BigRational>> {
    if !exppoly::is_dominant_coords(lambda) {
        return Err(Error::NotDominantIntegral);
    }
    let basis_low = low_set(rs, lambda);
    let mut span: Vec<Lat> = basis_low
        .iter()
        .flat_map(|mu| orbit_coords(rs, mu))
        .collect();
    span.sort();
    span.dedup();
    let dim = span.len();
    let index_of = |pt: &Lat| span.binary_search(pt).expect("span is closed");
    let lam_idx = index_of(&lambda.to_vec());

    // Stack (A_y - theta_y I) over a spanning set of directions.
    let mut stacked_rows: Vec<Vec<BigRational>> = Vec::new();
    for w in &rs.fundamental_weights {
        let mut a = RatMat::zeros(dim, dim);
        for (col, pt) in span.iter().enumerate() {
            let image = exppoly::cherednik_apply(
                rs,
                k,
                w,
                &RatPoly::monomial(pt.clone(), rint(1)),
            )?;
            for (q, c) in image.terms() {
                let row = index_of(q);
                a[(row, col)] = c.clone();
            }
        }
        let theta = a[(lam_idx, lam_idx)].clone();
        for row in 0..dim {
            let mut r = Vec::with_capacity(dim);
            for col in 0..dim {
                let mut v = a[(row, col)].clone();
                if row == col {
                    v -= &theta;
                }
                r.push(v);
            }
            stacked_rows.push(r);
        }
    }
    let stacked = RatMat::from_rows(stacked_rows);
    let kernel = linalg::kernel(&stacked);
    if kernel.len() != 1 {
        return Err(Error::DegenerateEigenvector);
    }
    let v = &kernel[0];
    if Zero::is_zero(&v[lam_idx]) {
        return Err(Error::DegenerateEigenvector);
    }
    let mut e_poly = RatPoly::zero();
    for (pt, c) in span.iter().zip(v) {
        e_poly.insert_add(pt.clone(), c / &v[lam_idx]);
    }
    let sym = exppoly::symmetrize(rs, &e_poly);
    let lead = sym.coeff(lambda);
    if Zero::is_zero(&lead) {
        return Err(Error::DegenerateEigenvector);
    }
    let poly = sym.scale(&(rint(1) / lead));
    let coeffs: Vec<BigRational> = basis_low.iter().map(|mu| poly.coeff(mu)).collect();
    Ok(HoPoly { lambda: lambda.to_vec(), basis: basis_low, coeffs, poly })
}

/// Gamma-factor product `prod_a Gamma(<l, a^vee> + k_{a/2}/2) /
/// Gamma(<l, a^vee> + k_{a/2}/2 + k_a)`. Roots with zero multiplicity
/// contribute the empty factor (the two arguments coincide), which also
/// keeps boundary multiplicities pole-free.
pub fn tilde_c(rs: &RootSystem, k: &MultiplicityParam, lam: &RatVec) -> Result<f64> {
    lam.check_dim(rs.ambient_dim)?;
    let mut log_abs = 0.0f64;
    let mut sign = 1.0f64;
    for (idx, alpha) in rs.positive_roots.iter().enumerate() {
        let ka = ratio::to_f64(k.value_for_positive(rs, idx));
        if ka == 0.0 {
            continue;
        }
        let k_half = rs
            .half_of_positive(idx)
            .map(|h| ratio::to_f64(k.value_for_positive(rs, h)))
            .unwrap_or(0.0);
        let base = ratio::to_f64(&rs.pair_coroot(lam, alpha)) + 0.5 * k_half;
        let top = base + ka;
        for (arg, num) in [(base, true), (top, false)] {
            if is_gamma_pole(arg) {
                return Err(Error::GammaPole(arg));
            }
            let (l, s) = ln_abs_gamma_signed(arg);
            if num {
                log_abs += l;
                sign *= s;
            } else {
                log_abs -= l;
                sign *= s;
            }
        }
    }
    Ok(sign * log_abs.exp())
}

/// log |Gamma(x)| together with the sign of Gamma(x).
fn ln_abs_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        (ln_gamma(x), 1.0)
    } else {
        // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
        let s = (std::f64::consts::PI * x).sin();
        let l = std::f64::consts::PI.ln() - s.abs().ln() - ln_gamma(1.0 - x);
        (l, s.signum())
    }
}

/// `c(lambda + rho^(k), k) = tilde_c(lambda + rho^(k), k) / tilde_c(rho^(k), k)`.
pub fn c_normalizer(rs: &RootSystem, k: &MultiplicityParam, lambda: &[i64]) -> Result<f64> {
    let rho_k = rs.rho_k(k);
    let shifted = &rs.lattice_to_ambient(lambda) + &rho_k;
    Ok(tilde_c(rs, k, &shifted)? / tilde_c(rs, k, &rho_k)?)
}

/// Above this many basis elements, unit multiplicities on a reduced system
/// evaluate through the character alternant instead of a Gram solve.
const CHAR_PATH_MIN_BASIS: usize = 24;

/// Hypergeometric value at the spectral point `lambda + rho^(k)`:
/// `c(lambda + rho^(k), k) * P_{k, lambda}(x)`. Zero multiplicities take the
/// plain exponential average.
pub fn f_spectral(
    rs: &RootSystem,
    lambda: &[i64],
    x: &[f64],
    plan: &InnerProductPlan,
) -> Result<f64> {
    if x.len() != rs.ambient_dim {
        return Err(Error::DimensionMismatch { expected: rs.ambient_dim, got: x.len() });
    }
    if !exppoly::is_dominant_coords(lambda) {
        return Err(Error::NotDominantIntegral);
    }
    let k = &plan.k;
    if k.is_zero() {
        // Average of the orbit exponentials.
        let orbit = orbit_coords(rs, lambda);
        let m = monomial_symmetric(rs, lambda);
        return Ok(m.evaluate(rs, x) / orbit.len() as f64);
    }
    let c = c_normalizer(rs, k, lambda)?;
    if k.is_one() && rs.reduced && low_set(rs, lambda).len() > CHAR_PATH_MIN_BASIS {
        // At unit multiplicities the polynomial is the character evaluated at
        // real arguments; the alternant is far cheaper than a large Gram
        // solve and is exercised against it on small cases.
        let ev = CharEvaluator::new(rs)?;
        let lam_vec = rs.lattice_to_ambient(lambda);
        let chi = ev.eval(&lam_vec, x)? * ev.dimension(&lam_vec);
        return Ok(c * chi);
    }
    let p = ho_poly(rs, lambda, plan)?;
    Ok(c * p.evaluate(rs, x))
}

/// Generalized Bessel value by the extrapolated rational limit: evaluate the
/// hypergeometric function at lattice-snapped spectral parameters
/// `lambda / eps` and argument `eps x`, halving `eps` until successive
/// values agree, then extrapolating the ladder to zero. Returns the value
/// and the final ladder residual.
pub fn bessel(
    rs: &RootSystem,
    lam: &RatVec,
    x: &[f64],
    plan: &InnerProductPlan,
) -> Result<(f64, f64)> {
    lam.check_dim(rs.ambient_dim)?;
    if !rs.is_dominant(lam) {
        return Err(Error::InvalidArgument(
            "rational limit is taken along dominant rays".into(),
        ));
    }
    let k = &plan.k;
    let rho_k = rs.rho_k(k);
    let mut samples: Vec<(f64, f64)> = Vec::new();
    let mut prev_raw: Option<f64> = None;
    let mut raw_converged = false;
    let mut residual = f64::INFINITY;
    for j in 2..=14u32 {
        let eps = 0.5f64.powi(j as i32);
        let inv = rint(1) / crate::ratio::rationalize(eps, 0.0).unwrap();
        let target = &lam.scale(&inv) - &rho_k;
        // Snap to the nearest lattice point.
        let mut coords = Vec::with_capacity(rs.rank());
        let mut ok = true;
        for a in &rs.simple_roots {
            let p = ratio::to_f64(&rs.pair_coroot(&target, a));
            let n = p.round() as i64;
            if n < 0 {
                ok = false;
                break;
            }
            coords.push(n);
        }
        if !ok {
            if samples.is_empty() {
                return Err(Error::SpectralShiftNotDominant(-1));
            }
            continue;
        }
        if low_set(rs, &coords).len() > 600
            && !(k.is_one() && rs.reduced)
        {
            return Err(Error::InvalidArgument(
                "rational-limit ladder needs impractically large Gram solves for this k".into(),
            ));
        }
        let ex: Vec<f64> = x.iter().map(|c| c * eps).collect();
        let value = f_spectral(rs, &coords, &ex, plan)?;
        samples.push((eps, value));
        if let Some(p) = prev_raw {
            if (value - p).abs() <= tol::BESSEL_REL * value.abs().max(1e-300) {
                raw_converged = true;
            }
        }
        prev_raw = Some(value);
        if samples.len() >= 3 {
            let (v, r) = neville_to_zero(&samples);
            residual = r / v.abs().max(1.0);
            if raw_converged && residual <= tol::BESSEL_REL {
                return Ok((v, residual));
            }
        }
    }
    Err(Error::BesselNotConverged { residual })
}

/// Sharp asymptotic envelope at large `t` along a dominant direction:
/// `exp(t <lam - rho^(k), y>) * prod_{a in Phi+_lam} (1 + t <a, y>)`.
pub fn asymptotic_envelope(
    rs: &RootSystem,
    k: &MultiplicityParam,
    lam: &RatVec,
    y: &RatVec,
    t: f64,
) -> Result<f64> {
    lam.check_dim(rs.ambient_dim)?;
    y.check_dim(rs.ambient_dim)?;
    if !rs.is_dominant(lam) || !rs.is_dominant(y) {
        return Err(Error::InvalidArgument("envelope needs dominant data".into()));
    }
    let rho_k = rs.rho_k(k);
    let exponent = t * ratio::to_f64(&(lam - &rho_k).dot(y));
    let mut product = 1.0f64;
    for alpha in rs.phi_plus_lambda(lam) {
        product *= 1.0 + t * ratio::to_f64(&alpha.dot(y));
    }
    Ok(exponent.exp() * product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use crate::rootsys::{build, CartanLabel};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rs(label: &str) -> RootSystem {
        build(CartanLabel::parse(label).unwrap()).unwrap()
    }

    #[test]
    fn k_zero_gives_monomial_symmetric() {
        let b2 = rs("B2");
        let k0 = MultiplicityParam::zero(&b2);
        let p = ho_poly_exact(&b2, &[1, 1], &k0).unwrap();
        assert_eq!(p.poly, monomial_symmetric(&b2, &[1, 1]));
        // The operators are diagonal on exponentials at k = 0, and the joint
        // eigenvalue data still pins e^lambda uniquely.
        let oracle = ho_poly_cherednik_oracle(&b2, &[1, 1], &k0).unwrap();
        assert_eq!(oracle.poly, p.poly);
    }

    #[test]
    fn a1_minuscule_weight_has_no_corrections() {
        let a1 = rs("A1");
        let k = MultiplicityParam::constant(&a1, rat(7, 3));
        // low(omega) = {omega}: P = e^w + e^{-w} for every k.
        let basis = low_set(&a1, &[1]);
        assert_eq!(basis.len(), 1);
        let p = ho_poly_quadrature(&a1, &[1], &k, 64).unwrap();
        assert_eq!(p.poly.support_len(), 2);
    }

    #[test]
    fn a1_k1_ho_poly_is_character() {
        // lambda = 2 omega, k = 1: e^a + 1 + e^{-a}.
        let a1 = rs("A1");
        let k = MultiplicityParam::one(&a1);
        let p = ho_poly_exact(&a1, &[2], &k).unwrap();
        assert_eq!(p.poly.coeff(&[2]), rint(1));
        assert_eq!(p.poly.coeff(&[0]), rint(1));
        assert_eq!(p.poly.coeff(&[-2]), rint(1));
        assert_eq!(p.poly.support_len(), 3);
        // Cherednik oracle agrees exactly.
        let oracle = ho_poly_cherednik_oracle(&a1, &[2], &k).unwrap();
        assert_eq!(oracle.poly, p.poly);
    }

    #[test]
    fn gram_and_cherednik_agree_on_a2_and_b2() {
        let mut rng = StdRng::seed_from_u64(5);
        for label in ["A2", "B2"] {
            let sys = rs(label);
            for lam in [vec![1i64, 1], vec![2, 0], vec![2, 1]] {
                let k = MultiplicityParam::from_values(
                    &sys,
                    (0..sys.orbit_count())
                        .map(|_| rat(rng.gen_range(1..5), rng.gen_range(1..4)))
                        .collect(),
                )
                .unwrap();
                let oracle = ho_poly_cherednik_oracle(&sys, &lam, &k).unwrap();
                let quad = ho_poly_quadrature(&sys, &lam, &k, 64).unwrap();
                assert_eq!(oracle.basis, quad.basis);
                for (qo, qc) in oracle.coeffs.iter().zip(&quad.coeffs) {
                    let want = ratio::to_f64(qo);
                    assert!(
                        (want - qc).abs() <= 1e-9 * want.abs().max(1.0),
                        "{label} {lam:?}: {want} vs {qc}"
                    );
                }
            }
        }
    }

    #[test]
    fn exact_and_quadrature_agree_at_integer_k() {
        let a2 = rs("A2");
        let k = MultiplicityParam::one(&a2);
        let exact = ho_poly_exact(&a2, &[2, 1], &k).unwrap();
        let quad = ho_poly_quadrature(&a2, &[2, 1], &k, 64).unwrap();
        for (e, q) in exact.coeffs.iter().zip(&quad.coeffs) {
            assert!((ratio::to_f64(e) - q).abs() < 1e-9);
        }
    }

    #[test]
    fn tilde_c_examples() {
        let a1 = rs("A1");
        // k = 0: empty product.
        assert_eq!(
            tilde_c(&a1, &MultiplicityParam::zero(&a1), &RatVec::parse("3,1").unwrap()).unwrap(),
            1.0
        );
        // A1, k = 1: 1 / <lam, alpha>.
        let k1 = MultiplicityParam::one(&a1);
        let lam = RatVec::parse("5/2,-5/2").unwrap();
        let got = tilde_c(&a1, &k1, &lam).unwrap();
        assert!((got - 1.0 / 5.0).abs() < 1e-12);
        // Gamma pole at lam = 0.
        assert!(matches!(
            tilde_c(&a1, &k1, &RatVec::zero(2)),
            Err(Error::GammaPole(_))
        ));
    }

    #[test]
    fn tilde_c_bc1_half_root_coupling() {
        // Two factors; the e1 factor carries k_{e1/2} = 0, the 2e1 factor
        // carries k_{e1}.
        let bc1 = rs("BC1");
        let k = MultiplicityParam::from_values(&bc1, vec![rat(3, 2), rat(1, 2)]).unwrap();
        let lam = RatVec::parse("2").unwrap();
        let got = tilde_c(&bc1, &k, &lam).unwrap();
        // <lam, e1^vee> = 4, <lam, (2e1)^vee> = 2.
        let f1 = (ln_gamma(4.0) - ln_gamma(4.0 + 1.5)).exp();
        let f2 = (ln_gamma(2.0 + 0.75) - ln_gamma(2.0 + 0.75 + 0.5)).exp();
        assert!((got - f1 * f2).abs() < 1e-12 * (f1 * f2));
    }

    #[test]
    fn normalization_identity_small_cases() {
        // c(lambda + rho_k, k) * P(0) = 1.
        let mut rng = StdRng::seed_from_u64(9);
        for label in ["A1", "A2", "B2"] {
            let sys = rs(label);
            for _ in 0..3 {
                let lam: Vec<i64> = (0..sys.rank()).map(|_| rng.gen_range(0..=2)).collect();
                let choices = [rat(1, 2), rint(1), rint(2)];
                let k = MultiplicityParam::from_values(
                    &sys,
                    (0..sys.orbit_count())
                        .map(|_| choices[rng.gen_range(0..3)].clone())
                        .collect(),
                )
                .unwrap();
                let plan = InnerProductPlan::auto(k.clone());
                let zero = vec![0.0; sys.ambient_dim];
                let f0 = f_spectral(&sys, &lam, &zero, &plan).unwrap();
                assert!(
                    (f0 - 1.0).abs() <= 1e-8,
                    "{label} {lam:?} k={:?}: F(0) = {f0}",
                    k.values()
                );
            }
        }
    }

    #[test]
    fn f_spectral_k_zero_path() {
        let a2 = rs("A2");
        let plan = InnerProductPlan::exact(MultiplicityParam::zero(&a2));
        let lam = [1i64, 0];
        let x = [0.4, 0.1, -0.5];
        let got = f_spectral(&a2, &lam, &x, &plan).unwrap();
        let m = monomial_symmetric(&a2, &lam);
        let want = m.evaluate(&a2, &x) / 3.0;
        assert!((got - want).abs() < 1e-14);
        assert!((f_spectral(&a2, &lam, &[0.0; 3], &plan).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn char_fast_path_matches_gram_path() {
        // Force both paths at unit multiplicities on a case small enough for
        // the Gram solve but large enough to be nontrivial.
        let a2 = rs("A2");
        let k = MultiplicityParam::one(&a2);
        let lam = [3i64, 2];
        let x = [0.7, -0.2, -0.5];
        let plan = InnerProductPlan::exact(k.clone());
        let p = ho_poly_exact(&a2, &lam, &k).unwrap();
        let gram_val = c_normalizer(&a2, &k, &lam).unwrap() * p.evaluate(&a2, &x);
        let ev = CharEvaluator::new(&a2).unwrap();
        let lam_vec = a2.lattice_to_ambient(&lam);
        let char_val = c_normalizer(&a2, &k, &lam).unwrap()
            * ev.eval(&lam_vec, &x).unwrap()
            * ev.dimension(&lam_vec);
        assert!(
            (gram_val - char_val).abs() <= 1e-9 * gram_val.abs(),
            "gram {gram_val} vs character {char_val}"
        );
        let dispatched = f_spectral(&a2, &lam, &x, &plan).unwrap();
        assert!((dispatched - gram_val).abs() <= 1e-9 * gram_val.abs());
    }

    #[test]
    fn orthogonality_of_distinct_polynomials() {
        let a2 = rs("A2");
        let k = MultiplicityParam::one(&a2);
        let p_hi = ho_poly_exact(&a2, &[1, 1], &k).unwrap();
        let p_lo = ho_poly_exact(&a2, &[0, 0], &k).unwrap();
        let ip = inner_product_exact(&a2, &p_hi.poly, &p_lo.poly, &k).unwrap();
        assert!(Zero::is_zero(&ip), "got {ip}");
    }

    #[test]
    fn envelope_examples() {
        let b2 = rs("B2");
        let k = MultiplicityParam::one(&b2);
        // Regular lambda: pure exponential.
        let lam = RatVec::from_i64(&[3, 1]);
        let y = RatVec::from_i64(&[2, 1]);
        let rho_k = b2.rho_k(&k);
        let t = 7.0;
        let got = asymptotic_envelope(&b2, &k, &lam, &y, t).unwrap();
        let want = (t * ratio::to_f64(&(&lam - &rho_k).dot(&y))).exp();
        assert!((got - want).abs() < 1e-12 * want);
        // lambda = rho_k: identically one along any direction when regular.
        let got = asymptotic_envelope(&b2, &k, &rho_k, &rho_k, 3.0).unwrap();
        assert!((got - 1.0).abs() < 1e-12);
        // BC1 at lambda = 0: (1 + t y) e^{-t (k1/2 + k2) y}.
        let bc1 = rs("BC1");
        let kbc = MultiplicityParam::from_values(&bc1, vec![rint(1), rint(2)]).unwrap();
        let yy = RatVec::from_i64(&[1]);
        let got = asymptotic_envelope(&bc1, &kbc, &RatVec::zero(1), &yy, t).unwrap();
        let want = (1.0 + t) * (-t * 2.5f64).exp();
        assert!((got - want).abs() < 1e-12 * want.abs());
    }

    #[test]
    fn bessel_bridges_to_orbital_transform_a1() {
        // J_{1,lam}(x) = L_lam(x) on su(2): quick rank-one version of the
        // bridge (the A2 version lives in the acceptance suite).
        let a1 = rs("A1");
        let k = MultiplicityParam::one(&a1);
        let plan = InnerProductPlan::exact(k.clone());
        let lam = RatVec::from_i64(&[1, -1]);
        let x = [0.8, -0.8];
        let (j, _resid) = bessel(&a1, &lam, &x, &plan).unwrap();
        let l = crate::orbital::hc_eval(&a1, &[1.0, -1.0], &x, &Default::default()).unwrap();
        assert!(
            (j - l).abs() <= tol::BESSEL_REL * l.abs(),
            "bessel {j} vs transform {l}"
        );
    }

    #[test]
    fn bessel_trivial_values() {
        let a1 = rs("A1");
        let k = MultiplicityParam::one(&a1);
        let plan = InnerProductPlan::exact(k.clone());
        // x = 0: normalized to one.
        let (j, _) = bessel(&a1, &RatVec::from_i64(&[1, -1]), &[0.0, 0.0], &plan).unwrap();
        assert!((j - 1.0).abs() < 1e-10);
    }
}

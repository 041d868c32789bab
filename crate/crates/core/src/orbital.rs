//! Laplace transforms of invariant orbit measures.
//!
//! The exact alternating-sum formula evaluates the transform at regular
//! spectra; degenerate spectra go through a perturbation ladder along `rho`
//! with polynomial extrapolation back to zero, which realizes the l'Hopital
//! limit uniformly across types. Two independent oracles cross-check it: a
//! Haar Monte Carlo estimate for unitary groups and a confluent-determinant
//! evaluation special to the A family.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::numerics::{extrapolate_checked, signed_logsumexp_scaled, CompensatedSum};
use crate::rootsys::RootSystem;
use crate::vector::fdot;
use crate::weyl::{self, WeylGroup};
use crate::{tol, Error, Result};

/// Evaluation controls for the orbital transform.
#[derive(Debug, Clone)]
pub struct OrbitalEvalConfig {
    /// Relative threshold below which a root pairing counts as vanishing.
    pub degeneracy_tolerance: f64,
    /// Strictly decreasing positive perturbation sizes along `rho`.
    pub perturbation_steps: Vec<f64>,
    pub mc_samples: usize,
    pub rng_seed: u64,
}

impl Default for OrbitalEvalConfig {
    fn default() -> Self {
        OrbitalEvalConfig {
            degeneracy_tolerance: 1e-10,
            perturbation_steps: vec![1e-2, 10f64.powf(-2.5), 1e-3],
            mc_samples: 1_000_000,
            rng_seed: 0x57ab1e_5eed,
        }
    }
}

impl OrbitalEvalConfig {
    fn validate(&self) -> Result<()> {
        let ok = !self.perturbation_steps.is_empty()
            && self.perturbation_steps.windows(2).all(|w| w[0] > w[1])
            && self.perturbation_steps.iter().all(|&e| e > 0.0);
        if !ok {
            return Err(Error::InvalidArgument(
                "perturbation steps must be positive and strictly decreasing".into(),
            ));
        }
        Ok(())
    }
}

/// Reusable evaluator holding the enumerated Weyl group.
pub struct HcizEvaluator<'a> {
    rs: &'a RootSystem,
    wg: WeylGroup,
    rho: Vec<f64>,
    log_delta_rho: f64,
    roots: Vec<Vec<f64>>,
    cfg: OrbitalEvalConfig,
}

impl<'a> HcizEvaluator<'a> {
    pub fn new(rs: &'a RootSystem, cfg: OrbitalEvalConfig) -> Result<Self> {
        if !rs.reduced {
            return Err(Error::NonReduced);
        }
        cfg.validate()?;
        let wg = weyl::weyl_group(rs)?;
        let rho: Vec<f64> = rs.rho().to_f64();
        let roots: Vec<Vec<f64>> = rs.positive_roots.iter().map(|a| a.to_f64()).collect();
        let log_delta_rho: f64 = roots.iter().map(|a| fdot(a, &rho).ln()).sum();
        Ok(HcizEvaluator { rs, wg, rho, log_delta_rho, roots, cfg })
    }

    pub fn group(&self) -> &WeylGroup {
        &self.wg
    }

    fn check_dims(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.rs.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.rs.ambient_dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Smallest |<alpha, v>| relative to scale; zero means maximally singular.
    fn degeneracy(&self, v: &[f64]) -> f64 {
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        self.roots
            .iter()
            .map(|a| {
                let anorm = a.iter().map(|c| c * c).sum::<f64>().sqrt();
                fdot(a, v).abs() / (1.0 + anorm * norm)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Orbit representative maximizing the pairing with `rho` (the dominant
    /// one), so that adding `eta * rho` immediately regularizes.
    fn dominant_f64(&self, v: &[f64]) -> Vec<f64> {
        let mut best = v.to_vec();
        let mut best_score = fdot(v, &self.rho);
        let mut buf = vec![0.0; v.len()];
        for idx in 0..self.wg.order() {
            self.wg.apply_f64(idx, v, &mut buf);
            let score = fdot(&buf, &self.rho);
            if score > best_score {
                best_score = score;
                best = buf.clone();
            }
        }
        best
    }

    /// Alternating-sum evaluation at regular data.
    fn eval_regular(&self, lam: &[f64], x: &[f64]) -> f64 {
        let n = lam.len();
        let mut image = vec![0.0; n];
        let mut terms = Vec::with_capacity(self.wg.order());
        for idx in 0..self.wg.order() {
            self.wg.apply_f64(idx, lam, &mut image);
            terms.push((fdot(&image, x), self.wg.sign(idx)));
        }
        let (m, reduced) = signed_logsumexp_scaled(&terms);
        let mut log_scale = m + self.log_delta_rho;
        let mut sign = 1.0;
        for a in &self.roots {
            for v in [lam, x] {
                let p = fdot(a, v);
                log_scale -= p.abs().ln();
                if p < 0.0 {
                    sign = -sign;
                }
            }
        }
        sign * reduced * log_scale.exp()
    }

    /// The orbital transform `L_lambda(x)`, switching to the perturbation
    /// ladder whenever either discriminant vanishes to within tolerance.
    pub fn eval(&self, lam: &[f64], x: &[f64]) -> Result<f64> {
        self.check_dims(lam)?;
        self.check_dims(x)?;
        if lam.iter().all(|&c| c == 0.0) || x.iter().all(|&c| c == 0.0) {
            return Ok(1.0);
        }
        let tol_deg = self.cfg.degeneracy_tolerance;
        let lam_degenerate = self.degeneracy(lam) < tol_deg;
        let x_degenerate = self.degeneracy(x) < tol_deg;
        if !lam_degenerate && !x_degenerate {
            return Ok(self.eval_regular(lam, x));
        }
        let lam = self.dominant_f64(lam);
        let x = self.dominant_f64(x);
        let samples: Vec<(f64, f64)> = self
            .cfg
            .perturbation_steps
            .iter()
            .map(|&eta| {
                let shift = |v: &[f64], on: bool| -> Vec<f64> {
                    if on {
                        v.iter().zip(&self.rho).map(|(c, r)| c + eta * r).collect()
                    } else {
                        v.to_vec()
                    }
                };
                let l = shift(&lam, lam_degenerate);
                let y = shift(&x, x_degenerate);
                (eta, self.eval_regular(&l, &y))
            })
            .collect();
        extrapolate_checked(&samples, tol::EXTRAPOLATION_REL)
    }

    /// Leading asymptotic term of `L_lambda(t x)` for dominant regular data.
    pub fn leading(&self, lam: &[f64], x: &[f64], t: f64) -> Result<f64> {
        self.check_dims(lam)?;
        self.check_dims(x)?;
        let mut log = t * fdot(lam, x) + self.log_delta_rho;
        for a in &self.roots {
            let pl = fdot(a, lam);
            let px = t * fdot(a, x);
            if pl <= 0.0 || px <= 0.0 {
                return Err(Error::InvalidArgument(
                    "leading term needs dominant regular lambda and x".into(),
                ));
            }
            log -= pl.ln() + px.ln();
        }
        Ok(log.exp())
    }
}

/// One-shot evaluation of the orbital transform.
pub fn hc_eval(rs: &RootSystem, lam: &[f64], x: &[f64], cfg: &OrbitalEvalConfig) -> Result<f64> {
    HcizEvaluator::new(rs, cfg.clone())?.eval(lam, x)
}

/// Leading term of the large-`t` expansion (one-shot form).
pub fn l_asymptotic_leading(
    rs: &RootSystem,
    lam: &[f64],
    x: &[f64],
    t: f64,
    cfg: &OrbitalEvalConfig,
) -> Result<f64> {
    HcizEvaluator::new(rs, cfg.clone())?.leading(lam, x, t)
}

const MC_CHUNK: usize = 8192;

/// Monte Carlo estimate of `\int exp(tr(U diag(lam) U* diag(x))) dU` over the
/// unitary group, sampled exactly from Haar measure by orthonormalizing a
/// complex Gaussian matrix (the R-diagonal of the Gram-Schmidt factorization
/// is real positive, which pins the gauge and makes Q Haar). Returns the mean
/// and its standard error. Chunks carry independent, index-derived RNG
/// streams, so the result is identical for any worker count.
pub fn mc_unitary_oracle(
    n: usize,
    lam: &[f64],
    x: &[f64],
    cfg: &OrbitalEvalConfig,
) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    if lam.len() != n || x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: lam.len().max(x.len()) });
    }
    let total = cfg.mc_samples.max(1);
    let chunks = total.div_ceil(MC_CHUNK);
    let partials: Vec<(f64, f64, usize)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
            rng.set_stream(chunk as u64 + 1);
            let count = MC_CHUNK.min(total - chunk * MC_CHUNK);
            let mut sum = CompensatedSum::new();
            let mut sumsq = CompensatedSum::new();
            let mut unitary_sq = vec![0.0f64; n * n];
            for _ in 0..count {
                haar_unitary_abs_sq(&mut rng, n, &mut unitary_sq);
                let mut exponent = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        exponent += x[i] * lam[j] * unitary_sq[i * n + j];
                    }
                }
                let v = exponent.exp();
                sum.add(v);
                sumsq.add(v * v);
            }
            (sum.value(), sumsq.value(), count)
        })
        .collect();
    let mut sum = CompensatedSum::new();
    let mut sumsq = CompensatedSum::new();
    let mut count = 0usize;
    for (s, ss, c) in partials {
        sum.add(s);
        sumsq.add(ss);
        count += c;
    }
    let mean = sum.value() / count as f64;
    let stderr = if count > 1 {
        let var = (sumsq.value() - count as f64 * mean * mean) / (count as f64 - 1.0);
        (var.max(0.0) / count as f64).sqrt()
    } else {
        0.0
    };
    Ok((mean, stderr))
}

/// Fill `out[i*n+j] = |U_ij|^2` for a fresh Haar unitary.
fn haar_unitary_abs_sq(rng: &mut ChaCha8Rng, n: usize, out: &mut [f64]) {
    // Column-major Gaussian draw, then modified Gram-Schmidt.
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(gaussian(rng), gaussian(rng)))
                .collect()
        })
        .collect();
    for j in 0..n {
        for i in 0..j {
            let proj: Complex64 = (0..n).map(|r| cols[i][r].conj() * cols[j][r]).sum();
            for r in 0..n {
                let d = proj * cols[i][r];
                cols[j][r] -= d;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for r in 0..n {
            cols[j][r] /= norm;
        }
    }
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            out[i * n + j] = z.norm_sqr();
        }
    }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; one value per call keeps the stream layout simple.
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Confluent-determinant evaluation of the A-type transform at possibly
/// repeated spectra: groups equal entries of `lam` into derivative rows of
/// the exponential alternant. Reference oracle for tests; `x` must have
/// pairwise distinct entries.
pub fn atype_confluent_oracle(lam: &[f64], x: &[f64]) -> Result<f64> {
    let n = lam.len();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x.len() });
    }
    for i in 0..n {
        for j in i + 1..n {
            if x[i] == x[j] {
                return Err(Error::InvalidArgument(
                    "confluent oracle needs distinct evaluation points".into(),
                ));
            }
        }
    }
    // Blocks of equal lambda values, in decreasing order.
    let mut sorted = lam.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut blocks: Vec<(f64, usize)> = Vec::new();
    for &v in &sorted {
        match blocks.last_mut() {
            Some((w, r)) if *w == v => *r += 1,
            _ => blocks.push((v, 1)),
        }
    }
    // Matrix rows: x_j^p e^{v_b x_j} / p! for p = 0..r_b, carrying the
    // orientation sign of each block's confluent Vandermonde limit.
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut sign = 1.0f64;
    for &(v, r) in &blocks {
        if (r * (r - 1) / 2) % 2 == 1 {
            sign = -sign;
        }
        let mut factorial = 1.0;
        for p in 0..r {
            if p > 0 {
                factorial *= p as f64;
            }
            rows.push(
                x.iter()
                    .map(|&xj| xj.powi(p as i32) * (v * xj).exp() / factorial)
                    .collect(),
            );
        }
    }
    let det = det_f64(&mut rows);
    // Vandermonde of x with the i < j orientation.
    let mut delta_x = 1.0;
    for i in 0..n {
        for j in i + 1..n {
            delta_x *= x[i] - x[j];
        }
    }
    // Cross-block discriminant.
    let mut cross = 1.0;
    for b in 0..blocks.len() {
        for b2 in b + 1..blocks.len() {
            cross *= (blocks[b].0 - blocks[b2].0).powi((blocks[b].1 * blocks[b2].1) as i32);
        }
    }
    // Delta(rho) for the A family in R^n is the superfactorial.
    let mut delta_rho = 1.0f64;
    for m in 1..n {
        let mut fact = 1.0;
        for f in 1..=m {
            fact *= f as f64;
        }
        delta_rho *= fact;
    }
    Ok(sign * delta_rho * det / (delta_x * cross))
}

fn det_f64(rows: &mut [Vec<f64>]) -> f64 {
    let n = rows.len();
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| rows[a][col].abs().partial_cmp(&rows[b][col].abs()).unwrap())
            .unwrap();
        if rows[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            rows.swap(pivot, col);
            det = -det;
        }
        det *= rows[col][col];
        for r in col + 1..n {
            let f = rows[r][col] / rows[col][col];
            if f != 0.0 {
                for c in col..n {
                    rows[r][c] -= f * rows[col][c];
                }
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build, CartanLabel};

    fn rs(label: &str) -> RootSystem {
        build(CartanLabel::parse(label).unwrap()).unwrap()
    }

    fn cfg() -> OrbitalEvalConfig {
        OrbitalEvalConfig { mc_samples: 200_000, ..Default::default() }
    }

    #[test]
    fn trivial_normalizations() {
        let a2 = rs("A2");
        let c = cfg();
        assert_eq!(hc_eval(&a2, &[0.0; 3], &[0.7, -0.1, 0.2], &c).unwrap(), 1.0);
        assert_eq!(hc_eval(&a2, &[1.0, 0.3, -0.4], &[0.0; 3], &c).unwrap(), 1.0);
    }

    #[test]
    fn rank_one_closed_form() {
        // sinh(2)/2 for lambda = x = (1,-1): the two-term alternating sum
        // over the A1 group divided by the discriminants.
        let a1 = rs("A1");
        let v = hc_eval(&a1, &[1.0, -1.0], &[1.0, -1.0], &cfg()).unwrap();
        let want = (2.0f64.exp() - (-2.0f64).exp()) / 4.0;
        assert!((v - want).abs() < 1e-12, "got {v}, want {want}");
        assert!((want - 1.813_430_203_923_509).abs() < 1e-10);
    }

    #[test]
    fn non_reduced_rejected() {
        let bc1 = rs("BC1");
        assert!(matches!(
            hc_eval(&bc1, &[1.0], &[1.0], &cfg()),
            Err(Error::NonReduced)
        ));
    }

    #[test]
    fn symmetry_and_w_invariance() {
        let a2 = rs("A2");
        let ev = HcizEvaluator::new(&a2, cfg()).unwrap();
        let lam = [1.3, 0.2, -0.9];
        let x = [0.8, -0.3, -0.5];
        let base = ev.eval(&lam, &x).unwrap();
        let flipped = ev.eval(&x, &lam).unwrap();
        assert!((base - flipped).abs() <= 1e-10 * base.abs());
        // Permuting either argument (A-type Weyl action) leaves it unchanged.
        let perm = [0.2, 1.3, -0.9];
        let v = ev.eval(&perm, &x).unwrap();
        assert!((base - v).abs() <= 1e-10 * base.abs());
    }

    #[test]
    fn positivity_and_midpoint_convexity() {
        let b2 = rs("B2");
        let ev = HcizEvaluator::new(&b2, cfg()).unwrap();
        let u = [0.9, 0.4];
        let v = [1.7, -0.3];
        let x = [0.6, 0.1];
        let mid: Vec<f64> = u.iter().zip(&v).map(|(a, b)| 0.5 * (a + b)).collect();
        let fu = ev.eval(&u, &x).unwrap();
        let fv = ev.eval(&v, &x).unwrap();
        let fm = ev.eval(&mid, &x).unwrap();
        assert!(fu > 0.0 && fv > 0.0 && fm > 0.0);
        assert!(fm <= 0.5 * (fu + fv) + 1e-10);
    }

    #[test]
    fn degenerate_ladder_matches_confluent_oracle() {
        let a2 = rs("A2");
        let ev = HcizEvaluator::new(&a2, cfg()).unwrap();
        let lam = [1.0, 1.0, 0.0];
        let x = [0.9, 0.2, -0.4];
        let ladder = ev.eval(&lam, &x).unwrap();
        let oracle = atype_confluent_oracle(&lam, &x).unwrap();
        assert!(
            (ladder - oracle).abs() <= 2e-6 * oracle.abs(),
            "ladder {ladder} vs oracle {oracle}"
        );
    }

    #[test]
    fn confluent_oracle_point_mass() {
        // Fully degenerate spectrum: the orbit is a point, so the transform
        // is a single exponential.
        let lam = [0.7, 0.7, 0.7];
        let x = [0.4, 0.1, -0.3];
        let want = (0.7 * (0.4 + 0.1 - 0.3) as f64).exp();
        let got = atype_confluent_oracle(&lam, &x).unwrap();
        assert!((got - want).abs() < 1e-12 * want);
    }

    #[test]
    fn confluent_oracle_matches_regular_formula_when_regular() {
        let a2 = rs("A2");
        let ev = HcizEvaluator::new(&a2, cfg()).unwrap();
        let lam = [1.4, 0.5, -0.8];
        let x = [0.9, 0.2, -0.4];
        let exact = ev.eval(&lam, &x).unwrap();
        let oracle = atype_confluent_oracle(&lam, &x).unwrap();
        assert!((exact - oracle).abs() <= 1e-10 * exact.abs());
    }

    #[test]
    fn mc_oracle_rank_one_exact() {
        let (mean, stderr) = mc_unitary_oracle(1, &[0.8], &[1.1], &cfg()).unwrap();
        assert_eq!(stderr, 0.0);
        assert!((mean - (0.8f64 * 1.1).exp()).abs() < 1e-14);
    }

    #[test]
    fn mc_matches_exact_n2() {
        let a1 = rs("A1");
        let ev = HcizEvaluator::new(&a1, cfg()).unwrap();
        let lam = [1.0, 0.0];
        let x = [1.0, 0.0];
        let exact = ev.eval(&lam, &x).unwrap();
        let (mean, stderr) = mc_unitary_oracle(2, &lam, &x, &cfg()).unwrap();
        assert!(
            (mean - exact).abs() <= 3.0 * stderr,
            "mc {mean} +- {stderr}, exact {exact}"
        );
    }

    #[test]
    fn mc_is_deterministic_given_seed() {
        let c = OrbitalEvalConfig { mc_samples: 20_000, ..Default::default() };
        let a = mc_unitary_oracle(2, &[1.0, 0.0], &[0.5, -0.5], &c).unwrap();
        let b = mc_unitary_oracle(2, &[1.0, 0.0], &[0.5, -0.5], &c).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn leading_term_ratio_tends_to_one() {
        let a2 = rs("A2");
        let ev = HcizEvaluator::new(&a2, cfg()).unwrap();
        let lam = [1.2, 0.3, -1.5];
        let x = [1.0, 0.1, -1.1];
        let mut prev_gap = f64::INFINITY;
        for t in [10.0, 20.0, 30.0] {
            let tx: Vec<f64> = x.iter().map(|c| c * t).collect();
            let full = ev.eval(&lam, &tx).unwrap();
            let lead = ev.leading(&lam, &x, t).unwrap();
            let gap = (full / lead - 1.0).abs();
            assert!(gap < prev_gap, "ratio not improving at t={t}");
            prev_gap = gap;
        }
        assert!(prev_gap < 1e-6, "final gap {prev_gap}");
    }

    #[test]
    fn rank_one_leading_ratio_closed_form() {
        // Two-term alternating sum: ratio = 1 - exp(-2 t <lam, x>).
        let a1 = rs("A1");
        let ev = HcizEvaluator::new(&a1, cfg()).unwrap();
        let lam = [0.7, -0.7];
        let x = [0.4, -0.4];
        for t in [2.0, 5.0] {
            let tx: Vec<f64> = x.iter().map(|c| c * t).collect();
            let ratio = ev.eval(&lam, &tx).unwrap() / ev.leading(&lam, &x, t).unwrap();
            let want = 1.0 - (-2.0 * t * fdot(&lam, &x)).exp();
            assert!((ratio - want).abs() < 1e-12, "t={t}: {ratio} vs {want}");
        }
    }

    #[test]
    fn empty_matrix_rejected() {
        assert!(matches!(
            mc_unitary_oracle(0, &[], &[], &cfg()),
            Err(Error::EmptyMatrix)
        ));
    }
}

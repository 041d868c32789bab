//! Seeded theorem-verification and counterexample scans.
//!
//! A scan samples pairs of spectral data (half majorizing by construction,
//! half not), evaluates the mode's function pair over a dominant-direction
//! grid plus the separating ray, and reports per-case margins. A majorizing
//! pair must keep the pointwise order everywhere scanned; a non-majorizing
//! pair must produce a reversal somewhere along the separating ray. Any
//! violation is re-checked with tightened numerics before it is surfaced as
//! a counterexample candidate.
//!
//! Cases are independent; per-case RNG streams are derived from
//! `(seed, case index)` through the ChaCha stream mechanism, so reports are
//! byte-identical for any worker count (wall time aside).

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compactfns::{self, Partition};
use crate::exppoly::{self, InnerProductPlan};
use crate::hgf1::{f_rank1, Rank1Params};
use crate::hopoly;
use crate::majorize;
use crate::orbital::{HcizEvaluator, OrbitalEvalConfig};
use crate::ratio::{self, rat};
use crate::rootsys::{CartanLabel, MultiplicityParam, RootSystem};
use crate::vector::RatVec;
use crate::{tol, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Spectral,
    Rank1,
    Hciz,
    Schur,
    Muirhead,
}

impl ScanMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(ScanMode::Spectral),
            "rank1" => Ok(ScanMode::Rank1),
            "hciz" => Ok(ScanMode::Hciz),
            "schur" => Ok(ScanMode::Schur),
            "muirhead" => Ok(ScanMode::Muirhead),
            other => Err(Error::InvalidArgument(format!("unknown scan mode: {other}"))),
        }
    }

    fn margin_tolerance(&self) -> f64 {
        match self {
            ScanMode::Spectral => tol::SPECTRAL_MARGIN,
            _ => tol::GRID_MARGIN,
        }
    }
}

impl std::fmt::Display for ScanMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ScanMode::Spectral => "spectral",
            ScanMode::Rank1 => "rank1",
            ScanMode::Hciz => "hciz",
            ScanMode::Schur => "schur",
            ScanMode::Muirhead => "muirhead",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub mode: ScanMode,
    /// Root system; ignored by rank1 and schur modes.
    pub label: Option<CartanLabel>,
    /// Fixed multiplicities per orbit; sampled per case when absent.
    pub k: Option<Vec<BigRational>>,
    pub cases: usize,
    pub seed: u64,
    /// Ray multipliers of the evaluation grid.
    pub ts: Vec<f64>,
    /// Dominant directions sampled per case.
    pub directions: usize,
    /// Number of variables for schur mode.
    pub n_vars: usize,
    /// Maximum cell count for schur mode.
    pub max_cells: usize,
    /// Test hook: flip the computed margin of one case, to exercise the
    /// violation reporting path end to end.
    pub inject_fault_case: Option<usize>,
    /// Command-line echo recorded in the report.
    pub command: String,
}

impl ScanConfig {
    pub fn new(mode: ScanMode) -> Self {
        ScanConfig {
            mode,
            label: None,
            k: None,
            cases: 100,
            seed: 1,
            ts: vec![0.25, 0.5, 1.0, 2.0, 4.0, 8.0],
            directions: 3,
            n_vars: 3,
            max_cells: 6,
            inject_fault_case: None,
            command: String::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSpec {
    pub directions: Vec<Vec<f64>>,
    pub ts: Vec<f64>,
    /// Separating direction used for the reversal ray (exact coordinates).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separating: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CaseRecord {
    pub index: usize,
    pub lambda: Vec<String>,
    pub mu: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<String>>,
    pub majorizes: bool,
    pub grid: GridSpec,
    /// Minimal normalized margin observed (majorizing cases) or the reversal
    /// margin (non-majorizing cases).
    pub margin: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reversal_found: Option<bool>,
    pub consistent: bool,
    /// Whether a first-pass violation survived the tightened re-run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub confirmed_violation: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanSummary {
    pub violations: usize,
    pub min_margin: f64,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub tool_version: String,
    pub command: String,
    pub root_system: String,
    pub mode: String,
    /// Fixed multiplicities, or "sampled".
    pub k: Vec<String>,
    pub rng_seed: u64,
    pub case_count: usize,
    pub cases: Vec<CaseRecord>,
    pub summary: ScanSummary,
}

impl ScanReport {
    /// Exit-code contract: 0 all consistent, 2 violation found.
    pub fn exit_code(&self) -> i32 {
        if self.summary.violations > 0 {
            2
        } else {
            0
        }
    }

    /// JSON Lines: one line per case record, then the summary object with
    /// the run header.
    pub fn write_jsonl<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        for case in &self.cases {
            serde_json::to_writer(&mut w, case)?;
            writeln!(w)?;
        }
        let header = serde_json::json!({
            "tool_version": self.tool_version,
            "command": self.command,
            "root_system": self.root_system,
            "mode": self.mode,
            "k": self.k,
            "rng_seed": self.rng_seed,
            "case_count": self.case_count,
            "summary": self.summary,
        });
        serde_json::to_writer(&mut w, &header)?;
        writeln!(w)
    }

    /// Tabular per-case export.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "index,lambda,mu,majorizes,margin,consistent")?;
        for c in &self.cases {
            writeln!(
                w,
                "{},{},{},{},{:.17e},{}",
                c.index,
                c.lambda.join(" "),
                c.mu.join(" "),
                c.majorizes,
                c.margin,
                c.consistent
            )?;
        }
        Ok(())
    }
}

fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

/// Dominant direction with unit sup-norm, sampled from the fundamental
/// weights.
fn sample_dominant_direction(rs: &RootSystem, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut y = vec![0.0f64; rs.ambient_dim];
    for w in &rs.fundamental_weights {
        let u: f64 = rng.gen_range(0.2..1.0);
        for (yi, wi) in y.iter_mut().zip(&w.to_f64()) {
            *yi += u * wi;
        }
    }
    let norm = y.iter().map(|c| c.abs()).fold(0.0, f64::max).max(1e-9);
    for c in &mut y {
        *c /= norm;
    }
    y
}

fn random_rational_vec(rng: &mut ChaCha8Rng, dim: usize) -> RatVec {
    let denoms = [1i64, 2, 4];
    RatVec(
        (0..dim)
            .map(|_| rat(rng.gen_range(-4..=4), denoms[rng.gen_range(0..3)]))
            .collect(),
    )
}

/// Random convex combination of orbit points, exact.
fn random_hull_point(rs: &RootSystem, lam: &RatVec, rng: &mut ChaCha8Rng) -> RatVec {
    let orbit = rs.weyl_orbit(lam);
    let picks = 3.min(orbit.len());
    let mut weights: Vec<i64> = (0..picks).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    let mut acc = RatVec::zero(rs.ambient_dim);
    for w in &mut weights {
        let idx = rng.gen_range(0..orbit.len());
        acc = &acc + &orbit[idx].scale(&rat(*w, total));
    }
    acc
}

fn format_vec(v: &RatVec) -> Vec<String> {
    v.0.iter().map(ratio::format_rational).collect()
}

/// The per-case function pair: evaluates both sides at a point.
trait PairEval: Sync {
    fn both(&self, x: &[f64]) -> Result<(f64, f64)>;
}

fn normalized_margin(a: f64, b: f64) -> f64 {
    (a - b) / a.abs().max(b.abs()).max(1.0)
}

struct CaseOutcome {
    margin: f64,
    reversal_found: Option<bool>,
    consistent: bool,
    confirmed: Option<bool>,
    note: Option<String>,
}

/// Shared verdict logic: scan the grid, extend the ray for reversals, apply
/// the fault hook, re-check violations with the tightened evaluator.
#[allow(clippy::too_many_arguments)]
fn judge_case(
    majorizes: bool,
    grid_points: &[Vec<f64>],
    ray: Option<(&[f64], f64)>,
    eval: &dyn PairEval,
    tightened: Option<&dyn PairEval>,
    tolerance: f64,
    fault: bool,
) -> Result<CaseOutcome> {
    let margin_at = |e: &dyn PairEval, x: &[f64]| -> Result<f64> {
        let (a, b) = e.both(x)?;
        let mut m = normalized_margin(a, b);
        if fault {
            m = -m;
        }
        Ok(m)
    };
    let scan_min = |e: &dyn PairEval| -> Result<f64> {
        let mut min = f64::INFINITY;
        for x in grid_points {
            min = min.min(margin_at(e, x)?);
        }
        Ok(min)
    };
    if majorizes {
        let min = scan_min(eval)?;
        if min >= -tolerance {
            return Ok(CaseOutcome {
                margin: min,
                reversal_found: None,
                consistent: true,
                confirmed: None,
                note: None,
            });
        }
        // Tightened re-run before surfacing a counterexample candidate.
        let re_min = match tightened {
            Some(t) => scan_min(t)?,
            None => min,
        };
        if re_min >= -tolerance {
            return Ok(CaseOutcome {
                margin: re_min,
                reversal_found: None,
                consistent: true,
                confirmed: Some(false),
                note: Some("first-pass violation vanished under tightened tolerances".into()),
            });
        }
        return Ok(CaseOutcome {
            margin: re_min,
            reversal_found: None,
            consistent: false,
            confirmed: Some(true),
            note: Some("pointwise order violated for a majorizing pair".into()),
        });
    }
    // Non-majorizing: a reversal must exist; search the grid, then walk out
    // the separating ray.
    let search = |e: &dyn PairEval, t_cap: f64| -> Result<Option<f64>> {
        for x in grid_points {
            let m = margin_at(e, x)?;
            if m < -tolerance {
                return Ok(Some(m));
            }
        }
        if let Some((y, _)) = ray {
            let mut t = 0.25;
            while t <= t_cap {
                let x: Vec<f64> = y.iter().map(|c| c * t).collect();
                match margin_at(e, &x) {
                    Ok(m) => {
                        if m < -tolerance {
                            return Ok(Some(m));
                        }
                    }
                    Err(Error::SeriesNonConvergence(_)) => break,
                    Err(other) => return Err(other),
                }
                t *= 2.0;
            }
        }
        Ok(None)
    };
    let t_cap = ray.map(|(_, cap)| cap).unwrap_or(0.0);
    if let Some(m) = search(eval, t_cap)? {
        return Ok(CaseOutcome {
            margin: m,
            reversal_found: Some(true),
            consistent: true,
            confirmed: None,
            note: None,
        });
    }
    let (re, re_margin) = match tightened {
        Some(t) => match search(t, t_cap * 2.0)? {
            Some(m) => (true, m),
            None => (false, f64::INFINITY),
        },
        None => match search(eval, t_cap * 2.0)? {
            Some(m) => (true, m),
            None => (false, f64::INFINITY),
        },
    };
    if re {
        return Ok(CaseOutcome {
            margin: re_margin,
            reversal_found: Some(true),
            consistent: true,
            confirmed: Some(false),
            note: Some("reversal found only on the extended ray".into()),
        });
    }
    Ok(CaseOutcome {
        margin: f64::INFINITY,
        reversal_found: Some(false),
        consistent: false,
        confirmed: Some(true),
        note: Some("no reversal found for a non-majorizing pair".into()),
    })
}

/// Run a scan to completion. Numerical failures abort the scan (the caller
/// maps them to the usage/numerics exit code).
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    let started = std::time::Instant::now();
    let rs = match cfg.mode {
        ScanMode::Rank1 | ScanMode::Schur => None,
        _ => {
            let label = cfg.label.ok_or_else(|| {
                Error::InvalidArgument("this scan mode needs a root system label".into())
            })?;
            Some(crate::rootsys::build(label)?)
        }
    };
    if let (Some(rs), Some(kv)) = (&rs, &cfg.k) {
        // Validate fixed multiplicities early.
        MultiplicityParam::from_values(rs, kv.clone())?;
    }
    let hciz_ev = match (cfg.mode, &rs) {
        (ScanMode::Hciz, Some(rs)) => Some(HcizEvaluator::new(rs, OrbitalEvalConfig::default())?),
        _ => None,
    };
    let hciz_tight = match (cfg.mode, &rs) {
        (ScanMode::Hciz, Some(rs)) => Some(HcizEvaluator::new(
            rs,
            OrbitalEvalConfig {
                degeneracy_tolerance: 1e-11,
                perturbation_steps: vec![1e-2, 10f64.powf(-2.5), 1e-3, 10f64.powf(-3.5)],
                ..Default::default()
            },
        )?),
        _ => None,
    };

    let results: Result<Vec<CaseRecord>> = (0..cfg.cases)
        .into_par_iter()
        .map(|index| {
            run_case(cfg, rs.as_ref(), hciz_ev.as_ref(), hciz_tight.as_ref(), index)
        })
        .collect();
    let cases = results?;
    let violations = cases.iter().filter(|c| !c.consistent).count();
    let min_margin = cases
        .iter()
        .map(|c| c.margin)
        .filter(|m| m.is_finite())
        .fold(f64::INFINITY, f64::min);
    Ok(ScanReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        command: cfg.command.clone(),
        root_system: cfg
            .label
            .map(|l| l.to_string())
            .unwrap_or_else(|| match cfg.mode {
                ScanMode::Rank1 => "BC1".to_string(),
                ScanMode::Schur => format!("A{}", cfg.n_vars - 1),
                _ => "-".to_string(),
            }),
        mode: cfg.mode.to_string(),
        k: cfg
            .k
            .as_ref()
            .map(|ks| ks.iter().map(ratio::format_rational).collect())
            .unwrap_or_else(|| vec!["sampled".to_string()]),
        rng_seed: cfg.seed,
        case_count: cfg.cases,
        cases,
        summary: ScanSummary {
            violations,
            min_margin,
            wall_time_ms: started.elapsed().as_millis() as u64,
        },
    })
}

fn run_case(
    cfg: &ScanConfig,
    rs: Option<&RootSystem>,
    hciz: Option<&HcizEvaluator<'_>>,
    hciz_tight: Option<&HcizEvaluator<'_>>,
    index: usize,
) -> Result<CaseRecord> {
    let mut rng = case_rng(cfg.seed, index);
    let fault = cfg.inject_fault_case == Some(index);
    match cfg.mode {
        ScanMode::Hciz => case_hciz(cfg, rs.unwrap(), hciz.unwrap(), hciz_tight, index, &mut rng, fault),
        ScanMode::Spectral | ScanMode::Muirhead => {
            case_spectral(cfg, rs.unwrap(), index, &mut rng, fault)
        }
        ScanMode::Rank1 => case_rank1(cfg, index, &mut rng, fault),
        ScanMode::Schur => case_schur(cfg, index, &mut rng, fault),
    }
}

struct HcizPair<'a> {
    ev: &'a HcizEvaluator<'a>,
    lam: Vec<f64>,
    mu: Vec<f64>,
}

impl PairEval for HcizPair<'_> {
    fn both(&self, x: &[f64]) -> Result<(f64, f64)> {
        Ok((self.ev.eval(&self.lam, x)?, self.ev.eval(&self.mu, x)?))
    }
}

fn case_hciz(
    cfg: &ScanConfig,
    rs: &RootSystem,
    ev: &HcizEvaluator<'_>,
    ev_tight: Option<&HcizEvaluator<'_>>,
    index: usize,
    rng: &mut ChaCha8Rng,
    fault: bool,
) -> Result<CaseRecord> {
    let lam = random_rational_vec(rng, rs.ambient_dim);
    let (mu, majorizes) = if rng.gen_bool(0.5) {
        (random_hull_point(rs, &lam, rng), true)
    } else {
        loop {
            let cand = random_rational_vec(rng, rs.ambient_dim);
            if !majorize::w_majorizes(rs, &lam, &cand)? {
                break (cand, false);
            }
        }
    };
    debug_assert_eq!(majorize::w_majorizes(rs, &lam, &mu)?, majorizes);
    let directions: Vec<Vec<f64>> =
        (0..cfg.directions).map(|_| sample_dominant_direction(rs, rng)).collect();
    let mut grid = Vec::new();
    for d in &directions {
        for &t in &cfg.ts {
            grid.push(d.iter().map(|c| c * t).collect::<Vec<f64>>());
        }
    }
    let witness = if majorizes {
        None
    } else {
        majorize::separating_functional(rs, &lam, &mu)?
    };
    let ray_dir: Option<Vec<f64>> = witness.as_ref().map(|w| w.y.to_f64());
    let pair = HcizPair { ev, lam: lam.to_f64(), mu: mu.to_f64() };
    let tight = ev_tight.map(|e| HcizPair { ev: e, lam: lam.to_f64(), mu: mu.to_f64() });
    let outcome = judge_case(
        majorizes,
        &grid,
        ray_dir.as_deref().map(|y| (y, 128.0)),
        &pair,
        tight.as_ref().map(|t| t as &dyn PairEval),
        cfg.mode.margin_tolerance(),
        fault,
    )?;
    Ok(CaseRecord {
        index,
        lambda: format_vec(&lam),
        mu: format_vec(&mu),
        k: None,
        majorizes,
        grid: GridSpec {
            directions,
            ts: cfg.ts.clone(),
            separating: witness.as_ref().map(|w| format_vec(&w.y)),
        },
        margin: outcome.margin,
        reversal_found: outcome.reversal_found,
        consistent: outcome.consistent,
        confirmed_violation: outcome.confirmed,
        note: outcome.note,
    })
}

struct SpectralPair<'a> {
    rs: &'a RootSystem,
    c_lam: f64,
    p_lam: hopoly::HoPoly<f64>,
    c_mu: f64,
    p_mu: hopoly::HoPoly<f64>,
}

impl PairEval for SpectralPair<'_> {
    fn both(&self, x: &[f64]) -> Result<(f64, f64)> {
        Ok((
            self.c_lam * self.p_lam.evaluate(self.rs, x),
            self.c_mu * self.p_mu.evaluate(self.rs, x),
        ))
    }
}

fn sample_lattice_pair(
    rs: &RootSystem,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<i64>, Vec<i64>, bool)> {
    let rank = rs.rank();
    let lam: Vec<i64> = loop {
        let c: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=3)).collect();
        if c.iter().any(|&v| v > 0) {
            break c;
        }
    };
    let lam_vec = rs.lattice_to_ambient(&lam);
    if rng.gen_bool(0.5) {
        // Majorizing: snap a hull point to the dominant lattice and verify.
        for _ in 0..50 {
            let hull = random_hull_point(rs, &lam_vec, rng);
            let (dom, _) = rs.dominant_rep(&hull);
            let coords: Vec<i64> = rs
                .simple_roots
                .iter()
                .map(|a| ratio::to_f64(&rs.pair_coroot(&dom, a)).round().max(0.0) as i64)
                .collect();
            let cand = rs.lattice_to_ambient(&coords);
            if majorize::w_majorizes(rs, &lam_vec, &cand)? {
                return Ok((lam, coords, true));
            }
        }
        // The zero weight is always in the hull.
        Ok((lam.clone(), vec![0; rank], true))
    } else {
        loop {
            let cand: Vec<i64> = (0..rank).map(|_| rng.gen_range(0..=3)).collect();
            let cand_vec = rs.lattice_to_ambient(&cand);
            if !majorize::w_majorizes(rs, &lam_vec, &cand_vec)? {
                return Ok((lam, cand, false));
            }
        }
    }
}

fn case_spectral(
    cfg: &ScanConfig,
    rs: &RootSystem,
    index: usize,
    rng: &mut ChaCha8Rng,
    fault: bool,
) -> Result<CaseRecord> {
    let k = if cfg.mode == ScanMode::Muirhead {
        MultiplicityParam::zero(rs)
    } else {
        match &cfg.k {
            Some(values) => MultiplicityParam::from_values(rs, values.clone())?,
            // Eighths in (0, 2].
            None => MultiplicityParam::from_values(
                rs,
                (0..rs.orbit_count()).map(|_| rat(rng.gen_range(2..=16), 8)).collect(),
            )?,
        }
    };
    let (lam, mu, majorizes) = sample_lattice_pair(rs, rng)?;
    let lam_vec = rs.lattice_to_ambient(&lam);
    let mu_vec = rs.lattice_to_ambient(&mu);
    let make_pair = |base_grid: usize| -> Result<SpectralPair<'_>> {
        if k.is_zero() {
            // Orbit-averaged exponentials: represent through the monomial
            // polynomial scaled by the orbit size.
            let build = |pt: &[i64]| -> hopoly::HoPoly<f64> {
                let m = exppoly::monomial_symmetric(rs, pt);
                let orbit = exppoly::orbit_coords(rs, pt).len() as f64;
                hopoly::HoPoly {
                    lambda: pt.to_vec(),
                    basis: vec![pt.to_vec()],
                    coeffs: vec![1.0],
                    poly: m.map_to_f64().scale(&(1.0 / orbit)),
                }
            };
            return Ok(SpectralPair {
                rs,
                c_lam: 1.0,
                p_lam: build(&lam),
                c_mu: 1.0,
                p_mu: build(&mu),
            });
        }
        let mut plan = InnerProductPlan::auto(k.clone());
        plan.base_grid = base_grid;
        Ok(SpectralPair {
            rs,
            c_lam: hopoly::c_normalizer(rs, &k, &lam)?,
            p_lam: hopoly::ho_poly(rs, &lam, &plan)?,
            c_mu: hopoly::c_normalizer(rs, &k, &mu)?,
            p_mu: hopoly::ho_poly(rs, &mu, &plan)?,
        })
    };
    let pair = make_pair(64)?;
    let tight = make_pair(256)?;
    let directions: Vec<Vec<f64>> =
        (0..cfg.directions).map(|_| sample_dominant_direction(rs, rng)).collect();
    let mut grid = Vec::new();
    for d in &directions {
        for &t in &cfg.ts {
            grid.push(d.iter().map(|c| c * t).collect::<Vec<f64>>());
        }
    }
    let witness = if majorizes {
        None
    } else {
        majorize::separating_functional(rs, &lam_vec, &mu_vec)?
    };
    let ray_dir: Option<Vec<f64>> = witness.as_ref().map(|w| w.y.to_f64());
    let outcome = judge_case(
        majorizes,
        &grid,
        ray_dir.as_deref().map(|y| (y, 128.0)),
        &pair,
        Some(&tight as &dyn PairEval),
        cfg.mode.margin_tolerance(),
        fault,
    )?;
    Ok(CaseRecord {
        index,
        lambda: lam.iter().map(|v| v.to_string()).collect(),
        mu: mu.iter().map(|v| v.to_string()).collect(),
        k: Some(k.values().iter().map(ratio::format_rational).collect()),
        majorizes,
        grid: GridSpec {
            directions,
            ts: cfg.ts.clone(),
            separating: witness.as_ref().map(|w| format_vec(&w.y)),
        },
        margin: outcome.margin,
        reversal_found: outcome.reversal_found,
        consistent: outcome.consistent,
        confirmed_violation: outcome.confirmed,
        note: outcome.note,
    })
}

struct Rank1Pair {
    k1: f64,
    k2: f64,
    lam: f64,
    mu: f64,
}

impl PairEval for Rank1Pair {
    fn both(&self, x: &[f64]) -> Result<(f64, f64)> {
        let a = f_rank1(&Rank1Params { k1: self.k1, k2: self.k2, lambda: self.lam, x: x[0] })?;
        let b = f_rank1(&Rank1Params { k1: self.k1, k2: self.k2, lambda: self.mu, x: x[0] })?;
        Ok((a, b))
    }
}

fn case_rank1(
    cfg: &ScanConfig,
    index: usize,
    rng: &mut ChaCha8Rng,
    fault: bool,
) -> Result<CaseRecord> {
    let (k1, k2) = match &cfg.k {
        Some(values) if values.len() == 2 => {
            (ratio::to_f64(&values[0]), ratio::to_f64(&values[1]))
        }
        _ => (rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0)),
    };
    let lam: f64 = rng.gen_range(0.0..2.2);
    let (mu, majorizes) = if rng.gen_bool(0.5) {
        (lam * rng.gen_range(0.0..1.0), true)
    } else {
        (lam + rng.gen_range(0.25..1.0), false)
    };
    let grid: Vec<Vec<f64>> = cfg.ts.iter().map(|&t| vec![t]).collect();
    let pair = Rank1Pair { k1, k2, lam, mu };
    let ray = [1.0f64];
    let outcome = judge_case(
        majorizes,
        &grid,
        (!majorizes).then_some((&ray[..], 9.0)),
        &pair,
        None,
        cfg.mode.margin_tolerance(),
        fault,
    )?;
    Ok(CaseRecord {
        index,
        lambda: vec![format!("{lam:.12}")],
        mu: vec![format!("{mu:.12}")],
        k: Some(vec![format!("{k1:.12}"), format!("{k2:.12}")]),
        majorizes,
        grid: GridSpec {
            directions: vec![vec![1.0]],
            ts: cfg.ts.clone(),
            separating: (!majorizes).then(|| vec!["1".to_string()]),
        },
        margin: outcome.margin,
        reversal_found: outcome.reversal_found,
        consistent: outcome.consistent,
        confirmed_violation: outcome.confirmed,
        note: outcome.note,
    })
}

fn sample_partition(rng: &mut ChaCha8Rng, d: usize, max_rows: usize) -> Partition {
    let all: Vec<Partition> = compactfns::partitions_of(d)
        .into_iter()
        .filter(|p| p.rows() <= max_rows)
        .collect();
    all[rng.gen_range(0..all.len())].clone()
}

/// One cell moved down: preserves the partial-sum order.
fn random_box_move(p: &Partition, max_rows: usize, rng: &mut ChaCha8Rng) -> Option<Partition> {
    let mut parts: Vec<usize> = p.parts().to_vec();
    parts.push(0);
    let mut moves = Vec::new();
    for i in 0..parts.len().saturating_sub(1) {
        for j in i + 1..parts.len().min(max_rows) {
            if parts[i] == 0 {
                continue;
            }
            let mut q = parts.clone();
            q[i] -= 1;
            q[j] += 1;
            let mut sorted = q.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            if sorted == q {
                moves.push(q);
            }
        }
    }
    if moves.is_empty() {
        return None;
    }
    let pick = moves[rng.gen_range(0..moves.len())].clone();
    Partition::new(pick).ok()
}

struct SchurPair {
    lam: Partition,
    mu: Partition,
}

impl PairEval for SchurPair {
    fn both(&self, x: &[f64]) -> Result<(f64, f64)> {
        Ok((
            compactfns::schur_normalized(&self.lam, x)?,
            compactfns::schur_normalized(&self.mu, x)?,
        ))
    }
}

fn case_schur(
    cfg: &ScanConfig,
    index: usize,
    rng: &mut ChaCha8Rng,
    fault: bool,
) -> Result<CaseRecord> {
    let n = cfg.n_vars;
    let d = rng.gen_range(2..=cfg.max_cells);
    let lam = sample_partition(rng, d, n);
    let (mu, majorizes) = if rng.gen_bool(0.5) {
        let mut mu = lam.clone();
        for _ in 0..rng.gen_range(0..=2) {
            if let Some(next) = random_box_move(&mu, n, rng) {
                mu = next;
            }
        }
        (mu, true)
    } else {
        let mut tries = 0;
        loop {
            let cand = sample_partition(rng, d, n);
            if !compactfns::majorizes_partial_sums(&lam, &cand) {
                break (cand, false);
            }
            tries += 1;
            if tries > 200 {
                // Every partition of d with <= n rows is below lam (lam is
                // the maximum); use a majorizing case instead.
                break (lam.clone(), true);
            }
        }
    };
    debug_assert_eq!(compactfns::majorizes_partial_sums(&lam, &mu), majorizes);
    // Positive grid points exp(t * y) for sign-mixed directions y.
    let directions: Vec<Vec<f64>> = (0..cfg.directions)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let mut grid = Vec::new();
    for dvec in &directions {
        for &t in &cfg.ts {
            if t > 4.0 {
                continue;
            }
            grid.push(dvec.iter().map(|c| (c * t).exp()).collect::<Vec<f64>>());
        }
    }
    grid.push(vec![1.0; n]);
    let witness = if majorizes {
        None
    } else {
        let label = CartanLabel::new(crate::rootsys::CartanFamily::A, n - 1)?;
        let rs = crate::rootsys::build(label)?;
        majorize::separating_functional(&rs, &lam.to_vec(n), &mu.to_vec(n))?
    };
    let pair = SchurPair { lam: lam.clone(), mu: mu.clone() };
    // The ray for Schur data exponentiates coordinates.
    let outcome = if let Some(w) = &witness {
        let y = w.y.to_f64();
        let mut ray_grid = grid.clone();
        let mut t = 0.25;
        while t <= 64.0 {
            ray_grid.push(y.iter().map(|c| (c * t).exp()).collect());
            t *= 2.0;
        }
        judge_case(majorizes, &ray_grid, None, &pair, None, cfg.mode.margin_tolerance(), fault)?
    } else {
        judge_case(majorizes, &grid, None, &pair, None, cfg.mode.margin_tolerance(), fault)?
    };
    Ok(CaseRecord {
        index,
        lambda: lam.parts().iter().map(|v| v.to_string()).collect(),
        mu: mu.parts().iter().map(|v| v.to_string()).collect(),
        k: None,
        majorizes,
        grid: GridSpec {
            directions,
            ts: cfg.ts.clone(),
            separating: witness.as_ref().map(|w| format_vec(&w.y)),
        },
        margin: outcome.margin,
        reversal_found: outcome.reversal_found,
        consistent: outcome.consistent,
        confirmed_violation: outcome.confirmed,
        note: outcome.note,
    })
}

//! Trapezoid quadrature over the torus of the coroot lattice.
//!
//! Inner products with non-integer multiplicities integrate
//! `f(ix) conj(g(ix)) prod_a |2 sin(<a,x>/2)|^{2 k_a}` over a fundamental
//! cell. In the coordinates `x = 2 pi sum_j t_j a_j^vee`, every lattice
//! exponential has integer frequency equal to its fundamental-weight
//! coordinates, so the whole computation reduces to Fourier coefficients of
//! the weight on a uniform grid. Those are extracted by per-axis reduction
//! onto the small box of needed frequencies.
//!
//! The weight has `|u|^{2k}` singularities along the root walls, so plain
//! trapezoid values converge like `N^{-(2k+1)}`. The doubling ladder is
//! therefore accelerated by eliminating the known exponents
//! `2k + 1 + 2m` (classic Romberg when `2k` is odd, nothing at all when the
//! weight is a trigonometric polynomial), and convergence is judged on the
//! accelerated values relative to the product-norm scale.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::sync::Mutex;


use crate::exppoly::{FloatPoly, Lat};
use crate::ratio;
use crate::rootsys::{MultiplicityParam, RootSystem};
use crate::{tol, Error, Result};

/// Per-axis grid cap by rank, keeping the largest table around 100 MB.
fn axis_cap(rank: usize) -> usize {
    match rank {
        1 => 1 << 15,
        2 => 1 << 12,
        _ => 1 << 8,
    }
}

fn next_pow2(n: usize) -> usize {
    n.next_power_of_two()
}

/// Fourier table of the weight at one grid level: real coefficients on the
/// box `|n_j| <= kbox`.
struct FreqTable {
    kbox: i64,
    values: Vec<f64>,
}

impl FreqTable {
    fn get(&self, freq: &[i64]) -> f64 {
        let side = (2 * self.kbox + 1) as usize;
        let mut idx = 0usize;
        for &n in freq {
            debug_assert!(n.abs() <= self.kbox);
            idx = idx * side + (n + self.kbox) as usize;
        }
        self.values[idx]
    }
}

pub struct TorusQuadrature<'a> {
    rs: &'a RootSystem,
    /// Integer coroot-basis frequencies `<alpha, alpha_j^vee>` per positive root.
    root_freqs: Vec<Vec<i64>>,
    /// `2 k_alpha` per positive root.
    exponents2k: Vec<f64>,
    /// Error-ladder exponents to eliminate, ascending.
    error_exponents: Vec<f64>,
    base_grid: usize,
    /// Frequency box floor: keeps every inner product of a batch on the
    /// same grid levels, so values are mutually consistent to solver
    /// precision rather than to quadrature precision.
    min_box: i64,
    tables: Mutex<HashMap<usize, std::sync::Arc<FreqTable>>>,
}

impl<'a> TorusQuadrature<'a> {
    pub fn new(rs: &'a RootSystem, k: &MultiplicityParam, base_grid: usize) -> Result<Self> {
        let mut root_freqs = Vec::new();
        let mut exponents2k = Vec::new();
        for (idx, alpha) in rs.positive_roots.iter().enumerate() {
            let ka = k.value_for_positive(rs, idx);
            let kf = ratio::to_f64(ka);
            if kf == 0.0 {
                continue;
            }
            let freqs: Vec<i64> = rs
                .simple_roots
                .iter()
                .map(|aj| {
                    let coroot = rs.coroot(aj);
                    ratio::as_i64(&rs.inner(alpha, &coroot))
                        .expect("crystallographic pairings are integers")
                })
                .collect();
            root_freqs.push(freqs);
            exponents2k.push(2.0 * kf);
        }
        // Singular error exponents: a wall with fractional weight
        // contributes 2k+1 and its even shifts; wall intersections of
        // codimension two and three contribute sums. Even integer 2k means
        // the factor is a trig polynomial and contributes nothing.
        let mut base: Vec<f64> = exponents2k
            .iter()
            .filter(|&&e| (e - (e / 2.0).round() * 2.0).abs() > 1e-12)
            .map(|&e| e + 1.0)
            .collect();
        base.sort_by(|a, b| a.partial_cmp(b).unwrap());
        base.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        let mut error_exponents = Vec::new();
        for (i, &p) in base.iter().enumerate() {
            for m in 0..3 {
                error_exponents.push(p + 2.0 * m as f64);
            }
            for (j, &q) in base.iter().enumerate().skip(i) {
                error_exponents.push(p + q);
                error_exponents.push(p + q + 2.0);
                for &r in &base[j..] {
                    error_exponents.push(p + q + r);
                }
            }
        }
        error_exponents.retain(|&p| p < 9.0);
        error_exponents.sort_by(|a, b| a.partial_cmp(b).unwrap());
        error_exponents.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        error_exponents.truncate(6);
        Ok(TorusQuadrature {
            rs,
            root_freqs,
            exponents2k,
            error_exponents,
            base_grid: base_grid.max(8),
            min_box: 0,
            tables: Mutex::new(HashMap::new()),
        })
    }

    fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Pin a common frequency-box floor for a batch of related inner
    /// products (e.g. one Gram solve).
    pub fn set_min_box(&mut self, kbox: i64) {
        self.min_box = kbox.max(0);
    }

    /// Weight grid values reduced, axis by axis, to the frequency box.
    fn build_table(&self, n_grid: usize, kbox: i64) -> FreqTable {
        let r = self.rank();
        let total: usize = n_grid.pow(r as u32);
        // Per-root lookup table over the residue of the phase index.
        let luts: Vec<Vec<f64>> = self
            .exponents2k
            .iter()
            .map(|&e2k| {
                (0..n_grid)
                    .map(|t| {
                        let s = (std::f64::consts::PI * t as f64 / n_grid as f64).sin().abs();
                        (2.0 * s).powf(e2k)
                    })
                    .collect()
            })
            .collect();
        let mut weight = vec![0.0f64; total];
        let mut index = vec![0usize; r];
        for (flat, w) in weight.iter_mut().enumerate() {
            let mut rem = flat;
            for ax in (0..r).rev() {
                index[ax] = rem % n_grid;
                rem /= n_grid;
            }
            let mut val = 1.0f64;
            for (freqs, lut) in self.root_freqs.iter().zip(&luts) {
                let mut phase: i64 = 0;
                for (f, &m) in freqs.iter().zip(&index) {
                    phase += f * m as i64;
                }
                let t = phase.rem_euclid(n_grid as i64) as usize;
                val *= lut[t];
            }
            *w = val;
        }
        // Reduce the last axis first (contiguous), then each earlier axis.
        let side = (2 * kbox + 1) as usize;
        let mut re = weight;
        let mut im = vec![0.0f64; total];
        let mut dims: Vec<usize> = vec![n_grid; r];
        for ax in (0..r).rev() {
            let (nre, nim) = reduce_axis(&re, &im, &dims, ax, n_grid, kbox);
            re = nre;
            im = nim;
            dims[ax] = side;
        }
        let norm = (n_grid as f64).powi(r as i32);
        let values: Vec<f64> = re.iter().map(|v| v / norm).collect();
        FreqTable { kbox, values }
    }

    fn table(&self, n_grid: usize, kbox: i64) -> std::sync::Arc<FreqTable> {
        let mut cache = self.tables.lock().unwrap();
        if let Some(t) = cache.get(&n_grid) {
            if t.kbox >= kbox {
                return t.clone();
            }
        }
        let t = std::sync::Arc::new(self.build_table(n_grid, kbox));
        cache.insert(n_grid, t.clone());
        t
    }

    /// `(f, g)_k` by the accelerated trapezoid ladder.
    pub fn inner_product(&self, f: &FloatPoly, g: &FloatPoly) -> Result<f64> {
        if f.is_zero() || g.is_zero() {
            return Ok(0.0);
        }
        // Combined coefficient per needed frequency p - q.
        let mut needs: BTreeMap<Lat, f64> = BTreeMap::new();
        for (p, a) in f.terms() {
            for (q, b) in g.terms() {
                let freq: Lat = p.iter().zip(q).map(|(x, y)| x - y).collect();
                *needs.entry(freq).or_insert(0.0) += a * b;
            }
        }
        let kbox = needs
            .keys()
            .flat_map(|n| n.iter().map(|c| c.abs()))
            .max()
            .unwrap_or(0)
            .max(self.min_box);
        let cap = axis_cap(self.rank());
        // Singular weights need the base level to resolve the wall layer,
        // or the first ladder entries carry no usable error model.
        let singular_floor = if self.error_exponents.is_empty() {
            0
        } else {
            match self.rank() {
                1 => 512,
                2 => 256,
                _ => 32,
            }
        };
        let n0 = next_pow2(
            self.base_grid
                .max(2 * kbox as usize + 8)
                .max(singular_floor),
        )
        .min(cap);
        let sum_abs_f: f64 = f.terms().map(|(_, c)| c.abs()).sum();
        let sum_abs_g: f64 = g.terms().map(|(_, c)| c.abs()).sum();

        let mut raw: Vec<f64> = Vec::new();
        let mut scale = 1.0f64;
        let mut residual = f64::INFINITY;
        for level in 0..=tol::QUADRATURE_MAX_DOUBLINGS {
            let n = n0 << level;
            if n > cap {
                break;
            }
            let tbl = self.table(n, kbox);
            let mut t = crate::numerics::CompensatedSum::new();
            for (freq, coef) in &needs {
                t.add(coef * tbl.get(freq));
            }
            raw.push(t.value());
            if raw.len() == 1 {
                scale = (sum_abs_f * sum_abs_g * tbl.get(&vec![0i64; self.rank()]).abs())
                    .max(f64::MIN_POSITIVE);
                continue;
            }
            // Eliminate known error terms, keeping at least two surviving
            // entries so the residual compares values of equal depth.
            let depth = self.error_exponents.len().min(raw.len() - 2);
            let v = eliminate_known_exponents(&raw, &self.error_exponents[..depth]);
            let accel = v[v.len() - 1];
            residual = (accel - v[v.len() - 2]).abs();
            if residual <= tol::QUADRATURE_REL * scale.max(accel.abs()) {
                return Ok(accel);
            }
        }
        Err(Error::QuadratureNotConverged {
            doublings: raw.len().saturating_sub(1),
            residual: residual / scale,
        })
    }

    pub fn norm(&self, f: &FloatPoly) -> Result<f64> {
        Ok(self.inner_product(f, f)?.max(0.0).sqrt())
    }
}

/// Strided one-axis reduction of a complex array onto the frequency box.
fn reduce_axis(
    re: &[f64],
    im: &[f64],
    dims: &[usize],
    axis: usize,
    n_grid: usize,
    kbox: i64,
) -> (Vec<f64>, Vec<f64>) {
    let side = (2 * kbox + 1) as usize;
    let _r = dims.len();
    let stride: usize = dims[axis + 1..].iter().product();
    let outer: usize = dims[..axis].iter().product();
    let inner = stride;
    let axis_len = dims[axis];
    debug_assert_eq!(axis_len, n_grid);
    // Twiddles exp(-2 pi i n m / N) for n in -kbox..=kbox.
    let mut tw_re = vec![0.0f64; side * n_grid];
    let mut tw_im = vec![0.0f64; side * n_grid];
    for ni in 0..side {
        let n = ni as i64 - kbox;
        for m in 0..n_grid {
            let ang = -2.0 * std::f64::consts::PI * (n * m as i64) as f64 / n_grid as f64;
            tw_re[ni * n_grid + m] = ang.cos();
            tw_im[ni * n_grid + m] = ang.sin();
        }
    }
    let mut out_dims: Vec<usize> = dims.to_vec();
    out_dims[axis] = side;
    let out_len: usize = out_dims.iter().product();
    let mut out_re = vec![0.0f64; out_len];
    let mut out_im = vec![0.0f64; out_len];
    let out_stride = inner;
    for o in 0..outer {
        for i in 0..inner {
            let base_in = o * axis_len * stride + i;
            let base_out = o * side * out_stride + i;
            for ni in 0..side {
                let mut sr = 0.0f64;
                let mut si = 0.0f64;
                let trow = &tw_re[ni * n_grid..(ni + 1) * n_grid];
                let tirow = &tw_im[ni * n_grid..(ni + 1) * n_grid];
                for m in 0..axis_len {
                    let vr = re[base_in + m * stride];
                    let vi = im[base_in + m * stride];
                    sr += vr * trow[m] - vi * tirow[m];
                    si += vr * tirow[m] + vi * trow[m];
                }
                out_re[base_out + ni * out_stride] = sr;
                out_im[base_out + ni * out_stride] = si;
            }
        }
    }
    (out_re, out_im)
}

/// Sequentially eliminate known error terms `a N^{-p}` from a doubling
/// ladder, returning the surviving entries (the caller guarantees at least
/// two survive).
fn eliminate_known_exponents(raw: &[f64], exponents: &[f64]) -> Vec<f64> {
    let mut v = raw.to_vec();
    for &p in exponents {
        if v.len() < 2 {
            break;
        }
        let f = 2f64.powf(p);
        let mut next = Vec::with_capacity(v.len() - 1);
        for j in 0..v.len() - 1 {
            next.push((f * v[j + 1] - v[j]) / (f - 1.0));
        }
        v = next;
    }
    v
}


/// Test/debug helper: raw trapezoid values at successive grid levels.
pub fn probe_ladder(
    rs: &crate::rootsys::RootSystem,
    k: &MultiplicityParam,
    f: &FloatPoly,
    g: &FloatPoly,
    n0: usize,
    levels: usize,
) -> Vec<(usize, f64)> {
    let quad = TorusQuadrature::new(rs, k, n0).unwrap();
    let mut needs: BTreeMap<Lat, f64> = BTreeMap::new();
    for (p, a) in f.terms() {
        for (q, b) in g.terms() {
            let freq: Lat = p.iter().zip(q).map(|(x, y)| x - y).collect();
            *needs.entry(freq).or_insert(0.0) += a * b;
        }
    }
    let kbox = needs.keys().flat_map(|n| n.iter().map(|c| c.abs())).max().unwrap_or(0);
    let mut out = Vec::new();
    for level in 0..levels {
        let n = n0 << level;
        if n > axis_cap(rs.rank()) {
            break;
        }
        let tbl = quad.table(n, kbox);
        let mut t = crate::numerics::CompensatedSum::new();
        for (freq, coef) in &needs {
            t.add(coef * tbl.get(freq));
        }
        out.push((n, t.value()));
    }
    out
}

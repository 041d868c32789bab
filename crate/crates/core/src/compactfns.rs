//! Normalized Schur polynomials, semistandard tableaux, and normalized
//! characters of compact groups.
//!
//! Two evaluation routes are kept deliberately independent: direct tableau
//! enumeration (the trusted oracle, also the only route at boundary points
//! with zero coordinates) and the Weyl alternant ratio (the production
//! evaluator for larger data, shared with the character machinery). The
//! verdict combinator checks the partial-sum majorization order against the
//! pointwise polynomial order on grids and separating rays.

use num_rational::BigRational;
use num_traits::Zero;

use crate::majorize;
use crate::numerics::{extrapolate_checked, signed_logsumexp_scaled};
use crate::ratio::{self, rint};
use crate::rootsys::{build, CartanFamily, CartanLabel, RootSystem};
use crate::vector::{fdot, RatVec};
use crate::weyl::{self, WeylGroup};
use crate::{tol, Error, Result};

/// Partition: weakly decreasing positive parts (canonical form drops zeros).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<usize>, _> =
            s.split(',').map(|p| p.trim().parse()).collect();
        Partition::new(parts.map_err(|_| Error::InvalidArgument(format!("bad partition: {s}")))?)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Embed as a weakly decreasing vector in R^n.
    pub fn to_vec(&self, n: usize) -> RatVec {
        RatVec((0..n).map(|i| rint(self.part(i) as i64)).collect())
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Partial-sum majorization of partitions (equal cell counts required for a
/// true verdict; unequal counts never majorize).
pub fn majorizes_partial_sums(lambda: &Partition, mu: &Partition) -> bool {
    if lambda.size() != mu.size() {
        return false;
    }
    let rows = lambda.rows().max(mu.rows());
    let mut acc_l = 0usize;
    let mut acc_m = 0usize;
    for i in 0..rows {
        acc_l += lambda.part(i);
        acc_m += mu.part(i);
        if acc_l < acc_m {
            return false;
        }
    }
    true
}

/// All partitions of `d` (descending lexicographic order).
pub fn partitions_of(d: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for p in (1..=remaining.min(max_part)).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// A semistandard tableau: weakly increasing rows, strictly increasing
/// columns, values in 1..=N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    pub shape: Partition,
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    /// Value counts: content[j] = number of cells holding j+1.
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut c = vec![0usize; n];
        for row in &self.rows {
            for &v in row {
                c[v - 1] += 1;
            }
        }
        c
    }

    /// Concatenated rows, top to bottom.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }
}

/// All semistandard tableaux of the given shape and rank, in lexicographic
/// order of the row-reading word. Empty when the shape has more than `n`
/// rows.
pub fn enumerate_ssyt(shape: &Partition, n: usize) -> Vec<Tableau> {
    if shape.rows() > n {
        return Vec::new();
    }
    let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fill(&mut rows, shape, n, 0, 0, &mut out);
    return out;

    fn fill(
        rows: &mut Vec<Vec<usize>>,
        shape: &Partition,
        n: usize,
        r: usize,
        c: usize,
        out: &mut Vec<Tableau>,
    ) {
        if r == rows.len() {
            out.push(Tableau { shape: shape.clone(), rows: rows.clone() });
            return;
        }
        let (next_r, next_c) = if c + 1 < rows[r].len() { (r, c + 1) } else { (r + 1, 0) };
        let min_left = if c > 0 { rows[r][c - 1] } else { 1 };
        let min_above = if r > 0 && rows[r - 1].len() > c { rows[r - 1][c] + 1 } else { 1 };
        for v in min_left.max(min_above)..=n {
            rows[r][c] = v;
            fill(rows, shape, n, next_r, next_c, out);
        }
        rows[r][c] = 0;
    }
}

/// Monomial expansion of the (unnormalized) Schur polynomial: the map from
/// content partitions to tableau counts.
pub fn schur_monomial_expansion(
    shape: &Partition,
    n: usize,
) -> std::collections::BTreeMap<Partition, u64> {
    let mut out = std::collections::BTreeMap::new();
    for t in enumerate_ssyt(shape, n) {
        let mut content = t.content(n);
        let is_partition = content.windows(2).all(|w| w[0] >= w[1]);
        if is_partition {
            content.retain(|&c| c > 0);
            *out.entry(Partition { parts: content }).or_insert(0) += 1;
        }
    }
    out
}

/// Enumeration caps for the tableau route; larger inputs go through the
/// alternant.
const ENUM_MAX_CELLS: usize = 12;
const ENUM_MAX_VARS: usize = 6;

/// Normalized Schur polynomial `S_lambda(x)` for nonnegative `x`.
///
/// Zeros in `x` force the monomial route (the alternant needs logs); inputs
/// within the enumeration cap use it too, so the two routes overlap on a
/// testable region.
pub fn schur_normalized(shape: &Partition, x: &[f64]) -> Result<f64> {
    let n = x.len();
    if shape.rows() > n {
        return Err(Error::TooManyRows { rows: shape.rows(), n });
    }
    if x.iter().any(|&v| v < 0.0) {
        return Err(Error::InvalidArgument(
            "normalized Schur polynomials are compared on nonnegative orthants".into(),
        ));
    }
    let has_zero = x.iter().any(|&v| v == 0.0);
    if has_zero || (shape.size() <= ENUM_MAX_CELLS && n <= ENUM_MAX_VARS) {
        return schur_by_enumeration(shape, x);
    }
    let rs = build(CartanLabel::new(CartanFamily::A, n - 1)?)?;
    let ev = CharEvaluator::new(&rs)?;
    let y: Vec<f64> = x.iter().map(|&v| v.ln()).collect();
    ev.eval(&shape.to_vec(n), &y)
}

/// Evaluation route used for the oracle half of path-agreement checks.
pub fn schur_by_enumeration(shape: &Partition, x: &[f64]) -> Result<f64> {
    let n = x.len();
    if shape.rows() > n {
        return Err(Error::TooManyRows { rows: shape.rows(), n });
    }
    let tableaux = enumerate_ssyt(shape, n);
    if tableaux.is_empty() {
        return Err(Error::TooManyRows { rows: shape.rows(), n });
    }
    let mut acc = crate::numerics::CompensatedSum::new();
    for t in &tableaux {
        let mut term = 1.0;
        for (j, &count) in t.content(n).iter().enumerate() {
            term *= x[j].powi(count as i32);
        }
        acc.add(term);
    }
    Ok(acc.value() / tableaux.len() as f64)
}

/// Normalized-character evaluator: the Weyl alternant ratio divided by the
/// Weyl dimension. The denominator alternant is computed through its product
/// form, which is cancellation-free; a singular evaluation point routes the
/// numerator through the perturbation ladder.
pub struct CharEvaluator<'a> {
    rs: &'a RootSystem,
    wg: WeylGroup,
    rho: RatVec,
    rho_f: Vec<f64>,
    roots_f: Vec<Vec<f64>>,
}

impl<'a> CharEvaluator<'a> {
    pub fn new(rs: &'a RootSystem) -> Result<Self> {
        let wg = weyl::weyl_group(rs)?;
        let rho = rs.rho();
        let rho_f = rho.to_f64();
        let roots_f = rs.positive_roots.iter().map(|a| a.to_f64()).collect();
        Ok(CharEvaluator { rs, wg, rho, rho_f, roots_f })
    }

    /// `chi_lambda(e^x) / dim V_lambda` for a dominant weight with integral
    /// simple pairings (a W-fixed component is allowed, as for unitary-group
    /// weights with nonzero mean).
    pub fn eval(&self, lambda: &RatVec, x: &[f64]) -> Result<f64> {
        lambda.check_dim(self.rs.ambient_dim)?;
        if x.len() != self.rs.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.rs.ambient_dim,
                got: x.len(),
            });
        }
        for a in &self.rs.simple_roots {
            let p = self.rs.pair_coroot(lambda, a);
            if !p.is_integer() || p < BigRational::zero() {
                return Err(Error::NotDominantIntegral);
            }
        }
        if x.iter().all(|&v| v == 0.0) {
            return Ok(1.0);
        }
        let dim = self.dimension(lambda);
        let shifted: Vec<f64> = (lambda + &self.rho).to_f64();
        let min_pairing = self
            .roots_f
            .iter()
            .map(|a| {
                let norm: f64 = x.iter().map(|c| c * c).sum::<f64>().sqrt();
                fdot(a, x).abs() / (1.0 + norm)
            })
            .fold(f64::INFINITY, f64::min);
        if min_pairing > tol::DEGENERACY_REL {
            return Ok(self.ratio_at(&shifted, x) / dim);
        }
        // Perturbation ladder along rho for wall points.
        let steps = [1e-2, 10f64.powf(-2.5), 1e-3];
        let samples: Vec<(f64, f64)> = steps
            .iter()
            .map(|&eta| {
                let xe: Vec<f64> = x.iter().zip(&self.rho_f).map(|(c, r)| c + eta * r).collect();
                (eta, self.ratio_at(&shifted, &xe))
            })
            .collect();
        Ok(extrapolate_checked(&samples, tol::EXTRAPOLATION_REL)? / dim)
    }

    /// Weyl dimension: Delta(lambda + rho) / Delta(rho), exact then converted.
    pub fn dimension(&self, lambda: &RatVec) -> f64 {
        let num = self.rs.discriminant(&(lambda + &self.rho));
        let den = self.rs.discriminant(&self.rho);
        ratio::to_f64(&(num / den))
    }

    /// Alternant ratio A(shifted, x) / A(rho, x) with the denominator in its
    /// product form `prod 2 sinh(<a, x>/2)`.
    fn ratio_at(&self, shifted: &[f64], x: &[f64]) -> f64 {
        let mut image = vec![0.0; shifted.len()];
        let mut terms = Vec::with_capacity(self.wg.order());
        for idx in 0..self.wg.order() {
            self.wg.apply_f64(idx, shifted, &mut image);
            terms.push((fdot(&image, x), self.wg.sign(idx)));
        }
        let (m, reduced) = signed_logsumexp_scaled(&terms);
        let mut log_den = 0.0;
        let mut sign_den = 1.0;
        for a in &self.roots_f {
            let h = 0.5 * fdot(a, x);
            let s = 2.0 * h.sinh();
            log_den += s.abs().ln();
            if s < 0.0 {
                sign_den = -sign_den;
            }
        }
        sign_den * reduced * (m - log_den).exp()
    }
}

/// One-shot normalized character.
pub fn char_normalized(rs: &RootSystem, lambda: &RatVec, x: &[f64]) -> Result<f64> {
    CharEvaluator::new(rs)?.eval(lambda, x)
}

/// Outcome of a majorization-vs-inequality comparison for a partition pair.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CgssVerdict {
    pub majorizes: bool,
    pub inequality_holds: bool,
    /// Evaluation point achieving the minimal normalized margin, with the
    /// margin value.
    pub worst_point: Option<(Vec<f64>, f64)>,
}

/// Compare the partial-sum order with the pointwise order of normalized
/// Schur polynomials over the supplied grid of nonnegative points; for
/// non-majorizing pairs the scan extends along the separating-direction ray
/// `x = exp(t y)` where reversals are forced by the asymptotics.
pub fn cgss_verdict(
    lambda: &Partition,
    mu: &Partition,
    n: usize,
    grid: &[Vec<f64>],
) -> Result<CgssVerdict> {
    if lambda.size() != mu.size() {
        return Err(Error::UnequalCellCount);
    }
    if lambda.rows() > n {
        return Err(Error::TooManyRows { rows: lambda.rows(), n });
    }
    if mu.rows() > n {
        return Err(Error::TooManyRows { rows: mu.rows(), n });
    }
    let majorizes = majorizes_partial_sums(lambda, mu);
    let mut worst: Option<(Vec<f64>, f64)> = None;
    let mut check = |x: &[f64]| -> Result<f64> {
        let sl = schur_normalized(lambda, x)?;
        let sm = schur_normalized(mu, x)?;
        let margin = (sl - sm) / sl.abs().max(sm.abs()).max(1.0);
        if worst.as_ref().map_or(true, |(_, m)| margin < *m) {
            worst = Some((x.to_vec(), margin));
        }
        Ok(margin)
    };
    let mut any_reversal = false;
    for x in grid {
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: x.len() });
        }
        let margin = check(x)?;
        if margin < -tol::GRID_MARGIN {
            any_reversal = true;
        }
    }
    if !majorizes {
        // Separating ray in the ambient space of U(n) weights.
        let rs = build(CartanLabel::new(CartanFamily::A, n - 1)?)?;
        let witness =
            majorize::separating_functional(&rs, &lambda.to_vec(n), &mu.to_vec(n))?
                .expect("partial-sum order matches orbit-hull order for partitions");
        let y = witness.y.to_f64();
        let mut t = 0.25;
        while t <= 512.0 {
            let x: Vec<f64> = y.iter().map(|&c| (t * c).exp()).collect();
            let margin = check(&x)?;
            if margin < -tol::GRID_MARGIN {
                any_reversal = true;
                break;
            }
            t *= 2.0;
        }
    }
    Ok(CgssVerdict { majorizes, inequality_holds: !any_reversal, worst_point: worst })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_canonicalization() {
        assert_eq!(p(&[3, 1, 0, 0]).parts(), &[3, 1]);
        assert_eq!(p(&[]).size(), 0);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[2, 1]).to_vec(3), RatVec::from_i64(&[2, 1, 0]));
    }

    #[test]
    fn ssyt_counts() {
        assert_eq!(enumerate_ssyt(&p(&[1]), 4).len(), 4);
        assert_eq!(enumerate_ssyt(&p(&[2, 1]), 2).len(), 2);
        assert_eq!(enumerate_ssyt(&p(&[2, 1]), 3).len(), 8);
        // More rows than variables: empty.
        assert!(enumerate_ssyt(&p(&[1, 1, 1]), 2).is_empty());
    }

    #[test]
    fn ssyt_reading_words_are_sorted() {
        let words: Vec<Vec<usize>> = enumerate_ssyt(&p(&[2, 1]), 3)
            .iter()
            .map(Tableau::reading_word)
            .collect();
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(words, sorted);
    }

    #[test]
    fn kostka_numbers_for_21() {
        // s_{(2,1)} = m_{(2,1)} + 2 m_{(1,1,1)}.
        let exp = schur_monomial_expansion(&p(&[2, 1]), 3);
        assert_eq!(exp.get(&p(&[2, 1])).copied(), Some(1));
        assert_eq!(exp.get(&p(&[1, 1, 1])).copied(), Some(2));
        assert_eq!(exp.get(&p(&[3])), None);
    }

    #[test]
    fn schur_trivial_values() {
        // Ones normalize to 1.
        let v = schur_normalized(&p(&[3, 1]), &[1.0, 1.0, 1.0]).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        // Single-row shape (1): the mean.
        let v = schur_normalized(&p(&[1]), &[1.0, 2.0, 6.0]).unwrap();
        assert!((v - 3.0).abs() < 1e-14);
        // (2,1) with N = 2 at (1,2): (x1^2 x2 + x1 x2^2)/2 = 3.
        let v = schur_normalized(&p(&[2, 1]), &[1.0, 2.0]).unwrap();
        assert!((v - 3.0).abs() < 1e-14);
    }

    #[test]
    fn schur_errors() {
        assert!(matches!(
            schur_normalized(&p(&[1, 1, 1]), &[1.0, 2.0]),
            Err(Error::TooManyRows { .. })
        ));
        assert!(schur_normalized(&p(&[1]), &[-1.0, 2.0]).is_err());
    }

    #[test]
    fn schur_homogeneity_and_symmetry() {
        let shape = p(&[3, 1]);
        let x = [0.7, 1.3, 2.1];
        let base = schur_normalized(&shape, &x).unwrap();
        let scaled = schur_normalized(&shape, &[1.4, 2.6, 4.2]).unwrap();
        assert!((scaled - base * 2f64.powi(4)).abs() < 1e-10 * scaled.abs());
        let perm = schur_normalized(&shape, &[2.1, 0.7, 1.3]).unwrap();
        assert!((perm - base).abs() < 1e-12 * base.abs());
    }

    #[test]
    fn schur_paths_agree() {
        // Compare the tableau route against the alternant route on shapes
        // within the enumeration cap.
        let a3 = build(CartanLabel::parse("A3").unwrap()).unwrap();
        let ev = CharEvaluator::new(&a3).unwrap();
        for shape in [p(&[2, 1]), p(&[3, 1, 1]), p(&[4, 2]), p(&[2, 2, 2, 2])] {
            for x in [[1.1, 0.6, 1.9, 0.8], [2.5, 0.3, 1.0, 1.7]] {
                let enumerated = schur_by_enumeration(&shape, &x).unwrap();
                let y: Vec<f64> = x.iter().map(|v| v.ln()).collect();
                let alternant = ev.eval(&shape.to_vec(4), &y).unwrap();
                assert!(
                    (enumerated - alternant).abs() <= 1e-10 * enumerated.abs(),
                    "{shape}: {enumerated} vs {alternant}"
                );
            }
        }
    }

    #[test]
    fn char_at_identity_is_one() {
        let b2 = build(CartanLabel::parse("B2").unwrap()).unwrap();
        let lam = b2.lattice_to_ambient(&[1, 1]);
        let v = char_normalized(&b2, &lam, &[0.0, 0.0]).unwrap();
        assert_eq!(v, 1.0);
    }

    #[test]
    fn char_rejects_non_integral_weights() {
        let a2 = build(CartanLabel::parse("A2").unwrap()).unwrap();
        let half = a2.fundamental_weights[0].scale(&crate::ratio::rat(1, 2));
        assert!(matches!(
            char_normalized(&a2, &half, &[0.1, 0.0, -0.1]),
            Err(Error::NotDominantIntegral)
        ));
    }

    #[test]
    fn a1_character_geometric_sum() {
        // lambda = m omega: chi/dim = sum_j e^{(m-2j) <omega, x>} / (m+1).
        let a1 = build(CartanLabel::parse("A1").unwrap()).unwrap();
        let ev = CharEvaluator::new(&a1).unwrap();
        let m = 4i64;
        let lam = a1.lattice_to_ambient(&[m]);
        let x = [0.63, -0.11];
        let omega_x = fdot(&a1.fundamental_weights[0].to_f64(), &x);
        let want: f64 = (0..=m)
            .map(|j| ((m - 2 * j) as f64 * omega_x).exp())
            .sum::<f64>()
            / (m + 1) as f64;
        let got = ev.eval(&lam, &x).unwrap();
        assert!((got - want).abs() < 1e-12 * want);
    }

    #[test]
    fn char_degenerate_point_ladder() {
        // x on a wall: repeated coordinates in A-type.
        let a2 = build(CartanLabel::parse("A2").unwrap()).unwrap();
        let ev = CharEvaluator::new(&a2).unwrap();
        let lam = RatVec::from_i64(&[2, 1, 0]);
        let x = [0.4, 0.4, -0.2];
        let got = ev.eval(&lam, &x).unwrap();
        // Oracle: Schur enumeration at exp coordinates.
        let shape = p(&[2, 1]);
        let xe: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        let want = schur_by_enumeration(&shape, &xe).unwrap();
        assert!(
            (got - want).abs() <= 1e-6 * want.abs(),
            "ladder {got} vs enumeration {want}"
        );
    }

    #[test]
    fn partial_sum_examples() {
        assert!(majorizes_partial_sums(&p(&[2]), &p(&[1, 1])));
        assert!(!majorizes_partial_sums(&p(&[1, 1]), &p(&[2])));
        assert!(majorizes_partial_sums(&p(&[2, 1]), &p(&[2, 1])));
        assert!(!majorizes_partial_sums(&p(&[3]), &p(&[2])));
        // Incomparable pair.
        assert!(!majorizes_partial_sums(&p(&[4, 1, 1]), &p(&[3, 3])));
        assert!(!majorizes_partial_sums(&p(&[3, 3]), &p(&[4, 1, 1])));
    }

    #[test]
    fn partitions_of_six() {
        assert_eq!(partitions_of(6).len(), 11);
        assert_eq!(partitions_of(4).len(), 5);
        assert_eq!(partitions_of(0).len(), 1);
    }

    #[test]
    fn cgss_verdict_basic() {
        let grid: Vec<Vec<f64>> = vec![
            vec![1.0, 1.0, 1.0],
            vec![0.5, 1.5, 2.5],
            vec![2.0, 0.1, 0.7],
        ];
        // Equal shapes: trivially consistent.
        let v = cgss_verdict(&p(&[2, 1]), &p(&[2, 1]), 3, &grid).unwrap();
        assert!(v.majorizes && v.inequality_holds);
        // (2) majorizes (1,1): inequality holds on the grid.
        let v = cgss_verdict(&p(&[2]), &p(&[1, 1]), 3, &grid).unwrap();
        assert!(v.majorizes && v.inequality_holds);
        // Reverse: not majorizing, and the ray finds a reversal.
        let v = cgss_verdict(&p(&[1, 1]), &p(&[2]), 3, &grid).unwrap();
        assert!(!v.majorizes && !v.inequality_holds);
        let (_, margin) = v.worst_point.unwrap();
        assert!(margin < 0.0);
    }

    #[test]
    fn cgss_unequal_sizes_rejected() {
        assert!(matches!(
            cgss_verdict(&p(&[2]), &p(&[1]), 3, &[]),
            Err(Error::UnequalCellCount)
        ));
    }
}

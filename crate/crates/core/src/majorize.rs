//! The Weyl-orbit majorization order and its witnesses.
//!
//! `lambda` majorizes `mu` when `mu` lies in the convex hull of the Weyl
//! orbit of `lambda`. The production predicate reduces this to a sign check
//! on simple-root coordinates of dominant representatives; a convex-hull
//! feasibility LP over the enumerated orbit serves as the independent oracle.
//! When majorization fails, a separating linear functional is produced and
//! verified exactly.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::lp::{self, LpOutcome};
use crate::ratio::rint;
use crate::rootsys::{MultiplicityParam, RootSystem};
use crate::vector::RatVec;
use crate::{Error, Result};

/// A verified separating hyperplane: `<mu+, y> > c` while `<w lambda, y> < c`
/// for every Weyl element `w`.
#[derive(Debug, Clone)]
pub struct SeparationWitness {
    /// Separating direction, dominant and off all root hyperplanes.
    pub y: RatVec,
    pub c: BigRational,
    /// Half the gap between `<mu+, y>` and the orbit maximum; positive.
    pub margin: BigRational,
}

/// Decide whether `mu` lies in the convex hull of the Weyl orbit of
/// `lambda`. Exact for rational input.
pub fn w_majorizes(rs: &RootSystem, lambda: &RatVec, mu: &RatVec) -> Result<bool> {
    lambda.check_dim(rs.ambient_dim)?;
    mu.check_dim(rs.ambient_dim)?;
    let (lam_dom, _) = rs.dominant_rep(lambda);
    let (mu_dom, _) = rs.dominant_rep(mu);
    let (lam_span, lam_fixed) = rs.split_span_fixed(&lam_dom);
    let (mu_span, mu_fixed) = rs.split_span_fixed(&mu_dom);
    if lam_fixed != mu_fixed {
        return Ok(false);
    }
    // Inside the span: mu+ is in the hull iff lambda+ - mu+ is a nonnegative
    // combination of simple roots.
    Ok(lam_span
        .iter()
        .zip(&mu_span)
        .all(|(l, m)| !(l - m).is_negative()))
}

/// Brute-force hull membership by exact LP over the enumerated orbit:
/// `mu = sum t_j (w_j lambda)`, `t >= 0`, `sum t_j = 1`. Oracle only.
pub fn w_majorizes_hull_oracle(rs: &RootSystem, lambda: &RatVec, mu: &RatVec) -> Result<bool> {
    lambda.check_dim(rs.ambient_dim)?;
    mu.check_dim(rs.ambient_dim)?;
    let orbit = rs.weyl_orbit(lambda);
    let n = rs.ambient_dim;
    // Rows: one per coordinate plus the affine row.
    let mut a = vec![Vec::with_capacity(orbit.len()); n + 1];
    for point in &orbit {
        for (i, row) in a.iter_mut().enumerate().take(n) {
            row.push(point[i].clone());
        }
        a[n].push(rint(1));
    }
    let mut b: Vec<BigRational> = mu.0.clone();
    b.push(rint(1));
    Ok(lp::feasible_eq(&a, &b).is_some())
}

/// Search for a separating functional showing `lambda` does not majorize
/// `mu`. Returns `None` when `lambda` majorizes `mu`.
///
/// The direction maximizes `<mu+, y> - max_w <w lambda, y>` over the box
/// `|y_i| <= 1`, is nudged off the root hyperplanes, and is replaced by its
/// dominant representative; each step preserves the strict inequalities.
pub fn separating_functional(
    rs: &RootSystem,
    lambda: &RatVec,
    mu: &RatVec,
) -> Result<Option<SeparationWitness>> {
    if w_majorizes(rs, lambda, mu)? {
        return Ok(None);
    }
    let (mu_dom, _) = rs.dominant_rep(mu);
    let orbit = rs.weyl_orbit(lambda);
    let n = rs.ambient_dim;
    // Variables: z_1..z_n (y = z - 1, so 0 <= z <= 2), s+ and s-.
    // Maximize <mu, z - 1> - (s+ - s-)
    //   s.t. <w lambda, z - 1> - (s+ - s-) <= 0      for each orbit point
    //        z_i <= 2.
    let nv = n + 2;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let ones = RatVec(vec![rint(1); n]);
    for point in &orbit {
        let mut row: Vec<BigRational> = point.0.clone();
        row.push(rint(-1));
        row.push(rint(1));
        a.push(row);
        b.push(point.dot(&ones));
    }
    for i in 0..n {
        let mut row = vec![BigRational::zero(); nv];
        row[i] = rint(1);
        a.push(row);
        b.push(rint(2));
    }
    let mut c: Vec<BigRational> = mu_dom.0.clone();
    c.push(rint(-1));
    c.push(rint(1));
    let shift = mu_dom.dot(&ones);
    let (z, value) = match lp::maximize_leq(&c, &a, &b) {
        LpOutcome::Optimal { x, value } => (x, value - shift),
        LpOutcome::Unbounded => {
            return Err(Error::InvalidArgument(
                "separating LP unbounded over a box; constraints are inconsistent".into(),
            ))
        }
        LpOutcome::Infeasible => {
            return Err(Error::InvalidArgument(
                "separating LP infeasible; box constraints are inconsistent".into(),
            ))
        }
    };
    if !value.is_positive() {
        // Hyperplane separation must succeed for a point outside the hull;
        // reaching this would contradict the cone predicate.
        return Err(Error::InvalidArgument(
            "no separating direction found for a non-majorized pair".into(),
        ));
    }
    let mut y = RatVec((0..n).map(|i| &z[i] - rint(1)).collect());

    // Nudge off root hyperplanes while keeping the gap:
    // gap(y) = <mu+, y> - max_w <w lambda, y> shrinks by at most the rho
    // pairings times the step, so a small enough rational step keeps gap > 0.
    let rho = rs.rho();
    if rs.discriminant(&y).is_zero() {
        let orbit_max = |v: &RatVec| -> BigRational {
            orbit.iter().map(|p| p.dot(v)).max().unwrap()
        };
        let gap = mu_dom.dot(&y) - orbit_max(&y);
        let sensitivity = orbit
            .iter()
            .map(|p| p.dot(&rho))
            .chain(std::iter::once(mu_dom.dot(&rho)))
            .map(|q| q.abs())
            .max()
            .unwrap()
            + rint(1);
        let mut eps = gap / (rint(4) * sensitivity);
        loop {
            let cand = &y + &rho.scale(&eps);
            if !rs.discriminant(&cand).is_zero() {
                y = cand;
                break;
            }
            eps /= rint(2);
        }
    }
    let (y_dom, _) = rs.dominant_rep(&y);
    y = y_dom;

    // Verify on construction by full orbit scan.
    let mu_val = mu_dom.dot(&y);
    let orbit_max = orbit.iter().map(|p| p.dot(&y)).max().unwrap();
    let margin = (&mu_val - &orbit_max) / rint(2);
    if !margin.is_positive() {
        return Err(Error::InvalidArgument(
            "separating witness lost positivity; this is a bug".into(),
        ));
    }
    let c = (&mu_val + &orbit_max) / rint(2);
    Ok(Some(SeparationWitness { y, c, margin }))
}

/// Height order: is `lambda - mu` a nonnegative real combination of positive
/// roots? (Equivalently of simple roots, so this is a sign check on the
/// simple-root coordinates; the W-fixed parts must agree.) Not W-invariant.
pub fn height_leq(rs: &RootSystem, mu: &RatVec, lambda: &RatVec) -> Result<bool> {
    mu.check_dim(rs.ambient_dim)?;
    lambda.check_dim(rs.ambient_dim)?;
    let diff = lambda - mu;
    let (coords, fixed) = rs.split_span_fixed(&diff);
    if !fixed.is_zero() {
        return Ok(false);
    }
    Ok(coords.iter().all(|c| !c.is_negative()))
}

/// Helgason-Johnson boundedness: the spherical function with spectral
/// parameter `i * im_lambda` is bounded iff `rho^(k)` majorizes `im_lambda`.
pub fn is_bounded_spherical(
    rs: &RootSystem,
    k: &MultiplicityParam,
    im_lambda: &RatVec,
) -> Result<bool> {
    let rho_k = rs.rho_k(k);
    w_majorizes(rs, &rho_k, im_lambda)
}

/// Verify a witness against a pair (used by tests and the CLI when echoing
/// witnesses back).
pub fn witness_is_valid(
    rs: &RootSystem,
    lambda: &RatVec,
    mu: &RatVec,
    w: &SeparationWitness,
) -> bool {
    let (mu_dom, _) = rs.dominant_rep(mu);
    if mu_dom.dot(&w.y) <= w.c {
        return false;
    }
    rs.weyl_orbit(lambda).iter().all(|p| p.dot(&w.y) < w.c)
}

/// Convenience: exact majorization through the float boundary, snapping both
/// vectors by continued fractions at the default tolerance.
pub fn w_majorizes_f64(rs: &RootSystem, lambda: &[f64], mu: &[f64]) -> Result<bool> {
    let l = RatVec::from_f64(lambda, crate::tol::RATIONALIZE_TOL)?;
    let m = RatVec::from_f64(mu, crate::tol::RATIONALIZE_TOL)?;
    w_majorizes(rs, &l, &m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use crate::rootsys::{build, CartanLabel};
    use crate::weyl;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rs(label: &str) -> RootSystem {
        build(CartanLabel::parse(label).unwrap()).unwrap()
    }

    fn random_vec(rng: &mut StdRng, dim: usize) -> RatVec {
        let denoms = [1i64, 2, 4];
        RatVec(
            (0..dim)
                .map(|_| rat(rng.gen_range(-8..=8), denoms[rng.gen_range(0..3)]))
                .collect(),
        )
    }

    #[test]
    fn reflexive() {
        let b2 = rs("B2");
        let v = RatVec::parse("3/2,1").unwrap();
        assert!(w_majorizes(&b2, &v, &v).unwrap());
    }

    #[test]
    fn a_type_partition_order() {
        let a1 = rs("A1");
        let lam = RatVec::from_i64(&[2, 0]);
        let mu = RatVec::from_i64(&[1, 1]);
        assert!(w_majorizes(&a1, &lam, &mu).unwrap());
        assert!(!w_majorizes(&a1, &mu, &lam).unwrap());
    }

    #[test]
    fn b2_incomparable_pair() {
        let b2 = rs("B2");
        let lam = RatVec::from_i64(&[1, 0]);
        let mu = RatVec::from_i64(&[1, 1]);
        assert!(!w_majorizes(&b2, &lam, &mu).unwrap());
        assert!(!w_majorizes_hull_oracle(&b2, &lam, &mu).unwrap());
    }

    #[test]
    fn zero_is_orbit_average() {
        let a2 = rs("A2");
        let lam = RatVec::from_i64(&[1, 0, -1]);
        assert!(w_majorizes(&a2, &lam, &RatVec::zero(3)).unwrap());
        assert!(w_majorizes_hull_oracle(&a2, &lam, &RatVec::zero(3)).unwrap());
        assert!(w_majorizes_hull_oracle(&a2, &RatVec::zero(3), &RatVec::zero(3)).unwrap());
    }

    #[test]
    fn fixed_component_mismatch_fails() {
        let a1 = rs("A1");
        let lam = RatVec::from_i64(&[2, 0]);
        let mu = RatVec::from_i64(&[1, 0]);
        assert!(!w_majorizes(&a1, &lam, &mu).unwrap());
    }

    #[test]
    fn oracle_agreement_random() {
        let mut rng = StdRng::seed_from_u64(7);
        for label in ["A2", "B2", "G2", "BC2"] {
            let sys = rs(label);
            for _ in 0..120 {
                let lam = random_vec(&mut rng, sys.ambient_dim);
                let mu = if rng.gen_bool(0.5) {
                    random_vec(&mut rng, sys.ambient_dim)
                } else {
                    // Convex combination of two orbit points: majorized.
                    let orbit = sys.weyl_orbit(&lam);
                    let i = rng.gen_range(0..orbit.len());
                    let j = rng.gen_range(0..orbit.len());
                    let t = rat(rng.gen_range(0..=4), 4);
                    let one_minus = rint(1) - &t;
                    &orbit[i].scale(&t) + &orbit[j].scale(&one_minus)
                };
                let fast = w_majorizes(&sys, &lam, &mu).unwrap();
                let slow = w_majorizes_hull_oracle(&sys, &lam, &mu).unwrap();
                assert_eq!(fast, slow, "{label}: {lam:?} vs {mu:?}");
            }
        }
    }

    #[test]
    fn separating_witness_b2_example() {
        let b2 = rs("B2");
        let lam = RatVec::from_i64(&[1, 0]);
        let mu = RatVec::from_i64(&[1, 1]);
        let w = separating_functional(&b2, &lam, &mu).unwrap().unwrap();
        assert!(witness_is_valid(&b2, &lam, &mu, &w));
        assert!(w.margin.is_positive());
        assert!(!b2.discriminant(&w.y).is_zero());
        assert!(b2.is_dominant(&w.y));
    }

    #[test]
    fn witness_none_when_majorized() {
        let b2 = rs("B2");
        let lam = RatVec::from_i64(&[2, 0]);
        let mu = RatVec::from_i64(&[1, 1]);
        // (1,1) is in the hull of the B2 orbit of (2,0).
        assert!(w_majorizes(&b2, &lam, &mu).unwrap());
        assert!(separating_functional(&b2, &lam, &mu).unwrap().is_none());
    }

    #[test]
    fn witness_exists_iff_not_majorized_random() {
        let mut rng = StdRng::seed_from_u64(11);
        let a2 = rs("A2");
        for _ in 0..60 {
            let lam = random_vec(&mut rng, 3);
            let mu = random_vec(&mut rng, 3);
            let maj = w_majorizes_hull_oracle(&a2, &lam, &mu).unwrap();
            let witness = separating_functional(&a2, &lam, &mu).unwrap();
            assert_eq!(maj, witness.is_none());
            if let Some(w) = witness {
                assert!(witness_is_valid(&a2, &lam, &mu, &w));
            }
        }
    }

    #[test]
    fn height_order_matches_majorization_on_dominant_pairs() {
        let b2 = rs("B2");
        let v = RatVec::from_i64(&[2, 1]);
        assert!(height_leq(&b2, &v, &v).unwrap());
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let (a, _) = b2.dominant_rep(&random_vec(&mut rng, 2));
            let (b, _) = b2.dominant_rep(&random_vec(&mut rng, 2));
            assert_eq!(
                height_leq(&b2, &b, &a).unwrap(),
                w_majorizes(&b2, &a, &b).unwrap()
            );
        }
    }

    #[test]
    fn height_order_not_w_invariant() {
        // Search for a Weyl element breaking invariance, as the order's
        // definition through positive roots suggests must happen.
        let b2 = rs("B2");
        let w = weyl::weyl_group(&b2).unwrap();
        let mut rng = StdRng::seed_from_u64(19);
        let mut found = false;
        'outer: for _ in 0..200 {
            let lam = random_vec(&mut rng, 2);
            let mu = random_vec(&mut rng, 2);
            let base = height_leq(&b2, &mu, &lam).unwrap();
            for e in &w.elements {
                let moved = height_leq(&b2, &e.apply(&mu), &e.apply(&lam)).unwrap();
                if moved != base {
                    found = true;
                    break 'outer;
                }
            }
        }
        assert!(found, "height order unexpectedly looked W-invariant");
    }

    #[test]
    fn w_invariance_of_majorization() {
        let g2 = rs("G2");
        let w = weyl::weyl_group(&g2).unwrap();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..10 {
            let lam = random_vec(&mut rng, 3);
            let mu = random_vec(&mut rng, 3);
            let base = w_majorizes(&g2, &lam, &mu).unwrap();
            for e in w.elements.iter().step_by(3) {
                for f in w.elements.iter().step_by(4) {
                    assert_eq!(
                        w_majorizes(&g2, &e.apply(&lam), &f.apply(&mu)).unwrap(),
                        base
                    );
                }
            }
        }
    }

    #[test]
    fn negation_and_scaling_symmetry() {
        let b2 = rs("B2");
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..40 {
            let lam = random_vec(&mut rng, 2);
            let mu = random_vec(&mut rng, 2);
            let base = w_majorizes(&b2, &lam, &mu).unwrap();
            assert_eq!(w_majorizes(&b2, &-&lam, &-&mu).unwrap(), base);
            if base {
                let t = rat(rng.gen_range(0..=6), 2);
                assert!(w_majorizes(&b2, &lam.scale(&t), &mu.scale(&t)).unwrap());
            }
        }
    }

    #[test]
    fn antisymmetry_and_transitivity_sampled() {
        let b2 = rs("B2");
        let mut rng = StdRng::seed_from_u64(37);
        for _ in 0..40 {
            let (a, _) = b2.dominant_rep(&random_vec(&mut rng, 2));
            let (b, _) = b2.dominant_rep(&random_vec(&mut rng, 2));
            let (c, _) = b2.dominant_rep(&random_vec(&mut rng, 2));
            if w_majorizes(&b2, &a, &b).unwrap() && w_majorizes(&b2, &b, &a).unwrap() {
                assert_eq!(a, b);
            }
            if w_majorizes(&b2, &a, &b).unwrap() && w_majorizes(&b2, &b, &c).unwrap() {
                assert!(w_majorizes(&b2, &a, &c).unwrap());
            }
        }
    }

    #[test]
    fn helgason_johnson_boundedness() {
        let b2 = rs("B2");
        let k = MultiplicityParam::one(&b2);
        let rho = b2.rho_k(&k);
        assert!(is_bounded_spherical(&b2, &k, &RatVec::zero(2)).unwrap());
        assert!(is_bounded_spherical(&b2, &k, &rho).unwrap());
        assert!(!is_bounded_spherical(&b2, &k, &rho.scale(&rint(2))).unwrap());
    }

    #[test]
    fn float_boundary_majorization() {
        let a1 = rs("A1");
        assert!(w_majorizes_f64(&a1, &[2.0, 0.0], &[1.0, 1.0]).unwrap());
        assert!(!w_majorizes_f64(&a1, &[1.0, 1.0], &[2.0, 0.0]).unwrap());
    }
}

// Probe: exhaustive small-k inner products on B2/G2 that previously stalled.
use weylmaj_core::exppoly::monomial_symmetric;
use weylmaj_core::quadrature::TorusQuadrature;
use weylmaj_core::ratio::rat;
use weylmaj_core::rootsys::{build, CartanLabel, MultiplicityParam};

fn main() {
    let mut failures = 0;
    for label in ["B2", "G2"] {
        let rs = build(CartanLabel::parse(label).unwrap()).unwrap();
        for (a, b) in [(2i64, 2i64), (2, 11), (3, 9), (5, 13), (7, 11), (2, 16), (9, 2)] {
            let k = MultiplicityParam::from_values(&rs, vec![rat(a, 8), rat(b, 8)]).unwrap();
            for lam in [[2i64, 1], [3, 2], [1, 3]] {
                let quad = TorusQuadrature::new(&rs, &k, 64).unwrap();
                let basis = weylmaj_core::exppoly::low_set(&rs, &lam);
                for i in 0..basis.len() {
                    for j in 0..=i {
                        let f = monomial_symmetric(&rs, &basis[i]).map_to_f64();
                        let g = monomial_symmetric(&rs, &basis[j]).map_to_f64();
                        if let Err(e) = quad.inner_product(&f, &g) {
                            println!("FAIL {label} k=({a}/8,{b}/8) lam={lam:?} ({i},{j}): {e}");
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    println!("failures: {failures}");
}

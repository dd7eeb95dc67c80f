use proptest::prelude::*;

use serre_calc::cycles::*;
use serre_calc::monomial::*;
use serre_calc::subset::IndexSet;
use serre_calc::weights::{enumerate_p, LambdaTuple, Params, StarInvolution, TType};

fn params(f: usize, j_rho: IndexSet) -> Params {
    Params::new(f, 61, j_rho, [10, 12, 14, 16][..f].to_vec()).unwrap()
}

fn lam(s: &str) -> LambdaTuple {
    s.parse().unwrap()
}

fn t_patterns(f: usize) -> Vec<Vec<TType>> {
    (0..3usize.pow(f as u32)).map(|c| (0..f).map(|j| TType::ALL[c / 3usize.pow(j as u32) % 3]).collect()).collect()
}

/// `e(R-bar/I)` from the Hilbert function: its `(f-1)`-st difference is
/// eventually constant and equal to the multiplicity.
fn hilbert_multiplicity(ideal: &MonomialIdeal, top: u32) -> u64 {
    let mut h: Vec<i64> = hilbert_function(ideal, top).into_iter().map(|x| x as i64).collect();
    for _ in 1..ideal.f() {
        h = h.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let tail = &h[h.len() - 3..];
    assert!(tail.iter().all(|&x| x == tail[0]), "Hilbert function not yet polynomial");
    tail[0] as u64
}

#[test]
fn ideals_by_hand() {
    let rho = IndexSet::full(2);
    assert_eq!(ideal_a(&lam("x,x+2"), rho).unwrap().to_string(), "(y1, z0)");
    assert!(ideal_a(&lam("p-2-x,x+1"), rho).unwrap().is_zero());
    let rho = IndexSet::EMPTY;
    assert!(ideal_a(&lam("x,x"), rho).unwrap().is_zero());
    assert!(ideal_a1(&lam("x,x"), -1, rho).unwrap().is_unit());
    assert_eq!(ideal_a1(&lam("x,x"), 0, rho).unwrap().to_string(), "(z0, z1)");
    assert_eq!(ideal_a1(&lam("x,x"), 1, rho).unwrap().to_string(), "(z0*z1)");
    assert!(ideal_a1(&lam("x,x"), 2, rho).unwrap().is_zero());
    assert!(ideal_a1(&lam("p-2-x,x+1"), 0, rho).unwrap().is_unit());
    assert!(ideal_a1(&lam("x,x"), 3, rho).is_err());
}

#[test]
fn hilbert_functions_frozen() {
    assert_eq!(hilbert_function(&MonomialIdeal::zero(1), 4), [1, 2, 2, 2, 2]);
    assert_eq!(hilbert_function(&MonomialIdeal::zero(2), 4), [1, 4, 8, 12, 16]);
    let i = ideal_i_n(2, 2);
    assert_eq!(hilbert_function(&i, 4), [1, 4, 4, 0, 0]);
    assert_eq!(quotient_dimension(&i), Some(9));
    assert_eq!(quotient_dimension(&MonomialIdeal::zero(1)), None);
}

#[test]
fn cycles_by_hand() {
    let z0 = MonomialIdeal::new(1, [Monomial::z(1, 0)]);
    assert_eq!(cycle_of(&z0).to_string(), "1[z0]");
    let sq = MonomialIdeal::new(1, [Monomial::one(1).times_z(0, 3)]);
    assert_eq!(multiplicity(&sq), 1);
    assert_eq!(multiplicity(&MonomialIdeal::zero(2)), 4);
    assert_eq!(multiplicity(&ideal_i_d(3, 2).unwrap()), 4);
}

#[test]
fn total_mult_formula_vs_localization() {
    for f in 1..=4 {
        for t in t_patterns(f) {
            let yz: IndexSet = (0..f).filter(|&j| t[j] == TType::YZ).collect();
            for j1 in yz.subsets() {
                for j2 in yz.difference(j1).subsets() {
                    for d in 0..=j1.union(j2).len() as i64 + 1 {
                        let (formula, oracle) = total_mult_check(j1, j2, d, &t).unwrap();
                        assert_eq!(formula, oracle, "f = {f}, J1 = {j1}, J2 = {j2}, d = {d}, t = {t:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn total_mult_formula_vs_hilbert_polynomial() {
    for f in 1..=3 {
        for t in t_patterns(f) {
            let yz: IndexSet = (0..f).filter(|&j| t[j] == TType::YZ).collect();
            for j1 in yz.subsets() {
                for j2 in yz.difference(j1).subsets() {
                    for d in 1..=j1.union(j2).len() as i64 + 1 {
                        let ideal = ideal_ijdt(j1, j2, d, &t).unwrap();
                        assert_eq!(total_mult_formula(j1, j2, d, &t).unwrap(), hilbert_multiplicity(&ideal, 10));
                    }
                }
            }
        }
    }
}

#[test]
fn total_mult_rejects_t_off_yz_on_j() {
    assert!(total_mult_formula(IndexSet::singleton(0), IndexSet::EMPTY, 1, &[TType::Y]).is_err());
}

#[test]
fn mult_add_every_lambda_i0_j_rho() {
    for f in 1..=4 {
        for j_rho in IndexSet::all(f) {
            let prm = params(f, j_rho);
            let star = StarInvolution::new(&prm).unwrap();
            for l in enumerate_p(&prm) {
                assert_eq!(multiplicity(&ideal_a(&l, j_rho).unwrap()), mult_a_formula(&l, j_rho));
                for i0 in -1..=f as i64 {
                    let r = mult_add_check(&l, i0, &star, j_rho).unwrap();
                    assert!(r.holds(), "{l}, i0 = {i0}, J_rho = {j_rho}: {r:?}");
                }
            }
        }
    }
}

#[test]
fn mult_add_frozen_case() {
    let rho = IndexSet::EMPTY;
    let prm = params(2, rho);
    let star = StarInvolution::new(&prm).unwrap();
    let l = lam("x,x");
    assert_eq!(star.apply(&l), lam("p-1-x,p-1-x"));
    let r = mult_add_check(&l, 0, &star, rho).unwrap();
    assert_eq!((r.left, r.right, r.total), (1, 3, 4));
    let r = mult_add_check(&l, 1, &star, rho).unwrap();
    assert_eq!((r.left, r.right, r.total), (3, 1, 4));
}

#[test]
fn additivity_along_a1() {
    for f in 1..=3 {
        for j_rho in IndexSet::all(f) {
            for l in enumerate_p(&params(f, j_rho)) {
                let a = ideal_a(&l, j_rho).unwrap();
                for i0 in -1..=f as i64 {
                    assert!(cycle_additivity_check(&ideal_a1(&l, i0, j_rho).unwrap(), &a).unwrap());
                }
            }
        }
    }
    let z0 = MonomialIdeal::new(1, [Monomial::z(1, 0)]);
    let y0 = MonomialIdeal::new(1, [Monomial::y(1, 0)]);
    assert!(cycle_of_subquotient(&z0, &y0).is_err());
}

#[test]
fn tau_dimensions_small() {
    for f in 1..=3 {
        for j_rho in IndexSet::all(f) {
            for l in enumerate_p(&params(f, j_rho)) {
                for n in 1..=f as u32 + 1 {
                    let (count, formula) = tau_dimension(&l, j_rho, n).unwrap();
                    assert_eq!(count, formula);
                }
            }
        }
    }
    assert_eq!(tau_dimension(&lam("x,x+1"), IndexSet::full(2), 3).unwrap(), (15, 15));
}

#[test]
fn multfree_under_genericity() {
    for f in 1..=3 {
        for j_rho in IndexSet::all(f) {
            let prm = params(f, j_rho);
            for n in (1..=f as u32 + 1).filter(|&n| prm.validate_genericity(2 * n - 1)) {
                let m = multfree_check(&prm, n).unwrap();
                assert!(m.holds(), "f = {f}, J_rho = {j_rho}, n = {n}: {:?}", m.collisions);
            }
        }
    }
}

#[test]
fn multfree_reports_numeric_coincidences() {
    let prm = Params::new(1, 29, IndexSet::singleton(0), vec![13]).unwrap();
    let m = multfree_check(&prm, 1).unwrap();
    assert!(m.numeric_only());
    assert_eq!(m.collisions.len(), 2);
}

fn arb_monomial(f: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-3i32..=3, f).prop_map(|e| Monomial::from_signed(&e))
}

proptest! {
    #[test]
    fn additivity_random_nested(
        gens in prop::collection::vec(arb_monomial(2), 1..4),
        extra in prop::collection::vec(arb_monomial(2), 1..4),
    ) {
        let ideal = MonomialIdeal::new(2, gens.clone());
        let sub = MonomialIdeal::new(2, gens.iter().zip(extra.iter().cycle()).map(|(g, e)| g.mul(e)));
        prop_assume!(ideal.contains_ideal(&sub));
        prop_assert!(cycle_additivity_check(&ideal, &sub).unwrap());
    }

    #[test]
    fn multiplicity_is_hilbert_leading_term(gens in prop::collection::vec(arb_monomial(2), 1..4)) {
        let ideal = MonomialIdeal::new(2, gens);
        prop_assert_eq!(multiplicity(&ideal), hilbert_multiplicity(&ideal, 16));
    }
}

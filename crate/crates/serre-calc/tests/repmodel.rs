use std::collections::BTreeSet;

use serre_calc::characters::CharCtx;
use serre_calc::repmodel::*;
use serre_calc::subset::IndexSet;
use serre_calc::weights::{enumerate_p, enumerate_pss, LambdaTuple, Params};

fn params(f: usize, j_rho: IndexSet) -> Params {
    Params::new(f, 61, j_rho, [10, 12, 14, 16][..f].to_vec()).unwrap()
}

fn lam(s: &str) -> LambdaTuple {
    s.parse().unwrap()
}

#[test]
fn yz_sets_match_t_types() {
    for f in 1..=4 {
        for j_rho in IndexSet::all(f) {
            for mu in enumerate_p(&params(f, j_rho)) {
                assert!(yz_matches_t_type(&mu, j_rho).unwrap(), "{mu}");
            }
            for l in enumerate_pss(f) {
                assert!(projection_sets_check(&l, j_rho).unwrap(), "{l}");
            }
        }
    }
}

#[test]
fn param_sets_by_hand() {
    let full = IndexSet::full(2);
    let sets = param_sets(&lam("x+1,p-2-x"), full).unwrap();
    assert_eq!((sets.x, sets.y, sets.z), (full, full, full));
    let sets = param_sets(&lam("x,x+2"), full).unwrap();
    assert_eq!(sets.x, IndexSet::singleton(0));
    assert_eq!(sets.y, IndexSet::singleton(0));
    assert_eq!(sets.z, IndexSet::singleton(1));
    let sets = param_sets(&lam("x,x"), IndexSet::EMPTY).unwrap();
    assert_eq!((sets.y, sets.z), (full, full));
    assert_eq!(x_ss(&lam("x+1,p-2-x")).unwrap(), full);
    assert!(x_ss(&lam("x,x+1")).is_err());
}

#[test]
fn nonsplit_d_xi_dimensions() {
    for f in 1..=4 {
        for j_rho in IndexSet::all(f) {
            let prm = params(f, j_rho);
            let ctx = CharCtx::new(&prm);
            let mut running = 0;
            for i0 in -1..=f as i64 {
                let s = nonsplit_lattice(&prm, i0).unwrap();
                if i0 >= 0 {
                    running += serre_calc::subset::binomial(f as u64, i0 as u64);
                }
                assert_eq!(s.d_xi_dim, running);
                assert_eq!(s.d_xi_formula, running);
                assert!(s.characters_are_layers(&prm));
                assert!(s.forbidden_disjoint(&ctx));
                assert!(s.socle.iter().all(|l| l.ell() as i64 <= i0));
            }
            assert_eq!(nonsplit_lattice(&prm, f as i64).unwrap().d_xi_dim, 1 << f);
        }
    }
    assert!(nonsplit_lattice(&params(2, IndexSet::EMPTY), 3).is_err());
}

#[test]
fn subquotient_identity_all_pairs() {
    for f in 1..=4 {
        for j_rho in IndexSet::all(f) {
            let prm = params(f, j_rho);
            for i0 in -1..=f as i64 {
                for i0p in i0 + 1..=f as i64 {
                    let id = subquot_char_identity(&prm, i0, i0p).unwrap();
                    assert!(id.holds(), "f = {f}, J_rho = {j_rho}, i0 = {i0}, i0' = {i0p}");
                }
            }
        }
    }
}

#[test]
fn subquotient_identity_f1_frozen() {
    let prm = params(1, IndexSet::EMPTY);
    let id = subquot_char_identity(&prm, -1, 0).unwrap();
    let right: Vec<String> = id.right.iter().map(ToString::to_string).collect();
    assert_eq!(right, ["(x)", "(p-1-x)"]);
    let id = subquot_char_identity(&prm, 0, 1).unwrap();
    let right: BTreeSet<String> = id.right.iter().map(ToString::to_string).collect();
    assert_eq!(right, BTreeSet::from(["(x+2)".to_string(), "(p-3-x)".to_string()]));
    assert!(subquot_char_identity(&prm, 1, 0).is_err());
}

#[test]
fn split_duality() {
    for f in 1..=4 {
        let prm = params(f, IndexSet::full(f));
        for bits in 0u32..1 << (f + 1) {
            let sigma: BTreeSet<usize> = (0..=f).filter(|i| bits >> i & 1 == 1).collect();
            let dual = sigma_dual(f, &sigma);
            assert_eq!(sigma_dual(f, &dual), sigma);
            let m = split_sigma_model(&prm, &sigma).unwrap();
            assert!(m.star_matches_dual && m.cycles_add, "f = {f}, sigma = {sigma:?}");
            assert_eq!(m.d_xi_dim, m.d_xi_formula);
        }
    }
    assert_eq!(sigma_dual(2, &BTreeSet::from([0])), BTreeSet::from([0, 1]));
    assert!(split_sigma_model(&params(2, IndexSet::EMPTY), &BTreeSet::new()).is_err());
}

#[test]
fn chains() {
    for f in 1..=4 {
        for j_rho in IndexSet::all(f) {
            let prm = params(f, j_rho);
            let maximal: Vec<i64> = (-1..=f as i64).collect();
            let c = chain_model(&prm, &maximal).unwrap();
            assert!(c.holds() && c.numerically_distinct);
            assert_eq!(c.length, f + 1);
        }
    }
    let prm = params(2, IndexSet::EMPTY);
    assert!(!chain_model(&prm, &[1, 0]).unwrap().holds());
}

#[test]
fn jh_intervals() {
    let tags = jh_i_sigma_tau(IndexSet::singleton(0), IndexSet::full(3)).unwrap();
    assert_eq!(tags.len(), 4);
    assert!(jh_i_sigma_tau(IndexSet::full(2), IndexSet::singleton(0)).is_err());
    assert!(hw_predicate(IndexSet::EMPTY, IndexSet::singleton(0), IndexSet::EMPTY, IndexSet::EMPTY).unwrap());
    assert!(dss_tags_bijective(4));
}

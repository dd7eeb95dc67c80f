use proptest::prelude::*;

use serre_calc::subset::IndexSet;
use serre_calc::weights::*;
use serre_calc::Error;

fn params(f: usize, j_rho: IndexSet) -> Params {
    Params::new(f, 61, j_rho, [10, 12, 14, 16, 18][..f].to_vec()).unwrap()
}

fn lam(s: &str) -> LambdaTuple {
    s.parse().unwrap()
}

/// every f-tuple of symbols, no structure assumed
fn brute_force(f: usize) -> Vec<LambdaTuple> {
    (0..6usize.pow(f as u32))
        .map(|code| LambdaTuple::new((0..f).map(|j| Sym::from_index(code / 6usize.pow(j as u32) % 6)).collect()))
        .collect()
}

#[test]
fn pss_small_cases_by_hand() {
    let f1: Vec<String> = enumerate_pss(1).iter().map(ToString::to_string).collect();
    assert_eq!(f1, ["(x)", "(x+2)", "(p-3-x)", "(p-1-x)"]);
    assert_eq!(enumerate_pss(2).len(), 10);
}

#[test]
fn pss_walk_matches_brute_force() {
    for f in 1..=5 {
        let mut brute: Vec<LambdaTuple> = brute_force(f).into_iter().filter(LambdaTuple::in_pss).collect();
        brute.sort();
        let mut walk = enumerate_pss(f);
        walk.sort();
        assert_eq!(walk, brute, "f = {f}");
    }
}

#[test]
fn pss_counts_frozen() {
    let counts: Vec<u64> = (1..=6).map(pss_count).collect();
    assert_eq!(counts, [4, 10, 28, 82, 244, 730]);
}

#[test]
fn p_size_closed_form() {
    for f in 1..=4 {
        for j_rho in IndexSet::all(f) {
            let k = j_rho.len() as u32;
            let expected = 2usize.pow(f as u32 - k) * 3usize.pow(k) + usize::from(k as usize == f);
            assert_eq!(enumerate_p(&params(f, j_rho)).len(), expected, "f = {f}, J_rho = {j_rho}");
        }
    }
}

#[test]
fn dss_bijects_with_subsets() {
    for f in 1..=5 {
        let dss = enumerate_dss(f);
        assert_eq!(dss.len(), 1 << f);
        let mut js: Vec<IndexSet> = dss.iter().map(LambdaTuple::j_set).collect();
        js.sort();
        js.dedup();
        assert_eq!(js.len(), 1 << f);
    }
}

#[test]
fn d_has_two_to_the_j_rho() {
    for f in 1..=5 {
        for j_rho in IndexSet::all(f) {
            assert_eq!(enumerate_d(&params(f, j_rho)).len(), 1 << j_rho.len());
        }
    }
}

#[test]
fn t_types_f1() {
    let rho = IndexSet::singleton(0);
    let t = |s: &str| lam(s).t_type(rho).unwrap()[0];
    assert_eq!(t("x"), TType::Z);
    assert_eq!(t("p-3-x"), TType::Z);
    assert_eq!(t("x+2"), TType::Y);
    assert_eq!(t("p-1-x"), TType::Y);
    assert!(matches!(lam("x+2").t_type(IndexSet::EMPTY), Err(Error::ImpossibleTType { index: 0, .. })));
}

#[test]
fn shift_example() {
    let rho = IndexSet::singleton(0);
    assert_eq!(lam("x").shift_by_s(rho, rho).unwrap(), lam("x+2"));
    assert_eq!(lam("x+2").shift_by_s(rho, rho).unwrap(), lam("x"));
}

#[test]
fn star_contract_every_j_rho() {
    for f in 1..=4 {
        for j_rho in IndexSet::all(f) {
            verify_star_contract(f, j_rho, StarRule::LowHigh).unwrap();
        }
    }
}

#[test]
fn star_by_t_type_is_not_an_involution_on_p() {
    let err = verify_star_contract(2, IndexSet::singleton(0), StarRule::ByTType).unwrap_err();
    assert_eq!(err, Error::StarNotRealizable { property: 'a', witness: "(x, x)".into() });
    assert!(verify_star_contract(3, IndexSet::EMPTY, StarRule::ByTType).is_err());
}

#[test]
fn projection_round_trip() {
    for f in 1..=4 {
        for j_rho in IndexSet::all(f) {
            for l in enumerate_pss(f) {
                let proj = pss_to_p_projection(&l, j_rho).unwrap();
                assert!(proj.mu.in_p(j_rho));
                assert_eq!(lambda_prime(&proj.mu, proj.j1, proj.j2, j_rho).unwrap(), l);
            }
        }
    }
}

#[test]
fn params_are_validated() {
    assert_eq!(Params::new(1, 9, IndexSet::EMPTY, vec![3]).unwrap_err(), Error::BadPrime(9));
    assert!(Params::new(2, 29, IndexSet::EMPTY, vec![3]).is_err());
    assert!(Params::new(1, 29, IndexSet::singleton(1), vec![3]).is_err());
    assert!(Params::new(1, 29, IndexSet::EMPTY, vec![29]).is_err());
    let p = Params::new(1, 7, IndexSet::EMPTY, vec![3]).unwrap();
    assert!(matches!(p.require_genericity(9), Err(Error::NotGeneric { required: 9, .. })));
}

#[test]
fn parse_and_display_round_trip() {
    for l in enumerate_pss(3) {
        assert_eq!(l.to_string().parse::<LambdaTuple>().unwrap(), l);
    }
    assert!("x,q".parse::<LambdaTuple>().is_err());
}

fn arb_case() -> impl Strategy<Value = (usize, u32, usize)> {
    (1usize..=4).prop_flat_map(|f| (Just(f), 0u32..1 << f, 0usize..256))
}

proptest! {
    #[test]
    fn shift_stays_in_p_and_toggles_t((f, rho, pick) in arb_case(), s_bits in 0u32..16) {
        let j_rho = IndexSet::from_bits(rho);
        let set = enumerate_p(&params(f, j_rho));
        let l = &set[pick % set.len()];
        let t = l.t_type(j_rho).unwrap();
        let movable: IndexSet = (0..f).filter(|&j| t[j] != TType::YZ).collect();
        let s = IndexSet::from_bits(s_bits).intersection(movable);
        let m = l.shift_by_s(s, j_rho).unwrap();
        prop_assert!(m.in_p(j_rho));
        let tm = m.t_type(j_rho).unwrap();
        for j in 0..f {
            prop_assert_eq!(tm[j], if s.contains(j) { t[j].swapped() } else { t[j] });
        }
        prop_assert_eq!(m.shift_by_s(s, j_rho).unwrap(), l.clone());
    }

    #[test]
    fn star_is_an_involution((f, rho, pick) in arb_case()) {
        let p = params(f, IndexSet::from_bits(rho));
        let star = StarInvolution::new(&p).unwrap();
        let set = enumerate_p(&p);
        let l = &set[pick % set.len()];
        prop_assert_eq!(star.apply(&star.apply(l)), l.clone());
    }

    #[test]
    fn bracket_s_preserves_pss(f in 1usize..=5, pick in 0usize..1000) {
        let set = enumerate_pss(f);
        let l = &set[pick % set.len()];
        prop_assert!(l.bracket_s().in_pss());
        let mut d = l.clone();
        for _ in 0..f {
            d = d.delta_shift();
        }
        prop_assert_eq!(&d, l);
    }
}

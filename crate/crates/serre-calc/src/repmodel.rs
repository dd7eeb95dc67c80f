//! Tag-level model of the representations: parameter sets, JH predicates,
//! the nonsplit lattice attached to `i0`, and the split model attached to `Σ`.
//!
//! Serre weights appear only as tags (a `J`-set, or a base character with an
//! `S`-set), never as vector spaces.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::characters::{CharCtx, DiffExponent, SymChar};
use crate::cycles::{cycle_of, CycleVector};
use crate::error::{Error, Result};
use crate::monomial::{hilbert_function_quotient, ideal_a, ideal_a1, MonomialIdeal};
use crate::subset::{binomial, IndexSet};
use crate::weights::{
    enumerate_d, enumerate_dss, enumerate_p, enumerate_pss, lambda_prime, pss_to_p_projection, LambdaTuple, Params,
    StarInvolution, Sym,
};

/// A Serre weight tag.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum WeightTag {
    /// `tau in W(rho^ss)` with `J_tau = J`.
    J(IndexSet),
    /// The constituent of an induced representation with base character and `S`-set.
    Induced { base: LambdaTuple, s: IndexSet },
}

impl WeightTag {
    /// `S(xi^c) = S(xi)^c`; `J`-tags are returned unchanged.
    pub fn complement(&self, f: usize) -> WeightTag {
        match self {
            WeightTag::Induced { base, s } => WeightTag::Induced { base: base.clone(), s: s.complement(f) },
            other => other.clone(),
        }
    }

    /// `l(tau) = |J_tau|` for `J`-tags.
    pub fn ell(&self) -> Option<usize> {
        match self {
            WeightTag::J(j) => Some(j.len()),
            WeightTag::Induced { .. } => None,
        }
    }
}

impl fmt::Display for WeightTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightTag::J(j) => write!(f, "J{j}"),
            WeightTag::Induced { base, s } => write!(f, "{base}/S{s}"),
        }
    }
}

/// `X^ss(lambda) = {j : lambda_j in {x, x+1, p-2-x, p-3-x}}`.
pub fn x_ss(lambda: &LambdaTuple) -> Result<IndexSet> {
    if !lambda.in_pss() {
        return Err(Error::NotMember(lambda.to_string(), "P^ss"));
    }
    Ok(lambda.positions(&[Sym::X, Sym::X1, Sym::P2, Sym::P3]))
}

fn require_p(mu: &LambdaTuple, j_rho: IndexSet) -> Result<()> {
    if mu.in_p(j_rho) {
        Ok(())
    } else {
        Err(Error::NotMember(mu.to_string(), "P"))
    }
}

/// `X(mu) = {j : mu_j in {x, p-2-x, p-3-x}} ∪ {j in J_rho : mu_j = x+1}`.
pub fn x_mu(mu: &LambdaTuple, j_rho: IndexSet) -> Result<IndexSet> {
    require_p(mu, j_rho)?;
    Ok(mu.positions(&[Sym::X, Sym::P2, Sym::P3]).union(mu.positions(&[Sym::X1]).intersection(j_rho)))
}

/// `Y(mu) = {j : mu_j in {x, x+1, p-2-x, p-3-x}} ∪ J_rho^c`.
pub fn y_mu(mu: &LambdaTuple, j_rho: IndexSet) -> Result<IndexSet> {
    require_p(mu, j_rho)?;
    Ok(mu.positions(&[Sym::X, Sym::X1, Sym::P2, Sym::P3]).union(j_rho.complement(mu.f())))
}

/// `Z(mu) = {j : mu_j in {x+1, x+2, p-1-x, p-2-x}} ∪ J_rho^c`.
pub fn z_mu(mu: &LambdaTuple, j_rho: IndexSet) -> Result<IndexSet> {
    require_p(mu, j_rho)?;
    Ok(mu.positions(&[Sym::X1, Sym::X2, Sym::P1, Sym::P2]).union(j_rho.complement(mu.f())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSets {
    pub x: IndexSet,
    pub y: IndexSet,
    pub z: IndexSet,
}

pub fn param_sets(mu: &LambdaTuple, j_rho: IndexSet) -> Result<ParamSets> {
    Ok(ParamSets { x: x_mu(mu, j_rho)?, y: y_mu(mu, j_rho)?, z: z_mu(mu, j_rho)? })
}

/// `Y(mu) = {j : t_j != y_j}` and `Z(mu) = {j : t_j != z_j}`.
pub fn yz_matches_t_type(mu: &LambdaTuple, j_rho: IndexSet) -> Result<bool> {
    let t = mu.t_type(j_rho)?;
    let not = |kind| (0..mu.f()).filter(|&j| t[j] != kind).collect::<IndexSet>();
    let sets = param_sets(mu, j_rho)?;
    Ok(sets.y == not(crate::weights::TType::Y) && sets.z == not(crate::weights::TType::Z))
}

/// With `(mu, J1, J2)` the projection of `lambda`: `X(mu) ∩ J1 = ∅` and `X(mu) ⊔ J1 ⊂ X^ss(lambda) ∪ J2`.
pub fn projection_sets_check(lambda: &LambdaTuple, j_rho: IndexSet) -> Result<bool> {
    let proj = pss_to_p_projection(lambda, j_rho)?;
    let x = x_mu(&proj.mu, j_rho)?;
    Ok(x.is_disjoint(proj.j1) && x.union(proj.j1).is_subset(x_ss(lambda)?.union(proj.j2)))
}

/// `{tau' : J_sigma ⊂ J_tau' ⊂ J_tau}`.
pub fn jh_i_sigma_tau(j_sigma: IndexSet, j_tau: IndexSet) -> Result<Vec<WeightTag>> {
    if !j_sigma.is_subset(j_tau) {
        return Err(Error::NotNested);
    }
    Ok(j_tau.difference(j_sigma).subsets().map(|s| WeightTag::J(s.union(j_sigma))).collect())
}

/// `S(sigma) ∩ J1 = ∅` and `S(sigma) ⊔ J1 ⊂ S(tau) ∪ J2`.
pub fn hw_predicate(s_sigma: IndexSet, s_tau: IndexSet, j1: IndexSet, j2: IndexSet) -> Result<bool> {
    if !j1.is_disjoint(j2) {
        return Err(Error::Overlap(j1.to_string(), j2.to_string()));
    }
    Ok(s_sigma.is_disjoint(j1) && s_sigma.union(j1).is_subset(s_tau.union(j2)))
}

/// `J2 ⊂ S(sigma)` and `S(tau) ∩ J2 = ∅`.
pub fn k1_predicate(s_sigma: IndexSet, s_tau: IndexSet, j2: IndexSet) -> bool {
    j2.is_subset(s_sigma) && s_tau.is_disjoint(j2)
}

/// `λ -> J_λ` is a bijection from `D^ss` onto the subsets of `{0..f-1}`.
pub fn dss_tags_bijective(f: usize) -> bool {
    let tags: BTreeSet<IndexSet> = enumerate_dss(f).iter().map(LambdaTuple::j_set).collect();
    tags.len() == 1 << f && enumerate_dss(f).len() == 1 << f
}

fn check_i0(i0: i64, f: usize) -> Result<()> {
    if (-1..=f as i64).contains(&i0) {
        Ok(())
    } else {
        Err(Error::OutOfRange { what: "i0", value: i0 })
    }
}

/// The predictions attached to a position `i0` of the nonsplit chain.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeState {
    pub i0: i64,
    /// `λ in P` with `|J_λ| <= i0` (the `I_1`-characters are `chi_λ`)
    pub characters: Vec<LambdaTuple>,
    /// `σ in W(rho)` with `l(σ) <= i0`, through the `D`-parametrization
    pub socle: Vec<LambdaTuple>,
    pub d_xi_dim: u64,
    pub d_xi_formula: u64,
    /// `λ in P^ss \ P` with `|J_λ| = i0 + 1`
    pub forbidden: Vec<LambdaTuple>,
    /// `a_1^{i0}(λ)` for `λ in P`
    pub gr_ideals: Vec<(LambdaTuple, MonomialIdeal)>,
}

pub fn nonsplit_lattice(params: &Params, i0: i64) -> Result<LatticeState> {
    let f = params.f();
    check_i0(i0, f)?;
    let j_rho = params.j_rho();
    let within = |l: &LambdaTuple| (l.ell() as i64) <= i0;
    let p = enumerate_p(params);
    let gr_ideals = p
        .iter()
        .map(|l| Ok((l.clone(), ideal_a1(l, i0, j_rho)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LatticeState {
        i0,
        characters: p.iter().filter(|l| within(l)).cloned().collect(),
        socle: enumerate_d(params).into_iter().filter(within).collect(),
        d_xi_dim: enumerate_dss(f).iter().filter(|l| within(l)).count() as u64,
        d_xi_formula: (0..=i0).map(|i| binomial(f as u64, i as u64)).sum(),
        forbidden: enumerate_pss(f)
            .into_iter()
            .filter(|l| !l.in_p(j_rho) && l.ell() as i64 == i0 + 1)
            .collect(),
        gr_ideals,
    })
}

impl LatticeState {
    /// Predicted characters and forbidden ones are distinct as characters.
    pub fn forbidden_disjoint(&self, ctx: &CharCtx) -> bool {
        let seen: BTreeSet<DiffExponent> = self.characters.iter().map(|l| ctx.diff_of_lambda(l)).collect();
        self.forbidden.iter().all(|l| !seen.contains(&ctx.diff_of_lambda(l)))
    }

    /// Characters are exactly the union of the layers `P_i`, `i <= i0`.
    pub fn characters_are_layers(&self, params: &Params) -> bool {
        let mut layers: Vec<LambdaTuple> = (0..=self.i0.max(-1))
            .flat_map(|i| enumerate_p(params).into_iter().filter(move |l| l.ell() as i64 == i))
            .collect();
        layers.sort();
        let mut chars = self.characters.clone();
        chars.sort();
        layers == chars
    }
}

/// One entry of the left side: where it came from and what it is.
#[derive(Clone, Debug, Serialize)]
pub struct SubquotTerm {
    pub lambda: LambdaTuple,
    /// `None` for the bottom of `R-bar/a_1^{i0'}(λ)`, else the generator
    pub generator: Option<String>,
    pub relabeled: LambdaTuple,
    pub chi: SymChar,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubquotIdentity {
    pub i0: i64,
    pub i0_prime: i64,
    pub left: Vec<SubquotTerm>,
    pub right: Vec<LambdaTuple>,
    /// left and right agree as tuples
    pub symbolic: bool,
    /// left and right agree as difference exponents
    pub numeric: bool,
    /// every relabeled generator has the character of its label
    pub relabel_consistent: bool,
    /// generator counts match the bottom-degree dimensions of `a_1^{i0}/a_1^{i0'}`
    pub hilbert_consistent: bool,
}

impl SubquotIdentity {
    pub fn holds(&self) -> bool {
        self.symbolic && self.numeric && self.relabel_consistent && self.hilbert_consistent
    }

    /// The right side as a set of tuples.
    pub fn characters(&self) -> BTreeSet<LambdaTuple> {
        self.right.iter().cloned().collect()
    }
}

/// The bottom characters of `a_1^{i0}/a_1^{i0'}` summed over `P`, against
/// `P^ss_{i0+1} ∪ P_{i0+2} ∪ ... ∪ P_{i0'}`.
pub fn subquot_char_identity(params: &Params, i0: i64, i0_prime: i64) -> Result<SubquotIdentity> {
    let f = params.f();
    check_i0(i0, f)?;
    check_i0(i0_prime, f)?;
    if i0 >= i0_prime {
        return Err(Error::Precondition(format!("need i0 < i0' (got {i0}, {i0_prime})")));
    }
    let j_rho = params.j_rho();
    let ctx = CharCtx::new(params);
    let mut left = Vec::new();
    let mut hilbert_consistent = true;
    for lambda in enumerate_p(params) {
        let ell = lambda.ell() as i64;
        let chi = SymChar::inv_of_lambda(&lambda);
        if i0 < ell && ell <= i0_prime {
            left.push(SubquotTerm { lambda: lambda.clone(), generator: None, relabeled: lambda.clone(), chi });
        } else if ell <= i0 {
            let big = ideal_a1(&lambda, i0, j_rho)?;
            let small = ideal_a1(&lambda, i0_prime, j_rho)?;
            let fresh: Vec<_> = big.gens().iter().filter(|g| !small.contains(g)).cloned().collect();
            let bottom = (i0 + 1 - ell) as u32;
            let dims = hilbert_function_quotient(&big, &small, bottom)?;
            hilbert_consistent &= fresh.iter().all(|g| g.degree() == bottom) && dims[bottom as usize] == fresh.len() as u64;
            for g in fresh {
                let (ys, zs) = g.support();
                left.push(SubquotTerm {
                    lambda: lambda.clone(),
                    generator: Some(g.to_string()),
                    relabeled: lambda_prime(&lambda, ys, zs, j_rho)?,
                    chi: chi.clone().times_alphas(&g.weight()),
                });
            }
        }
    }
    let mut right: Vec<LambdaTuple> = enumerate_pss(f)
        .into_iter()
        .filter(|l| {
            let ell = l.ell() as i64;
            ell == i0 + 1 || (l.in_p(j_rho) && i0 + 2 <= ell && ell <= i0_prime)
        })
        .collect();
    right.sort();
    let mut left_tuples: Vec<LambdaTuple> = left.iter().map(|t| t.relabeled.clone()).collect();
    left_tuples.sort();
    let mut left_diffs: Vec<DiffExponent> = left.iter().map(|t| ctx.diff(&t.chi)).collect();
    let mut right_diffs: Vec<DiffExponent> =
        right.iter().map(|l| ctx.diff(&SymChar::inv_of_lambda(l))).collect();
    left_diffs.sort();
    right_diffs.sort();
    let relabel_consistent =
        left.iter().all(|t| ctx.diff(&t.chi) == ctx.diff(&SymChar::inv_of_lambda(&t.relabeled)));
    Ok(SubquotIdentity {
        i0,
        i0_prime,
        symbolic: left_tuples == right,
        numeric: left_diffs == right_diffs,
        relabel_consistent,
        hilbert_consistent,
        left,
        right,
    })
}

/// The split model attached to `Σ ⊂ {0..f}`.
#[derive(Clone, Debug, Serialize)]
pub struct SplitModel {
    pub sigma: BTreeSet<usize>,
    pub sigma_dual: BTreeSet<usize>,
    pub p1: Vec<LambdaTuple>,
    pub d_xi_dim: u64,
    pub d_xi_formula: u64,
    /// `star(P \ P_1) = P_{Σ'}`
    pub star_matches_dual: bool,
    /// `Z(N_1) + Z(N_2) = Z(N)`
    pub cycles_add: bool,
}

/// `Σ' = {f - i : i not in Σ}`.
pub fn sigma_dual(f: usize, sigma: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..=f).filter(|i| !sigma.contains(i)).map(|i| f - i).collect()
}

pub fn split_sigma_model(params: &Params, sigma: &BTreeSet<usize>) -> Result<SplitModel> {
    let f = params.f();
    let j_rho = params.j_rho();
    if j_rho != IndexSet::full(f) {
        return Err(Error::Precondition("the split model needs J_rho = {0..f-1}".into()));
    }
    if sigma.iter().any(|&i| i > f) {
        return Err(Error::OutOfRange { what: "Σ element", value: *sigma.iter().max().unwrap_or(&0) as i64 });
    }
    let star = StarInvolution::new(params)?;
    let p = enumerate_p(params);
    let (p1, p2): (Vec<_>, Vec<_>) = p.iter().cloned().partition(|l| sigma.contains(&l.ell()));
    let dual = sigma_dual(f, sigma);
    let mut starred: Vec<LambdaTuple> = p2.iter().map(|l| star.apply(l)).collect();
    starred.sort();
    let mut target: Vec<LambdaTuple> = p.iter().filter(|l| dual.contains(&l.ell())).cloned().collect();
    target.sort();
    let z = |set: &[LambdaTuple]| -> Result<CycleVector> {
        set.iter().try_fold(CycleVector::zero(f), |acc, l| Ok(&acc + &cycle_of(&ideal_a(l, j_rho)?)))
    };
    let cycles_add = &z(&p1)? + &z(&p2)? == z(&p)?;
    Ok(SplitModel {
        sigma: sigma.clone(),
        sigma_dual: dual,
        d_xi_dim: enumerate_dss(f).iter().filter(|l| sigma.contains(&l.ell())).count() as u64,
        d_xi_formula: sigma.iter().map(|&i| binomial(f as u64, i as u64)).sum(),
        p1,
        star_matches_dual: starred == target,
        cycles_add,
    })
}

/// Verdict on a chain `i0_0 < i0_1 < ...` of lattice positions.
#[derive(Clone, Debug, Serialize)]
pub struct ChainModel {
    pub i0s: Vec<i64>,
    pub increasing: bool,
    pub length: usize,
    pub length_ok: bool,
    /// per step, the characters of the subquotient (as tuples)
    pub steps: Vec<Vec<LambdaTuple>>,
    pub steps_hold: bool,
    /// no tuple occurs twice across all steps
    pub multiplicity_free: bool,
    /// the step characters also have pairwise distinct difference exponents
    pub numerically_distinct: bool,
}

impl ChainModel {
    pub fn holds(&self) -> bool {
        self.increasing && self.length_ok && self.steps_hold && self.multiplicity_free
    }
}

pub fn chain_model(params: &Params, i0s: &[i64]) -> Result<ChainModel> {
    let f = params.f();
    let increasing = i0s.windows(2).all(|w| w[0] < w[1]) && i0s.iter().all(|&i| (-1..=f as i64).contains(&i));
    let length = i0s.len().saturating_sub(1);
    let ctx = CharCtx::new(params);
    let mut steps = Vec::new();
    let mut steps_hold = true;
    if increasing {
        for w in i0s.windows(2) {
            let id = subquot_char_identity(params, w[0], w[1])?;
            steps_hold &= id.holds();
            steps.push(id.right);
        }
    }
    let all: Vec<&LambdaTuple> = steps.iter().flatten().collect();
    let tuples: BTreeSet<&LambdaTuple> = all.iter().copied().collect();
    let diffs: BTreeSet<DiffExponent> = all.iter().map(|l| ctx.diff_of_lambda(l)).collect();
    Ok(ChainModel {
        i0s: i0s.to_vec(),
        increasing,
        length,
        length_ok: length <= f + 1,
        multiplicity_free: tuples.len() == all.len(),
        numerically_distinct: diffs.len() == all.len(),
        steps,
        steps_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(f: usize, j_rho: IndexSet) -> Params {
        Params::new(f, 61, j_rho, vec![10 + f as u64; f]).unwrap()
    }

    fn lam(s: &str) -> LambdaTuple {
        s.parse().unwrap()
    }

    #[test]
    fn sets_f1() {
        let rho = IndexSet::singleton(0);
        let sets = param_sets(&lam("x"), rho).unwrap();
        assert_eq!((sets.x, sets.y, sets.z), (rho, rho, IndexSet::EMPTY));
        assert_eq!(x_ss(&lam("x,x")).unwrap(), IndexSet::full(2));
    }

    #[test]
    fn jh_tags() {
        let all = jh_i_sigma_tau(IndexSet::EMPTY, IndexSet::full(2)).unwrap();
        assert_eq!(all.len(), 4);
        assert!(jh_i_sigma_tau(IndexSet::singleton(0), IndexSet::singleton(1)).is_err());
    }

    #[test]
    fn predicates() {
        let (e, full) = (IndexSet::EMPTY, IndexSet::full(2));
        assert!(hw_predicate(IndexSet::singleton(1), full, IndexSet::singleton(0), e).unwrap());
        assert!(hw_predicate(full, full, e, full).unwrap());
        assert!(!k1_predicate(e, e, IndexSet::singleton(0)));
    }

    #[test]
    fn lattice_endpoints() {
        let pr = params(2, IndexSet::singleton(0));
        let bottom = nonsplit_lattice(&pr, -1).unwrap();
        assert!(bottom.characters.is_empty() && bottom.d_xi_dim == 0);
        let top = nonsplit_lattice(&pr, 2).unwrap();
        assert_eq!(top.characters.len(), enumerate_p(&pr).len());
        assert_eq!(top.d_xi_dim, 4);
    }

    #[test]
    fn subquot_f1() {
        let pr = params(1, IndexSet::singleton(0));
        let id = subquot_char_identity(&pr, -1, 0).unwrap();
        assert!(id.holds());
        assert_eq!(id.right, [lam("x"), lam("p-1-x")]);
    }

    #[test]
    fn split_dual() {
        let sigma = BTreeSet::from([0]);
        assert_eq!(sigma_dual(2, &sigma), BTreeSet::from([0, 1]));
        let model = split_sigma_model(&params(2, IndexSet::full(2)), &sigma).unwrap();
        assert!(model.star_matches_dual && model.cycles_add);
        assert_eq!(model.d_xi_dim, model.d_xi_formula);
    }

    #[test]
    fn maximal_chain() {
        let pr = params(2, IndexSet::singleton(1));
        let chain = chain_model(&pr, &[-1, 0, 1, 2]).unwrap();
        assert!(chain.holds(), "{chain:?}");
        assert_eq!(chain.length, 3);
    }
}

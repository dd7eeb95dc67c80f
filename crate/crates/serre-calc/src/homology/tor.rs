//! `Tor_i(F, N)` for `N = ⊕_{lambda in P} chi_lambda^{-1} ⊗ gr(Lambda)/b(lambda)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use super::linalg::Fp;
use super::resolution::{resolution_tables, top_shift, CyclicModule, TableCheck};
use crate::characters::{CharCtx, DiffExponent, SymChar};
use crate::error::Result;
use crate::subset::binomial;
use crate::weights::{enumerate_p, LambdaTuple, Params, TType};

type CacheKey = (CyclicModule, u64, Option<i32>);

fn cache() -> &'static Mutex<HashMap<CacheKey, TableCheck>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, TableCheck>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `resolution_tables`, memoized per module, prime and window.
pub fn cached_tables(module: &CyclicModule, dmax: Option<i32>, fp: Fp) -> Result<TableCheck> {
    let key = (module.clone(), fp.modulus(), dmax);
    if let Some(hit) = cache().lock().expect("cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let check = resolution_tables(module, dmax, fp)?;
    cache().lock().expect("cache poisoned").insert(key, check.clone());
    Ok(check)
}

/// Resolutions for one `t`-pattern.
#[derive(Clone, Debug, Serialize)]
pub struct PatternData {
    pub t: Vec<TType>,
    pub boxed: TableCheck,
    pub full: Option<TableCheck>,
}

impl PatternData {
    pub fn yz_count(&self) -> usize {
        self.t.iter().filter(|&&t| t == TType::YZ).count()
    }
}

/// One summand of `Tor_i(F, N)`: internal degree and character.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct TorSummand {
    pub shift: i32,
    pub chi: SymChar,
    pub lambda: LambdaTuple,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorN {
    pub f: usize,
    pub lambdas: Vec<LambdaTuple>,
    pub terms: Vec<Vec<TorSummand>>,
    pub patterns: Vec<PatternData>,
}

/// Tor of `N` (and, with `with_full`, of `N/I^(3)N`) from per-pattern resolutions.
pub fn tor_n(params: &Params, with_full: bool, dmax: Option<i32>, fp: Fp) -> Result<TorN> {
    let j_rho = params.j_rho();
    let lambdas = enumerate_p(params);
    let mut patterns: Vec<Vec<TType>> = lambdas.iter().map(|l| l.t_type(j_rho)).collect::<Result<_>>()?;
    patterns.sort();
    patterns.dedup();
    let data: Vec<PatternData> = patterns
        .into_par_iter()
        .map(|t| {
            let boxed = cached_tables(&CyclicModule::new(t.clone(), None)?, dmax, fp)?;
            let full = if with_full { Some(cached_tables(&CyclicModule::new(t.clone(), Some(3))?, dmax, fp)?) } else { None };
            Ok(PatternData { t, boxed, full })
        })
        .collect::<Result<_>>()?;
    let f = params.f();
    let mut terms = vec![Vec::new(); 2 * f + 1];
    for lambda in &lambdas {
        let t = lambda.t_type(j_rho)?;
        let pattern = data.iter().find(|d| d.t == t).expect("pattern computed above");
        for (i, term) in pattern.boxed.computed.terms().iter().enumerate() {
            for s in term {
                terms[i].push(TorSummand {
                    shift: s.shift,
                    chi: SymChar::inv_of_lambda(lambda).times_alphas(&s.weight),
                    lambda: lambda.clone(),
                });
            }
        }
    }
    terms.iter_mut().for_each(|t| t.sort());
    Ok(TorN { f, lambdas, terms, patterns: data })
}

impl TorN {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    /// `dim Tor_i = C(2f, i) |P|` for every `i`.
    pub fn dims_match(&self) -> bool {
        let n = self.lambdas.len() as u64;
        self.dims().iter().enumerate().all(|(i, &d)| d as u64 == binomial(2 * self.f as u64, i as u64) * n)
    }

    /// Internal degrees of `Tor_i` lie in `[i, 2i]`.
    pub fn support_ok(&self) -> bool {
        self.terms.iter().enumerate().all(|(i, t)| t.iter().all(|s| (i as i32..=2 * i as i32).contains(&s.shift)))
    }

    /// The characters of `Tor_i`, as difference exponents, are those of
    /// `⊕_lambda (chi_lambda^{-1})^{C(2f, i)}`.
    pub fn characters_match(&self, ctx: &CharCtx) -> bool {
        let base: Vec<DiffExponent> = self.lambdas.iter().map(|l| ctx.diff(&SymChar::inv_of_lambda(l))).collect();
        self.terms.iter().enumerate().all(|(i, t)| {
            let mut got: Vec<DiffExponent> = t.iter().map(|s| ctx.diff(&s.chi)).collect();
            let k = binomial(2 * self.f as u64, i as u64) as usize;
            let mut want: Vec<DiffExponent> = base.iter().flat_map(|d| std::iter::repeat_n(d.clone(), k)).collect();
            got.sort();
            want.sort();
            got == want
        })
    }

    pub fn problems(&self) -> Vec<String> {
        self.patterns
            .iter()
            .flat_map(|p| p.boxed.problems.iter().chain(p.full.iter().flat_map(|x| &x.problems)).cloned())
            .collect()
    }

    pub fn certified(&self) -> bool {
        self.patterns.iter().all(|p| p.boxed.certified && p.full.as_ref().is_none_or(|x| x.certified))
    }
}

/// Top shift `3(f - d) + 4d` of the boxed table, inside `[3f, 4f]`.
pub fn top_shift_ok(pattern: &PatternData) -> bool {
    let f = pattern.t.len() as i32;
    let d = pattern.yz_count() as i32;
    top_shift(&pattern.boxed.computed) == Some(3 * (f - d) + 4 * d) && 3 * (f - d) + 4 * d <= 4 * f
}

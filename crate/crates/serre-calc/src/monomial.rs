//! Monomial ideals of `R = F[y_j, z_j]` and of `R-bar = R/(y_j z_j)`.
//!
//! Degrees are non-negative here: `y_j` and `z_j` have degree 1. (The
//! filtration conventions on `gr(Lambda)` put them in degree -1; flip signs
//! when comparing.)

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::characters::{CharCtx, DiffExponent, SymChar};
use crate::error::{Error, Result};
use crate::subset::IndexSet;
use crate::weights::{enumerate_p, LambdaTuple, Params, TType};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    y: Vec<u32>,
    z: Vec<u32>,
}

impl Monomial {
    pub fn one(f: usize) -> Monomial {
        Monomial { y: vec![0; f], z: vec![0; f] }
    }

    pub fn new(y: Vec<u32>, z: Vec<u32>) -> Monomial {
        assert_eq!(y.len(), z.len(), "exponent vectors of different length");
        Monomial { y, z }
    }

    pub fn y(f: usize, j: usize) -> Monomial {
        Monomial::one(f).times_y(j, 1)
    }

    pub fn z(f: usize, j: usize) -> Monomial {
        Monomial::one(f).times_z(j, 1)
    }

    pub fn times_y(mut self, j: usize, k: u32) -> Monomial {
        self.y[j] += k;
        self
    }

    pub fn times_z(mut self, j: usize, k: u32) -> Monomial {
        self.z[j] += k;
        self
    }

    /// `R-bar` monomial from signed exponents: `e_j > 0` is `y_j^e`, `e_j < 0` is `z_j^{-e}`.
    pub fn from_signed(e: &[i32]) -> Monomial {
        Monomial {
            y: e.iter().map(|&x| x.max(0) as u32).collect(),
            z: e.iter().map(|&x| (-x).max(0) as u32).collect(),
        }
    }

    pub fn f(&self) -> usize {
        self.y.len()
    }

    pub fn y_exp(&self) -> &[u32] {
        &self.y
    }

    pub fn z_exp(&self) -> &[u32] {
        &self.z
    }

    pub fn degree(&self) -> u32 {
        self.y.iter().chain(&self.z).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.y.iter().zip(&other.y).all(|(a, b)| a <= b) && self.z.iter().zip(&other.z).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            y: self.y.iter().zip(&other.y).map(|(a, b)| *a.max(b)).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            y: self.y.iter().zip(&other.y).map(|(a, b)| a + b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a + b).collect(),
        }
    }

    /// Whether the monomial vanishes in `R-bar`.
    pub fn is_zero_in_rbar(&self) -> bool {
        self.y.iter().zip(&self.z).any(|(a, b)| *a > 0 && *b > 0)
    }

    /// `alpha`-exponents of the H-eigencharacter: `y_j` carries `alpha_j`, `z_j` carries `alpha_j^{-1}`.
    pub fn weight(&self) -> Vec<i32> {
        self.y.iter().zip(&self.z).map(|(&a, &b)| a as i32 - b as i32).collect()
    }

    /// Exponents as a `2f` vector `(y_0, ..., y_{f-1}, z_0, ..., z_{f-1})`.
    pub fn exponents(&self) -> Vec<u32> {
        self.y.iter().chain(&self.z).copied().collect()
    }

    pub fn support(&self) -> (IndexSet, IndexSet) {
        let ys = (0..self.f()).filter(|&j| self.y[j] > 0).collect();
        let zs = (0..self.f()).filter(|&j| self.z[j] > 0).collect();
        (ys, zs)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for j in 0..self.f() {
            for (name, e) in [("y", self.y[j]), ("z", self.z[j])] {
                match e {
                    0 => {}
                    1 => parts.push(format!("{name}{j}")),
                    _ => parts.push(format!("{name}{j}^{e}")),
                }
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Removes non-minimal elements and sorts (by degree, then exponents).
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// A monomial ideal of `R-bar`, stored by its minimal nonzero generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    f: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(f: usize, gens: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
        let gens = gens.into_iter().filter(|g| !g.is_zero_in_rbar()).collect();
        MonomialIdeal { f, gens: minimalize(gens) }
    }

    pub fn zero(f: usize) -> MonomialIdeal {
        MonomialIdeal { f, gens: Vec::new() }
    }

    pub fn unit(f: usize) -> MonomialIdeal {
        MonomialIdeal { f, gens: vec![Monomial::one(f)] }
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.degree() == 0)
    }

    /// Membership in `R-bar`: zero monomials lie in every ideal.
    pub fn contains(&self, m: &Monomial) -> bool {
        m.is_zero_in_rbar() || self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.f, self.gens.iter().chain(&other.gens).cloned())
    }

    /// Minimal generators of the preimage in `R` (adds every `y_j z_j`).
    pub fn lifted_gens(&self) -> Vec<Monomial> {
        let products = (0..self.f).map(|j| Monomial::y(self.f, j).times_z(j, 1));
        minimalize(self.gens.iter().cloned().chain(products).collect())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(Monomial::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn t_monomial(f: usize, j: usize, t: TType) -> Monomial {
    match t {
        TType::Y => Monomial::y(f, j),
        TType::Z => Monomial::z(f, j),
        TType::YZ => Monomial::y(f, j).times_z(j, 1),
    }
}

/// `(t_0, ..., t_{f-1})`.
pub fn ideal_t(t: &[TType]) -> MonomialIdeal {
    let f = t.len();
    MonomialIdeal::new(f, t.iter().enumerate().map(|(j, &tj)| t_monomial(f, j, tj)))
}

/// `a(lambda)`.
pub fn ideal_a(lambda: &LambdaTuple, j_rho: IndexSet) -> Result<MonomialIdeal> {
    Ok(ideal_t(&lambda.t_type(j_rho)?))
}

/// `I^(n) = (y_j^n, z_j^n)`.
pub fn ideal_i_n(f: usize, n: u32) -> MonomialIdeal {
    let gens = (0..f).flat_map(|j| [Monomial::one(f).times_y(j, n), Monomial::one(f).times_z(j, n)]);
    MonomialIdeal::new(f, gens)
}

/// `I(J1, J2, d)`: all `prod_{J1'} y_j prod_{J2'} z_j` with `|J1'| + |J2'| = d`.
pub fn ideal_ijd(f: usize, j1: IndexSet, j2: IndexSet, d: i64) -> Result<MonomialIdeal> {
    if !j1.is_disjoint(j2) {
        return Err(Error::Overlap(j1.to_string(), j2.to_string()));
    }
    if d <= 0 {
        return Ok(MonomialIdeal::unit(f));
    }
    let gens = j1.union(j2).subsets().filter(|s| s.len() as i64 == d).map(|s| {
        s.iter().fold(Monomial::one(f), |m, j| if j1.contains(j) { m.times_y(j, 1) } else { m.times_z(j, 1) })
    });
    Ok(MonomialIdeal::new(f, gens))
}

/// `I(J1, J2, d, t) = I(J1, J2, d) + (t_0, ..., t_{f-1})`.
pub fn ideal_ijdt(j1: IndexSet, j2: IndexSet, d: i64, t: &[TType]) -> Result<MonomialIdeal> {
    Ok(ideal_ijd(t.len(), j1, j2, d)?.sum(&ideal_t(t)))
}

/// `I_d`: products of `d` distinct `z_j`.
pub fn ideal_i_d(f: usize, d: i64) -> Result<MonomialIdeal> {
    ideal_ijd(f, IndexSet::EMPTY, IndexSet::full(f), d)
}

/// `a_1^{i0}(lambda) = I(J1, J2, i0 + 1 - |J_lambda|) + a(lambda)` with
/// `J1 = {j not in J_rho : lambda_j = p-1-x}`, `J2 = {j not in J_rho : lambda_j = x}`.
pub fn ideal_a1(lambda: &LambdaTuple, i0: i64, j_rho: IndexSet) -> Result<MonomialIdeal> {
    let f = lambda.f();
    if i0 < -1 || i0 > f as i64 {
        return Err(Error::OutOfRange { what: "i0", value: i0 });
    }
    let d = i0 + 1 - lambda.ell() as i64;
    Ok(ideal_ijd(f, lambda.a1_j1(j_rho), lambda.a1_j2(j_rho), d)?.sum(&ideal_a(lambda, j_rho)?))
}

/// All nonzero monomials of `R-bar` of degree `d`.
pub fn rbar_monomials(f: usize, d: u32) -> Vec<Monomial> {
    fn go(f: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Monomial>) {
        if cur.len() == f {
            if left == 0 {
                out.push(Monomial::from_signed(cur));
            }
            return;
        }
        for e in -left..=left {
            cur.push(e);
            go(f, left - e.abs(), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(f, d as i32, &mut Vec::with_capacity(f), &mut out);
    out
}

/// Standard monomials of `I/I'` in degree `d` (`I' = None` means `R-bar/I`).
fn standard(ideal: &MonomialIdeal, sub: Option<&MonomialIdeal>, d: u32) -> Vec<Monomial> {
    rbar_monomials(ideal.f(), d)
        .into_iter()
        .filter(|m| match sub {
            None => !ideal.contains(m),
            Some(inner) => ideal.contains(m) && !inner.contains(m),
        })
        .collect()
}

/// `dim (R-bar/I)_d` for `0 <= d <= dmax`.
pub fn hilbert_function(ideal: &MonomialIdeal, dmax: u32) -> Vec<u64> {
    (0..=dmax).map(|d| standard(ideal, None, d).len() as u64).collect()
}

/// `dim (I/I')_d` for nested `I' ⊂ I`.
pub fn hilbert_function_quotient(ideal: &MonomialIdeal, sub: &MonomialIdeal, dmax: u32) -> Result<Vec<u64>> {
    if !ideal.contains_ideal(sub) {
        return Err(Error::NotNested);
    }
    Ok((0..=dmax).map(|d| standard(ideal, Some(sub), d).len() as u64).collect())
}

/// All standard monomials of `R-bar/I` when it is finite-dimensional. Finite
/// exactly when `I` contains a power of every variable, and then every standard
/// monomial lies in the box cut out by those powers.
pub fn standard_monomials(ideal: &MonomialIdeal) -> Option<Vec<Monomial>> {
    let f = ideal.f();
    let pure = |m: &Monomial, j: usize, z: bool| -> Option<u32> {
        let (own, other) = if z { (m.z_exp(), m.y_exp()) } else { (m.y_exp(), m.z_exp()) };
        let single = (0..f).all(|k| other[k] == 0 && (k == j || own[k] == 0));
        single.then_some(own[j])
    };
    let mut ranges = Vec::with_capacity(f);
    for j in 0..f {
        let ya = ideal.gens().iter().filter_map(|g| pure(g, j, false)).min()?;
        let zb = ideal.gens().iter().filter_map(|g| pure(g, j, true)).min()?;
        ranges.push(-(zb as i32) + 1..=ya as i32 - 1);
    }
    let mut out = vec![Vec::new()];
    for r in ranges {
        out = out
            .into_iter()
            .flat_map(|e: Vec<i32>| {
                r.clone().map(move |x| {
                    let mut v = e.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    let mut monos: Vec<Monomial> =
        out.iter().map(|e| Monomial::from_signed(e)).filter(|m| !ideal.contains(m)).collect();
    monos.sort_by_key(|m| (m.degree(), m.clone()));
    Some(monos)
}

/// Total dimension of `R-bar/I`, or `None` if it is infinite.
pub fn quotient_dimension(ideal: &MonomialIdeal) -> Option<u64> {
    standard_monomials(ideal).map(|v| v.len() as u64)
}

/// Per-degree characters of `chi_lambda^{-1} ⊗ I/I'` (or `⊗ R-bar/I`).
pub fn graded_characters(
    base: &LambdaTuple,
    ideal: &MonomialIdeal,
    sub: Option<&MonomialIdeal>,
    dmax: u32,
) -> Result<Vec<Vec<SymChar>>> {
    if let Some(inner) = sub {
        if !ideal.contains_ideal(inner) {
            return Err(Error::NotNested);
        }
    }
    let chi = SymChar::inv_of_lambda(base);
    Ok((0..=dmax)
        .map(|d| {
            let mut v: Vec<SymChar> =
                standard(ideal, sub, d).iter().map(|m| chi.clone().times_alphas(&m.weight())).collect();
            v.sort();
            v
        })
        .collect())
}

/// `dim R-bar/(I^(n) + a(lambda))` by counting, next to `n^s (2n-1)^c` with
/// `s = #{t_j in {Y, Z}}` and `c = #{t_j = YZ}`.
pub fn tau_dimension(lambda: &LambdaTuple, j_rho: IndexSet, n: u32) -> Result<(u64, u64)> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "n", value: 0 });
    }
    let t = lambda.t_type(j_rho)?;
    let c = t.iter().filter(|&&x| x == TType::YZ).count() as u32;
    let s = t.len() as u32 - c;
    let ideal = ideal_i_n(lambda.f(), n).sum(&ideal_a(lambda, j_rho)?);
    let count = quotient_dimension(&ideal).expect("I^(n) has finite colength");
    Ok((count, (n as u64).pow(s) * (2 * n as u64 - 1).pow(c)))
}

/// Every character of `⊕_{lambda in P} chi_lambda^{-1} ⊗ R-bar/(I^(n) + a(lambda))`, all degrees.
pub fn tau_characters(params: &Params, n: u32) -> Result<Vec<(LambdaTuple, Monomial, SymChar)>> {
    let mut out = Vec::new();
    for lambda in enumerate_p(params) {
        let ideal = ideal_i_n(params.f(), n).sum(&ideal_a(&lambda, params.j_rho())?);
        let chi = SymChar::inv_of_lambda(&lambda);
        for m in standard_monomials(&ideal).expect("I^(n) has finite colength") {
            let c = chi.clone().times_alphas(&m.weight());
            out.push((lambda.clone(), m, c));
        }
    }
    Ok(out)
}

/// Outcome of the multiplicity-one check for `N/I^(n)N`.
#[derive(Clone, Debug, Serialize)]
pub struct MultFree {
    pub n: u32,
    pub total: usize,
    pub distinct: usize,
    /// pairs of basis elements sharing a difference exponent
    pub collisions: Vec<(String, String)>,
    /// how many of those pairs are equal as symbolic characters
    pub symbolic: usize,
}

impl MultFree {
    pub fn holds(&self) -> bool {
        self.collisions.is_empty()
    }

    /// Collisions exist but all of them are numeric coincidences of distinct
    /// symbolic characters, which the difference exponent cannot separate.
    pub fn numeric_only(&self) -> bool {
        !self.collisions.is_empty() && self.symbolic == 0
    }
}

/// Checks that the characters of `N/I^(n)N` are pairwise distinct; needs `(2n-1)`-genericity.
pub fn multfree_check(params: &Params, n: u32) -> Result<MultFree> {
    params.require_genericity(2 * n - 1)?;
    let ctx = CharCtx::new(params);
    let chars = tau_characters(params, n)?;
    let mut seen: HashMap<DiffExponent, usize> = HashMap::with_capacity(chars.len());
    let mut collisions = Vec::new();
    let mut symbolic = 0;
    for (k, (lambda, m, chi)) in chars.iter().enumerate() {
        let d = ctx.diff(chi);
        if let Some(&first) = seen.get(&d) {
            let (l0, m0, chi0) = &chars[first];
            symbolic += usize::from(chi0 == chi);
            collisions.push((format!("{l0}:{m0}"), format!("{lambda}:{m}")));
        } else {
            seen.insert(d, k);
        }
    }
    Ok(MultFree { n, total: chars.len(), distinct: seen.len(), collisions, symbolic })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(s: &str) -> LambdaTuple {
        s.parse().unwrap()
    }

    #[test]
    fn ideal_examples() {
        let rho = IndexSet::singleton(0);
        assert_eq!(ideal_a(&lam("x"), rho).unwrap().to_string(), "(z0)");
        assert!(ideal_a(&lam("x"), IndexSet::EMPTY).unwrap().is_zero());
        assert!(ideal_a(&lam("x+1,x+1"), IndexSet::EMPTY).unwrap().is_zero());
        let full = IndexSet::full(2);
        assert_eq!(ideal_ijd(2, IndexSet::EMPTY, full, 1).unwrap().to_string(), "(z0, z1)");
        let i = ideal_ijd(2, IndexSet::singleton(0), IndexSet::singleton(1), 2).unwrap();
        assert_eq!(i.to_string(), "(y0*z1)");
        assert!(ideal_ijd(2, IndexSet::EMPTY, full, 0).unwrap().is_unit());
        assert!(ideal_ijd(2, IndexSet::singleton(0), IndexSet::EMPTY, 2).unwrap().is_zero());
    }

    #[test]
    fn a1_examples() {
        let rho = IndexSet::singleton(0);
        assert!(ideal_a1(&lam("x+2"), 0, rho).unwrap().is_unit());
        assert_eq!(ideal_a1(&lam("p-1-x"), 0, IndexSet::EMPTY).unwrap().to_string(), "(y0)");
        assert_eq!(ideal_a1(&lam("x"), 1, rho).unwrap(), ideal_a(&lam("x"), rho).unwrap());
        assert!(ideal_a1(&lam("x"), 2, rho).is_err());
    }

    #[test]
    fn hilbert_small() {
        assert_eq!(hilbert_function(&MonomialIdeal::zero(1), 4), [1, 2, 2, 2, 2]);
        assert_eq!(hilbert_function(&ideal_t(&[TType::Z]), 3), [1, 1, 1, 1]);
        let q = ideal_i_n(1, 3);
        assert_eq!(quotient_dimension(&q), Some(5));
        assert_eq!(quotient_dimension(&MonomialIdeal::zero(1)), None);
    }

    #[test]
    fn lifted_generators() {
        let i = ideal_t(&[TType::Y, TType::YZ]);
        let lifted: Vec<String> = i.lifted_gens().iter().map(|m| m.to_string()).collect();
        assert_eq!(lifted, ["y0", "y1*z1"]);
    }

    #[test]
    fn graded_character_degree_one() {
        let rho = IndexSet::singleton(0);
        let a = ideal_a(&lam("x"), rho).unwrap();
        let chars = graded_characters(&lam("x"), &a, None, 1).unwrap();
        assert_eq!(chars[0], [SymChar::inv_of_lambda(&lam("x"))]);
        assert_eq!(chars[1], [SymChar::inv_of_lambda(&lam("x")).times_alpha(0, 1)]);
    }
}

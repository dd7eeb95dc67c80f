//! Torus characters at the level of difference exponents.
//!
//! A character `chi` of `H` is recorded by the exponent `a - d` of
//! `diag(a, d) -> a^(..) d^(..)` modulo `p^f - 1`; the determinant twist is
//! dropped. `alpha_j` becomes `2 p^j` and inversion becomes negation.
//!
//! Next to the numeric value, [`SymChar`] keeps the symbolic digits so that
//! a numeric coincidence at one particular `r` can be told apart from an
//! identity that holds for every `r`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::IndexSet;
use crate::weights::{LambdaTuple, Params, Sym, TType};

/// Reduced residue mod `p^f - 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum DiffExponent {
    Small(u64),
    Big(BigUint),
}

impl fmt::Display for DiffExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffExponent::Small(v) => write!(f, "{v}"),
            DiffExponent::Big(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for DiffExponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Moduli below this use machine arithmetic.
const SMALL_LIMIT: u64 = 1 << 62;

#[derive(Clone, Debug)]
pub struct CharCtx {
    params: Params,
    modulus: BigUint,
    small: Option<(u64, Vec<u64>)>,
    big_powers: Vec<BigInt>,
}

impl CharCtx {
    pub fn new(params: &Params) -> Self {
        let p = BigUint::from(params.p());
        let modulus = num_traits::pow(p.clone(), params.f()) - BigUint::one();
        let big_powers: Vec<BigInt> =
            (0..params.f()).map(|j| BigInt::from(num_traits::pow(p.clone(), j))).collect();
        let small = modulus.to_u64().filter(|&m| m < SMALL_LIMIT).map(|m| {
            let pows = big_powers.iter().map(|b| b.to_u64().expect("below modulus")).collect();
            (m, pows)
        });
        CharCtx { params: params.clone(), modulus, small, big_powers }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    /// `sum_j digits[j] p^j mod p^f - 1`.
    pub fn from_digits(&self, digits: &[i64]) -> DiffExponent {
        match &self.small {
            Some((m, pows)) => {
                let total: i128 = digits.iter().zip(pows).map(|(&d, &pw)| d as i128 * pw as i128).sum();
                DiffExponent::Small(total.rem_euclid(*m as i128) as u64)
            }
            None => {
                let total: BigInt = digits.iter().zip(&self.big_powers).map(|(&d, pw)| pw * d).sum();
                DiffExponent::Big(self.reduce_big(total))
            }
        }
    }

    fn reduce_big(&self, v: BigInt) -> BigUint {
        let m = BigInt::from(self.modulus.clone());
        let mut r = v % &m;
        if r.is_negative() {
            r += &m;
        }
        r.to_biguint().expect("non-negative after reduction")
    }

    pub fn add(&self, a: &DiffExponent, b: &DiffExponent) -> DiffExponent {
        match (a, b, &self.small) {
            (DiffExponent::Small(x), DiffExponent::Small(y), Some((m, _))) => {
                DiffExponent::Small(((*x as u128 + *y as u128) % *m as u128) as u64)
            }
            _ => DiffExponent::Big(self.reduce_big(BigInt::from(self.to_big(a)) + BigInt::from(self.to_big(b)))),
        }
    }

    pub fn neg(&self, a: &DiffExponent) -> DiffExponent {
        match (a, &self.small) {
            (DiffExponent::Small(x), Some((m, _))) => DiffExponent::Small((m - x) % m),
            _ => DiffExponent::Big(self.reduce_big(-BigInt::from(self.to_big(a)))),
        }
    }

    fn to_big(&self, a: &DiffExponent) -> BigUint {
        match a {
            DiffExponent::Small(x) => BigUint::from(*x),
            DiffExponent::Big(x) => x.clone(),
        }
    }

    pub fn is_zero(&self, a: &DiffExponent) -> bool {
        match a {
            DiffExponent::Small(x) => *x == 0,
            DiffExponent::Big(x) => x.is_zero(),
        }
    }

    /// `alpha_j -> 2 p^j`.
    pub fn alpha(&self, j: usize) -> DiffExponent {
        let mut d = vec![0; self.params.f()];
        d[j] = 2;
        self.from_digits(&d)
    }

    pub fn diff_of_lambda(&self, lambda: &LambdaTuple) -> DiffExponent {
        let digits: Vec<i64> =
            lambda.entries().iter().enumerate().map(|(j, &s)| self.params.eval(j, s)).collect();
        self.from_digits(&digits)
    }

    pub fn diff(&self, chi: &SymChar) -> DiffExponent {
        let digits: Vec<i64> = chi
            .digits
            .iter()
            .enumerate()
            .map(|(j, d)| d.eval(self.params.p(), self.params.r()[j]))
            .map(|v| if chi.inverse { -v } else { v })
            .collect();
        self.from_digits(&digits)
    }
}

/// Digit `x_j + c` (`neg == false`) or `p-1-x_j + c` (`neg == true`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Digit {
    pub neg: bool,
    pub c: i32,
}

impl Digit {
    pub fn of(s: Sym) -> Digit {
        let (neg, c) = s.digit();
        Digit { neg, c }
    }

    pub fn sym(self) -> Option<Sym> {
        Sym::from_digit(self.neg, self.c)
    }

    pub fn eval(self, p: u64, r: u64) -> i64 {
        let base = if self.neg { p as i64 - 1 - r as i64 } else { r as i64 };
        base + self.c as i64
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.neg, self.c) {
            (false, 0) => write!(f, "x"),
            (false, c) if c > 0 => write!(f, "x+{c}"),
            (false, c) => write!(f, "x-{}", -c),
            (true, c) if c <= 1 => write!(f, "p-{}-x", 1 - c),
            (true, c) => write!(f, "p+{}-x", c - 1),
        }
    }
}

/// `chi_lambda * prod alpha_j^{k_j}`, or its inverse, with symbolic digits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SymChar {
    inverse: bool,
    digits: Vec<Digit>,
}

impl SymChar {
    pub fn of_lambda(lambda: &LambdaTuple) -> SymChar {
        SymChar { inverse: false, digits: lambda.entries().iter().map(|&s| Digit::of(s)).collect() }
    }

    /// `chi_lambda^{-1}`.
    pub fn inv_of_lambda(lambda: &LambdaTuple) -> SymChar {
        SymChar::of_lambda(lambda).inv()
    }

    pub fn inv(mut self) -> SymChar {
        self.inverse = !self.inverse;
        self
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    /// Multiply by `alpha_j^k`.
    pub fn times_alpha(mut self, j: usize, k: i32) -> SymChar {
        self.digits[j].c += if self.inverse { -2 * k } else { 2 * k };
        self
    }

    pub fn times_alphas(self, k: &[i32]) -> SymChar {
        k.iter().enumerate().fold(self, |c, (j, &kj)| c.times_alpha(j, kj))
    }

    /// The `lambda` with `self == chi_lambda`, if the digits are all symbols.
    pub fn as_lambda(&self) -> Option<LambdaTuple> {
        if self.inverse {
            return None;
        }
        self.digits.iter().map(|d| d.sym()).collect::<Option<Vec<_>>>().map(LambdaTuple::new)
    }

    /// Same as [`SymChar::as_lambda`] for `self == chi_lambda^{-1}`.
    pub fn as_inverse_lambda(&self) -> Option<LambdaTuple> {
        self.clone().inv().as_lambda()
    }
}

impl fmt::Display for SymChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi(")?;
        for (j, d) in self.digits.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl Serialize for SymChar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Checker for digit uniqueness: with `a_j` in `{-1, 0, 1}` and
/// `sum |b_j| <= sum |a_j|`, a congruence `sum a_j p^j = sum b_j p^j`
/// mod `p^f - 1` forces `a = b`. Returns `false` exactly on a counterexample.
pub fn digit_unique(a: &[i64], b: &[i64], p: u64) -> Result<bool> {
    if p <= 3 {
        return Err(Error::Precondition(format!("p = {p} must exceed 3")));
    }
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Precondition("a and b must have the same positive length".into()));
    }
    if a.iter().any(|x| x.abs() > 1) {
        return Err(Error::Precondition(format!("entries of a = {a:?} must lie in {{-1,0,1}}")));
    }
    let norm = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
    if norm(b) > norm(a) {
        return Err(Error::Precondition(format!("|b| = {} exceeds |a| = {}", norm(b), norm(a))));
    }
    let f = a.len();
    let m = BigInt::from(num_traits::pow(BigUint::from(p), f)) - 1;
    let value = |v: &[i64]| -> BigInt {
        let s: BigInt = v.iter().enumerate().map(|(j, &x)| BigInt::from(x) * num_traits::pow(BigInt::from(p), j)).sum();
        ((s % &m) + &m) % &m
    };
    Ok(a == b || value(a) != value(b))
}

/// How a difference-exponent coincidence arises.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum HitKind {
    /// `lambda_j + 2 i_j = mu_j` as affine expressions, for every `j`.
    Symbolic,
    /// Equal only for the configured `r`; the character projection cannot
    /// decide whether the full characters agree.
    NumericOnly,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hit {
    pub lambda: LambdaTuple,
    pub mu: LambdaTuple,
    pub i: Vec<i32>,
    pub kind: HitKind,
    pub violation: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CollisionScan {
    pub hits: Vec<Hit>,
}

impl CollisionScan {
    pub fn violations(&self) -> impl Iterator<Item = &Hit> {
        self.hits.iter().filter(|h| h.violation.is_some())
    }

    pub fn numeric_only(&self) -> impl Iterator<Item = &Hit> {
        self.hits.iter().filter(|h| h.kind == HitKind::NumericOnly)
    }

    pub fn symbolic(&self) -> impl Iterator<Item = &Hit> {
        self.hits.iter().filter(|h| h.kind == HitKind::Symbolic)
    }

    pub fn contains(&self, lambda: &LambdaTuple, mu: &LambdaTuple, i: &[i32]) -> bool {
        self.hits.iter().any(|h| &h.lambda == lambda && &h.mu == mu && h.i == i)
    }
}

/// All `(lambda, mu, i)` with `lambda, mu` in `set`, `|i_j| <= m` and
/// `diff(chi_lambda) + sum 2 i_j p^j = diff(chi_mu)`. Symbolic hits must
/// satisfy `|i_j| <= 1` with `i_j = 1 => t_j = z_j` and `i_j = -1 => t_j = y_j`;
/// anything else is recorded as a violation.
pub fn collision_scan(set: &[LambdaTuple], m: u32, ctx: &CharCtx) -> Result<CollisionScan> {
    let params = ctx.params();
    params.require_genericity(m + 1)?;
    let f = params.f();
    let mut by_diff: HashMap<DiffExponent, Vec<usize>> = HashMap::new();
    for (k, mu) in set.iter().enumerate() {
        by_diff.entry(ctx.diff_of_lambda(mu)).or_default().push(k);
    }
    let m = m as i32;
    let span = (2 * m + 1) as usize;
    let mut hits = Vec::new();
    for lambda in set {
        let t = lambda.t_type(params.j_rho())?;
        let base: Vec<i64> = (0..f).map(|j| params.eval(j, lambda.get(j))).collect();
        for code in 0..span.pow(f as u32) {
            let i: Vec<i32> = (0..f).map(|j| (code / span.pow(j as u32) % span) as i32 - m).collect();
            let digits: Vec<i64> = base.iter().zip(&i).map(|(&b, &ij)| b + 2 * ij as i64).collect();
            let Some(mus) = by_diff.get(&ctx.from_digits(&digits)) else { continue };
            for &k in mus {
                let mu = &set[k];
                let symbolic = (0..f).all(|j| {
                    let (dl, dm) = (Digit::of(lambda.get(j)), Digit::of(mu.get(j)));
                    dl.neg == dm.neg && dl.c + 2 * i[j] == dm.c
                });
                let violation = if symbolic { classify(&i, &t) } else { None };
                let kind = if symbolic { HitKind::Symbolic } else { HitKind::NumericOnly };
                hits.push(Hit { lambda: lambda.clone(), mu: mu.clone(), i: i.clone(), kind, violation });
            }
        }
    }
    Ok(CollisionScan { hits })
}

fn classify(i: &[i32], t: &[TType]) -> Option<String> {
    i.iter().zip(t).enumerate().find_map(|(j, (&ij, &tj))| match (ij, tj) {
        (0, _) | (1, TType::Z) | (-1, TType::Y) => None,
        _ => Some(format!("i_{j} = {ij} with t_{j} = {tj}")),
    })
}

/// Socle layers of `W(chi, chi^{J1,J2})`.
#[derive(Clone, Debug, Serialize)]
pub struct LayeredCharSet {
    pub layers: Vec<Vec<SymChar>>,
    /// Whether the representation is fixed by `K_1` (iff `J2` is empty).
    pub k1_fixed: bool,
}

impl LayeredCharSet {
    pub fn dimension(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn all(&self) -> impl Iterator<Item = &SymChar> {
        self.layers.iter().flatten()
    }
}

/// Layer `d` is `{chi prod_{J1'} alpha_j^{-1} prod_{J2'} alpha_j : |J1'| + |J2'| = d}`.
pub fn w_layers(base: &SymChar, j1: IndexSet, j2: IndexSet) -> Result<LayeredCharSet> {
    if !j1.is_disjoint(j2) {
        return Err(Error::Overlap(j1.to_string(), j2.to_string()));
    }
    let mut layers = vec![Vec::new(); j1.len() + j2.len() + 1];
    for s1 in j1.subsets() {
        for s2 in j2.subsets() {
            let chi = s1.iter().fold(base.clone(), |c, j| c.times_alpha(j, -1));
            let chi = s2.iter().fold(chi, |c, j| c.times_alpha(j, 1));
            layers[s1.len() + s2.len()].push(chi);
        }
    }
    for layer in &mut layers {
        layer.sort();
    }
    Ok(LayeredCharSet { layers, k1_fixed: j2.is_empty() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(f: usize, p: u64, rho: &[usize], r: &[u64]) -> CharCtx {
        CharCtx::new(&Params::new(f, p, rho.iter().copied().collect(), r.to_vec()).unwrap())
    }

    #[test]
    fn diff_examples() {
        let c = ctx(1, 29, &[], &[13]);
        assert_eq!(c.diff_of_lambda(&"x".parse().unwrap()), DiffExponent::Small(13));
        assert_eq!(c.diff_of_lambda(&"p-1-x".parse().unwrap()), DiffExponent::Small(15));
        let c = ctx(2, 29, &[], &[13, 14]);
        assert_eq!(c.diff_of_lambda(&"x+2,p-3-x".parse().unwrap()), DiffExponent::Small(363));
        assert_eq!(c.modulus(), &BigUint::from(840u32));
    }

    #[test]
    fn big_path_agrees_with_small() {
        // p^f - 1 above 2^62 forces the big-integer path.
        let params = Params::new(11, 61, IndexSet::EMPTY, vec![20; 11]).unwrap();
        let c = CharCtx::new(&params);
        assert!(matches!(c.alpha(0), DiffExponent::Big(_)));
        let lambda = LambdaTuple::constant(11, Sym::X);
        let d = c.diff_of_lambda(&lambda);
        let back = c.add(&d, &c.neg(&d));
        assert!(c.is_zero(&back));
        let expected: BigUint = (0..11).map(|j| BigUint::from(20u32) * num_traits::pow(BigUint::from(61u32), j)).sum();
        assert_eq!(d, DiffExponent::Big(expected));
    }

    #[test]
    fn symchar_inverse_and_alpha() {
        let lambda: LambdaTuple = "x".parse().unwrap();
        let c = ctx(1, 29, &[0], &[13]);
        let chi = SymChar::inv_of_lambda(&lambda).times_alpha(0, -1);
        // chi_x^{-1} alpha^{-1} = chi_{x+2}^{-1}
        assert_eq!(chi.as_inverse_lambda(), Some("x+2".parse().unwrap()));
        assert_eq!(c.diff(&chi), c.neg(&c.diff_of_lambda(&"x+2".parse().unwrap())));
        assert_eq!(chi.to_string(), "chi(x+2)^-1");
    }

    #[test]
    fn digit_unique_examples() {
        assert!(digit_unique(&[1, 0], &[1, 0], 29).unwrap());
        assert!(digit_unique(&[2, 0], &[0, 0], 29).is_err());
        assert!(digit_unique(&[1, 0], &[1, 1], 29).is_err());
        assert!(digit_unique(&[1], &[1], 3).is_err());
    }

    #[test]
    fn w_layers_small() {
        let base = SymChar::of_lambda(&"x".parse().unwrap());
        let w = w_layers(&base, IndexSet::singleton(0), IndexSet::EMPTY).unwrap();
        assert_eq!(w.dimension(), 2);
        assert!(w.k1_fixed);
        assert_eq!(w.layers[1], vec![base.clone().times_alpha(0, -1)]);
        assert!(w_layers(&base, IndexSet::singleton(0), IndexSet::singleton(0)).is_err());
    }
}

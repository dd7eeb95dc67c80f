//! The parameter sets `P^ss`, `P`, `D^ss`, `D` and the maps between them.
//!
//! An element of `P^ss` is an `f`-tuple of symbolic values `lambda_j(x_j)`,
//! each one of six affine expressions in `x_j`. Everything here is decided
//! from the symbols and `J_rho` alone; the exponents `r_j` only enter through
//! [`Params::eval`] and the character calculus.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::subset::{IndexSet, MAX_F};

/// One of the six values `x, x+1, x+2, p-3-x, p-2-x, p-1-x`, in that order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sym {
    X,
    X1,
    X2,
    P3,
    P2,
    P1,
}

impl Sym {
    pub const ALL: [Sym; 6] = [Sym::X, Sym::X1, Sym::X2, Sym::P3, Sym::P2, Sym::P1];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Sym {
        Sym::ALL[i]
    }

    fn bit(self) -> u8 {
        1 << self.index()
    }

    /// `x, x+1, x+2` are "low", the three `p-...-x` values are "high".
    pub fn is_low(self) -> bool {
        self.index() < 3
    }

    /// The digit form `(neg, c)`: the value is `x + c` if `!neg`, else `p-1-x + c`.
    pub fn digit(self) -> (bool, i32) {
        match self {
            Sym::X => (false, 0),
            Sym::X1 => (false, 1),
            Sym::X2 => (false, 2),
            Sym::P3 => (true, -2),
            Sym::P2 => (true, -1),
            Sym::P1 => (true, 0),
        }
    }

    pub fn from_digit(neg: bool, c: i32) -> Option<Sym> {
        Sym::ALL.into_iter().find(|s| s.digit() == (neg, c))
    }

    /// The integer `lambda_j(r)` for prime `p`.
    pub fn eval(self, p: u64, r: u64) -> i64 {
        let (neg, c) = self.digit();
        let base = if neg { p as i64 - 1 - r as i64 } else { r as i64 };
        base + c as i64
    }

    /// `v -> p-1-v`.
    pub fn bracket_s(self) -> Sym {
        Sym::from_index(5 - self.index())
    }

    /// `x+c <-> p-3-x+c`, i.e. low and high swapped with the same offset.
    pub fn flip(self) -> Sym {
        Sym::from_index((self.index() + 3) % 6)
    }

    fn successors_mask(self) -> u8 {
        if self.is_low() {
            Sym::X.bit() | Sym::X2.bit() | Sym::P2.bit()
        } else {
            Sym::X1.bit() | Sym::P3.bit() | Sym::P1.bit()
        }
    }

    /// Whether `next` may follow `self` at index `j+1`.
    pub fn allows_next(self, next: Sym) -> bool {
        self.successors_mask() & next.bit() != 0
    }

    pub fn in_set(self, set: &[Sym]) -> bool {
        set.contains(&self)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sym::X => "x",
            Sym::X1 => "x+1",
            Sym::X2 => "x+2",
            Sym::P3 => "p-3-x",
            Sym::P2 => "p-2-x",
            Sym::P1 => "p-1-x",
        })
    }
}

impl FromStr for Sym {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sym> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Sym::ALL
            .into_iter()
            .find(|sym| sym.to_string() == t)
            .ok_or_else(|| Error::InvalidParams(format!("unknown symbol `{s}`")))
    }
}

impl Serialize for Sym {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `t_j` of the ideal `a(lambda)`: `y_j`, `z_j` or `y_j z_j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum TType {
    Y,
    Z,
    YZ,
}

impl TType {
    pub const ALL: [TType; 3] = [TType::Y, TType::Z, TType::YZ];

    /// `y_j z_j / t_j` for `t_j` in `{y_j, z_j}`.
    pub fn swapped(self) -> TType {
        match self {
            TType::Y => TType::Z,
            TType::Z => TType::Y,
            TType::YZ => TType::YZ,
        }
    }

    /// Exponent of `alpha_j` in the H-character of `t_j`.
    pub fn alpha_weight(self) -> i32 {
        match self {
            TType::Y => 1,
            TType::Z => -1,
            TType::YZ => 0,
        }
    }
}

impl fmt::Display for TType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TType::Y => "Y",
            TType::Z => "Z",
            TType::YZ => "YZ",
        })
    }
}

/// `(f, p, J_rho, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    f: usize,
    p: u64,
    j_rho: IndexSet,
    r: Vec<u64>,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl Params {
    pub fn new(f: usize, p: u64, j_rho: IndexSet, r: Vec<u64>) -> Result<Params> {
        if f == 0 || f > MAX_F {
            return Err(Error::InvalidParams(format!("f must lie in 1..={MAX_F}, got {f}")));
        }
        if p < 5 || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        if !j_rho.is_subset(IndexSet::full(f)) {
            return Err(Error::InvalidParams(format!("J_rho = {j_rho} is not inside 0..{f}")));
        }
        if r.len() != f {
            return Err(Error::InvalidParams(format!("r has {} entries, expected {f}", r.len())));
        }
        if let Some(bad) = r.iter().find(|&&rj| rj >= p) {
            return Err(Error::InvalidParams(format!("r_j = {bad} is not below p = {p}")));
        }
        Ok(Params { f, p, j_rho, r })
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn j_rho(&self) -> IndexSet {
        self.j_rho
    }

    pub fn r(&self) -> &[u64] {
        &self.r
    }

    /// Same `f`, `p`, `r` with a different `J_rho`.
    pub fn with_j_rho(&self, j_rho: IndexSet) -> Result<Params> {
        Params::new(self.f, self.p, j_rho, self.r.clone())
    }

    /// Largest `n` with `n <= r_j <= p-3-n` for every `j` (may be negative).
    pub fn genericity(&self) -> i64 {
        self.r
            .iter()
            .map(|&rj| (rj as i64).min(self.p as i64 - 3 - rj as i64))
            .min()
            .expect("f >= 1")
    }

    pub fn validate_genericity(&self, n: u32) -> bool {
        self.genericity() >= n as i64
    }

    pub fn require_genericity(&self, n: u32) -> Result<()> {
        if self.validate_genericity(n) {
            Ok(())
        } else {
            Err(Error::NotGeneric { required: n, actual: self.genericity() })
        }
    }

    pub fn eval(&self, j: usize, s: Sym) -> i64 {
        s.eval(self.p, self.r[j])
    }
}

/// An `f`-tuple of symbols.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LambdaTuple(Vec<Sym>);

impl LambdaTuple {
    pub fn new(entries: Vec<Sym>) -> Self {
        LambdaTuple(entries)
    }

    pub fn constant(f: usize, s: Sym) -> Self {
        LambdaTuple(vec![s; f])
    }

    pub fn f(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Sym] {
        &self.0
    }

    pub fn get(&self, j: usize) -> Sym {
        self.0[j]
    }

    /// `{j : lambda_j in set}`.
    pub fn positions(&self, set: &[Sym]) -> IndexSet {
        self.0.iter().enumerate().filter(|(_, s)| s.in_set(set)).map(|(j, _)| j).collect()
    }

    pub fn in_pss(&self) -> bool {
        let f = self.f();
        f > 0 && (0..f).all(|j| self.0[j].allows_next(self.0[(j + 1) % f]))
    }

    pub fn in_p(&self, j_rho: IndexSet) -> bool {
        self.in_pss() && self.positions(&[Sym::X2, Sym::P3]).is_subset(j_rho)
    }

    pub fn in_dss(&self) -> bool {
        self.in_pss() && !self.0.iter().any(|s| matches!(s, Sym::X2 | Sym::P1))
    }

    pub fn in_d(&self, j_rho: IndexSet) -> bool {
        self.in_dss() && self.positions(&[Sym::X1, Sym::P3]).is_subset(j_rho)
    }

    /// `J_lambda = {j : lambda_j in {x+1, x+2, p-3-x}}`.
    pub fn j_set(&self) -> IndexSet {
        self.positions(&[Sym::X1, Sym::X2, Sym::P3])
    }

    pub fn ell(&self) -> usize {
        self.j_set().len()
    }

    /// `{j : lambda_j in {x+1, p-2-x}}`, where `t_j = y_j z_j` regardless of `J_rho`.
    pub fn middle_set(&self) -> IndexSet {
        self.positions(&[Sym::X1, Sym::P2])
    }

    /// `{j not in J_rho : lambda_j = p-1-x}` (the `J_1` of `a_1^{i0}(lambda)`).
    pub fn a1_j1(&self, j_rho: IndexSet) -> IndexSet {
        self.positions(&[Sym::P1]).difference(j_rho)
    }

    /// `{j not in J_rho : lambda_j = x}` (the `J_2` of `a_1^{i0}(lambda)`).
    pub fn a1_j2(&self, j_rho: IndexSet) -> IndexSet {
        self.positions(&[Sym::X]).difference(j_rho)
    }

    /// `J = {j not in J_rho : lambda_j in {x, p-1-x}}`.
    pub fn outer_set(&self, j_rho: IndexSet) -> IndexSet {
        self.a1_j1(j_rho).union(self.a1_j2(j_rho))
    }

    pub fn t_type(&self, j_rho: IndexSet) -> Result<Vec<TType>> {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &s)| {
                let inside = j_rho.contains(j);
                match s {
                    Sym::X | Sym::P3 if inside => Ok(TType::Z),
                    Sym::X2 | Sym::P1 if inside => Ok(TType::Y),
                    Sym::X | Sym::P1 | Sym::X1 | Sym::P2 => Ok(TType::YZ),
                    Sym::X2 | Sym::P3 => Err(Error::ImpossibleTType { index: j, sym: s }),
                }
            })
            .collect()
    }

    /// The unique `lambda' in P` with `t'_j = y_j z_j / t_j` on `s` and `t'_j = t_j` elsewhere.
    pub fn shift_by_s(&self, s: IndexSet, j_rho: IndexSet) -> Result<LambdaTuple> {
        let t = self.t_type(j_rho)?;
        let mut out = self.0.clone();
        for j in s.iter() {
            out[j] = match (t[j], self.0[j]) {
                (TType::Z, Sym::X) => Sym::X2,
                (TType::Z, Sym::P3) => Sym::P1,
                (TType::Y, Sym::X2) => Sym::X,
                (TType::Y, Sym::P1) => Sym::P3,
                _ => return Err(Error::IllegalShift(j)),
            };
        }
        Ok(LambdaTuple(out))
    }

    /// `delta(lambda)_j = lambda_{j+1}`.
    pub fn delta_shift(&self) -> LambdaTuple {
        let mut v = self.0.clone();
        v.rotate_left(1);
        LambdaTuple(v)
    }

    pub fn bracket_s(&self) -> LambdaTuple {
        LambdaTuple(self.0.iter().map(|s| s.bracket_s()).collect())
    }
}

impl fmt::Display for LambdaTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, s) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for LambdaTuple {
    type Err = Error;

    /// Parses `x,p-1-x` or `(x, p-1-x)`.
    fn from_str(s: &str) -> Result<LambdaTuple> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner.split(',').map(str::parse).collect::<Result<Vec<_>>>().map(LambdaTuple)
    }
}

impl Serialize for LambdaTuple {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `P^ss` by walking the cyclic successor graph, in lexicographic order.
pub fn enumerate_pss(f: usize) -> Vec<LambdaTuple> {
    fn extend(f: usize, cur: &mut Vec<Sym>, out: &mut Vec<LambdaTuple>) {
        if cur.len() == f {
            if cur[f - 1].allows_next(cur[0]) {
                out.push(LambdaTuple(cur.clone()));
            }
            return;
        }
        for s in Sym::ALL {
            if cur.last().is_none_or(|prev| prev.allows_next(s)) {
                cur.push(s);
                extend(f, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if f > 0 {
        extend(f, &mut Vec::with_capacity(f), &mut out);
    }
    out
}

pub fn enumerate_p(params: &Params) -> Vec<LambdaTuple> {
    let j_rho = params.j_rho();
    enumerate_pss(params.f()).into_iter().filter(|l| l.in_p(j_rho)).collect()
}

pub fn enumerate_dss(f: usize) -> Vec<LambdaTuple> {
    enumerate_pss(f).into_iter().filter(LambdaTuple::in_dss).collect()
}

pub fn enumerate_d(params: &Params) -> Vec<LambdaTuple> {
    let j_rho = params.j_rho();
    enumerate_pss(params.f()).into_iter().filter(|l| l.in_d(j_rho)).collect()
}

/// Number of elements of `P^ss`, as the trace of the `f`-th power of the
/// 6x6 successor matrix.
pub fn pss_count(f: usize) -> u64 {
    let m: Vec<Vec<u64>> = Sym::ALL
        .iter()
        .map(|a| Sym::ALL.iter().map(|&b| a.allows_next(b) as u64).collect())
        .collect();
    let mut acc: Vec<Vec<u64>> = (0..6).map(|i| (0..6).map(|k| (i == k) as u64).collect()).collect();
    for _ in 0..f {
        acc = (0..6)
            .map(|i| (0..6).map(|k| (0..6).map(|l| acc[i][l] * m[l][k]).sum()).collect())
            .collect();
    }
    (0..6).map(|i| acc[i][i]).sum()
}

/// `lambda -> (mu, J_1, J_2)`: the element of `P` obtained by undoing the
/// `p-3-x` and `x+2` entries outside `J_rho`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projection {
    pub mu: LambdaTuple,
    pub j1: IndexSet,
    pub j2: IndexSet,
}

pub fn pss_to_p_projection(lambda: &LambdaTuple, j_rho: IndexSet) -> Result<Projection> {
    if !lambda.in_pss() {
        return Err(Error::NotMember(lambda.to_string(), "P^ss"));
    }
    let j1 = lambda.positions(&[Sym::P3]).difference(j_rho);
    let j2 = lambda.positions(&[Sym::X2]).difference(j_rho);
    let mut mu = lambda.0.clone();
    for j in j1.iter() {
        mu[j] = Sym::P1;
    }
    for j in j2.iter() {
        mu[j] = Sym::X;
    }
    Ok(Projection { mu: LambdaTuple(mu), j1, j2 })
}

/// The inverse construction: `lambda'_j = lambda_j - 2` on `j1` (`p-1-x -> p-3-x`)
/// and `lambda_j + 2` on `j2` (`x -> x+2`).
pub fn lambda_prime(lambda: &LambdaTuple, j1: IndexSet, j2: IndexSet, j_rho: IndexSet) -> Result<LambdaTuple> {
    if !j1.is_disjoint(j2) {
        return Err(Error::Overlap(j1.to_string(), j2.to_string()));
    }
    if !j1.is_subset(lambda.a1_j1(j_rho)) || !j2.is_subset(lambda.a1_j2(j_rho)) {
        return Err(Error::Precondition(format!("{j1}, {j2} not admissible for {lambda}")));
    }
    let mut out = lambda.0.clone();
    for j in j1.iter() {
        out[j] = Sym::P3;
    }
    for j in j2.iter() {
        out[j] = Sym::X2;
    }
    Ok(LambdaTuple(out))
}

/// Componentwise rules for `lambda -> lambda*`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StarRule {
    /// Swap low and high keeping the offset (`x+c <-> p-3-x+c`) away from
    /// `J`, and `x <-> p-1-x` on `J`.
    LowHigh,
    /// Swap by `t`-type: `x <-> p-3-x` where `t_j = z_j`, `x+2 <-> p-1-x`
    /// where `t_j = y_j`, `x+1 <-> p-2-x`, and fix `J` pointwise.
    ByTType,
}

impl StarRule {
    pub fn apply(self, lambda: &LambdaTuple, j_rho: IndexSet) -> LambdaTuple {
        let outer = lambda.outer_set(j_rho);
        let entries = lambda
            .0
            .iter()
            .enumerate()
            .map(|(j, &s)| match self {
                StarRule::LowHigh if outer.contains(j) => s.bracket_s(),
                StarRule::LowHigh => s.flip(),
                StarRule::ByTType if outer.contains(j) => s,
                StarRule::ByTType => match s {
                    Sym::X => Sym::P3,
                    Sym::P3 => Sym::X,
                    Sym::X2 => Sym::P1,
                    Sym::P1 => Sym::X2,
                    Sym::X1 => Sym::P2,
                    Sym::P2 => Sym::X1,
                },
            })
            .collect();
        LambdaTuple(entries)
    }
}

/// `lambda -> lambda*` on `P`, checked against its contract when built.
#[derive(Clone, Debug)]
pub struct StarInvolution {
    rule: StarRule,
    j_rho: IndexSet,
}

impl StarInvolution {
    /// Verifies the contract on all of `P` for these parameters.
    pub fn new(params: &Params) -> Result<Self> {
        Self::with_rule(params, StarRule::LowHigh)
    }

    pub fn with_rule(params: &Params, rule: StarRule) -> Result<Self> {
        verify_star_contract(params.f(), params.j_rho(), rule)?;
        Ok(StarInvolution { rule, j_rho: params.j_rho() })
    }

    pub fn rule(&self) -> StarRule {
        self.rule
    }

    pub fn apply(&self, lambda: &LambdaTuple) -> LambdaTuple {
        self.rule.apply(lambda, self.j_rho)
    }
}

/// Checks (a) involution with image in `P`, (b) `|J_lambda| + |J_lambda*| + |J| = f`
/// with `J` unchanged, (c) the `{x+1, p-2-x}` positions unchanged, (d) the
/// layer `{|J_lambda| = i, |J| = k}` maps onto `{|J_lambda| = f-i-k, |J| = k}`.
pub fn verify_star_contract(f: usize, j_rho: IndexSet, rule: StarRule) -> Result<()> {
    let p: Vec<LambdaTuple> = enumerate_pss(f).into_iter().filter(|l| l.in_p(j_rho)).collect();
    let fail = |property, l: &LambdaTuple| Error::StarNotRealizable { property, witness: l.to_string() };
    let mut layers = std::collections::BTreeMap::<(usize, usize), (Vec<LambdaTuple>, Vec<LambdaTuple>)>::new();
    for l in &p {
        let s = rule.apply(l, j_rho);
        if !s.in_p(j_rho) || rule.apply(&s, j_rho) != *l {
            return Err(fail('a', l));
        }
        let outer = l.outer_set(j_rho);
        if s.outer_set(j_rho) != outer || l.ell() + s.ell() + outer.len() != f {
            return Err(fail('b', l));
        }
        if s.middle_set() != l.middle_set() {
            return Err(fail('c', l));
        }
        layers.entry((l.ell(), outer.len())).or_default().0.push(s);
        layers.entry((f - l.ell() - outer.len(), outer.len())).or_default().1.push(l.clone());
    }
    for (images, mut targets) in layers.into_values() {
        let mut images = images;
        images.sort();
        targets.sort();
        if images != targets {
            let witness = images.first().or(targets.first()).expect("nonempty layer");
            return Err(fail('d', witness));
        }
    }
    Ok(())
}

//! Minimal graded free resolutions of cyclic `gr(Lambda)`-modules
//! `gr(Lambda)/((t_j, h_j) [+ (y_j^n, z_j^n)])`, computed one multidegree at a time.
//!
//! Everything is graded by `Z^2` per tensor factor: degree (`y, z` = 1,
//! `h` = 2) and `H`-weight (`y` = +1, `z` = -1). A free summand generated in
//! multidegree `(d_j, w_j)_j` contributes shift `sum d_j` and character
//! `prod alpha_j^{w_j}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::linalg::{kernel, rank, Echelon, Fp};
use super::pbw::{monomial_product, PbwMonomial, MAX_FACTORS};
use crate::error::{Error, Result};
use crate::weights::TType;

/// Multidegree: per factor `(degree, weight)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MDeg {
    d: [i16; MAX_FACTORS],
    w: [i16; MAX_FACTORS],
}

impl MDeg {
    pub fn of(m: &PbwMonomial) -> MDeg {
        let mut out = MDeg::default();
        for j in 0..MAX_FACTORS {
            let (d, w) = m.bidegree(j);
            out.d[j] = d as i16;
            out.w[j] = w as i16;
        }
        out
    }

    pub fn total(&self) -> i32 {
        self.d.iter().map(|&x| x as i32).sum()
    }

    pub fn weights(&self, f: usize) -> Vec<i32> {
        self.w[..f].iter().map(|&x| x as i32).collect()
    }

    /// `self - other`, if it is the degree of some monomial.
    fn minus(&self, other: &MDeg) -> Option<MDeg> {
        let mut out = MDeg::default();
        for j in 0..MAX_FACTORS {
            let d = self.d[j] - other.d[j];
            let w = self.w[j] - other.w[j];
            if d < w.abs() || (d - w) % 2 != 0 {
                return None;
            }
            out.d[j] = d;
            out.w[j] = w;
        }
        Some(out)
    }

    /// All monomials of this multidegree.
    fn monomials(&self) -> Vec<PbwMonomial> {
        let mut out = vec![PbwMonomial::one()];
        for j in 0..MAX_FACTORS {
            let (d, w) = (self.d[j], self.w[j]);
            if d == 0 {
                continue;
            }
            let local: Vec<[u8; 3]> = (0..=(d - w.abs()) / 2)
                .map(|c| [((d - 2 * c + w) / 2) as u8, ((d - 2 * c - w) / 2) as u8, c as u8])
                .collect();
            out = out.iter().flat_map(|m| local.iter().map(move |&e| m.with_exps(j, e))).collect();
        }
        out
    }

    /// Every multidegree on `f` factors with total degree at most `dmax`, in processing order.
    fn all(f: usize, dmax: i32) -> Vec<MDeg> {
        let mut out = vec![MDeg::default()];
        for j in 0..f {
            out = out
                .into_iter()
                .flat_map(|m| {
                    let left = dmax - m.total();
                    (0..=left).flat_map(move |d| {
                        (-d..=d).step_by(2).map(move |w| {
                            let mut n = m;
                            n.d[j] = d as i16;
                            n.w[j] = w as i16;
                            n
                        })
                    })
                })
                .collect();
        }
        out.sort_by_key(|m| (m.total(), *m));
        out
    }
}

/// `gr(Lambda)/((t_j, h_j)_j + (y_j^n, z_j^n)_j)`; `n = None` omits the powers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct CyclicModule {
    t: Vec<TType>,
    n: Option<u8>,
}

impl CyclicModule {
    pub fn new(t: Vec<TType>, n: Option<u8>) -> Result<CyclicModule> {
        if t.is_empty() || t.len() > MAX_FACTORS {
            return Err(Error::InvalidParams(format!("{} factors (supported: 1..={MAX_FACTORS})", t.len())));
        }
        if n == Some(0) {
            return Err(Error::OutOfRange { what: "n", value: 0 });
        }
        Ok(CyclicModule { t, n })
    }

    pub fn f(&self) -> usize {
        self.t.len()
    }

    pub fn t(&self) -> &[TType] {
        &self.t
    }

    pub fn n(&self) -> Option<u8> {
        self.n
    }

    fn relations(&self) -> Vec<PbwMonomial> {
        let mut out = Vec::new();
        for (j, &t) in self.t.iter().enumerate() {
            out.push(match t {
                TType::Y => PbwMonomial::y(j),
                TType::Z => PbwMonomial::z(j),
                TType::YZ => PbwMonomial::factor(j, 1, 1, 0),
            });
            out.push(PbwMonomial::h(j));
            if let Some(n) = self.n {
                out.push(PbwMonomial::factor(j, n, 0, 0));
                out.push(PbwMonomial::factor(j, 0, n, 0));
            }
        }
        out
    }

    /// `dim` of the module in multidegree `m`, counted from its commutative monomial basis.
    pub fn dim_at(&self, m: &MDeg) -> u64 {
        let ok = (0..MAX_FACTORS).all(|j| {
            let (d, w) = (m.d[j], m.w[j]);
            if j >= self.f() {
                return d == 0 && w == 0;
            }
            if d < w.abs() || (d - w) % 2 != 0 {
                return false;
            }
            let (a, b) = ((d + w) / 2, (d - w) / 2);
            let killed = match self.t[j] {
                TType::Y => a > 0,
                TType::Z => b > 0,
                TType::YZ => a > 0 && b > 0,
            };
            let bounded = self.n.is_none_or(|n| a < n as i16 && b < n as i16);
            !killed && bounded
        });
        u64::from(ok)
    }

    /// A-priori bound on the shifts of the `i`-th term.
    pub fn shift_bound(&self, i: usize) -> i32 {
        match self.n {
            None => 2 * i as i32,
            Some(n) => 2 * n as i32 * self.f() as i32,
        }
    }

    /// Length of the resolution (the global dimension bound when `n` is set).
    pub fn length_bound(&self) -> usize {
        match self.n {
            None => 2 * self.f(),
            Some(_) => 3 * self.f(),
        }
    }
}

impl fmt::Display for CyclicModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.t.iter().map(TType::to_string).collect();
        match self.n {
            None => write!(f, "gr/(t, h) with t = ({})", t.join(", ")),
            Some(n) => write!(f, "gr/((t, h) + I^({n})) with t = ({})", t.join(", ")),
        }
    }
}

/// An element of a free module: `(generator, monomial) -> coefficient`.
type FreeElem = BTreeMap<(usize, PbwMonomial), u64>;

#[derive(Clone, Debug)]
struct Generator {
    deg: MDeg,
    image: FreeElem,
}

/// A minimal free resolution, truncated to total degree `dmax`.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: CyclicModule,
    fp: Fp,
    dmax: i32,
    imax: usize,
    terms: Vec<Vec<Generator>>,
}

impl Resolution {
    /// Computes `F_0, ..., F_{imax+1}` in total degrees `<= dmax`.
    pub fn compute(module: &CyclicModule, imax: usize, dmax: i32, fp: Fp) -> Resolution {
        let mut res = Resolution {
            module: module.clone(),
            fp,
            dmax,
            imax,
            terms: vec![vec![Generator { deg: MDeg::default(), image: FreeElem::new() }]],
        };
        let degrees = MDeg::all(module.f(), dmax);
        let mut layers: Vec<&[MDeg]> = Vec::new();
        let mut start = 0;
        for k in 1..=degrees.len() {
            if k == degrees.len() || degrees[k].total() != degrees[start].total() {
                layers.push(&degrees[start..k]);
                start = k;
            }
        }
        for i in 1..=imax + 1 {
            res.terms.push(Vec::new());
            for layer in &layers {
                // degrees of equal total degree do not interact
                let found: Vec<Vec<Generator>> = layer.par_iter().map(|m| res.new_generators(i, m)).collect();
                res.terms[i].extend(found.into_iter().flatten());
            }
        }
        res
    }

    pub fn module(&self) -> &CyclicModule {
        &self.module
    }

    pub fn dmax(&self) -> i32 {
        self.dmax
    }

    fn basis(&self, i: usize, m: &MDeg) -> Vec<(usize, PbwMonomial)> {
        let Some(gens) = self.terms.get(i) else {
            return Vec::new();
        };
        gens.iter()
            .enumerate()
            .filter_map(|(k, g)| m.minus(&g.deg).map(|rest| (k, rest)))
            .flat_map(|(k, rest)| rest.monomials().into_iter().map(move |mono| (k, mono)))
            .collect()
    }

    fn left_mul(&self, mono: &PbwMonomial, elem: &FreeElem) -> FreeElem {
        let mut out = FreeElem::new();
        for ((k, m), c) in elem {
            for (c2, prod) in monomial_product(self.fp, mono, m) {
                let e = out.entry((*k, prod)).or_insert(0);
                *e = self.fp.add(*e, self.fp.mul(*c, c2));
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// `d_i : F_i -> F_{i-1}` on an element of `F_i`.
    fn apply(&self, i: usize, elem: &FreeElem) -> FreeElem {
        let mut out = FreeElem::new();
        for ((k, mono), c) in elem {
            for (key, v) in self.left_mul(mono, &self.terms[i][*k].image) {
                let e = out.entry(key).or_insert(0);
                *e = self.fp.add(*e, self.fp.mul(*c, v));
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn coords(elem: &FreeElem, index: &HashMap<(usize, PbwMonomial), usize>, width: usize) -> Vec<u64> {
        let mut v = vec![0; width];
        for (key, c) in elem {
            v[index[key]] = *c;
        }
        v
    }

    /// Matrix of `d_i` in multidegree `m`: one row per basis element of `(F_i)_m`.
    fn matrix(&self, i: usize, m: &MDeg) -> (Vec<(usize, PbwMonomial)>, Vec<Vec<u64>>) {
        let domain = self.basis(i, m);
        let codomain = self.basis(i - 1, m);
        let index: HashMap<_, _> = codomain.iter().enumerate().map(|(k, b)| (*b, k)).collect();
        let rows = domain
            .iter()
            .map(|(k, mono)| Self::coords(&self.left_mul(mono, &self.terms[i][*k].image), &index, codomain.len()))
            .collect();
        (codomain, rows)
    }

    fn new_generators(&self, i: usize, m: &MDeg) -> Vec<Generator> {
        let codomain = self.basis(i - 1, m);
        if codomain.is_empty() {
            return Vec::new();
        }
        let candidates: Vec<Vec<u64>> = if i == 1 {
            self.module
                .relations()
                .iter()
                .filter(|r| MDeg::of(r) == *m)
                .map(|r| codomain.iter().map(|(_, b)| u64::from(b == r)).collect())
                .collect()
        } else {
            let (_, rows) = self.matrix(i - 1, m);
            kernel(self.fp, self.basis(i - 2, m).len(), &rows)
        };
        if candidates.is_empty() {
            return Vec::new();
        }
        let mut span = Echelon::new(self.fp, codomain.len());
        for row in self.matrix(i, m).1 {
            span.insert(&row);
        }
        candidates
            .into_iter()
            .filter(|c| span.insert(c))
            .map(|c| Generator {
                deg: *m,
                image: codomain.iter().zip(&c).filter(|(_, &v)| v != 0).map(|(b, &v)| (*b, v)).collect(),
            })
            .collect()
    }

    /// Re-checks `d^2 = 0`, exactness in every multidegree of the window, and minimality.
    pub fn verify(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for i in 2..self.terms.len() {
            for (k, g) in self.terms[i].iter().enumerate() {
                if !self.apply(i - 1, &g.image).is_empty() {
                    problems.push(format!("d_{} d_{i} != 0 on generator {k}", i - 1));
                }
            }
        }
        for i in 1..self.terms.len() {
            for (k, g) in self.terms[i].iter().enumerate() {
                if g.image.keys().any(|(_, mono)| *mono == PbwMonomial::one()) {
                    problems.push(format!("generator {k} of F_{i} is not minimal"));
                }
            }
        }
        let fp = self.fp;
        let degrees = MDeg::all(self.module.f(), self.dmax);
        let found: Vec<String> = degrees
            .par_iter()
            .flat_map_iter(|m| {
                let mut local = Vec::new();
                let ranks: Vec<usize> = (1..self.terms.len())
                    .map(|i| {
                        let (codomain, rows) = self.matrix(i, m);
                        rank(fp, codomain.len(), &rows)
                    })
                    .collect();
                let h0 = self.basis(0, m).len() - ranks.first().copied().unwrap_or(0);
                if h0 as u64 != self.module.dim_at(m) {
                    local.push(format!("H_0 has dim {h0} at {m:?}, module has {}", self.module.dim_at(m)));
                }
                for i in 1..self.terms.len() - 1 {
                    let ker = self.basis(i, m).len() - ranks[i - 1];
                    if ker != ranks[i] {
                        local.push(format!("H_{i} != 0 at {m:?}"));
                    }
                }
                local
            })
            .collect();
        problems.extend(found);
        problems
    }

    /// Whether nothing outside the window or beyond `imax` can be missing.
    pub fn certified(&self) -> bool {
        let bound_ok = (0..=self.imax).all(|i| self.module.shift_bound(i) <= self.dmax);
        let within = self.terms.iter().enumerate().all(|(i, gens)| gens.iter().all(|g| g.deg.total() <= self.module.shift_bound(i)));
        let length_ok = self.imax < self.module.length_bound() || self.terms[self.imax + 1].is_empty();
        bound_ok && within && length_ok
    }

    pub fn betti(&self) -> BettiTable {
        let f = self.module.f();
        let terms = self
            .terms
            .iter()
            .take(self.imax + 1)
            .map(|gens| gens.iter().map(|g| Summand { shift: g.deg.total(), weight: g.deg.weights(f) }).collect())
            .collect();
        BettiTable::new(f, terms)
    }
}

/// One free summand `gr(Lambda)(-shift)` with character `prod alpha_j^{weight_j}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Summand {
    pub shift: i32,
    pub weight: Vec<i32>,
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chars: Vec<String> = self
            .weight
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0)
            .map(|(j, &w)| if w == 1 { format!("a{j}") } else { format!("a{j}^{w}") })
            .collect();
        let chi = if chars.is_empty() { "1".to_string() } else { chars.join("*") };
        write!(f, "({}, {chi})", self.shift)
    }
}

/// Per homological degree, the sorted multiset of free summands.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BettiTable {
    f: usize,
    terms: Vec<Vec<Summand>>,
}

impl BettiTable {
    pub fn new(f: usize, mut terms: Vec<Vec<Summand>>) -> BettiTable {
        terms.iter_mut().for_each(|t| t.sort());
        while terms.last().is_some_and(Vec::is_empty) {
            terms.pop();
        }
        BettiTable { f, terms }
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn terms(&self) -> &[Vec<Summand>] {
        &self.terms
    }

    pub fn term(&self, i: usize) -> &[Summand] {
        self.terms.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.terms.iter().map(Vec::len).collect()
    }

    /// Restriction to the first `k` homological degrees.
    pub fn truncated(&self, k: usize) -> BettiTable {
        BettiTable::new(self.f, self.terms.iter().take(k).cloned().collect())
    }

    /// Tensor product over disjoint sets of factors.
    pub fn tensor(&self, other: &BettiTable) -> BettiTable {
        let len = self.terms.len() + other.terms.len();
        let mut terms = vec![Vec::new(); len.saturating_sub(1)];
        for (i, a) in self.terms.iter().enumerate() {
            for (k, b) in other.terms.iter().enumerate() {
                for x in a {
                    for y in b {
                        let weight = x.weight.iter().chain(&y.weight).copied().collect();
                        terms[i + k].push(Summand { shift: x.shift + y.shift, weight });
                    }
                }
            }
        }
        BettiTable::new(self.f + other.f, terms)
    }

    /// Whether term `i` equals the `i`-th exterior power of term 1.
    pub fn is_exterior(&self) -> bool {
        let first = self.term(1);
        (0..=first.len()).all(|i| {
            let mut wedge: Vec<Summand> = (0u32..1 << first.len())
                .filter(|s| s.count_ones() as usize == i)
                .map(|s| {
                    let picked: Vec<&Summand> = (0..first.len()).filter(|k| s >> k & 1 == 1).map(|k| &first[k]).collect();
                    Summand {
                        shift: picked.iter().map(|x| x.shift).sum(),
                        weight: (0..self.f).map(|j| picked.iter().map(|x| x.weight[j]).sum()).collect(),
                    }
                })
                .collect();
            wedge.sort();
            wedge == self.term(i)
        }) && self.terms.len() <= first.len() + 1
    }

    /// Multiset inclusion, term by term.
    pub fn is_contained_in(&self, other: &BettiTable) -> bool {
        (0..self.terms.len()).all(|i| {
            let mut rest = other.term(i).to_vec();
            self.term(i).iter().all(|s| match rest.iter().position(|x| x == s) {
                Some(k) => {
                    rest.swap_remove(k);
                    true
                }
                None => false,
            })
        })
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let parts: Vec<String> = t.iter().map(Summand::to_string).collect();
            writeln!(f, "F_{i}: {}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// The known one-factor tables: `gr_j/(t, h)` (`full = false`) and `gr_j/((t, h) + (y^3, z^3))`.
pub fn expected_factor_table(t: TType, full: bool) -> BettiTable {
    let y_full: [&[(i32, i32)]; 4] =
        [&[(0, 0)], &[(1, 1), (2, 0), (3, -3)], &[(3, 1), (4, -2), (5, -3)], &[(6, -2)]];
    let y_box: [&[(i32, i32)]; 3] = [&[(0, 0)], &[(1, 1), (2, 0)], &[(3, 1)]];
    let yz_full: [&[(i32, i32)]; 4] = [
        &[(0, 0)],
        &[(2, 0), (2, 0), (3, 3), (3, -3)],
        &[(4, 0), (4, 2), (4, -2), (5, 3), (5, -3)],
        &[(6, 2), (6, -2)],
    ];
    let yz_box: [&[(i32, i32)]; 3] = [&[(0, 0)], &[(2, 0), (2, 0)], &[(4, 0)]];
    let rows: &[&[(i32, i32)]] = match (t, full) {
        (TType::YZ, true) => &yz_full,
        (TType::YZ, false) => &yz_box,
        (_, true) => &y_full,
        (_, false) => &y_box,
    };
    let sign = if t == TType::Z { -1 } else { 1 };
    let terms = rows
        .iter()
        .map(|row| row.iter().map(|&(shift, w)| Summand { shift, weight: vec![sign * w] }).collect())
        .collect();
    BettiTable::new(1, terms)
}

/// Tensor product of the one-factor tables.
pub fn expected_table(t: &[TType], full: bool) -> BettiTable {
    t.iter()
        .map(|&tj| expected_factor_table(tj, full))
        .reduce(|a, b| a.tensor(&b))
        .unwrap_or_else(|| BettiTable::new(0, vec![vec![Summand { shift: 0, weight: Vec::new() }]]))
}

/// Where a computed table disagrees with the expected one.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TermDiff {
    pub i: usize,
    pub missing: Vec<Summand>,
    pub extra: Vec<Summand>,
}

pub fn table_diff(expected: &BettiTable, computed: &BettiTable) -> Vec<TermDiff> {
    let len = expected.terms.len().max(computed.terms.len());
    (0..len)
        .filter_map(|i| {
            let mut extra = computed.term(i).to_vec();
            let mut missing = Vec::new();
            for s in expected.term(i) {
                match extra.iter().position(|x| x == s) {
                    Some(k) => {
                        extra.remove(k);
                    }
                    None => missing.push(s.clone()),
                }
            }
            (!missing.is_empty() || !extra.is_empty()).then_some(TermDiff { i, missing, extra })
        })
        .collect()
}

/// A computed table next to the expected one.
#[derive(Clone, Debug, Serialize)]
pub struct TableCheck {
    pub module: CyclicModule,
    pub computed: BettiTable,
    pub expected: BettiTable,
    pub diff: Vec<TermDiff>,
    pub problems: Vec<String>,
    pub certified: bool,
}

impl TableCheck {
    pub fn matches(&self) -> bool {
        self.diff.is_empty() && self.problems.is_empty()
    }
}

/// Default window: `4f + 2` without the power relations, `6f + 2` with them.
pub fn default_window(module: &CyclicModule) -> i32 {
    let f = module.f() as i32;
    match module.n() {
        None => 4 * f + 2,
        Some(n) => 2 * n as i32 * f + 2,
    }
}

/// Computes and verifies the resolution of `module` and compares it with the
/// product of the one-factor tables (only `n = 3` has a known full table).
pub fn resolution_tables(module: &CyclicModule, dmax: Option<i32>, fp: Fp) -> Result<TableCheck> {
    let full = match module.n() {
        None => false,
        Some(3) => true,
        Some(n) => return Err(Error::Precondition(format!("no reference table for n = {n}"))),
    };
    let dmax = dmax.unwrap_or_else(|| default_window(module));
    let res = Resolution::compute(module, module.length_bound(), dmax, fp);
    let computed = res.betti();
    let expected = expected_table(module.t(), full);
    Ok(TableCheck {
        module: module.clone(),
        diff: table_diff(&expected, &computed),
        problems: res.verify(),
        certified: res.certified(),
        computed,
        expected,
    })
}

/// Shift of the top (`i = 2f`) term of the table for `gr/(t, h)`, if it has exactly one summand.
pub fn top_shift(table: &BettiTable) -> Option<i32> {
    match table.term(2 * table.f()) {
        [s] => Some(s.shift),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Fp {
        Fp::new(29)
    }

    #[test]
    fn monomials_of_degree() {
        let m = MDeg::of(&PbwMonomial::factor(0, 2, 1, 0));
        let monos: Vec<String> = m.monomials().iter().map(|x| x.to_string()).collect();
        assert_eq!(monos, ["y0^2*z0", "y0*h0"]);
    }

    #[test]
    fn one_factor_boxed() {
        let module = CyclicModule::new(vec![TType::Z], None).unwrap();
        let check = resolution_tables(&module, None, fp()).unwrap();
        assert!(check.matches(), "{:?} {:?}", check.diff, check.problems);
        assert!(check.certified);
        assert_eq!(check.computed.ranks(), [1, 2, 1]);
    }

    #[test]
    fn one_factor_full_yz() {
        let module = CyclicModule::new(vec![TType::YZ], Some(3)).unwrap();
        let check = resolution_tables(&module, None, fp()).unwrap();
        assert!(check.matches(), "{}\n{:?} {:?}", check.computed, check.diff, check.problems);
    }

    #[test]
    fn kunneth_shapes() {
        let t = expected_table(&[TType::Z, TType::YZ], false);
        assert_eq!(t.ranks(), [1, 4, 6, 4, 1]);
        assert_eq!(top_shift(&t), Some(7));
        assert!(t.is_exterior());
        assert!(t.is_contained_in(&expected_table(&[TType::Z, TType::YZ], true)));
    }
}

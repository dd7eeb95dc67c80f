//! `Ext_R(R/I, R)` for monomial ideals, from the dual Taylor complex.
//!
//! In multidegree `a` the dual Taylor complex has basis `{S : lcm(m_S) >= -a}`
//! and differential `e*_T -> sum_k (-1)^{pos(k, T+k)} e*_{T+k}`. Coordinates
//! with `a_k >= 0` all give the same complex, and any `a_k < -M_k` gives zero
//! (`M_k` the largest exponent of variable `k`), so the finite box
//! `prod [-M_k, 0]` determines everything.

use std::collections::BTreeMap;

use serde::Serialize;

use super::linalg::{rank, Fp};
use crate::error::{Error, Result};
use crate::monomial::{hilbert_function, Monomial, MonomialIdeal};
use crate::subset::binomial;

const MAX_GENS: usize = 20;

/// Ext dimensions of `R/I` for `R` in `nvars` variables.
#[derive(Clone, Debug, Serialize)]
pub struct ExtRanks {
    nvars: usize,
    imax: usize,
    dmax: u32,
    box_degree: u32,
    zero_module: bool,
    /// `(box point, dims of Ext^0..=Ext^imax)`, only points with some nonzero dim
    cells: Vec<(Vec<i32>, Vec<u64>)>,
}

impl ExtRanks {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn imax(&self) -> usize {
        self.imax
    }

    pub fn is_zero_module(&self) -> bool {
        self.zero_module
    }

    /// Whether the window and index range cover everything that can be nonzero.
    pub fn certified(&self) -> bool {
        self.dmax >= self.box_degree && self.imax >= self.nvars
    }

    pub fn is_nonzero(&self, i: usize) -> bool {
        self.cells.iter().any(|(_, dims)| dims.get(i).is_some_and(|&d| d > 0))
    }

    pub fn nonzero_indices(&self) -> Vec<usize> {
        (0..=self.imax).filter(|&i| self.is_nonzero(i)).collect()
    }

    pub fn grade(&self) -> Option<usize> {
        self.nonzero_indices().first().copied()
    }

    /// `dim Ext^i(R/I, R)_d` (degrees may be negative).
    pub fn dim(&self, i: usize, d: i64) -> u64 {
        self.cells
            .iter()
            .filter_map(|(c, dims)| dims.get(i).map(|&n| n * cell_count(c, d)))
            .sum()
    }

    /// Per-degree dims of `Ext^i` for `-dmax <= d <= dmax`, zeros omitted.
    pub fn degrees(&self, i: usize) -> BTreeMap<i64, u64> {
        let w = self.dmax as i64;
        (-w..=w).map(|d| (d, self.dim(i, d))).filter(|&(_, n)| n > 0).collect()
    }

    /// `(1-t)^nvars * sum_i (-1)^i H_{Ext^i}(t)` as a Laurent polynomial.
    fn euler_numerator(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        for (c, dims) in &self.cells {
            let zeros = c.iter().filter(|&&x| x == 0).count();
            let shift: i64 = c.iter().map(|&x| x as i64).sum();
            let chi: i64 = dims.iter().enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
            let e = (self.nvars - zeros) as u64;
            for k in 0..=e {
                let coef = binomial(e, k) as i64 * if k % 2 == 0 { 1 } else { -1 };
                *out.entry(shift + k as i64).or_insert(0) += chi * coef;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// Number of `a` in `Z^n` of total degree `d` that clamp to the box point `c`.
fn cell_count(c: &[i32], d: i64) -> u64 {
    let zeros = c.iter().filter(|&&x| x == 0).count() as u64;
    let rest = d - c.iter().map(|&x| x as i64).sum::<i64>();
    if rest < 0 {
        return 0;
    }
    if zeros == 0 {
        return u64::from(rest == 0);
    }
    binomial(rest as u64 + zeros - 1, zeros - 1)
}

/// Ext ranks of `R/I`, `I` generated by `gens` in `R = F[x_0..x_{n-1}]` (exponent vectors).
pub fn taylor_ext_ranks(gens: &[Vec<u32>], nvars: usize, imax: usize, dmax: u32, fp: Fp) -> Result<ExtRanks> {
    if gens.len() > MAX_GENS {
        return Err(Error::Precondition(format!("{} generators exceed the Taylor limit {MAX_GENS}", gens.len())));
    }
    if gens.iter().any(|g| g.len() != nvars) {
        return Err(Error::InvalidParams("exponent vector of wrong length".into()));
    }
    let zero_module = gens.iter().any(|g| g.iter().all(|&e| e == 0));
    let bounds: Vec<u32> = (0..nvars).map(|k| gens.iter().map(|g| g[k]).max().unwrap_or(0)).collect();
    let box_degree = bounds.iter().sum();
    let mut ranks = ExtRanks { nvars, imax, dmax, box_degree, zero_module, cells: Vec::new() };
    if zero_module {
        return Ok(ranks);
    }
    let g = gens.len();
    let lcms: Vec<Vec<u32>> = (0u32..1 << g)
        .map(|s| {
            (0..nvars).map(|k| (0..g).filter(|&i| s >> i & 1 == 1).map(|i| gens[i][k]).max().unwrap_or(0)).collect()
        })
        .collect();
    for c in box_points(&bounds) {
        let valid: Vec<u32> = (0u32..1 << g)
            .filter(|&s| lcms[s as usize].iter().zip(&c).all(|(&l, &ck)| l as i32 >= -ck))
            .collect();
        let dims = cochain_dims(&valid, imax, fp);
        if dims.iter().any(|&d| d > 0) {
            ranks.cells.push((c, dims));
        }
    }
    Ok(ranks)
}

/// Ext ranks of `R-bar/I` as an `R`-module (the `y_j z_j` are added to the generators).
pub fn taylor_ext_ranks_rbar(ideal: &MonomialIdeal, imax: usize, dmax: u32, fp: Fp) -> Result<ExtRanks> {
    let gens: Vec<Vec<u32>> = ideal.lifted_gens().iter().map(Monomial::exponents).collect();
    taylor_ext_ranks(&gens, 2 * ideal.f(), imax, dmax, fp)
}

fn box_points(bounds: &[u32]) -> Vec<Vec<i32>> {
    let mut out = vec![Vec::new()];
    for &m in bounds {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i32>| {
                (-(m as i32)..=0).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Cohomology dims of the dual Taylor complex restricted to `valid` (an up-closed family).
fn cochain_dims(valid: &[u32], imax: usize, fp: Fp) -> Vec<u64> {
    let by_size = |i: usize| -> Vec<u32> { valid.iter().copied().filter(|s| s.count_ones() as usize == i).collect() };
    let mut ranks = Vec::with_capacity(imax + 1);
    let mut level = by_size(0);
    let mut sizes = Vec::with_capacity(imax + 2);
    for i in 0..=imax {
        let next = by_size(i + 1);
        let index: BTreeMap<u32, usize> = next.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let rows: Vec<Vec<u64>> = level
            .iter()
            .map(|&t| {
                let mut row = vec![0; next.len()];
                for (&s, &col) in &index {
                    if s & t == t {
                        let k = (s ^ t).trailing_zeros();
                        let pos = (s & ((1 << k) - 1)).count_ones();
                        row[col] = if pos % 2 == 0 { 1 } else { fp.neg(1) };
                    }
                }
                row
            })
            .collect();
        ranks.push(rank(fp, next.len(), &rows) as u64);
        sizes.push(level.len() as u64);
        level = next;
    }
    (0..=imax).map(|i| sizes[i] - ranks[i] - if i > 0 { ranks[i - 1] } else { 0 }).collect()
}

/// Verdict of a Cohen-Macaulay test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CmVerdict {
    Cm { grade: usize },
    NotCm { nonzero: Vec<usize> },
    ZeroModule,
    Inconclusive { reason: String },
}

impl CmVerdict {
    pub fn is_cm(&self) -> bool {
        matches!(self, CmVerdict::Cm { .. })
    }
}

pub fn cm_verdict(ext: &ExtRanks) -> CmVerdict {
    if ext.is_zero_module() {
        return CmVerdict::ZeroModule;
    }
    if !ext.certified() {
        return CmVerdict::Inconclusive {
            reason: format!(
                "window {} / indices {} below box degree {} / {} variables",
                ext.dmax, ext.imax, ext.box_degree, ext.nvars
            ),
        };
    }
    let nonzero = ext.nonzero_indices();
    match nonzero.as_slice() {
        [g] => CmVerdict::Cm { grade: *g },
        _ => CmVerdict::NotCm { nonzero },
    }
}

/// Whether `R-bar/I` is Cohen-Macaulay, using a window large enough to certify.
pub fn is_cm(ideal: &MonomialIdeal, fp: Fp) -> Result<CmVerdict> {
    let f = ideal.f();
    let dmax = ideal.lifted_gens().iter().map(Monomial::degree).sum::<u32>();
    Ok(cm_verdict(&taylor_ext_ranks_rbar(ideal, 2 * f, dmax, fp)?))
}

/// Compares the Ext Euler characteristic with the Hilbert series of `R-bar/I`:
/// `(1-t)^n sum_i (-1)^i H_{Ext^i}(t) = K(1/t)` with `K(t) = (1-t)^n H(t)`.
pub fn euler_check(ideal: &MonomialIdeal, ext: &ExtRanks) -> bool {
    let n = ext.nvars as u64;
    let top = ext.box_degree.max(1) + n as u32;
    let h = hilbert_function(ideal, top);
    let mut k = BTreeMap::new();
    for d in 0..=ext.box_degree as usize {
        let v: i64 = (0..=n.min(d as u64))
            .map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * binomial(n, j) as i64 * h[d - j as usize] as i64
            })
            .sum();
        if v != 0 {
            k.insert(-(d as i64), v);
        }
    }
    ext.euler_numerator() == k
}

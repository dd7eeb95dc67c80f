//! Characteristic cycles of monomial subquotients of `R-bar`.
//!
//! The minimal primes of `R-bar` are `q = (v_0, ..., v_{f-1})` with
//! `v_j in {y_j, z_j}`; we index them by the bitmask of positions with
//! `v_j = z_j`. Localizing at `q` inverts the complementary variables and
//! turns `R-bar` into a field, so every monomial subquotient has length 0
//! or 1 there.

use std::fmt;
use std::ops::Add;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monomial::{ideal_a, ideal_a1, ideal_ijdt, Monomial, MonomialIdeal};
use crate::subset::{binomial, IndexSet};
use crate::weights::{LambdaTuple, StarInvolution, TType};

/// Multiplicity at each of the `2^f` minimal primes.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct CycleVector {
    f: usize,
    mult: Vec<u32>,
}

impl CycleVector {
    pub fn zero(f: usize) -> CycleVector {
        CycleVector { f, mult: vec![0; 1 << f] }
    }

    pub fn get(&self, q: IndexSet) -> u32 {
        self.mult[q.bits() as usize]
    }

    pub fn total(&self) -> u64 {
        self.mult.iter().map(|&m| m as u64).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = IndexSet> + '_ {
        IndexSet::all(self.f).filter(|q| self.get(*q) > 0)
    }
}

impl Add for &CycleVector {
    type Output = CycleVector;

    fn add(self, other: &CycleVector) -> CycleVector {
        assert_eq!(self.f, other.f);
        CycleVector { f: self.f, mult: self.mult.iter().zip(&other.mult).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for CycleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .map(|q| {
                let vars: Vec<String> =
                    (0..self.f).map(|j| format!("{}{j}", if q.contains(j) { 'z' } else { 'y' })).collect();
                format!("{}[{}]", self.get(q), vars.join(","))
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Image of a monomial in the residue field of `R-bar_q`: `None` if it
/// involves a generator of `q`, else `Some(unit)`.
fn localize(m: &Monomial, q: IndexSet) -> Option<()> {
    let killed = (0..m.f()).any(|j| if q.contains(j) { m.z_exp()[j] > 0 } else { m.y_exp()[j] > 0 });
    (!killed).then_some(())
}

/// Rank over the residue field of the span of the localized generators.
fn local_rank(gens: &[Monomial], q: IndexSet) -> u32 {
    gens.iter().any(|g| localize(g, q).is_some()) as u32
}

/// `length((I/I')_q)` from the localized presentation: the span of the
/// images of `I`'s generators modulo the span of `I'`'s.
fn local_length(ideal: &MonomialIdeal, sub: &MonomialIdeal, q: IndexSet) -> u32 {
    let both: Vec<Monomial> = ideal.gens().iter().chain(sub.gens()).cloned().collect();
    local_rank(&both, q) - local_rank(sub.gens(), q)
}

/// `Z(R-bar/I)`.
pub fn cycle_of(ideal: &MonomialIdeal) -> CycleVector {
    let f = ideal.f();
    let unit = MonomialIdeal::unit(f);
    CycleVector { f, mult: IndexSet::all(f).map(|q| local_length(&unit, ideal, q)).collect() }
}

/// `Z(I/I')` for nested `I' ⊂ I`.
pub fn cycle_of_subquotient(ideal: &MonomialIdeal, sub: &MonomialIdeal) -> Result<CycleVector> {
    if !ideal.contains_ideal(sub) {
        return Err(Error::NotNested);
    }
    let f = ideal.f();
    Ok(CycleVector { f, mult: IndexSet::all(f).map(|q| local_length(ideal, sub, q)).collect() })
}

/// `m(R-bar/I)`.
pub fn multiplicity(ideal: &MonomialIdeal) -> u64 {
    cycle_of(ideal).total()
}

/// `2^{#{j not in J : t_j = y_j z_j}} * sum_{i < d} C(|J|, i)` with `J = J1 ⊔ J2`.
pub fn total_mult_formula(j1: IndexSet, j2: IndexSet, d: i64, t: &[TType]) -> Result<u64> {
    if !j1.is_disjoint(j2) {
        return Err(Error::Overlap(j1.to_string(), j2.to_string()));
    }
    let j = j1.union(j2);
    if let Some(bad) = j.iter().find(|&k| t[k] != TType::YZ) {
        return Err(Error::Precondition(format!("t_{bad} = {} on J = {j}", t[bad])));
    }
    if d <= 0 {
        return Ok(0);
    }
    let free = (0..t.len()).filter(|&k| !j.contains(k) && t[k] == TType::YZ).count();
    let sum: u64 = (0..d as u64).map(|i| binomial(j.len() as u64, i)).sum();
    Ok((1u64 << free) * sum)
}

/// Compares [`total_mult_formula`] with the localization count on `R-bar/I(J1, J2, d, t)`.
pub fn total_mult_check(j1: IndexSet, j2: IndexSet, d: i64, t: &[TType]) -> Result<(u64, u64)> {
    let formula = total_mult_formula(j1, j2, d, t)?;
    let oracle = multiplicity(&ideal_ijdt(j1, j2, d, t)?);
    Ok((formula, oracle))
}

/// `m(R-bar/a(lambda)) = 2^{#{j : lambda_j in {x+1, p-2-x}}} * 2^{|J|}`.
pub fn mult_a_formula(lambda: &LambdaTuple, j_rho: IndexSet) -> u64 {
    1 << (lambda.middle_set().len() + lambda.outer_set(j_rho).len())
}

/// The three multiplicities in `m(a_1^{i0}(lambda)) + m(a_1^{f-1-i0}(lambda*)) = m(a(lambda))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultAdd {
    pub left: u64,
    pub right: u64,
    pub total: u64,
}

impl MultAdd {
    pub fn holds(&self) -> bool {
        self.left + self.right == self.total
    }
}

pub fn mult_add_check(lambda: &LambdaTuple, i0: i64, star: &StarInvolution, j_rho: IndexSet) -> Result<MultAdd> {
    let f = lambda.f() as i64;
    let dual = star.apply(lambda);
    Ok(MultAdd {
        left: multiplicity(&ideal_a1(lambda, i0, j_rho)?),
        right: multiplicity(&ideal_a1(&dual, f - 1 - i0, j_rho)?),
        total: multiplicity(&ideal_a(lambda, j_rho)?),
    })
}

/// `Z(R-bar/I') = Z(R-bar/I) + Z(I/I')`.
pub fn cycle_additivity_check(ideal: &MonomialIdeal, sub: &MonomialIdeal) -> Result<bool> {
    let middle = cycle_of_subquotient(ideal, sub)?;
    Ok(cycle_of(sub) == &cycle_of(ideal) + &middle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::ideal_t;

    #[test]
    fn basic_cycles() {
        assert_eq!(cycle_of(&MonomialIdeal::zero(2)).total(), 4);
        assert_eq!(cycle_of(&MonomialIdeal::unit(2)).total(), 0);
        let c = cycle_of(&ideal_t(&[TType::Z]));
        assert_eq!(c.total(), 1);
        assert_eq!(c.get(IndexSet::singleton(0)), 1);
        assert_eq!(c.to_string(), "1[z0]");
    }

    #[test]
    fn total_mult_example() {
        let full = IndexSet::full(2);
        let t = [TType::YZ, TType::YZ];
        assert_eq!(total_mult_check(IndexSet::EMPTY, full, 1, &t).unwrap(), (1, 1));
        assert_eq!(total_mult_formula(IndexSet::EMPTY, full, 0, &t).unwrap(), 0);
        assert!(total_mult_formula(IndexSet::EMPTY, full, 1, &[TType::Y, TType::YZ]).is_err());
    }

    #[test]
    fn subquotient_needs_nesting() {
        let a = ideal_t(&[TType::Z]);
        assert_eq!(cycle_of_subquotient(&a, &MonomialIdeal::unit(1)), Err(Error::NotNested));
        assert!(cycle_additivity_check(&a, &MonomialIdeal::zero(1)).unwrap());
    }
}

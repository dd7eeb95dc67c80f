//! `gr(Lambda)`: the tensor product of `f` copies of `F<y, z, h>` with
//! `yz - zy = h` and `h` central, over `F_p`.
//!
//! Normal form is `prod_j y_j^a z_j^b h_j^c`. The one nontrivial product rule is
//! `z^b y^a = sum_k (-1)^k k! C(a,k) C(b,k) y^{a-k} z^{b-k} h^k`.

use std::collections::BTreeMap;
use std::fmt;

use super::linalg::Fp;

/// Most tensor factors the engine supports.
pub const MAX_FACTORS: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct PbwMonomial {
    e: [[u8; 3]; MAX_FACTORS],
}

impl PbwMonomial {
    pub fn one() -> PbwMonomial {
        PbwMonomial::default()
    }

    /// `y_j^a z_j^b h_j^c`.
    pub fn factor(j: usize, a: u8, b: u8, c: u8) -> PbwMonomial {
        let mut m = PbwMonomial::one();
        m.e[j] = [a, b, c];
        m
    }

    pub fn y(j: usize) -> PbwMonomial {
        PbwMonomial::factor(j, 1, 0, 0)
    }

    pub fn z(j: usize) -> PbwMonomial {
        PbwMonomial::factor(j, 0, 1, 0)
    }

    pub fn h(j: usize) -> PbwMonomial {
        PbwMonomial::factor(j, 0, 0, 1)
    }

    pub fn exps(&self, j: usize) -> [u8; 3] {
        self.e[j]
    }

    pub fn with_exps(mut self, j: usize, e: [u8; 3]) -> PbwMonomial {
        self.e[j] = e;
        self
    }

    /// `(degree, weight)` of factor `j`: `y, z` have degree 1, `h` degree 2;
    /// weights are `+1, -1, 0`.
    pub fn bidegree(&self, j: usize) -> (i32, i32) {
        let [a, b, c] = self.e[j].map(i32::from);
        (a + b + 2 * c, a - b)
    }

    pub fn degree(&self) -> i32 {
        (0..MAX_FACTORS).map(|j| self.bidegree(j).0).sum()
    }

    /// Product of two monomials in one factor, as `(coefficient, exponents)`.
    fn factor_product(p: Fp, [a, b, c]: [u8; 3], [a2, b2, c2]: [u8; 3]) -> Vec<(u64, [u8; 3])> {
        (0..=b.min(a2))
            .map(|k| {
                let coef = (0..k).fold(1u64, |acc, i| p.mul(acc, (a2 - i) as u64 % p.modulus()))
                    * binom_mod(p, b, k)
                    % p.modulus();
                let coef = if k % 2 == 1 { p.neg(coef) } else { coef };
                (coef, [a + a2 - k, b + b2 - k, c + c2 + k])
            })
            .filter(|(coef, _)| *coef != 0)
            .collect()
    }
}

/// `C(n, k) mod p`.
fn binom_mod(p: Fp, n: u8, k: u8) -> u64 {
    let mut v: u128 = 1;
    for i in 0..k as u128 {
        v = v * (n as u128 - i) / (i + 1);
    }
    (v % p.modulus() as u128) as u64
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (j, e) in self.e.iter().enumerate() {
            for (letter, &k) in ["y", "z", "h"].iter().zip(e) {
                match k {
                    0 => {}
                    1 => parts.push(format!("{letter}{j}")),
                    _ => parts.push(format!("{letter}{j}^{k}")),
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

/// An element of `gr(Lambda)` over `F_p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PbwElement {
    fp: Fp,
    terms: BTreeMap<PbwMonomial, u64>,
}

impl PbwElement {
    pub fn zero(fp: Fp) -> PbwElement {
        PbwElement { fp, terms: BTreeMap::new() }
    }

    pub fn monomial(fp: Fp, m: PbwMonomial) -> PbwElement {
        PbwElement::zero(fp).plus_term(m, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &u64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &PbwMonomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn plus_term(mut self, m: PbwMonomial, c: u64) -> PbwElement {
        self.add_term(m, c);
        self
    }

    fn add_term(&mut self, m: PbwMonomial, c: u64) {
        let fp = self.fp;
        let entry = self.terms.entry(m).or_insert(0);
        *entry = fp.add(*entry, c % fp.modulus());
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> PbwElement {
        let mut out = PbwElement::zero(self.fp);
        for (m, v) in &self.terms {
            out.add_term(*m, self.fp.mul(*v, c));
        }
        out
    }

    pub fn neg(&self) -> PbwElement {
        self.scale(self.fp.neg(1))
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        self.add(&other.neg())
    }
}

/// Normal-form product of two monomials.
pub fn monomial_product(fp: Fp, u: &PbwMonomial, v: &PbwMonomial) -> Vec<(u64, PbwMonomial)> {
    let mut acc = vec![(1u64, PbwMonomial::one())];
    for j in 0..MAX_FACTORS {
        let local = PbwMonomial::factor_product(fp, u.e[j], v.e[j]);
        acc = acc
            .iter()
            .flat_map(|&(c, m)| local.iter().map(move |&(c2, e)| (fp.mul(c, c2), m.with_exps(j, e))))
            .collect();
    }
    acc
}

pub fn pbw_multiply(u: &PbwElement, v: &PbwElement) -> PbwElement {
    let fp = u.fp;
    let mut out = PbwElement::zero(fp);
    for (mu, cu) in &u.terms {
        for (mv, cv) in &v.terms {
            for (c, m) in monomial_product(fp, mu, mv) {
                out.add_term(m, fp.mul(c, fp.mul(*cu, *cv)));
            }
        }
    }
    out
}

/// A generator letter: `(factor, 0 = y | 1 = z | 2 = h)`.
pub type Letter = (usize, u8);

/// Normal form of a word by repeated rewriting, independent of the closed formula.
pub fn normalize_word(fp: Fp, word: &[Letter]) -> PbwElement {
    let Some(k) = word.windows(2).position(|w| w[0] > w[1]) else {
        let mut m = PbwMonomial::one();
        for &(j, l) in word {
            m.e[j][l as usize] += 1;
        }
        return PbwElement::monomial(fp, m);
    };
    let (left, right) = (word[k], word[k + 1]);
    let mut swapped = word.to_vec();
    swapped.swap(k, k + 1);
    let swapped = normalize_word(fp, &swapped);
    if left.0 == right.0 && left.1 == 1 && right.1 == 0 {
        // z y = y z - h
        let mut shorter = word[..k].to_vec();
        shorter.push((left.0, 2));
        shorter.extend_from_slice(&word[k + 2..]);
        swapped.sub(&normalize_word(fp, &shorter))
    } else {
        swapped
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> Fp {
        Fp::new(29)
    }

    fn mono(m: PbwMonomial) -> PbwElement {
        PbwElement::monomial(fp(), m)
    }

    #[test]
    fn commutator() {
        let zy = pbw_multiply(&mono(PbwMonomial::z(0)), &mono(PbwMonomial::y(0)));
        let expected = mono(PbwMonomial::factor(0, 1, 1, 0)).sub(&mono(PbwMonomial::h(0)));
        assert_eq!(zy, expected);
        let hy = pbw_multiply(&mono(PbwMonomial::h(0)), &mono(PbwMonomial::y(0)));
        assert_eq!(hy, pbw_multiply(&mono(PbwMonomial::y(0)), &mono(PbwMonomial::h(0))));
    }

    #[test]
    fn formula_matches_rewriting() {
        let word = [(0, 1), (0, 1), (1, 1), (0, 0), (1, 0), (0, 0), (0, 2)];
        let mut product = PbwElement::monomial(fp(), PbwMonomial::one());
        for &(j, l) in &word {
            let mut e = [0; 3];
            e[l as usize] = 1;
            product = pbw_multiply(&product, &mono(PbwMonomial::factor(j, e[0], e[1], e[2])));
        }
        assert_eq!(product, normalize_word(fp(), &word));
    }

    #[test]
    fn z_squared_y() {
        let p = pbw_multiply(&mono(PbwMonomial::factor(0, 0, 2, 0)), &mono(PbwMonomial::y(0)));
        assert_eq!(p.coefficient(&PbwMonomial::factor(0, 1, 2, 0)), 1);
        assert_eq!(p.coefficient(&PbwMonomial::factor(0, 0, 1, 1)), 27);
    }
}

//! Sparse Laurent polynomials keyed by fixed-size exponent vectors.
//!
//! One term-map engine backs every polynomial ring in this crate: bivariate
//! integer polynomials in (u, v), Laurent polynomials in (x12, x13, x23)
//! over the ground field, and the five-generator spectral ring used by the
//! symbolic compatibility check. Exponent arithmetic is overflow-checked.

use std::collections::BTreeMap;
use std::fmt::Debug;

/// Coefficient ring required by the term-map engine.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coefficient for num::BigInt {
    fn zero() -> Self {
        num::BigInt::from(0)
    }
    fn one() -> Self {
        num::BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

fn add_exps<const N: usize>(a: &[i32; N], b: &[i32; N]) -> [i32; N] {
    let mut out = [0i32; N];
    for i in 0..N {
        out[i] = a[i].checked_add(b[i]).expect("exponent overflow");
    }
    out
}

/// Sparse polynomial with `N` Laurent exponents and coefficients in `C`.
///
/// Invariant: no stored coefficient is zero, so structural equality of the
/// term maps is equality of polynomials (given canonical coefficients).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TermPoly<const N: usize, C: Coefficient> {
    terms: BTreeMap<[i32; N], C>,
}

impl<const N: usize, C: Coefficient> Default for TermPoly<N, C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<const N: usize, C: Coefficient> TermPoly<N, C> {
    pub fn zero() -> Self {
        TermPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial([0; N], C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(exps: [i32; N], coeff: C) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        TermPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = ([i32; N], C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&[0; N])
                .map(|c| *c == C::one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i32; N], &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32; N]) -> Option<&C> {
        self.terms.get(exps)
    }

    /// Accumulate a single term, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: [i32; N], coeff: C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(*e, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TermPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                out.add_term(add_exps(ea, eb), ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (e, cc) in self.terms.iter() {
            out.add_term(*e, cc.mul(c));
        }
        out
    }

    pub fn mul_monomial(&self, exps: &[i32; N], coeff: &C) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (e, c) in self.terms.iter() {
            out.add_term(add_exps(e, exps), c.mul(coeff));
        }
        out
    }

    /// Rebuild the polynomial with exponent vectors transformed by `f`,
    /// re-accumulating any collisions.
    pub fn map_exponents(&self, f: impl Fn(&[i32; N]) -> [i32; N]) -> Self {
        let mut out = Self::zero();
        for (e, c) in self.terms.iter() {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Componentwise minimum of all exponent vectors. Zero vector for 0.
    pub fn min_exponents(&self) -> [i32; N] {
        let mut out = [i32::MAX; N];
        if self.terms.is_empty() {
            return [0; N];
        }
        for e in self.terms.keys() {
            for i in 0..N {
                out[i] = out[i].min(e[i]);
            }
        }
        out
    }

    /// Componentwise maximum of all exponent vectors. Zero vector for 0.
    pub fn max_exponents(&self) -> [i32; N] {
        let mut out = [i32::MIN; N];
        if self.terms.is_empty() {
            return [0; N];
        }
        for e in self.terms.keys() {
            for i in 0..N {
                out[i] = out[i].max(e[i]);
            }
        }
        out
    }

    /// Largest exponent vector in the lex order of the term map.
    pub fn leading(&self) -> Option<(&[i32; N], &C)> {
        self.terms.iter().next_back()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;

    type P2 = TermPoly<2, BigInt>;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn add_cancels_to_zero() {
        let p = P2::monomial([1, 0], bi(3));
        let q = P2::monomial([1, 0], bi(-3));
        assert!(p.add(&q).is_zero());
    }

    #[test]
    fn mul_matches_hand_expansion() {
        // (u + v)(u - v) = u^2 - v^2
        let p = P2::from_terms([([1, 0], bi(1)), ([0, 1], bi(1))]);
        let q = P2::from_terms([([1, 0], bi(1)), ([0, 1], bi(-1))]);
        let expect = P2::from_terms([([2, 0], bi(1)), ([0, 2], bi(-1))]);
        assert_eq!(p.mul(&q), expect);
    }

    #[test]
    fn map_exponents_reaccumulates() {
        // u + v collapse under (a, b) -> (a + b, 0)
        let p = P2::from_terms([([1, 0], bi(1)), ([0, 1], bi(1))]);
        let m = p.map_exponents(|e| [e[0] + e[1], 0]);
        assert_eq!(m, P2::monomial([1, 0], bi(2)));
    }

    #[test]
    fn leading_is_lex_max() {
        let p = P2::from_terms([([1, 5], bi(1)), ([2, 0], bi(7))]);
        let (e, c) = p.leading().unwrap();
        assert_eq!(*e, [2, 0]);
        assert_eq!(*c, bi(7));
    }
}

//! Laurent polynomials and rational functions in x12, x13, x23 over k.
//!
//! Variable order is (x12, x13, x23). [`XRational`] keeps a unique
//! representative: numerator and denominator are genuine polynomials with no
//! common factor (monomial or polynomial), jointly monomial-minimal, and the
//! denominator is monic in the lex leading term. Operator equality in the
//! difference-operator algebra is structural equality of these forms.

use std::collections::BTreeMap;

use num::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kfield::KScalar;
use crate::poly::TermPoly;

/// Laurent polynomial in (x12, x13, x23) with KScalar coefficients.
pub type XPolynomial = TermPoly<3, KScalar>;

/// Polynomial over the extended spectral generator set (u, v, w1, w2, w3)
/// with w_i standing for q^{j_i/4}; used by the all-j compatibility check.
pub type SpectralPoly = TermPoly<5, BigInt>;

/// Shift triple (a12, a13, a23) for the substitution x_ab -> q^{a_ab/2} x_ab.
pub type Shift = [i32; 3];

pub fn x_monomial(e12: i32, e13: i32, e23: i32, coeff: KScalar) -> XPolynomial {
    XPolynomial::monomial([e12, e13, e23], coeff)
}

/// x_ab + x_ab^{-1} for the variable with the given index.
pub fn p_generator(var: usize) -> XPolynomial {
    let mut e = [0i32; 3];
    e[var] = 1;
    let mut p = XPolynomial::monomial(e, KScalar::one());
    e[var] = -1;
    p.add_term(e, KScalar::one());
    p
}

/// Substitute x_ab -> q^{a_ab/2} x_ab termwise: the monomial picks up the
/// factor q^{(a . e)/2} = u^{2 (a . e)}.
pub fn substitute_shift(p: &XPolynomial, shift: &Shift) -> XPolynomial {
    if shift == &[0, 0, 0] {
        return p.clone();
    }
    let mut out = XPolynomial::zero();
    for (e, c) in p.iter() {
        let dot = shift[0] as i64 * e[0] as i64
            + shift[1] as i64 * e[1] as i64
            + shift[2] as i64 * e[2] as i64;
        out.add_term(*e, c.mul(&KScalar::monomial(2 * dot, 0)));
    }
    out
}

/// True iff p is invariant under all eight Weyl inversions x_ab -> x_ab^{±1};
/// invariance under the three single inversions is equivalent.
pub fn weyl_symmetric(p: &XPolynomial) -> bool {
    for var in 0..3 {
        let flipped = p.map_exponents(|e| {
            let mut f = *e;
            f[var] = -f[var];
            f
        });
        if &flipped != p {
            return false;
        }
    }
    true
}

/// A permutation of {1, 2, 3}; `map[i-1]` is the image of i.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Perm(pub [usize; 3]);

impl Perm {
    pub const IDENTITY: Perm = Perm([1, 2, 3]);

    pub fn all() -> [Perm; 6] {
        [
            Perm([1, 2, 3]),
            Perm([1, 3, 2]),
            Perm([2, 1, 3]),
            Perm([2, 3, 1]),
            Perm([3, 1, 2]),
            Perm([3, 2, 1]),
        ]
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// self ∘ other (other first).
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm([
            self.apply(other.apply(1)),
            self.apply(other.apply(2)),
            self.apply(other.apply(3)),
        ])
    }

    /// Index of the variable x_{σa, σb} given the pair index of x_{ab},
    /// with the convention x_ba = x_ab.
    pub fn var_image(&self, var: usize) -> usize {
        let (a, b) = PAIRS[var];
        pair_index(self.apply(a), self.apply(b))
    }
}

const PAIRS: [(usize, usize); 3] = [(1, 2), (1, 3), (2, 3)];

fn pair_index(a: usize, b: usize) -> usize {
    match if a < b { (a, b) } else { (b, a) } {
        (1, 2) => 0,
        (1, 3) => 1,
        (2, 3) => 2,
        _ => unreachable!("invalid variable pair"),
    }
}

/// Relabel x_ab -> x_{σa σb}.
pub fn permute_variables(p: &XPolynomial, sigma: &Perm) -> XPolynomial {
    p.map_exponents(|e| {
        let mut f = [0i32; 3];
        for var in 0..3 {
            f[sigma.var_image(var)] = e[var];
        }
        f
    })
}

// ---------------------------------------------------------------------------
// gcd machinery over k[x12, x13, x23]
// ---------------------------------------------------------------------------

/// Exact division of polynomials with non-negative exponents; None when not
/// divisible. Lex order on exponent triples.
pub fn xp_divexact(a: &XPolynomial, b: &XPolynomial) -> Option<XPolynomial> {
    assert!(!b.is_zero(), "division by zero polynomial");
    if a.is_zero() {
        return Some(XPolynomial::zero());
    }
    let (lead_e, lead_c) = b.leading().unwrap();
    let lead_e = *lead_e;
    let lead_inv = lead_c.inv().expect("leading coefficient nonzero");
    let mut rem = a.clone();
    let mut q = XPolynomial::zero();
    while let Some((re, rc)) = rem.leading() {
        let qe = [re[0] - lead_e[0], re[1] - lead_e[1], re[2] - lead_e[2]];
        if qe.iter().any(|&x| x < 0) {
            return None;
        }
        let qc = rc.mul(&lead_inv);
        q.add_term(qe, qc.clone());
        rem = rem.sub(&b.mul_monomial(&qe, &qc));
    }
    Some(q)
}

// Univariate layer: operator denominators are products of single-variable
// polynomials, so their gcds split into per-variable Euclid runs.

type UniPoly = Vec<KScalar>; // ascending coefficients, trimmed

fn uni_trim(a: &mut UniPoly) {
    while a.last().map(|c| c.is_zero()).unwrap_or(false) {
        a.pop();
    }
}

fn uni_rem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let lb_inv = b.last().expect("nonzero divisor").inv().unwrap();
    let mut r = a.clone();
    uni_trim(&mut r);
    while r.len() >= b.len() {
        let c = r.last().unwrap().mul(&lb_inv);
        let shift = r.len() - b.len();
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub(&c.mul(bj));
        }
        uni_trim(&mut r);
    }
    r
}

/// Monic gcd in k[x].
fn uni_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut x = a.clone();
    let mut y = b.clone();
    uni_trim(&mut x);
    uni_trim(&mut y);
    while !y.is_empty() {
        if y.len() == 1 {
            return vec![KScalar::one()];
        }
        let r = uni_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lc) = x.last() {
        let inv = lc.inv().unwrap();
        x = x.iter().map(|c| c.mul(&inv)).collect();
    }
    x
}

fn uni_to_x(u: &UniPoly, var: usize) -> XPolynomial {
    let mut p = XPolynomial::zero();
    for (d, c) in u.iter().enumerate() {
        let mut e = [0i32; 3];
        e[var] = d as i32;
        p.add_term(e, c.clone());
    }
    p
}

/// Product of the x_var-only irreducible factors of p (monic): gcd in
/// k[x_var] of the coefficient slices grouped by the other variables.
fn univariate_content(p: &XPolynomial, var: usize) -> UniPoly {
    let mut groups: BTreeMap<[i32; 2], UniPoly> = BTreeMap::new();
    for (e, c) in p.iter() {
        let others: [i32; 2] = match var {
            0 => [e[1], e[2]],
            1 => [e[0], e[2]],
            _ => [e[0], e[1]],
        };
        let slice = groups.entry(others).or_default();
        let d = e[var] as usize;
        if slice.len() <= d {
            slice.resize(d + 1, KScalar::zero());
        }
        slice[d] = c.clone();
    }
    let mut g: UniPoly = vec![];
    for slice in groups.values() {
        g = if g.is_empty() {
            let mut s = slice.clone();
            uni_trim(&mut s);
            let inv = s.last().expect("nonzero slice").inv().unwrap();
            s.iter().map(|c| c.mul(&inv)).collect()
        } else {
            uni_gcd(&g, slice)
        };
        if g.len() == 1 {
            return vec![KScalar::one()];
        }
    }
    g
}

/// Split p (non-negative exponents, no monomial factor) into per-variable
/// univariate factors when p is such a product; None otherwise.
fn split_univariate(p: &XPolynomial) -> Option<[UniPoly; 3]> {
    let mut rem = p.clone();
    let mut parts: [UniPoly; 3] = [vec![], vec![], vec![]];
    for (var, part) in parts.iter_mut().enumerate() {
        let c = univariate_content(&rem, var);
        if c.len() > 1 {
            rem = xp_divexact(&rem, &uni_to_x(&c, var)).expect("content divides");
        }
        *part = c;
    }
    if rem.num_terms() == 1 {
        Some(parts)
    } else {
        None
    }
}

fn used_vars(p: &XPolynomial) -> [bool; 3] {
    let mut used = [false; 3];
    for (e, _) in p.iter() {
        for i in 0..3 {
            used[i] |= e[i] != 0;
        }
    }
    used
}

/// Split p (non-negative exponents) as a dense vector in variable `var` with
/// coefficients free of `var`.
fn split_in_var(p: &XPolynomial, var: usize) -> Vec<XPolynomial> {
    let deg = p.max_exponents()[var] as usize;
    let mut out = vec![XPolynomial::zero(); deg + 1];
    for (e, c) in p.iter() {
        let mut f = *e;
        let d = f[var] as usize;
        f[var] = 0;
        out[d].add_term(f, c.clone());
    }
    out
}

fn join_in_var(coeffs: &[XPolynomial], var: usize) -> XPolynomial {
    let mut out = XPolynomial::zero();
    for (d, c) in coeffs.iter().enumerate() {
        let mut shift = [0i32; 3];
        shift[var] = d as i32;
        out = out.add(&c.mul_monomial(&shift, &KScalar::one()));
    }
    out
}

/// Content of p with respect to `var`: gcd of its coefficient polynomials.
fn content_in_var(p: &XPolynomial, var: usize) -> XPolynomial {
    let mut g = XPolynomial::zero();
    for c in split_in_var(p, var) {
        if c.is_zero() {
            continue;
        }
        g = xp_gcd(&g, &c);
        if g.num_terms() == 1 && g.leading().unwrap().0 == &[0, 0, 0] {
            return XPolynomial::one();
        }
    }
    normalize_monic(&g)
}

/// Make the lex-leading coefficient 1 (inputs nonzero).
fn normalize_monic(p: &XPolynomial) -> XPolynomial {
    let (_, lc) = p.leading().expect("nonzero polynomial");
    if lc.is_one() {
        return p.clone();
    }
    p.scale(&lc.inv().expect("leading coefficient nonzero"))
}

/// GCD in k[x12, x13, x23] for polynomials with non-negative exponents,
/// normalized monic in the lex leading coefficient. Primitive PRS with
/// recursive contents; inputs here stay small (operator coefficients).
pub fn xp_gcd(a: &XPolynomial, b: &XPolynomial) -> XPolynomial {
    if a.is_zero() {
        return if b.is_zero() {
            XPolynomial::zero()
        } else {
            normalize_monic(b)
        };
    }
    if b.is_zero() {
        return normalize_monic(a);
    }

    // common monomial factor, then work with monomial-free parts
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let shared = [ma[0].min(mb[0]), ma[1].min(mb[1]), ma[2].min(mb[2])];
    let a0 = a.map_exponents(|e| [e[0] - ma[0], e[1] - ma[1], e[2] - ma[2]]);
    let b0 = b.map_exponents(|e| [e[0] - mb[0], e[1] - mb[1], e[2] - mb[2]]);
    let attach = |g: XPolynomial| g.mul_monomial(&shared, &KScalar::one());

    if a0.num_terms() == 1 || b0.num_terms() == 1 {
        // a constant (units in k) or a bare monomial: nothing beyond the
        // shared monomial can divide both
        return attach(XPolynomial::one());
    }
    if a0 == b0 {
        return attach(normalize_monic(&a0));
    }

    // fast path: one side is a product of single-variable polynomials, so
    // the gcd splits into per-variable univariate gcds
    for (first, second) in [(&a0, &b0), (&b0, &a0)] {
        let Some(parts) = split_univariate(second) else {
            continue;
        };
        let mut g = XPolynomial::one();
        for (var, part) in parts.iter().enumerate() {
            if part.len() <= 1 {
                continue;
            }
            let ca = univariate_content(first, var);
            let gv = uni_gcd(&ca, part);
            if gv.len() > 1 {
                g = g.mul(&uni_to_x(&gv, var));
            }
        }
        return attach(normalize_monic(&g));
    }

    let ua = used_vars(&a0);
    let ub = used_vars(&b0);
    // a variable present in only one operand cannot appear in the gcd
    for var in 0..3 {
        if ua[var] && !ub[var] {
            return attach(xp_gcd(&content_in_var(&a0, var), &b0));
        }
        if ub[var] && !ua[var] {
            return attach(xp_gcd(&a0, &content_in_var(&b0, var)));
        }
    }
    let var = (0..3).rev().find(|&v| ua[v]).expect("non-constant inputs");

    let cont_a = content_in_var(&a0, var);
    let cont_b = content_in_var(&b0, var);
    let cont_g = xp_gcd(&cont_a, &cont_b);
    let pa = xp_divexact(&a0, &cont_a).expect("content divides");
    let pb = xp_divexact(&b0, &cont_b).expect("content divides");

    // primitive pseudo-remainder sequence in `var`
    let mut f = split_in_var(&pa, var);
    let mut g = split_in_var(&pb, var);
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        if g.iter().all(|c| c.is_zero()) {
            let joined = join_in_var(&f, var);
            let prim = xp_divexact(&joined, &content_in_var(&joined, var)).unwrap();
            return attach(normalize_monic(&prim).mul(&cont_g));
        }
        while g.last().map(|c| c.is_zero()).unwrap_or(false) {
            g.pop();
        }
        if g.len() == 1 {
            // nonzero constant in `var`: primitive parts are coprime in `var`
            return attach(cont_g);
        }
        // pseudo-remainder of f by g
        let lg = g.last().unwrap().clone();
        let mut r = f.clone();
        while r.len() >= g.len() {
            while r.last().map(|c| c.is_zero()).unwrap_or(false) {
                r.pop();
            }
            if r.len() < g.len() {
                break;
            }
            let lr = r.last().unwrap().clone();
            let shift = r.len() - g.len();
            for (i, c) in r.iter_mut().enumerate() {
                *c = c.mul(&lg);
                if i >= shift {
                    *c = c.sub(&lr.mul(&g[i - shift]));
                }
            }
            r.pop();
        }
        // primitive reduction keeps coefficient growth in check
        let joined = join_in_var(&r, var);
        let reduced = if joined.is_zero() {
            vec![]
        } else {
            let c = content_in_var(&joined, var);
            split_in_var(&xp_divexact(&joined, &c).unwrap(), var)
        };
        f = g;
        g = reduced;
    }
}

// ---------------------------------------------------------------------------
// canonical rational functions
// ---------------------------------------------------------------------------

/// Ratio of Laurent polynomials in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XRational {
    num: XPolynomial,
    den: XPolynomial,
}

impl XRational {
    pub fn new(num: XPolynomial, den: XPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce_full(num, den))
    }

    pub fn from_poly(p: XPolynomial) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        Self::reduce_units(p, XPolynomial::one())
    }

    pub fn zero() -> Self {
        XRational {
            num: XPolynomial::zero(),
            den: XPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        XRational {
            num: XPolynomial::one(),
            den: XPolynomial::one(),
        }
    }

    pub fn num(&self) -> &XPolynomial {
        &self.num
    }

    pub fn den(&self) -> &XPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Some(p) when the value is a Laurent polynomial, i.e. the canonical
    /// denominator is a monomial (a unit of the Laurent ring).
    pub fn as_polynomial(&self) -> Option<XPolynomial> {
        if self.den.num_terms() != 1 {
            return None;
        }
        let (e, c) = self.den.leading().unwrap();
        let inv = c.inv().expect("nonzero denominator");
        Some(self.num.mul_monomial(&[-e[0], -e[1], -e[2]], &inv))
    }

    /// Joint monomial clearing + monic denominator; assumes num/den already
    /// have no common polynomial factor (e.g. after an automorphism of the
    /// ring, which preserves coprimality).
    fn reduce_units(num: XPolynomial, den: XPolynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let s = [
            -mn[0].min(md[0]),
            -mn[1].min(md[1]),
            -mn[2].min(md[2]),
        ];
        let num = num.map_exponents(|e| [e[0] + s[0], e[1] + s[1], e[2] + s[2]]);
        let den = den.map_exponents(|e| [e[0] + s[0], e[1] + s[1], e[2] + s[2]]);
        let lc = den.leading().unwrap().1.inv().expect("nonzero denominator");
        XRational {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    fn reduce_full(num: XPolynomial, den: XPolynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let tmp = Self::reduce_units(num, den);
        let (num, den) = (tmp.num, tmp.den);
        if den.num_terms() == 1 {
            return XRational { num, den };
        }
        let g = xp_gcd(&num, &den);
        if g.num_terms() == 1 {
            return XRational { num, den };
        }
        let num = xp_divexact(&num, &g).expect("gcd divides numerator");
        let den = xp_divexact(&den, &g).expect("gcd divides denominator");
        Self::reduce_units(num, den)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::reduce_full(self.num.add(&rhs.num), self.den.clone());
        }
        let g = xp_gcd(&self.den, &rhs.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                xp_divexact(&self.den, &g).unwrap(),
                xp_divexact(&rhs.den, &g).unwrap(),
            )
        };
        let num = self.num.mul(&db).add(&rhs.num.mul(&da));
        let den = da.mul(&rhs.den);
        Self::reduce_full(num, den)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        XRational {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // cross-cancel minimizes the gcd work on the product
        let g1 = xp_gcd(&self.num, &rhs.den);
        let g2 = xp_gcd(&rhs.num, &self.den);
        let trivial = |g: &XPolynomial| g.num_terms() == 1;
        let (na, db) = if trivial(&g1) {
            (self.num.clone(), rhs.den.clone())
        } else {
            (
                xp_divexact(&self.num, &g1).unwrap(),
                xp_divexact(&rhs.den, &g1).unwrap(),
            )
        };
        let (nb, da) = if trivial(&g2) {
            (rhs.num.clone(), self.den.clone())
        } else {
            (
                xp_divexact(&rhs.num, &g2).unwrap(),
                xp_divexact(&self.den, &g2).unwrap(),
            )
        };
        Self::reduce_units(na.mul(&nb), da.mul(&db))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce_units(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn scale(&self, c: &KScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        XRational {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn substitute_shift(&self, shift: &Shift) -> Self {
        Self::reduce_units(
            substitute_shift(&self.num, shift),
            substitute_shift(&self.den, shift),
        )
    }

    pub fn permute_variables(&self, sigma: &Perm) -> Self {
        Self::reduce_units(
            permute_variables(&self.num, sigma),
            permute_variables(&self.den, sigma),
        )
    }
}

// JSON shape: {"terms": [[e12, e13, e23, KScalar-json], ...]} sorted
// lexicographically by exponents (the term map already iterates that way).
impl Serialize for XPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<(i32, i32, i32, &KScalar)> = self
            .iter()
            .map(|(e, c)| (e[0], e[1], e[2], c))
            .collect();
        let mut st = s.serialize_struct("XPolynomial", 1)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for XPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            terms: Vec<(i32, i32, i32, KScalar)>,
        }
        let raw = Raw::deserialize(d)?;
        let mut p = XPolynomial::zero();
        for (e12, e13, e23, c) in raw.terms {
            if p.coeff(&[e12, e13, e23]).is_some() {
                return Err(D::Error::custom("duplicate exponent triple"));
            }
            p.add_term([e12, e13, e23], c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(var: usize, e: i32) -> XPolynomial {
        let mut exps = [0i32; 3];
        exps[var] = e;
        XPolynomial::monomial(exps, KScalar::one())
    }

    #[test]
    fn laurent_inverse_multiplies_to_one() {
        assert!(x(0, 1).mul(&x(0, -1)).is_one());
    }

    #[test]
    fn adding_zero_is_identity() {
        let p = p_generator(0);
        assert_eq!(p.add(&XPolynomial::zero()), p);
    }

    #[test]
    fn rational_division_clears_cleanly() {
        // (x13^2 - x13^{-2})/(x13 - x13^{-1}) = x13 + x13^{-1}
        let num = x(1, 2).sub(&x(1, -2));
        let den = x(1, 1).sub(&x(1, -1));
        let r = XRational::new(num.clone(), den.clone()).unwrap();
        assert_eq!(r.as_polynomial(), Some(p_generator(1)));
        assert_eq!(r, XRational::from_poly(p_generator(1)));

        // independent route: clear monomials and divide polynomials directly
        let num_poly = num.mul_monomial(&[0, 2, 0], &KScalar::one());
        let den_poly = den.mul_monomial(&[0, 1, 0], &KScalar::one());
        let q = xp_divexact(&num_poly, &den_poly).unwrap();
        assert_eq!(
            q,
            p_generator(1).mul_monomial(&[0, 1, 0], &KScalar::one())
        );
    }

    #[test]
    fn weyl_symmetry_check() {
        assert!(weyl_symmetric(&p_generator(0)));
        assert!(!weyl_symmetric(&x(0, 1)));
        assert!(weyl_symmetric(&XPolynomial::one()));
    }

    #[test]
    fn shift_acts_on_the_named_variable_only() {
        let shifted = substitute_shift(&x(0, 1), &[1, 0, 0]);
        assert_eq!(shifted, x(0, 1).scale(&KScalar::q_half()));
        assert_eq!(substitute_shift(&x(2, 1), &[1, 0, 0]), x(2, 1));

        // (x12 + x12^{-1}) under shift -1: q^{-1/2} x12 + q^{1/2} x12^{-1}
        let p = substitute_shift(&p_generator(0), &[-1, 0, 0]);
        let mut expect = x(0, 1).scale(&KScalar::monomial(-2, 0));
        expect = expect.add(&x(0, -1).scale(&KScalar::q_half()));
        assert_eq!(p, expect);
    }

    #[test]
    fn shifts_compose_additively() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let p = random_poly(&mut rng);
            let a = [rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
            let b = [rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
            let ab = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
            assert_eq!(
                substitute_shift(&substitute_shift(&p, &a), &b),
                substitute_shift(&p, &ab)
            );
        }
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(permute_variables(&x(0, 1), &Perm::IDENTITY), x(0, 1));
        // swap 1 <-> 3 sends x12 to x32 = x23
        assert_eq!(permute_variables(&x(0, 1), &Perm([3, 2, 1])), x(2, 1));
        // cyclic 1->2->3->1 sends x12*x13 to x23*x21 = x23*x12
        let p = x(0, 1).mul(&x(1, 1));
        let expect = x(2, 1).mul(&x(0, 1));
        assert_eq!(permute_variables(&p, &Perm([2, 3, 1])), expect);
    }

    fn random_poly(rng: &mut ChaCha8Rng) -> XPolynomial {
        let mut p = XPolynomial::zero();
        for _ in 0..rng.gen_range(1..5) {
            p.add_term(
                [
                    rng.gen_range(-2..=2),
                    rng.gen_range(-2..=2),
                    rng.gen_range(-2..=2),
                ],
                KScalar::from_int(rng.gen_range(-4..=4)),
            );
        }
        p
    }

    #[test]
    fn permutations_form_a_group_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..10 {
            let p = random_poly(&mut rng);
            let q = random_poly(&mut rng);
            for s1 in Perm::all() {
                // respects products
                assert_eq!(
                    permute_variables(&p.mul(&q), &s1),
                    permute_variables(&p, &s1).mul(&permute_variables(&q, &s1))
                );
                // action composes: (s2 ∘ s1) p = s2 (s1 p)
                for s2 in Perm::all() {
                    assert_eq!(
                        permute_variables(&p, &s2.compose(&s1)),
                        permute_variables(&permute_variables(&p, &s1), &s2)
                    );
                }
                // Weyl symmetry is permutation-invariant
                assert_eq!(
                    weyl_symmetric(&p),
                    weyl_symmetric(&permute_variables(&p, &s1))
                );
            }
        }
    }

    #[test]
    fn ring_axioms_on_random_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        for _ in 0..20 {
            let a = random_poly(&mut rng);
            let b = random_poly(&mut rng);
            let c = random_poly(&mut rng);
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }
    }

    #[test]
    fn rational_arithmetic_reduces_canonically() {
        let mut rng = ChaCha8Rng::seed_from_u64(321);
        for _ in 0..15 {
            let a = random_poly(&mut rng);
            let mut d = random_poly(&mut rng);
            if d.is_zero() {
                d = XPolynomial::one();
            }
            let r = XRational::new(a.clone(), d.clone()).unwrap();
            // r * d == a as rationals
            let lhs = r.mul(&XRational::from_poly(d.clone()));
            let rhs = XRational::from_poly(a.clone());
            assert_eq!(lhs, rhs);
            // canonical form is reproducible
            let again = XRational::new(r.num().clone(), r.den().clone()).unwrap();
            assert_eq!(r, again);
        }
    }

    #[test]
    fn xpolynomial_json_round_trip() {
        let p = p_generator(0).mul(&p_generator(2)).scale(&KScalar::t_half());
        let s = serde_json::to_string(&p).unwrap();
        let back: XPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(p, back);
    }
}

//! Exact arithmetic in the ground field k = Q(q^{1/4}, t^{1/4}).
//!
//! The formal generators are u = q^{1/4} and v = t^{1/4}, so q = u^4,
//! t = v^4 and every half-power the operators need is a monomial in u, v.
//! A [`KScalar`] is a reduced ratio of integer-coefficient polynomials in
//! (u, v) with non-negative exponents; negative powers live in the
//! denominator. Equality of canonical forms is structural equality.

mod gcd;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::Coefficient;

pub use gcd::{content, divexact, gcd as poly_gcd, leading_sign, primitive_part, IntPoly2};

/// Element of k in canonical form: `num/den` fully reduced (polynomial,
/// monomial and integer content), denominator nonzero with positive
/// lex-leading coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KScalar {
    num: IntPoly2,
    den: IntPoly2,
}

impl KScalar {
    pub fn from_parts(num: IntPoly2, den: IntPoly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: IntPoly2, den: IntPoly2) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return KScalar {
                num: IntPoly2::zero(),
                den: IntPoly2::one(),
            };
        }
        let g = gcd::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                gcd::divexact(&num, &g).expect("gcd must divide numerator"),
                gcd::divexact(&den, &g).expect("gcd must divide denominator"),
            )
        };
        if gcd::leading_sign(&den) == Sign::Minus {
            num = num.neg();
            den = den.neg();
        }
        KScalar { num, den }
    }

    pub fn zero() -> Self {
        KScalar {
            num: IntPoly2::zero(),
            den: IntPoly2::one(),
        }
    }

    pub fn one() -> Self {
        KScalar {
            num: IntPoly2::one(),
            den: IntPoly2::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        KScalar {
            num: IntPoly2::constant(BigInt::from(n)),
            den: IntPoly2::one(),
        }
    }

    /// u^eu v^ev with either exponent allowed to be negative.
    pub fn monomial(eu: i64, ev: i64) -> Self {
        let mut num = [0i32; 2];
        let mut den = [0i32; 2];
        for (i, e) in [eu, ev].into_iter().enumerate() {
            let e = i32::try_from(e).expect("exponent overflow");
            if e >= 0 {
                num[i] = e;
            } else {
                den[i] = -e;
            }
        }
        KScalar {
            num: IntPoly2::monomial(num, BigInt::from(1)),
            den: IntPoly2::monomial(den, BigInt::from(1)),
        }
    }

    /// q^{n/4} t^{m/4}; the minimal lattice every formula in scope lives on.
    pub fn qt_quarter_pow(n: i64, m: i64) -> Self {
        Self::monomial(n, m)
    }

    pub fn q() -> Self {
        Self::monomial(4, 0)
    }

    pub fn t() -> Self {
        Self::monomial(0, 4)
    }

    pub fn q_half() -> Self {
        Self::monomial(2, 0)
    }

    pub fn t_half() -> Self {
        Self::monomial(0, 2)
    }

    pub fn num(&self) -> &IntPoly2 {
        &self.num
    }

    pub fn den(&self) -> &IntPoly2 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::canonical(self.num.add(&rhs.num), self.den.clone());
        }
        let g = gcd::gcd(&self.den, &rhs.den);
        let (da, db) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                gcd::divexact(&self.den, &g).unwrap(),
                gcd::divexact(&rhs.den, &g).unwrap(),
            )
        };
        let num = self.num.mul(&db).add(&rhs.num.mul(&da));
        let den = da.mul(&rhs.den);
        Self::canonical(num, den)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        KScalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    /// Single-term numerator and denominator: a monomial times a rational.
    fn is_simple(&self) -> bool {
        self.num.num_terms() == 1 && self.den.num_terms() == 1
    }

    /// Multiply by a simple scalar: exponent shifts plus integer-content
    /// reduction, no polynomial gcd (monomial factors cannot create new
    /// polynomial common factors).
    fn mul_simple(&self, m: &Self) -> Self {
        debug_assert!(m.is_simple());
        let (me, mc) = m.num.leading().unwrap();
        let (de, dc) = m.den.leading().unwrap();
        let num = self.num.mul_monomial(me, mc);
        let den = self.den.mul_monomial(de, dc);
        // joint monomial strip
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let s = [-mn[0].min(md[0]), -mn[1].min(md[1])];
        let mut num = if s == [0, 0] {
            num
        } else {
            num.map_exponents(|e| [e[0] + s[0], e[1] + s[1]])
        };
        let mut den = if s == [0, 0] {
            den
        } else {
            den.map_exponents(|e| [e[0] + s[0], e[1] + s[1]])
        };
        // integer content reduction
        let g = gcd::content(&num).gcd(&gcd::content(&den));
        if !g.is_one() {
            num = IntPoly2::from_terms(num.iter().map(|(e, c)| (*e, c / &g)));
            den = IntPoly2::from_terms(den.iter().map(|(e, c)| (*e, c / &g)));
        }
        if gcd::leading_sign(&den) == Sign::Minus {
            num = num.neg();
            den = den.neg();
        }
        KScalar { num, den }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_simple() {
            return self.mul_simple(rhs);
        }
        if self.is_simple() {
            return rhs.mul_simple(self);
        }
        // cross-cancel before multiplying to keep intermediates reduced
        let g1 = gcd::gcd(&self.num, &rhs.den);
        let g2 = gcd::gcd(&rhs.num, &self.den);
        let na = if g1.is_one() {
            self.num.clone()
        } else {
            gcd::divexact(&self.num, &g1).unwrap()
        };
        let db = if g1.is_one() {
            rhs.den.clone()
        } else {
            gcd::divexact(&rhs.den, &g1).unwrap()
        };
        let nb = if g2.is_one() {
            rhs.num.clone()
        } else {
            gcd::divexact(&rhs.num, &g2).unwrap()
        };
        let da = if g2.is_one() {
            self.den.clone()
        } else {
            gcd::divexact(&self.den, &g2).unwrap()
        };
        let mut num = na.mul(&nb);
        let mut den = da.mul(&db);
        if gcd::leading_sign(&den) == Sign::Minus {
            num = num.neg();
            den = den.neg();
        }
        KScalar { num, den }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut num = self.den.clone();
        let mut den = self.num.clone();
        if gcd::leading_sign(&den) == Sign::Minus {
            num = num.neg();
            den = den.neg();
        }
        Ok(KScalar { num, den })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Exact evaluation at rational u, v; errors on a denominator pole.
    pub fn eval_uv(&self, u: &BigRational, v: &BigRational) -> Result<BigRational> {
        let den = eval_poly(&self.den, u, v);
        if den.is_zero() {
            return Err(Error::PoleAtEvaluationPoint);
        }
        Ok(eval_poly(&self.num, u, v) / den)
    }
}

fn eval_poly(p: &IntPoly2, u: &BigRational, v: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for (e, c) in p.iter() {
        let term = BigRational::from(c.clone())
            * u.pow(e[0])
            * v.pow(e[1]);
        acc += term;
    }
    acc
}

impl Coefficient for KScalar {
    fn zero() -> Self {
        KScalar::zero()
    }
    fn one() -> Self {
        KScalar::one()
    }
    fn is_zero(&self) -> bool {
        KScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        KScalar::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        KScalar::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        KScalar::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        KScalar::neg(self)
    }
}

impl std::ops::Add for &KScalar {
    type Output = KScalar;
    fn add(self, rhs: Self) -> KScalar {
        KScalar::add(self, rhs)
    }
}

impl std::ops::Sub for &KScalar {
    type Output = KScalar;
    fn sub(self, rhs: Self) -> KScalar {
        KScalar::sub(self, rhs)
    }
}

impl std::ops::Mul for &KScalar {
    type Output = KScalar;
    fn mul(self, rhs: Self) -> KScalar {
        KScalar::mul(self, rhs)
    }
}

impl std::ops::Neg for &KScalar {
    type Output = KScalar;
    fn neg(self) -> KScalar {
        KScalar::neg(self)
    }
}

impl std::fmt::Display for KScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn poly(p: &IntPoly2, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            if p.is_zero() {
                return write!(f, "0");
            }
            for (i, (e, c)) in p.iter().enumerate() {
                if i > 0 {
                    write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
                } else if c.is_negative() {
                    write!(f, "-")?;
                }
                let a = c.abs();
                let mut wrote = false;
                if !a.is_one() || (e[0] == 0 && e[1] == 0) {
                    write!(f, "{a}")?;
                    wrote = true;
                }
                for (sym, exp) in [("u", e[0]), ("v", e[1])] {
                    if exp != 0 {
                        if wrote {
                            write!(f, "*")?;
                        }
                        if exp == 1 {
                            write!(f, "{sym}")?;
                        } else {
                            write!(f, "{sym}^{exp}")?;
                        }
                        wrote = true;
                    }
                }
            }
            Ok(())
        }
        if self.den.is_one() {
            poly(&self.num, f)
        } else {
            write!(f, "(")?;
            poly(&self.num, f)?;
            write!(f, ")/(")?;
            poly(&self.den, f)?;
            write!(f, ")")
        }
    }
}

// JSON shape: {"num": [[eu, ev, "coeff"]...], "den": [...]}, terms sorted
// ascending by (eu, ev), coefficients as decimal strings.
impl Serialize for KScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        fn terms(p: &IntPoly2) -> Vec<(i32, i32, String)> {
            p.iter().map(|(e, c)| (e[0], e[1], c.to_string())).collect()
        }
        let mut st = s.serialize_struct("KScalar", 2)?;
        st.serialize_field("num", &terms(&self.num))?;
        st.serialize_field("den", &terms(&self.den))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for KScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: Vec<(i32, i32, String)>,
            den: Vec<(i32, i32, String)>,
        }
        let raw = Raw::deserialize(d)?;
        let parse = |ts: Vec<(i32, i32, String)>| -> std::result::Result<IntPoly2, D::Error> {
            let mut p = IntPoly2::zero();
            for (eu, ev, c) in ts {
                if eu < 0 || ev < 0 {
                    return Err(D::Error::custom("negative exponent in KScalar"));
                }
                let c: BigInt = c
                    .parse()
                    .map_err(|_| D::Error::custom("bad coefficient"))?;
                p.add_term([eu, ev], c);
            }
            Ok(p)
        };
        let num = parse(raw.num)?;
        let den = parse(raw.den)?;
        KScalar::from_parts(num, den).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// The bracket [n, m]_{q,t} = (q^{n/2} t^{m/2} - q^{-n/2} t^{-m/2}) / (q^{1/2} - q^{-1/2}).
pub fn qt_bracket(n: i64, m: i64) -> KScalar {
    qt_bracket_doubled(2 * n, m)
}

/// The same bracket with the first argument doubled, [n2/2, m]_{q,t}; the
/// Pieri coefficient needs half-integer first arguments on odd-sum triples.
pub fn qt_bracket_doubled(n2: i64, m: i64) -> KScalar {
    let num = KScalar::monomial(n2, 2 * m).sub(&KScalar::monomial(-n2, -2 * m));
    let den = KScalar::monomial(2, 0).sub(&KScalar::monomial(-2, 0));
    num.div(&den).expect("bracket denominator is nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn additive_inverse_cancels() {
        let q = KScalar::q();
        assert!(q.add(&q.neg()).is_zero());
    }

    #[test]
    fn quarter_power_squares_to_half_power() {
        let u = KScalar::monomial(1, 0);
        assert_eq!(u.mul(&u), KScalar::q_half());
    }

    #[test]
    fn div_reduces_cyclotomic_ratio() {
        // (1 - t^2)/(1 - t) = 1 + t, with the quotient pinned by an
        // independent polynomial division on the integer layer
        let one = KScalar::one();
        let t = KScalar::t();
        let t2 = t.mul(&t);
        let lhs = one.sub(&t2).div(&one.sub(&t)).unwrap();

        let oracle = divexact(
            &IntPoly2::from_terms([([0, 0], BigInt::from(1)), ([0, 8], BigInt::from(-1))]),
            &IntPoly2::from_terms([([0, 0], BigInt::from(1)), ([0, 4], BigInt::from(-1))]),
        )
        .unwrap();
        assert_eq!(lhs, KScalar::from_parts(oracle, IntPoly2::one()).unwrap());
        assert_eq!(lhs, one.add(&t));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(KScalar::one().div(&KScalar::zero()).is_err());
    }

    #[test]
    fn bracket_base_cases() {
        assert!(qt_bracket(1, 0).is_one());
        assert!(qt_bracket(0, 0).is_zero());
    }

    #[test]
    fn bracket_two_zero_is_q_half_plus_inverse() {
        let expect = KScalar::q_half().add(&KScalar::monomial(-2, 0));
        let got = qt_bracket(2, 0);
        assert_eq!(got, expect);
        // independent numeric route at three points
        for (u, v) in [(2, 3), (3, 5), (5, 2)] {
            let (u, v) = (rat(u, 1), rat(v, 1));
            assert_eq!(
                got.eval_uv(&u, &v).unwrap(),
                expect.eval_uv(&u, &v).unwrap()
            );
        }
    }

    #[test]
    fn bracket_antisymmetry() {
        for n in -10..=10i64 {
            for m in -10..=10i64 {
                assert_eq!(qt_bracket(n, m), qt_bracket(-n, -m).neg());
            }
        }
    }

    #[test]
    fn evaluate_bracket_at_rational_point() {
        // [0,1] = (t^{1/2} - t^{-1/2})/(q^{1/2} - q^{-1/2}) at u=2, v=3:
        // (9 - 1/9)/(4 - 1/4) = 64/27
        let b = qt_bracket(0, 1);
        assert_eq!(b.eval_uv(&rat(2, 1), &rat(3, 1)).unwrap(), rat(64, 27));
        assert_eq!(
            KScalar::one().eval_uv(&rat(7, 2), &rat(1, 3)).unwrap(),
            rat(1, 1)
        );
        assert_eq!(
            KScalar::q().mul(&KScalar::t()).eval_uv(&rat(2, 1), &rat(1, 1)).unwrap(),
            rat(16, 1)
        );
    }

    #[test]
    fn pole_is_detected() {
        let x = KScalar::one().div(&KScalar::one().sub(&KScalar::t())).unwrap();
        assert!(matches!(
            x.eval_uv(&rat(2, 1), &rat(1, 1)),
            Err(Error::PoleAtEvaluationPoint)
        ));
    }

    fn random_scalar(rng: &mut ChaCha8Rng) -> KScalar {
        let mut poly = |allow_zero: bool| loop {
            let mut p = IntPoly2::zero();
            for _ in 0..rng.gen_range(1..4) {
                p.add_term(
                    [rng.gen_range(0..4), rng.gen_range(0..4)],
                    BigInt::from(rng.gen_range(-5..=5i64)),
                );
            }
            if allow_zero || !p.is_zero() {
                return p;
            }
        };
        let num = poly(true);
        let den = poly(false);
        KScalar::from_parts(num, den).unwrap()
    }

    #[test]
    fn field_axioms_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..60 {
            let a = random_scalar(&mut rng);
            let b = random_scalar(&mut rng);
            let c = random_scalar(&mut rng);
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.add(&b), b.add(&a));
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let a = random_scalar(&mut rng);
            let again = KScalar::from_parts(a.num().clone(), a.den().clone()).unwrap();
            assert_eq!(a, again);
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        let points: Vec<(BigRational, BigRational)> = (0..5)
            .map(|_| {
                (
                    rat(rng.gen_range(2..20), rng.gen_range(1..7)),
                    rat(rng.gen_range(2..20), rng.gen_range(1..7)),
                )
            })
            .collect();
        for _ in 0..50 {
            let a = random_scalar(&mut rng);
            let b = random_scalar(&mut rng);
            for (u, v) in &points {
                let (ea, eb) = match (a.eval_uv(u, v), b.eval_uv(u, v)) {
                    (Ok(x), Ok(y)) => (x, y),
                    _ => continue, // sampled a pole
                };
                if let Ok(s) = a.add(&b).eval_uv(u, v) {
                    assert_eq!(s, &ea + &eb);
                }
                if let Ok(p) = a.mul(&b).eval_uv(u, v) {
                    assert_eq!(p, &ea * &eb);
                }
            }
        }
    }

    #[test]
    fn json_round_trip_preserves_canonical_form() {
        let x = qt_bracket(3, 2).div(&qt_bracket(1, 1)).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        let back: KScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(x, back);
    }
}

//! GCD of bivariate integer polynomials.
//!
//! Dense modular algorithm (Brown): reduce mod machine primes, compute the
//! image gcd by evaluation/interpolation in the second variable, lift by CRT
//! and certify by exact trial division over Z. Monomial, constant and
//! divides-the-other inputs short-circuit before any modular work.

use std::sync::OnceLock;

use num::bigint::Sign;
use num::{BigInt, Integer, One, Signed, Zero};

use crate::poly::TermPoly;

pub type IntPoly2 = TermPoly<2, BigInt>;

// ---------------------------------------------------------------------------
// machine-prime arithmetic
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct Zp {
    p: u64,
}

impl Zp {
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a.wrapping_add(b);
        if s >= self.p || s < a {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - b + a
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    // deterministic Miller-Rabin for u64 with the standard witness set
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let zp = Zp { p: n };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = zp.pow(a % n, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = zp.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const NUM_PRIMES: usize = 64;

fn primes() -> &'static [u64; NUM_PRIMES] {
    static PRIMES: OnceLock<[u64; NUM_PRIMES]> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = [0u64; NUM_PRIMES];
        let mut candidate = (1u64 << 62) - 1;
        let mut i = 0;
        while i < NUM_PRIMES {
            if is_prime_u64(candidate) {
                out[i] = candidate;
                i += 1;
            }
            candidate -= 2;
        }
        out
    })
}

// ---------------------------------------------------------------------------
// dense univariate polynomials over Z_p (ascending coefficients)
// ---------------------------------------------------------------------------

type Poly1 = Vec<u64>;

fn p1_trim(a: &mut Poly1) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn p1_deg(a: &Poly1) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

fn p1_scale(zp: Zp, a: &Poly1, c: u64) -> Poly1 {
    if c == 0 {
        return vec![];
    }
    a.iter().map(|&x| zp.mul(x, c)).collect()
}

fn p1_mul(zp: Zp, a: &Poly1, b: &Poly1) -> Poly1 {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = zp.add(out[i + j], zp.mul(x, y));
        }
    }
    p1_trim(&mut out);
    out
}

fn p1_sub(zp: Zp, a: &Poly1, b: &Poly1) -> Poly1 {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] = x;
    }
    for (i, &y) in b.iter().enumerate() {
        out[i] = zp.sub(out[i], y);
    }
    p1_trim(&mut out);
    out
}

/// Remainder of a by b (b nonzero), in place of full division.
fn p1_rem(zp: Zp, a: &Poly1, b: &Poly1) -> Poly1 {
    let db = p1_deg(b).expect("division by zero polynomial");
    let lb_inv = zp.inv(b[db]);
    let mut r = a.clone();
    p1_trim(&mut r);
    while let Some(dr) = p1_deg(&r) {
        if dr < db {
            break;
        }
        let c = zp.mul(r[dr], lb_inv);
        let shift = dr - db;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = zp.sub(r[shift + j], zp.mul(c, bj));
        }
        p1_trim(&mut r);
    }
    r
}

/// Monic gcd over Z_p.
fn p1_gcd(zp: Zp, a: &Poly1, b: &Poly1) -> Poly1 {
    let mut x = a.clone();
    let mut y = b.clone();
    p1_trim(&mut x);
    p1_trim(&mut y);
    while !y.is_empty() {
        let r = p1_rem(zp, &x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = p1_deg(&x) {
        let inv = zp.inv(x[d]);
        x = p1_scale(zp, &x, inv);
    }
    x
}

/// Exact division a / b; panics when not exact (internal use only).
fn p1_divexact(zp: Zp, a: &Poly1, b: &Poly1) -> Poly1 {
    let db = p1_deg(b).expect("division by zero polynomial");
    let lb_inv = zp.inv(b[db]);
    let mut r = a.clone();
    p1_trim(&mut r);
    if r.is_empty() {
        return vec![];
    }
    let da = p1_deg(&r).unwrap();
    assert!(da >= db, "inexact univariate division");
    let mut q = vec![0u64; da - db + 1];
    while let Some(dr) = p1_deg(&r) {
        if dr < db {
            break;
        }
        let c = zp.mul(r[dr], lb_inv);
        let shift = dr - db;
        q[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = zp.sub(r[shift + j], zp.mul(c, bj));
        }
        p1_trim(&mut r);
    }
    assert!(r.is_empty(), "inexact univariate division");
    q
}

fn p1_eval(zp: Zp, a: &Poly1, x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in a.iter().rev() {
        acc = zp.add(zp.mul(acc, x), c);
    }
    acc
}

// ---------------------------------------------------------------------------
// dense bivariate polynomials over Z_p: index = u-exponent, entry = poly in v
// ---------------------------------------------------------------------------

type Poly2 = Vec<Poly1>;

fn p2_trim(a: &mut Poly2) {
    while a.last().map(|c| c.is_empty()).unwrap_or(false) {
        a.pop();
    }
}

fn p2_is_zero(a: &Poly2) -> bool {
    a.is_empty()
}

fn p2_from_int(poly: &IntPoly2, zp: Zp) -> Poly2 {
    let p_big = BigInt::from(zp.p);
    let mut out: Poly2 = vec![];
    for (e, c) in poly.iter() {
        let (eu, ev) = (e[0] as usize, e[1] as usize);
        let m = c.mod_floor(&p_big);
        let digit = m.to_u64_digits().1.first().copied().unwrap_or(0);
        if digit == 0 {
            continue;
        }
        if out.len() <= eu {
            out.resize(eu + 1, vec![]);
        }
        if out[eu].len() <= ev {
            out[eu].resize(ev + 1, 0);
        }
        out[eu][ev] = digit;
    }
    for c in out.iter_mut() {
        p1_trim(c);
    }
    p2_trim(&mut out);
    out
}

/// Content with respect to v: monic gcd of all u-coefficients.
fn p2_content(zp: Zp, a: &Poly2) -> Poly1 {
    let mut g: Poly1 = vec![];
    for c in a.iter() {
        if c.is_empty() {
            continue;
        }
        g = if g.is_empty() { p1_scale(zp, c, zp.inv(c[c.len() - 1])) } else { p1_gcd(zp, &g, c) };
        if p1_deg(&g) == Some(0) {
            return vec![1];
        }
    }
    g
}

fn p2_div_content(zp: Zp, a: &Poly2, g: &Poly1) -> Poly2 {
    if p1_deg(g) == Some(0) {
        return a.clone();
    }
    a.iter()
        .map(|c| if c.is_empty() { vec![] } else { p1_divexact(zp, c, g) })
        .collect()
}

fn p2_eval_v(zp: Zp, a: &Poly2, beta: u64) -> Poly1 {
    let mut out: Poly1 = a.iter().map(|c| p1_eval(zp, c, beta)).collect();
    p1_trim(&mut out);
    out
}

fn p2_deg_v(a: &Poly2) -> usize {
    a.iter().filter_map(p1_deg).max().unwrap_or(0)
}

/// Does g(u, beta) divide f(u, beta) at `trials` evaluation points? A cheap
/// probabilistic divisibility filter; false positives are caught by the
/// exact trial division over Z.
fn p2_probably_divides(zp: Zp, f: &Poly2, g: &Poly2, seed: u64, trials: usize) -> bool {
    let lc_g = g.last().expect("nonzero candidate");
    let mut beta = seed;
    let mut done = 0;
    while done < trials {
        beta = beta.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let b = 1 + (beta % (zp.p - 1));
        if p1_eval(zp, lc_g, b) == 0 {
            continue;
        }
        let fe = p2_eval_v(zp, f, b);
        let ge = p2_eval_v(zp, g, b);
        if ge.is_empty() || !p1_rem(zp, &fe, &ge).is_empty() {
            return false;
        }
        done += 1;
    }
    true
}

/// Full gcd of A and B in Z_p[u, v], lex-monic; None when the prime or the
/// evaluation points were unlucky.
fn p2_gcd(zp: Zp, a: &Poly2, b: &Poly2) -> Option<Poly2> {
    if p2_is_zero(a) || p2_is_zero(b) {
        let mut g = if p2_is_zero(a) { b.clone() } else { a.clone() };
        if let Some(lc) = g.last() {
            let inv = zp.inv(lc[lc.len() - 1]);
            g = g.iter().map(|c| p1_scale(zp, c, inv)).collect();
        }
        return Some(g);
    }
    let cont_a = p2_content(zp, a);
    let cont_b = p2_content(zp, b);
    let cont_g = p1_gcd(zp, &cont_a, &cont_b);
    let pa = p2_div_content(zp, a, &cont_a);
    let pb = p2_div_content(zp, b, &cont_b);

    let lc_a = pa.last().unwrap().clone();
    let lc_b = pb.last().unwrap().clone();
    let gamma = p1_gcd(zp, &lc_a, &lc_b);

    // enough points for gamma * pp-gcd, plus one consistency check
    let full_bound = p1_deg(&gamma).unwrap_or(0) + p2_deg_v(&pa).min(p2_deg_v(&pb)) + 2;
    // optimistic first pass: gcds here are usually a few small factors
    let quick_bound = (p1_deg(&gamma).unwrap_or(0) + 10).min(full_bound);

    for bound in [quick_bound, full_bound] {
        match p2_gcd_interpolate(zp, &pa, &pb, &lc_a, &lc_b, &gamma, bound) {
            InterpolationOutcome::Coprime => return Some(vec![cont_g]),
            InterpolationOutcome::Unlucky => return None,
            InterpolationOutcome::Candidate(h) => {
                if bound < full_bound
                    && !(p2_probably_divides(zp, &pa, &h, 0x9e3779b9, 2)
                        && p2_probably_divides(zp, &pb, &h, 0x85ebca6b, 2))
                {
                    continue; // budget too small, escalate
                }
                if bound == full_bound && p2_deg_v(&h) + 1 >= bound {
                    return None;
                }
                let cont_h = p2_content(zp, &h);
                let mut g = p2_div_content(zp, &h, &cont_h);
                let lc = g.last().unwrap();
                let inv = zp.inv(lc[lc.len() - 1]);
                g = g.iter().map(|c| p1_scale(zp, c, inv)).collect();
                let g = g.iter().map(|c| p1_mul(zp, c, &cont_g)).collect();
                return Some(g);
            }
        }
    }
    None
}

enum InterpolationOutcome {
    Coprime,
    Unlucky,
    Candidate(Poly2),
}

fn p2_gcd_interpolate(
    zp: Zp,
    pa: &Poly2,
    pb: &Poly2,
    lc_a: &Poly1,
    lc_b: &Poly1,
    gamma: &Poly1,
    bound: usize,
) -> InterpolationOutcome {
    let mut points: Vec<u64> = vec![];
    let mut images: Vec<Poly1> = vec![];
    let mut gcd_deg_u: Option<usize> = None;
    let mut beta = 1u64;
    let mut tried = 0usize;
    while points.len() < bound {
        tried += 1;
        if tried > 4 * bound + 64 {
            return InterpolationOutcome::Unlucky;
        }
        let cur = beta;
        beta += 1;
        if p1_eval(zp, lc_a, cur) == 0 || p1_eval(zp, lc_b, cur) == 0 {
            continue;
        }
        let ga = p2_eval_v(zp, pa, cur);
        let gb = p2_eval_v(zp, pb, cur);
        let g = p1_gcd(zp, &ga, &gb);
        let dg = p1_deg(&g).unwrap();
        match gcd_deg_u {
            Some(d) if dg > d => continue, // unlucky point
            Some(d) if dg < d => {
                points.clear();
                images.clear();
                gcd_deg_u = Some(dg);
            }
            None => gcd_deg_u = Some(dg),
            _ => {}
        }
        if dg == 0 {
            return InterpolationOutcome::Coprime;
        }
        let scaled = p1_scale(zp, &g, p1_eval(zp, gamma, cur));
        points.push(cur);
        images.push(scaled);
    }

    // Newton interpolation of every u-coefficient across the sample points.
    let du = gcd_deg_u.unwrap();
    let n = points.len();
    let mut coeffs: Vec<Poly1> = vec![vec![]; du + 1];
    for (j, slot) in coeffs.iter_mut().enumerate() {
        // values of coefficient j at each point
        let vals: Vec<u64> = images.iter().map(|g| g.get(j).copied().unwrap_or(0)).collect();
        // divided differences
        let mut dd = vals.clone();
        for lvl in 1..n {
            for i in (lvl..n).rev() {
                let denom = zp.sub(points[i], points[i - lvl]);
                dd[i] = zp.mul(zp.sub(dd[i], dd[i - 1]), zp.inv(denom));
            }
        }
        // expand Newton form into standard coefficients
        let mut poly: Poly1 = vec![];
        for i in (0..n).rev() {
            // poly = poly * (v - points[i]) + dd[i]
            let mut shifted = vec![0u64];
            shifted.extend_from_slice(&poly);
            let scaled = p1_scale(zp, &poly, points[i]);
            poly = p1_sub(zp, &shifted, &scaled);
            if dd[i] != 0 {
                if poly.is_empty() {
                    poly = vec![dd[i]];
                } else {
                    poly[0] = zp.add(poly[0], dd[i]);
                }
            }
            p1_trim(&mut poly);
        }
        *slot = poly;
    }
    let mut h: Poly2 = coeffs;
    p2_trim(&mut h);
    if p2_is_zero(&h) {
        return InterpolationOutcome::Unlucky;
    }
    InterpolationOutcome::Candidate(h)
}

// ---------------------------------------------------------------------------
// Z-level operations on the sparse representation
// ---------------------------------------------------------------------------

/// Integer content (non-negative); zero polynomial has content 0.
pub fn content(a: &IntPoly2) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in a.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Sign of the lex-leading coefficient; zero polynomial gives Plus.
pub fn leading_sign(a: &IntPoly2) -> Sign {
    match a.leading() {
        Some((_, c)) if c.is_negative() => Sign::Minus,
        _ => Sign::Plus,
    }
}

/// Divide out the integer content and normalize the lex-leading sign to +.
pub fn primitive_part(a: &IntPoly2) -> IntPoly2 {
    if a.is_zero() {
        return IntPoly2::zero();
    }
    let mut c = content(a);
    if leading_sign(a) == Sign::Minus {
        c = -c;
    }
    IntPoly2::from_terms(a.iter().map(|(e, x)| (*e, x / &c)))
}

/// Exact division; None when b does not divide a.
pub fn divexact(a: &IntPoly2, b: &IntPoly2) -> Option<IntPoly2> {
    assert!(!b.is_zero(), "division by zero polynomial");
    if a.is_zero() {
        return Some(IntPoly2::zero());
    }
    let (lead_e, lead_c) = b.leading().unwrap();
    let lead_e = *lead_e;
    let mut rem = a.clone();
    let mut q = IntPoly2::zero();
    while let Some((re, rc)) = rem.leading() {
        let qe = [re[0] - lead_e[0], re[1] - lead_e[1]];
        if qe[0] < 0 || qe[1] < 0 {
            return None;
        }
        let (qc, r) = rc.div_rem(lead_c);
        if !r.is_zero() {
            return None;
        }
        q.add_term(qe, qc.clone());
        rem = rem.sub(&b.mul_monomial(&qe, &qc));
    }
    Some(q)
}

fn crt_combine(r_old: &BigInt, m_old: &BigInt, r_p: u64, p: u64) -> BigInt {
    // symmetric-range CRT lift
    let pb = BigInt::from(p);
    let diff = (BigInt::from(r_p) - r_old).mod_floor(&pb);
    let m_inv = mod_inverse(m_old.mod_floor(&pb), &pb);
    let t = (diff * m_inv).mod_floor(&pb);
    let mut r = r_old + m_old * t;
    let m_new = m_old * &pb;
    let half = &m_new / 2;
    if r > half {
        r -= &m_new;
    }
    r
}

fn mod_inverse(a: BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn strip_monomial(a: &IntPoly2) -> ([i32; 2], IntPoly2) {
    let m = a.min_exponents();
    if m == [0, 0] {
        return (m, a.clone());
    }
    let neg = [-m[0], -m[1]];
    (m, a.map_exponents(|e| [e[0] + neg[0], e[1] + neg[1]]))
}

/// GCD in Z[u, v], normalized primitive with positive lex-leading coefficient
/// up to the shared integer content.
pub fn gcd(a: &IntPoly2, b: &IntPoly2) -> IntPoly2 {
    if a.is_zero() {
        return normalize_sign(b);
    }
    if b.is_zero() {
        return normalize_sign(a);
    }
    if a.is_one() || b.is_one() {
        return IntPoly2::one();
    }
    // single-term operand: common monomial times the content gcd
    for (mono, other) in [(a, b), (b, a)] {
        if mono.num_terms() != 1 {
            continue;
        }
        let (me, mc) = mono.leading().unwrap();
        let mo = other.min_exponents();
        let e = [me[0].min(mo[0]), me[1].min(mo[1])];
        let c = mc.abs().gcd(&content(other));
        return IntPoly2::monomial(e, c);
    }

    let ca = content(a);
    let cb = content(b);
    let cg = ca.gcd(&cb);

    let (ma, pa) = strip_monomial(&primitive_part(a));
    let (mb, pb) = strip_monomial(&primitive_part(b));
    let mg = [ma[0].min(mb[0]), ma[1].min(mb[1])];
    let attach = |g: IntPoly2| -> IntPoly2 {
        g.mul_monomial(&mg, &cg)
    };

    if pa.is_one() || pb.is_one() {
        return attach(IntPoly2::one());
    }
    if pa == pb {
        return attach(pa);
    }
    // fast path: one primitive part divides the other
    let (small, large) = if pa.num_terms() <= pb.num_terms() {
        (&pa, &pb)
    } else {
        (&pb, &pa)
    };
    if divexact(large, small).is_some() {
        return attach(small.clone());
    }

    // interpolate over the variable of smaller degree
    let deg_u = pa.max_exponents()[0].max(pb.max_exponents()[0]);
    let deg_v = pa.max_exponents()[1].max(pb.max_exponents()[1]);
    let transpose = deg_v > deg_u;
    let (pa, pb) = if transpose {
        (
            pa.map_exponents(|e| [e[1], e[0]]),
            pb.map_exponents(|e| [e[1], e[0]]),
        )
    } else {
        (pa, pb)
    };
    let attach = |g: IntPoly2| -> IntPoly2 {
        let g = if transpose {
            g.map_exponents(|e| [e[1], e[0]])
        } else {
            g
        };
        g.mul_monomial(&mg, &cg)
    };

    let gamma = pa.leading().unwrap().1.gcd(pb.leading().unwrap().1);

    let mut acc: Option<(Vec<([i32; 2], BigInt)>, BigInt, (usize, usize))> = None;
    for &p in primes().iter() {
        let zp = Zp { p };
        let zpa = p2_from_int(&pa, zp);
        let zpb = p2_from_int(&pb, zp);
        // prime must preserve the leading terms
        if zpa.len() != (pa.max_exponents()[0] as usize + 1)
            || zpb.len() != (pb.max_exponents()[0] as usize + 1)
        {
            continue;
        }
        let Some(gp) = p2_gcd(zp, &zpa, &zpb) else {
            continue;
        };
        let deg_u = gp.len().saturating_sub(1);
        let deg_v = p2_deg_v(&gp);
        if deg_u == 0 && deg_v == 0 {
            return attach(IntPoly2::one());
        }
        // scale image so its lex-leading coefficient equals gamma mod p
        let gb = gamma.mod_floor(&BigInt::from(p));
        let gamma_p = gb.to_u64_digits().1.first().copied().unwrap_or(0);
        if gamma_p == 0 {
            continue;
        }
        let lc = gp.last().unwrap();
        let scale = zp.mul(gamma_p, zp.inv(lc[lc.len() - 1]));
        let gp: Poly2 = gp.iter().map(|c| p1_scale(zp, c, scale)).collect();

        // flatten to sparse term list
        let mut terms: Vec<([i32; 2], u64)> = vec![];
        for (eu, c) in gp.iter().enumerate() {
            for (ev, &x) in c.iter().enumerate() {
                if x != 0 {
                    terms.push(([eu as i32, ev as i32], x));
                }
            }
        }

        let dvec = (deg_u, deg_v);
        match &mut acc {
            Some((_, _, d)) if dvec > *d => continue, // unlucky prime
            Some((cur, _, d)) if dvec < *d => {
                cur.clear();
                acc = None;
            }
            _ => {}
        }
        match &mut acc {
            None => {
                let half = BigInt::from(p) / 2;
                let lifted: Vec<([i32; 2], BigInt)> = terms
                    .iter()
                    .map(|(e, x)| {
                        let mut v = BigInt::from(*x);
                        if v > half {
                            v -= BigInt::from(p);
                        }
                        (*e, v)
                    })
                    .collect();
                acc = Some((lifted, BigInt::from(p), dvec));
            }
            Some((cur, modulus, _)) => {
                // CRT merge on the union of supports
                let mut merged: std::collections::BTreeMap<[i32; 2], (BigInt, u64)> =
                    cur.iter().map(|(e, c)| (*e, (c.clone(), 0u64))).collect();
                for (e, x) in terms {
                    merged.entry(e).or_insert((BigInt::zero(), 0)).1 = x;
                }
                let mut next: Vec<([i32; 2], BigInt)> = vec![];
                for (e, (r_old, r_p)) in merged {
                    let c = crt_combine(&r_old, modulus, r_p, p);
                    if !c.is_zero() {
                        next.push((e, c));
                    }
                }
                let stable = next == *cur;
                *cur = next;
                *modulus *= BigInt::from(p);
                if !stable {
                    continue;
                }
            }
        }
        // candidate stabilized (or first prime): certify by trial division
        let (cand, _, _) = acc.as_ref().unwrap();
        let cand_poly = primitive_part(&IntPoly2::from_terms(cand.iter().cloned()));
        if divexact(&pa, &cand_poly).is_some() && divexact(&pb, &cand_poly).is_some() {
            return attach(cand_poly);
        }
    }
    panic!("bivariate gcd failed to stabilize (exhausted prime list)");
}

fn normalize_sign(a: &IntPoly2) -> IntPoly2 {
    if leading_sign(a) == Sign::Minus {
        a.neg()
    } else {
        a.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i32, i32, i64)]) -> IntPoly2 {
        IntPoly2::from_terms(terms.iter().map(|&(a, b, c)| ([a, b], BigInt::from(c))))
    }

    #[test]
    fn gcd_of_products_recovers_common_factor() {
        // (1 - u^4 v^4) common to both
        let f = p(&[(0, 0, 1), (4, 4, -1)]);
        let g1 = p(&[(0, 0, 1), (4, 0, -1)]);
        let g2 = p(&[(0, 0, 1), (0, 4, 1)]);
        let a = f.mul(&g1);
        let b = f.mul(&g2);
        assert_eq!(gcd(&a, &b), normalize_sign(&f));
    }

    #[test]
    fn gcd_with_contents_and_monomials() {
        let f = p(&[(1, 2, 3), (3, 2, 3)]); // 3 u v^2 (1 + u^2)
        let a = f.mul(&p(&[(0, 0, 2)]));
        let b = f.mul(&p(&[(2, 1, 4)]));
        let g = gcd(&a, &b);
        // content gcd 6, monomial gcd u v^2, polynomial part (1 + u^2)
        assert_eq!(g, p(&[(1, 2, 6), (3, 2, 6)]));
    }

    #[test]
    fn coprime_inputs_give_unit_times_content() {
        let a = p(&[(0, 0, 1), (1, 0, 1)]);
        let b = p(&[(0, 0, 1), (0, 1, 1)]);
        assert_eq!(gcd(&a, &b), IntPoly2::one());
    }

    #[test]
    fn divexact_detects_non_divisor() {
        let a = p(&[(0, 0, 1), (1, 0, 1)]);
        let b = p(&[(0, 0, 1), (0, 1, 1)]);
        assert!(divexact(&a, &b).is_none());
        assert!(divexact(&a.mul(&b), &b).is_some());
    }

    #[test]
    fn gcd_univariate_degenerate() {
        // both polynomials only involve v
        let f = p(&[(0, 0, -1), (0, 2, 1)]);
        let a = f.mul(&p(&[(0, 1, 1), (0, 0, 1)]));
        let b = f.mul(&p(&[(0, 3, 1), (0, 0, 2)]));
        assert_eq!(gcd(&a, &b), normalize_sign(&f));
    }

    #[test]
    fn big_coefficients_survive_crt() {
        // force multi-prime lifting with ~200-bit coefficients
        let big = BigInt::from(7u8).pow(80);
        let f = IntPoly2::from_terms([([0, 0], big.clone()), ([3, 1], BigInt::from(1))]);
        let a = f.mul(&p(&[(1, 0, 1), (0, 0, 5)]));
        let b = f.mul(&p(&[(0, 1, 1), (0, 0, 3)]));
        assert_eq!(gcd(&a, &b), f);
    }
}

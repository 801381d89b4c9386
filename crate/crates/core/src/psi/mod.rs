//! Genus-two Macdonald polynomials: admissibility, the Pieri coefficient,
//! table construction by the raising recursion, and the structural checks
//! (Pieri cross-relations, S3 symmetry, leading-term form, basis
//! decomposition).

mod compat;

pub use compat::{verify_compatibility_symbolic, verify_compatibility_symbolic_perturbed};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kfield::{qt_bracket_doubled, IntPoly2, KScalar};
use crate::xring::{p_generator, permute_variables, weyl_symmetric, Perm, XPolynomial};

/// Index triple (j1, j2, j3) of a genus-two Macdonald polynomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Triple(pub i64, pub i64, pub i64);

impl Triple {
    pub fn level(&self) -> i64 {
        self.0 + self.1 + self.2
    }

    /// Non-negative entries, triangle inequality |j1 - j2| <= j3 <= j1 + j2,
    /// and even total.
    pub fn is_admissible(&self) -> bool {
        let Triple(j1, j2, j3) = *self;
        j1 >= 0
            && j2 >= 0
            && j3 >= 0
            && (j1 - j2).abs() <= j3
            && j3 <= j1 + j2
            && (j1 + j2 + j3) % 2 == 0
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.0, self.1, self.2)
    }
}

/// All admissible triples with level <= max_level, sorted.
pub fn admissible_triples(max_level: i64) -> Vec<Triple> {
    let mut out = vec![];
    for j1 in 0..=max_level {
        for j2 in 0..=(max_level - j1) {
            for j3 in 0..=(max_level - j1 - j2) {
                let t = Triple(j1, j2, j3);
                if t.is_admissible() {
                    out.push(t);
                }
            }
        }
    }
    out.sort();
    out
}

fn cleared_bracket_parts(d: i64, m: i64) -> ([i64; 2], IntPoly2) {
    // numerator of [d/2, m]_{q,t} cleared to a polynomial binomial:
    // q^{d/4} t^{m/2} - q^{-d/4} t^{-m/2} = u^pref v^pref' (u^a v^b - u^c v^e)
    let e = [d, 2 * m];
    let pref = [-e[0].abs(), -e[1].abs()];
    let hi = [2 * e[0].max(0), 2 * e[1].max(0)];
    let lo = [2 * (-e[0]).max(0), 2 * (-e[1]).max(0)];
    let mut p = IntPoly2::monomial([hi[0] as i32, hi[1] as i32], 1.into());
    p.add_term([lo[0] as i32, lo[1] as i32], num::BigInt::from(-1));
    (pref, p)
}

/// The genus-two Pieri coefficient C_{a,b}(j1, j2, j3) of the recursion.
///
/// Defined for any integer triple; the four denominator brackets carry a
/// strictly positive t-power and cannot vanish, which is checked anyway.
/// Values are memoized per thread: the recursion and the basis-action
/// evaluators request the same small set of coefficients constantly.
pub fn pieri_coefficient(a: i64, b: i64, t: &Triple) -> Result<KScalar> {
    thread_local! {
        static CACHE: std::cell::RefCell<BTreeMap<(i64, i64, Triple), KScalar>> =
            std::cell::RefCell::new(BTreeMap::new());
    }
    if let Some(hit) = CACHE.with(|c| c.borrow().get(&(a, b, *t)).cloned()) {
        return Ok(hit);
    }
    let value = pieri_coefficient_uncached(a, b, t)?;
    CACHE.with(|c| c.borrow_mut().insert((a, b, *t), value.clone()));
    Ok(value)
}

fn pieri_coefficient_uncached(a: i64, b: i64, t: &Triple) -> Result<KScalar> {
    assert!(a == 1 || a == -1);
    assert!(b == 1 || b == -1);
    let Triple(j1, j2, j3) = *t;

    // first arguments doubled, second arguments plain; the denominator
    // bracket pair of j2 carries (b+3)/2, forced by the exchange symmetry
    // C_{a,b}(j1,j2,j3) = C_{b,a}(j2,j1,j3) of the recursion
    let num_brackets = [
        (a * j1 + b * j2 + j3, (a + b + 2) / 2),
        (a * j1 + b * j2 - j3, (a + b) / 2),
        (2 * j1 - 2, 2),
        (2 * j2 - 2, 2),
    ];
    let (m_a, m_b) = ((a + 3) / 2, (b + 3) / 2);
    let den_brackets = [
        (2 * j1, m_a),
        (2 * j1 - 2, m_a),
        (2 * j2, m_b),
        (2 * j2 - 2, m_b),
    ];
    for &(d, m) in &den_brackets {
        if qt_bracket_doubled(d, m).is_zero() {
            return Err(Error::VanishingDenominatorBracket(j1, j2, j3));
        }
    }

    // the (q^{1/2} - q^{-1/2}) bracket denominators cancel four against four,
    // so C is a ratio of cleared binomial products times a monomial
    let mut pref = [0i64; 2];
    let mut num = IntPoly2::constant(num::BigInt::from(a * b));
    for &(d, m) in &num_brackets {
        let ([pu, pv], p) = cleared_bracket_parts(d, m);
        pref[0] += pu;
        pref[1] += pv;
        num = num.mul(&p);
    }
    let mut den = IntPoly2::one();
    for &(d, m) in &den_brackets {
        let ([pu, pv], p) = cleared_bracket_parts(d, m);
        pref[0] -= pu;
        pref[1] -= pv;
        den = den.mul(&p);
    }
    let scalar = KScalar::from_parts(num, den)?;
    Ok(scalar.mul(&KScalar::monomial(pref[0], pref[1])))
}

/// Which of the three Pieri relations: the multiplying variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PieriVariable {
    X12,
    X13,
    X23,
}

impl PieriVariable {
    pub fn all() -> [PieriVariable; 3] {
        [PieriVariable::X12, PieriVariable::X13, PieriVariable::X23]
    }

    pub fn var_index(&self) -> usize {
        match self {
            PieriVariable::X12 => 0,
            PieriVariable::X13 => 1,
            PieriVariable::X23 => 2,
        }
    }

    /// C-argument order and the two moved j-slots for this relation.
    fn c_args(&self, t: &Triple) -> Triple {
        match self {
            PieriVariable::X12 => Triple(t.0, t.1, t.2),
            PieriVariable::X13 => Triple(t.0, t.2, t.1),
            PieriVariable::X23 => Triple(t.1, t.2, t.0),
        }
    }

    fn moved(&self) -> (usize, usize) {
        match self {
            PieriVariable::X12 => (0, 1),
            PieriVariable::X13 => (0, 2),
            PieriVariable::X23 => (1, 2),
        }
    }

    pub fn step(&self, t: &Triple, a: i64, b: i64) -> Triple {
        let mut j = [t.0, t.1, t.2];
        let (p, q) = self.moved();
        j[p] += a;
        j[q] += b;
        Triple(j[0], j[1], j[2])
    }
}

/// Table of genus-two Macdonald polynomials up to a level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PsiTable {
    entries: BTreeMap<Triple, XPolynomial>,
    max_level: i64,
}

impl PsiTable {
    /// Populate all admissible triples with level <= max_level by the
    /// canonical raising path of the recursion.
    pub fn build(max_level: i64) -> Result<PsiTable> {
        use rayon::prelude::*;
        let mut table = PsiTable {
            entries: BTreeMap::new(),
            max_level,
        };
        table.entries.insert(Triple(0, 0, 0), XPolynomial::one());
        let mut level = 2;
        while level <= max_level {
            // entries within a level depend only on lower levels
            let shell: Vec<Triple> = admissible_triples(level)
                .into_iter()
                .filter(|t| t.level() == level)
                .collect();
            let built: Vec<(Triple, Result<XPolynomial>)> = shell
                .into_par_iter()
                .map(|t| {
                    let psi = table.construct(&t);
                    (t, psi)
                })
                .collect();
            for (t, psi) in built {
                table.entries.insert(t, psi?);
            }
            level += 2;
        }
        Ok(table)
    }

    fn construct(&self, t: &Triple) -> Result<XPolynomial> {
        let Triple(j1, j2, j3) = *t;
        // canonical raising path; each case has an admissible source
        let (rel, src) = if j1 > 0 && j2 > 0 && j3 < j1 + j2 {
            (PieriVariable::X12, Triple(j1 - 1, j2 - 1, j3))
        } else if j1 > 0 && j3 > 0 {
            (PieriVariable::X13, Triple(j1 - 1, j2, j3 - 1))
        } else {
            (PieriVariable::X23, Triple(j1, j2 - 1, j3 - 1))
        };
        debug_assert!(src.is_admissible(), "source {src} must be admissible");
        debug_assert_eq!(&rel.step(&src, 1, 1), t);

        let args = rel.c_args(&src);
        let lead = pieri_coefficient(1, 1, &args)?;
        if lead.is_zero() {
            return Err(Error::Falsified(format!(
                "C_{{+1,+1}} vanishes at admissible source {src}; the raising \
                 coefficient must be nonzero"
            )));
        }
        let psi_src = self.entries.get(&src).expect("source built first");
        let mut acc = p_generator(rel.var_index()).mul(psi_src);
        for (a, b) in [(1, -1), (-1, 1), (-1, -1)] {
            let target = rel.step(&src, a, b);
            let Some(psi) = self.entries.get(&target) else {
                continue; // non-admissible target contributes zero
            };
            let c = pieri_coefficient(a, b, &args)?;
            acc = acc.sub(&psi.scale(&c));
        }
        Ok(acc.scale(&lead.inv()?))
    }

    pub fn max_level(&self) -> i64 {
        self.max_level
    }

    pub fn triples(&self) -> impl Iterator<Item = &Triple> {
        self.entries.keys()
    }

    pub fn get(&self, t: &Triple) -> Option<&XPolynomial> {
        self.entries.get(t)
    }

    /// Psi with the convention that non-admissible triples give zero;
    /// admissible triples beyond the table are a range error.
    pub fn psi(&self, t: &Triple) -> Result<XPolynomial> {
        if !t.is_admissible() {
            return Ok(XPolynomial::zero());
        }
        if t.level() > self.max_level {
            return Err(Error::LevelOutOfRange(t.0, t.1, t.2, self.max_level));
        }
        Ok(self.entries.get(t).expect("admissible in range").clone())
    }

    /// Check one Pieri relation at one triple as an exact identity.
    pub fn verify_pieri_relation(&self, which: PieriVariable, t: &Triple) -> Result<bool> {
        if t.level() + 2 > self.max_level {
            return Err(Error::LevelOutOfRange(t.0, t.1, t.2, self.max_level));
        }
        let psi = self.psi(t)?;
        let lhs = p_generator(which.var_index()).mul(&psi);
        let args = which.c_args(t);
        let mut rhs = XPolynomial::zero();
        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let target = which.step(t, a, b);
            let psi_target = self.psi(&target)?;
            if psi_target.is_zero() {
                continue;
            }
            let c = pieri_coefficient(a, b, &args)?;
            rhs = rhs.add(&psi_target.scale(&c));
        }
        Ok(lhs == rhs)
    }

    /// All three Pieri relations at every stored triple whose neighbours are
    /// stored, regardless of which relation built the entry.
    pub fn verify_all_pieri(&self, up_to_level: i64) -> Result<bool> {
        for t in admissible_triples(up_to_level.min(self.max_level - 2)) {
            for which in PieriVariable::all() {
                if !self.verify_pieri_relation(which, &t)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Simultaneous permutation symmetry: relabeling the variables by sigma
    /// matches the entry at the sigma-permuted index triple.
    pub fn verify_s3_symmetry(&self, t: &Triple, sigma: &Perm) -> Result<bool> {
        let permuted_triple = sigma_on_triple(sigma, t);
        let lhs = permute_variables(&self.psi(t)?, sigma);
        Ok(lhs == self.psi(&permuted_triple)?)
    }

    /// Leading-term structure of a stored entry; errors when the polynomial
    /// does not match the cone form, falsifying the structural lemma.
    pub fn leading_structure(&self, t: &Triple) -> Result<PsiLeading> {
        if !t.is_admissible() {
            return Err(Error::ParameterOutOfRange(format!(
                "{t} is not admissible"
            )));
        }
        let psi = self.psi(t)?;
        let Triple(j1, j2, j3) = *t;
        let d1 = (-j1 + j2 + j3) / 2;
        let d2 = (j1 - j2 + j3) / 2;
        let d3 = (j1 + j2 - j3) / 2;
        let level = t.level();
        let mut k_table = BTreeMap::new();
        for (e, c) in psi.iter() {
            let r12 = d3 - e[0] as i64;
            let r13 = d2 - e[1] as i64;
            let r23 = d1 - e[2] as i64;
            let n1 = r12 + r13;
            let n2 = r12 + r23;
            let n3 = r13 + r23;
            if n1 < 0 || n2 < 0 || n3 < 0 || n1 % 2 != 0 || n2 % 2 != 0 || n3 % 2 != 0 {
                return Err(Error::StructureViolation(format!(
                    "monomial ({}, {}, {}) of psi_{t} outside the cone",
                    e[0], e[1], e[2]
                )));
            }
            let (n1, n2, n3) = (n1 / 2, n2 / 2, n3 / 2);
            if n1 + n2 + n3 > level {
                return Err(Error::StructureViolation(format!(
                    "monomial ({}, {}, {}) of psi_{t} exceeds the degree bound",
                    e[0], e[1], e[2]
                )));
            }
            k_table.insert([n1, n2, n3], c.clone());
        }
        if !k_table.contains_key(&[0, 0, 0]) {
            return Err(Error::StructureViolation(format!(
                "K_(0,0,0) vanishes for psi_{t}"
            )));
        }
        Ok(PsiLeading {
            d: [d1, d2, d3],
            k_table,
        })
    }

    /// Expand a Weyl-symmetric Laurent polynomial in the stored basis by
    /// leading-term elimination; the reconstruction is re-checked exactly.
    pub fn decompose(&self, p: &XPolynomial) -> Result<BTreeMap<Triple, KScalar>> {
        if !weyl_symmetric(p) {
            return Err(Error::NotWeylSymmetric);
        }
        let mut rem = p.clone();
        let mut coeffs: BTreeMap<Triple, KScalar> = BTreeMap::new();
        while !rem.is_zero() {
            // leading monomial: maximal total degree, lex to break ties
            let (e, c) = rem
                .iter()
                .max_by_key(|(e, _)| (e[0] as i64 + e[1] as i64 + e[2] as i64, **e))
                .expect("nonzero remainder");
            let (d3, d2, d1) = (e[0] as i64, e[1] as i64, e[2] as i64);
            debug_assert!(
                d1 >= 0 && d2 >= 0 && d3 >= 0,
                "Weyl-symmetric leading monomial has non-negative exponents"
            );
            let t = Triple(d2 + d3, d1 + d3, d1 + d2);
            if t.level() > self.max_level {
                return Err(Error::LevelOutOfRange(t.0, t.1, t.2, self.max_level));
            }
            let psi = self.psi(&t)?;
            let k000 = psi
                .coeff(&[d3 as i32, d2 as i32, d1 as i32])
                .expect("leading coefficient of psi is nonzero");
            let factor = c.div(k000)?;
            rem = rem.sub(&psi.scale(&factor));
            let entry = coeffs.entry(t).or_insert_with(KScalar::zero);
            *entry = entry.add(&factor);
        }
        coeffs.retain(|_, c| !c.is_zero());
        // mandatory reconstruction check
        let mut rebuilt = XPolynomial::zero();
        for (t, c) in &coeffs {
            rebuilt = rebuilt.add(&self.psi(t)?.scale(c));
        }
        if &rebuilt != p {
            return Err(Error::Falsified(
                "basis decomposition failed to reconstruct its input".into(),
            ));
        }
        Ok(coeffs)
    }
}

/// sigma acting on an index triple: slot sigma(i) receives j_i.
pub fn sigma_on_triple(sigma: &Perm, t: &Triple) -> Triple {
    let j = [t.0, t.1, t.2];
    let mut out = [0i64; 3];
    for (i, val) in j.iter().enumerate() {
        out[sigma.apply(i + 1) - 1] = *val;
    }
    Triple(out[0], out[1], out[2])
}

/// Exponents and coefficient table of the leading-term expansion.
#[derive(Clone, Debug)]
pub struct PsiLeading {
    /// (d1, d2, d3) with d1 = (-j1+j2+j3)/2 etc.
    pub d: [i64; 3],
    pub k_table: BTreeMap<[i64; 3], KScalar>,
}

// JSON shape: {"max_level": L, "entries": [{"j": [...], "poly": {...}}, ...]}
#[derive(Serialize, Deserialize)]
struct TableJson {
    max_level: i64,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    j: [i64; 3],
    poly: XPolynomial,
}

impl Serialize for PsiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson {
            max_level: self.max_level,
            entries: self
                .entries
                .iter()
                .map(|(t, p)| EntryJson {
                    j: [t.0, t.1, t.2],
                    poly: p.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PsiTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TableJson::deserialize(d)?;
        let mut entries = BTreeMap::new();
        for e in raw.entries {
            entries.insert(Triple(e.j[0], e.j[1], e.j[2]), e.poly);
        }
        Ok(PsiTable {
            entries,
            max_level: raw.max_level,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kfield::qt_bracket;
    use crate::xring::x_monomial;
    use num::{BigRational, FromPrimitive};

    #[test]
    fn admissibility_examples() {
        assert!(Triple(0, 0, 0).is_admissible());
        assert!(!Triple(1, 1, 1).is_admissible()); // odd sum
        assert!(!Triple(3, 1, 1).is_admissible()); // j3 < |j1 - j2|
        assert!(Triple(1, 1, 2).is_admissible());
        assert!(!Triple(-1, 1, 0).is_admissible());
    }

    /// t^{1/2} (1 - q^l t) / (1 - q^l t^2), built explicitly.
    fn corollary2_coefficient(l: i64) -> KScalar {
        let one = KScalar::one();
        let ql = KScalar::monomial(4 * l, 0);
        let num = one.sub(&ql.mul(&KScalar::t()));
        let den = one.sub(&ql.mul(&KScalar::t()).mul(&KScalar::t()));
        KScalar::t_half().mul(&num.div(&den).unwrap())
    }

    #[test]
    fn raising_coefficient_matches_closed_form_on_diagonal() {
        for l in 0..5 {
            let c = pieri_coefficient(1, 1, &Triple(l, l, 0)).unwrap();
            assert_eq!(c, corollary2_coefficient(l), "l = {l}");
        }
    }

    #[test]
    fn lowering_coefficient_vanishes_at_boundary() {
        // j1 + j2 = j3: the (-1,-1) step leaves the admissible cone
        let c = pieri_coefficient(-1, -1, &Triple(1, 1, 2)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn mixed_coefficient_against_numeric_oracle() {
        // independent route: evaluate each bracket of the formula numerically
        let t = Triple(1, 1, 2);
        let (a, b) = (1i64, -1i64);
        let symbolic = pieri_coefficient(a, b, &t).unwrap();

        let points = [(2i64, 3i64), (3, 2), (5, 7)];
        for (pu, pv) in points {
            let u = BigRational::from_i64(pu).unwrap();
            let v = BigRational::from_i64(pv).unwrap();
            let bracket = |d: i64, m: i64| -> BigRational {
                let up = |e: i64| u.pow(e as i32);
                let vp = |e: i64| v.pow(e as i32);
                (up(d) * vp(2 * m) - up(-d) * vp(-2 * m)) / (up(2) - up(-2))
            };
            let num = bracket(a * t.0 + b * t.1 + t.2, (a + b + 2) / 2)
                * bracket(a * t.0 + b * t.1 - t.2, (a + b) / 2)
                * bracket(2 * t.0 - 2, 2)
                * bracket(2 * t.1 - 2, 2);
            let den = bracket(2 * t.0, (a + 3) / 2)
                * bracket(2 * t.0 - 2, (a + 3) / 2)
                * bracket(2 * t.1, (b + 3) / 2)
                * bracket(2 * t.1 - 2, (b + 3) / 2);
            let expect = BigRational::from_i64(a * b).unwrap() * num / den;
            assert_eq!(symbolic.eval_uv(&u, &v).unwrap(), expect);
        }
    }

    #[test]
    fn lemma1_vanishing_iff_target_nonadmissible() {
        for t in admissible_triples(8) {
            for a in [-1i64, 1] {
                for b in [-1i64, 1] {
                    let c = pieri_coefficient(a, b, &t).unwrap();
                    let target = Triple(t.0 + a, t.1 + b, t.2);
                    assert_eq!(
                        c.is_zero(),
                        !target.is_admissible(),
                        "C_{{{a},{b}}} at {t}"
                    );
                }
            }
        }
    }

    fn expected_psi_110() -> XPolynomial {
        let c = KScalar::t_half().add(&KScalar::monomial(0, -2));
        p_generator(0).scale(&c)
    }

    #[test]
    fn table_base_and_first_level() {
        let table = PsiTable::build(2).unwrap();
        assert!(table.psi(&Triple(0, 0, 0)).unwrap().is_one());
        // non-admissible lookup is zero, not an error
        assert!(table.psi(&Triple(1, 0, 0)).unwrap().is_zero());
        // one step of the x12 relation from the base
        assert_eq!(table.psi(&Triple(1, 1, 0)).unwrap(), expected_psi_110());
        // independent route: divide p12 by the Corollary 2 coefficient
        let psi = p_generator(0).scale(&corollary2_coefficient(0).inv().unwrap());
        assert_eq!(table.psi(&Triple(1, 1, 0)).unwrap(), psi);
    }

    #[test]
    fn out_of_range_admissible_lookup_errors() {
        let table = PsiTable::build(2).unwrap();
        assert!(matches!(
            table.psi(&Triple(2, 2, 0)),
            Err(Error::LevelOutOfRange(..))
        ));
    }

    #[test]
    fn pieri_relations_hold_beyond_construction_path() {
        let table = PsiTable::build(6).unwrap();
        assert!(table
            .verify_pieri_relation(PieriVariable::X12, &Triple(0, 0, 0))
            .unwrap());
        assert!(table
            .verify_pieri_relation(PieriVariable::X23, &Triple(0, 0, 0))
            .unwrap());
        assert!(table
            .verify_pieri_relation(PieriVariable::X13, &Triple(1, 1, 2))
            .unwrap());
        assert!(table.verify_all_pieri(4).unwrap());
    }

    #[test]
    fn s3_symmetry_on_small_table() {
        let table = PsiTable::build(6).unwrap();
        assert!(table
            .verify_s3_symmetry(&Triple(1, 1, 0), &Perm([2, 1, 3]))
            .unwrap());
        assert!(table
            .verify_s3_symmetry(&Triple(2, 1, 1), &Perm([2, 3, 1]))
            .unwrap());
        assert!(table
            .verify_s3_symmetry(&Triple(1, 1, 2), &Perm([1, 3, 2]))
            .unwrap());
        for t in admissible_triples(6) {
            for sigma in Perm::all() {
                assert!(table.verify_s3_symmetry(&t, &sigma).unwrap());
            }
        }
    }

    #[test]
    fn every_entry_is_weyl_symmetric_with_leading_structure() {
        let table = PsiTable::build(6).unwrap();
        for t in admissible_triples(6) {
            let psi = table.psi(&t).unwrap();
            assert!(weyl_symmetric(&psi), "psi_{t}");
            let lead = table.leading_structure(&t).unwrap();
            assert!(!lead.k_table[&[0, 0, 0]].is_zero());
        }
    }

    #[test]
    fn leading_structure_examples() {
        let table = PsiTable::build(4).unwrap();
        let base = table.leading_structure(&Triple(0, 0, 0)).unwrap();
        assert_eq!(base.d, [0, 0, 0]);
        assert!(base.k_table[&[0, 0, 0]].is_one());

        let l110 = table.leading_structure(&Triple(1, 1, 0)).unwrap();
        assert_eq!(l110.d, [0, 0, 1]);
        assert_eq!(
            l110.k_table[&[0, 0, 0]],
            KScalar::t_half().add(&KScalar::monomial(0, -2))
        );

        let l211 = table.leading_structure(&Triple(2, 1, 1)).unwrap();
        assert_eq!(l211.d, [0, 1, 1]);
        assert!(!l211.k_table[&[0, 0, 0]].is_zero());
    }

    #[test]
    fn leading_structure_rejects_cone_violations() {
        let mut table = PsiTable::build(2).unwrap();
        // corrupt an entry with a monomial outside the cone
        let bad = table
            .psi(&Triple(1, 1, 0))
            .unwrap()
            .add(&x_monomial(5, 0, 0, KScalar::one()));
        table.entries.insert(Triple(1, 1, 0), bad);
        assert!(matches!(
            table.leading_structure(&Triple(1, 1, 0)),
            Err(Error::StructureViolation(_))
        ));
    }

    #[test]
    fn decompose_examples() {
        let table = PsiTable::build(4).unwrap();
        let d = table.decompose(&XPolynomial::one()).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d[&Triple(0, 0, 0)].is_one());

        // p12 = psi_110 / (t^{1/2} + t^{-1/2})
        let d = table.decompose(&p_generator(0)).unwrap();
        assert_eq!(d.len(), 1);
        let expect = KScalar::t_half()
            .add(&KScalar::monomial(0, -2))
            .inv()
            .unwrap();
        assert_eq!(d[&Triple(1, 1, 0)], expect);

        // a product decomposes with finite support and exact reconstruction
        let p = p_generator(0).mul(&p_generator(2));
        let d = table.decompose(&p).unwrap();
        assert!(!d.is_empty());

        assert!(matches!(
            table.decompose(&x_monomial(1, 0, 0, KScalar::one())),
            Err(Error::NotWeylSymmetric)
        ));
    }

    #[test]
    fn bracket_consistency_with_doubled_form() {
        for n in -4..=4 {
            for m in -2..=2 {
                assert_eq!(qt_bracket(n, m), qt_bracket_doubled(2 * n, m));
            }
        }
    }
}

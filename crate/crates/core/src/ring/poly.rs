use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::Degree;

/// Exact element of `Z[t, t^-1, s, s^-1]`.
///
/// Terms are keyed by `(s exponent, t exponent)` so iteration yields the
/// canonical order: ascending by `s` power, then by `t` power. Zero
/// coefficients are never stored; the zero polynomial is the empty map.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i32, i32), BigInt>,
}

/// Exact element of `Z[t, t^-1]`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TPoly {
    terms: BTreeMap<i32, BigInt>,
}

fn insert_term<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `c * t^a * s^b`.
    pub fn monomial(c: impl Into<BigInt>, a: i32, b: i32) -> Self {
        let mut p = Self::zero();
        insert_term(&mut p.terms, (b, a), c.into());
        p
    }

    pub fn t() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn s() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// Builds a polynomial from `(c, a, b)` triples meaning `c * t^a * s^b`;
    /// repeated exponents are summed.
    pub fn from_terms<C, I>(terms: I) -> Self
    where
        C: Into<BigInt>,
        I: IntoIterator<Item = (C, i32, i32)>,
    {
        let mut p = Self::zero();
        for (c, a, b) in terms {
            insert_term(&mut p.terms, (b, a), c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(coefficient, t exponent, s exponent)` in canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BigInt, i32, i32)> + '_ {
        self.terms.iter().map(|(&(b, a), c)| (c, a, b))
    }

    /// Highest and lowest power of `s`, with the infinite sentinels for zero.
    pub fn s_degree_range(&self) -> (Degree, Degree) {
        match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(&(lo, _)), Some(&(hi, _))) => (Degree::Finite(hi as i64), Degree::Finite(lo as i64)),
            _ => (Degree::NegInf, Degree::PosInf),
        }
    }

    /// Coefficient of `s^k`, as a polynomial in `t`.
    pub fn coeff_s(&self, k: i32) -> TPoly {
        let mut out = TPoly::zero();
        for (&(_, a), c) in self.terms.range((k, i32::MIN)..=(k, i32::MAX)) {
            out.terms.insert(a, c.clone());
        }
        out
    }

    /// Image under `s -> s^-1`.
    pub fn invert_s(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(b, a), c)| ((-b, a), c.clone())).collect(),
        }
    }

    /// Multiplication by `t^l`.
    pub fn mul_t_pow(&self, l: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(b, a), c)| ((b, a + l), c.clone())).collect(),
        }
    }

    /// Multiplication by `s^l`.
    pub fn mul_s_pow(&self, l: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(b, a), c)| ((b + l, a), c.clone())).collect(),
        }
    }

    /// The polynomial as an element of `Z[t, t^-1]`, if it has no `s`.
    pub fn to_tpoly(&self) -> Option<TPoly> {
        if self.terms.keys().any(|&(b, _)| b != 0) {
            return None;
        }
        Some(self.coeff_s(0))
    }

    /// The unique `l` with `self = t^l * other`, if any.
    pub fn equal_up_to_t_power(&self, other: &Self) -> Option<i32> {
        match (self.terms.iter().next(), other.terms.iter().next()) {
            (None, None) => Some(0),
            (Some((&(b1, a1), _)), Some((&(b2, _a2), _))) if b1 == b2 => {
                let l = a1 - other.terms.keys().next().unwrap().1;
                (other.mul_t_pow(l) == *self).then_some(l)
            }
            _ => None,
        }
    }

    fn leading(&self) -> Option<((i32, i32), &BigInt)> {
        self.terms.iter().next_back().map(|(&k, c)| (k, c))
    }

    fn t_range(&self) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|&(_, a)| a).min()?;
        let hi = self.terms.keys().map(|&(_, a)| a).max()?;
        Some((lo, hi))
    }

    /// Exact quotient `self / divisor`, or `None` when the division does not
    /// come out exactly in `Z[t^±1, s^±1]`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let ((db, da), dc) = divisor.leading()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Any exact quotient lives in this exponent box; both gradings are
        // additive over an integral domain.
        let (nt_lo, nt_hi) = self.t_range()?;
        let (dt_lo, dt_hi) = divisor.t_range()?;
        let (ns_hi, ns_lo) = (self.terms.keys().next_back()?.0, self.terms.keys().next()?.0);
        let (ds_hi, ds_lo) = (divisor.terms.keys().next_back()?.0, divisor.terms.keys().next()?.0);
        let t_box = (nt_lo - dt_lo, nt_hi - dt_hi);
        let s_box = (ns_lo - ds_lo, ns_hi - ds_hi);
        if t_box.0 > t_box.1 || s_box.0 > s_box.1 {
            return None;
        }

        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(((rb, ra), rc)) = rem.leading() {
            let (qb, qa) = (rb - db, ra - da);
            if qb < s_box.0 || qb > s_box.1 || qa < t_box.0 || qa > t_box.1 {
                return None;
            }
            if !(rc % dc).is_zero() {
                return None;
            }
            let qc = rc / dc;
            let step = Self::monomial(qc.clone(), qa, qb);
            rem -= &(&step * divisor);
            insert_term(&mut quot.terms, (qb, qa), qc);
        }
        Some(quot)
    }

    /// The canonical JSON form: `[c, a, b]` triples in canonical order.
    pub fn to_triples(&self) -> Vec<(BigInt, i32, i32)> {
        self.terms().map(|(c, a, b)| (c.clone(), a, b)).collect()
    }
}

impl TPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, a: i32) -> Self {
        let mut p = Self::zero();
        insert_term(&mut p.terms, a, c.into());
        p
    }

    /// `t^a - 1`.
    pub fn t_pow_minus_one(a: i32) -> Self {
        Self::from_terms([(1, a), (-1, 0)])
    }

    pub fn from_terms<C, I>(terms: I) -> Self
    where
        C: Into<BigInt>,
        I: IntoIterator<Item = (C, i32)>,
    {
        let mut p = Self::zero();
        for (c, a) in terms {
            insert_term(&mut p.terms, a, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(coefficient, t exponent)`, ascending.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&BigInt, i32)> + '_ {
        self.terms.iter().map(|(&a, c)| (c, a))
    }

    pub fn to_poly2(&self) -> LaurentPoly2 {
        LaurentPoly2::from_terms(self.terms.iter().map(|(&a, c)| (c.clone(), a, 0)))
    }

    pub fn to_triples(&self) -> Vec<(BigInt, i32, i32)> {
        self.to_poly2().to_triples()
    }
}

impl From<TPoly> for LaurentPoly2 {
    fn from(p: TPoly) -> Self {
        p.to_poly2()
    }
}

impl From<i64> for LaurentPoly2 {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }
}

macro_rules! ring_ops {
    ($ty:ty) => {
        impl AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                for (k, c) in &rhs.terms {
                    insert_term(&mut self.terms, *k, c.clone());
                }
            }
        }

        impl SubAssign<&$ty> for $ty {
            fn sub_assign(&mut self, rhs: &$ty) {
                for (k, c) in &rhs.terms {
                    insert_term(&mut self.terms, *k, -c);
                }
            }
        }

        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out += rhs;
                out
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(mut self, rhs: $ty) -> $ty {
                self += &rhs;
                self
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                out -= rhs;
                out
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(mut self, rhs: $ty) -> $ty {
                self -= &rhs;
                self
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                let mut out = self.clone();
                for c in out.terms.values_mut() {
                    *c = -&*c;
                }
                out
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }

        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }

        impl std::iter::Sum for $ty {
            fn sum<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                iter.fold(<$ty>::zero(), |acc, p| acc + p)
            }
        }

        impl std::iter::Product for $ty {
            fn product<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                iter.fold(<$ty>::one(), |acc, p| acc * p)
            }
        }
    };
}

ring_ops!(LaurentPoly2);
ring_ops!(TPoly);

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (&(b1, a1), c1) in &self.terms {
            for (&(b2, a2), c2) in &rhs.terms {
                insert_term(&mut out.terms, (b1 + b2, a1 + a2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        for (&a1, c1) in &self.terms {
            for (&a2, c2) in &rhs.terms {
                insert_term(&mut out.terms, a1 + a2, c1 * c2);
            }
        }
        out
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigInt,
    factors: &[(&str, i32)],
) -> fmt::Result {
    let negative = c.is_negative();
    match (first, negative) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    let magnitude = c.abs();
    let vars: Vec<String> = factors
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    if vars.is_empty() {
        return write!(f, "{magnitude}");
    }
    if !magnitude.is_one() {
        write!(f, "{magnitude}*")?;
    }
    f.write_str(&vars.join("*"))
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (c, a, b)) in self.terms().enumerate() {
            write_term(f, i == 0, c, &[("t", a), ("s", b)])?;
        }
        Ok(())
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_poly2(), f)
    }
}

impl fmt::Debug for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly2({self})")
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly({self})")
    }
}

fn serialize_triples<S: Serializer>(
    triples: Vec<(BigInt, i32, i32)>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_seq(Some(triples.len()))?;
    for (c, a, b) in triples {
        // Coefficients past i64 range are written as decimal strings.
        match c.to_i64() {
            Some(small) => seq.serialize_element(&(small, a, b))?,
            None => seq.serialize_element(&(c.to_string(), a, b))?,
        }
    }
    seq.end()
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_triples(self.to_triples(), serializer)
    }
}

impl Serialize for TPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize_triples(self.to_triples(), serializer)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial term `{0}`")]
pub struct PolyParseError(pub String);

impl FromStr for LaurentPoly2 {
    type Err = PolyParseError;

    /// Accepts the canonical textual form (`2*t^-1*s - t + 1`) and any
    /// order of terms or factors within a term.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyParseError(text.to_string()));
        }
        // Split into signed terms; a sign directly after `^` belongs to an exponent.
        let mut pieces = Vec::new();
        let mut current = String::new();
        let mut prev = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') && !current.is_empty() {
                pieces.push(std::mem::take(&mut current));
            }
            current.push(ch);
            prev = Some(ch);
        }
        pieces.push(current);

        let mut out = Self::zero();
        for piece in pieces {
            let (negative, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece.as_str()),
            };
            if body.is_empty() {
                return Err(PolyParseError(piece.clone()));
            }
            let mut coeff = BigInt::one();
            let (mut a, mut b) = (0i32, 0i32);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((base, exp)) => {
                        (base, exp.parse::<i32>().map_err(|_| PolyParseError(piece.clone()))?)
                    }
                    None => (factor, 1),
                };
                match base {
                    "t" => a += exp,
                    "s" => b += exp,
                    digits if factor == base => {
                        coeff *= digits.parse::<BigInt>().map_err(|_| PolyParseError(piece.clone()))?;
                    }
                    _ => return Err(PolyParseError(piece.clone())),
                }
            }
            if negative {
                coeff = -coeff;
            }
            insert_term(&mut out.terms, (b, a), coeff);
        }
        Ok(out)
    }
}

impl FromStr for TPoly {
    type Err = PolyParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let p: LaurentPoly2 = text.parse()?;
        p.to_tpoly().ok_or_else(|| PolyParseError(text.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> LaurentPoly2 {
        text.parse().unwrap()
    }

    #[test]
    fn addition() {
        assert!((p("t - 1") + p("1 - t")).is_zero());
        assert_eq!(LaurentPoly2::zero() + p("t*s^-2 + 3"), p("t*s^-2 + 3"));
        assert_eq!(p("t*s") + p("t*s"), p("2*t*s"));
    }

    #[test]
    fn multiplication() {
        assert_eq!(p("t^-1 - 1") * p("t^-2 + 1"), p("t^-3 - t^-2 + t^-1 - 1"));
        let q = p("5*t^2*s - s^-1 + 7");
        assert_eq!(&q * &LaurentPoly2::one(), q);
        assert!((p("s") * p("s^-1")).is_one());
    }

    #[test]
    fn degree_range() {
        assert_eq!(
            p("t - 1").s_degree_range(),
            (Degree::Finite(0), Degree::Finite(0))
        );
        let e1 = p("t*s^-1 - s^-1 - t + 1");
        assert_eq!(e1.s_degree_range(), (Degree::Finite(0), Degree::Finite(-1)));
        assert_eq!(LaurentPoly2::zero().s_degree_range(), (Degree::NegInf, Degree::PosInf));
        assert_eq!(p("3*t^2*s^5").s_degree_range(), (Degree::Finite(5), Degree::Finite(5)));
    }

    #[test]
    fn s_coefficients() {
        let e1 = p("t*s^-1 - s^-1 - t + 1");
        assert_eq!(e1.coeff_s(-1), "t - 1".parse::<TPoly>().unwrap());
        assert!(LaurentPoly2::zero().coeff_s(4).is_zero());
        assert_eq!(p("t*s^2").coeff_s(2), TPoly::monomial(1, 1));
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p("-1 + t^-1 - t^-2 + t^-3").to_string(), "t^-3 - t^-2 + t^-1 - 1");
        assert_eq!(p("t - 1").to_string(), "-1 + t");
        assert_eq!(p("-t*s + 2*s^-1*t^3").to_string(), "2*t^3*s^-1 - t*s");
        assert_eq!(LaurentPoly2::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
    }

    #[test]
    fn canonical_json() {
        let json = serde_json::to_string(&p("t*s^-1 - s^-1 - t + 1")).unwrap();
        assert_eq!(json, "[[-1,0,-1],[1,1,-1],[1,0,0],[-1,1,0]]");
        assert_eq!(serde_json::to_string(&LaurentPoly2::zero()).unwrap(), "[]");
    }

    #[test]
    fn t_power_equivalence() {
        assert_eq!(p("t*s - t^2").equal_up_to_t_power(&p("s - t")), Some(1));
        assert_eq!(LaurentPoly2::zero().equal_up_to_t_power(&LaurentPoly2::zero()), Some(0));
        assert_eq!(p("s").equal_up_to_t_power(&p("s + 1")), None);
        assert_eq!(p("s").equal_up_to_t_power(&LaurentPoly2::zero()), None);
        assert_eq!(p("t^-4*s^2").equal_up_to_t_power(&p("s^2")), Some(-4));
    }

    #[test]
    fn exact_division() {
        let a = p("t - 1 + s^-1*t^2");
        let b = p("s - t^-1 + 3*s^2");
        assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
        assert_eq!(p("t + 1").exact_div(&p("t - 1")), None);
        assert_eq!(p("2*t").exact_div(&p("4")), None);
        assert_eq!(LaurentPoly2::zero().exact_div(&a), Some(LaurentPoly2::zero()));
        assert_eq!(a.exact_div(&LaurentPoly2::zero()), None);
    }

    #[test]
    fn rejects_garbage() {
        assert!("t^".parse::<LaurentPoly2>().is_err());
        assert!("x + 1".parse::<LaurentPoly2>().is_err());
        assert!("".parse::<LaurentPoly2>().is_err());
        assert!("s".parse::<TPoly>().is_err());
    }
}

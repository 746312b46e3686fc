//! Laurent polynomials in the half power `v`, with `v^2 = q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CoeffError;

/// Element of `Z[v, v^-1]`, stored as exponent -> coefficient with no zero
/// coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentHalf {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentHalf {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The generator `v = q^{1/2}`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    /// `q = v^2`.
    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, &c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `v^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Units of `Z[v^{±1}]` are exactly `±v^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if c.abs().is_one() {
            Some(Self::monomial(c.clone(), -e))
        } else {
            None
        }
    }

    /// Exact quotient `self / divisor` when it exists in `Z[v^{±1}]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (d_lead_e, d_lead_c) = divisor.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // quotient exponents are bounded below once the divisor's low term is fixed
        let floor = self.min_exponent()? - divisor.min_exponent()?;
        while !rem.is_zero() {
            let (re, rc) = rem.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
            if re - d_lead_e < floor {
                return None;
            }
            if !(&rc % &d_lead_c).is_zero() {
                return None;
            }
            let t = Self::monomial(&rc / &d_lead_c, re - d_lead_e);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Substitutes `v = value` using the supplied ring operations.
    pub fn eval_with<T, F>(&self, mut term: F, zero: T, add: impl Fn(T, T) -> T) -> T
    where
        F: FnMut(i64, &BigInt) -> T,
    {
        let mut acc = zero;
        for (e, c) in &self.terms {
            acc = add(acc, term(*e, c));
        }
        acc
    }

    /// Human-oriented rendering in `v`, e.g. `v^2 - 1 + 3*v^-1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => "v".to_string(),
                e => format!("v^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentHalf {
    /// Canonical form: `c*v^e` terms in increasing exponent joined by `+`;
    /// zero is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            write!(f, "{c}*v^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentHalf({self})")
    }
}

impl FromStr for LaurentHalf {
    type Err = CoeffError;

    /// Parses the canonical form. A bare integer `c` is accepted as `c*v^0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || CoeffError::Parse(s.to_string());
        if s == "0" {
            return Ok(Self::zero());
        }
        if s.is_empty() {
            return Err(bad());
        }
        let mut out = Self::zero();
        for part in s.split('+') {
            let part = part.trim();
            let (c, e) = match part.split_once("*v^") {
                Some((c, e)) => (c, e),
                None => (part, "0"),
            };
            let c: BigInt = c.trim().parse().map_err(|_| bad())?;
            let e: i64 = e.trim().parse().map_err(|_| bad())?;
            out.add_term(e, &c);
        }
        Ok(out)
    }
}

impl Serialize for LaurentHalf {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentHalf {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for LaurentHalf {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a LaurentHalf> for &'a LaurentHalf {
    type Output = LaurentHalf;
    fn add(self, rhs: &LaurentHalf) -> LaurentHalf {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentHalf {
    type Output = LaurentHalf;
    fn add(mut self, rhs: LaurentHalf) -> LaurentHalf {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentHalf> for LaurentHalf {
    fn add_assign(&mut self, rhs: &LaurentHalf) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&LaurentHalf> for LaurentHalf {
    fn sub_assign(&mut self, rhs: &LaurentHalf) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, &-c);
        }
    }
}

impl<'a> Sub<&'a LaurentHalf> for &'a LaurentHalf {
    type Output = LaurentHalf;
    fn sub(self, rhs: &LaurentHalf) -> LaurentHalf {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentHalf {
    type Output = LaurentHalf;
    fn sub(mut self, rhs: LaurentHalf) -> LaurentHalf {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentHalf {
    type Output = LaurentHalf;
    fn neg(self) -> LaurentHalf {
        LaurentHalf {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentHalf {
    type Output = LaurentHalf;
    fn neg(self) -> LaurentHalf {
        -&self
    }
}

impl<'a> Mul<&'a LaurentHalf> for &'a LaurentHalf {
    type Output = LaurentHalf;
    fn mul(self, rhs: &LaurentHalf) -> LaurentHalf {
        let mut out = LaurentHalf::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for LaurentHalf {
    type Output = LaurentHalf;
    fn mul(self, rhs: LaurentHalf) -> LaurentHalf {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lh(terms: &[(i64, i64)]) -> LaurentHalf {
        LaurentHalf::from_terms(terms.iter().copied())
    }

    #[test]
    fn v_times_v_is_q() {
        assert_eq!(&LaurentHalf::v() * &LaurentHalf::v(), LaurentHalf::q());
    }

    #[test]
    fn difference_of_squares() {
        let a = lh(&[(1, 1), (-1, -1)]);
        let b = lh(&[(1, 1), (-1, 1)]);
        assert_eq!(&a * &b, lh(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn square_of_one_plus_v() {
        let a = lh(&[(0, 1), (1, 1)]);
        assert_eq!(&a * &a, lh(&[(0, 1), (1, 2), (2, 1)]));
    }

    #[test]
    fn no_zero_terms_stored() {
        let a = lh(&[(3, 2), (3, -2), (1, 0)]);
        assert!(a.is_zero());
        assert_eq!(a.to_string(), "0");
    }

    #[test]
    fn canonical_string() {
        let a = lh(&[(2, 1), (-1, -3), (0, 5)]);
        assert_eq!(a.to_string(), "-3*v^-1+5*v^0+1*v^2");
        assert_eq!(a.pretty(), "v^2 + 5 - 3*v^-1");
        assert_eq!("7".parse::<LaurentHalf>().unwrap(), LaurentHalf::constant(7));
        assert!("1*v^".parse::<LaurentHalf>().is_err());
        assert!("".parse::<LaurentHalf>().is_err());
    }

    #[test]
    fn exact_division() {
        let a = lh(&[(0, 1), (1, 1)]);
        let b = lh(&[(-1, 1), (0, 2), (4, -3)]);
        assert_eq!((&a * &b).div_exact(&a), Some(b.clone()));
        assert_eq!(lh(&[(0, 1)]).div_exact(&lh(&[(0, 2)])), None);
        assert_eq!(lh(&[(0, 1), (2, 1)]).div_exact(&a), None);
        assert_eq!(LaurentHalf::v_pow(-3).unit_inverse(), Some(LaurentHalf::v_pow(3)));
        assert_eq!(LaurentHalf::constant(2).unit_inverse(), None);
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentHalf> {
        prop::collection::vec((-4i64..5, -20i64..21), 0..5).prop_map(|t| LaurentHalf::from_terms(t))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &LaurentHalf::one(), a.clone());
            prop_assert_eq!(&a + &(-&a), LaurentHalf::zero());
        }

        #[test]
        fn serialization_round_trips(a in arb_laurent()) {
            let s = a.to_string();
            prop_assert_eq!(s.parse::<LaurentHalf>().unwrap(), a.clone());
            let json = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentHalf>(&json).unwrap(), a);
        }
    }
}

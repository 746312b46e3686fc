//! Exact coefficient arithmetic.
//!
//! Everything downstream is written against the [`Ring`] trait so the same
//! code runs over formal Laurent polynomials in `v = q^{1/2}`, over the
//! rationals with a fixed value of `v`, over a prime field with a chosen
//! square root of `q`, and over the symbolic torus ring of the characters
//! module.

mod laurent;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use laurent::LaurentHalf;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("v = {v} does not square to q = {q} modulo {ell}")]
    BadSquareRoot { ell: u64, q: u64, v: u64 },
    #[error("v must be nonzero")]
    ZeroV,
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("{0} is not invertible")]
    NotInvertible(String),
}

/// A commutative ring with exact arithmetic.
///
/// Elements are plain values; the ring value carries whatever context they
/// need (a modulus, the numeric value of `v`).
pub trait Ring: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an element of `Z[v^{±1}]`.
    fn embed(&self, x: &LaurentHalf) -> Self::Elem;
    fn render(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, CoeffError>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut out = self.one();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = self.mul(&out, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        out
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// `Z[v^{±1}]` itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FormalRing;

impl Ring for FormalRing {
    type Elem = LaurentHalf;

    fn zero(&self) -> LaurentHalf {
        LaurentHalf::zero()
    }
    fn one(&self) -> LaurentHalf {
        LaurentHalf::one()
    }
    fn from_int(&self, n: i64) -> LaurentHalf {
        LaurentHalf::constant(n)
    }
    fn add(&self, a: &LaurentHalf, b: &LaurentHalf) -> LaurentHalf {
        a + b
    }
    fn neg(&self, a: &LaurentHalf) -> LaurentHalf {
        -a
    }
    fn mul(&self, a: &LaurentHalf, b: &LaurentHalf) -> LaurentHalf {
        a * b
    }
    fn is_zero(&self, a: &LaurentHalf) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &LaurentHalf) -> Option<LaurentHalf> {
        a.unit_inverse()
    }
    fn embed(&self, x: &LaurentHalf) -> LaurentHalf {
        x.clone()
    }
    fn render(&self, a: &LaurentHalf) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<LaurentHalf, CoeffError> {
        s.parse()
    }
}

/// The rationals, with `v` sent to a fixed nonzero rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalRing {
    v: BigRational,
}

impl RationalRing {
    pub fn new(v: BigRational) -> Result<Self, CoeffError> {
        if v.is_zero() {
            return Err(CoeffError::ZeroV);
        }
        Ok(Self { v })
    }

    pub fn v(&self) -> &BigRational {
        &self.v
    }
}

fn parse_rational(s: &str) -> Result<BigRational, CoeffError> {
    let s = s.trim();
    let bad = || CoeffError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(CoeffError::ZeroDenominator);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Ring for RationalRing {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn embed(&self, x: &LaurentHalf) -> BigRational {
        x.terms().fold(BigRational::zero(), |acc, (e, c)| {
            let p = if e >= 0 {
                num_traits::pow(self.v.clone(), e as usize)
            } else {
                num_traits::pow(self.v.recip(), (-e) as usize)
            };
            acc + p * BigRational::from_integer(c.clone())
        })
    }
    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }
    fn parse(&self, s: &str) -> Result<BigRational, CoeffError> {
        parse_rational(s)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns whether `v_image` is a nonzero square root of `q_residue` mod `ell`.
pub fn validate_sqrt(ell: u64, q_residue: u64, v_image: u64) -> Result<bool, CoeffError> {
    if !is_prime(ell) {
        return Err(CoeffError::NotPrime(ell));
    }
    let v = v_image % ell;
    let q = q_residue % ell;
    Ok(v != 0 && mul_mod(v, v, ell) == q)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut n: u64, m: u64) -> u64 {
    let mut out = 1 % m;
    a %= m;
    while n > 0 {
        if n & 1 == 1 {
            out = mul_mod(out, a, m);
        }
        a = mul_mod(a, a, m);
        n >>= 1;
    }
    out
}

/// `F_ell` with a chosen image of `v` satisfying `v^2 = q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeField {
    ell: u64,
    q: u64,
    v: u64,
}

impl PrimeField {
    pub fn new(ell: u64, q_residue: u64, v_image: u64) -> Result<Self, CoeffError> {
        if !validate_sqrt(ell, q_residue, v_image)? {
            if v_image % ell == 0 {
                return Err(CoeffError::ZeroV);
            }
            return Err(CoeffError::BadSquareRoot { ell, q: q_residue % ell, v: v_image % ell });
        }
        Ok(Self { ell, q: q_residue % ell, v: v_image % ell })
    }

    /// Uses `q := v^2 mod ell`.
    pub fn from_v(ell: u64, v_image: u64) -> Result<Self, CoeffError> {
        if !is_prime(ell) {
            return Err(CoeffError::NotPrime(ell));
        }
        let v = v_image % ell;
        Self::new(ell, mul_mod(v, v, ell), v)
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn reduce_int(&self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.ell)).to_u64().expect("residue fits in u64")
    }

    fn inv_residue(&self, a: u64) -> Option<u64> {
        (a % self.ell != 0).then(|| pow_mod(a, self.ell - 2, self.ell))
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.ell
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.ell as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.ell as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.ell - a % self.ell) % self.ell
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.ell)
    }
    fn is_zero(&self, a: &u64) -> bool {
        a % self.ell == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        self.inv_residue(*a)
    }
    fn embed(&self, x: &LaurentHalf) -> u64 {
        let v_inv = self.inv_residue(self.v).expect("v is a unit");
        x.terms().fold(0, |acc, (e, c)| {
            let p = if e >= 0 {
                pow_mod(self.v, e as u64, self.ell)
            } else {
                pow_mod(v_inv, e.unsigned_abs(), self.ell)
            };
            self.add(&acc, &mul_mod(p, self.reduce_int(c), self.ell))
        })
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64, CoeffError> {
        let n: BigInt = s.trim().parse().map_err(|_| CoeffError::Parse(s.to_string()))?;
        Ok(self.reduce_int(&n))
    }
}

/// Which coefficient ring a computation runs in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ScalarDomain {
    FormalLaurent,
    RationalWithV {
        #[serde(with = "rational_string")]
        v_value: BigRational,
    },
    PrimeFieldWithV { ell: u64, q: u64, v_image: u64 },
}

mod rational_string {
    use super::{parse_rational, render_rational};
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

impl ScalarDomain {
    pub fn rational(v: i64) -> Self {
        ScalarDomain::RationalWithV { v_value: BigRational::from_integer(v.into()) }
    }

    pub fn prime_field(ell: u64, q: u64, v_image: u64) -> Result<Self, CoeffError> {
        let f = PrimeField::new(ell, q, v_image)?;
        Ok(ScalarDomain::PrimeFieldWithV { ell: f.ell, q: f.q, v_image: f.v })
    }

    /// Checks the domain's own invariants.
    pub fn validate(&self) -> Result<(), CoeffError> {
        match self {
            ScalarDomain::FormalLaurent => Ok(()),
            ScalarDomain::RationalWithV { v_value } => RationalRing::new(v_value.clone()).map(|_| ()),
            ScalarDomain::PrimeFieldWithV { ell, q, v_image } => PrimeField::new(*ell, *q, *v_image).map(|_| ()),
        }
    }
}

/// Text form `formal`, `rat:v=<r>` or `ell=<p>,v=<r>[,q=<s>]`; when `q` is
/// omitted it is taken to be `v^2 mod p`.
impl std::str::FromStr for ScalarDomain {
    type Err = CoeffError;

    fn from_str(s: &str) -> Result<Self, CoeffError> {
        let s = s.trim();
        let bad = || CoeffError::Parse(s.to_string());
        if s == "formal" {
            return Ok(ScalarDomain::FormalLaurent);
        }
        if let Some(v) = s.strip_prefix("rat:v=") {
            let dom = ScalarDomain::RationalWithV { v_value: parse_rational(v)? };
            dom.validate()?;
            return Ok(dom);
        }
        let (mut ell, mut v, mut q) = (None, None, None);
        for part in s.split(',') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            let value: u64 = value.trim().parse().map_err(|_| bad())?;
            let slot = match key.trim() {
                "ell" => &mut ell,
                "v" => &mut v,
                "q" => &mut q,
                _ => return Err(bad()),
            };
            if slot.replace(value).is_some() {
                return Err(bad());
            }
        }
        let (ell, v) = (ell.ok_or_else(bad)?, v.ok_or_else(bad)?);
        let field = match q {
            Some(q) => PrimeField::new(ell, q, v)?,
            None => PrimeField::from_v(ell, v)?,
        };
        Ok(ScalarDomain::PrimeFieldWithV { ell: field.ell, q: field.q, v_image: field.v })
    }
}

/// A value in some [`ScalarDomain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Laurent(LaurentHalf),
    Rational(BigRational),
    Residue(u64),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Laurent(x) => write!(f, "{x}"),
            Scalar::Rational(r) => f.write_str(&render_rational(r)),
            Scalar::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl Ring for ScalarDomain {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        self.from_int(0)
    }
    fn one(&self) -> Scalar {
        self.from_int(1)
    }
    fn from_int(&self, n: i64) -> Scalar {
        self.embed(&LaurentHalf::constant(n))
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.binary(a, b, |r, x, y| r.add(x, y), |r, x, y| r.add(x, y), |r, x, y| r.add(x, y))
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        let z = self.zero();
        self.binary(&z, a, |r, x, y| r.sub(x, y), |r, x, y| r.sub(x, y), |r, x, y| r.sub(x, y))
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.binary(a, b, |r, x, y| r.mul(x, y), |r, x, y| r.mul(x, y), |r, x, y| r.mul(x, y))
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Laurent(x) => x.is_zero(),
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Residue(x) => *x == 0,
        }
    }
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (ScalarDomain::FormalLaurent, Scalar::Laurent(x)) => x.unit_inverse().map(Scalar::Laurent),
            (ScalarDomain::RationalWithV { .. }, Scalar::Rational(x)) => {
                (!x.is_zero()).then(|| Scalar::Rational(x.recip()))
            }
            (ScalarDomain::PrimeFieldWithV { .. }, Scalar::Residue(x)) => self.field().inv(x).map(Scalar::Residue),
            _ => panic!("scalar {a:?} does not belong to {self:?}"),
        }
    }
    fn embed(&self, x: &LaurentHalf) -> Scalar {
        match self {
            ScalarDomain::FormalLaurent => Scalar::Laurent(x.clone()),
            ScalarDomain::RationalWithV { v_value } => Scalar::Rational(RationalRing { v: v_value.clone() }.embed(x)),
            ScalarDomain::PrimeFieldWithV { .. } => Scalar::Residue(self.field().embed(x)),
        }
    }
    fn render(&self, a: &Scalar) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<Scalar, CoeffError> {
        Ok(match self {
            ScalarDomain::FormalLaurent => Scalar::Laurent(s.parse()?),
            ScalarDomain::RationalWithV { .. } => Scalar::Rational(parse_rational(s)?),
            ScalarDomain::PrimeFieldWithV { .. } => Scalar::Residue(self.field().parse(s)?),
        })
    }
}

impl ScalarDomain {
    fn field(&self) -> PrimeField {
        match self {
            ScalarDomain::PrimeFieldWithV { ell, q, v_image } => PrimeField { ell: *ell, q: *q, v: *v_image },
            _ => unreachable!("not a prime field domain"),
        }
    }

    fn binary(
        &self,
        a: &Scalar,
        b: &Scalar,
        lf: impl Fn(&FormalRing, &LaurentHalf, &LaurentHalf) -> LaurentHalf,
        rf: impl Fn(&RationalRing, &BigRational, &BigRational) -> BigRational,
        pf: impl Fn(&PrimeField, &u64, &u64) -> u64,
    ) -> Scalar {
        match (self, a, b) {
            (ScalarDomain::FormalLaurent, Scalar::Laurent(x), Scalar::Laurent(y)) => Scalar::Laurent(lf(&FormalRing, x, y)),
            (ScalarDomain::RationalWithV { v_value }, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(rf(&RationalRing { v: v_value.clone() }, x, y))
            }
            (ScalarDomain::PrimeFieldWithV { .. }, Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(pf(&self.field(), x, y))
            }
            _ => panic!("scalars {a:?}, {b:?} do not belong to {self:?}"),
        }
    }
}

/// Image of `x` under the ring map `Z[v^{±1}] -> dom`.
pub fn reduce_scalar(x: &LaurentHalf, dom: &ScalarDomain) -> Result<Scalar, CoeffError> {
    dom.validate()?;
    Ok(dom.embed(x))
}

/// A ring element over a single nonzero `Z[v^{±1}]` scalar denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FracScaled<T> {
    numerator: T,
    denominator: LaurentHalf,
}

impl<T> FracScaled<T> {
    pub fn new(numerator: T, denominator: LaurentHalf) -> Result<Self, CoeffError> {
        if denominator.is_zero() {
            return Err(CoeffError::ZeroDenominator);
        }
        Ok(Self { numerator, denominator })
    }

    pub fn numerator(&self) -> &T {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentHalf {
        &self.denominator
    }

    /// The numerator, when the denominator is 1.
    pub fn as_integral(&self) -> Option<&T> {
        self.denominator.is_one().then_some(&self.numerator)
    }

    pub fn into_parts(self) -> (T, LaurentHalf) {
        (self.numerator, self.denominator)
    }
}

impl FracScaled<LaurentHalf> {
    /// Cancels the denominator when it divides the numerator exactly.
    pub fn reduced(&self) -> Self {
        match self.numerator.div_exact(&self.denominator) {
            Some(n) => Self { numerator: n, denominator: LaurentHalf::one() },
            None => self.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Equality as fractions: `a/b == c/d` iff `ad == bc`.
    pub fn equals(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl fmt::Display for FracScaled<LaurentHalf> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}

/// Signed value of a big integer in a small ring, used for binomials and
/// similar integer constants.
pub(crate) fn int_elem<R: Ring>(ring: &R, n: &BigInt) -> R::Elem {
    if n.is_negative() {
        ring.neg(&ring.embed(&LaurentHalf::constant(-n)))
    } else {
        ring.embed(&LaurentHalf::constant(n.clone()))
    }
}

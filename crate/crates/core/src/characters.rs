//! Characters of the dual group.
//!
//! A character is a finite formal sum of coweights of `G` (weights of the
//! dual torus) with `Z[v^{±1}]` coefficients. Weyl-invariant ones are the
//! Satake coordinates of spherical Hecke operators.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::coeff_ring::{CoeffError, LaurentHalf, Ring};
use crate::error::{Error, Result};
use crate::root_data::{pair, BasedRootDatum, Coweight};

const MAX_STRIP_STEPS: usize = 100_000;

/// Finite formal sum `sum_lambda c_lambda e^lambda`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct WeightMultiset {
    terms: BTreeMap<Coweight, LaurentHalf>,
}

impl WeightMultiset {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(weight: Coweight, coeff: LaurentHalf) -> Self {
        let mut out = Self::zero();
        out.add_term(weight, &coeff);
        out
    }

    pub fn constant(rank: usize, coeff: LaurentHalf) -> Self {
        Self::monomial(Coweight::zero(rank), coeff)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Coweight, LaurentHalf)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    pub fn add_term(&mut self, weight: Coweight, coeff: &LaurentHalf) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(weight.clone()).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&weight);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Coweight, &LaurentHalf)> {
        self.terms.iter()
    }

    pub fn coeff(&self, weight: &Coweight) -> LaurentHalf {
        self.terms.get(weight).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &Coweight> {
        self.terms.keys()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &LaurentHalf) -> Self {
        let mut out = Self::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(c * x));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.add(b), &(x * y));
            }
        }
        out
    }

    /// Applies a Weyl group element to every support weight.
    pub fn act(&self, datum: &BasedRootDatum, w: usize) -> Self {
        let weyl = datum.weyl();
        Self::from_terms(self.terms.iter().map(|(x, c)| (Coweight(weyl.apply(w, &x.0)), c.clone())))
    }

    pub fn is_w_invariant(&self, datum: &BasedRootDatum) -> bool {
        (0..datum.semisimple_rank()).all(|i| {
            self.terms.iter().all(|(x, c)| self.terms.get(&datum.simple_reflect(i, x)) == Some(c))
        })
    }

    /// Renders as `(c)e^(x,y) + ...`; the zero character is `0`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms.iter().rev().map(|(w, c)| format!("({c})e^{w}")).join(" + ")
    }

    pub fn parse(s: &str) -> Result<Self, CoeffError> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = || CoeffError::Parse(s.to_string());
        let mut out = Self::zero();
        for part in s.split(" + ") {
            let part = part.trim();
            let (c, w) = part.strip_prefix('(').and_then(|p| p.split_once(")e^")).ok_or_else(bad)?;
            let w: Coweight = w.parse().map_err(|_| bad())?;
            out.add_term(w, &c.parse()?);
        }
        Ok(out)
    }
}

impl fmt::Debug for WeightMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    weight: Coweight,
    coeff: LaurentHalf,
}

impl Serialize for WeightMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<TermJson> = self.terms.iter().rev().map(|(w, c)| TermJson { weight: w.clone(), coeff: c.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightMultiset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<TermJson>::deserialize(d)?;
        Ok(Self::from_terms(v.into_iter().map(|t| (t.weight, t.coeff))))
    }
}

/// The group ring `Z[v^{±1}][X_*(T)]`: evaluation at the generic point of the
/// dual torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusRing {
    pub rank: usize,
}

impl Ring for TorusRing {
    type Elem = WeightMultiset;

    fn zero(&self) -> WeightMultiset {
        WeightMultiset::zero()
    }
    fn one(&self) -> WeightMultiset {
        WeightMultiset::constant(self.rank, LaurentHalf::one())
    }
    fn from_int(&self, n: i64) -> WeightMultiset {
        WeightMultiset::constant(self.rank, LaurentHalf::constant(n))
    }
    fn add(&self, a: &WeightMultiset, b: &WeightMultiset) -> WeightMultiset {
        a.add(b)
    }
    fn neg(&self, a: &WeightMultiset) -> WeightMultiset {
        a.neg()
    }
    fn mul(&self, a: &WeightMultiset, b: &WeightMultiset) -> WeightMultiset {
        a.mul(b)
    }
    fn is_zero(&self, a: &WeightMultiset) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &WeightMultiset) -> Option<WeightMultiset> {
        if a.len() != 1 {
            return None;
        }
        let (w, c) = a.terms().next()?;
        Some(WeightMultiset::monomial(w.neg(), c.unit_inverse()?))
    }
    fn embed(&self, x: &LaurentHalf) -> WeightMultiset {
        WeightMultiset::constant(self.rank, x.clone())
    }
    fn render(&self, a: &WeightMultiset) -> String {
        a.render()
    }
    fn parse(&self, s: &str) -> Result<WeightMultiset, CoeffError> {
        WeightMultiset::parse(s)
    }
}

/// A Weyl-invariant character.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SymmetricFunction(WeightMultiset);

impl SymmetricFunction {
    pub fn new(datum: &BasedRootDatum, f: WeightMultiset) -> Result<Self> {
        if f.support().any(|w| w.dim() != datum.rank()) {
            return Err(Error::Dimension { expected: datum.rank(), got: f.support().next().map_or(0, |w| w.dim()) });
        }
        if !f.is_w_invariant(datum) {
            return Err(Error::NotInvariant);
        }
        Ok(Self(f))
    }

    pub fn one(rank: usize) -> Self {
        Self(WeightMultiset::constant(rank, LaurentHalf::one()))
    }

    pub fn as_multiset(&self) -> &WeightMultiset {
        &self.0
    }

    pub fn into_multiset(self) -> WeightMultiset {
        self.0
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.sub(&other.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.mul(&other.0))
    }

    pub fn scale(&self, c: &LaurentHalf) -> Self {
        Self(self.0.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Dominant support weights with their coefficients, i.e. coordinates in
    /// the monomial basis `m_lambda`.
    pub fn monomial_coordinates(&self, datum: &BasedRootDatum) -> BTreeMap<Coweight, LaurentHalf> {
        self.0.terms().filter(|(w, _)| datum.is_dominant(w)).map(|(w, c)| (w.clone(), c.clone())).collect()
    }
}

impl fmt::Debug for SymmetricFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

fn require_dominant(datum: &BasedRootDatum, x: &Coweight) -> Result<()> {
    datum.check_dim(x)?;
    if !datum.is_dominant(x) {
        return Err(Error::NotDominant(x.to_string()));
    }
    Ok(())
}

/// The monomial symmetric function `m_lambda`.
pub fn orbit_character(datum: &BasedRootDatum, lambda: &Coweight) -> Result<SymmetricFunction> {
    require_dominant(datum, lambda)?;
    Ok(SymmetricFunction(WeightMultiset::from_terms(
        datum.weyl_orbit(lambda).into_iter().map(|w| (w, LaurentHalf::one())),
    )))
}

/// A positive definite Weyl-invariant form on the coweight lattice: the
/// Weyl average of the dot product.
pub fn invariant_form(datum: &BasedRootDatum) -> Vec<Vec<i64>> {
    let n = datum.rank();
    let mut b = vec![vec![0i64; n]; n];
    for w in datum.weyl().elements() {
        let m = w.matrix_rows();
        for i in 0..n {
            for j in 0..n {
                b[i][j] += (0..n).map(|k| m[k][i] * m[k][j]).sum::<i64>();
            }
        }
    }
    b
}

fn form(b: &[Vec<i64>], x: &[i64], y: &[i64]) -> i128 {
    let mut acc = 0i128;
    for i in 0..x.len() {
        for j in 0..y.len() {
            acc += b[i][j] as i128 * x[i] as i128 * y[j] as i128;
        }
    }
    acc
}

/// Multiplicities of the dominant weights of the irreducible representation
/// of highest weight `lambda`, highest first, by Freudenthal's recursion.
pub fn dominant_multiplicities(datum: &BasedRootDatum, lambda: &Coweight) -> Result<Vec<(Coweight, i64)>> {
    require_dominant(datum, lambda)?;
    let doms = datum.dominant_weights_below(lambda);
    let weights: HashSet<Coweight> = doms.iter().flat_map(|d| datum.weyl_orbit(d)).collect();
    let b = invariant_form(datum);
    let two_rho = datum.two_rho_check();
    let mut mult: HashMap<Coweight, i64> = HashMap::new();
    let mut out = Vec::with_capacity(doms.len());
    for mu in &doms {
        let m = if mu == lambda {
            1
        } else {
            let shifted: Vec<i64> = (0..datum.rank()).map(|t| lambda.0[t] + mu.0[t] + two_rho[t]).collect();
            let lhs = form(&b, &shifted, &lambda.sub(mu).0);
            let mut rhs = 0i128;
            for beta in datum.positive_coroots() {
                let mut k = 1;
                loop {
                    let w = Coweight(mu.0.iter().zip(beta).map(|(x, y)| x + k * y).collect());
                    if !weights.contains(&w) {
                        break;
                    }
                    let dom = datum.dominant_representative(&w);
                    let mw = *mult.get(&dom).ok_or_else(|| Error::Consistency(format!("weight {dom} visited out of order")))?;
                    rhs += mw as i128 * form(&b, &w.0, beta);
                    k += 1;
                }
            }
            rhs *= 2;
            if lhs <= 0 || rhs % lhs != 0 {
                return Err(Error::Consistency(format!("Freudenthal quotient {rhs}/{lhs} at {mu} is not integral")));
            }
            (rhs / lhs) as i64
        };
        mult.insert(mu.clone(), m);
        out.push((mu.clone(), m));
    }
    Ok(out)
}

/// The Weyl character `chi_lambda`.
pub fn weyl_character(datum: &BasedRootDatum, lambda: &Coweight) -> Result<SymmetricFunction> {
    require_dominant(datum, lambda)?;
    if datum.is_minuscule(lambda) {
        return orbit_character(datum, lambda);
    }
    let mut out = WeightMultiset::zero();
    for (mu, m) in dominant_multiplicities(datum, lambda)? {
        if m == 0 {
            continue;
        }
        for w in datum.weyl_orbit(&mu) {
            out.add_term(w, &LaurentHalf::constant(m));
        }
    }
    Ok(SymmetricFunction(out))
}

/// Weights of `r_mu` for minuscule `mu`, in canonical (lexicographically
/// descending) order. Its length is `d = dim r_mu`.
pub fn minuscule_weights(datum: &BasedRootDatum, mu: &Coweight) -> Result<Vec<Coweight>> {
    datum.check_dim(mu)?;
    if !datum.is_minuscule(mu) {
        return Err(Error::NotMinuscule(mu.to_string()));
    }
    Ok(datum.weyl_orbit(mu))
}

/// The character of `wedge^i` of the representation with the given weights:
/// the sum over `i`-element subsets of `e^{sum of the subset}`.
pub fn ext_power_character(weights: &[Coweight], i: usize) -> Result<WeightMultiset> {
    let d = weights.len();
    if i > d {
        return Err(Error::OutOfRange { index: i, max: d });
    }
    let rank = weights.first().map_or(0, |w| w.dim());
    let mut out = WeightMultiset::zero();
    let one = LaurentHalf::one();
    for subset in (0..d).combinations(i) {
        let w = subset.iter().fold(Coweight::zero(rank), |acc, j| acc.add(&weights[*j]));
        out.add_term(w, &one);
    }
    Ok(out)
}

/// The power sum `p_k = sum_j e^{k lambda_j}`.
pub fn power_sum(weights: &[Coweight], k: i64) -> WeightMultiset {
    WeightMultiset::from_terms(weights.iter().map(|w| (w.scale(k), LaurentHalf::one())))
}

/// Coordinates of an invariant character in the basis of Weyl characters,
/// found by stripping off highest weights.
pub fn decompose(datum: &BasedRootDatum, f: &SymmetricFunction) -> Result<BTreeMap<Coweight, LaurentHalf>> {
    let mut rest = f.0.clone();
    let mut out = BTreeMap::new();
    let mut cache: HashMap<Coweight, SymmetricFunction> = HashMap::new();
    for _ in 0..MAX_STRIP_STEPS {
        let top = rest
            .support()
            .filter(|w| datum.is_dominant(w))
            .max_by(|a, b| datum.rho_pairing_exponent(a).cmp(&datum.rho_pairing_exponent(b)).then(a.cmp(b)))
            .cloned();
        let Some(top) = top else {
            if rest.is_zero() {
                return Ok(out);
            }
            return Err(Error::NotInvariant);
        };
        let c = rest.coeff(&top);
        let chi = match cache.get(&top) {
            Some(chi) => chi.clone(),
            None => {
                let chi = weyl_character(datum, &top)?;
                cache.insert(top.clone(), chi.clone());
                chi
            }
        };
        rest = rest.sub(&chi.0.scale(&c));
        if !rest.coeff(&top).is_zero() {
            return Err(Error::Consistency(format!("stripping {top} did not cancel it")));
        }
        out.insert(top, c);
    }
    Err(Error::Consistency("highest-weight stripping did not terminate".into()))
}

/// `sum_lambda c_lambda chi_lambda`.
pub fn from_irreducibles(datum: &BasedRootDatum, coeffs: &BTreeMap<Coweight, LaurentHalf>) -> Result<SymmetricFunction> {
    let mut out = WeightMultiset::zero();
    for (lambda, c) in coeffs {
        out = out.add(&weyl_character(datum, lambda)?.0.scale(c));
    }
    Ok(SymmetricFunction(out))
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Pairing of a weight with `2 rho^vee` of the dual side.
pub fn dual_height(datum: &BasedRootDatum, x: &Coweight) -> i64 {
    pair(datum.two_rho(), &x.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::Family;
    use proptest::prelude::*;

    fn gl(n: usize) -> BasedRootDatum {
        BasedRootDatum::build_standard(Family::GL, n).unwrap()
    }

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    fn m(d: &BasedRootDatum, v: &[i64]) -> WeightMultiset {
        orbit_character(d, &cw(v)).unwrap().into_multiset()
    }

    /// `chi * sum_w sgn(w) e^{w rho - rho} == sum_w sgn(w) e^{w(lambda + rho) - rho}`,
    /// the Weyl character formula with denominators cleared.
    fn alternating_sum_check(d: &BasedRootDatum, lambda: &Coweight, chi: &WeightMultiset) -> bool {
        let two_rho = d.two_rho_check();
        let mut den = WeightMultiset::zero();
        let mut num = WeightMultiset::zero();
        for w in d.weyl().elements() {
            let sign = if w.length() % 2 == 0 { LaurentHalf::one() } else { -LaurentHalf::one() };
            let wr = w.apply(two_rho);
            let shift: Vec<i64> = wr.iter().zip(two_rho).map(|(a, b)| (a - b) / 2).collect();
            den.add_term(Coweight(shift.clone()), &sign);
            let wl = w.apply(&lambda.0);
            num.add_term(Coweight(wl.iter().zip(&shift).map(|(a, b)| a + b).collect()), &sign);
        }
        chi.mul(&den) == num
    }

    #[test]
    fn orbit_characters() {
        let d = gl(2);
        assert_eq!(
            m(&d, &[1, 0]),
            WeightMultiset::from_terms([(cw(&[1, 0]), LaurentHalf::one()), (cw(&[0, 1]), LaurentHalf::one())])
        );
        assert_eq!(m(&d, &[1, 1]).len(), 1);
        assert_eq!(m(&gl(3), &[1, 1, 0]).len(), 3);
        assert!(matches!(orbit_character(&d, &cw(&[0, 1])), Err(Error::NotDominant(_))));
    }

    #[test]
    fn weyl_characters() {
        let d = gl(2);
        assert_eq!(weyl_character(&d, &cw(&[1, 0])).unwrap().into_multiset(), m(&d, &[1, 0]));
        let chi = weyl_character(&d, &cw(&[2, 0])).unwrap().into_multiset();
        assert_eq!(chi, m(&d, &[2, 0]).add(&m(&d, &[1, 1])));
        assert!(alternating_sum_check(&d, &cw(&[2, 0]), &chi));
        let det = weyl_character(&gl(3), &cw(&[1, 1, 1])).unwrap().into_multiset();
        assert_eq!(det, WeightMultiset::monomial(cw(&[1, 1, 1]), LaurentHalf::one()));
    }

    #[test]
    fn freudenthal_against_alternating_sums_rank_two() {
        let sp4 = BasedRootDatum::build_standard(Family::Sp, 4).unwrap();
        let sl3 = BasedRootDatum::build_standard(Family::SL, 3).unwrap();
        let pgl3 = BasedRootDatum::build_standard(Family::PGL, 3).unwrap();
        for d in [gl(2), sp4, sl3, pgl3, gl(3)] {
            let bound = 3;
            let n = d.rank();
            let mut cur = vec![-bound; n];
            'enumerate: loop {
                let x = Coweight(cur.clone());
                if d.is_dominant(&x) {
                    let chi = weyl_character(&d, &x).unwrap().into_multiset();
                    assert!(alternating_sum_check(&d, &x, &chi), "{:?} {x}", d.family());
                }
                let mut i = 0;
                loop {
                    if i == n {
                        break 'enumerate;
                    }
                    if cur[i] < bound {
                        cur[i] += 1;
                        break;
                    }
                    cur[i] = -bound;
                    i += 1;
                }
            }
        }
    }

    #[test]
    fn minuscule_weight_lists() {
        assert_eq!(minuscule_weights(&gl(2), &cw(&[1, 0])).unwrap(), vec![cw(&[1, 0]), cw(&[0, 1])]);
        // 2-element subsets of 4
        let subsets = (0..4).combinations(2).count();
        assert_eq!(minuscule_weights(&gl(4), &cw(&[1, 1, 0, 0])).unwrap().len(), subsets);
        for n in 1..6 {
            let mut v = vec![0; n];
            v[0] = 1;
            assert_eq!(minuscule_weights(&gl(n), &Coweight(v)).unwrap().len(), n);
        }
        assert!(matches!(minuscule_weights(&gl(2), &cw(&[2, 0])), Err(Error::NotMinuscule(_))));
    }

    #[test]
    fn exterior_powers() {
        let w2 = minuscule_weights(&gl(2), &cw(&[1, 0])).unwrap();
        assert_eq!(ext_power_character(&w2, 2).unwrap(), WeightMultiset::monomial(cw(&[1, 1]), LaurentHalf::one()));
        assert_eq!(ext_power_character(&w2, 0).unwrap(), WeightMultiset::constant(2, LaurentHalf::one()));
        let w3 = minuscule_weights(&gl(3), &cw(&[1, 0, 0])).unwrap();
        assert_eq!(ext_power_character(&w3, 2).unwrap(), m(&gl(3), &[1, 1, 0]));
        assert!(matches!(ext_power_character(&w3, 4), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn decomposition() {
        let d = gl(2);
        let f = SymmetricFunction::new(&d, m(&d, &[2, 0])).unwrap();
        let c = decompose(&d, &f).unwrap();
        assert_eq!(c, BTreeMap::from([(cw(&[2, 0]), LaurentHalf::one()), (cw(&[1, 1]), -LaurentHalf::one())]));
        let chi = weyl_character(&d, &cw(&[1, 0])).unwrap();
        assert_eq!(decompose(&d, &chi).unwrap(), BTreeMap::from([(cw(&[1, 0]), LaurentHalf::one())]));
        assert!(decompose(&d, &SymmetricFunction::new(&d, WeightMultiset::zero()).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn invariance_is_enforced() {
        let d = gl(2);
        let f = WeightMultiset::monomial(cw(&[1, 0]), LaurentHalf::one());
        assert_eq!(SymmetricFunction::new(&d, f), Err(Error::NotInvariant));
    }

    #[test]
    fn ext_powers_are_invariant_and_sum_to_power_of_two() {
        for (n, mu) in [(2, vec![1, 0]), (3, vec![1, 0, 0]), (4, vec![1, 1, 0, 0]), (4, vec![1, 0, 0, 0])] {
            let d = gl(n);
            let w = minuscule_weights(&d, &Coweight(mu)).unwrap();
            let mut total = BigInt::from(0);
            for i in 0..=w.len() {
                let e = ext_power_character(&w, i).unwrap();
                assert!(e.is_w_invariant(&d));
                total += e.terms().map(|(_, c)| c.coeff(0)).sum::<BigInt>();
            }
            assert_eq!(total, BigInt::from(1u64 << w.len()));
        }
    }

    #[test]
    fn torus_ring_text_round_trip() {
        let d = gl(3);
        let f = m(&d, &[2, 0, -1]).scale(&LaurentHalf::from_terms([(1, 2), (-2, -1)]));
        let r = TorusRing { rank: 3 };
        assert_eq!(r.parse(&r.render(&f)).unwrap(), f);
        assert_eq!(r.parse("0").unwrap(), WeightMultiset::zero());
    }

    proptest! {
        #[test]
        fn decompose_inverts_recomposition(coeffs in prop::collection::vec((0i64..3, -2i64..3, -3i64..4), 0..4)) {
            let d = gl(3);
            let mut c: BTreeMap<Coweight, LaurentHalf> = BTreeMap::new();
            for (a, b, k) in coeffs {
                let lambda = cw(&[a + b, b, 0]);
                if !d.is_dominant(&lambda) { continue; }
                let entry = c.entry(lambda).or_default();
                *entry += &LaurentHalf::monomial(k, a);
            }
            c.retain(|_, x| !x.is_zero());
            let f = from_irreducibles(&d, &c).unwrap();
            prop_assert_eq!(decompose(&d, &f).unwrap(), c);
        }
    }
}

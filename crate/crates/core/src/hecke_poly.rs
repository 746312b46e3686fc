//! The Hecke polynomial of a minuscule cocharacter and the Cayley-Hamilton
//! relations it satisfies.
//!
//! `H(X) = det(X - v^t r_mu(s))` for a Satake parameter `s`. Expanding the
//! determinant, the coefficient of `X^{d-i}` is `(-1)^i v^{i t} e_i` where
//! `e_i` is the character of `wedge^i r_mu`, a Weyl-invariant function of `s`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::characters::{binomial, ext_power_character, minuscule_weights, SymmetricFunction};
use crate::coeff_ring::{int_elem, LaurentHalf, PrimeField, Ring, ScalarDomain};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::root_data::{BasedRootDatum, Coweight, Family};
use crate::satake::{evaluate, frobenius_matrix, trace_of, SatakeParameter, TwistConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTag {
    pub family: Family,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistTag {
    pub preset: String,
    pub exponent: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeckePolynomial {
    group: GroupTag,
    mu: Coweight,
    twist: TwistConfig,
    twist_exponent: i64,
    e_over_f: i64,
    weights: Vec<Coweight>,
    /// Index `i` holds the coefficient of `X^{d-i}`.
    coefficients: Vec<SymmetricFunction>,
}

/// JSON form of [`HeckePolynomial`].
#[derive(Clone, Debug, Serialize)]
pub struct HeckePolynomialJson {
    pub group: GroupTag,
    pub mu: Coweight,
    pub twist: TwistTag,
    pub e_over_f: i64,
    pub degree: usize,
    pub coefficients: Vec<SymmetricFunction>,
}

pub fn hecke_polynomial(datum: &BasedRootDatum, mu: &Coweight, twist: TwistConfig, e_over_f: i64) -> Result<HeckePolynomial> {
    let weights = minuscule_weights(datum, mu)?;
    let d = weights.len();
    let twist_exponent = twist.resolve(datum, mu, d, e_over_f);
    let coefficients = (0..=d)
        .map(|i| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let e = ext_power_character(&weights, i)?;
            SymmetricFunction::new(datum, e.scale(&LaurentHalf::monomial(sign, i as i64 * twist_exponent)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HeckePolynomial {
        group: GroupTag { family: datum.family(), rank: datum.rank() },
        mu: mu.clone(),
        twist,
        twist_exponent,
        e_over_f,
        weights,
        coefficients,
    })
}

impl HeckePolynomial {
    pub fn degree(&self) -> usize {
        self.weights.len()
    }

    pub fn mu(&self) -> &Coweight {
        &self.mu
    }

    pub fn group(&self) -> &GroupTag {
        &self.group
    }

    pub fn twist(&self) -> TwistConfig {
        self.twist
    }

    pub fn twist_exponent(&self) -> i64 {
        self.twist_exponent
    }

    pub fn twist_tag(&self) -> TwistTag {
        TwistTag { preset: self.twist.preset_name().into(), exponent: self.twist_exponent }
    }

    pub fn weights(&self) -> &[Coweight] {
        &self.weights
    }

    pub fn coefficients(&self) -> &[SymmetricFunction] {
        &self.coefficients
    }

    /// Coefficient of `X^{d-i}`.
    pub fn coefficient(&self, i: usize) -> Option<&SymmetricFunction> {
        self.coefficients.get(i)
    }

    pub fn evaluate_coefficients<R: Ring>(&self, ring: &R, s: &SatakeParameter<R::Elem>) -> Result<Vec<R::Elem>> {
        self.coefficients.iter().map(|c| evaluate(ring, c.as_multiset(), s)).collect()
    }

    pub fn to_json(&self) -> HeckePolynomialJson {
        HeckePolynomialJson {
            group: self.group.clone(),
            mu: self.mu.clone(),
            twist: self.twist_tag(),
            e_over_f: self.e_over_f,
            degree: self.degree(),
            coefficients: self.coefficients.clone(),
        }
    }

    /// Human rendering in the monomial basis, e.g.
    /// `X^2 - v^2*m(1,0)*X + v^4*m(1,1)`.
    pub fn display_satake(&self, datum: &BasedRootDatum) -> String {
        let coords: Vec<Vec<(Coweight, LaurentHalf)>> = self
            .coefficients
            .iter()
            .map(|c| c.monomial_coordinates(datum).into_iter().rev().collect())
            .collect();
        render_polynomial(&coords, |w| format!("m{w}"))
    }
}

/// Renders `sum_i c_i X^{d-i}` where each `c_i` is a combination of basis
/// symbols; coefficients are written in `q` when all exponents are even.
pub fn render_polynomial(coeffs: &[Vec<(Coweight, LaurentHalf)>], symbol: impl Fn(&Coweight) -> String) -> String {
    let d = coeffs.len().saturating_sub(1);
    let mut out = String::new();
    for (i, terms) in coeffs.iter().enumerate() {
        let power = d - i;
        let x = match power {
            0 => String::new(),
            1 => "X".into(),
            p => format!("X^{p}"),
        };
        for (w, c) in terms {
            let (neg, body) = render_scalar(c);
            let sym = if w.is_zero() && i == 0 { String::new() } else { symbol(w) };
            let mut parts: Vec<String> = Vec::new();
            if !body.is_empty() {
                parts.push(body);
            }
            if !sym.is_empty() {
                parts.push(sym);
            }
            if !x.is_empty() {
                parts.push(x.clone());
            }
            let text = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&text);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Sign and unsigned body of a scalar; the body is empty for `±1`.
fn render_scalar(c: &LaurentHalf) -> (bool, String) {
    if c.num_terms() == 1 {
        let (e, k) = c.terms().next().expect("one term");
        let neg = k.is_negative();
        let a = k.abs();
        let mono = if e % 2 == 0 {
            match e / 2 {
                0 => String::new(),
                1 => "q".into(),
                p => format!("q^{p}"),
            }
        } else {
            match e {
                1 => "v".into(),
                e => format!("v^{e}"),
            }
        };
        let body = match (a == BigInt::from(1), mono.is_empty()) {
            (true, _) => mono,
            (false, true) => a.to_string(),
            (false, false) => format!("{a}*{mono}"),
        };
        return (neg, body);
    }
    (false, format!("({})", c.pretty()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExcursionValue<E> {
    pub index: usize,
    pub value: E,
}

/// Traces `S_{wedge^i r_mu}` at Frobenius (`tr wedge^i` of the Frobenius
/// matrix) or at an inertia element of an unramified parameter (`C(d, i)`).
pub fn excursion_values<R: Ring>(
    ring: &R,
    datum: &BasedRootDatum,
    mu: &Coweight,
    s: &SatakeParameter<R::Elem>,
    twist_exponent: i64,
    frobenius: bool,
) -> Result<Vec<ExcursionValue<R::Elem>>> {
    let m = frobenius_matrix(ring, datum, mu, s, twist_exponent)?;
    let d = m.size();
    (0..=d)
        .map(|i| {
            let value = if frobenius { trace_of(ring, &m, i)? } else { int_elem(ring, &binomial(d, i)) };
            Ok(ExcursionValue { index: i, value })
        })
        .collect()
}

/// Outcome of an exact matrix relation check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupTag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Coweight>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<TwistTag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<ScalarDomain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<Vec<String>>,
    pub residual: Vec<Vec<String>>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl RelationReport {
    pub fn new(check: &str, residual: Vec<Vec<String>>, pass: bool) -> Self {
        Self {
            check: check.into(),
            group: None,
            mu: None,
            twist: None,
            domain: None,
            seed: None,
            trial: None,
            parameter: None,
            residual,
            pass,
            details: BTreeMap::new(),
            elapsed_us: None,
        }
    }

    pub fn with_detail(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.details.insert(key.into(), value.into());
        self
    }
}

fn require_square<E: Clone>(m: &Matrix<E>, d: usize) -> Result<()> {
    if m.size() != d {
        return Err(Error::Dimension { expected: d, got: m.size() });
    }
    Ok(())
}

/// `sum_i c_{d-i} M^i` where `c_k` is the coefficient of `X^{d-k}`.
pub fn polynomial_at_matrix<R: Ring>(ring: &R, m: &Matrix<R::Elem>, coeff_values: &[R::Elem]) -> Matrix<R::Elem> {
    let d = coeff_values.len() - 1;
    let powers = m.powers(ring, d);
    let mut acc = Matrix::zero(ring, m.size());
    for (i, p) in powers.iter().enumerate() {
        acc = acc.add(ring, &p.scale(ring, &coeff_values[d - i]));
    }
    acc
}

/// Substitutes an invertible `M` for `X` in `H`, with `coeff_values[i]` the
/// (evaluated, signed) coefficient of `X^{d-i}`. Passes iff the result is
/// exactly zero.
pub fn cayley_hamilton_check<R: Ring>(
    ring: &R,
    h: &HeckePolynomial,
    m: &Matrix<R::Elem>,
    coeff_values: &[R::Elem],
) -> Result<RelationReport> {
    let d = h.degree();
    require_square(m, d)?;
    if coeff_values.len() != d + 1 {
        return Err(Error::Dimension { expected: d + 1, got: coeff_values.len() });
    }
    if ring.is_zero(&m.det(ring)) {
        return Err(Error::Singular);
    }
    let residual = polynomial_at_matrix(ring, m, coeff_values);
    let mut report = RelationReport::new("ch", residual.render(ring), residual.is_zero(ring));
    report.group = Some(h.group.clone());
    report.mu = Some(h.mu.clone());
    report.twist = Some(h.twist_tag());
    Ok(report)
}

/// Cayley-Hamilton for an arbitrary invertible matrix against its own
/// characteristic polynomial.
pub fn char_poly_check<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<RelationReport> {
    if ring.is_zero(&m.det(ring)) {
        return Err(Error::Singular);
    }
    let c = m.char_poly(ring);
    let residual = polynomial_at_matrix(ring, m, &c);
    Ok(RelationReport::new("ch-arbitrary", residual.render(ring), residual.is_zero(ring)))
}

/// `sum_{i=0}^{d} (-1)^i S_{wedge^{d-i}} M^i` from unsigned traces
/// `traces[k] = tr wedge^k`.
pub fn excursion_relation<R: Ring>(ring: &R, m: &Matrix<R::Elem>, traces: &[R::Elem]) -> Result<Matrix<R::Elem>> {
    let d = traces.len().checked_sub(1).ok_or(Error::Dimension { expected: 1, got: 0 })?;
    require_square(m, d)?;
    let powers = m.powers(ring, d);
    let mut acc = Matrix::zero(ring, d);
    for (i, p) in powers.iter().enumerate() {
        let term = p.scale(ring, &traces[d - i]);
        acc = if i % 2 == 0 { acc.add(ring, &term) } else { acc.sub(ring, &term) };
    }
    Ok(acc)
}

/// The inertia form of the relation: checks
/// `sum_i (-1)^i C(d, d-i) M^i == (I - M)^d` exactly and reports whether
/// `(M - I)^d` vanishes.
pub fn inertia_relation_check<R: Ring>(ring: &R, d: usize, m: &Matrix<R::Elem>) -> Result<RelationReport> {
    if d == 0 {
        return Err(Error::OutOfRange { index: 0, max: 0 });
    }
    require_square(m, d)?;
    let traces: Vec<R::Elem> = (0..=d).map(|k| int_elem(ring, &binomial(d, k))).collect();
    let lhs = excursion_relation(ring, m, &traces)?;
    let id = Matrix::identity(ring, d);
    let one_minus = id.sub(ring, m);
    let rhs = one_minus.powers(ring, d).pop().expect("d >= 1");
    let residual = lhs.sub(ring, &rhs);
    let binomial_ok = residual.is_zero(ring);
    let nilpotent = m.sub(ring, &id).powers(ring, d).pop().expect("d >= 1");
    let unipotent = nilpotent.is_zero(ring);
    Ok(RelationReport::new("inertia", residual.render(ring), binomial_ok)
        .with_detail("d", d)
        .with_detail("binomial_identity", binomial_ok)
        .with_detail("unipotent", unipotent)
        .with_detail("nilpotent_residual", serde_json::to_value(nilpotent.render(ring)).expect("strings")))
}

/// A Hecke polynomial with coefficients reduced into a prime field.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedHeckePolynomial {
    field: PrimeField,
    coefficients: Vec<BTreeMap<Coweight, u64>>,
}

impl ReducedHeckePolynomial {
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn coefficients(&self) -> &[BTreeMap<Coweight, u64>] {
        &self.coefficients
    }

    pub fn evaluate_coefficients(&self, s: &SatakeParameter<u64>) -> Vec<u64> {
        self.coefficients
            .iter()
            .map(|c| {
                c.iter().fold(0, |acc, (w, x)| self.field.add(&acc, &self.field.mul(x, &s.monomial(&self.field, w))))
            })
            .collect()
    }
}

pub fn reduce_mod_ell(h: &HeckePolynomial, dom: &ScalarDomain) -> Result<ReducedHeckePolynomial> {
    let ScalarDomain::PrimeFieldWithV { ell, q, v_image } = dom else {
        return Err(Error::Unsupported("reduction needs a prime-field domain".into()));
    };
    let field = PrimeField::new(*ell, *q, *v_image)?;
    let coefficients = h
        .coefficients
        .iter()
        .map(|c| {
            c.as_multiset()
                .terms()
                .map(|(w, x)| (w.clone(), field.embed(x)))
                .filter(|(_, x)| *x != 0)
                .collect()
        })
        .collect();
    Ok(ReducedHeckePolynomial { field, coefficients })
}

/// Evaluates `H`'s coefficients at integer lifts of a parameter in
/// `Z[v^{±1}]` and reduces the result, the reduce-after-evaluate route.
/// Negative exponents use lifts of the residue inverses.
pub fn evaluate_then_reduce(h: &HeckePolynomial, field: &PrimeField, s: &[u64]) -> Result<Vec<u64>> {
    let inv: Vec<u64> = s.iter().enumerate().map(|(i, x)| field.inv(x).ok_or(Error::NotInvertible(i))).collect::<Result<_>>()?;
    h.coefficients
        .iter()
        .map(|c| {
            let mut total = LaurentHalf::zero();
            for (w, x) in c.as_multiset().terms() {
                let mut mono = BigInt::from(1);
                for (j, e) in w.0.iter().enumerate() {
                    let base = BigInt::from(if *e >= 0 { s[j] } else { inv[j] });
                    mono *= num_traits::pow(base, e.unsigned_abs() as usize);
                }
                total += &x.scale(&mono);
            }
            Ok(field.embed(&total))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{orbit_character, TorusRing, WeightMultiset};
    use crate::coeff_ring::{FormalRing, RationalRing};
    use num_rational::BigRational;

    fn gl(n: usize) -> BasedRootDatum {
        BasedRootDatum::build_standard(Family::GL, n).unwrap()
    }

    fn cw(v: &[i64]) -> Coweight {
        Coweight(v.to_vec())
    }

    fn f11() -> PrimeField {
        PrimeField::new(11, 5, 4).unwrap()
    }

    /// det(X - M) by cofactor expansion over polynomials in X (coefficient
    /// vectors, constant term first).
    fn char_poly_cofactor<R: Ring>(ring: &R, m: &[Vec<R::Elem>]) -> Vec<R::Elem> {
        let n = m.len();
        let entry = |i: usize, j: usize| -> Vec<R::Elem> {
            if i == j {
                vec![ring.neg(&m[i][j]), ring.one()]
            } else {
                vec![ring.neg(&m[i][j])]
            }
        };
        let pm: Vec<Vec<Vec<R::Elem>>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
        fn pmul<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
            let mut out = vec![ring.zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = ring.add(&out[i + j], &ring.mul(x, y));
                }
            }
            out
        }
        fn padd<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], sign: bool) -> Vec<R::Elem> {
            let n = a.len().max(b.len());
            (0..n)
                .map(|i| {
                    let x = a.get(i).cloned().unwrap_or_else(|| ring.zero());
                    let y = b.get(i).cloned().unwrap_or_else(|| ring.zero());
                    if sign { ring.add(&x, &y) } else { ring.sub(&x, &y) }
                })
                .collect()
        }
        fn det<R: Ring>(ring: &R, m: &[Vec<Vec<R::Elem>>]) -> Vec<R::Elem> {
            if m.is_empty() {
                return vec![ring.one()];
            }
            let mut acc = vec![ring.zero()];
            for j in 0..m.len() {
                let minor: Vec<Vec<Vec<R::Elem>>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = pmul(ring, &m[0][j], &det(ring, &minor));
                acc = padd(ring, &acc, &term, j % 2 == 0);
            }
            acc
        }
        det(ring, &pm)
    }

    #[test]
    fn gl2_paper_twist_polynomial() {
        let d = gl(2);
        let h = hecke_polynomial(&d, &cw(&[1, 0]), TwistConfig::Paper, 1).unwrap();
        let m10 = orbit_character(&d, &cw(&[1, 0])).unwrap();
        let m11 = orbit_character(&d, &cw(&[1, 1])).unwrap();
        assert_eq!(h.coefficients()[0], SymmetricFunction::one(2));
        assert_eq!(h.coefficients()[1], m10.scale(&LaurentHalf::monomial(-1, 2)));
        assert_eq!(h.coefficients()[2], m11.scale(&LaurentHalf::v_pow(4)));
        assert_eq!(h.display_satake(&d), "X^2 - q*m(1,0)*X + q^2*m(1,1)");
    }

    #[test]
    fn gl2_classical_and_gl3() {
        let d = gl(2);
        let h = hecke_polynomial(&d, &cw(&[1, 0]), TwistConfig::Classical, 1).unwrap();
        assert_eq!(h.display_satake(&d), "X^2 - v*m(1,0)*X + q*m(1,1)");
        let d3 = gl(3);
        let h3 = hecke_polynomial(&d3, &cw(&[1, 0, 0]), TwistConfig::Classical, 1).unwrap();
        assert_eq!(h3.display_satake(&d3), "X^3 - q*m(1,0,0)*X^2 + q^2*m(1,1,0)*X - q^3*m(1,1,1)");
        assert!(matches!(hecke_polynomial(&d, &cw(&[2, 0]), TwistConfig::Paper, 1), Err(Error::NotMinuscule(_))));
    }

    #[test]
    fn excursion_values_gl2() {
        let d = gl(2);
        let r = TorusRing { rank: 2 };
        let entries = (0..2).map(|i| WeightMultiset::monomial(Coweight::unit(2, i), LaurentHalf::one())).collect();
        let s = SatakeParameter::new(&r, entries).unwrap();
        let vals = excursion_values(&r, &d, &cw(&[1, 0]), &s, 2, true).unwrap();
        let m10 = orbit_character(&d, &cw(&[1, 0])).unwrap().into_multiset();
        assert_eq!(vals[0].value, r.one());
        assert_eq!(vals[1].value, m10.scale(&LaurentHalf::q()));
        assert_eq!(vals[2].value, WeightMultiset::monomial(cw(&[1, 1]), LaurentHalf::v_pow(4)));
        let inertia = excursion_values(&r, &d, &cw(&[1, 0]), &s, 2, false).unwrap();
        let got: Vec<_> = inertia.into_iter().map(|e| e.value).collect();
        assert_eq!(got, vec![r.from_int(1), r.from_int(2), r.from_int(1)]);
    }

    #[test]
    fn cayley_hamilton_f11_worked_example() {
        let d = gl(2);
        let field = f11();
        let h = hecke_polynomial(&d, &cw(&[1, 0]), TwistConfig::Paper, 1).unwrap();
        let s = SatakeParameter::new(&field, vec![2, 7]).unwrap();
        let coeffs = h.evaluate_coefficients(&field, &s).unwrap();
        assert_eq!(coeffs, vec![1, 10, 9]);
        let m = frobenius_matrix(&field, &d, &cw(&[1, 0]), &s, h.twist_exponent()).unwrap();
        assert_eq!(m.diagonal, vec![10, 2]);
        // 100 + 100 + 9 = 209 = 19 * 11 and 4 + 20 + 9 = 33
        let report = cayley_hamilton_check(&field, &h, &m.to_matrix(&field), &coeffs).unwrap();
        assert!(report.pass);
        assert_eq!(report.residual, vec![vec!["0", "0"], vec!["0", "0"]]);
    }

    #[test]
    fn cayley_hamilton_identity_and_generic() {
        let d = gl(3);
        let field = f11();
        let h = hecke_polynomial(&d, &cw(&[1, 0, 0]), TwistConfig::Exponent(0), 1).unwrap();
        let ones = SatakeParameter::new(&field, vec![1, 1, 1]).unwrap();
        let coeffs = h.evaluate_coefficients(&field, &ones).unwrap();
        // (X - 1)^3
        assert_eq!(coeffs, vec![1, field.from_int(-3), 3, field.from_int(-1)]);
        let id = Matrix::identity(&field, 3);
        assert!(cayley_hamilton_check(&field, &h, &id, &coeffs).unwrap().pass);

        let d2 = gl(2);
        let r = TorusRing { rank: 2 };
        let h2 = hecke_polynomial(&d2, &cw(&[1, 0]), TwistConfig::Paper, 1).unwrap();
        let entries = (0..2).map(|i| WeightMultiset::monomial(Coweight::unit(2, i), LaurentHalf::one())).collect();
        let s = SatakeParameter::new(&r, entries).unwrap();
        let coeffs = h2.evaluate_coefficients(&r, &s).unwrap();
        let m = frobenius_matrix(&r, &d2, &cw(&[1, 0]), &s, h2.twist_exponent()).unwrap();
        let rep = cayley_hamilton_check(&r, &h2, &m.to_matrix(&r), &coeffs).unwrap();
        assert!(rep.pass);
        assert!(rep.residual.iter().flatten().all(|x| x == "0"));
    }

    #[test]
    fn cayley_hamilton_errors() {
        let field = f11();
        let h = hecke_polynomial(&gl(2), &cw(&[1, 0]), TwistConfig::Paper, 1).unwrap();
        let sing = Matrix::from_rows(vec![vec![1u64, 2], vec![2, 4]]).unwrap();
        assert_eq!(cayley_hamilton_check(&field, &h, &sing, &[1, 0, 0]), Err(Error::Singular));
        let id3 = Matrix::identity(&field, 3);
        assert!(matches!(cayley_hamilton_check(&field, &h, &id3, &[1, 0, 0]), Err(Error::Dimension { .. })));
        let id2 = Matrix::identity(&field, 2);
        assert!(matches!(cayley_hamilton_check(&field, &h, &id2, &[1, 0]), Err(Error::Dimension { .. })));
    }

    #[test]
    fn arbitrary_matrix_cayley_hamilton() {
        let q = RationalRing::new(BigRational::from_integer(3.into())).unwrap();
        let r = |x: i64| BigRational::from_integer(x.into());
        let m = Matrix::from_rows(vec![vec![r(1), r(2), r(0)], vec![r(-1), r(3), r(5)], vec![r(2), r(0), r(7)]]).unwrap();
        assert!(char_poly_check(&q, &m).unwrap().pass);
    }

    #[test]
    fn inertia_checks() {
        let q = RationalRing::new(BigRational::from_integer(3.into())).unwrap();
        let r = |x: i64| BigRational::from_integer(x.into());
        let jordan = Matrix::from_rows(vec![vec![r(1), r(1)], vec![r(0), r(1)]]).unwrap();
        let rep = inertia_relation_check(&q, 2, &jordan).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.details["unipotent"], true);
        let id = Matrix::identity(&q, 3);
        let rep = inertia_relation_check(&q, 3, &id).unwrap();
        assert!(rep.pass && rep.details["unipotent"] == true);
        let diag = Matrix::diagonal(&q, &[r(2), r(1)]);
        let rep = inertia_relation_check(&q, 2, &diag).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.details["unipotent"], false);
        assert!(inertia_relation_check(&q, 3, &diag).is_err());
    }

    #[test]
    fn reduction_mod_11() {
        let d = gl(2);
        let h = hecke_polynomial(&d, &cw(&[1, 0]), TwistConfig::Paper, 1).unwrap();
        let dom = ScalarDomain::prime_field(11, 5, 4).unwrap();
        let red = reduce_mod_ell(&h, &dom).unwrap();
        let c = red.coefficients();
        assert_eq!(c[0], BTreeMap::from([(cw(&[0, 0]), 1)]));
        assert_eq!(c[1], BTreeMap::from([(cw(&[1, 0]), 6), (cw(&[0, 1]), 6)]));
        assert_eq!(c[2], BTreeMap::from([(cw(&[1, 1]), 3)]));
        let s = SatakeParameter::new(red.field(), vec![2, 7]).unwrap();
        assert_eq!(red.evaluate_coefficients(&s), evaluate_then_reduce(&h, red.field(), &[2, 7]).unwrap());
        let bad = ScalarDomain::PrimeFieldWithV { ell: 11, q: 5, v_image: 3 };
        assert!(reduce_mod_ell(&h, &bad).is_err());
        assert!(reduce_mod_ell(&h, &ScalarDomain::FormalLaurent).is_err());
    }

    #[test]
    fn constant_term_is_a_single_weight() {
        for (n, mu) in [(2, vec![1, 0]), (3, vec![1, 0, 0]), (4, vec![1, 1, 0, 0])] {
            let d = gl(n);
            let mu = Coweight(mu);
            let h = hecke_polynomial(&d, &mu, TwistConfig::Paper, 1).unwrap();
            let deg = h.degree();
            let last = h.coefficients()[deg].as_multiset();
            assert_eq!(last.len(), 1);
            let total = h.weights().iter().fold(Coweight::zero(n), |a, w| a.add(w));
            let sign = if deg % 2 == 0 { 1 } else { -1 };
            assert_eq!(last.coeff(&total), LaurentHalf::monomial(sign, (deg as i64) * h.twist_exponent()));
        }
    }

    #[test]
    fn evaluation_matches_cofactor_char_poly() {
        let field = PrimeField::new(10007, 4, 2).unwrap();
        for (n, mu) in [(2, vec![1, 0]), (3, vec![1, 0, 0]), (4, vec![1, 1, 0, 0]), (4, vec![1, 0, 0, 0])] {
            let d = gl(n);
            let mu = Coweight(mu);
            let h = hecke_polynomial(&d, &mu, TwistConfig::Paper, 1).unwrap();
            let s = SatakeParameter::new(&field, (0..n as u64).map(|i| 3 + 5 * i).collect()).unwrap();
            let m = frobenius_matrix(&field, &d, &mu, &s, h.twist_exponent()).unwrap();
            let rows = m.to_matrix(&field).rows();
            let mut oracle = char_poly_cofactor(&field, &rows);
            oracle.reverse();
            assert_eq!(h.evaluate_coefficients(&field, &s).unwrap(), oracle);
        }
    }

    #[test]
    fn formal_coefficients_equal_generic_traces() {
        let d = gl(3);
        let mu = cw(&[1, 0, 0]);
        let h = hecke_polynomial(&d, &mu, TwistConfig::Classical, 1).unwrap();
        let _ = FormalRing;
        let r = TorusRing { rank: 3 };
        let entries = (0..3).map(|i| WeightMultiset::monomial(Coweight::unit(3, i), LaurentHalf::one())).collect();
        let s = SatakeParameter::new(&r, entries).unwrap();
        let vals = excursion_values(&r, &d, &mu, &s, h.twist_exponent(), true).unwrap();
        let coeffs = h.evaluate_coefficients(&r, &s).unwrap();
        for (i, (c, e)) in coeffs.iter().zip(&vals).enumerate() {
            let expected = if i % 2 == 0 { e.value.clone() } else { e.value.neg() };
            assert_eq!(c, &expected);
        }
    }
}

//! Satake parameters and evaluation of spherical Hecke operators.
//!
//! A spherical Hecke operator is identified with its Satake transform, a
//! Weyl-invariant character; an unramified representation is a point `s` of
//! the dual torus. Evaluating the character at `s` gives the eigenvalue.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::characters::{minuscule_weights, SymmetricFunction, WeightMultiset};
use crate::coeff_ring::{LaurentHalf, Ring, ScalarDomain};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::root_data::{BasedRootDatum, Coweight};

/// Spherical Hecke operators in Satake coordinates.
pub type SphericalElement = SymmetricFunction;

/// A point of the dual torus: one invertible scalar per lattice coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct SatakeParameter<E> {
    entries: Vec<E>,
    inverses: Vec<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> SatakeParameter<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, entries: Vec<E>) -> Result<Self> {
        let inverses = entries
            .iter()
            .enumerate()
            .map(|(i, x)| ring.inv(x).ok_or(Error::NotInvertible(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { entries, inverses })
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `s^lambda = prod_j s_j^{lambda_j}`.
    pub fn monomial<R: Ring<Elem = E>>(&self, ring: &R, lambda: &Coweight) -> E {
        let mut acc = ring.one();
        for (j, e) in lambda.0.iter().enumerate() {
            let base = if *e >= 0 { &self.entries[j] } else { &self.inverses[j] };
            if *e != 0 {
                acc = ring.mul(&acc, &ring.pow(base, e.unsigned_abs() as u32));
            }
        }
        acc
    }

    /// Applies a permutation-like lattice automorphism to the coordinates:
    /// the parameter `w(s)` with `w(s)^lambda = s^{w^{-1} lambda}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            entries: perm.iter().map(|&i| self.entries[i].clone()).collect(),
            inverses: perm.iter().map(|&i| self.inverses[i].clone()).collect(),
        }
    }
}

/// JSON form `{domain, entries}` of a parameter over a [`ScalarDomain`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatakeParameterJson {
    pub domain: ScalarDomain,
    pub entries: Vec<String>,
}

impl SatakeParameterJson {
    pub fn from_parameter(domain: &ScalarDomain, s: &SatakeParameter<crate::coeff_ring::Scalar>) -> Self {
        Self { domain: domain.clone(), entries: s.entries.iter().map(|x| domain.render(x)).collect() }
    }

    pub fn to_parameter(&self) -> Result<SatakeParameter<crate::coeff_ring::Scalar>> {
        self.domain.validate()?;
        let entries = self.entries.iter().map(|x| self.domain.parse(x)).collect::<Result<Vec<_>, _>>()?;
        SatakeParameter::new(&self.domain, entries)
    }
}

/// `sum_lambda c_lambda s^lambda`, a ring homomorphism in `f`.
pub fn evaluate<R: Ring>(ring: &R, f: &WeightMultiset, s: &SatakeParameter<R::Elem>) -> Result<R::Elem> {
    let mut acc = ring.zero();
    for (lambda, c) in f.terms() {
        if lambda.dim() != s.rank() {
            return Err(Error::Dimension { expected: s.rank(), got: lambda.dim() });
        }
        let term = ring.mul(&ring.embed(c), &s.monomial(ring, lambda));
        acc = ring.add(&acc, &term);
    }
    Ok(acc)
}

/// Normalization of the Frobenius eigenvalues, as a power of `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistConfig {
    /// `v^{[E:F] d}`, i.e. `q^{[E:F] d / 2}` with `d = dim r_mu`.
    Paper,
    /// `v^{<2 rho, mu>}`, i.e. `q^{<rho, mu>}`.
    Classical,
    Exponent(i64),
}

impl TwistConfig {
    pub fn resolve(&self, datum: &BasedRootDatum, mu: &Coweight, d: usize, e_over_f: i64) -> i64 {
        match self {
            TwistConfig::Paper => e_over_f * d as i64,
            TwistConfig::Classical => datum.rho_pairing_exponent(mu),
            TwistConfig::Exponent(e) => *e,
        }
    }

    pub fn preset_name(&self) -> &'static str {
        match self {
            TwistConfig::Paper => "paper",
            TwistConfig::Classical => "classical",
            TwistConfig::Exponent(_) => "explicit",
        }
    }
}

impl fmt::Display for TwistConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistConfig::Paper => f.write_str("paper"),
            TwistConfig::Classical => f.write_str("classical"),
            TwistConfig::Exponent(e) => write!(f, "exp={e}"),
        }
    }
}

impl FromStr for TwistConfig {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "paper" => Ok(TwistConfig::Paper),
            "classical" => Ok(TwistConfig::Classical),
            other => other
                .strip_prefix("exp=")
                .and_then(|e| e.parse().ok())
                .map(TwistConfig::Exponent)
                .ok_or_else(|| Error::Unsupported(format!("twist {s:?}"))),
        }
    }
}

/// `v^twist r_mu(s)` in the basis of weight vectors: a diagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusMatrix<E> {
    pub weights: Vec<Coweight>,
    pub diagonal: Vec<E>,
}

impl<E: Clone> FrobeniusMatrix<E> {
    pub fn size(&self) -> usize {
        self.diagonal.len()
    }

    pub fn to_matrix<R: Ring<Elem = E>>(&self, ring: &R) -> Matrix<E> {
        Matrix::diagonal(ring, &self.diagonal)
    }
}

#[derive(Serialize)]
pub struct FrobeniusMatrixJson {
    pub weights: Vec<Coweight>,
    pub diagonal: Vec<String>,
}

impl<E: Clone> FrobeniusMatrix<E> {
    pub fn to_json<R: Ring<Elem = E>>(&self, ring: &R) -> FrobeniusMatrixJson {
        FrobeniusMatrixJson { weights: self.weights.clone(), diagonal: self.diagonal.iter().map(|x| ring.render(x)).collect() }
    }
}

pub fn frobenius_matrix<R: Ring>(
    ring: &R,
    datum: &BasedRootDatum,
    mu: &Coweight,
    s: &SatakeParameter<R::Elem>,
    twist_exponent: i64,
) -> Result<FrobeniusMatrix<R::Elem>> {
    if s.rank() != datum.rank() {
        return Err(Error::Dimension { expected: datum.rank(), got: s.rank() });
    }
    let weights = minuscule_weights(datum, mu)?;
    let twist = ring.embed(&LaurentHalf::v_pow(twist_exponent));
    let diagonal = weights.iter().map(|w| ring.mul(&twist, &s.monomial(ring, w))).collect();
    Ok(FrobeniusMatrix { weights, diagonal })
}

/// `[e_0, e_1, ..., e_d]` of the given values.
pub fn elementary_symmetric<R: Ring>(ring: &R, values: &[R::Elem]) -> Vec<R::Elem> {
    let mut e = vec![ring.one()];
    for x in values {
        let mut next = e.clone();
        next.push(ring.zero());
        for k in 1..next.len() {
            next[k] = ring.add(&e.get(k).cloned().unwrap_or_else(|| ring.zero()), &ring.mul(x, &e[k - 1]));
        }
        e = next;
    }
    e
}

/// `tr(wedge^i M)` for a diagonal Frobenius matrix.
pub fn trace_of<R: Ring>(ring: &R, m: &FrobeniusMatrix<R::Elem>, i: usize) -> Result<R::Elem> {
    if i > m.size() {
        return Err(Error::OutOfRange { index: i, max: m.size() });
    }
    Ok(elementary_symmetric(ring, &m.diagonal).swap_remove(i))
}

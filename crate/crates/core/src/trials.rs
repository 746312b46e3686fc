//! Seeded random trials of the relation checks.
//!
//! Trial `t` of a run with seed `s` draws from a ChaCha stream keyed by
//! `(s, t)`, so each trial is reproducible on its own and the reports come
//! back in trial order whatever the thread schedule.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::characters::{ext_power_character, power_sum};
use crate::coeff_ring::{LaurentHalf, PrimeField, Ring, Scalar, ScalarDomain};
use crate::error::{Error, Result};
use crate::hecke_poly::{
    cayley_hamilton_check, evaluate_then_reduce, excursion_values, inertia_relation_check, reduce_mod_ell, HeckePolynomial,
    RelationReport,
};
use crate::matrix::Matrix;
use crate::root_data::BasedRootDatum;
use crate::satake::{evaluate, frobenius_matrix, SatakeParameter};

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Runs `f` on trials `0..count` in parallel; results are in trial order.
pub fn run_trials<T: Send>(count: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    (0..count).into_par_iter().map(f).collect()
}

/// A random invertible parameter in the domain: nonzero residues, nonzero
/// small fractions, or signed powers of `v`.
pub fn random_parameter(dom: &ScalarDomain, rank: usize, rng: &mut ChaCha8Rng) -> Result<SatakeParameter<Scalar>> {
    let entries = (0..rank)
        .map(|_| match dom {
            ScalarDomain::PrimeFieldWithV { ell, .. } => Scalar::Residue(rng.gen_range(1..*ell)),
            ScalarDomain::RationalWithV { .. } => {
                let mut num: i64 = rng.gen_range(1..=9);
                if rng.gen_bool(0.5) {
                    num = -num;
                }
                let den: i64 = rng.gen_range(1..=9);
                Scalar::Rational(BigRational::new(num.into(), den.into()))
            }
            ScalarDomain::FormalLaurent => {
                let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                Scalar::Laurent(LaurentHalf::monomial(sign, rng.gen_range(-3..=3)))
            }
        })
        .collect();
    SatakeParameter::new(dom, entries)
}

pub fn random_integer_matrix(d: usize, bound: i64, rng: &mut ChaCha8Rng) -> Matrix<BigRational> {
    Matrix::from_fn(d, |_, _| BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
}

/// The unipotent Jordan block of size `d`.
pub fn jordan_block(d: usize) -> Matrix<BigRational> {
    Matrix::from_fn(d, |i, j| BigRational::from_integer(BigInt::from(i64::from(i == j || j == i + 1))))
}

fn stamp(mut report: RelationReport, dom: &ScalarDomain, seed: u64, trial: u64, s: &SatakeParameter<Scalar>) -> RelationReport {
    report.domain = Some(dom.clone());
    report.seed = Some(seed);
    report.trial = Some(trial);
    report.parameter = Some(s.entries().iter().map(|x| dom.render(x)).collect());
    report
}

/// Cayley-Hamilton at a random parameter, together with the identity
/// between evaluated coefficients and signed exterior-power traces.
pub fn ch_trial(datum: &BasedRootDatum, h: &HeckePolynomial, dom: &ScalarDomain, seed: u64, trial: u64) -> Result<RelationReport> {
    let mut rng = trial_rng(seed, trial);
    let s = random_parameter(dom, datum.rank(), &mut rng)?;
    let coeffs = h.evaluate_coefficients(dom, &s)?;
    let m = frobenius_matrix(dom, datum, h.mu(), &s, h.twist_exponent())?;
    let report = cayley_hamilton_check(dom, h, &m.to_matrix(dom), &coeffs)?;
    let traces = excursion_values(dom, datum, h.mu(), &s, h.twist_exponent(), true)?;
    let excursion_ok = coeffs.iter().zip(&traces).enumerate().all(|(i, (c, t))| {
        let signed = if i % 2 == 0 { t.value.clone() } else { dom.neg(&t.value) };
        *c == signed
    });
    let ch_ok = report.pass;
    let mut report = report
        .with_detail("cayley_hamilton", ch_ok)
        .with_detail("excursion_identity", excursion_ok)
        .with_detail("coefficients", coeffs.iter().map(|c| dom.render(c)).collect::<Vec<_>>());
    report.pass = ch_ok && excursion_ok;
    Ok(stamp(report, dom, seed, trial, &s))
}

/// Newton's identities `k e_k = sum_{j=1}^k (-1)^{j-1} e_{k-j} p_j` among the
/// exterior-power and power-sum characters of `r_mu`, evaluated at a random
/// parameter.
pub fn newton_trial(datum: &BasedRootDatum, h: &HeckePolynomial, dom: &ScalarDomain, seed: u64, trial: u64) -> Result<RelationReport> {
    let mut rng = trial_rng(seed, trial);
    let s = random_parameter(dom, datum.rank(), &mut rng)?;
    let weights = h.weights();
    let d = weights.len();
    let e: Vec<Scalar> =
        (0..=d).map(|i| evaluate(dom, &ext_power_character(weights, i)?, &s)).collect::<Result<_>>()?;
    let p: Vec<Scalar> = (0..=d).map(|k| evaluate(dom, &power_sum(weights, k as i64), &s)).collect::<Result<_>>()?;
    let mut residual = Vec::with_capacity(d);
    for k in 1..=d {
        let mut rhs = dom.zero();
        for j in 1..=k {
            let term = dom.mul(&e[k - j], &p[j]);
            rhs = if j % 2 == 1 { dom.add(&rhs, &term) } else { dom.sub(&rhs, &term) };
        }
        let lhs = dom.mul(&dom.from_int(k as i64), &e[k]);
        residual.push(dom.sub(&lhs, &rhs));
    }
    let pass = residual.iter().all(|x| dom.is_zero(x));
    let mut report = RelationReport::new("newton", vec![residual.iter().map(|x| dom.render(x)).collect()], pass);
    report.group = Some(h.group().clone());
    report.mu = Some(h.mu().clone());
    report.twist = Some(h.twist_tag());
    Ok(stamp(report, dom, seed, trial, &s))
}

/// Reduction mod `l` against evaluation: evaluating at integer lifts and
/// reducing must agree with reducing the coefficients and evaluating.
pub fn modell_trial(h: &HeckePolynomial, dom: &ScalarDomain, seed: u64, trial: u64) -> Result<RelationReport> {
    let ScalarDomain::PrimeFieldWithV { ell, q, v_image } = dom else {
        return Err(Error::Unsupported("mod-l check needs a prime-field domain".into()));
    };
    let field = PrimeField::new(*ell, *q, *v_image)?;
    let mut rng = trial_rng(seed, trial);
    let s = random_parameter(dom, h.group().rank, &mut rng)?;
    let residues: Vec<u64> = s
        .entries()
        .iter()
        .map(|x| match x {
            Scalar::Residue(r) => *r,
            _ => unreachable!("prime-field parameters are residues"),
        })
        .collect();
    let route_a = evaluate_then_reduce(h, &field, &residues)?;
    let reduced = reduce_mod_ell(h, dom)?;
    let route_b = reduced.evaluate_coefficients(&SatakeParameter::new(&field, residues)?);
    let residual: Vec<String> = route_a.iter().zip(&route_b).map(|(a, b)| field.render(&field.sub(a, b))).collect();
    let pass = route_a == route_b;
    let mut report = RelationReport::new("modell", vec![residual], pass)
        .with_detail("evaluate_then_reduce", route_a)
        .with_detail("reduce_then_evaluate", route_b);
    report.group = Some(h.group().clone());
    report.mu = Some(h.mu().clone());
    report.twist = Some(h.twist_tag());
    Ok(stamp(report, dom, seed, trial, &s))
}

/// Binomial form of the inertia relation on a random integer matrix.
pub fn inertia_trial(d: usize, seed: u64, trial: u64) -> Result<RelationReport> {
    let mut rng = trial_rng(seed, trial);
    let m = random_integer_matrix(d, 5, &mut rng);
    let dom = ScalarDomain::rational(1);
    let ring = crate::coeff_ring::RationalRing::new(BigRational::from_integer(1.into()))?;
    let mut report = inertia_relation_check(&ring, d, &m)?;
    report.seed = Some(seed);
    report.trial = Some(trial);
    report.domain = Some(dom);
    report.parameter = Some(m.rows().iter().flatten().map(|x| x.to_string()).collect());
    Ok(report)
}

/// The inertia relation on the unipotent Jordan block, which passes only if
/// `(M - I)^d` also vanishes.
pub fn unipotent_report(d: usize) -> Result<RelationReport> {
    let ring = crate::coeff_ring::RationalRing::new(BigRational::from_integer(1.into()))?;
    let mut report = inertia_relation_check(&ring, d, &jordan_block(d))?;
    report.check = "inertia-unipotent".into();
    report.pass = report.pass && report.details.get("unipotent") == Some(&serde_json::Value::Bool(true));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke_poly::hecke_polynomial;
    use crate::root_data::{Coweight, Family};
    use crate::satake::TwistConfig;

    fn gl(n: usize) -> BasedRootDatum {
        BasedRootDatum::build_standard(Family::GL, n).unwrap()
    }

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u32> = (0..4).map(|_| trial_rng(42, 3).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| trial_rng(42, 3).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(trial_rng(42, 3).gen::<u64>(), trial_rng(42, 4).gen::<u64>());
    }

    #[test]
    fn ch_trials_pass_in_every_domain() {
        let d = gl(3);
        let h = hecke_polynomial(&d, &Coweight(vec![1, 0, 0]), TwistConfig::Paper, 1).unwrap();
        for dom in [ScalarDomain::prime_field(11, 5, 4).unwrap(), ScalarDomain::rational(3), ScalarDomain::FormalLaurent] {
            let reports = run_trials(5, |t| ch_trial(&d, &h, &dom, 7, t).unwrap());
            assert!(reports.iter().all(|r| r.pass));
            assert_eq!(reports.iter().map(|r| r.trial.unwrap()).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn newton_modell_inertia() {
        let d = gl(4);
        let h = hecke_polynomial(&d, &Coweight(vec![1, 1, 0, 0]), TwistConfig::Paper, 1).unwrap();
        let dom = ScalarDomain::prime_field(7, 2, 3).unwrap();
        assert!(newton_trial(&d, &h, &ScalarDomain::rational(3), 1, 0).unwrap().pass);
        assert!(modell_trial(&h, &dom, 1, 0).unwrap().pass);
        assert!(modell_trial(&h, &ScalarDomain::rational(3), 1, 0).is_err());
        for dim in 2..=6 {
            assert!(inertia_trial(dim, 5, 0).unwrap().pass);
            assert!(unipotent_report(dim).unwrap().pass);
        }
    }

    #[test]
    fn parameters_are_invertible() {
        let mut rng = trial_rng(0, 0);
        for _ in 0..50 {
            random_parameter(&ScalarDomain::rational(3), 3, &mut rng).unwrap();
            random_parameter(&ScalarDomain::prime_field(11, 5, 4).unwrap(), 3, &mut rng).unwrap();
        }
    }
}

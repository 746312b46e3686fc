use std::time::Instant;

use hecke_core::hecke_poly::{hecke_polynomial, GroupTag, HeckePolynomialJson, TwistTag};
use hecke_core::iwahori::IwahoriHecke;
use hecke_core::root_data::DatumDescription;
use hecke_core::satake::{frobenius_matrix, trace_of, FrobeniusMatrixJson};
use hecke_core::trials::{ch_trial, inertia_trial, modell_trial, newton_trial, run_trials, unipotent_report};
use hecke_core::{
    Coweight, Error, HeckePolynomial, RelationReport, Result, Ring, SatakeParameter, ScalarDomain,
    SphericalCosetVector,
};
use serde::Serialize;

use crate::config::{Basis, RunConfig, Suite};

/// What a command produced: text to emit and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct DatumOutput {
    #[serde(flatten)]
    description: DatumDescription,
    semisimple_rank: usize,
    cartan_matrix: Vec<Vec<i64>>,
    positive_roots: usize,
    two_rho: Vec<i64>,
    weyl_order: usize,
    minuscule_dominants: Vec<Coweight>,
    minuscule_bound: i64,
}

pub fn datum(cfg: &RunConfig) -> Result<Outcome> {
    let d = cfg.datum()?;
    let out = DatumOutput {
        description: d.description(),
        semisimple_rank: d.semisimple_rank(),
        cartan_matrix: d.cartan_matrix().to_vec(),
        positive_roots: d.positive_roots().len(),
        two_rho: d.two_rho().to_vec(),
        weyl_order: d.weyl().order(),
        minuscule_dominants: d.minuscule_dominants(cfg.max_norm.max(1)),
        minuscule_bound: cfg.max_norm.max(1),
    };
    Ok(Outcome { text: pretty(&out), pass: true })
}

#[derive(Serialize)]
struct PolyOutput {
    polynomial: HeckePolynomialJson,
    basis: &'static str,
    display: String,
    display_satake: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    double_coset: Option<Vec<SphericalCosetVector>>,
}

fn polynomial(cfg: &RunConfig) -> Result<HeckePolynomial> {
    hecke_polynomial(cfg.datum()?, cfg.mu()?, cfg.twist, cfg.e_over_f)
}

pub fn poly(cfg: &RunConfig) -> Result<Outcome> {
    let d = cfg.datum()?;
    let h = polynomial(cfg)?;
    let display_satake = h.display_satake(d);
    let (basis, display, double_coset) = match cfg.basis {
        Basis::Satake => ("satake", display_satake.clone(), None),
        Basis::DoubleCoset => {
            let engine = IwahoriHecke::with_max_support(d, cfg.max_support);
            let coeffs = engine.hecke_polynomial_double_coset(&h)?;
            ("double-coset", engine.render_double_coset(&coeffs), Some(coeffs))
        }
    };
    let out = PolyOutput { polynomial: h.to_json(), basis, display, display_satake, double_coset };
    Ok(Outcome { text: pretty(&out), pass: true })
}

#[derive(Serialize)]
struct EvalOutput {
    group: GroupTag,
    mu: Coweight,
    twist: TwistTag,
    domain: ScalarDomain,
    parameter: Vec<String>,
    coefficients: Vec<String>,
    exterior_traces: Vec<String>,
    frobenius: FrobeniusMatrixJson,
}

pub fn eval(cfg: &RunConfig) -> Result<Outcome> {
    let d = cfg.datum()?;
    let h = polynomial(cfg)?;
    let dom = &cfg.domain;
    let raw = cfg.param.as_ref().ok_or_else(|| Error::Unsupported("--param is required".into()))?;
    let entries = raw.iter().map(|x| dom.parse(x)).collect::<std::result::Result<Vec<_>, _>>()?;
    let s = SatakeParameter::new(dom, entries)?;
    let coeffs = h.evaluate_coefficients(dom, &s)?;
    let m = frobenius_matrix(dom, d, h.mu(), &s, h.twist_exponent())?;
    let traces = (0..=m.size()).map(|i| trace_of(dom, &m, i)).collect::<Result<Vec<_>>>()?;
    let out = EvalOutput {
        group: h.group().clone(),
        mu: h.mu().clone(),
        twist: h.twist_tag(),
        domain: dom.clone(),
        parameter: s.entries().iter().map(|x| dom.render(x)).collect(),
        coefficients: coeffs.iter().map(|x| dom.render(x)).collect(),
        exterior_traces: traces.iter().map(|x| dom.render(x)).collect(),
        frobenius: m.to_json(dom),
    };
    Ok(Outcome { text: pretty(&out), pass: true })
}

fn timed<F: Fn(u64) -> Result<RelationReport> + Sync + Send>(timing: bool, f: F) -> impl Fn(u64) -> Result<RelationReport> + Sync + Send {
    move |t| {
        let start = Instant::now();
        let mut r = f(t)?;
        if timing {
            r.elapsed_us = Some(start.elapsed().as_micros() as u64);
        }
        Ok(r)
    }
}

fn lines(reports: &[RelationReport]) -> Outcome {
    let mut text = String::new();
    for r in reports {
        text.push_str(&serde_json::to_string(r).expect("serializable report"));
        text.push('\n');
    }
    Outcome { text, pass: reports.iter().all(|r| r.pass) }
}

pub fn verify(suite: Suite, cfg: &RunConfig) -> Result<Outcome> {
    let seed = cfg.seed;
    let reports: Vec<RelationReport> = match suite {
        Suite::Ch | Suite::Newton | Suite::Modell => {
            let d = cfg.datum()?;
            let h = polynomial(cfg)?;
            let dom = &cfg.domain;
            if suite == Suite::Modell && !matches!(dom, ScalarDomain::PrimeFieldWithV { .. }) {
                return Err(Error::Unsupported("verify modell needs --field ell=<p>,v=<r>".into()));
            }
            let run = timed(cfg.timing, |t| match suite {
                Suite::Ch => ch_trial(d, &h, dom, seed, t),
                Suite::Newton => newton_trial(d, &h, dom, seed, t),
                _ => modell_trial(&h, dom, seed, t),
            });
            run_trials(cfg.trials, run).into_iter().collect::<Result<_>>()?
        }
        Suite::Inertia => {
            if cfg.d == 0 {
                return Err(Error::Unsupported("--d must be positive".into()));
            }
            let d = cfg.d;
            let mut reports: Vec<RelationReport> =
                run_trials(cfg.trials, timed(cfg.timing, |t| inertia_trial(d, seed, t))).into_iter().collect::<Result<_>>()?;
            reports.push(unipotent_report(d)?);
            reports
        }
        Suite::Satake => {
            let engine = IwahoriHecke::with_max_support(cfg.datum()?, cfg.max_support);
            let start = Instant::now();
            let mut reports = engine.satake_suite(cfg.max_norm, true)?;
            if cfg.timing {
                let elapsed = start.elapsed().as_micros() as u64;
                for r in &mut reports {
                    r.elapsed_us = Some(elapsed);
                }
            }
            reports
        }
    };
    Ok(lines(&reports))
}

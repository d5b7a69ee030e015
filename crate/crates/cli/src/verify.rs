//! `verify` subcommands: numerical checks with PASS / FAIL / INCONCLUSIVE
//! verdicts mapped to exit codes 0 / 1 / 3.

use serde::Serialize;

use restrikt_core::analysis::Analysis;
use restrikt_core::classify::{classify, critical_exponent};
use restrikt_core::conditions::ExponentPair;
use restrikt_core::rational::{fmt_q, to_f64};
use restrikt_lab::airy::{airy_collapse_check, AiryReport};
use restrikt_lab::decay::{decay_exponent_fit, decay_sweep, prepare_phase, DecayFit, MIN_SAMPLES};
use restrikt_lab::knapp::{knapp_box_check, knapp_weights, KnappReport};
use restrikt_lab::surface::{Method, QuadratureConfig};
use restrikt_lab::vdc::{van_der_corput_check, Amplitude1d, VdcReport};
use restrikt_lab::Verdict;

use crate::args::{Amplitude, Check};
use crate::render::{csv, float, json};
use crate::{
    parse_list, parse_rational_pair, parse_univariate, run_analysis, CliError, Format, Outcome,
};

fn dyadic(min: i32, max: i32) -> Vec<i32> {
    (min..=max).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Sample {
    pub lambda: f64,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub err_est: f64,
    pub cap_hit: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub check: &'static str,
    pub phi: String,
    pub h: String,
    pub nu: u8,
    pub expected_slope: f64,
    pub method: Option<Method>,
    pub swapped: bool,
    pub samples: Vec<Sample>,
    pub fit: Option<DecayFit>,
    pub deviation: Option<f64>,
    pub tol: f64,
    pub verdict: Verdict,
    pub reason: Option<String>,
}

pub fn decay(analysis: &Analysis, ks: &[i32], tol: f64) -> DecayReport {
    let h = to_f64(&analysis.heights.h);
    let nu = analysis.heights.nu;
    let mut report = DecayReport {
        check: "decay",
        phi: analysis.input.to_string(),
        h: fmt_q(&analysis.heights.h),
        nu,
        expected_slope: -1.0 / h,
        method: None,
        swapped: false,
        samples: Vec::new(),
        fit: None,
        deviation: None,
        tol,
        verdict: Verdict::Inconclusive,
        reason: None,
    };
    if !analysis.principal_a.face.is_compact() {
        report.reason = Some("NonCompactPrincipalFace: sharpness check skipped".into());
        return report;
    }
    if ks.len() < MIN_SAMPLES {
        report.reason = Some(format!(
            "GridTooShort: {} samples, need {MIN_SAMPLES}",
            ks.len()
        ));
        return report;
    }
    let prepared = prepare_phase(&analysis.input.to_f64());
    report.swapped = prepared.swapped;
    let results = decay_sweep(&prepared, ks, &QuadratureConfig::default());
    for (k, r) in ks.iter().zip(results) {
        let lambda = 2f64.powi(*k);
        match r {
            Ok(s) => {
                report.method = Some(s.method);
                report.samples.push(Sample {
                    lambda,
                    re: s.value.re,
                    im: s.value.im,
                    abs: s.value.norm(),
                    err_est: s.error_estimate,
                    cap_hit: s.cap_hit,
                });
            }
            Err(e) => {
                report.reason = Some(format!("QuadratureError: {e}"));
                return report;
            }
        }
    }
    let lambdas: Vec<f64> = report.samples.iter().map(|s| s.lambda).collect();
    let values: Vec<f64> = report.samples.iter().map(|s| s.abs).collect();
    let fit = decay_exponent_fit(&lambdas, &values, nu).expect("enough samples");
    let v = fit.compare_to(h, tol);
    report.deviation = Some(v.deviation);
    report.verdict = v.verdict;
    report.reason = v.reason;
    if report.samples.iter().any(|s| s.cap_hit) && report.verdict == Verdict::Pass {
        report.verdict = Verdict::Inconclusive;
        report.reason = Some("SubdivisionCapHit".into());
    }
    report.fit = Some(fit);
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct KnappSummary {
    pub check: &'static str,
    pub phi: String,
    pub q: Option<ExponentPair>,
    pub weights: Vec<KnappReport>,
    pub verdict: Verdict,
}

pub fn knapp(
    analysis: &Analysis,
    ks: &[i32],
    grid: usize,
    q: Option<ExponentPair>,
) -> Result<KnappSummary, CliError> {
    if analysis.augmented.is_none() {
        return Err(CliError::new(
            "AdaptedInput",
            "Knapp boxes need a phase that is not adapted",
        ));
    }
    let q = q.or_else(|| classify(analysis).ok().as_ref().and_then(critical_exponent));
    let weights = knapp_weights(analysis)
        .iter()
        .map(|w| knapp_box_check(analysis, w, ks, grid, q.as_ref()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::new("WeightNotSupporting", e))?;
    let verdict = if ks.is_empty() {
        Verdict::Inconclusive
    } else if weights.iter().all(|r| r.verdict == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(KnappSummary {
        check: "knapp",
        phi: analysis.input.to_string(),
        q,
        weights,
        verdict,
    })
}

#[derive(Serialize)]
struct Tagged<'a, T> {
    check: &'static str,
    #[serde(flatten)]
    report: &'a T,
}

pub(crate) fn run(check: &Check) -> Result<Outcome, CliError> {
    match check {
        Check::Decay {
            phase,
            output,
            lambda_min,
            lambda_max,
            tol,
        } => {
            let analysis = run_analysis(phase)?;
            let r = decay(&analysis, &dyadic(*lambda_min, *lambda_max), *tol);
            let body = match output.format() {
                Format::Json => json(&r),
                Format::Csv => csv(
                    &["lambda", "re", "im", "abs", "err_est"],
                    r.samples
                        .iter()
                        .map(|s| [s.lambda, s.re, s.im, s.abs, s.err_est].map(float)),
                ),
            };
            Ok(Outcome {
                body,
                exit_code: r.verdict.exit_code(),
            })
        }
        Check::Vdc {
            phi,
            output,
            order,
            interval,
            amplitude,
            lambda_min,
            lambda_max,
        } => {
            let f = parse_univariate(phi)?;
            let ends: Vec<f64> = parse_list(interval, "interval")?;
            let &[a, b] = ends.as_slice() else {
                return Err(CliError::new("InvalidArgument", "interval must be `a,b`"));
            };
            let g = match amplitude {
                Amplitude::One => Amplitude1d::One,
                Amplitude::Bump => Amplitude1d::Bump {
                    center: (a + b) / 2.0,
                    radius: (b - a) / 2.0,
                },
            };
            let lambdas: Vec<f64> = dyadic(*lambda_min, *lambda_max)
                .into_iter()
                .map(|k| 2f64.powi(k))
                .collect();
            let mut r: VdcReport =
                van_der_corput_check(&f, *order, g, (a, b), &lambdas).map_err(|e| {
                    let kind = match e {
                        restrikt_lab::vdc::VdcError::HypothesisUnverified { .. } => {
                            "HypothesisUnverified"
                        }
                        restrikt_lab::vdc::VdcError::EmptyInterval => "EmptyInterval",
                    };
                    CliError::new(kind, e)
                })?;
            if lambdas.is_empty() {
                r.verdict = Verdict::Inconclusive;
            }
            let body = match output.format() {
                Format::Json => json(&Tagged {
                    check: "vdc",
                    report: &r,
                }),
                Format::Csv => csv(
                    &["lambda", "scaled"],
                    r.lambdas
                        .iter()
                        .zip(&r.scaled)
                        .map(|(l, s)| [float(*l), float(*s)]),
                ),
            };
            Ok(Outcome {
                body,
                exit_code: r.verdict.exit_code(),
            })
        }
        Check::Airy {
            phi,
            output,
            v,
            radius,
            lambda_min,
            lambda_max,
        } => {
            let b = parse_univariate(phi)?;
            let v_grid: Vec<f64> = parse_list(v, "v grid")?;
            let lambdas: Vec<f64> = dyadic(*lambda_min, *lambda_max)
                .into_iter()
                .map(|k| 2f64.powi(k))
                .collect();
            let r: AiryReport = airy_collapse_check(&b, *radius, &lambdas, &v_grid)
                .map_err(|e| CliError::new("DegenerateB", e))?;
            let body = match output.format() {
                Format::Json => json(&Tagged {
                    check: "airy",
                    report: &r,
                }),
                Format::Csv => csv(
                    &["v", "lambda", "abs"],
                    r.rows.iter().flat_map(|row| {
                        r.lambdas
                            .iter()
                            .zip(&row.values)
                            .map(move |(l, x)| [float(row.v), float(*l), float(*x)])
                    }),
                ),
            };
            Ok(Outcome {
                body,
                exit_code: r.verdict.exit_code(),
            })
        }
        Check::Knapp {
            phase,
            output,
            eps_min,
            eps_max,
            grid,
            q,
        } => {
            let analysis = run_analysis(phase)?;
            let q = q
                .as_deref()
                .map(parse_rational_pair)
                .transpose()?
                .map(|(x, y)| ExponentPair::new(x, y));
            let r = knapp(&analysis, &dyadic(*eps_min, *eps_max), *grid, q)?;
            let body = match output.format() {
                Format::Json => json(&r),
                Format::Csv => csv(
                    &["weight", "eps", "sup_phi_over_eps"],
                    r.weights.iter().flat_map(|w| {
                        w.eps_grid
                            .iter()
                            .zip(&w.sup_phi_over_eps)
                            .map(|(e, s)| [w.weight.to_string(), float(*e), float(*s)])
                    }),
                ),
            };
            Ok(Outcome {
                body,
                exit_code: r.verdict.exit_code(),
            })
        }
    }
}

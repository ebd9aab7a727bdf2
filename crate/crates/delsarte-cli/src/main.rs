//! Command-line front end: scheme inspection, subset analysis, complete
//! regularity checks, annihilator identities, induced-scheme certification,
//! spherical moment analysis, and the worked-example reproduction harness.
//!
//! Exit codes: 0 success, 1 input/usage error, 2 verification failure
//! (a theorem-level check that should never fail on correct inputs).

mod examples;
mod report;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use delsarte::arith::rat_to_string;
use delsarte::distribution::analyze_subset;
use delsarte::induced::{induce_scheme, InduceOptions, InducedError};
use delsarte::io::{build_scheme, parse_scheme_descriptor, parse_subset_file};
use delsarte::polynomial::{annihilator_from_roots, verify_pcar, verify_qcar, GridSide};
use delsarte::regularity::{
    check_int_condition, check_mainth_hypothesis, is_completely_regular, linear_code_regularity,
    outer_distribution, outer_rank, rank_certificate, RankCertificate, RegularityError,
};
use delsarte::scheme::AssociationScheme;
use delsarte::spherical::{
    design_check, moments, parse_point_file, spherical_analysis, Moments, SphericalError,
};
use report::{analysis_json, envelope, rat_vec, IntervalJson, RatJson};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "delsarte", version, about = "Delsarte-theoretic subset analysis")]
struct Cli {
    /// worker thread cap (also via DELSARTE_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// write the report here instead of standard output
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SchemeArg {
    /// inline JSON descriptor or a path to one
    #[arg(long)]
    scheme: String,
}

#[derive(Args)]
struct CodeArg {
    /// subset file: codewords (Hamming), k-subsets (Johnson), or indices
    #[arg(long)]
    code: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Print the spectral data of a scheme
    SchemeInfo(SchemeArg),
    /// Inner/dual distributions, intervals, degree sets, bound checks
    Analyze {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        code: CodeArg,
    },
    /// Outer distribution, covering radius, complete regularity
    CrCheck {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        code: CodeArg,
        /// check the zero-interval main-theorem hypothesis at this offset
        #[arg(long)]
        w: Option<usize>,
        /// also emit a rank certificate at the first subset element
        #[arg(long)]
        certify_rank: bool,
    },
    /// Annihilator polynomial of a subset and its characteristic identity
    Annihilate {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        code: CodeArg,
        /// use the dual grid (annihilator of the degree set)
        #[arg(long)]
        dual: bool,
    },
    /// Certify the induced scheme on a subset
    Induce {
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        code: CodeArg,
        /// verify every triple regardless of subset size
        #[arg(long)]
        full_verify: bool,
    },
    /// Gegenbauer moments, design checks, and spherical intervals
    Spherical {
        /// point file: one point per line; rational entries keep exact mode
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value_t = 10)]
        kmax: usize,
        /// check a specific (w, t) design property
        #[arg(long, num_args = 2, value_names = ["W", "T"])]
        design: Option<Vec<usize>>,
    },
    /// Recompute the worked code examples and certify their conclusions
    ReproduceExamples {
        /// run a single example by name
        #[arg(long)]
        which: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("DELSARTE_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);
    if threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(2)
        }
    }
}

enum Failure {
    Input(anyhow::Error),
    Verification(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn load_scheme(arg: &SchemeArg) -> Result<AssociationScheme> {
    let text = if arg.scheme.trim_start().starts_with('{') {
        arg.scheme.clone()
    } else {
        std::fs::read_to_string(&arg.scheme)
            .with_context(|| format!("reading scheme file {}", arg.scheme))?
    };
    let desc = parse_scheme_descriptor(&text)?;
    Ok(build_scheme(&desc)?)
}

fn load_subset(scheme: &AssociationScheme, code: &CodeArg) -> Result<Vec<u64>> {
    let text = std::fs::read_to_string(&code.code)
        .with_context(|| format!("reading code file {}", code.code.display()))?;
    Ok(parse_subset_file(scheme, &text)?)
}

fn emit<T: Serialize>(out: &Option<PathBuf>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).context("serializing report")?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let out = cli.report.clone();
    match cli.command {
        Command::SchemeInfo(arg) => {
            let scheme = load_scheme(&arg)?;
            #[derive(Serialize)]
            struct Payload {
                valencies: Vec<RatJson>,
                multiplicities: Vec<RatJson>,
                p_matrix: Vec<Vec<RatJson>>,
                q_matrix: Vec<Vec<RatJson>>,
                p_polynomial_ordering: Option<Vec<usize>>,
                q_polynomial_ordering: Option<Vec<usize>>,
            }
            let d1 = scheme.num_classes() + 1;
            let payload = Payload {
                valencies: scheme
                    .valencies()
                    .iter()
                    .map(|v| RatJson(delsarte::arith::Rat::from_integer(v.clone())))
                    .collect(),
                multiplicities: scheme
                    .multiplicities()
                    .iter()
                    .map(|v| RatJson(delsarte::arith::Rat::from_integer(v.clone())))
                    .collect(),
                p_matrix: (0..d1)
                    .map(|i| (0..d1).map(|j| RatJson(scheme.p_matrix()[(i, j)].clone())).collect())
                    .collect(),
                q_matrix: (0..d1)
                    .map(|i| (0..d1).map(|j| RatJson(scheme.q_matrix()[(i, j)].clone())).collect())
                    .collect(),
                p_polynomial_ordering: scheme.p_polynomial_ordering().map(|o| o.to_vec()),
                q_polynomial_ordering: scheme.q_polynomial_ordering().map(|o| o.to_vec()),
            };
            emit(&out, &envelope("scheme-info", Some(&scheme), payload))?;
            Ok(())
        }
        Command::Analyze { scheme, code } => {
            let scheme = load_scheme(&scheme)?;
            let subset = load_subset(&scheme, &code)?;
            let analysis =
                analyze_subset(&scheme, &subset).map_err(|e| Failure::Input(anyhow!(e)))?;
            if analysis.has_bound_violation() {
                return Err(Failure::Verification(
                    "an interval bound is violated; this falsifies the implementation".into(),
                ));
            }
            emit(&out, &envelope("analyze", Some(&scheme), analysis_json(&analysis)))?;
            Ok(())
        }
        Command::CrCheck {
            scheme,
            code,
            w,
            certify_rank,
        } => {
            let scheme = load_scheme(&scheme)?;
            let subset = load_subset(&scheme, &code)?;
            run_cr_check(&scheme, &subset, w, certify_rank, &out)
        }
        Command::Annihilate { scheme, code, dual } => {
            let scheme = load_scheme(&scheme)?;
            let subset = load_subset(&scheme, &code)?;
            let analysis =
                analyze_subset(&scheme, &subset).map_err(|e| Failure::Input(anyhow!(e)))?;
            let side = if dual { GridSide::Dual } else { GridSide::Primal };
            let roots = if dual {
                analysis.degree_set.clone()
            } else {
                analysis.dual_degree_set.clone()
            };
            let f = annihilator_from_roots(&scheme, &roots, side)
                .map_err(|e| Failure::Input(anyhow!(e)))?;
            let residual = if dual {
                verify_qcar(&scheme, &analysis, &f)
            } else {
                verify_pcar(&scheme, &analysis, &f)
            }
            .map_err(|e| Failure::Input(anyhow!(e)))?;
            if !num::Zero::is_zero(&residual) && scheme.number_mode().is_exact() {
                return Err(Failure::Verification(format!(
                    "characteristic identity residual {} is nonzero",
                    rat_to_string(&residual)
                )));
            }
            #[derive(Serialize)]
            struct Payload {
                side: &'static str,
                roots: Vec<usize>,
                monomial_coefficients: Vec<RatJson>,
                basis_expansion: Vec<RatJson>,
                residual: RatJson,
            }
            let payload = Payload {
                side: if dual { "dual" } else { "primal" },
                roots: f.roots.clone(),
                monomial_coefficients: rat_vec(&f.monomial),
                basis_expansion: rat_vec(&f.expansion),
                residual: RatJson(residual),
            };
            emit(&out, &envelope("annihilate", Some(&scheme), payload))?;
            Ok(())
        }
        Command::Induce {
            scheme,
            code,
            full_verify,
        } => {
            let scheme = load_scheme(&scheme)?;
            let subset = load_subset(&scheme, &code)?;
            let options = InduceOptions {
                full_verify,
                ..InduceOptions::default()
            };
            let result = induce_scheme(&scheme, &subset, options);
            let report = match result {
                Ok(r) => r,
                Err(InducedError::TheoremViolation(msg)) => {
                    return Err(Failure::Verification(msg));
                }
                Err(e) => return Err(Failure::Input(anyhow!(e))),
            };
            #[derive(Serialize)]
            struct InducedPayload {
                classes: usize,
                scheme_ok: bool,
                q_polynomial: bool,
                ordering: Option<Vec<usize>>,
                fully_verified: bool,
                number_mode: String,
            }
            #[derive(Serialize)]
            struct Payload {
                degree_set: Vec<usize>,
                s: usize,
                hypothesis: Hypothesis,
                induced: InducedPayload,
            }
            #[derive(Serialize)]
            struct Hypothesis {
                w_star: Option<usize>,
                holds: bool,
            }
            let payload = Payload {
                degree_set: report.degree_set.clone(),
                s: report.degree,
                hypothesis: Hypothesis {
                    w_star: report.w_star,
                    holds: report.w_star.is_some(),
                },
                induced: InducedPayload {
                    classes: report.scheme.num_classes(),
                    scheme_ok: true,
                    q_polynomial: report.q_polynomial,
                    ordering: report.q_ordering.clone(),
                    fully_verified: report.fully_verified,
                    number_mode: if report.scheme.number_mode().is_exact() {
                        "exact".into()
                    } else {
                        "approx".into()
                    },
                },
            };
            emit(&out, &envelope("induce", Some(&scheme), payload))?;
            Ok(())
        }
        Command::Spherical {
            points,
            kmax,
            design,
        } => {
            let text = std::fs::read_to_string(&points)
                .with_context(|| format!("reading point file {}", points.display()))
                .map_err(Failure::Input)?;
            let ps = parse_point_file(None, &text).map_err(|e| Failure::Input(anyhow!(e)))?;
            let report = match spherical_analysis(&ps, kmax) {
                Ok(r) => r,
                Err(e @ SphericalError::BoundViolation { .. })
                | Err(e @ SphericalError::PositivityViolation { .. }) => {
                    return Err(Failure::Verification(e.to_string()));
                }
                Err(e) => return Err(Failure::Input(anyhow!(e))),
            };
            let design_verdict = match &design {
                Some(wt) => {
                    let (w, t) = (wt[0], wt[1]);
                    if w + t > kmax {
                        return Err(Failure::Input(anyhow!(
                            "design window (w={w}, t={t}) exceeds kmax={kmax}"
                        )));
                    }
                    let b = moments(&ps, w + t).map_err(|e| Failure::Input(anyhow!(e)))?;
                    Some(DesignJson {
                        w,
                        t,
                        is_design: design_check(&ps, &b, w, t),
                    })
                }
                None => None,
            };
            #[derive(Serialize)]
            struct DesignJson {
                w: usize,
                t: usize,
                is_design: bool,
            }
            #[derive(Serialize)]
            struct SphericalInterval {
                w: usize,
                t: usize,
                closed: bool,
            }
            #[derive(Serialize)]
            struct Certificate {
                classes: usize,
                scheme_ok: bool,
                q_polynomial: bool,
                ordering: Option<Vec<usize>>,
                exact: bool,
            }
            #[derive(Serialize)]
            struct Payload {
                size: usize,
                dim: u32,
                exact: bool,
                moments: Vec<serde_json::Value>,
                degree_values: Vec<f64>,
                degree: usize,
                intervals: Vec<SphericalInterval>,
                #[serde(skip_serializing_if = "Option::is_none")]
                design: Option<DesignJson>,
                #[serde(skip_serializing_if = "Option::is_none")]
                certificate: Option<Certificate>,
            }
            let moment_values: Vec<serde_json::Value> = match &report.moments {
                Moments::Exact(v) => v
                    .iter()
                    .map(|r| serde_json::to_value(RatJson(r.clone())).unwrap())
                    .collect(),
                Moments::Float(v) => v
                    .iter()
                    .map(|x| serde_json::json!(x))
                    .collect(),
            };
            let payload = Payload {
                size: report.size,
                dim: report.dim,
                exact: report.exact,
                moments: moment_values,
                degree_values: report.degree_values.clone(),
                degree: report.degree,
                intervals: report
                    .intervals
                    .iter()
                    .map(|iv| SphericalInterval {
                        w: iv.w,
                        t: iv.t,
                        closed: iv.closed,
                    })
                    .collect(),
                design: design_verdict,
                certificate: report.certificate.as_ref().map(|c| Certificate {
                    classes: c.classes,
                    scheme_ok: c.scheme_ok,
                    q_polynomial: c.q_polynomial,
                    ordering: c.q_ordering.clone(),
                    exact: c.exact,
                }),
            };
            emit(&out, &envelope("spherical", None, payload))?;
            Ok(())
        }
        Command::ReproduceExamples { which } => {
            let reports = examples::run_all(which.as_deref()).map_err(|e| match e {
                examples::ExampleFailure::UnknownName(msg) => Failure::Input(anyhow!(msg)),
                examples::ExampleFailure::Verification(msg) => Failure::Verification(msg),
            })?;
            #[derive(Serialize)]
            struct Payload {
                examples: Vec<examples::ExampleReport>,
            }
            emit(&out, &envelope("reproduce-examples", None, Payload { examples: reports }))?;
            Ok(())
        }
    }
}

fn run_cr_check(
    scheme: &AssociationScheme,
    subset: &[u64],
    w: Option<usize>,
    certify_rank: bool,
    out: &Option<PathBuf>,
) -> Result<(), Failure> {
    let analysis = analyze_subset(scheme, subset).map_err(|e| Failure::Input(anyhow!(e)))?;

    #[derive(Serialize)]
    struct HypothesisJson {
        w: usize,
        hypothesis_holds: bool,
        completely_regular: Option<bool>,
    }
    #[derive(Serialize)]
    struct PredictionJson {
        interval: IntervalJson,
        condition_met: bool,
        confirmed: Option<bool>,
    }
    #[derive(Serialize)]
    struct RankJson {
        base_point: u64,
        status: String,
        w_x: Option<usize>,
        t_x: Option<usize>,
        chain_length: Option<usize>,
        rank_b: Option<usize>,
    }
    #[derive(Serialize)]
    struct Payload {
        rho: usize,
        completely_regular: bool,
        witness: Option<(u64, u64)>,
        quotient_table: Option<Vec<Vec<u64>>>,
        rank_b: usize,
        dual_degree: usize,
        hypothesis_checks: Vec<HypothesisJson>,
        interval_predictions: Vec<PredictionJson>,
        #[serde(skip_serializing_if = "Option::is_none")]
        rank_certificate: Option<RankJson>,
        path: &'static str,
    }

    // large binary Hamming schemes: use the coset quotient when the subset
    // is a linear code, otherwise enumeration must fit the size guard
    let use_coset = scheme.num_vertices() > delsarte::regularity::OUTER_SIZE_CAP;
    if use_coset {
        let n = match scheme.vertex_set() {
            delsarte::scheme::VertexSet::Hamming { n, q: 2 } => *n,
            _ => {
                return Err(Failure::Input(anyhow!(
                    "scheme too large for enumeration and not a binary Hamming scheme"
                )))
            }
        };
        let code = delsarte::gf2::BinaryCode::new(n as usize, subset.to_vec());
        if (1u64 << code.dimension()) != subset.len() as u64 || !code.contains(0) {
            return Err(Failure::Input(anyhow!(
                "scheme too large for enumeration and the subset is not a linear code"
            )));
        }
        let coset = linear_code_regularity(&code);
        let payload = Payload {
            rho: coset.covering_radius,
            completely_regular: coset.completely_regular,
            witness: coset.witness,
            quotient_table: coset.quotient.clone(),
            rank_b: coset.rank,
            dual_degree: analysis.dual_degree(),
            hypothesis_checks: Vec::new(),
            interval_predictions: Vec::new(),
            rank_certificate: None,
            path: "coset-quotient",
        };
        if coset.rank != analysis.dual_degree() + 1 {
            return Err(Failure::Verification(format!(
                "rank(B) = {} but s*+1 = {}",
                coset.rank,
                analysis.dual_degree() + 1
            )));
        }
        emit(out, &envelope("cr-check", Some(scheme), payload))?;
        return Ok(());
    }

    let outer = outer_distribution(scheme, subset).map_err(|e| Failure::Input(anyhow!(e)))?;
    let verdict = is_completely_regular(&outer);
    let mut hypothesis_checks = Vec::new();
    if let Some(w) = w {
        match check_mainth_hypothesis(scheme, &outer, &analysis, w) {
            Ok(v) => hypothesis_checks.push(HypothesisJson {
                w: v.w,
                hypothesis_holds: v.hypothesis_holds,
                completely_regular: v.completely_regular,
            }),
            Err(RegularityError::TheoremViolation(msg)) => {
                return Err(Failure::Verification(msg))
            }
            Err(e) => return Err(Failure::Input(anyhow!(e))),
        }
    }
    let predictions = match check_int_condition(&outer, &analysis) {
        Ok(p) => p,
        Err(RegularityError::TheoremViolation(msg)) => return Err(Failure::Verification(msg)),
        Err(e) => return Err(Failure::Input(anyhow!(e))),
    };
    let rank_cert = if certify_rank {
        let base = subset[0];
        let interval = analysis
            .zero_intervals
            .iter()
            .find(|iv| !iv.terminal)
            .copied();
        match interval {
            Some(iv) => match rank_certificate(scheme, subset, &outer, iv, base) {
                Ok(RankCertificate::Certified {
                    w_x,
                    t_x,
                    chain_length,
                    rank_b,
                    ..
                }) => Some(RankJson {
                    base_point: base,
                    status: "certified".into(),
                    w_x: Some(w_x),
                    t_x: Some(t_x),
                    chain_length: Some(chain_length),
                    rank_b: Some(rank_b),
                }),
                Ok(RankCertificate::Skipped { reason }) => Some(RankJson {
                    base_point: base,
                    status: format!("skipped: {reason}"),
                    w_x: None,
                    t_x: None,
                    chain_length: None,
                    rank_b: None,
                }),
                Err(RegularityError::TheoremViolation(msg)) => {
                    return Err(Failure::Verification(msg))
                }
                Err(e) => return Err(Failure::Input(anyhow!(e))),
            },
            None => Some(RankJson {
                base_point: base,
                status: "skipped: no interior zero interval".into(),
                w_x: None,
                t_x: None,
                chain_length: None,
                rank_b: None,
            }),
        }
    } else {
        None
    };
    let payload = Payload {
        rho: outer.covering_radius,
        completely_regular: verdict.completely_regular,
        witness: verdict.witness,
        quotient_table: verdict.quotient,
        rank_b: outer_rank(&outer),
        dual_degree: analysis.dual_degree(),
        hypothesis_checks,
        interval_predictions: predictions
            .iter()
            .map(|p| PredictionJson {
                interval: IntervalJson {
                    w: p.interval.w,
                    t: p.interval.t,
                    terminal: p.interval.terminal,
                },
                condition_met: p.condition_met,
                confirmed: p.confirmed,
            })
            .collect(),
        rank_certificate: rank_cert,
        path: "enumeration",
    };
    emit(out, &envelope("cr-check", Some(scheme), payload))?;
    Ok(())
}

//! `johnson`: exact spectra of subset representations from the command line.
//!
//! Every subcommand writes one JSON envelope to stdout, or plain CSV where
//! `--format csv` applies; diagnostics go to stderr. All numbers are decimal
//! strings, rationals as "p/q" with the sign on the numerator and "/q"
//! omitted when the denominator is 1. Exit codes: 0 success, 1 a check ran
//! and found a mismatch, 2 bad arguments, 3 size cap breached.

use std::fmt::Display;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use johnson::elk::elk_verify;
use johnson::error::Error;
use johnson::intertwiner::{
    build_specialized_capped, build_symbolic_capped, LinearForm, DEFAULT_SIZE_CAP,
};
use johnson::spectrum::{eberlein, eigenmatrix_p, spectrum_report, verify_corollary};
use johnson::symmetrizer::young_eigenvector;
use johnson::verify::{draw_generic_parameters, full_spectrum_check, seeded_rng};

#[derive(Parser)]
#[command(name = "johnson", version, about = "Exact spectra of subset representations of S_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the intertwining matrix B, symbolic unless --b is given.
    Matrix {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Class parameters b_0,...,b_m as comma-separated rationals.
        #[arg(long)]
        b: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Override the default dimension cap; large outputs are on you.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Eigenvalue forms, multiplicities, and the eigenmatrix P.
    Spectrum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Evaluate the eigenvalues at these parameters as well.
        #[arg(long)]
        b: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Integer eigenvectors from Young symmetrizers, one k or all.
    Eigenvectors {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: Option<u32>,
    },
    /// The Eberlein value table E_t(k) and the coefficient identity.
    Eberlein {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
    },
    /// Check the ELK eigenvalue collapse for every m up to a bound.
    ElkCheck {
        #[arg(long)]
        m_max: u32,
    },
    /// Run the brute-force oracle on seeded random parameter draws.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Seed for the parameter draws; falls back to $JOHNSON_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        draws: u32,
    },
}

#[derive(Serialize, Deserialize, Debug)]
struct Envelope {
    version: String,
    command: String,
    parameters: Parameters,
    status: String,
    payload: Payload,
}

#[derive(Serialize, Deserialize, Debug, Default)]
struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    draws: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cap: Option<usize>,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Payload {
    Matrix {
        dim: usize,
        entries: MatrixEntries,
    },
    Spectrum {
        records: Vec<SpectrumRow>,
        eigenmatrix: Vec<Vec<String>>,
    },
    Eigenvectors {
        vectors: Vec<EigenvectorRow>,
    },
    Eberlein {
        table: Vec<Vec<String>>,
        identity: Vec<CorollaryRow>,
        all_pass: bool,
    },
    ElkCheck {
        reports: Vec<ElkReportRow>,
        all_match: bool,
    },
    Verify {
        draws: Vec<DrawRow>,
        all_pass: bool,
    },
}

/// Specialized entries are "p/q" cells; symbolic entries are coefficient
/// vectors [c_0,...,c_m] of decimal strings.
#[derive(Serialize, Deserialize, Debug)]
#[serde(untagged)]
enum MatrixEntries {
    Specialized(Vec<Vec<String>>),
    Symbolic(Vec<Vec<Vec<String>>>),
}

#[derive(Serialize, Deserialize, Debug)]
struct SpectrumRow {
    k: u32,
    coefficients: Vec<String>,
    form: String,
    multiplicity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

#[derive(Serialize, Deserialize, Debug)]
struct EigenvectorRow {
    k: u32,
    eigenvalue: Vec<String>,
    coords: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug)]
struct CorollaryRow {
    t: u32,
    k: u32,
    eberlein: String,
    corollary_sum: String,
    eigen_coeff: String,
    pass: bool,
}

#[derive(Serialize, Deserialize, Debug)]
struct ElkReportRow {
    m: u32,
    b: Vec<String>,
    rows: Vec<ElkValueRow>,
    all_match: bool,
}

#[derive(Serialize, Deserialize, Debug)]
struct ElkValueRow {
    k: u32,
    via_eigenvalue_form: String,
    closed_form: String,
    multiplicity: String,
    matches: bool,
}

#[derive(Serialize, Deserialize, Debug)]
struct DrawRow {
    draw: u32,
    b: Vec<String>,
    checks: Vec<CheckRow>,
    all_pass: bool,
}

#[derive(Serialize, Deserialize, Debug)]
struct CheckRow {
    name: String,
    expected: String,
    actual: String,
    pass: bool,
}

enum Output {
    Json(Envelope),
    Csv(String),
}

fn strings<T: Display>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn parse_rational(cell: &str) -> Result<BigRational, Error> {
    let bad = |detail: String| Error::OutOfRange(format!("cannot parse rational {cell:?}: {detail}"));
    let mut parts = cell.splitn(2, '/');
    let numer = BigInt::from_str(parts.next().unwrap_or("").trim())
        .map_err(|e| bad(e.to_string()))?;
    let denom = match parts.next() {
        Some(text) => BigInt::from_str(text.trim()).map_err(|e| bad(e.to_string()))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad("zero denominator".into()));
    }
    Ok(BigRational::new(numer, denom))
}

fn parse_b(text: &str) -> Result<Vec<BigRational>, Error> {
    text.split(',').map(parse_rational).collect()
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("JOHNSON_SEED") {
        Ok(text) => text.trim().parse().map_err(|_| {
            Error::OutOfRange(format!("JOHNSON_SEED must be an unsigned integer, got {text:?}"))
        }),
        Err(_) => Ok(0),
    }
}

fn envelope(command: &str, parameters: Parameters, pass: bool, payload: Payload) -> Envelope {
    Envelope {
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        parameters,
        status: if pass { "ok" } else { "fail" }.to_string(),
        payload,
    }
}

fn coefficient_strings(form: &LinearForm) -> Vec<String> {
    strings(form.coeffs())
}

fn run(cli: Cli) -> Result<Output, Error> {
    match cli.command {
        Command::Matrix { n, m, b, format, cap } => {
            let limit = cap.unwrap_or(DEFAULT_SIZE_CAP);
            let parameters = Parameters {
                n: Some(n),
                m: Some(m),
                b: b.as_deref().map(parse_b).transpose()?.map(|v| strings(&v)),
                cap,
                ..Parameters::default()
            };
            match b {
                Some(text) => {
                    let b = parse_b(&text)?;
                    let matrix = build_specialized_capped(n, m, &b, limit)?;
                    let d = matrix.dim();
                    match format {
                        Format::Csv => {
                            let mut out = String::new();
                            for r in 0..d {
                                let cells: Vec<String> =
                                    (0..d).map(|c| matrix.entry(r, c).to_string()).collect();
                                out.push_str(&cells.join(","));
                                out.push('\n');
                            }
                            Ok(Output::Csv(out))
                        }
                        Format::Json => {
                            let entries = (0..d)
                                .map(|r| (0..d).map(|c| matrix.entry(r, c).to_string()).collect())
                                .collect();
                            Ok(Output::Json(envelope(
                                "matrix",
                                parameters,
                                true,
                                Payload::Matrix {
                                    dim: d,
                                    entries: MatrixEntries::Specialized(entries),
                                },
                            )))
                        }
                    }
                }
                None => {
                    let matrix = build_symbolic_capped(n, m, limit)?;
                    let d = matrix.dim();
                    match format {
                        Format::Csv => {
                            // Coefficient-vector cells contain commas, so
                            // they are quoted.
                            let mut out = String::new();
                            for r in 0..d {
                                let cells: Vec<String> = (0..d)
                                    .map(|c| {
                                        let coeffs = coefficient_strings(matrix.entry(r, c));
                                        format!("\"[{}]\"", coeffs.join(","))
                                    })
                                    .collect();
                                out.push_str(&cells.join(","));
                                out.push('\n');
                            }
                            Ok(Output::Csv(out))
                        }
                        Format::Json => {
                            let entries = (0..d)
                                .map(|r| {
                                    (0..d)
                                        .map(|c| coefficient_strings(matrix.entry(r, c)))
                                        .collect()
                                })
                                .collect();
                            Ok(Output::Json(envelope(
                                "matrix",
                                parameters,
                                true,
                                Payload::Matrix {
                                    dim: d,
                                    entries: MatrixEntries::Symbolic(entries),
                                },
                            )))
                        }
                    }
                }
            }
        }

        Command::Spectrum { n, m, b, format } => {
            let b = b.as_deref().map(parse_b).transpose()?;
            let parameters = Parameters {
                n: Some(n),
                m: Some(m),
                b: b.as_ref().map(|v| strings(v)),
                ..Parameters::default()
            };
            let report = spectrum_report(n, m, b.as_deref())?;
            let records: Vec<SpectrumRow> = report
                .records
                .iter()
                .map(|r| SpectrumRow {
                    k: r.k,
                    coefficients: coefficient_strings(&r.eigenvalue),
                    form: r.eigenvalue.to_string(),
                    multiplicity: r.multiplicity.to_string(),
                    value: r.value.as_ref().map(|v| v.to_string()),
                })
                .collect();
            match format {
                Format::Csv => {
                    let mut out = String::new();
                    for r in &records {
                        let mut cells = vec![r.k.to_string()];
                        cells.extend(r.coefficients.iter().cloned());
                        cells.push(r.multiplicity.clone());
                        if let Some(value) = &r.value {
                            cells.push(value.clone());
                        }
                        out.push_str(&cells.join(","));
                        out.push('\n');
                    }
                    Ok(Output::Csv(out))
                }
                Format::Json => {
                    let eigenmatrix = eigenmatrix_p(n, m)?
                        .into_iter()
                        .map(|row| strings(&row))
                        .collect();
                    Ok(Output::Json(envelope(
                        "spectrum",
                        parameters,
                        true,
                        Payload::Spectrum {
                            records,
                            eigenmatrix,
                        },
                    )))
                }
            }
        }

        Command::Eigenvectors { n, m, k } => {
            let parameters = Parameters {
                n: Some(n),
                m: Some(m),
                k,
                ..Parameters::default()
            };
            let ks: Vec<u32> = match k {
                Some(k) => vec![k],
                None => (0..=m).collect(),
            };
            let mut vectors = Vec::with_capacity(ks.len());
            for k in ks {
                let vector = young_eigenvector(n, m, k)?;
                let form = johnson::spectrum::eigenvalue_form(n, m, k)?;
                vectors.push(EigenvectorRow {
                    k,
                    eigenvalue: coefficient_strings(&form),
                    coords: strings(&vector.coords),
                });
            }
            Ok(Output::Json(envelope(
                "eigenvectors",
                parameters,
                true,
                Payload::Eigenvectors { vectors },
            )))
        }

        Command::Eberlein { n, m } => {
            let parameters = Parameters {
                n: Some(n),
                m: Some(m),
                ..Parameters::default()
            };
            let table = (0..=m)
                .map(|t| {
                    (0..=m)
                        .map(|u| Ok(eberlein(n, m, t, u)?.to_string()))
                        .collect::<Result<Vec<_>, Error>>()
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let report = verify_corollary(n, m)?;
            let all_pass = report.all_pass();
            let identity = report
                .checks
                .into_iter()
                .map(|c| CorollaryRow {
                    t: c.t,
                    k: c.k,
                    eberlein: c.eberlein.to_string(),
                    corollary_sum: c.corollary_sum.to_string(),
                    eigen_coeff: c.eigen_coeff.to_string(),
                    pass: c.pass,
                })
                .collect();
            Ok(Output::Json(envelope(
                "eberlein",
                parameters,
                all_pass,
                Payload::Eberlein {
                    table,
                    identity,
                    all_pass,
                },
            )))
        }

        Command::ElkCheck { m_max } => {
            if m_max < 1 {
                return Err(Error::OutOfRange("elk-check: need --m-max >= 1".into()));
            }
            let parameters = Parameters {
                m_max: Some(m_max),
                ..Parameters::default()
            };
            let mut reports = Vec::with_capacity(m_max as usize);
            for m in 1..=m_max {
                let report = elk_verify(m)?;
                reports.push(ElkReportRow {
                    m,
                    b: strings(&report.b),
                    all_match: report.all_match(),
                    rows: report
                        .rows
                        .iter()
                        .map(|r| ElkValueRow {
                            k: r.k,
                            via_eigenvalue_form: r.via_eigenvalue_form.to_string(),
                            closed_form: r.closed_form.to_string(),
                            multiplicity: r.multiplicity.to_string(),
                            matches: r.matches,
                        })
                        .collect(),
                });
            }
            let all_match = reports.iter().all(|r| r.all_match);
            Ok(Output::Json(envelope(
                "elk-check",
                parameters,
                all_match,
                Payload::ElkCheck { reports, all_match },
            )))
        }

        Command::Verify { n, m, seed, draws } => {
            if draws < 1 {
                return Err(Error::OutOfRange("verify: need --draws >= 1".into()));
            }
            let seed = resolve_seed(seed)?;
            let parameters = Parameters {
                n: Some(n),
                m: Some(m),
                seed: Some(seed),
                draws: Some(draws),
                ..Parameters::default()
            };
            let mut rng = seeded_rng(seed);
            let mut rows = Vec::with_capacity(draws as usize);
            for draw in 0..draws {
                let b = draw_generic_parameters(n, m, &mut rng)?;
                let report = full_spectrum_check(n, m, &b)?;
                rows.push(DrawRow {
                    draw,
                    b: strings(&report.b),
                    all_pass: report.all_pass(),
                    checks: report
                        .checks
                        .into_iter()
                        .map(|c| CheckRow {
                            name: c.name,
                            expected: c.expected,
                            actual: c.actual,
                            pass: c.pass,
                        })
                        .collect(),
                });
            }
            let all_pass = rows.iter().all(|r| r.all_pass);
            Ok(Output::Json(envelope(
                "verify",
                parameters,
                all_pass,
                Payload::Verify {
                    draws: rows,
                    all_pass,
                },
            )))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Output::Csv(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Json(envelope)) => {
            let pass = envelope.status == "ok";
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope).expect("envelope serializes")
            );
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeCapExceeded { .. } => 3,
                _ => 2,
            })
        }
    }
}

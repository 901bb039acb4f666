//! Command-line front end: root-system dumps, weight-system queries,
//! saturation and hereditary-normality checks on vector-set files,
//! classification of highest weights, and corpus verification.
//!
//! Exit codes: 0 success / normal verdict, 1 verified not-normal (a witness
//! was found), 2 verification failure, 64 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use satnorm::certs::{
    classify, verify_certificate, verify_corpus, ClassifyOptions, Corpus, CorpusCheckConfig,
    NormalityStatus,
};
use satnorm::error::Error;
use satnorm::linalg::{ExactMatrix, ExactVector};
use satnorm::roots::{build_named, Realization};
use satnorm::saturation::{
    is_hereditarily_normal, is_saturated, HereditaryOptions, HereditaryStatus, SaturationOptions,
    SaturationStatus, VectorSet,
};
use satnorm::weights::{enumerate, member, DEFAULT_ENUMERATION_CAP};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_OK: u8 = 0;
const EXIT_WITNESS: u8 = 1;
const EXIT_VERIFY_FAILED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    name = "satnorm",
    version,
    about = "Exact saturation and hereditary-normality decisions for lattice vector sets, \
             with root-system weight machinery and checkable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Include wall-clock timings in the report. Off by default so that JSON
    /// output is byte-identical across runs.
    #[arg(long, global = true)]
    timings: bool,

    /// Worker threads for the subset searches (1 = fully serial).
    #[arg(long, global = true, default_value_t = 1)]
    parallel: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Dump a root system realization as JSON.
    Roots {
        /// Root system id, e.g. E8, F4, G2, A2.
        system: String,
    },
    /// Enumerate the weight system M(lambda).
    Weights {
        system: String,
        /// Highest weight as comma-separated integers in the
        /// fundamental-weight basis, e.g. --hw 1,0. Negative entries are
        /// reduced to the dominant orbit representative.
        #[arg(long, allow_hyphen_values = true)]
        hw: String,
        /// Enumeration cap (number of members).
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Decide mu in M(lambda), printing the proof record.
    Member {
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        hw: String,
        /// The queried weight in ambient coordinates, e.g. --weight "1,-1,0".
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Decide saturatedness of a vector set file.
    Saturated {
        /// JSON file {"dim": n, "vectors": [["p/q", ...], ...]}.
        #[arg(long)]
        file: PathBuf,
        /// Set size cap.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Decide hereditary normality of a vector set file or of M(lambda).
    Hereditary {
        /// Root system id (with --hw), to pull the weight system.
        system: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hw: Option<String>,
        /// Vector set file, alternative to system + --hw.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        cap: Option<usize>,
        /// Disable Weyl-symmetry pruning in the weight-system mode.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Classify the simple module with the given highest weight.
    Classify {
        system: String,
        #[arg(long, allow_hyphen_values = true)]
        hw: String,
    },
    /// Verify the embedded certificate corpus and regression checks.
    VerifyPaper {
        /// Verify a single certificate by id.
        #[arg(long)]
        case: Option<String>,
        /// Corpus file override (otherwise SATNORM_CORPUS or the embedded
        /// corpus).
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Samples per class for the membership lemma suites.
        #[arg(long, default_value_t = 200)]
        lemma_samples: usize,
        /// Random dominant weights per class for the E7/E8 regression.
        #[arg(long, default_value_t = 100)]
        random_per_coset: usize,
        /// Total fundamental-weight degree of the exhaustive grid.
        #[arg(long, default_value_t = 2)]
        grid_degree: i64,
    },
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    schema_version: u32,
    tool_version: &'static str,
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    corpus_version: Option<String>,
    payload: T,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings_ms: Option<u128>,
}

fn emit<T: Serialize>(
    format: Format,
    command: &str,
    corpus_version: Option<String>,
    payload: T,
    text: String,
    timings: Option<u128>,
) {
    match format {
        Format::Json => {
            let report = Report {
                schema_version: satnorm::SCHEMA_VERSION,
                tool_version: env!("CARGO_PKG_VERSION"),
                command: command.to_string(),
                corpus_version,
                payload,
                timings_ms: timings,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
        }
        Format::Text => {
            println!("{text}");
            if let Some(ms) = timings {
                println!("elapsed: {ms} ms");
            }
        }
    }
}

fn parse_hw(rs: &Realization, text: &str) -> Result<satnorm::roots::Weight, Error> {
    let coords: Vec<i64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("bad highest-weight entry {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    rs.weight_from_fw_coords(&coords)
}

fn parse_ambient(rs: &Realization, text: &str) -> Result<satnorm::roots::Weight, Error> {
    let parts: Vec<&str> = text.split(',').collect();
    let v = ExactVector::parse(&parts)?;
    if v.dim() != rs.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: rs.ambient_dim,
            got: v.dim(),
        });
    }
    rs.weight(v)
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::LemmaContradiction { .. } | Error::MalformedCertificate { .. } => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // Keep clap's rendering but pin the usage exit code.
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help {
                ExitCode::from(EXIT_OK)
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let t0 = Instant::now();
    let timer = |on: bool| on.then(|| t0.elapsed().as_millis());
    match &cli.command {
        Command::Roots { system } => {
            let rs = build_named(system)?;
            let dump = rs.dump();
            let text = format!(
                "{}: {} roots in dimension {}, rank {}, coset index {}",
                rs.id,
                dump.root_count,
                dump.ambient_dim,
                dump.rank,
                dump.coset_index
            );
            emit(cli.format, "roots", None, dump, text, timer(cli.timings));
            Ok(EXIT_OK)
        }
        Command::Weights { system, hw, limit } => {
            let rs = build_named(system)?;
            let lam = parse_hw(&rs, hw)?;
            let ws = enumerate(&rs, &lam, limit.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
            let mut text = format!(
                "M({}) for {} has {} members:\n",
                lam.coords,
                rs.id,
                ws.members.len()
            );
            for m in &ws.members {
                text.push_str(&format!("  {m}\n"));
            }
            emit(cli.format, "weights", None, ws, text, timer(cli.timings));
            Ok(EXIT_OK)
        }
        Command::Member { system, hw, weight } => {
            let rs = build_named(system)?;
            let lam = parse_hw(&rs, hw)?;
            let mu = parse_ambient(&rs, weight)?;
            let proof = member(&rs, &lam, &mu)?;
            let text = format!(
                "mu = {} is{} a member of M({}) for {}",
                proof.mu,
                if proof.is_member { "" } else { " not" },
                proof.lambda_dominant,
                rs.id
            );
            let code = if proof.is_member { EXIT_OK } else { EXIT_WITNESS };
            emit(cli.format, "member", None, proof, text, timer(cli.timings));
            Ok(code)
        }
        Command::Saturated { file, cap } => {
            let set = read_vector_set(file)?;
            let opts = SaturationOptions {
                set_cap: cap.unwrap_or(satnorm::saturation::DEFAULT_SET_CAP),
                parallel: cli.parallel,
            };
            let verdict = is_saturated(&set, &opts)?;
            let code = match verdict.status {
                SaturationStatus::Saturated => EXIT_OK,
                SaturationStatus::NotSaturated => EXIT_WITNESS,
            };
            let text = match &verdict.witness {
                Some(w) => format!("not saturated: v0 = {} escapes the semigroup", w.v0),
                None => "saturated".to_string(),
            };
            emit(cli.format, "saturated", None, verdict, text, timer(cli.timings));
            Ok(code)
        }
        Command::Hereditary {
            system,
            hw,
            file,
            cap,
            no_symmetry,
        } => {
            let (set, symmetry): (VectorSet, Option<Vec<ExactMatrix>>) =
                match (system, hw, file) {
                    (Some(sys), Some(hw), None) => {
                        let rs = build_named(sys)?;
                        let lam = parse_hw(&rs, hw)?;
                        let ws = enumerate(&rs, &lam, DEFAULT_ENUMERATION_CAP)?;
                        let set = VectorSet::new(rs.ambient_dim, ws.nonzero_members())?;
                        let gens = (!no_symmetry).then(|| {
                            (0..rs.rank())
                                .map(|i| rs.simple_reflection_matrix(i))
                                .collect::<Vec<_>>()
                        });
                        (set, gens)
                    }
                    (None, None, Some(path)) => (read_vector_set(path)?, None),
                    _ => {
                        return Err(Error::InvalidInput(
                            "hereditary needs either <system> --hw a1,..,ar or --file set.json"
                                .into(),
                        ))
                    }
                };
            let opts = HereditaryOptions {
                set_cap: cap.unwrap_or(satnorm::saturation::DEFAULT_HEREDITARY_CAP),
                parallel: cli.parallel,
            };
            let verdict = is_hereditarily_normal(&set, symmetry.as_deref(), &opts)?;
            let (code, text) = match &verdict.status {
                HereditaryStatus::Normal => (EXIT_OK, "hereditarily normal".to_string()),
                HereditaryStatus::NotNormal { witness, .. } => (
                    EXIT_WITNESS,
                    format!("not hereditarily normal: v0 = {}", witness.v0),
                ),
            };
            emit(cli.format, "hereditary", None, verdict, text, timer(cli.timings));
            Ok(code)
        }
        Command::Classify { system, hw } => {
            let rs = build_named(system)?;
            let lam = parse_hw(&rs, hw)?;
            let opts = ClassifyOptions {
                hereditary: HereditaryOptions {
                    parallel: cli.parallel,
                    ..HereditaryOptions::default()
                },
                ..ClassifyOptions::default()
            };
            let verdict = classify(&rs, &lam, &opts)?;
            let code = match verdict.status {
                NormalityStatus::Normal => EXIT_OK,
                NormalityStatus::NotNormal => EXIT_WITNESS,
            };
            let text = format!(
                "{} with highest weight {}: all torus orbit closures {}",
                rs.id,
                verdict.lambda_dominant,
                match verdict.status {
                    NormalityStatus::Normal => "are normal",
                    NormalityStatus::NotNormal => "include a non-normal one",
                }
            );
            emit(cli.format, "classify", None, verdict, text, timer(cli.timings));
            Ok(code)
        }
        Command::VerifyPaper {
            case,
            corpus,
            lemma_samples,
            random_per_coset,
            grid_degree,
        } => {
            let corpus_data = match corpus {
                Some(path) => Corpus::from_path(path)?,
                None => Corpus::load_default()?,
            };
            if let Some(id) = case {
                let cert = corpus_data.get(id)?;
                let rs = satnorm::roots::build(cert.system)?;
                let report = verify_certificate(&rs, cert, None)?;
                let code = if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
                let text = format!(
                    "{}: {}",
                    report.id,
                    if report.pass { "pass" } else { "FAIL" }
                );
                emit(
                    cli.format,
                    "verify-paper",
                    Some(corpus_data.corpus_version.clone()),
                    report,
                    text,
                    timer(cli.timings),
                );
                return Ok(code);
            }
            let cfg = CorpusCheckConfig {
                lemma_samples: *lemma_samples,
                random_per_coset: *random_per_coset,
                grid_degree: *grid_degree,
                parallel: cli.parallel,
                ..CorpusCheckConfig::default()
            };
            let report = verify_corpus(&corpus_data, &cfg);
            let code = if report.pass { EXIT_OK } else { EXIT_VERIFY_FAILED };
            let mut text = String::new();
            for e in &report.entries {
                text.push_str(&format!(
                    "{} {} — {}\n",
                    if e.pass { "PASS" } else { "FAIL" },
                    e.id,
                    e.detail
                ));
            }
            text.push_str(if report.pass { "overall: pass" } else { "overall: FAIL" });
            let version = report.corpus_version.clone();
            emit(
                cli.format,
                "verify-paper",
                Some(version),
                report,
                text,
                timer(cli.timings),
            );
            Ok(code)
        }
    }
}

fn read_vector_set(path: &PathBuf) -> Result<VectorSet, Error> {
    let text = std::fs::read_to_string(path)?;
    let raw: VectorSet = serde_json::from_str(&text)?;
    // Re-validate through the constructor (dedup, dimension checks).
    VectorSet::new(raw.dim, raw.vectors)
}

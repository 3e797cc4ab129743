//! `apfree`: build, inspect and verify AP-freeness certificates.
//!
//! Every rational on the command line and in JSON is a string `"n"` or
//! `"n/d"`. Arguments taking JSON accept the document inline, `@path` to
//! read it from a file, or `-` to read it from stdin.

mod config;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use apfree_core::{
    ap_search, build_fap, destroy_step_with, has_ap3, min_defect, rap_demo, verify_certificate, ErrorKind,
    FapCertificate, GenSpec, IntervalUnion, Limits, NDGenerator, PLHomeo, Rat,
};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::config::{build_generators, RunConfig, SetsFile};
use crate::io::{arg_json, read_file, write_output};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] apfree_core::Error),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Io(String),
    #[error("bad config: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("certificate rejected: {0}")]
    Rejected(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Verification => 1,
                ErrorKind::MalformedInput => 2,
                ErrorKind::Refinement => 3,
            },
            CliError::Rejected(_) => 1,
            _ => 2,
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.tag(),
            CliError::Json(_) => "malformed_json",
            CliError::Io(_) => "io",
            CliError::Config(_) => "bad_config",
            CliError::Usage(_) => "usage",
            CliError::Rejected(_) => "certificate_rejected",
        }
    }
}

#[derive(Parser)]
#[command(name = "apfree", version, about = "Exact AP-freeness constructions on [0,1]")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the cover of a generator at one generation.
    GenSet {
        /// Generator spec JSON.
        #[arg(long)]
        generator: String,
        #[arg(long, default_value_t = 0)]
        gen: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a single destruction step.
    Destroy {
        #[arg(long)]
        generator: String,
        #[arg(long)]
        eps: Rat,
        /// Starting homeomorphism; identity when absent.
        #[arg(long)]
        homeo: Option<String>,
        #[arg(long, default_value_t = 64)]
        max_gen: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the multi-stage scheduler and write a certificate.
    Build {
        /// Run config JSON.
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output path.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay a certificate; exit 0 iff it is valid.
    Verify {
        cert: PathBuf,
        /// Generator list, or a run config, as JSON.
        #[arg(long)]
        sets: String,
    },
    /// Least 3-term AP of step >= eps (> eps with --strict) in a union.
    Ap3 {
        #[arg(long)]
        set: String,
        #[arg(long)]
        eps: Rat,
        #[arg(long)]
        strict: bool,
    },
    /// Minimal defect of gap-constrained triples.
    Defect {
        #[arg(long)]
        set: String,
        #[arg(long)]
        eps: Rat,
    },
    /// A progression of the given length inside a union.
    Witness {
        #[arg(long)]
        set: String,
        #[arg(long)]
        length: usize,
    },
    /// Sup distance between two homeomorphisms.
    Dist {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// The composition outer ∘ inner.
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
    },
    /// A long progression in the image of a positive-measure union.
    RapWitness {
        #[arg(long)]
        set: String,
        #[arg(long)]
        homeo: Option<String>,
        #[arg(long, default_value_t = 20)]
        length: usize,
    },
    /// CSV of a homeomorphism graph and optional cover rectangles (lossy).
    PlotData {
        #[arg(long)]
        homeo: String,
        #[arg(long)]
        generator: Option<String>,
        #[arg(long, default_value_t = 0)]
        gen: u32,
        /// Samples inside each linear piece.
        #[arg(long, default_value_t = 0)]
        refine: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn homeo_arg(raw: Option<&str>) -> Result<PLHomeo, CliError> {
    raw.map_or_else(|| Ok(PLHomeo::identity()), |r| arg_json("homeo", r))
}

fn generator_arg(raw: &str) -> Result<NDGenerator, CliError> {
    let spec: GenSpec = arg_json("generator", raw)?;
    Ok(NDGenerator::from_spec(&spec)?)
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::GenSet { generator, gen, output } => {
            let g = generator_arg(&generator)?;
            write_output(output.as_deref(), &to_json(&g.cover(gen)))
        }
        Cmd::Destroy {
            generator,
            eps,
            homeo,
            max_gen,
            output,
        } => {
            let g = generator_arg(&generator)?;
            let f = homeo_arg(homeo.as_deref())?;
            let out = destroy_step_with(&f, &g, &eps, &Limits::with_max_gen(max_gen))?;
            let doc = json!({
                "homeo": out.homeo,
                "certificate": out.certificate,
                "plan": out.plan,
                "image": out.image,
            });
            write_output(output.as_deref(), &to_json(&doc))
        }
        Cmd::Build { config, output } => {
            let cfg: RunConfig =
                serde_json::from_str(&read_file(&config)?).map_err(|e| CliError::Json(format!("config: {e}")))?;
            cfg.validate()?;
            let gens = cfg.generators()?;
            let cert = build_fap(&gens, cfg.stages, cfg.eps_schedule.as_deref(), &cfg.limits())?;
            let mut text = cert.to_json();
            text.push('\n');
            write_output(output.as_deref().or(cfg.output.as_deref()), &text)
        }
        Cmd::Verify { cert, sets } => {
            let cert = FapCertificate::from_json(&read_file(&cert)?)
                .map_err(|e| CliError::Json(format!("certificate: {e}")))?;
            let sets: SetsFile = arg_json("sets", &sets)?;
            let gens = build_generators(sets.specs())?;
            let report = verify_certificate(&cert, &gens);
            write_output(None, &to_json(&report))?;
            match report.failure {
                None => Ok(()),
                Some(f) => Err(CliError::Rejected(f)),
            }
        }
        Cmd::Ap3 { set, eps, strict } => {
            let u: IntervalUnion = arg_json("set", &set)?;
            write_output(None, &to_json(&has_ap3(&u, &eps, strict)?))
        }
        Cmd::Defect { set, eps } => {
            let u: IntervalUnion = arg_json("set", &set)?;
            write_output(None, &to_json(&min_defect(&u, &eps)?))
        }
        Cmd::Witness { set, length } => {
            let u: IntervalUnion = arg_json("set", &set)?;
            write_output(None, &to_json(&ap_search::ap_witness_long(&u, length)?))
        }
        Cmd::Dist { f, g } => {
            let (f, g): (PLHomeo, PLHomeo) = (arg_json("f", &f)?, arg_json("g", &g)?);
            write_output(None, &to_json(&f.sup_dist(&g)))
        }
        Cmd::Compose { outer, inner } => {
            let (o, i): (PLHomeo, PLHomeo) = (arg_json("outer", &outer)?, arg_json("inner", &inner)?);
            write_output(None, &to_json(&PLHomeo::compose(&o, &i)))
        }
        Cmd::RapWitness { set, homeo, length } => {
            let u: IntervalUnion = arg_json("set", &set)?;
            let phi = homeo_arg(homeo.as_deref())?;
            write_output(None, &to_json(&rap_demo(&u, &phi, length)?))
        }
        Cmd::PlotData {
            homeo,
            generator,
            gen,
            refine,
            output,
        } => {
            let phi: PLHomeo = arg_json("homeo", &homeo)?;
            let mut csv = String::from("x,y,kind\n");
            for (x, y, is_bp) in phi.plot_points(refine) {
                let kind = if is_bp { "breakpoint" } else { "sample" };
                csv.push_str(&format!("{},{},{kind}\n", x.to_f64(), y.to_f64()));
            }
            if let Some(spec) = generator {
                let g = generator_arg(&spec)?;
                // two opposite corners per rectangle
                for c in g.cover(gen).components() {
                    for x in [c.lo(), c.hi()] {
                        let y = phi.eval(x)?;
                        csv.push_str(&format!("{},{},cover\n", x.to_f64(), y.to_f64()));
                    }
                }
            }
            write_output(output.as_deref(), &csv)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(&CliError::Usage(e.to_string().trim_end().to_string())),
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> ExitCode {
    let doc = json!({ "error": e.tag(), "exit_code": e.exit_code(), "message": e.to_string() });
    eprintln!("{doc}");
    ExitCode::from(e.exit_code())
}

//! The `artinlab` command line.
//!
//! Every command prints one JSON object on standard output. Exit codes:
//! 0 success, 1 parse or usage error, 2 violated mathematical precondition,
//! 3 a guaranteed inequality or identity failed.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{build_algebra, Element, GradedAlgebra};
use crate::coinvariants::CoinvariantPreset;
use crate::deformation::{build_family, semicontinuity_experiment, verify_diagram_t, verify_diagram_zero};
use crate::error::{Error, Result};
use crate::extension::{
    build_dual_extension, cg_tensor, condition_witness, tensor_algebra, theorem_check, valid_g_space,
    verify_free_extension, TheoremOutcome,
};
use crate::field::Scalar;
use crate::format::{read_algebra, read_triple, render_algebra, render_triple};
use crate::jordan::{generic_jordan_type, jordan_type, lefschetz_certify, LefschetzMode, SampleMode, DEFAULT_SAMPLES};
use crate::parse::{parse_divided, parse_polynomial};
use crate::partition::{dominance_compare, Partition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_FALSIFIED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "artinlab", version, about = "Hilbert functions, Jordan types and free extensions of Artinian algebras")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Linear,
    Local,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LefschetzArg {
    Sl,
    Sljt,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert function of an algebra file.
    Hilbert {
        file: PathBuf,
        /// Also report the Hilbert function of the m-adic filtration.
        #[arg(long)]
        local: bool,
    },
    /// Jordan type of multiplication by one element.
    Jordan {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Jordan type of a sampled generic element.
    GenericJordan {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "linear")]
        mode: ModeArg,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Strong Lefschetz (sl) or local strong Lefschetz Jordan type (sljt).
    Lefschetz {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "sl")]
        mode: LefschetzArg,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare two partitions in the dominance order.
    Dominance { p: String, q: String },
    /// Conjugate partition.
    Conjugate { p: String },
    /// Jordan type of a tensor product of nilpotent Jordan blocks.
    CgTensor {
        p: String,
        q: String,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Tensor product of two algebras.
    Tensor { file_a: PathBuf, file_b: PathBuf },
    /// Check whether a triple is a free extension.
    VerifyExt { triple: PathBuf },
    /// Free extension with fibre B and dual generator T^[m] F_B + G.
    DualExt {
        file_b: PathBuf,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Basis of the admissible G for given m.
    ValidG {
        file_b: PathBuf,
        #[arg(long)]
        m: u32,
    },
    /// Compare generic Jordan types of C and A (x) B.
    TheoremCheck {
        triple: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// One-parameter deformation of C to A (x) B.
    Deform {
        triple: PathBuf,
        #[arg(long = "ellA", allow_hyphen_values = true)]
        ell_a: Option<String>,
        #[arg(long = "ellB", allow_hyphen_values = true)]
        ell_b: Option<String>,
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',', default_value = "1,2,-1,3")]
        ts: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Coinvariant algebra presets.
    Coinv {
        /// g-r-1-n, g-r-1-n-relative, g333, g333-k or g333-relative.
        preset: String,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CliOutput { stdout: text, stderr: String::new(), code }
            } else {
                CliOutput { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(cli.command) {
        Ok((value, code)) => CliOutput {
            stdout: format!("{value}\n"),
            stderr: String::new(),
            code,
        },
        Err(e) => {
            let code = e.exit_code();
            let stdout = if code == EXIT_MATH {
                format!("{}\n", error_json(&e))
            } else {
                String::new()
            };
            CliOutput {
                stdout,
                stderr: format!("error: {e}\n"),
                code,
            }
        }
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({
        "verdict": "ERROR",
        "report": { "error": e.kind(), "message": e.to_string() },
    });
    match e {
        Error::ConditionFails { f, g } => v["witness"] = json!([f, g]),
        Error::IncomparableSamples { types } => v["report"]["samples"] = json!(types),
        _ => {}
    }
    v
}

fn load(path: &PathBuf) -> Result<GradedAlgebra> {
    build_algebra(read_algebra(path)?)
}

fn element(a: &GradedAlgebra, s: &str) -> Result<Element> {
    a.normal_form(&parse_polynomial(s, a.table(), a.field())?)
}

fn scalar(a: &GradedAlgebra, s: &str) -> Result<Scalar> {
    let p = parse_polynomial(s, a.table(), a.field())?;
    if p.degree().unwrap_or(0) > 0 {
        return Err(Error::InvalidArgument(format!("{s:?} is not a constant")));
    }
    Ok(a.constant_term(&a.normal_form(&p)?))
}

fn partition(s: &str) -> Result<Partition> {
    s.parse()
}

fn execute(cmd: Command) -> Result<(Value, i32)> {
    let ok = |v: Value| Ok((v, EXIT_OK));
    match cmd {
        Command::Hilbert { file, local } => {
            let a = load(&file)?;
            let mut v = json!({ "hilbert": a.hilbert() });
            if local {
                v["local_hilbert"] = json!(a.local_hilbert());
            }
            ok(v)
        }
        Command::Jordan { file, element: e } => {
            let a = load(&file)?;
            let r = jordan_type(&a, &element(&a, &e)?)?;
            ok(json!({
                "partition": r.partition,
                "rank_sequence": r.rank_sequence,
                "verdict": r.verdict,
                "report": r,
            }))
        }
        Command::GenericJordan { file, mode, samples, seed } => {
            let a = load(&file)?;
            let mode = match mode {
                ModeArg::Linear => SampleMode::LinearForms,
                ModeArg::Local => SampleMode::MaximalIdeal,
            };
            let g = generic_jordan_type(&a, mode, samples, seed)?;
            ok(json!({
                "partition": g.partition,
                "witness": a.to_polynomial(&g.witness).to_string(),
                "seed": seed,
                "report": {
                    "mode": mode,
                    "samples": g.samples,
                    "lower_bound_only": g.lower_bound_only,
                },
            }))
        }
        Command::Lefschetz { file, mode, samples, seed } => {
            let a = load(&file)?;
            let mode = match mode {
                LefschetzArg::Sl => LefschetzMode::Graded,
                LefschetzArg::Sljt => LefschetzMode::Local,
            };
            let r = lefschetz_certify(&a, mode, samples, seed)?;
            let key = if mode == LefschetzMode::Graded { "hilbert" } else { "local_hilbert" };
            let mut v = json!({
                "verdict": r.verdict,
                "partition": r.partition,
                "witness": r.witness,
                "seed": seed,
                "report": r,
            });
            v[key] = json!(r.hilbert);
            ok(v)
        }
        Command::Dominance { p, q } => ok(json!({ "verdict": dominance_compare(&partition(&p)?, &partition(&q)?)? })),
        Command::Conjugate { p } => ok(json!({ "partition": partition(&p)?.conjugate() })),
        Command::CgTensor { p, q, characteristic } => {
            ok(json!({ "partition": cg_tensor(&partition(&p)?, &partition(&q)?, characteristic)? }))
        }
        Command::Tensor { file_a, file_b } => {
            let t = tensor_algebra(&load(&file_a)?, &load(&file_b)?)?;
            ok(json!({
                "hilbert": t.hilbert(),
                "report": { "dimension": t.dimension(), "algebra": render_algebra(t.spec()) },
            }))
        }
        Command::VerifyExt { triple } => {
            let r = verify_free_extension(&read_triple(&triple)?)?;
            ok(json!({ "verdict": r.verdict, "report": r }))
        }
        Command::DualExt { file_b, m, g } => {
            let b = load(&file_b)?;
            let g = parse_divided(&g, b.table(), b.field())?;
            if let Some((f1, f2)) = condition_witness(&b, &g)? {
                return Err(Error::ConditionFails {
                    f: f1.to_string(),
                    g: f2.to_string(),
                });
            }
            let t = build_dual_extension(&b, m, &g)?;
            let r = verify_free_extension(&t)?;
            ok(json!({
                "hilbert": t.c.hilbert(),
                "verdict": r.verdict,
                "report": {
                    "dual_generator": t.c.dual_generator().map(|f| f.to_string()),
                    "extension": r,
                    "triple": render_triple(&t),
                },
            }))
        }
        Command::ValidG { file_b, m } => {
            let b = load(&file_b)?;
            let basis: Vec<String> = valid_g_space(&b, m)?.iter().map(|g| g.to_string()).collect();
            ok(json!({ "report": { "dimension": basis.len(), "basis": basis } }))
        }
        Command::TheoremCheck { triple, samples, seed } => {
            let r = theorem_check(&read_triple(&triple)?, samples, seed)?;
            let code = if r.outcome == TheoremOutcome::Falsified { EXIT_FALSIFIED } else { EXIT_OK };
            Ok((
                json!({
                    "verdict": r.outcome,
                    "partition": r.p_c,
                    "hilbert": r.hilbert_c,
                    "seed": seed,
                    "report": r,
                }),
                code,
            ))
        }
        Command::Deform { triple, ell_a, ell_b, ts, seed } => {
            let t = read_triple(&triple)?;
            let pick = |a: &GradedAlgebra, given: &Option<String>| -> Result<Element> {
                match given {
                    Some(s) => element(a, s),
                    None if a.h(1) == 0 => Ok(a.zero()),
                    None => Ok(generic_jordan_type(a, SampleMode::LinearForms, DEFAULT_SAMPLES, seed)?.witness),
                }
            };
            let la = pick(&t.a, &ell_a)?;
            let lb = pick(&t.b, &ell_b)?;
            let ts = ts.iter().map(|s| scalar(&t.c, s)).collect::<Result<Vec<_>>>()?;
            let fam = build_family(&t, &la, &lb)?;
            let zero = verify_diagram_zero(&fam);
            let mut squares = Vec::new();
            for x in &ts {
                let d = verify_diagram_t(&fam, x)?;
                squares.push(json!({ "t": x.to_string(), "holds": d.holds, "witness_column": d.witness_column }));
            }
            let semi = semicontinuity_experiment(&fam, &ts)?;
            let all = zero.holds && squares.iter().all(|s| s["holds"] == json!(true)) && !semi.falsified;
            Ok((
                json!({
                    "verdict": all,
                    "partition": semi.p_l0,
                    "witness": [t.a.to_polynomial(&la).to_string(), t.b.to_polynomial(&lb).to_string()],
                    "seed": seed,
                    "report": {
                        "diagram_zero": zero,
                        "diagram_t": squares,
                        "semicontinuity": semi,
                        "parameter_degree": fam.l.degree(),
                    },
                }),
                if all { EXIT_OK } else { EXIT_FALSIFIED },
            ))
        }
        Command::Coinv { preset, r, n, seed } => {
            let needs_rn = preset.starts_with("g-r-1-n");
            let (r, n) = match (r, n) {
                (Some(r), Some(n)) => (r, n),
                _ if needs_rn => return Err(Error::InvalidArgument(format!("{preset} needs --r and --n"))),
                _ => (1, 1),
            };
            let p = CoinvariantPreset::from_name(&preset, r, n)?;
            let spec = p.spec()?;
            let a = build_algebra(spec.clone())?;
            let sl = lefschetz_certify(&a, LefschetzMode::Graded, DEFAULT_SAMPLES, seed)?;
            let sljt = lefschetz_certify(&a, LefschetzMode::Local, DEFAULT_SAMPLES, seed)?;
            let ext = match p.triple() {
                Some(t) => Some(verify_free_extension(&t?)?),
                None => None,
            };
            ok(json!({
                "hilbert": a.hilbert(),
                "local_hilbert": a.local_hilbert(),
                "partition": sl.partition,
                "verdict": sl.verdict,
                "seed": seed,
                "report": {
                    "preset": p.to_string(),
                    "dimension": a.dimension(),
                    "sl": sl,
                    "sljt": sljt,
                    "free_extension": ext,
                    "algebra": render_algebra(&spec),
                },
            }))
        }
    }
}

//! `ymd`: HSVD, verification, classification, generation, transformation and
//! perturbation scans for constant SU(2) Yang–Mills–Dirac configurations.
//!
//! Exit codes: 0 ok, 1 invalid input or arguments, 2 verification or
//! classification failure, 3 ambiguity or numerical failure. Human-readable
//! text goes to stderr; `--json` puts a machine report on stdout.

mod document;
mod spec;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nalgebra::DMatrix;
use serde_json::{json, Value};
use ymd_core::algebra::{Metric, C64};
use ymd_core::classifier::{classify, generate, Params};
use ymd_core::fields::{verify, FieldConfiguration, ResidualReport};
use ymd_core::groups::{apply_transform, random_pin, Pin, Su2};
use ymd_core::hsvd::{check, hsvd_with, Hsvd, HsvdOptions, HsvdScalar};
use ymd_core::perturbation::{assemble_operator, kernel_modes, residual_first_order, Amplitudes, Background, PerturbationState};
use ymd_core::Error;

use document::{complex_json, params_to_json, parse_matrix, real_json, ConfigurationDocument, MatrixInput, Metadata};
use spec::{parse_k, parse_param, parse_pin, parse_signature, parse_su2, PinSpec, Su2Spec};

/// Errors that end a command, with their exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Failure(String),
    Numerical(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Failure(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Failure(m) | CliError::Numerical(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotASolution(_) => CliError::Failure(e.to_string()),
            Error::Ambiguous(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "ymd", version, about = "Constant solutions of the SU(2) Yang–Mills–Dirac equations")]
struct Cli {
    /// Residual tolerance for verification and rank decisions.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Print a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized choices (defaults to 0 with a notice).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hyperbolic SVD of a matrix (array of rows, or a configuration document).
    Hsvd {
        input: PathBuf,
        /// Form signature p,q for real input (default 1,3).
        #[arg(long, value_parser = parse_signature, conflicts_with = "omega")]
        signature: Option<(usize, usize)>,
        /// Use ω = diag(1,1,−1,−1); documents contribute Ψ instead of A.
        #[arg(long)]
        omega: bool,
        /// Write the factorization document here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the constant field equations.
    Verify { input: PathBuf },
    /// Match a verified configuration to its table row.
    Classify { input: PathBuf },
    /// Write the canonical solution of a table row.
    Generate {
        #[arg(long)]
        row: u8,
        /// Parameter as name=value; complex values look like 1-2i.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, ymd_core::classifier::ParamValue)>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply Ψ → TΨS, A → QAP and re-verify.
    Transform {
        input: PathBuf,
        /// identity, random, or exp:t1,t2,t3.
        #[arg(long, default_value = "identity")]
        su2: String,
        /// identity, random[:n], or generators like boost:1:0.3,rot:2,3:1.57,refl:0.
        #[arg(long, default_value = "identity")]
        pin: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Operator spectrum, kernel count and order check at covector k.
    Perturb {
        input: PathBuf,
        #[arg(long, value_parser = parse_k, allow_hyphen_values = true)]
        k: [f64; 4],
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        /// Relative singular-value cutoff for the kernel.
        #[arg(long, default_value_t = 1e-10)]
        kernel_tol: f64,
        /// Perturbation used for the order check.
        #[arg(long, value_enum, default_value = "random")]
        amplitudes: AmplitudeChoice,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum AmplitudeChoice {
    Random,
    Kernel,
}

struct Ctx {
    tol: f64,
    json: bool,
    seed: Option<u64>,
}

impl Ctx {
    fn seed_or_default(&self) -> u64 {
        self.seed.unwrap_or_else(|| {
            eprintln!("notice: no --seed given; using seed 0");
            0
        })
    }

    fn rng(&self) -> rand_chacha::ChaCha8Rng {
        use rand_chacha::rand_core::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(self.seed_or_default())
    }

    fn emit(&self, human: &str, report: &Value) {
        eprintln!("{human}");
        if self.json {
            println!("{}", serde_json::to_string_pretty(report).expect("reports hold finite numbers"));
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, format!("{text}\n")).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn residual_json(r: &ResidualReport) -> Value {
    json!({
        "ym_residual": r.ym_residual,
        "dirac_residual": r.dirac_residual,
        "ym_relative": r.ym_relative,
        "dirac_relative": r.dirac_relative,
        "tol": r.tol,
        "is_solution": r.is_solution,
    })
}

fn residual_line(r: &ResidualReport) -> String {
    format!("ym_residual={:.3e} dirac_residual={:.3e} tol={:.1e}", r.ym_residual, r.dirac_residual, r.tol)
}

fn triple_json(t: ymd_core::hsvd::InvariantTriple) -> Value {
    json!({ "d": t.d, "x": t.x, "y": t.y })
}

fn hsvd_report<T: HsvdScalar>(a: &DMatrix<T>, h: &Hsvd<T>, to_json: impl Fn(&DMatrix<T>) -> Value, mode: &str) -> Value {
    let chk = check(a, h);
    json!({
        "mode": mode,
        "signature": [h.signature.p, h.signature.q],
        "L": to_json(&h.l),
        "Sigma": real_json(&h.sigma),
        "R": to_json(&h.r),
        "triple": triple_json(h.triple()),
        "reconstruction": if chk.passes(1e-9) { "ok" } else { "failed" },
        "check": {
            "reconstruction": chk.reconstruction,
            "l_membership": chk.l_membership,
            "r_unitarity": chk.r_unitarity,
            "canonical": chk.canonical,
        },
        "warnings": h.warnings,
    })
}

fn cmd_hsvd(ctx: &Ctx, input: &Path, signature: Option<(usize, usize)>, omega: bool, output: Option<&Path>) -> Result<u8, CliError> {
    let m = parse_matrix(&document::read(input)?, omega)?;
    let metric = if omega { Metric::omega() } else { signature.map(|(p, q)| Metric::new(p, q)).unwrap_or(Metric::minkowski()) };
    let opts = HsvdOptions { tol: ctx.tol, special: false };
    let rows = match &m {
        MatrixInput::Real(a) => a.nrows(),
        MatrixInput::Complex(a) => a.nrows(),
    };
    if rows != metric.dim() {
        return Err(CliError::Input(format!("matrix has {rows} rows but the form has dimension {}", metric.dim())));
    }
    let report = match m {
        MatrixInput::Real(a) if !omega => hsvd_report(&a, &hsvd_with(&a, metric, opts)?, real_json, "real"),
        MatrixInput::Real(a) => {
            let a = a.map(|v| C64::new(v, 0.0));
            hsvd_report(&a, &hsvd_with(&a, metric, opts)?, complex_json, "complex")
        }
        MatrixInput::Complex(a) => hsvd_report(&a, &hsvd_with(&a, metric, opts)?, complex_json, "complex"),
    };
    if let Some(path) = output {
        write_file(path, &serde_json::to_string_pretty(&report).expect("finite"))?;
    }
    let t = &report["triple"];
    let mut human = format!("d={} x={} y={}\nreconstruction {}", t["d"], t["x"], t["y"], report["reconstruction"].as_str().unwrap_or("?"));
    for w in report["warnings"].as_array().into_iter().flatten() {
        human.push_str(&format!("\nwarning: {}", w.as_str().unwrap_or_default()));
    }
    ctx.emit(&human, &report);
    Ok(0)
}

fn cmd_verify(ctx: &Ctx, input: &Path) -> Result<u8, CliError> {
    let cfg = ConfigurationDocument::load(input)?.configuration()?;
    let rep = verify(&cfg, ctx.tol);
    let verdict = if rep.is_solution { "solution" } else { "not a solution" };
    ctx.emit(&format!("{verdict}: {}", residual_line(&rep)), &residual_json(&rep));
    Ok(if rep.is_solution { 0 } else { 2 })
}

fn cmd_classify(ctx: &Ctx, input: &Path) -> Result<u8, CliError> {
    let cfg = ConfigurationDocument::load(input)?.configuration()?;
    match classify(&cfg, ctx.tol) {
        Ok(d) => {
            let human = format!(
                "row={}\nA: {}\nJ: {}\nPsi: {}\nmass: {}\nF2: {}",
                d.row, d.invariants_a, d.invariants_j, d.invariants_psi, d.mass_class, d.f2_class
            );
            let report = json!({
                "row": d.row,
                "invariants_a": triple_json(d.invariants_a),
                "invariants_j": triple_json(d.invariants_j),
                "invariants_psi": triple_json(d.invariants_psi),
                "mass_class": d.mass_class.to_string(),
                "f2_class": d.f2_class.to_string(),
                "warnings": d.warnings,
            });
            ctx.emit(&human, &report);
            Ok(0)
        }
        Err(Error::NotASolution(rep)) => {
            ctx.emit(&format!("not a solution: {}", residual_line(&rep)), &json!({ "error": "not_a_solution", "residuals": residual_json(&rep) }));
            Ok(2)
        }
        Err(Error::Ambiguous(near)) => {
            let rows: Vec<Value> = near.iter().map(|n| json!({ "row": n.row, "mismatches": n.mismatches })).collect();
            ctx.emit(&Error::Ambiguous(near).to_string(), &json!({ "error": "ambiguous", "nearest": rows }));
            Ok(3)
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_generate(ctx: &Ctx, row: u8, items: &[(String, ymd_core::classifier::ParamValue)], output: Option<&Path>) -> Result<u8, CliError> {
    let params: Params = items.iter().cloned().collect();
    let (desc, seed) = match ctx.seed {
        Some(s) => (generate(row, &params, Some(s))?, Some(s)),
        None => match generate(row, &params, None) {
            Ok(d) => (d, None),
            // Missing free parameters are drawn from the default seed.
            Err(Error::InvalidArgument(_)) => (generate(row, &params, Some(ctx.seed_or_default()))?, Some(0)),
            Err(e) => return Err(e.into()),
        },
    };
    let meta = Metadata { seed, row: Some(desc.row), parameters: params_to_json(&desc.parameters) };
    let doc = ConfigurationDocument::from_configuration(&desc.configuration, Some(meta));
    let text = doc.to_json();
    match output {
        Some(path) => {
            write_file(path, &text)?;
            if ctx.json {
                println!("{text}");
            }
        }
        None => println!("{text}"),
    }
    eprintln!("generated row={} ({})", desc.row, residual_line(&verify(&desc.configuration, ctx.tol)));
    Ok(0)
}

fn cmd_transform(ctx: &Ctx, input: &Path, su2: &str, pin: &str, output: Option<&Path>) -> Result<u8, CliError> {
    let cfg = ConfigurationDocument::load(input)?.configuration()?;
    let su2 = parse_su2(su2).map_err(CliError::Input)?;
    let pin = parse_pin(pin).map_err(CliError::Input)?;
    let needs_rng = su2 == Su2Spec::Random || matches!(pin, PinSpec::Random(_));
    let mut rng = needs_rng.then(|| ctx.rng());
    let s = match su2 {
        Su2Spec::Identity => Su2::identity(),
        Su2Spec::Exp(theta) => Su2::exp(&theta),
        Su2Spec::Random => Su2::random(rng.as_mut().expect("created for random specs")),
    };
    let t = match pin {
        PinSpec::Generators(g) => Pin::from_generators(&g)?,
        PinSpec::Random(n) => random_pin(rng.as_mut().expect("created for random specs"), n).0,
    };
    let out: FieldConfiguration = apply_transform(&cfg, &s, &t);
    let rep = verify(&out, ctx.tol);
    let text = ConfigurationDocument::from_configuration(&out, None).to_json();
    match output {
        Some(path) => write_file(path, &text)?,
        None => println!("{text}"),
    }
    let verdict = if rep.is_solution { "transformed configuration verifies" } else { "transformed configuration does not verify" };
    eprintln!("{verdict}: {}", residual_line(&rep));
    if ctx.json && output.is_some() {
        println!("{}", serde_json::to_string_pretty(&residual_json(&rep)).expect("finite"));
    }
    Ok(if rep.is_solution { 0 } else { 2 })
}

fn cmd_perturb(ctx: &Ctx, input: &Path, k: [f64; 4], epsilon: f64, kernel_tol: f64, choice: AmplitudeChoice) -> Result<u8, CliError> {
    if !(epsilon > 0.0 && epsilon <= 0.1) {
        return Err(CliError::Input(format!("epsilon must lie in (0, 0.1], got {epsilon}")));
    }
    let cfg = ConfigurationDocument::load(input)?.configuration()?;
    let rep = verify(&cfg, ctx.tol);
    if !rep.is_solution {
        ctx.emit(&format!("background does not verify: {}", residual_line(&rep)), &json!({ "error": "not_a_solution", "residuals": residual_json(&rep) }));
        return Ok(2);
    }
    let bg = Background::new(&cfg, ctx.tol)?;
    let svals = assemble_operator(&bg, k).singular_values();
    let kernel = kernel_modes(&bg, k, kernel_tol);
    let amplitudes = match choice {
        AmplitudeChoice::Random => Amplitudes::random(&mut ctx.rng(), 1.0),
        AmplitudeChoice::Kernel => kernel.first().cloned().ok_or_else(|| CliError::Input("no kernel mode at this k; use --amplitudes random".into()))?,
    };
    let chk = residual_first_order(&bg, &PerturbationState::PlaneWave { k, amplitudes }, epsilon)?;
    let human = format!(
        "sigma_max={:.6e} sigma_min={:.6e} kernel_count={}\nr0={:.3e} r1={:.3e} r2={:.3e} ratio={:.4} operator_mismatch={:.3e}",
        svals.first().copied().unwrap_or(0.0),
        svals.last().copied().unwrap_or(0.0),
        kernel.len(),
        chk.r0,
        chk.r1,
        chk.r2,
        chk.ratio,
        chk.operator_mismatch
    );
    let report = json!({
        "k": k,
        "epsilon": epsilon,
        "singular_values": svals,
        "kernel_tol": kernel_tol,
        "kernel_count": kernel.len(),
        "order_check": {
            "r0": chk.r0,
            "r1": chk.r1,
            "r2": chk.r2,
            "r2_half": chk.r2_half,
            "ratio": chk.ratio,
            "operator_mismatch": chk.operator_mismatch,
        },
    });
    ctx.emit(&human, &report);
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Input(format!("--tol must be positive, got {}", cli.tol)));
    }
    let ctx = Ctx { tol: cli.tol, json: cli.json, seed: cli.seed };
    match cli.command {
        Command::Hsvd { input, signature, omega, output } => cmd_hsvd(&ctx, &input, signature, omega, output.as_deref()),
        Command::Verify { input } => cmd_verify(&ctx, &input),
        Command::Classify { input } => cmd_classify(&ctx, &input),
        Command::Generate { row, params, output } => cmd_generate(&ctx, row, &params, output.as_deref()),
        Command::Transform { input, su2, pin, output } => cmd_transform(&ctx, &input, &su2, &pin, output.as_deref()),
        Command::Perturb { input, k, epsilon, kernel_tol, amplitudes } => cmd_perturb(&ctx, &input, k, epsilon, kernel_tol, amplitudes),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

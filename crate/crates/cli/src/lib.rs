//! The `bsforge` command-line front end.

pub mod config;
pub mod output;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use bsforge_core::arith::{parse_upoly, Mat, Rat};
use bsforge_core::descent::{bs_smooth_model, CyclicAlgebraInput, SmoothOptions, Solver};
use bsforge_core::golden::GoldenData;
use bsforge_core::models::{
    cubic_closed_form, l_points_of_model, singular_model, singular_model_with_basis, SingularModel,
};
use bsforge_core::numfield::{certify_non_norm, find_norm_preimage, roots_form_basis, CyclicField, NormCertificate};
use bsforge_core::veronese::{iota, monomial_basis, veronese_ideal};
use bsforge_core::{Error, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use config::{FileConfig, FlagConfig, Format, RunConfig, SEED_ENV};

/// Exit status for success.
pub const EXIT_OK: i32 = 0;
/// Exit status for malformed or inconsistent input.
pub const EXIT_INPUT: i32 = 1;
/// Exit status for a mathematical failure on well-formed input.
pub const EXIT_COMPUTATION: i32 = 2;
/// Exit status for failed validation or a self-test mismatch.
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "bsforge", version, about = "Exact equations of Brauer–Severi varieties of cyclic algebras over Q")]
struct Cli {
    /// TOML file with defaults for any flag (flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format: json or text.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Equations of the degree-(n+1) Veronese image of P^n.
    Veronese {
        #[arg(long)]
        n: Option<usize>,
    },
    /// The matrix induced by an (n+1)x(n+1) matrix on the Veronese space.
    Iota {
        #[arg(long)]
        n: Option<usize>,
        /// Nested brackets of rationals, e.g. "[[0,1],[3,0]]".
        #[arg(long)]
        matrix: String,
    },
    /// Smooth rational equations of the Brauer–Severi variety.
    Equations(EquationArgs),
    /// The singular norm-form model.
    Singular(SingularArgs),
    /// Decides whether alpha is a norm, one-sidedly.
    Certify(CertifyArgs),
    /// Reproduces the embedded reference data.
    Selftest {
        #[arg(long)]
        seed: Option<u64>,
        /// Alternative reference file.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Monic integer defining polynomial in t.
    #[arg(long)]
    poly: Option<String>,
    /// Nonzero rational.
    #[arg(long)]
    alpha: Option<String>,
    /// Which generator plays σ: default or other.
    #[arg(long)]
    generator: Option<String>,
}

#[derive(Debug, Args)]
struct EquationArgs {
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    field: FieldArgs,
    /// closed or average.
    #[arg(long)]
    solver: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of sampled validation points.
    #[arg(long)]
    samples: Option<usize>,
    /// Keep a linearly independent subset of the rational equations.
    #[arg(long)]
    reduce: bool,
    #[arg(long)]
    exponent_mode: Option<String>,
    #[arg(long)]
    prime_bound: Option<u64>,
    #[arg(long)]
    height_bound: Option<u64>,
}

#[derive(Debug, Args)]
struct SingularArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// raw, reduced, unit or an explicit exponent.
    #[arg(long)]
    exponent_mode: Option<String>,
    /// Comma-separated basis elements as polynomials in t (default: the roots).
    #[arg(long)]
    basis: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of generated L-points to check.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long)]
    prime_bound: Option<u64>,
    #[arg(long)]
    height_bound: Option<u64>,
}

/// A failure with its exit status, stable code and message.
#[derive(Debug)]
pub struct Failure {
    pub exit: i32,
    pub code: String,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::ValidationFailed(_) => EXIT_VALIDATION,
            ref e if e.is_input_error() => EXIT_INPUT,
            Error::NotIrreducible(_) => EXIT_INPUT,
            _ => EXIT_COMPUTATION,
        };
        Failure { exit, code: e.code().to_string(), message: e.to_string() }
    }
}

/// What a successful command writes, plus its exit status.
struct Outcome {
    stdout: String,
    stderr: String,
    exit: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), exit: EXIT_OK }
    }
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "error[usage]: {e}");
                    EXIT_INPUT
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stderr.write_all(out.stderr.as_bytes());
            out.exit
        }
        Err(f) => {
            let _ = writeln!(stderr, "error[{}]: {}", f.code, f.message);
            f.exit
        }
    }
}

fn dispatch(cli: Cli) -> std::result::Result<Outcome, Failure> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let env_seed = std::env::var(SEED_ENV).ok();
    let mut flags = FlagConfig { format: cli.format, ..Default::default() };
    match cli.command {
        Command::Veronese { n } => {
            flags.n = n;
            let cfg = RunConfig::resolve(flags, file, env_seed.as_deref())?;
            Ok(Outcome::ok(cmd_veronese(&cfg)?))
        }
        Command::Iota { n, matrix } => {
            flags.n = n;
            let cfg = RunConfig::resolve(flags, file, env_seed.as_deref())?;
            Ok(Outcome::ok(cmd_iota(&cfg, &matrix)?))
        }
        Command::Equations(a) => {
            flags.n = a.n;
            set_field(&mut flags, a.field);
            flags.solver = a.solver;
            flags.seed = a.seed;
            flags.samples = a.samples;
            flags.reduce = a.reduce;
            flags.exponent_mode = a.exponent_mode;
            flags.prime_bound = a.prime_bound;
            flags.height_bound = a.height_bound;
            let cfg = RunConfig::resolve(flags, file, env_seed.as_deref())?;
            Ok(Outcome::ok(cmd_equations(&cfg)?))
        }
        Command::Singular(a) => {
            set_field(&mut flags, a.field);
            flags.exponent_mode = a.exponent_mode;
            flags.seed = a.seed;
            flags.samples = a.samples;
            let cfg = RunConfig::resolve(flags, file, env_seed.as_deref())?;
            cmd_singular(&cfg, a.basis.as_deref())
        }
        Command::Certify(a) => {
            set_field(&mut flags, a.field);
            flags.prime_bound = a.prime_bound;
            flags.height_bound = a.height_bound;
            let cfg = RunConfig::resolve(flags, file, env_seed.as_deref())?;
            Ok(Outcome::ok(cmd_certify(&cfg)?))
        }
        Command::Selftest { seed, golden } => {
            flags.seed = seed;
            let cfg = RunConfig::resolve(flags, file, env_seed.as_deref())?;
            let data = match golden {
                Some(p) => {
                    let text = std::fs::read_to_string(&p)
                        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))?;
                    GoldenData::from_json(&text)?
                }
                None => GoldenData::embedded(),
            };
            let report = selftest::run(&data, cfg.seed);
            let stdout = match cfg.format {
                Format::Json => output::render_json(&report.to_json()),
                Format::Text => report.to_text(),
            };
            let exit = if report.passed() { EXIT_OK } else { EXIT_VALIDATION };
            Ok(Outcome { stdout, stderr: String::new(), exit })
        }
    }
}

fn set_field(flags: &mut FlagConfig, f: FieldArgs) {
    flags.poly = f.poly;
    flags.alpha = f.alpha;
    flags.generator = f.generator;
}

fn field_of(cfg: &RunConfig) -> Result<CyclicField> {
    CyclicField::new(&parse_upoly(cfg.poly()?)?, cfg.generator)
}

fn alpha_of(cfg: &RunConfig) -> Result<Rat> {
    let a: Rat = cfg.alpha_text()?.parse()?;
    if a.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    Ok(a)
}

fn need_n(cfg: &RunConfig) -> Result<usize> {
    cfg.n.ok_or_else(|| Error::Invalid("missing --n".into()))
}

/// Top-level presentation object with every schema key present.
fn presentation(n: usize, m: usize) -> serde_json::Map<String, Value> {
    let mut obj = serde_json::Map::new();
    for key in ["field", "alpha", "monomials", "smooth_equations", "singular_model", "certificates", "validation"] {
        obj.insert(key.into(), Value::Null);
    }
    obj.insert("n".into(), json!(n));
    obj.insert("m".into(), json!(m));
    obj
}

fn field_json(field: &CyclicField) -> Value {
    json!({ "poly": field.poly().coeffs().iter().map(output::rat).collect::<Vec<_>>() })
}

fn text_lines(lines: impl IntoIterator<Item = String>) -> String {
    lines.into_iter().map(|l| l + "\n").collect()
}

fn cmd_veronese(cfg: &RunConfig) -> Result<String> {
    let n = need_n(cfg)?;
    let space = monomial_basis(n)?;
    let ideal = veronese_ideal(&space);
    Ok(match cfg.format {
        Format::Text => text_lines(ideal.equations.iter().map(|e| e.to_text("w"))),
        Format::Json => {
            let mut obj = presentation(n, space.m);
            obj.insert("monomials".into(), json!(space.monomials));
            obj.insert("smooth_equations".into(), output::polys(&ideal.equations));
            output::render_json(&Value::Object(obj))
        }
    })
}

/// Parses `[[a,b,...],[c,d,...],...]` with rational entries.
pub fn parse_matrix(src: &str) -> Result<Mat<Rat>> {
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |msg: &str| Error::Syntax { pos: 0, msg: format!("matrix literal: {msg}") };
    let inner = compact
        .strip_prefix("[[")
        .and_then(|s| s.strip_suffix("]]"))
        .ok_or_else(|| bad("expected nested brackets [[...],...]"))?;
    let rows = inner
        .split("],[")
        .map(|row| row.split(',').map(str::parse::<Rat>).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(bad("rows have different lengths"));
    }
    Ok(Mat::from_rows(rows))
}

fn cmd_iota(cfg: &RunConfig, literal: &str) -> Result<String> {
    let a = parse_matrix(literal)?;
    if a.is_square() && a.det().is_zero() {
        return Err(Error::Invalid(format!("matrix {literal} is singular")));
    }
    let n = cfg.n.unwrap_or(a.nrows().saturating_sub(1));
    let space = monomial_basis(n)?;
    let image = iota(&space, &a)?;
    Ok(match cfg.format {
        Format::Text => output::matrix_literal(&image) + "\n",
        Format::Json => output::render_json(&json!({"n": n, "m": space.m, "matrix": output::matrix(&image)})),
    })
}

fn certificate_for(cfg: &RunConfig, field: &CyclicField, alpha: &Rat) -> Result<Option<NormCertificate>> {
    if let Some(c) = certify_non_norm(field, alpha, cfg.prime_bound)? {
        return Ok(Some(c));
    }
    Ok(find_norm_preimage(field, alpha, cfg.height_bound)?.map(|x| NormCertificate {
        prime: None,
        valuation: None,
        kind: bsforge_core::numfield::CertificateKind::PreimageFound,
        preimage: Some(x),
    }))
}

fn cmd_equations(cfg: &RunConfig) -> Result<String> {
    let field = field_of(cfg)?;
    let alpha = alpha_of(cfg)?;
    if let Some(n) = cfg.n {
        if n + 1 != field.degree() {
            return Err(Error::Invalid(format!(
                "--n {n} needs a field of degree {}, but the polynomial has degree {}",
                n + 1,
                field.degree()
            )));
        }
    }
    let input = CyclicAlgebraInput::new(field.clone(), alpha.clone())?;
    let opts = SmoothOptions { solver: cfg.solver, seed: cfg.seed, sample_count: cfg.sample_count, reduce: cfg.reduce };
    let bs = bs_smooth_model(&input, &opts)?;
    if cfg.format == Format::Text {
        return Ok(text_lines(bs.rational_equations.iter().map(|e| e.to_text("w"))));
    }
    let singular =
        if roots_form_basis(&field) { Some(singular_model(&field, &alpha, cfg.exponent_mode)?) } else { None };
    let cert = certificate_for(cfg, &field, &alpha)?;
    let mut obj = presentation(bs.n, bs.m);
    obj.insert("field".into(), field_json(&field));
    obj.insert("alpha".into(), output::rat(&alpha));
    obj.insert("monomials".into(), json!(bs.space.monomials));
    obj.insert("smooth_equations".into(), output::polys(&bs.rational_equations));
    obj.insert("singular_model".into(), singular.as_ref().map_or(Value::Null, singular_json));
    obj.insert("certificates".into(), output::certificate(cert.as_ref()));
    obj.insert(
        "validation".into(),
        json!({
            "solver": match cfg.solver { Solver::Closed => "closed", Solver::Average => "average" },
            "closed_form_fallback": bs.closed_form_fallback,
            "points": bs.validation.points,
            "seed": bs.validation.seed,
            "failures": bs.validation.failures,
            "all_vanish": bs.validation.all_vanish,
        }),
    );
    Ok(output::render_json(&Value::Object(obj)))
}

fn singular_json(model: &SingularModel) -> Value {
    let cubic = if model.field.degree() == 3 && model.basis == model.field.roots() {
        cubic_closed_form(&model.field, &model.alpha, model.exponent_mode).ok().map(|(k, _)| {
            json!({
                "c_pure": output::rat(&k.c_pure),
                "d1": output::rat(&k.d1),
                "d2": output::rat(&k.d2),
                "c_mixed": output::rat(&k.c_mixed),
                "reference_mixed": output::rat(&k.reference_mixed),
                "mixed_deviates": k.mixed_deviates,
            })
        })
    } else {
        None
    };
    json!({
        "exponent_mode": model.exponent_mode.name(),
        "exponent": model.exponent,
        "rhs": output::rat(&model.rhs()),
        "basis": model.basis.iter().map(output::elem).collect::<Vec<_>>(),
        "equation": output::poly(&model.equation),
        "cubic": cubic,
    })
}

fn parse_basis(field: &CyclicField, src: &str) -> Result<Vec<bsforge_core::numfield::FieldElem>> {
    src.split(',')
        .map(|s| {
            let p = parse_upoly(s)?;
            let d = field.degree();
            if p.degree().is_some_and(|k| k >= d) {
                return Err(Error::Invalid(format!("basis element {s} has degree at least {d}")));
            }
            let mut coords = p.coeffs().to_vec();
            coords.resize(d, Rat::zero());
            Ok(field.elem(coords))
        })
        .collect()
}

fn cmd_singular(cfg: &RunConfig, basis: Option<&str>) -> std::result::Result<Outcome, Failure> {
    let field = field_of(cfg)?;
    let alpha = alpha_of(cfg)?;
    let model = match basis {
        Some(src) => singular_model_with_basis(&field, &alpha, &parse_basis(&field, src)?, cfg.exponent_mode)?,
        None => singular_model(&field, &alpha, cfg.exponent_mode)?,
    };
    let points = l_points_of_model(&model, cfg.sample_count, cfg.seed)?;
    let body = singular_json(&model);
    let mut stderr = String::new();
    if body["cubic"]["mixed_deviates"] == json!(true) {
        stderr = format!(
            "warning: x1*x2*x3 coefficient is {} by expansion; the closed form 3AB-A^3 gives {}\n",
            model.equation.coeff(&[0, 1, 1, 1]).cloned().unwrap_or_else(Rat::zero),
            body["cubic"]["reference_mixed"].as_str().unwrap_or("?"),
        );
    }
    let stdout = match cfg.format {
        Format::Text => format!("{} = 0\n", model.equation.to_text("x")),
        Format::Json => {
            let mut obj = presentation(model.n, model.n + 1);
            obj.insert("field".into(), field_json(&field));
            obj.insert("alpha".into(), output::rat(&alpha));
            obj.insert("singular_model".into(), body);
            obj.insert("validation".into(), json!({"l_points": points.len(), "seed": cfg.seed, "all_satisfy": true}));
            output::render_json(&Value::Object(obj))
        }
    };
    Ok(Outcome { stdout, stderr, exit: EXIT_OK })
}

fn cmd_certify(cfg: &RunConfig) -> Result<String> {
    let field = field_of(cfg)?;
    let alpha = alpha_of(cfg)?;
    let cert = certificate_for(cfg, &field, &alpha)?;
    let v = output::certificate(cert.as_ref());
    Ok(match cfg.format {
        Format::Json => output::render_json(&v),
        Format::Text => {
            let mut s = format!("nontrivial: {}\n", v["nontrivial"]);
            if let Some(c) = cert {
                if let (Some(p), Some(val)) = (c.prime, c.valuation) {
                    s += &format!("prime: {p}\nvaluation: {val}\n");
                }
                if let Some(x) = c.preimage {
                    s += &format!("preimage: {x}\n");
                }
            }
            s
        }
    })
}

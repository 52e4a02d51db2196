//! jetforge: jet-scheme equations, Newton polyhedra, toric fan resolution,
//! and finite-field flatness diagnostics from the command line.
//!
//! Exit codes: 0 success, 1 negative check verdict, 2 input error,
//! 3 budget or dimension-cap error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use jetforge::fan::{is_admissible, newton_fan, resolve, stellar_subdivide};
use jetforge::flatness::{
    count_points, default_samples, estimate_dimension, flatness_diagnostic, smooth_bundle_check,
    EnumerationConfig, FiberSpec,
};
use jetforge::jets::{is_reserved_jet_name, jet_ideal, leibniz_check, FamilyPolynomial};
use jetforge::newton::{
    gamma_deformation_valid, newton_polyhedron, nondegenerate, NondegeneracyMode,
    NondegeneracyVerdict, WitnessKind,
};
use jetforge::poly::{Polynomial, Symbols};

#[derive(Parser)]
#[command(
    name = "jetforge",
    version,
    about = "Jet-scheme equations, Newton polyhedra, fan resolutions, and flatness diagnostics",
    after_help = "Polynomial grammar: term ::= factor ('*'? factor)*;  \
                  factor ::= integer | integer/posint | name ('^' posint)?;  \
                  poly ::= ['-'] term (('+'|'-') term)*. Variables and parameters \
                  are declared with --vars/--params or a file header."
)]
struct Cli {
    /// Output format for structured results
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Optional TOML config with the same keys as the long flags; flags win
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the generators of the space of m-jets as JSON or text
    JetIdeal(JetIdealArgs),
    /// Newton polyhedron of a polynomial: vertices and facet inequalities
    Newton(PolyInput),
    /// Newton fan of a polynomial, with optional stellar subdivisions and
    /// an admissibility check
    Fan(FanArgs),
    /// Regular admissible refinement of the Newton fan
    Resolve(PolyInput),
    /// Verdict-style checks; a negative verdict exits with code 1
    #[command(subcommand)]
    Check(CheckCommand),
    /// Exact F_q point counts of a jet-scheme fiber
    Count(CountArgs),
    /// Compare fiber dimension estimates across parameter samples
    DiagnoseFlatness(FlatnessArgs),
    /// Verify the Hasse-Schmidt Leibniz convolution identity for a pair
    Leibniz(LeibnizArgs),
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Nondegeneracy with respect to the Newton boundary
    Nondegenerate(NondegenerateArgs),
    /// Every perturbation exponent must lie in the Newton polyhedron of the base
    GammaDeformation(GammaArgs),
    /// Monomial integral-closure membership for pure-power ideals
    IntegralClosure(IntegralClosureArgs),
    /// Affine-bundle count identity over a smooth hypersurface
    SmoothBundle(SmoothBundleArgs),
}

#[derive(Args, Clone)]
struct SymbolArgs {
    /// Comma-separated ambient variable names, e.g. --vars x,y,z
    #[arg(long, value_delimiter = ',')]
    vars: Vec<String>,
    /// Comma-separated parameter names, e.g. --params s
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
}

#[derive(Args)]
struct PolyInput {
    #[command(flatten)]
    symbols: SymbolArgs,
    /// Inline polynomial in the grammar above
    #[arg(long)]
    poly: Option<String>,
    /// UTF-8 file: `vars:`/`params:` header lines, then one polynomial per line
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct JetIdealArgs {
    #[command(flatten)]
    input: PolyInput,
    /// Jet order m
    #[arg(short, long)]
    m: usize,
    /// Truncate the ideal to this lower order before printing
    #[arg(long)]
    truncate: Option<usize>,
    /// Specialize parameters first: name=value, repeatable
    #[arg(long)]
    assign: Vec<String>,
}

#[derive(Args)]
struct FanArgs {
    #[command(flatten)]
    input: PolyInput,
    /// Apply a stellar subdivision at this ray (comma-separated integers);
    /// repeatable, applied in order
    #[arg(long)]
    stellar: Vec<String>,
    /// Also report admissibility of the (subdivided) fan; inadmissible
    /// fans exit with code 1
    #[arg(long)]
    check_admissible: bool,
}

#[derive(Args)]
struct NondegenerateArgs {
    #[command(flatten)]
    input: PolyInput,
    /// exact2d (two variables only) or sample; default picks exact2d when possible
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Primes for sample mode
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Cap on torus points enumerated per face and prime in sample mode
    #[arg(long)]
    torus_bound: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact2d,
    Sample,
}

#[derive(Args)]
struct GammaArgs {
    #[command(flatten)]
    symbols: SymbolArgs,
    /// Base polynomial f
    #[arg(long)]
    base: Option<String>,
    /// Perturbation g_j; repeatable
    #[arg(long)]
    perturb: Vec<String>,
    /// File form: first polynomial is the base, the rest are perturbations
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct IntegralClosureArgs {
    /// Pure powers a_1,..,a_n generating the monomial ideal
    #[arg(long, value_delimiter = ',')]
    powers: Vec<u32>,
    /// Single exponent tuple to test, e.g. --exponent 2,2,0
    #[arg(long, value_delimiter = ',')]
    exponent: Option<Vec<u32>>,
    #[command(flatten)]
    symbols: SymbolArgs,
    /// Whole polynomial to test (every term must pass)
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Args)]
struct SmoothBundleArgs {
    #[command(flatten)]
    input: PolyInput,
    /// Jet order m
    #[arg(short, long)]
    m: usize,
    /// The prime q
    #[arg(long)]
    prime: u64,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: PolyInput,
    /// Jet order m
    #[arg(short, long)]
    m: usize,
    /// Primes to count over
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Parameter assignment entries name=value; repeatable
    #[arg(long)]
    assign: Vec<String>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct FlatnessArgs {
    #[command(flatten)]
    symbols: SymbolArgs,
    /// The family polynomial f + sum s_j g_j
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    file: Option<PathBuf>,
    /// Jet order m
    #[arg(short, long)]
    m: usize,
    /// Primes for the dimension estimates
    #[arg(long, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Parameter samples, one per occurrence: --samples s=0 s=1
    #[arg(long, num_args = 1..)]
    samples: Vec<String>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct LeibnizArgs {
    #[command(flatten)]
    symbols: SymbolArgs,
    /// First factor
    #[arg(long)]
    f: Option<String>,
    /// Second factor
    #[arg(long)]
    g: Option<String>,
    /// File form: exactly two polynomials
    #[arg(long)]
    file: Option<PathBuf>,
    /// Jet order m
    #[arg(short, long)]
    m: usize,
    /// Optional prime: reduce both factors mod q before the check
    #[arg(long)]
    modulus: Option<u64>,
}

#[derive(Args, Clone)]
struct LimitArgs {
    /// Hard cap on the raw enumeration size q^{(n+1)(m+1)}
    #[arg(long)]
    max_enumeration: Option<u64>,
    /// Worker threads for the enumeration
    #[arg(long)]
    workers: Option<usize>,
}

enum Failure {
    Input(String),
    Core(jetforge::Error),
}

impl From<jetforge::Error> for Failure {
    fn from(e: jetforge::Error) -> Self {
        Failure::Core(e)
    }
}

type CliResult<T> = Result<T, Failure>;

fn input_err<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Input(msg.into()))
}

/// Values accepted from a `--config` TOML file; long flags take precedence.
#[derive(Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    vars: Option<String>,
    params: Option<String>,
    format: Option<String>,
    workers: Option<usize>,
    max_enumeration: Option<u64>,
    primes: Option<Vec<u64>>,
}

impl FileConfig {
    fn load(path: Option<&Path>) -> CliResult<FileConfig> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::Input(format!("bad config: {e}")))
    }

    fn comma_list(raw: &Option<String>) -> Vec<String> {
        raw.as_deref()
            .map(|s| {
                s.split(',')
                    .map(|x| x.trim().to_string())
                    .filter(|x| !x.is_empty())
                    .collect()
            })
            .unwrap_or_default()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_limit() { 3 } else { 2 })
        }
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    let config = FileConfig::load(cli.config.as_deref())?;
    let format = match (cli.format, config.format.as_deref()) {
        (Some(f), _) => f,
        (None, Some("json")) => Format::Json,
        (None, Some("text")) | (None, None) => Format::Text,
        (None, Some(other)) => return input_err(format!("unknown format `{other}` in config")),
    };
    match cli.command {
        Command::JetIdeal(args) => cmd_jet_ideal(args, &config, format),
        Command::Newton(args) => cmd_newton(args, &config, format),
        Command::Fan(args) => cmd_fan(args, &config, format),
        Command::Resolve(args) => cmd_resolve(args, &config, format),
        Command::Check(check) => match check {
            CheckCommand::Nondegenerate(args) => cmd_nondegenerate(args, &config, format),
            CheckCommand::GammaDeformation(args) => cmd_gamma(args, &config, format),
            CheckCommand::IntegralClosure(args) => cmd_integral_closure(args, &config, format),
            CheckCommand::SmoothBundle(args) => cmd_smooth_bundle(args, &config, format),
        },
        Command::Count(args) => cmd_count(args, &config, format),
        Command::DiagnoseFlatness(args) => cmd_flatness(args, &config, format),
        Command::Leibniz(args) => cmd_leibniz(args, &config, format),
    }
}

// ---------------------------------------------------------------- input --

fn resolve_symbols(args: &SymbolArgs, config: &FileConfig) -> CliResult<Symbols> {
    let vars = if args.vars.is_empty() {
        FileConfig::comma_list(&config.vars)
    } else {
        args.vars.clone()
    };
    let params = if args.params.is_empty() {
        FileConfig::comma_list(&config.params)
    } else {
        args.params.clone()
    };
    if vars.is_empty() {
        return input_err("no variables declared: pass --vars or set `vars` in the config");
    }
    for name in vars.iter().chain(params.iter()) {
        if is_reserved_jet_name(name) {
            return Err(Failure::Core(jetforge::Error::ReservedName(name.clone())));
        }
    }
    Ok(Symbols::new(vars, params)?)
}

/// Parse an input file: optional `vars:` / `params:` header lines, comment
/// lines starting with `#`, then one polynomial per line.
fn parse_poly_file(
    path: &Path,
    declared: Option<&Symbols>,
) -> CliResult<(Symbols, Vec<Polynomial>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut vars: Vec<String> = Vec::new();
    let mut params: Vec<String> = Vec::new();
    let mut body: Vec<&str> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            vars = rest.split(',').map(|x| x.trim().to_string()).collect();
        } else if let Some(rest) = line.strip_prefix("params:") {
            params = rest
                .split(',')
                .map(|x| x.trim().to_string())
                .filter(|x| !x.is_empty())
                .collect();
        } else {
            body.push(line);
        }
    }
    let symbols = if vars.is_empty() {
        declared
            .cloned()
            .ok_or_else(|| Failure::Input(format!("{}: no vars: header", path.display())))?
    } else {
        for name in vars.iter().chain(params.iter()) {
            if is_reserved_jet_name(name) {
                return Err(Failure::Core(jetforge::Error::ReservedName(name.clone())));
            }
        }
        let from_file = Symbols::new(vars, params)?;
        if let Some(d) = declared {
            if *d != from_file {
                return input_err(format!(
                    "{}: header symbols differ from the declared --vars/--params",
                    path.display()
                ));
            }
        }
        from_file
    };
    let polys = body
        .iter()
        .map(|line| symbols.parse(line).map_err(Failure::Core))
        .collect::<CliResult<Vec<_>>>()?;
    Ok((symbols, polys))
}

fn load_one(input: &PolyInput, config: &FileConfig) -> CliResult<(Symbols, Polynomial)> {
    match (&input.poly, &input.file) {
        (Some(text), None) => {
            let symbols = resolve_symbols(&input.symbols, config)?;
            let poly = symbols.parse(text)?;
            Ok((symbols, poly))
        }
        (None, Some(path)) => {
            let declared = if input.symbols.vars.is_empty() {
                None
            } else {
                Some(resolve_symbols(&input.symbols, config)?)
            };
            let (symbols, polys) = parse_poly_file(path, declared.as_ref())?;
            match polys.len() {
                1 => Ok((symbols, polys.into_iter().next().unwrap())),
                n => input_err(format!(
                    "{} polynomials in {}, expected 1",
                    n,
                    path.display()
                )),
            }
        }
        (Some(_), Some(_)) => input_err("pass either --poly or --file, not both"),
        (None, None) => input_err("a polynomial is required: pass --poly or --file"),
    }
}

fn parse_assignment_entry(entry: &str) -> CliResult<(String, BigRational)> {
    let Some((name, value)) = entry.split_once('=') else {
        return input_err(format!("bad assignment `{entry}`, expected name=value"));
    };
    let value = BigRational::from_str(value.trim())
        .map_err(|e| Failure::Input(format!("bad value in `{entry}`: {e}")))?;
    Ok((name.trim().to_string(), value))
}

fn parse_sample(sample: &str) -> CliResult<BTreeMap<String, BigRational>> {
    sample
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_assignment_entry)
        .collect()
}

fn limits(args: &LimitArgs, config: &FileConfig) -> EnumerationConfig {
    let defaults = EnumerationConfig::default();
    EnumerationConfig {
        budget: args
            .max_enumeration
            .or(config.max_enumeration)
            .unwrap_or(defaults.budget),
        workers: args.workers.or(config.workers).unwrap_or(defaults.workers),
    }
}

fn primes_or_config(cli: &[u64], config: &FileConfig, default: &[u64]) -> Vec<u64> {
    if !cli.is_empty() {
        cli.to_vec()
    } else if let Some(p) = &config.primes {
        p.clone()
    } else {
        default.to_vec()
    }
}

fn emit(format: Format, json: serde_json::Value, text: String) -> CliResult<()> {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&json).expect("serializable value")
        ),
        Format::Text => println!("{text}"),
    }
    Ok(())
}

// ------------------------------------------------------------- commands --

fn cmd_jet_ideal(args: JetIdealArgs, config: &FileConfig, format: Format) -> CliResult<u8> {
    let (symbols, poly) = load_one(&args.input, config)?;
    let mut ideal = jet_ideal(&poly, symbols.params(), args.m)?;
    if !args.assign.is_empty() {
        let assignment: BTreeMap<String, jetforge::jets::SpecValue> = args
            .assign
            .iter()
            .map(|s| {
                parse_assignment_entry(s).map(|(k, v)| (k, jetforge::jets::SpecValue::Rational(v)))
            })
            .collect::<CliResult<BTreeMap<_, _>>>()?;
        ideal = ideal.specialize(&assignment)?;
    }
    if let Some(lower) = args.truncate {
        ideal = ideal.truncate(lower)?;
    }
    let text = {
        let mut lines = vec![format!(
            "jet ideal of {} at order {}:",
            symbols.print(&poly)?,
            ideal.order()
        )];
        for (k, g) in ideal.generator_strings().into_iter().enumerate() {
            lines.push(format!("  G_{k} = {g}"));
        }
        lines.join("\n")
    };
    emit(format, ideal.to_json(), text)?;
    Ok(0)
}

fn cmd_newton(args: PolyInput, config: &FileConfig, format: Format) -> CliResult<u8> {
    let (symbols, poly) = load_one(&args, config)?;
    let p = newton_polyhedron(&poly)?;
    let mut lines = vec![format!("Newton polyhedron of {}:", symbols.print(&poly)?)];
    lines.push(format!("  vertices: {:?}", p.vertices()));
    for f in p.facets() {
        lines.push(format!("  facet: <{:?}, e> >= {}", f.normal, f.offset));
    }
    emit(format, p.to_json(), lines.join("\n"))?;
    Ok(0)
}

fn cmd_fan(args: FanArgs, config: &FileConfig, format: Format) -> CliResult<u8> {
    let (symbols, poly) = load_one(&args.input, config)?;
    let p = newton_polyhedron(&poly)?;
    let mut fan = newton_fan(&p)?;
    for ray_text in &args.stellar {
        let ray: Vec<i64> = ray_text
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|e| Failure::Input(format!("bad ray `{ray_text}`: {e}")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        fan = stellar_subdivide(&fan, &ray)?;
    }
    let admissibility = if args.check_admissible {
        Some(is_admissible(&fan, &p)?)
    } else {
        None
    };
    let mut json = fan.to_json();
    let mut lines = vec![format!("Newton fan of {}:", symbols.print(&poly)?)];
    lines.push(format!("  rays: {:?}", fan.rays()));
    for c in fan.maximal_cones() {
        lines.push(format!("  maximal cone: {:?}", c.rays()));
    }
    let mut code = 0u8;
    if let Some(report) = &admissibility {
        json["admissible"] = serde_json::json!(report.admissible);
        json["violations"] = serde_json::json!(report.violations);
        if report.admissible {
            lines.push("  admissible".to_string());
        } else {
            lines.push(format!(
                "  NOT admissible; missing coordinate cones J = {:?}",
                report.violations
            ));
            code = 1;
        }
    }
    emit(format, json, lines.join("\n"))?;
    Ok(code)
}

fn cmd_resolve(args: PolyInput, config: &FileConfig, format: Format) -> CliResult<u8> {
    let (symbols, poly) = load_one(&args, config)?;
    let p = newton_polyhedron(&poly)?;
    let fan = resolve(&newton_fan(&p)?, &p)?;
    let mut lines = vec![format!(
        "regular admissible refinement of the Newton fan of {}:",
        symbols.print(&poly)?
    )];
    lines.push(format!("  rays: {:?}", fan.rays()));
    for c in fan.maximal_cones() {
        lines.push(format!("  maximal cone: {:?}", c.rays()));
    }
    emit(format, fan.to_json(), lines.join("\n"))?;
    Ok(0)
}

fn cmd_nondegenerate(
    args: NondegenerateArgs,
    config: &FileConfig,
    format: Format,
) -> CliResult<u8> {
    let (symbols, poly) = load_one(&args.input, config)?;
    let mode = match args.mode {
        Some(ModeArg::Exact2d) => NondegeneracyMode::Exact2d,
        Some(ModeArg::Sample) => NondegeneracyMode::Sample {
            primes: primes_or_config(&args.primes, config, &[3, 5, 7]),
            bound: args.torus_bound,
        },
        None if poly.variable_count() == 2 => NondegeneracyMode::Exact2d,
        None => NondegeneracyMode::Sample {
            primes: primes_or_config(&args.primes, config, &[3, 5, 7]),
            bound: args.torus_bound,
        },
    };
    let verdict = nondegenerate(&poly, &mode)?;
    let (name, detail, code) = match &verdict {
        NondegeneracyVerdict::Nondegenerate => {
            ("nondegenerate".to_string(), serde_json::Value::Null, 0)
        }
        NondegeneracyVerdict::Inconclusive => {
            ("inconclusive".to_string(), serde_json::Value::Null, 0)
        }
        NondegeneracyVerdict::Degenerate(w) => {
            let detail = match &w.kind {
                WitnessKind::TorusPoint { q, point } => serde_json::json!({
                    "face_direction": w.face_direction,
                    "witness": {"q": q, "point": point},
                }),
                WitnessKind::RepeatedRoot { gcd_degree } => serde_json::json!({
                    "face_direction": w.face_direction,
                    "witness": {"repeated_root_degree": gcd_degree},
                }),
            };
            ("degenerate".to_string(), detail, 1)
        }
    };
    let json = serde_json::json!({
        "poly": symbols.print(&poly)?,
        "verdict": name,
        "detail": detail,
    });
    let text = match &verdict {
        NondegeneracyVerdict::Degenerate(w) => {
            format!(
                "degenerate: face direction {:?}, witness {:?}",
                w.face_direction, w.kind
            )
        }
        _ => name.clone(),
    };
    emit(format, json, text)?;
    Ok(code)
}

fn cmd_gamma(args: GammaArgs, config: &FileConfig, format: Format) -> CliResult<u8> {
    let (symbols, base, perturbations) = match (&args.base, &args.file) {
        (Some(base_text), None) => {
            let symbols = resolve_symbols(&args.symbols, config)?;
            let base = symbols.parse(base_text)?;
            let perturbations = args
                .perturb
                .iter()
                .map(|t| symbols.parse(t).map_err(Failure::Core))
                .collect::<CliResult<Vec<_>>>()?;
            (symbols, base, perturbations)
        }
        (None, Some(path)) => {
            let declared = if args.symbols.vars.is_empty() {
                None
            } else {
                Some(resolve_symbols(&args.symbols, config)?)
            };
            let (symbols, mut polys) = parse_poly_file(path, declared.as_ref())?;
            if polys.is_empty() {
                return input_err(format!("{}: need a base polynomial", path.display()));
            }
            let base = polys.remove(0);
            (symbols, base, polys)
        }
        (Some(_), Some(_)) => return input_err("pass either --base or --file, not both"),
        (None, None) => return input_err("a base polynomial is required"),
    };
    if perturbations.is_empty() {
        return input_err("at least one perturbation is required (--perturb)");
    }
    let report = gamma_deformation_valid(&base, &perturbations)?;
    let json = serde_json::json!({
        "base": symbols.print(&base)?,
        "valid": report.valid,
        "violations": report
            .violations
            .iter()
            .map(|v| serde_json::json!({"perturbation": v.perturbation, "exponent": v.exponent}))
            .collect::<Vec<_>>(),
    });
    let text = if report.valid {
        "valid: every perturbation exponent lies in the Newton polyhedron of the base".to_string()
    } else {
        let mut lines = vec!["invalid Gamma-deformation:".to_string()];
        for v in &report.violations {
            lines.push(format!(
                "  perturbation {} has exponent {:?} outside the polyhedron",
                v.perturbation, v.exponent
            ));
        }
        lines.join("\n")
    };
    emit(format, json, text)?;
    Ok(if report.valid { 0 } else { 1 })
}

fn cmd_integral_closure(
    args: IntegralClosureArgs,
    config: &FileConfig,
    format: Format,
) -> CliResult<u8> {
    if args.powers.is_empty() {
        return input_err("--powers is required, e.g. --powers 4,4,4");
    }
    let (label, member) = match (&args.exponent, &args.poly) {
        (Some(e), None) => (
            format!("{e:?}"),
            jetforge::newton::integral_closure_member(e, &args.powers)?,
        ),
        (None, Some(text)) => {
            let symbols = resolve_symbols(&args.symbols, config)?;
            let poly = symbols.parse(text)?;
            (
                symbols.print(&poly)?,
                jetforge::newton::integral_closure_member_poly(&poly, &args.powers)?,
            )
        }
        (Some(_), Some(_)) => return input_err("pass either --exponent or --poly, not both"),
        (None, None) => return input_err("pass --exponent or --poly"),
    };
    let json = serde_json::json!({
        "powers": args.powers,
        "input": label,
        "member": member,
    });
    let text = if member {
        format!(
            "{label} lies in the integral closure of the pure-power ideal {:?}",
            args.powers
        )
    } else {
        format!(
            "{label} is NOT in the integral closure of the pure-power ideal {:?}",
            args.powers
        )
    };
    emit(format, json, text)?;
    Ok(if member { 0 } else { 1 })
}

fn cmd_smooth_bundle(args: SmoothBundleArgs, config: &FileConfig, format: Format) -> CliResult<u8> {
    let (symbols, poly) = load_one(&args.input, config)?;
    let report = smooth_bundle_check(&poly, args.m, args.prime, &limits(&args.limits, config))?;
    let json = serde_json::json!({
        "poly": symbols.print(&poly)?,
        "q": report.q,
        "m": report.m,
        "variety_count": report.variety_count,
        "jet_count": report.jet_count,
        "expected": report.expected,
        "holds": report.holds,
    });
    let text = format!(
        "|V(F_{})| = {}, jets at m={}: {} (expected {} = |V|*q^(m*n)) -> {}",
        report.q,
        report.variety_count,
        report.m,
        report.jet_count,
        report.expected,
        if report.holds { "MATCH" } else { "MISMATCH" }
    );
    emit(format, json, text)?;
    Ok(if report.holds { 0 } else { 1 })
}

fn cmd_count(args: CountArgs, config: &FileConfig, format: Format) -> CliResult<u8> {
    let (symbols, poly) = load_one(&args.input, config)?;
    let family = FamilyPolynomial::from_parametric(&poly, symbols.params())?;
    let assignment: BTreeMap<String, BigRational> = args
        .assign
        .iter()
        .map(|s| parse_assignment_entry(s))
        .collect::<CliResult<BTreeMap<_, _>>>()?;
    let primes = primes_or_config(&args.primes, config, &[]);
    if primes.is_empty() {
        return input_err("--primes is required, e.g. --primes 3,5");
    }
    let enumeration = limits(&args.limits, config);
    let mut results = Vec::new();
    for &q in &primes {
        let spec = FiberSpec {
            family: family.clone(),
            assignment: assignment.clone(),
            m: args.m,
            q,
        };
        let report = count_points(&spec, &enumeration)?;
        results.push(report);
    }
    let counts: Vec<(u64, u64)> = results.iter().map(|r| (r.spec.q, r.count)).collect();
    let estimate = if counts.len() >= 2 && counts.iter().all(|&(_, c)| c > 0) {
        estimate_dimension(&counts).ok()
    } else {
        None
    };
    let json = serde_json::json!({
        "family": symbols.print(&poly)?,
        "m": args.m,
        "assignment": assignment
            .iter()
            .map(|(k, v)| (k.clone(), v.to_string()))
            .collect::<BTreeMap<String, String>>(),
        "counts": results
            .iter()
            .map(|r| serde_json::json!({
                "q": r.spec.q,
                "count": r.count,
                "elapsed_ms": r.elapsed.as_secs_f64() * 1e3,
                "generators_checked": r.generators_checked,
            }))
            .collect::<Vec<_>>(),
        "dim_estimate": estimate.as_ref().map(|e| e.slope),
        "dim_estimate_rounded": estimate.as_ref().map(|e| e.rounded),
    });
    let mut lines = Vec::new();
    for r in &results {
        lines.push(format!(
            "q={}: {} points ({} generators, {:.1} ms)",
            r.spec.q,
            r.count,
            r.generators_checked,
            r.elapsed.as_secs_f64() * 1e3
        ));
    }
    if let Some(e) = &estimate {
        lines.push(format!(
            "dimension estimate: {:.3} (rounded {}), residual {:.3e}",
            e.slope, e.rounded, e.residual
        ));
    }
    emit(format, json, lines.join("\n"))?;
    Ok(0)
}

fn cmd_flatness(args: FlatnessArgs, config: &FileConfig, format: Format) -> CliResult<u8> {
    let (symbols, poly) = match (&args.family, &args.file) {
        (Some(text), None) => {
            let symbols = resolve_symbols(&args.symbols, config)?;
            let poly = symbols.parse(text)?;
            (symbols, poly)
        }
        (None, Some(path)) => {
            let declared = if args.symbols.vars.is_empty() {
                None
            } else {
                Some(resolve_symbols(&args.symbols, config)?)
            };
            let (symbols, polys) = parse_poly_file(path, declared.as_ref())?;
            match polys.len() {
                1 => {
                    let poly = polys.into_iter().next().unwrap();
                    (symbols, poly)
                }
                n => return input_err(format!("{n} polynomials in the file, expected 1")),
            }
        }
        (Some(_), Some(_)) => return input_err("pass either --family or --file, not both"),
        (None, None) => return input_err("a family polynomial is required (--family)"),
    };
    let family = FamilyPolynomial::from_parametric(&poly, symbols.params())?;
    let primes = primes_or_config(&args.primes, config, &[3, 5]);
    let samples = if args.samples.is_empty() {
        default_samples(&family)
    } else {
        args.samples
            .iter()
            .map(|s| parse_sample(s))
            .collect::<CliResult<Vec<_>>>()?
    };
    let label = symbols.print(&poly)?;
    let report = flatness_diagnostic(
        &family,
        &label,
        args.m,
        &primes,
        &samples,
        &limits(&args.limits, config),
    )?;
    let mut lines = vec![format!("family {} at jet order {}:", label, args.m)];
    for s in &report.samples {
        let assignment: Vec<String> = s
            .assignment
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        let counts: Vec<String> = s
            .counts
            .iter()
            .map(|(q, c)| format!("q={q}: {c}"))
            .collect();
        let estimate = match (s.slope, s.rounded) {
            (Some(sl), Some(r)) => format!("dim ~ {sl:.3} (rounded {r})"),
            _ => "no points at any prime".to_string(),
        };
        lines.push(format!(
            "  [{}] {} -> {}{}",
            assignment.join(", "),
            counts.join(", "),
            estimate,
            if s.dropped_primes.is_empty() {
                String::new()
            } else {
                format!(" (empty fibers at q in {:?} dropped)", s.dropped_primes)
            }
        ));
    }
    lines.push(format!("verdict: {}", report.verdict.as_str()));
    lines.push(report.note.clone());
    emit(format, report.to_json(), lines.join("\n"))?;
    Ok(match report.verdict {
        jetforge::flatness::FlatnessVerdict::DimensionJump => 1,
        _ => 0,
    })
}

fn cmd_leibniz(args: LeibnizArgs, config: &FileConfig, format: Format) -> CliResult<u8> {
    let (symbols, f, g) = match (&args.f, &args.g, &args.file) {
        (Some(ftext), Some(gtext), None) => {
            let symbols = resolve_symbols(&args.symbols, config)?;
            let f = symbols.parse(ftext)?;
            let g = symbols.parse(gtext)?;
            (symbols, f, g)
        }
        (None, None, Some(path)) => {
            let declared = if args.symbols.vars.is_empty() {
                None
            } else {
                Some(resolve_symbols(&args.symbols, config)?)
            };
            let (symbols, polys) = parse_poly_file(path, declared.as_ref())?;
            if polys.len() != 2 {
                return input_err(format!(
                    "{} polynomials in the file, expected 2",
                    polys.len()
                ));
            }
            let mut it = polys.into_iter();
            let f = it.next().unwrap();
            let g = it.next().unwrap();
            (symbols, f, g)
        }
        _ => return input_err("pass --f and --g, or --file with two polynomials"),
    };
    let (f, g) = match args.modulus {
        Some(q) => (f.to_modular(q)?, g.to_modular(q)?),
        None => (f, g),
    };
    let holds = leibniz_check(&f, &g, args.m)?;
    let json = serde_json::json!({
        "m": args.m,
        "modulus": args.modulus,
        "holds": holds,
    });
    let text = if holds {
        format!(
            "Leibniz convolution identity holds at order {} for {} and {}",
            args.m,
            symbols.print(&f)?,
            symbols.print(&g)?
        )
    } else {
        "Leibniz convolution identity FAILED".to_string()
    };
    emit(format, json, text)?;
    Ok(if holds { 0 } else { 1 })
}

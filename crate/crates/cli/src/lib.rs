//! Batch front end: parse specs, evaluate grids, and emit CSV or JSON with a
//! leading `#` header carrying the fully resolved run specification.

pub mod spec;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pointgreen::contour_quadrature::QuadratureConfig;
use pointgreen::evolution::{evolve_field, DatumSpec, Method};
use pointgreen::green::green;
use pointgreen::spectral::{bound_states, eigenfunction_residual};
use pointgreen::verify::{run_criterion, Level, CRITERIA};
use pointgreen::Complex64;
use rayon::prelude::*;
use serde_json::{json, Map, Number, Value};
use spec::{check_nonzero, check_times, parse_datum, parse_grid, parse_interaction, InteractionSpec};

/// Exit code for a rejected specification.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code for a numerical failure (overflow, tolerance not met).
pub const EXIT_NUMERIC: i32 = 3;
/// Exit code when a verification suite fails.
pub const EXIT_VERIFY: i32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    Numeric(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

impl From<pointgreen::Error> for CliError {
    fn from(e: pointgreen::Error) -> Self {
        use pointgreen::Error::*;
        match e {
            Domain(_) | NotUnitary(_) | ZeroStrength | NonPositiveA(_) | IndexOutOfRange { .. } => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "pointgreen", version, about = "Schrodinger evolution with a point interaction at the origin")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the Green's function G(t,x,y) on a grid.
    Green(GreenArgs),
    /// Evolve an initial datum and sample Ψ(t,x) on a grid.
    Evolve(EvolveArgs),
    /// List the negative bound states as JSON.
    Spectrum(SpectrumArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Closed,
    Quadrature,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Args, Debug)]
pub struct GreenArgs {
    /// free|dirichlet|neumann|delta:c=<v>|deltaprime:c=<v>|robin:a=<v>,b=<v>|json:<path>
    #[arg(long)]
    pub interaction: String,
    /// Times, comma separated; `a:b:n` expands to n points.
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Quadrature overrides. Unset flags fall back to POINTGREEN_ABS_TOL,
/// POINTGREEN_REL_TOL, POINTGREEN_THETA_ROT and POINTGREEN_MAX_PANELS.
#[derive(Args, Debug, Default)]
pub struct QuadArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub abs_tol: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub rel_tol: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_rot: Option<f64>,
    #[arg(long)]
    pub max_panels: Option<usize>,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[arg(long)]
    pub interaction: String,
    /// planewave:k=<v>|superosc:n=<n>,k=<v>|constant
    #[arg(long)]
    pub datum: String,
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub interaction: String,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub level: LevelArg,
    /// Run only these criteria (repeatable).
    #[arg(long)]
    pub criterion: Vec<u8>,
}

/// Fixed float formatting: 17 significant digits, lowercase scientific.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn num(v: f64) -> Value {
    if v.is_finite() {
        // arbitrary_precision keeps the digits exactly as formatted.
        Value::Number(fmt_f64(v).parse::<Number>().expect("formatted float is a JSON number"))
    } else {
        Value::Null
    }
}

fn fmt_list(vs: &[f64]) -> String {
    format!("[{}]", vs.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(","))
}

fn env_or<T: std::str::FromStr>(flag: Option<T>, var: &str) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(var) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| CliError::Validation(format!("invalid {var}: '{s}'"))),
        Err(_) => Ok(None),
    }
}

pub fn quadrature_config(q: &QuadArgs) -> Result<QuadratureConfig, CliError> {
    let mut cfg = QuadratureConfig::default();
    if let Some(v) = env_or(q.abs_tol, "POINTGREEN_ABS_TOL")? {
        cfg.abs_tol = v;
    }
    if let Some(v) = env_or(q.rel_tol, "POINTGREEN_REL_TOL")? {
        cfg.rel_tol = v;
    }
    if let Some(v) = env_or(q.theta_rot, "POINTGREEN_THETA_ROT")? {
        cfg.theta_rot = v;
    }
    if let Some(v) = env_or(q.max_panels, "POINTGREEN_MAX_PANELS")? {
        cfg.max_panels = v;
    }
    cfg.validate().map_err(|e| CliError::Validation(format!("invalid quadrature settings: {e}")))?;
    Ok(cfg)
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn interaction_header(s: &InteractionSpec) -> String {
    let u = &s.interaction;
    let (a, b) = (u.alpha(), u.beta());
    format!(
        "interaction={} phi={} alpha=({},{}) beta=({},{})",
        s.source,
        fmt_f64(u.phi()),
        fmt_f64(a.re),
        fmt_f64(a.im),
        fmt_f64(b.re),
        fmt_f64(b.im)
    )
}

/// Header line, CSV column line and rows, or a JSON document.
fn emit(header: String, format: Format, columns: &[&str], rows: Vec<Vec<f64>>, meta: Map<String, Value>) -> String {
    let mut out = format!("# {header}\n");
    match format {
        Format::Csv => {
            out.push_str(&columns.join(","));
            out.push('\n');
            for r in rows {
                out.push_str(&r.iter().map(|&v| fmt_f64(v)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .into_iter()
                .map(|r| Value::Object(columns.iter().zip(r).map(|(c, v)| (c.to_string(), num(v))).collect()))
                .collect();
            let mut doc = meta;
            doc.insert("columns".into(), json!(columns));
            doc.insert("rows".into(), Value::Array(rows));
            out.push_str(&serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable"));
            out.push('\n');
        }
    }
    out
}

pub fn cmd_green(a: &GreenArgs) -> Result<String, CliError> {
    let spec = parse_interaction(&a.interaction)?;
    let ts = parse_grid("--t", &a.t)?;
    let xs = parse_grid("--x", &a.x)?;
    let ys = parse_grid("--y", &a.y)?;
    check_times(&ts)?;
    check_nonzero("--x", &xs)?;
    check_nonzero("--y", &ys)?;
    let c = spec.interaction.coefficients();
    let mut points = Vec::with_capacity(ts.len() * xs.len() * ys.len());
    for &t in &ts {
        for &x in &xs {
            for &y in &ys {
                points.push((t, x, y));
            }
        }
    }
    let values: Vec<Result<Complex64, CliError>> =
        points.par_iter().map(|&(t, x, y)| green(&c, t, x, y).map_err(CliError::from)).collect();
    let mut rows = Vec::with_capacity(points.len());
    for (&(t, x, y), v) in points.iter().zip(values) {
        let v = v?;
        rows.push(vec![t, x, y, v.re, v.im]);
    }
    let header = format!(
        "pointgreen green {} t={} x={} y={} format={}",
        interaction_header(&spec),
        fmt_list(&ts),
        fmt_list(&xs),
        fmt_list(&ys),
        format_name(a.format)
    );
    let mut meta = Map::new();
    meta.insert("command".into(), json!("green"));
    meta.insert("interaction".into(), json!(spec.source));
    Ok(emit(header, a.format, &["t", "x", "y", "re", "im"], rows, meta))
}

fn datum_name(d: &DatumSpec) -> String {
    match *d {
        DatumSpec::PlaneWave { k } => format!("planewave:k={}", fmt_f64(k)),
        DatumSpec::Superoscillation { n, k } => format!("superosc:n={n},k={}", fmt_f64(k)),
        DatumSpec::Constant => "constant".into(),
    }
}

pub fn cmd_evolve(a: &EvolveArgs) -> Result<String, CliError> {
    let spec = parse_interaction(&a.interaction)?;
    let datum = parse_datum(&a.datum)?;
    let ts = parse_grid("--t", &a.t)?;
    let xs = parse_grid("--x", &a.x)?;
    check_times(&ts)?;
    check_nonzero("--x", &xs)?;
    let cfg = quadrature_config(&a.quad)?;
    let (method, method_name) = match a.method {
        MethodArg::Auto => (Method::Auto, "auto"),
        MethodArg::Closed => (Method::Closed, "closed"),
        MethodArg::Quadrature => (Method::Quadrature, "quadrature"),
    };
    let field = evolve_field(&spec.interaction, datum, method, &ts, &xs, &cfg)?;
    let rows = field.samples.iter().map(|s| vec![s.t, s.x, s.value.re, s.value.im, s.error]).collect();
    let header = format!(
        "pointgreen evolve {} datum={} method={} t={} x={} format={} abs_tol={} rel_tol={} theta_rot={} max_panels={} conditioning={}",
        interaction_header(&spec),
        datum_name(&datum),
        method_name,
        fmt_list(&ts),
        fmt_list(&xs),
        format_name(a.format),
        fmt_f64(cfg.abs_tol),
        fmt_f64(cfg.rel_tol),
        fmt_f64(cfg.theta_rot),
        cfg.max_panels,
        fmt_f64(field.conditioning)
    );
    let mut meta = Map::new();
    meta.insert("command".into(), json!("evolve"));
    meta.insert("interaction".into(), json!(spec.source));
    meta.insert("datum".into(), json!(datum_name(&datum)));
    meta.insert("method".into(), json!(method_name));
    meta.insert("conditioning".into(), num(field.conditioning));
    Ok(emit(header, a.format, &["t", "x", "re", "im", "err_estimate"], rows, meta))
}

fn complex_json(z: Complex64) -> Value {
    json!([num(z.re), num(z.im)])
}

pub fn cmd_spectrum(a: &SpectrumArgs) -> Result<String, CliError> {
    let spec = parse_interaction(&a.interaction)?;
    let u = &spec.interaction;
    let states: Vec<Value> = bound_states(u)
        .iter()
        .map(|s| {
            let r = eigenfunction_residual(u, s);
            let efs: Vec<Value> =
                s.eigenfunctions.iter().map(|e| json!({"even": complex_json(e.even), "odd": complex_json(e.odd)})).collect();
            json!({
                "energy": num(s.energy),
                "omega": num(s.omega),
                "multiplicity": s.multiplicity,
                "eigenfunctions": efs,
                "determinant_residual": num(r.determinant),
                "interface_residual": num(r.interface),
                "linear_system_residual": num(r.linear_system),
            })
        })
        .collect();
    let doc = json!({ "interaction": spec.source, "states": states });
    Ok(format!(
        "# pointgreen spectrum {}\n{}\n",
        interaction_header(&spec),
        serde_json::to_string_pretty(&doc).expect("serializable")
    ))
}

/// Report lines and whether every selected suite passed.
pub fn cmd_verify(a: &VerifyArgs) -> Result<(String, bool), CliError> {
    let level = match a.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let ids: Vec<u8> = if a.criterion.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { a.criterion.clone() };
    if let Some(bad) = ids.iter().find(|id| !CRITERIA.iter().any(|c| c.0 == **id)) {
        return Err(CliError::Validation(format!("invalid --criterion: no criterion {bad}")));
    }
    let mut out = String::new();
    let mut passed = 0;
    for &id in &ids {
        let r = run_criterion(id, level);
        passed += r.passed as usize;
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out.push_str(&format!("summary: {passed}/{} passed\n", ids.len()));
    Ok((out, passed == ids.len()))
}

/// Run a parsed command, returning stdout text and the exit code.
pub fn run(cli: &Cli) -> (String, i32) {
    let result = match &cli.command {
        Command::Green(a) => cmd_green(a).map(|s| (s, 0)),
        Command::Evolve(a) => cmd_evolve(a).map(|s| (s, 0)),
        Command::Spectrum(a) => cmd_spectrum(a).map(|s| (s, 0)),
        Command::Verify(a) => cmd_verify(a).map(|(s, ok)| (s, if ok { 0 } else { EXIT_VERIFY })),
    };
    match result {
        Ok(v) => v,
        Err(e) => (format!("{e}\n"), e.code()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_fixed() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.375), "-3.7500000000000000e-1");
        assert_eq!(num(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(num(f64::NAN), Value::Null);
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(pointgreen::Error::Domain("x".into())).code(), EXIT_VALIDATION);
        assert_eq!(CliError::from(pointgreen::Error::Overflow("x")).code(), EXIT_NUMERIC);
    }

    #[test]
    fn env_override_is_used() {
        // Flags win over the environment; unset leaves the default.
        let q = QuadArgs { abs_tol: Some(1e-9), ..Default::default() };
        assert_eq!(quadrature_config(&q).unwrap().abs_tol, 1e-9);
        let bad = QuadArgs { rel_tol: Some(-1.0), ..Default::default() };
        assert!(matches!(quadrature_config(&bad), Err(CliError::Validation(_))));
    }
}

//! Command-line front end: isobaric weight calculus, equation-invariance
//! analysis, the numerical verification checks, exponent prediction and
//! measurement, and the vorticity-integral diagnostic.
//!
//! Exit codes: 0 when every toleranced check passes (and for purely
//! informational commands), 1 when any check fails or an expression is not
//! isobaric, 2 on usage errors (unknown field, malformed rationals,
//! inconsistent grid) with a one-line diagnostic on stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flowscale::fieldkit::{gallery, gallery_names, AnalyticField, DecayClass, WeightCarrier};
use flowscale::gridops::{bkm_integral, Grid};
use flowscale::rat::{decimal_string, parse_rat, rat_json, Rat};
use flowscale::scalecalc::{
    check_invariance, parse as parse_expr, weight, InvarianceReport, WeightAssignment,
};
use flowscale::scaling::{
    measure_exponent, predict_exponents, table1, table1_csv, table1_json, NormKind, ScalingLaw,
};
use flowscale::verifier::{
    check_divergence, couette_diffusion_check, nse_residual, reports_table, reports_to_json,
    run_suite, vorticity_crosscheck, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "flowscale",
    version,
    about = "Scaling calculus and numerical verification for incompressible flow fields",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Isobaric weight of an expression under the rescaling group
    /// x -> k^(a_x) x, t -> k^(a_t) t, rho -> k^(a_rho) rho.
    ///
    /// Exercises the weight calculus: constants weigh zero, products add
    /// weights, powers scale them, a derivative subtracts the
    /// differentiation symbol's weight, transcendental functions need
    /// weight-zero arguments, and a sum is isobaric only when all addends
    /// agree. Exits 1 when the expression is not isobaric.
    Weights(WeightsArgs),
    /// Per-term weights of the viscous momentum and continuity equations.
    ///
    /// An equation is invariant under the rescaling group exactly when its
    /// terms share one weight; momentum terms share a_x - 2a_t and the
    /// continuity terms share -a_t for every exponent pair. With
    /// --fixed-viscosity the momentum equation stays invariant only on the
    /// parabolic ray a_t = 2a_x.
    Invariance(InvarianceArgs),
    /// Run the numerical checks for one gallery field, or `all` for the
    /// full deterministic suite.
    ///
    /// A single field gets incompressibility, the vorticity cross-check,
    /// and the momentum-closure residual (the channel flow runs its
    /// dedicated diffusion-balance check instead). `all` additionally runs
    /// self-similarity, the integrated transport identities, and the
    /// grid-convergence certifications.
    Verify(VerifyArgs),
    /// Predict the vorticity, velocity, and energy scaling exponents of a
    /// (beta_x, beta_t) similarity profile.
    ///
    /// All exponents are exact rationals in the ratio r = beta_x/beta_t:
    /// vorticity 2r-3, velocity 2(r-1), energy 4r-1; all three are positive
    /// exactly when r > 3/2.
    Exponents(ExponentsArgs),
    /// Emit the reference exponent table over ten ratio values from -2 to 3.
    Table1(Table1Args),
    /// Measure a norm's empirical scaling exponent across co-scaled family
    /// members by an ordinary least-squares fit in log-log space.
    ///
    /// Each member is evaluated on its own co-scaled grid at its own epoch
    /// T/4, so the fitted slope isolates pure parameter scaling. When the
    /// field carries profile weights and the law is the standard one, the
    /// exact predicted slope is included for comparison.
    Measure(MeasureArgs),
    /// Time integral of the lattice sup of vorticity over a window — the
    /// blowup-criterion diagnostic quantity.
    Bkm(BkmArgs),
    /// List the built-in closed-form fields and their similarity metadata.
    GalleryList(GalleryListArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct WeightsArgs {
    /// Expression, e.g. "t^(-1/2)*sin(x*t^(-1/2))" or "nu*d(d(u,x),x)".
    expr: String,
    /// Spatial exponent a_x as `p` or `p/q`. Omit both alpha flags for a
    /// symbolic weight in a_x, a_t, a_rho.
    #[arg(long)]
    alpha_x: Option<String>,
    /// Temporal exponent a_t as `p` or `p/q`.
    #[arg(long)]
    alpha_t: Option<String>,
    /// Density exponent a_rho as `p` or `p/q`.
    #[arg(long, default_value = "0")]
    alpha_rho: String,
    /// Treat the viscosity as a fixed fluid property (weight zero).
    #[arg(long)]
    fixed_viscosity: bool,
    /// Use the density-weighted pressure bookkeeping a_rho - 2a_x - 2a_t
    /// instead of the kinematic convention 2(a_x - a_t).
    #[arg(long)]
    alternate_pressure: bool,
    #[arg(long, value_enum, default_value_t = TextFormat::Table)]
    format: TextFormat,
}

#[derive(Args)]
struct InvarianceArgs {
    /// Spatial exponent a_x as `p` or `p/q`. Omit both alpha flags to
    /// analyze symbolically.
    #[arg(long)]
    alpha_x: Option<String>,
    /// Temporal exponent a_t as `p` or `p/q`.
    #[arg(long)]
    alpha_t: Option<String>,
    /// Density exponent a_rho as `p` or `p/q`.
    #[arg(long, default_value = "0")]
    alpha_rho: String,
    /// Treat the viscosity as a fixed fluid property (weight zero).
    #[arg(long)]
    fixed_viscosity: bool,
    /// Use the density-weighted pressure bookkeeping instead of kinematic.
    #[arg(long)]
    alternate_pressure: bool,
    #[arg(long, value_enum, default_value_t = TextFormat::Table)]
    format: TextFormat,
}

#[derive(Args)]
struct VerifyArgs {
    /// Gallery field name, or `all` for the full deterministic suite.
    field: String,
    /// Grid as `periodic:N` or `truncated:N[:R]`. Defaults: periodic N=32,
    /// truncated N=64 with R = 6L. Periodic extents always come from the
    /// field's own periods.
    #[arg(long)]
    grid: Option<String>,
    /// Sample time (default: T/4 of the field).
    #[arg(long)]
    t: Option<f64>,
    /// Viscosity for the momentum residual (default: the field's own).
    #[arg(long)]
    nu: Option<f64>,
    /// Seed for the random sample points of the full suite.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = TextFormat::Table)]
    format: TextFormat,
}

#[derive(Args)]
struct ExponentsArgs {
    /// Profile spatial weight beta_x as `p` or `p/q`.
    #[arg(long)]
    beta_x: String,
    /// Profile temporal weight beta_t as `p` or `p/q` (nonzero).
    #[arg(long)]
    beta_t: String,
    #[arg(long, value_enum, default_value_t = TableFormat::Table)]
    format: TableFormat,
}

#[derive(Args)]
struct Table1Args {
    #[arg(long, value_enum, default_value_t = TableFormat::Table)]
    format: TableFormat,
}

#[derive(Args)]
struct MeasureArgs {
    /// Gallery field name.
    field: String,
    /// Norm to track: sup-velocity, sup-vorticity, or energy.
    #[arg(long, default_value = "sup-vorticity")]
    norm: String,
    /// Comma-separated scale factors (at least three distinct).
    #[arg(long, default_value = "0.5,1,2,4")]
    k: String,
    /// Grid points per used axis on each member's co-scaled grid.
    #[arg(long, default_value_t = 32)]
    n: usize,
    /// Law exponent a_x as `p` or `p/q`.
    #[arg(long, default_value = "1")]
    alpha_x: String,
    /// Law exponent a_t as `p` or `p/q`.
    #[arg(long, default_value = "2")]
    alpha_t: String,
    /// Law exponent a_rho as `p` or `p/q`.
    #[arg(long, default_value = "0")]
    alpha_rho: String,
    #[arg(long, value_enum, default_value_t = TextFormat::Table)]
    format: TextFormat,
}

#[derive(Args)]
struct BkmArgs {
    /// Gallery field name.
    field: String,
    /// Window start (default 0; fields singular at t = 0 need t0 > 0).
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
    /// Window end (default: 10 T of the field).
    #[arg(long)]
    t1: Option<f64>,
    /// Trapezoid steps (at least 2).
    #[arg(long, default_value_t = 128)]
    steps: usize,
    /// Grid as `periodic:N` or `truncated:N[:R]`; defaults as in `verify`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, value_enum, default_value_t = TextFormat::Table)]
    format: TextFormat,
}

#[derive(Args)]
struct GalleryListArgs {
    #[arg(long, value_enum, default_value_t = TextFormat::Table)]
    format: TextFormat,
}

/// One-line diagnostic carried to stderr with exit code 2.
struct UsageError(String);

macro_rules! usage_from {
    ($($ty:ty),* $(,)?) => {$(
        impl From<$ty> for UsageError {
            fn from(e: $ty) -> Self {
                UsageError(e.to_string())
            }
        }
    )*};
}

usage_from!(
    flowscale::rat::RatParseError,
    flowscale::scalecalc::ParseError,
    flowscale::scalecalc::WeightError,
    flowscale::fieldkit::FieldError,
    flowscale::gridops::GridError,
    flowscale::scaling::ScalingError,
    flowscale::verifier::VerifyError,
);

struct Outcome {
    report: String,
    passed: bool,
}

impl Outcome {
    fn pass(report: String) -> Outcome {
        Outcome {
            report,
            passed: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let mut report = outcome.report;
    if !report.ends_with('\n') {
        report.push('\n');
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &report) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{report}"),
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(command: &Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Weights(a) => run_weights(a),
        Command::Invariance(a) => run_invariance(a),
        Command::Verify(a) => run_verify(a),
        Command::Exponents(a) => run_exponents(a),
        Command::Table1(a) => run_table1(a),
        Command::Measure(a) => run_measure(a),
        Command::Bkm(a) => run_bkm(a),
        Command::GalleryList(a) => run_gallery_list(a),
    }
}

/// Fixed 12-significant-digit float rendering shared by all reports.
fn f12(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.11e}")
}

/// The same rendering as a JSON number (rounded to 12 significant digits).
fn f12_json(v: f64) -> serde_json::Value {
    let rounded: f64 = f12(v).parse().expect("formatted float reparses");
    serde_json::Number::from_f64(rounded)
        .map(serde_json::Value::Number)
        .expect("report values are finite")
}

fn build_assignment(
    alpha_x: &Option<String>,
    alpha_t: &Option<String>,
    alpha_rho: &str,
    fixed_viscosity: bool,
    alternate_pressure: bool,
) -> Result<WeightAssignment, UsageError> {
    let mut wa = match (alpha_x, alpha_t) {
        (Some(ax), Some(at)) => WeightAssignment::numeric(
            parse_rat(ax)?,
            parse_rat(at)?,
            parse_rat(alpha_rho)?,
        ),
        (None, None) => WeightAssignment::symbolic(),
        _ => {
            return Err(UsageError(
                "pass both --alpha-x and --alpha-t, or neither for symbolic analysis".into(),
            ))
        }
    };
    if alternate_pressure {
        wa = wa.alternate_pressure();
    }
    if fixed_viscosity {
        wa = wa.fixed_viscosity();
    }
    Ok(wa)
}

fn run_weights(a: &WeightsArgs) -> Result<Outcome, UsageError> {
    let wa = build_assignment(
        &a.alpha_x,
        &a.alpha_t,
        &a.alpha_rho,
        a.fixed_viscosity,
        a.alternate_pressure,
    )?;
    let expr = parse_expr(&a.expr)?;
    let result = weight(&expr, &wa)?;
    let passed = result.is_isobaric();
    let report = match a.format {
        TextFormat::Table => format!("{result}"),
        TextFormat::Json => serde_json::json!({
            "expression": a.expr,
            "result": result.to_json(),
        })
        .to_string(),
    };
    Ok(Outcome { report, passed })
}

/// The momentum equation, term by term: time derivative, advection,
/// viscous diffusion, pressure gradient.
const MOMENTUM_TERMS: [&str; 4] = [
    "d(u,t)",
    "u*d(u,x) + v*d(u,y) + w*d(u,z)",
    "nu*(d(d(u,x),x) + d(d(u,y),y) + d(d(u,z),z))",
    "d(p,x)",
];

/// The continuity equation, term by term.
const CONTINUITY_TERMS: [&str; 3] = ["d(u,x)", "d(v,y)", "d(w,z)"];

fn equation_report(
    name: &str,
    terms: &[&str],
    wa: &WeightAssignment,
) -> Result<(String, serde_json::Value, bool), UsageError> {
    let exprs: Vec<_> = terms
        .iter()
        .map(|t| parse_expr(t))
        .collect::<Result<_, _>>()?;
    let rep: InvarianceReport = check_invariance(&exprs, wa)?;

    let mut text = format!("{name}:\n");
    let width = terms.iter().map(|t| t.len()).max().unwrap_or(0);
    for (term, w) in terms.iter().zip(&rep.term_weights) {
        text.push_str(&format!("  {term:<width$}  ->  {w}\n"));
    }
    match (&rep.invariant, &rep.common) {
        (true, Some(c)) => text.push_str(&format!("  invariant with common weight {c}\n")),
        _ => text.push_str("  not invariant\n"),
    }

    let json = serde_json::json!({
        "equation": name,
        "terms": terms
            .iter()
            .zip(&rep.term_weights)
            .map(|(t, w)| serde_json::json!({"term": t, "weight": w.to_json()}))
            .collect::<Vec<_>>(),
        "invariant": rep.invariant,
        "common_weight": rep.common.map(|c| c.to_json()),
    });
    Ok((text, json, rep.invariant))
}

fn run_invariance(a: &InvarianceArgs) -> Result<Outcome, UsageError> {
    let wa = build_assignment(
        &a.alpha_x,
        &a.alpha_t,
        &a.alpha_rho,
        a.fixed_viscosity,
        a.alternate_pressure,
    )?;
    let (mom_text, mom_json, mom_ok) = equation_report("momentum", &MOMENTUM_TERMS, &wa)?;
    let (cont_text, cont_json, cont_ok) = equation_report("continuity", &CONTINUITY_TERMS, &wa)?;
    let passed = mom_ok && cont_ok;
    let report = match a.format {
        TextFormat::Table => format!("{mom_text}{cont_text}"),
        TextFormat::Json => {
            serde_json::json!({ "equations": [mom_json, cont_json], "invariant": passed })
                .to_string()
        }
    };
    Ok(Outcome { report, passed })
}

fn lookup_field(name: &str) -> Result<AnalyticField, UsageError> {
    Ok(gallery(name)?)
}

/// Parses `periodic:N` / `truncated:N[:R]`, or picks the field's natural
/// grid at the default sizes (periodic 32, truncated 64).
fn resolve_grid(spec: &Option<String>, field: &AnalyticField) -> Result<Grid, UsageError> {
    let Some(spec) = spec else {
        let n = match field.decay {
            DecayClass::Periodic => 32,
            _ => 64,
        };
        return Ok(Grid::for_field(field, n)?);
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || UsageError(format!("bad grid spec `{spec}`: expected periodic:N or truncated:N[:R]"));
    let kind = *parts.first().ok_or_else(bad)?;
    let n: usize = parts
        .get(1)
        .ok_or_else(bad)?
        .parse()
        .map_err(|_| bad())?;
    match (kind, parts.len()) {
        ("periodic", 2) => {
            let periods = field.periods().ok_or_else(|| {
                UsageError(format!(
                    "field `{}` is not periodic; use a truncated grid",
                    field.name
                ))
            })?;
            Ok(Grid::periodic(field.dim, [n; 3], periods)?)
        }
        ("truncated", 2 | 3) => {
            let r = match parts.get(2) {
                Some(s) => s.parse().map_err(|_| bad())?,
                None => field.suggested_radius(),
            };
            Ok(Grid::truncated(field.dim, [n; 3], [r; 3])?)
        }
        _ => Err(bad()),
    }
}

fn render_reports(reports: &[VerificationReport], format: TextFormat) -> String {
    match format {
        TextFormat::Table => reports_table(reports),
        TextFormat::Json => reports_to_json(reports),
    }
}

fn run_verify(a: &VerifyArgs) -> Result<Outcome, UsageError> {
    let reports: Vec<VerificationReport> = if a.field == "all" {
        run_suite(a.seed)?
    } else {
        let field = lookup_field(&a.field)?;
        if field.decay == DecayClass::Channel {
            vec![couette_diffusion_check()?]
        } else {
            let grid = resolve_grid(&a.grid, &field)?;
            let t = a.t.unwrap_or(0.25 * field.params.time_scale);
            let nu = a.nu.unwrap_or(field.params.viscosity);
            vec![
                check_divergence(&field, &grid, t)?,
                vorticity_crosscheck(&field, &grid, t)?,
                nse_residual(&field, &grid, t, nu)?,
            ]
        }
    };
    let passed = reports.iter().all(|r| r.passed());
    Ok(Outcome {
        report: render_reports(&reports, a.format),
        passed,
    })
}

fn exponent_table_text(rows: &[flowscale::scaling::ExponentRecord]) -> String {
    let mut out = String::from("r        omega_exp  u_exp    E_exp    blowup_safe\n");
    for rec in rows {
        out.push_str(&format!(
            "{:<8} {:<10} {:<8} {:<8} {}\n",
            decimal_string(rec.r),
            decimal_string(rec.omega_exp),
            decimal_string(rec.u_exp),
            decimal_string(rec.energy_exp),
            rec.blowup_safe,
        ));
    }
    out
}

fn run_exponents(a: &ExponentsArgs) -> Result<Outcome, UsageError> {
    let rec = predict_exponents(parse_rat(&a.beta_x)?, parse_rat(&a.beta_t)?)?;
    let report = match a.format {
        TableFormat::Table => format!(
            "beta_x = {}, beta_t = {}, r = {}\n{}",
            decimal_string(rec.beta_x),
            decimal_string(rec.beta_t),
            rec.r,
            exponent_table_text(std::slice::from_ref(&rec)),
        ),
        TableFormat::Json => rec.to_json().to_string(),
        TableFormat::Csv => format!("r,omega_exp,u_exp,E_exp\n{}\n", rec.csv_row()),
    };
    Ok(Outcome::pass(report))
}

fn run_table1(a: &Table1Args) -> Result<Outcome, UsageError> {
    let report = match a.format {
        TableFormat::Table => exponent_table_text(&table1()),
        TableFormat::Json => table1_json(),
        TableFormat::Csv => table1_csv(),
    };
    Ok(Outcome::pass(report))
}

fn parse_k_list(s: &str) -> Result<Vec<f64>, UsageError> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| UsageError(format!("bad scale factor `{p}` in k list")))
        })
        .collect()
}

fn run_measure(a: &MeasureArgs) -> Result<Outcome, UsageError> {
    let field = lookup_field(&a.field)?;
    let law = ScalingLaw::new(
        parse_rat(&a.alpha_x)?,
        parse_rat(&a.alpha_t)?,
        parse_rat(&a.alpha_rho)?,
    );
    let kind: NormKind = a.norm.parse()?;
    let ks = parse_k_list(&a.k)?;
    let fit = measure_exponent(&field, &law, kind, &ks, a.n)?;

    // Exact prediction only where it applies: a profile-carrying field
    // under the standard law.
    let predicted: Option<Rat> = match (field.beta, law.is_standard()) {
        (Some((bx, bt)), true) => Some(kind.predicted(&predict_exponents(bx, bt)?)),
        _ => None,
    };

    let report = match a.format {
        TextFormat::Table => {
            let mut out = format!(
                "field: {}\nnorm: {}\nlaw: alpha_x = {}, alpha_t = {}, alpha_rho = {}{}\n",
                field.name,
                kind.as_str(),
                law.alpha_x,
                law.alpha_t,
                law.alpha_rho,
                if law.is_standard() { " (standard)" } else { "" },
            );
            out.push_str(&format!("slope = {}\n", f12(fit.slope)));
            out.push_str(&format!("fit residual = {}\n", f12(fit.residual)));
            if let Some(p) = predicted {
                out.push_str(&format!("predicted slope = {p}\n"));
            }
            out.push_str("samples:\n");
            for (k, v) in &fit.samples {
                out.push_str(&format!("  k = {:<22} norm = {}\n", f12(*k), f12(*v)));
            }
            out
        }
        TextFormat::Json => serde_json::json!({
            "field": field.name,
            "norm": kind.as_str(),
            "law": law.to_json(),
            "slope": f12_json(fit.slope),
            "fit_residual": f12_json(fit.residual),
            "predicted_slope": predicted.map(rat_json),
            "samples": fit
                .samples
                .iter()
                .map(|(k, v)| serde_json::json!({"k": f12_json(*k), "norm": f12_json(*v)}))
                .collect::<Vec<_>>(),
        })
        .to_string(),
    };
    Ok(Outcome::pass(report))
}

fn run_bkm(a: &BkmArgs) -> Result<Outcome, UsageError> {
    let field = lookup_field(&a.field)?;
    let grid = resolve_grid(&a.grid, &field)?;
    let t1 = a.t1.unwrap_or(10.0 * field.params.time_scale);
    let integral = bkm_integral(&field, &grid, a.t0, t1, a.steps)?;
    let report = match a.format {
        TextFormat::Table => format!(
            "field: {}\ngrid: {} {}x{}x{}\nwindow: [{}, {}] in {} steps\nintegral = {}\n",
            field.name,
            grid.kind.label(),
            grid.n[0],
            grid.n[1],
            grid.n[2],
            f12(a.t0),
            f12(t1),
            a.steps,
            f12(integral),
        ),
        TextFormat::Json => serde_json::json!({
            "field": field.name,
            "grid": {"kind": grid.kind.label(), "n": grid.n},
            "t0": f12_json(a.t0),
            "t1": f12_json(t1),
            "steps": a.steps,
            "integral": f12_json(integral),
        })
        .to_string(),
    };
    Ok(Outcome::pass(report))
}

fn decay_label(d: DecayClass) -> &'static str {
    match d {
        DecayClass::Periodic => "periodic",
        DecayClass::Schwartz => "schwartz",
        DecayClass::Channel => "channel",
    }
}

fn carrier_label(c: WeightCarrier) -> &'static str {
    match c {
        WeightCarrier::VelocityScale => "velocity-scale",
        WeightCarrier::TimePrefactor => "time-prefactor",
    }
}

fn run_gallery_list(a: &GalleryListArgs) -> Result<Outcome, UsageError> {
    let fields: Vec<AnalyticField> = gallery_names()
        .iter()
        .map(|n| gallery(n))
        .collect::<Result<_, _>>()
        .map_err(UsageError::from)?;
    let report = match a.format {
        TextFormat::Table => {
            let name_w = fields.iter().map(|f| f.name.len()).max().unwrap_or(4);
            let mut out = format!(
                "{:<name_w$}  dim  decay     carrier         profile  flags\n",
                "name"
            );
            for f in &fields {
                let profile = match f.beta {
                    Some((bx, bt)) => format!("({bx}, {bt})"),
                    None => "-".to_string(),
                };
                let mut flags = Vec::new();
                if f.divergence_free {
                    flags.push("div-free");
                }
                if f.exact_nse_solution {
                    flags.push("exact-solution");
                }
                if f.strictly_positive_time {
                    flags.push("t>0");
                }
                out.push_str(&format!(
                    "{:<name_w$}  {:<3}  {:<8}  {:<14}  {:<7}  {}\n",
                    f.name,
                    f.dim,
                    decay_label(f.decay),
                    carrier_label(f.carrier),
                    profile,
                    flags.join(","),
                ));
            }
            out
        }
        TextFormat::Json => {
            let rows: Vec<serde_json::Value> = fields
                .iter()
                .map(|f| {
                    serde_json::json!({
                        "name": f.name,
                        "dim": f.dim,
                        "decay": decay_label(f.decay),
                        "carrier": carrier_label(f.carrier),
                        "beta": f.beta.map(|(bx, bt)| serde_json::json!({
                            "beta_x": rat_json(bx),
                            "beta_t": rat_json(bt),
                        })),
                        "divergence_free": f.divergence_free,
                        "exact_nse_solution": f.exact_nse_solution,
                        "strictly_positive_time": f.strictly_positive_time,
                    })
                })
                .collect();
            serde_json::Value::Array(rows).to_string()
        }
    };
    Ok(Outcome::pass(report))
}

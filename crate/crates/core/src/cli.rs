//! Command-line front end: evaluates closed forms and numerical solutions on a
//! grid, writes CSV or JSON traces and a JSON verification report.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 bad configuration,
//! 3 numerical failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closed_form::{bosonic_ode, fermionic_ode};
use crate::closed_form::{
    factorization_check, fermionic_free_term_jet, riccati_residual, u_particular_jet, w_fermionic_jet, w_seed_jet,
};
use crate::darboux::{family_free_term, u_general_jet, w_general_jet, zero_mode_ode};
use crate::dirac::{
    d1_first_order_residuals, d1_jets, d2_free_terms, d3_coupled_residual, fermionic_partner, integrate_d3_coupled,
    solve_d3_numeric, w1_from_w2, w2_closed_form_jet, BracketVariant, D2Convention, D2Options, Eq24Integration,
    SpinorInit,
};
use crate::error::Error;
use crate::grid::{FunctionTrace, Grid};
use crate::numverify::{residual, ResidualReport};
use crate::params::{Kappa, ModelParams};
use crate::scalar::{Cx, Jet};

#[derive(Debug, Parser)]
#[command(
    name = "susy-riccati",
    version,
    about = "Evaluate and verify Riccati, Darboux and Dirac-like solutions on a grid"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Particular Riccati solution, seed, fermionic free term and solution.
    ClosedForm(Common),
    /// Darboux family: u_g, c_kappa and w_g.
    Family(Common),
    /// Massless spinor (w_f, w_b).
    Dirac1(Common),
    /// Single-mass system: hypergeometric bosonic component.
    Dirac2(Dirac2Args),
    /// Two-mass system on the family solution, solved numerically.
    Dirac3(Dirac3Args),
    /// Run the closed-form verification suite and print the report.
    Verify(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    AsPrinted,
    IOnBoth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Corrected,
    AsPrinted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Eq24Arg {
    Eta,
    YJacobian,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub n: usize,
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(format!("expected start:end:n, got {s:?}"));
    };
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    let n = n.trim().parse::<usize>().map_err(|e| format!("{n:?}: {e}"))?;
    let spec = GridSpec { start: num(a)?, end: num(b)?, n };
    if !(spec.start < spec.end) || n < 2 {
        return Err(format!("need start < end and n >= 2, got {s:?}"));
    }
    Ok(spec)
}

fn parse_complex(s: &str) -> Result<(f64, f64), String> {
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once(',') {
        Some((a, b)) => Ok((num(a)?, num(b)?)),
        None => Ok((num(s)?, 0.0)),
    }
}

fn parse_init(s: &str) -> Result<[f64; 4], String> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    v.try_into().map_err(|_| "expected w1_re,w1_im,w2_re,w2_im".to_string())
}

/// Flags shared by every subcommand.
#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Sign of the Riccati free term (1 or -1).
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub kappa: i32,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c: f64,
    /// Seed phase.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub phi: f64,
    /// Seed amplitude W.
    #[arg(long, default_value_t = 1.0)]
    pub amp: f64,
    /// Fermionic phase.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub d: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long = "K", default_value_t = 0.0)]
    pub k_mass: f64,
    #[arg(long = "K1", default_value_t = 0.0)]
    pub k1: f64,
    #[arg(long = "K2", default_value_t = 0.0)]
    pub k2: f64,
    /// Constant of the reduction-of-order integral.
    #[arg(long = "k", default_value_t = 0.0, allow_hyphen_values = true)]
    pub k_int: f64,
    /// Superposition constants, `re` or `re,im`.
    #[arg(long = "A", default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub sup_a: (f64, f64),
    #[arg(long = "B", default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    pub sup_b: (f64, f64),
    #[arg(long = "C", default_value = "1", value_parser = parse_complex, allow_hyphen_values = true)]
    pub sup_c: (f64, f64),
    #[arg(long = "D", default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    pub sup_d: (f64, f64),
    /// Grid `start:end:n`, inclusive endpoints.
    #[arg(long, value_parser = parse_grid, allow_hyphen_values = true)]
    pub grid: GridSpec,
    #[arg(long, default_value_t = 1e-3)]
    pub excluded_radius: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub output: OutputFormat,
    /// Trace file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report file (stdout for `verify`, stderr otherwise, when absent).
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct Dirac2Args {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = ConventionArg::Corrected)]
    pub d2_convention: ConventionArg,
    /// Append `w1` from the reduction-of-order formula.
    #[arg(long)]
    pub eq24: bool,
    #[arg(long, value_enum, default_value_t = Eq24Arg::Eta)]
    pub eq24_integration: Eq24Arg,
    /// Append the fermionic partner `w1 = L2 w2 / K`.
    #[arg(long)]
    pub partner: bool,
}

#[derive(Clone, Debug, Args)]
pub struct Dirac3Args {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = VariantArg::AsPrinted)]
    pub d3_variant: VariantArg,
    /// Initial values `w1_re,w1_im,w2_re,w2_im` at the grid start; derivatives
    /// follow from the first-order system. Defaults to `(w_f, w_g)`.
    #[arg(long, value_parser = parse_init, allow_hyphen_values = true)]
    pub init: Option<[f64; 4]>,
}

#[derive(Debug, Serialize)]
struct ParamsRecord {
    kappa: i32,
    c: f64,
    phi: f64,
    amp: f64,
    d: f64,
    lambda: f64,
    #[serde(rename = "K")]
    k_mass: f64,
    #[serde(rename = "K1")]
    k1: f64,
    #[serde(rename = "K2")]
    k2: f64,
    k: f64,
    #[serde(rename = "A")]
    sup_a: [f64; 2],
    #[serde(rename = "B")]
    sup_b: [f64; 2],
    #[serde(rename = "C")]
    sup_c: [f64; 2],
    #[serde(rename = "D")]
    sup_d: [f64; 2],
    grid: String,
    excluded_radius: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<String>,
}

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    sup_norm: f64,
    l2_norm: f64,
    tolerance: f64,
    pass: bool,
}

impl Check {
    fn from_report(name: impl Into<String>, r: &ResidualReport) -> Self {
        Self { name: name.into(), sup_norm: r.sup_norm, l2_norm: r.l2_norm, tolerance: r.tolerance, pass: r.pass }
    }
}

#[derive(Debug, Serialize)]
struct Report {
    subcommand: &'static str,
    params: ParamsRecord,
    checks: Vec<Check>,
    pass: bool,
}

struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(grid: &Grid<f64>) -> Self {
        Self { columns: vec!["eta".into()], rows: grid.points().iter().map(|&e| vec![e]).collect() }
    }

    fn real(&mut self, name: &str, values: &[f64]) {
        self.columns.push(name.into());
        for (row, &v) in self.rows.iter_mut().zip(values) {
            row.push(v);
        }
    }

    fn complex(&mut self, name: &str, values: &[Cx<f64>]) {
        self.columns.push(format!("{name}_re"));
        self.columns.push(format!("{name}_im"));
        for (row, v) in self.rows.iter_mut().zip(values) {
            row.push(v.re);
            row.push(v.im);
        }
    }

    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => {
                let mut s = self.columns.join(",");
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            }
            OutputFormat::Json => {
                #[derive(Serialize)]
                struct J<'a> {
                    columns: &'a [String],
                    rows: &'a [Vec<f64>],
                }
                let mut s = serde_json::to_string_pretty(&J { columns: &self.columns, rows: &self.rows }).unwrap();
                s.push('\n');
                s
            }
        }
    }
}

enum Failure {
    Config(String),
    Numerical(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e)
        } else {
            Failure::Config(e.to_string())
        }
    }
}

type Outcome = Result<(Option<Table>, Vec<Check>), Failure>;

fn model(c: &Common) -> Result<ModelParams<f64>, Failure> {
    let kappa = Kappa::from_sign(c.kappa)?;
    let cx = |(a, b): (f64, f64)| Cx::new(a, b);
    Ok(ModelParams::new(kappa, c.c)?
        .with_phases(c.phi, c.d)
        .with_amp(c.amp)
        .with_lambda(c.lambda)
        .with_mass(c.k_mass)
        .with_masses(c.k1, c.k2)
        .with_k_int(c.k_int)
        .with_superposition(cx(c.sup_a), cx(c.sup_b), cx(c.sup_c), cx(c.sup_d))
        .with_excluded_radius(c.excluded_radius)
        .validated()?)
}

fn grid_for(p: &ModelParams<f64>, g: &GridSpec, half_line: bool) -> Result<Grid<f64>, Failure> {
    if half_line && g.start < 0.0 {
        return Err(Failure::Config(format!("grid must start at eta >= 0, got {}", g.start)));
    }
    Ok(Grid::excluding(g.start, g.end, g.n, p.excluded_radius, &p.singularities(g.start, g.end))?)
}

fn real_jets<F>(grid: &Grid<f64>, f: F) -> Result<Vec<Jet<f64>>, Error>
where
    F: Fn(f64) -> Result<Jet<f64>, Error>,
{
    grid.points().iter().map(|&e| f(e)).collect()
}

fn pointwise_check<F>(name: &str, grid: &Grid<f64>, tol: f64, f: F) -> Result<Check, Error>
where
    F: Fn(f64) -> Result<f64, Error>,
{
    let mags = grid.points().iter().map(|&e| f(e)).collect::<Result<Vec<_>, _>>()?;
    Ok(Check::from_report(name, &ResidualReport::from_pointwise(grid, &mags, tol)))
}

fn closed_form_checks(p: &ModelParams<f64>, grid: &Grid<f64>) -> Result<Vec<Check>, Error> {
    let u = FunctionTrace::sample_real(grid, |e| u_particular_jet(p, e))?;
    let fac = factorization_check(p, grid, 1e-10)?;
    Ok(vec![
        Check::from_report("riccati u_p", &riccati_residual(&u, p, 1e-12)?),
        pointwise_check("partner free term c_f", grid, 1e-10, |e| {
            let u = u_particular_jet(p, e)?;
            Ok((-u.d1 + p.c * u.value * u.value - fermionic_free_term_jet(p, e)?.value).abs())
        })?,
        Check::from_report("bosonic w_seed", &fac.bosonic),
        Check::from_report("fermionic w_f", &fac.fermionic),
        Check::from_report("bosonic factorized", &fac.bosonic_factorized),
        Check::from_report("fermionic factorized", &fac.fermionic_factorized),
    ])
}

fn closed_form(c: &Common) -> Outcome {
    let p = model(c)?;
    let grid = grid_for(&p, &c.grid, false)?;
    let mut t = Table::new(&grid);
    let col =
        |f: &dyn Fn(f64) -> Result<f64, Error>| grid.points().iter().map(|&e| f(e)).collect::<Result<Vec<_>, _>>();
    t.real("u_p", &col(&|e| u_particular_jet(&p, e).map(|j| j.value))?);
    t.real("w_seed", &col(&|e| Ok(w_seed_jet(&p, e).value))?);
    t.real("c_f", &col(&|e| fermionic_free_term_jet(&p, e).map(|j| j.value))?);
    t.real("w_f", &col(&|e| w_fermionic_jet(&p, e).map(|j| j.value))?);
    Ok((Some(t), closed_form_checks(&p, &grid)?))
}

fn family(c: &Common) -> Outcome {
    let p = model(c)?;
    let grid = grid_for(&p, &c.grid, true)?;
    let ug = real_jets(&grid, |e| u_general_jet(&p, e))?;
    let ck = grid.points().iter().map(|&e| family_free_term(&p, e)).collect::<Result<Vec<_>, _>>()?;
    let wg = real_jets(&grid, |e| w_general_jet(&p, e))?;
    let mut t = Table::new(&grid);
    t.real("u_g", &ug.iter().map(|j| j.value).collect::<Vec<_>>());
    t.real("c_family", &ck);
    t.real("w_g", &wg.iter().map(|j| j.value).collect::<Vec<_>>());
    let kappa = p.kappa.sign::<f64>();
    let checks = vec![
        pointwise_check("partner invariance", &grid, 1e-8, |e| {
            let u = u_general_jet(&p, e)?;
            Ok((-u.d1 + p.c * u.value * u.value - fermionic_free_term_jet(&p, e)?.value).abs())
        })?,
        pointwise_check("riccati u_g", &grid, 1e-9, |e| {
            let u = u_general_jet(&p, e)?;
            Ok((p.c * u.value * u.value + u.d1 + kappa * family_free_term(&p, e)?).abs())
        })?,
        Check::from_report(
            "zero mode w_g",
            &residual(&zero_mode_ode(&p), |e| w_general_jet(&p, e).map(Jet::to_complex), &grid, 1e-9)?,
        ),
    ];
    Ok((Some(t), checks))
}

fn dirac1(c: &Common) -> Outcome {
    let p = model(c)?;
    let grid = grid_for(&p, &c.grid, false)?;
    let jets = grid.points().iter().map(|&e| d1_jets(&p, e)).collect::<Result<Vec<_>, _>>()?;
    let mut t = Table::new(&grid);
    t.complex("w1", &jets.iter().map(|j| Cx::new(j.0.value, 0.0)).collect::<Vec<_>>());
    t.complex("w2", &jets.iter().map(|j| Cx::new(j.1.value, 0.0)).collect::<Vec<_>>());
    let (r1, r2) = d1_first_order_residuals(&p, &grid, 1e-11)?;
    let f = residual(&fermionic_ode(&p), |e| d1_jets(&p, e).map(|j| j.0.to_complex()), &grid, 1e-10)?;
    let b = residual(&bosonic_ode(&p), |e| d1_jets(&p, e).map(|j| j.1.to_complex()), &grid, 1e-10)?;
    let checks = vec![
        Check::from_report("row 1", &r1),
        Check::from_report("row 2", &r2),
        Check::from_report("w1 fermionic", &f),
        Check::from_report("w2 bosonic", &b),
    ];
    Ok((Some(t), checks))
}

fn dirac2(a: &Dirac2Args) -> Outcome {
    let p = model(&a.common)?;
    let grid = grid_for(&p, &a.common.grid, false)?;
    let opts = D2Options {
        convention: match a.d2_convention {
            ConventionArg::Corrected => D2Convention::Corrected,
            ConventionArg::AsPrinted => D2Convention::AsPrinted,
        },
        ..D2Options::default()
    };
    let w2 = |e: f64| w2_closed_form_jet(&p, e, &opts);
    let trace = FunctionTrace::sample(&grid, w2)?;
    let (fo, bo) = d2_free_terms(&p);
    let mut t = Table::new(&grid);
    t.complex("w2", &trace.values);
    let mut checks = vec![Check::from_report("w2 bosonic", &residual(&bo, w2, &grid, 1e-8)?)];
    if a.eq24 {
        let (mode, label) = match a.eq24_integration {
            Eq24Arg::Eta => (Eq24Integration::Eta, "eta"),
            Eq24Arg::YJacobian => (Eq24Integration::YJacobian, "y-jacobian"),
        };
        let w1 = w1_from_w2(&p, w2, &grid, mode)?;
        t.complex("w1", &w1.values);
        checks.push(Check::from_report(
            format!("w1 reduction of order [{label}] fermionic"),
            &crate::numverify::residual_of_trace(&fo, &w1, 1e-6)?,
        ));
    }
    if a.partner {
        let partner = FunctionTrace::sample(&grid, |e| fermionic_partner(&p, w2(e)?, e))?;
        t.complex("w1_partner", &partner.values);
        checks.push(Check::from_report(
            "w1 partner fermionic",
            &residual(&fo, |e| fermionic_partner(&p, w2(e)?, e), &grid, 1e-8)?,
        ));
    }
    Ok((Some(t), checks))
}

fn dirac3(a: &Dirac3Args) -> Outcome {
    let p = model(&a.common)?;
    let grid = grid_for(&p, &a.common.grid, true)?;
    let variant = match a.d3_variant {
        VariantArg::AsPrinted => BracketVariant::AsPrinted,
        VariantArg::IOnBoth => BracketVariant::IOnBoth,
    };
    let eta0 = grid.points()[0];
    let init = match a.init {
        Some([a, b, c, d]) => SpinorInit::consistent(&p, eta0, Cx::new(a, b), Cx::new(c, d))?,
        None => SpinorInit::from_closed_forms(&p, eta0)?,
    };
    let s = solve_d3_numeric(&p, &grid, init, variant)?;
    let mut t = Table::new(&grid);
    t.complex("w1", &s.w1);
    t.complex("w2", &s.w2);
    let (ra, rb) = d3_coupled_residual(&p, &s, 1e-6)?;
    let direct = integrate_d3_coupled(&p, &grid, init.w1, init.w2)?;
    let agree = |x: &[Cx<f64>], y: &[Cx<f64>]| -> Vec<f64> {
        x.iter().zip(y).map(|(u, v)| (u - v).norm() / (1.0 + v.norm())).collect()
    };
    let checks = vec![
        Check::from_report("coupled row a", &ra),
        Check::from_report("coupled row b", &rb),
        Check::from_report(
            "w1 vs first-order integration",
            &ResidualReport::from_pointwise(&grid, &agree(&s.w1, &direct.w1), 1e-7),
        ),
        Check::from_report(
            "w2 vs first-order integration",
            &ResidualReport::from_pointwise(&grid, &agree(&s.w2, &direct.w2), 1e-7),
        ),
    ];
    Ok((Some(t), checks))
}

fn verify(c: &Common) -> Outcome {
    let p = model(c)?;
    let grid = grid_for(&p, &c.grid, false)?;
    Ok((None, closed_form_checks(&p, &grid)?))
}

fn record(c: &Common, variant: Option<String>) -> ParamsRecord {
    ParamsRecord {
        kappa: c.kappa,
        c: c.c,
        phi: c.phi,
        amp: c.amp,
        d: c.d,
        lambda: c.lambda,
        k_mass: c.k_mass,
        k1: c.k1,
        k2: c.k2,
        k: c.k_int,
        sup_a: [c.sup_a.0, c.sup_a.1],
        sup_b: [c.sup_b.0, c.sup_b.1],
        sup_c: [c.sup_c.0, c.sup_c.1],
        sup_d: [c.sup_d.0, c.sup_d.1],
        grid: format!("{}:{}:{}", c.grid.start, c.grid.end, c.grid.n),
        excluded_radius: c.excluded_radius,
        variant,
    }
}

fn write_to(path: &Option<PathBuf>, fallback: &mut dyn Write, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => fallback.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    let (name, common, variant, outcome) = match &cli.command {
        Command::ClosedForm(c) => ("closed-form", c, None, closed_form(c)),
        Command::Family(c) => ("family", c, None, family(c)),
        Command::Dirac1(c) => ("dirac1", c, None, dirac1(c)),
        Command::Dirac2(a) => {
            let v = format!("{:?}", a.d2_convention).to_lowercase();
            ("dirac2", &a.common, Some(v), dirac2(a))
        }
        Command::Dirac3(a) => {
            let v = match a.d3_variant {
                VariantArg::AsPrinted => "as-printed",
                VariantArg::IOnBoth => "i-on-both",
            };
            ("dirac3", &a.common, Some(v.to_string()), dirac3(a))
        }
        Command::Verify(c) => ("verify", c, None, verify(c)),
    };
    let finish = || -> Result<bool, Failure> {
        let (table, checks) = outcome?;
        if let Some(t) = table {
            write_to(&common.out, stdout, &t.render(common.output))?;
        }
        let pass = checks.iter().all(|c| c.pass);
        let report = Report { subcommand: name, params: record(common, variant), checks, pass };
        let mut text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Io(e.to_string()))?;
        text.push('\n');
        let sink: &mut dyn Write = if name == "verify" { stdout } else { stderr };
        write_to(&common.report, sink, &text)?;
        Ok(pass)
    };
    // the closure borrows stdout/stderr; evaluate before reusing them
    let result = finish();
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Config(msg)) | Err(Failure::Io(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Numerical(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            3
        }
    }
}

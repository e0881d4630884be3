//! Command-line front end. Exit codes: 0 success, 1 failed check or no
//! convergence, 2 usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::equilibrium::{equilibrium_report_with, MinimizeOptions};
use crate::error::Error;
use crate::potentials::CouplingMap;
use crate::properties::{check_properties, PropertyOptions};
use crate::report;
use crate::rootsys::{Coupling, RootSystemData, RootSystemId, DEFAULT_RANK_CEILING};
use crate::verify::{self, run_all, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Coupling used for U₂ when forming a⁽²⁾.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum A2Coupling {
    /// h = κ √((α,α)/2)
    Matched,
    /// h² = κ(κ − 1)
    Literal,
    /// h = κ
    Raw,
}

impl From<A2Coupling> for CouplingMap {
    fn from(c: A2Coupling) -> Self {
        match c {
            A2Coupling::Matched => CouplingMap::LengthCorrected,
            A2Coupling::Literal => CouplingMap::KappaKappaMinusOne,
            A2Coupling::Raw => CouplingMap::Identity,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "weylmodes", version, about = "Equilibria and normal modes of trigonometric root-system potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Coupling on long roots (all roots for simply-laced systems)
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub g_long: f64,
    /// Coupling on short roots
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub g_short: f64,
    /// Relative tolerance for floating-point checks
    #[arg(long, global = true, default_value_t = verify::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Compare against the simple-root expansion and use raw couplings for U₂
    #[arg(long, global = true)]
    pub literal_paper_mode: bool,
    /// Override the U₂ coupling convention
    #[arg(long, global = true, value_enum)]
    pub a2_coupling: Option<A2Coupling>,
    /// Largest rank accepted for the classical families
    #[arg(long, global = true, default_value_t = DEFAULT_RANK_CEILING)]
    pub max_rank: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root-system data: counts, degrees, |W|, z, Cartan matrix, 2ρ coefficients
    Info { system: String },
    /// Equilibrium of U₁, Hessians and their spectra
    Equilibrium { system: String },
    /// Run the verification suite
    Verify(SuiteArgs),
    /// One summary row per system
    Table(SuiteArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    /// Single system (e.g. B3); defaults to the standard suite
    pub system: Option<String>,
    /// Run the standard suite
    #[arg(long)]
    pub all: bool,
    /// Add E7 and E8 to the standard suite
    #[arg(long)]
    pub deep: bool,
    /// Also run the sampled derivative/convexity/uniqueness checks
    #[arg(long)]
    pub properties: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Info,
    Equilibrium,
    Verify,
    Table,
}

/// Validated invocation.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub command: CommandKind,
    pub system: Option<RootSystemId>,
    pub g: Coupling,
    pub tol: f64,
    pub format: Format,
    pub all_systems: bool,
    pub deep: bool,
    pub properties: bool,
    pub literal_paper_mode: bool,
    pub coupling_map: CouplingMap,
}

/// Text written to stdout and stderr plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

impl CliConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, Error> {
        let c = &cli.common;
        let parse = |s: &str| RootSystemId::parse_with_ceiling(s, c.max_rank);
        let (command, system, all, deep, properties) = match &cli.command {
            Command::Info { system } => (CommandKind::Info, Some(parse(system)?), false, false, false),
            Command::Equilibrium { system } => (CommandKind::Equilibrium, Some(parse(system)?), false, false, false),
            Command::Verify(a) | Command::Table(a) => {
                let kind =
                    if matches!(cli.command, Command::Verify(_)) { CommandKind::Verify } else { CommandKind::Table };
                if a.all && a.system.is_some() {
                    return Err(Error::InvalidOptions("give either a system or --all, not both".into()));
                }
                let system = a.system.as_deref().map(parse).transpose()?;
                (kind, system, system.is_none(), a.deep, a.properties)
            }
        };
        if !(c.g_long.is_finite() && c.g_short.is_finite()) || c.g_long < 0.0 || c.g_short < 0.0 {
            return Err(Error::InvalidCoupling("g values must be finite and >= 0".into()));
        }
        if !(c.tol > 0.0 && c.tol.is_finite()) {
            return Err(Error::InvalidOptions("--tol must be positive".into()));
        }
        let coupling_map = match (c.a2_coupling, c.literal_paper_mode) {
            (Some(m), _) => m.into(),
            (None, true) => CouplingMap::Identity,
            (None, false) => CouplingMap::LengthCorrected,
        };
        Ok(Self {
            command,
            system,
            g: Coupling::new(c.g_long, c.g_short),
            tol: c.tol,
            format: c.format,
            all_systems: all,
            deep,
            properties,
            literal_paper_mode: c.literal_paper_mode,
            coupling_map,
        })
    }

    fn verify_options(&self) -> VerifyOptions {
        let mut opts = if self.literal_paper_mode { VerifyOptions::literal() } else { VerifyOptions::default() };
        opts.tol = self.tol;
        opts.coupling_map = self.coupling_map;
        opts
    }

    fn systems(&self) -> Vec<RootSystemId> {
        match self.system {
            Some(id) => vec![id],
            None if self.deep => verify::deep_suite(),
            None => verify::default_suite(),
        }
    }
}

fn build(id: RootSystemId) -> Result<RootSystemData, Outcome> {
    RootSystemData::new(id).map_err(|e| Outcome {
        code: EXIT_FAILED,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}

fn check_coupling(rs: &RootSystemData, g: &Coupling) -> Result<(), Outcome> {
    if rs.has_positive_coupling(g) {
        Ok(())
    } else {
        Err(Outcome::usage(format!("{}: every root has zero coupling, so there is no interior minimum", rs.id())))
    }
}

fn key_value_csv(value: &Value) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(["key", "value"]).expect("in-memory write");
    if let Value::Object(m) = value {
        for (k, v) in m {
            let cell = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            w.write_record([k.as_str(), cell.as_str()]).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn cmd_info(cfg: &CliConfig) -> Outcome {
    let Some(id) = cfg.system else { return Outcome::usage("info needs a system") };
    let rs = match build(id) {
        Ok(rs) => rs,
        Err(o) => return o,
    };
    match cfg.format {
        Format::Text => Outcome::ok(report::info_text(&rs, &cfg.g)),
        Format::Json => Outcome::ok(report::render_json(&report::info_json(&rs, &cfg.g))),
        Format::Csv => Outcome::ok(key_value_csv(&report::info_json(&rs, &cfg.g))),
    }
}

pub fn cmd_equilibrium(cfg: &CliConfig) -> Outcome {
    let Some(id) = cfg.system else { return Outcome::usage("equilibrium needs a system") };
    let rs = match build(id) {
        Ok(rs) => rs,
        Err(o) => return o,
    };
    if let Err(o) = check_coupling(&rs, &cfg.g) {
        return o;
    }
    match equilibrium_report_with(&rs, &cfg.g, &MinimizeOptions::default(), cfg.coupling_map) {
        Ok(eq) => match cfg.format {
            Format::Text => Outcome::ok(report::equilibrium_text(&rs, &cfg.g, &eq)),
            Format::Json => Outcome::ok(report::render_json(&report::equilibrium_json(&rs, &cfg.g, &eq))),
            Format::Csv => Outcome::ok(key_value_csv(&report::equilibrium_json(&rs, &cfg.g, &eq))),
        },
        Err(e @ Error::InvalidCoupling(_)) => Outcome::usage(e),
        Err(e) => Outcome { code: EXIT_FAILED, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn property_lines(cfg: &CliConfig, systems: &[RootSystemId]) -> (Vec<Value>, String, bool) {
    use std::fmt::Write as _;
    let opts = PropertyOptions::default();
    let mut text = String::new();
    let mut records = Vec::new();
    let mut all_pass = true;
    for id in systems {
        let outcome = RootSystemData::new(*id).and_then(|rs| check_properties(&rs, &cfg.g, &opts));
        match outcome {
            Ok(r) => {
                all_pass &= r.pass();
                let _ = writeln!(
                    text,
                    "{}  {:<4} properties   grad fd {} hess fd {} min eig {} prepotential spread {} multistart {} (seed {})",
                    if r.pass() { "PASS" } else { "FAIL" },
                    id.to_string(),
                    report::fmt_float(r.grad_fd_err),
                    report::fmt_float(r.hess_fd_err),
                    report::fmt_float(r.min_u1_hess_eig),
                    report::fmt_float(r.prepotential_spread),
                    report::fmt_float(r.multistart_spread),
                    opts.seed,
                );
                records.push(json!({
                    "system": id.to_string(),
                    "grad_fd_err": report::round_sig(r.grad_fd_err),
                    "hess_fd_err": report::round_sig(r.hess_fd_err),
                    "min_u1_hess_eig": report::round_sig(r.min_u1_hess_eig),
                    "prepotential_spread": report::round_sig(r.prepotential_spread),
                    "multistart_spread": report::round_sig(r.multistart_spread),
                    "pass": r.pass(),
                }));
            }
            Err(e) => {
                all_pass = false;
                let _ = writeln!(text, "FAIL  {:<4} properties   {e}", id.to_string());
                records.push(json!({ "system": id.to_string(), "error": e.to_string(), "pass": false }));
            }
        }
    }
    (records, text, all_pass)
}

fn verify_csv(report: &verify::VerificationReport) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
    w.write_record(["system", "check", "pass", "computed", "predicted", "error", "tol"]).expect("write");
    let tol = report::fmt_float(report.options.tol);
    for rec in &report.records {
        let c = match &rec.outcome {
            Ok(c) => c,
            Err(e) => {
                w.write_record([rec.system.as_str(), "error", "false", "", "", &e.to_string(), ""]).expect("write");
                continue;
            }
        };
        let join = |xs: &[f64]| xs.iter().map(|&x| report::fmt_float(x)).collect::<Vec<_>>().join(", ");
        let pred = match c.theorem.basis {
            verify::PredictionBasis::Coroot => (&c.theorem.predicted_coroot, c.theorem.max_rel_err_coroot),
            verify::PredictionBasis::Root => (&c.theorem.predicted_root, c.theorem.max_rel_err_root),
        };
        let rows: Vec<[String; 7]> = vec![
            [
                rec.system.clone(),
                "theorem".into(),
                c.theorem.pass.to_string(),
                join(&c.theorem.eigs_computed),
                join(pred.0),
                report::fmt_float(pred.1),
                tol.clone(),
            ],
            [
                rec.system.clone(),
                "identity".into(),
                c.identity.pass.to_string(),
                c.identity.lhs.to_string(),
                c.identity.rhs.to_string(),
                "0".into(),
                "exact".into(),
            ],
            [
                rec.system.clone(),
                "macdonald".into(),
                c.macdonald.pass.to_string(),
                report::fmt_float(c.macdonald.lhs),
                report::fmt_float(c.macdonald.rhs),
                report::fmt_float(c.macdonald.rel_err),
                tol.clone(),
            ],
            [
                rec.system.clone(),
                "relation13".into(),
                c.relation13.pass.to_string(),
                report::fmt_float(c.relation13.c),
                "1".into(),
                report::fmt_float(c.relation13.residual),
                tol.clone(),
            ],
            [
                rec.system.clone(),
                "coincidence".into(),
                c.coincidence.pass.to_string(),
                report::fmt_float(c.coincidence.distance),
                "0".into(),
                report::fmt_float(c.coincidence.distance),
                tol.clone(),
            ],
            [
                rec.system.clone(),
                "gap".into(),
                c.gap.pass.to_string(),
                c.gap.linear_parts.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                c.gap.predicted.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
                "0".into(),
                "exact".into(),
            ],
        ];
        for row in rows {
            w.write_record(row).expect("write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn cmd_verify(cfg: &CliConfig) -> Outcome {
    let systems = cfg.systems();
    let report = run_all(&systems, &cfg.g, &cfg.verify_options());
    if let Some(Err(e @ Error::InvalidCoupling(_))) = report.records.first().map(|r| &r.outcome) {
        return Outcome::usage(e);
    }
    let mut pass = report.pass();
    let stdout = match cfg.format {
        Format::Text => {
            let mut s = report::verify_text(&report);
            if cfg.properties {
                let (_, text, ok) = property_lines(cfg, &systems);
                pass &= ok;
                s.push_str(&text);
            }
            s
        }
        Format::Json => {
            let mut v = report::verify_json(&report);
            if cfg.properties {
                let (records, _, ok) = property_lines(cfg, &systems);
                pass &= ok;
                v["properties"] = Value::Array(records);
                v["pass"] = Value::Bool(pass);
            }
            report::render_json(&v)
        }
        Format::Csv => verify_csv(&report),
    };
    Outcome { code: if pass { EXIT_OK } else { EXIT_FAILED }, stdout, stderr: String::new() }
}

pub fn cmd_table(cfg: &CliConfig) -> Outcome {
    let systems = cfg.systems();
    let report = run_all(&systems, &cfg.g, &cfg.verify_options());
    if let Some(Err(e @ Error::InvalidCoupling(_))) = report.records.first().map(|r| &r.outcome) {
        return Outcome::usage(e);
    }
    let data: Vec<Option<RootSystemData>> = systems.iter().map(|id| RootSystemData::new(*id).ok()).collect();
    let rows = report::table_rows(&report, &data);
    let stdout = match cfg.format {
        Format::Text => report::table_text(&rows),
        Format::Json => report::render_json(&report::table_json(&rows)),
        Format::Csv => report::table_csv(&rows),
    };
    Outcome::ok(stdout)
}

pub fn run(cli: &Cli) -> Outcome {
    let cfg = match CliConfig::from_cli(cli) {
        Ok(cfg) => cfg,
        Err(e) => return Outcome::usage(e),
    };
    match cfg.command {
        CommandKind::Info => cmd_info(&cfg),
        CommandKind::Equilibrium => cmd_equilibrium(&cfg),
        CommandKind::Verify => cmd_verify(&cfg),
        CommandKind::Table => cmd_table(&cfg),
    }
}

/// Parses `args` (including the program name) and runs; clap errors map to
/// exit code 2, `--help`/`--version` to 0.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                Outcome::ok(rendered)
            } else {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: rendered }
            }
        }
    }
}

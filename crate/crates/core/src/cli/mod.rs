//! The `tdq` command line: figure data as CSV/JSON tables plus a self-check.

mod output;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dynamics::{
    omega_sq, rho_analytic, AnalyticPinney, ConductivityModel, Dopri5, NumericPinney,
    PinneyTrajectory, SuperconductorParams,
};
use crate::error::{Error, Result};
use crate::information::complexity;
use crate::observables::{density_profile, energy_mean, moments, uncertainty_product, QuantumSnapshot};
use crate::special::MAX_HERMITE_ORDER;

pub use output::{format_g17, Cell, Table};
pub use verify::{run_suite, Check, CheckKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

const DENSITY_NORM_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "tdq", version, about = "Charge quantization with time-dependent conductivity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pinney amplitude ρ(t), ρ̇(t), L(t), ω²(t).
    Rho(Flags),
    /// Second moments, uncertainty product and mean energy.
    Observables(Flags),
    /// Charge density P(q) on a grid.
    Density(Flags),
    /// Entropy, disequilibrium and complexity.
    Info(Flags),
    /// Run the built-in checks; exit 1 if any fails.
    Verify(Flags),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// σ(t) = σ₀/(At + 1)
    Hyperbolic,
    /// σ(t) = σ₀
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Analytic,
    Numeric,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Conductivity amplitudes, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub sigma0: Option<Vec<f64>>,
    #[arg(long = "A", default_value_t = 1.0, allow_negative_numbers = true)]
    pub rate: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub eps0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c: f64,
    #[arg(long = "lambdaL", default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda_l: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub hbar: f64,
    /// Quantum levels, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<u32>>,
    #[arg(long, allow_negative_numbers = true)]
    pub t0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t1: Option<f64>,
    /// Number of time samples, endpoints included.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub qmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub qmax: Option<f64>,
    #[arg(long)]
    pub qpoints: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; `-` or absent writes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Start numeric Pinney runs from the exact (ρ, ρ̇) at t = 0 instead of the
    /// instantaneous equilibrium ω(0)^{−1/2}.
    #[arg(long)]
    pub seed_from_analytic: bool,
    /// Integrator tolerance used by the Pinney and classical checks of `verify`.
    #[arg(long, default_value_t = 1e-10)]
    pub tol_verify: f64,
    #[arg(long, value_enum, default_value = "hyperbolic")]
    pub model: ModelArg,
    /// ρ(t) source; defaults to analytic for the hyperbolic model.
    #[arg(long, value_enum)]
    pub solver: Option<SolverArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Rho,
    Observables,
    Density,
    Info,
    Verify,
}

impl CommandKind {
    fn name(self) -> &'static str {
        match self {
            CommandKind::Rho => "rho",
            CommandKind::Observables => "observables",
            CommandKind::Density => "density",
            CommandKind::Info => "info",
            CommandKind::Verify => "verify",
        }
    }

    /// (σ₀ list, t0, t1, steps) defaults matching each figure.
    fn defaults(self) -> (&'static [f64], f64, f64, usize) {
        match self {
            CommandKind::Rho => (&[2.0], 0.0, 5.0, 101),
            CommandKind::Observables => (&[0.4, 0.6, 0.8], 0.0, 5.0, 101),
            CommandKind::Density => (&[0.5, 1.5, 3.0], 0.0, 1.0, 3),
            CommandKind::Info => (&[2.0, 2.5, 3.0], 0.0, 2.0, 41),
            CommandKind::Verify => (&[2.0], 0.0, 5.0, 51),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeWindow {
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
}

impl TimeWindow {
    pub fn grid(&self) -> Vec<f64> {
        let span = self.t1 - self.t0;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.t1 } else { self.t0 + span * i as f64 / last })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeGrid {
    pub qmin: f64,
    pub qmax: f64,
    pub points: usize,
}

impl ChargeGrid {
    pub fn grid(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.qmax
                } else {
                    self.qmin + (self.qmax - self.qmin) * i as f64 / last
                }
            })
            .collect()
    }
}

/// Fully validated settings of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    /// Constants shared by every sweep entry; `sigma0` holds the first entry.
    pub params: SuperconductorParams,
    pub model: ModelArg,
    pub solver: SolverArg,
    /// Ascending, deduplicated.
    pub sigma0: Vec<f64>,
    /// Ascending, deduplicated.
    pub levels: Vec<u32>,
    pub time: TimeWindow,
    pub charge: ChargeGrid,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed_from_analytic: bool,
    pub tol_verify: f64,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

fn sorted_unique<T: PartialOrd + Copy>(mut v: Vec<T>) -> Vec<T> {
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    v.dedup();
    v
}

impl RunConfig {
    pub fn from_flags(command: CommandKind, f: &Flags) -> Result<Self> {
        let (sigma_default, t0, t1, steps) = command.defaults();
        let sigma0 = f.sigma0.clone().unwrap_or_else(|| sigma_default.to_vec());
        if sigma0.is_empty() || sigma0.iter().any(|s| !s.is_finite()) {
            return Err(invalid("--sigma0 needs at least one finite value"));
        }
        let sigma0 = sorted_unique(sigma0);
        let levels = sorted_unique(f.n.clone().unwrap_or_else(|| vec![0]));
        if levels.is_empty() {
            return Err(invalid("--n needs at least one level"));
        }
        if let Some(&n) = levels.iter().find(|&&n| n > MAX_HERMITE_ORDER) {
            return Err(invalid(format!("--n {n} exceeds {MAX_HERMITE_ORDER}")));
        }
        let params = SuperconductorParams::new(sigma0[0], f.rate, f.eps0, f.c, f.lambda_l, f.hbar)?;
        for &s in &sigma0 {
            params.with_sigma0(s)?;
        }

        let time = TimeWindow {
            t0: f.t0.unwrap_or(t0),
            t1: f.t1.unwrap_or(t1),
            steps: f.steps.unwrap_or(steps),
        };
        if !(time.t0 >= 0.0 && time.t1 > time.t0 && time.t1.is_finite()) {
            return Err(invalid(format!("need 0 <= t0 < t1, got t0 = {}, t1 = {}", time.t0, time.t1)));
        }
        if time.steps < 2 {
            return Err(invalid("--steps must be at least 2"));
        }
        let charge = ChargeGrid {
            qmin: f.qmin.unwrap_or(-8.0),
            qmax: f.qmax.unwrap_or(8.0),
            points: f.qpoints.unwrap_or(1601),
        };
        if !(charge.qmin < charge.qmax && charge.qmin.is_finite() && charge.qmax.is_finite()) {
            return Err(invalid(format!("need qmin < qmax, got {} and {}", charge.qmin, charge.qmax)));
        }
        if charge.points < 2 {
            return Err(invalid("--qpoints must be at least 2"));
        }
        if !(f.tol_verify > 0.0 && f.tol_verify < 1.0) {
            return Err(invalid("--tol-verify must lie in (0, 1)"));
        }
        let solver = match (f.model, f.solver) {
            (ModelArg::Constant, Some(SolverArg::Analytic)) => {
                return Err(invalid("the analytic solver exists only for the hyperbolic model"))
            }
            (ModelArg::Constant, _) => SolverArg::Numeric,
            (ModelArg::Hyperbolic, s) => s.unwrap_or(SolverArg::Analytic),
        };
        Ok(Self {
            command,
            params,
            model: f.model,
            solver,
            sigma0,
            levels,
            time,
            charge,
            format: f.format,
            out: f.out.clone(),
            seed_from_analytic: f.seed_from_analytic,
            tol_verify: f.tol_verify,
        })
    }

    fn params_for(&self, sigma0: f64) -> Result<SuperconductorParams> {
        self.params.with_sigma0(sigma0)
    }

    fn model_for(&self, params: &SuperconductorParams) -> ConductivityModel {
        match self.model {
            ModelArg::Hyperbolic => ConductivityModel::hyperbolic(params),
            ModelArg::Constant => ConductivityModel::constant(params.sigma0),
        }
    }

    /// ρ(t) source for one sweep entry, covering the whole time window.
    fn trajectory(
        &self,
        params: &SuperconductorParams,
        model: &ConductivityModel,
    ) -> Result<Box<dyn PinneyTrajectory>> {
        match self.solver {
            SolverArg::Analytic => Ok(Box::new(AnalyticPinney { params: *params })),
            SolverArg::Numeric => {
                let (rho0, rho_dot0) = if self.seed_from_analytic {
                    let s = rho_analytic(params, 0.0)?;
                    (s.rho, s.rho_dot)
                } else {
                    let w2 = omega_sq(params, model, 0.0);
                    if !(w2 > 0.0) {
                        return Err(invalid(format!(
                            "sigma0 = {}: omega^2(0) = {w2} has no equilibrium seed; pass --seed-from-analytic",
                            params.sigma0
                        )));
                    }
                    (w2.powf(-0.25), 0.0)
                };
                let traj = NumericPinney::integrate(params, model, rho0, rho_dot0, self.time.t1, &Dopri5::default())?;
                Ok(Box::new(traj))
            }
        }
    }

    fn base_table(&self, columns: &[&'static str]) -> Table {
        let mut t = Table::new(columns);
        t.meta("tdq", env!("CARGO_PKG_VERSION"));
        t.meta("command", self.command.name());
        let p = &self.params;
        t.meta(
            "params",
            format!("A={} eps0={} c={} lambdaL={} hbar={}", p.rate, p.eps0, p.c, p.lambda_l, p.hbar),
        );
        let model = match self.model {
            ModelArg::Hyperbolic => "hyperbolic",
            ModelArg::Constant => "constant",
        };
        let solver = match self.solver {
            SolverArg::Analytic => "analytic",
            SolverArg::Numeric if self.seed_from_analytic => "numeric(seed=analytic)",
            SolverArg::Numeric => "numeric(seed=equilibrium)",
        };
        t.meta("model", format!("{model} solver={solver}"));
        t
    }

    /// Snapshots in (σ₀, n, t) order, as (σ₀, snapshot).
    fn snapshots(&self) -> Result<Vec<(f64, QuantumSnapshot)>> {
        let times = self.time.grid();
        let mut out = Vec::with_capacity(self.sigma0.len() * self.levels.len() * times.len());
        for &s0 in &self.sigma0 {
            let params = self.params_for(s0)?;
            let model = self.model_for(&params);
            let traj = self.trajectory(&params, &model)?;
            let states = times.iter().map(|&t| traj.state(t)).collect::<Result<Vec<_>>>()?;
            for &n in &self.levels {
                for st in &states {
                    out.push((s0, QuantumSnapshot::assemble(&params, &model, n, st)?));
                }
            }
        }
        Ok(out)
    }
}

pub fn cmd_rho(cfg: &RunConfig) -> Result<Table> {
    let mut table = cfg.base_table(&["t", "sigma0", "rho", "rho_dot", "L", "omega_sq"]);
    let times = cfg.time.grid();
    for &s0 in &cfg.sigma0 {
        let params = cfg.params_for(s0)?;
        let model = cfg.model_for(&params);
        let traj = cfg.trajectory(&params, &model)?;
        for &t in &times {
            let st = traj.state(t)?;
            table.push(vec![
                t.into(),
                s0.into(),
                st.rho.into(),
                st.rho_dot.into(),
                model.l_factor(params.eps0, t).into(),
                omega_sq(&params, &model, t).into(),
            ]);
        }
    }
    Ok(table)
}

pub fn cmd_observables(cfg: &RunConfig) -> Result<Table> {
    let mut table = cfg.base_table(&[
        "t",
        "sigma0",
        "n",
        "q2",
        "phi2",
        "dq_dphi",
        "energy",
        "energy_per_level",
    ]);
    for (s0, snap) in cfg.snapshots()? {
        let m = moments(&snap);
        let e = energy_mean(&snap);
        table.push(vec![
            snap.t.into(),
            s0.into(),
            snap.n.into(),
            m.q2.into(),
            m.phi2.into(),
            uncertainty_product(&snap).into(),
            e.into(),
            (e / snap.level()).into(),
        ]);
    }
    Ok(table)
}

/// Density table plus one warning per profile whose trapezoid norm is off.
pub fn cmd_density(cfg: &RunConfig) -> Result<(Table, Vec<String>)> {
    let mut table = cfg.base_table(&["t", "sigma0", "n", "q", "P"]);
    let q = cfg.charge.grid();
    let mut warnings = Vec::new();
    for (s0, snap) in cfg.snapshots()? {
        let prof = density_profile(&snap, &q)?;
        let norm = prof.norm();
        if (norm - 1.0).abs() > DENSITY_NORM_TOL {
            warnings.push(format!(
                "sigma0 = {s0}, n = {}, t = {}: trapezoid norm {norm} deviates from 1 by more than {DENSITY_NORM_TOL}; widen --qmin/--qmax or add --qpoints",
                snap.n, snap.t
            ));
        }
        for (&qi, &p) in prof.q_grid.iter().zip(&prof.p_values) {
            table.push(vec![snap.t.into(), s0.into(), snap.n.into(), qi.into(), p.into()]);
        }
    }
    Ok((table, warnings))
}

pub fn cmd_info(cfg: &RunConfig) -> Result<Table> {
    let mut table = cfg.base_table(&[
        "t", "sigma0", "n", "S_closed", "S_quad", "H", "D_closed", "D_quad", "C",
    ]);
    for (s0, snap) in cfg.snapshots()? {
        let c = complexity(&snap)?;
        table.push(vec![
            snap.t.into(),
            s0.into(),
            snap.n.into(),
            c.closed_form.entropy_s.into(),
            c.quadrature.entropy_s.into(),
            c.quadrature.h.into(),
            c.closed_form.disequilibrium_d.into(),
            c.quadrature.disequilibrium_d.into(),
            c.value().into(),
        ]);
    }
    Ok(table)
}

/// Runs the check suite; the table lists every check and the bool is overall success.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(Table, Vec<Check>)> {
    let checks = run_suite(cfg.tol_verify)?;
    let mut table = cfg.base_table(&["check", "status", "measured", "limit"]);
    table.meta("tol_verify", format_g17(cfg.tol_verify));
    for c in &checks {
        table.push(vec![
            c.name.as_str().into(),
            c.status().into(),
            c.measured.into(),
            c.limit.into(),
        ]);
    }
    Ok((table, checks))
}

fn emit(cfg: &RunConfig, table: &Table) -> std::io::Result<()> {
    let text = match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match &cfg.out {
        Some(path) if path.as_os_str() != "-" => std::fs::write(path, text),
        _ => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let (kind, flags) = match &cli.command {
        Command::Rho(f) => (CommandKind::Rho, f),
        Command::Observables(f) => (CommandKind::Observables, f),
        Command::Density(f) => (CommandKind::Density, f),
        Command::Info(f) => (CommandKind::Info, f),
        Command::Verify(f) => (CommandKind::Verify, f),
    };
    let cfg = match RunConfig::from_flags(kind, flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("tdq: {e}");
            return EXIT_INVALID;
        }
    };
    let mut code = EXIT_OK;
    let table = match kind {
        CommandKind::Rho => cmd_rho(&cfg),
        CommandKind::Observables => cmd_observables(&cfg),
        CommandKind::Density => cmd_density(&cfg).map(|(t, warnings)| {
            for w in warnings {
                eprintln!("tdq: warning: {w}");
            }
            t
        }),
        CommandKind::Info => cmd_info(&cfg),
        CommandKind::Verify => cmd_verify(&cfg).map(|(t, checks)| {
            let failed: Vec<&Check> = checks.iter().filter(|c| c.failed()).collect();
            for c in &checks {
                eprintln!("{}", c.report_line());
            }
            if failed.is_empty() {
                eprintln!("tdq: all {} checks passed", checks.len());
            } else {
                let names: Vec<&str> = failed.iter().map(|c| c.name.as_str()).collect();
                eprintln!("tdq: {} check(s) failed: {}", failed.len(), names.join(", "));
                code = EXIT_VERIFY_FAILED;
            }
            t
        }),
    };
    match table {
        Ok(t) => {
            if let Err(e) = emit(&cfg, &t) {
                eprintln!("tdq: cannot write output: {e}");
                return EXIT_INVALID;
            }
            code
        }
        Err(e) => {
            eprintln!("tdq: {e}");
            EXIT_INVALID
        }
    }
}

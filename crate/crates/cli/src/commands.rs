use std::io::Write;
use std::path::{Path, PathBuf};

use holodd::dd::{bare_evolution_error, decoupling_order_probe, fit_order, grid, run_sweep, sweep_csv, SweepSpec};
use holodd::dfs::LogicalBasis;
use holodd::gates::{synthesize, verify_holonomy, GateSchedule};
use holodd::pauli::DecouplingGroup;

use crate::config::{BathArg, RunConfig};
use crate::CliError;

const GATE_TOL: f64 = 1e-9;
const LEAKAGE_TOL: f64 = 1e-10;
const HOLONOMY_TOL: f64 = 1e-9;
const EXACT_TOL: f64 = 1e-10;
const MIN_ORDER: f64 = 1.5;

fn config_err(e: holodd::Error) -> CliError {
    CliError::Config(e.to_string())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_file(p, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(format!("stdout: {e}"))),
    }
}

struct Table {
    rows: Vec<(String, String, bool)>,
}

impl Table {
    fn check(&mut self, name: &str, value: String, ok: bool) {
        self.rows.push((name.to_string(), value, ok));
    }

    fn render(&self) -> String {
        let w = self.rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let mut s = String::new();
        for (name, value, ok) in &self.rows {
            s.push_str(&format!("{name:<w$}  {value:<24}  {}\n", if *ok { "PASS" } else { "FAIL" }));
        }
        s
    }

    fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.2)
    }
}

pub struct VerifyOptions {
    pub schedule: Option<PathBuf>,
    pub emit_schedule: Option<PathBuf>,
    pub dump_basis: bool,
}

pub fn verify(cfg: &RunConfig, opts: &VerifyOptions) -> Result<bool, CliError> {
    let schedule = match &opts.schedule {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            GateSchedule::from_json(&text).map_err(config_err)?
        }
        None => cfg.schedule()?,
    };
    if let Some(p) = &opts.emit_schedule {
        write_file(p, &schedule.to_json())?;
    }
    let n = schedule.n_qubits();
    let basis = LogicalBasis::<f64>::new(n).map_err(config_err)?;
    let mut report = String::new();
    if opts.dump_basis {
        report.push_str(&basis.dump());
        report.push('\n');
    }

    let mut t = Table { rows: Vec::new() };
    let syn = synthesize(&schedule, &basis).map_err(config_err)?;
    if let Some(f) = syn.fidelity {
        t.check("gate fidelity", format!("1 - {:.2e}", 1.0 - f), f >= 1.0 - GATE_TOL);
    }
    t.check("leakage", format!("{:.2e}", syn.leakage), syn.leakage <= LEAKAGE_TOL);
    let group = DecouplingGroup::new(n).map_err(config_err)?;
    let commutes = schedule.commutes_with_group(&group).map_err(config_err)?;
    t.check("commutant", commutes.to_string(), commutes);
    let h = verify_holonomy(&schedule, &basis, cfg.samples).map_err(config_err)?;
    t.check("cyclic defect", format!("{:.2e}", h.cyclic_defect), h.cyclic_defect <= HOLONOMY_TOL);
    t.check(
        "parallel transport",
        format!("{:.2e}", h.max_parallel_transport_violation),
        h.max_parallel_transport_violation <= HOLONOMY_TOL,
    );
    if let (holodd::gates::GateKind::U3 { .. }, Some(d)) = (schedule.kind(), h.swap_defect) {
        t.check("subspace swap", format!("{d:.2e}"), d <= HOLONOMY_TOL);
    }

    report.push_str(&format!("gate {} on n = {n}\n", schedule.kind().name()));
    report.push_str(&t.render());
    let pass = t.all_pass();
    report.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    emit(None, &report)?;
    Ok(pass)
}

pub fn sweep(cfg: &RunConfig) -> Result<bool, CliError> {
    let schedule = cfg.schedule()?;
    let spec = SweepSpec {
        bath: cfg.bath_model(cfg.n, BathArg::None)?,
        schedule,
        plan: cfg.plan(),
        flip_values: grid(cfg.eps_range.0, cfg.eps_range.1, cfg.step).map_err(config_err)?,
        detuning_values: grid(cfg.delta_range.0, cfg.delta_range.1, cfg.step).map_err(config_err)?,
        theta_p: std::f64::consts::PI,
        seed: cfg.seed,
    };
    let rows = run_sweep(&spec).map_err(config_err)?;
    emit(cfg.out.as_deref(), &sweep_csv(&spec, &rows))?;
    Ok(true)
}

pub fn decouple(cfg: &RunConfig) -> Result<bool, CliError> {
    let bath = cfg.bath_model(cfg.n, BathArg::Scalar)?;
    let points = decoupling_order_probe(&bath, &cfg.dt_ladder, cfg.total_time).map_err(config_err)?;
    let bare = bare_evolution_error(&bath, cfg.total_time).map_err(config_err)?;
    let mut s = format!("total time {}, bare error {bare:.6e}\n", cfg.total_time);
    s.push_str("dt,dd_error,bare_error\n");
    for (dt, e) in &points {
        s.push_str(&format!("{dt},{e:.6e},{bare:.6e}\n"));
    }
    let exact = points.iter().all(|&(_, e)| e <= EXACT_TOL);
    let pass = if exact {
        s.push_str("order: exact (all errors below 1e-10)\n");
        true
    } else {
        match fit_order(&points) {
            Some(p) => {
                s.push_str(&format!("order: {p:.4}\n"));
                p >= MIN_ORDER
            }
            None => {
                s.push_str("order: undetermined\n");
                false
            }
        }
    };
    let beats = points.iter().all(|&(_, e)| e <= bare);
    s.push_str(&format!("dd beats bare at every dt: {beats}\n"));
    s.push_str(if pass { "PASS\n" } else { "FAIL\n" });
    emit(cfg.out.as_deref(), &s)?;
    Ok(pass)
}

//! Command-line interface.
//!
//! Exit codes: 0 on success, 1 when verification fails or any integral in
//! the output did not converge, 2 on usage or I/O errors.

use clap::{Parser, Subcommand, ValueEnum};
use nlqed::moments::{self, Regime};
use nlqed::quadrature::QuadratureConfig;
use nlqed::renorm::{self, Coupling};
use nlqed::report::{self, ReportOptions};
use nlqed::{gauge, verify};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "nlqed", version, about = "Charge renormalization and g-2 in bilocal-field QED")]
struct Cli {
    /// Inverse fine-structure constant; defaults to 136 for the
    /// renormalization flow and 137.0359 for moment predictions.
    #[arg(long, global = true)]
    alpha_inv: Option<f64>,

    /// Relative quadrature tolerance (default 1e-10).
    #[arg(long, global = true)]
    rel_tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RegimeArg {
    Auto,
    Exact,
    Small,
    Large,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Regime {
        match r {
            RegimeArg::Auto => Regime::Auto,
            RegimeArg::Exact => Regime::Exact,
            RegimeArg::Small => Regime::Small,
            RegimeArg::Large => Regime::Large,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full result document: Z-ratios, gauge scan, lepton moments, g-2.
    Report {
        /// Fermion mass for the Z-ratio chain (default 5e-4).
        #[arg(long)]
        zratio_mass: Option<f64>,
        #[arg(long)]
        gauge_min: Option<f64>,
        #[arg(long)]
        gauge_max: Option<f64>,
        #[arg(long)]
        gauge_points: Option<usize>,
    },
    /// Run every acceptance check and report pass/fail per line.
    Verify,
    /// Z-ratios and renormalized coupling at one fermion mass.
    Zratio {
        #[arg(long)]
        mass: f64,
    },
    /// Scan the gauge condition G(m) = pi/2 for roots.
    Gauge {
        #[arg(long, default_value_t = report::DEFAULT_GAUGE_M_MIN)]
        min: f64,
        #[arg(long, default_value_t = report::DEFAULT_GAUGE_M_MAX)]
        max: f64,
        #[arg(long, default_value_t = report::DEFAULT_GAUGE_POINTS)]
        points: usize,
    },
    /// Anomalous magnetic moment at one mass.
    Moment {
        #[arg(long)]
        mass: f64,
        #[arg(long, value_enum, default_value_t = RegimeArg::Auto)]
        regime: RegimeArg,
    },
    /// Moment table for the built-in electron, muon, and tau masses.
    Leptons,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(CliError::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

enum CliError {
    Usage(String),
    Io(std::io::Error),
    Compute(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if let Some(rel_tol) = cli.rel_tol {
        if !rel_tol.is_finite() || rel_tol <= 0.0 {
            return Err(CliError::Usage(format!("--rel-tol must be positive, got {rel_tol}")));
        }
    }
    if cli.format == Format::Csv && !matches!(cli.command, Command::Gauge { .. }) {
        return Err(CliError::Usage(
            "csv output is only defined for the gauge command".to_string(),
        ));
    }

    let cfg = match cli.rel_tol {
        Some(t) => QuadratureConfig::with_rel_tol(t),
        None => QuadratureConfig::default(),
    };
    let predictions_coupling = coupling_or(cli.alpha_inv, Coupling::EXPERIMENTAL)?;

    match cli.command {
        Command::Report { zratio_mass, gauge_min, gauge_max, gauge_points } => {
            if let Some(m) = zratio_mass {
                require_positive("--zratio-mass", m)?;
            }
            let opts = ReportOptions {
                alpha_inv: cli.alpha_inv,
                rel_tol: cli.rel_tol,
                zratio_mass,
                gauge_m_min: gauge_min,
                gauge_m_max: gauge_max,
                gauge_points,
            };
            let doc = report::run_report(&opts).map_err(compute)?;
            let rendered = match cli.format {
                Format::Json => report::to_json(&doc).map_err(compute)?,
                _ => report::to_text(&doc),
            };
            emit(&cli.out, &rendered)?;
            Ok(exit_flag(doc.all_converged()))
        }
        Command::Verify => {
            let outcomes = verify::run_acceptance();
            let rendered = match cli.format {
                Format::Json => report::to_json(&outcomes).map_err(compute)?,
                _ => {
                    let mut s = String::new();
                    for o in &outcomes {
                        s.push_str(&o.to_string());
                        s.push('\n');
                    }
                    let passed = outcomes.iter().filter(|o| o.passed).count();
                    s.push_str(&format!("{passed}/{} checks passed\n", outcomes.len()));
                    s
                }
            };
            emit(&cli.out, &rendered)?;
            Ok(exit_flag(outcomes.iter().all(|o| o.passed)))
        }
        Command::Zratio { mass } => {
            require_positive("--mass", mass)?;
            let coupling = coupling_or(cli.alpha_inv, Coupling::BARE)?;
            let z = renorm::renormalized_alpha_inv(mass, coupling, &cfg).map_err(compute)?;
            let rendered = match cli.format {
                Format::Json => report::to_json(&z).map_err(compute)?,
                _ => format!(
                    "alpha_inv {}\nmass {}\nZ1/Z2 {:.12}\nZ4/Z3 {:.12}\n\
                     combined first order {:.12}\nrenormalized alpha_inv {:.6}\n\
                     J1 {:.12e} (err {:.2e}, {} evals, converged: {})\n",
                    z.alpha_inv,
                    z.mass,
                    z.z1_over_z2,
                    z.z4_over_z3,
                    z.combined_first_order,
                    z.renormalized_alpha_inv,
                    z.j1.value,
                    z.j1.error_estimate,
                    z.j1.evaluations,
                    z.j1.converged
                ),
            };
            emit(&cli.out, &rendered)?;
            Ok(exit_flag(z.j1.converged))
        }
        Command::Gauge { min, max, points } => {
            let scan = gauge::certify_unique_root(min, max, points).map_err(compute_usage)?;
            let rendered = match cli.format {
                Format::Csv => report::gauge_csv(&scan),
                Format::Json => report::to_json(&scan).map_err(compute)?,
                Format::Text => format!(
                    "gauge scan on [{min}, {max}], {points} log-spaced points\n\
                     max G(m) {:.12}\nbrackets {}\nunique root at m = 0: {}\n",
                    scan.max_value_on_grid,
                    scan.brackets.len(),
                    scan.unique_root_at_zero
                ),
            };
            emit(&cli.out, &rendered)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Moment { mass, regime } => {
            require_positive("--mass", mass)?;
            let m = moments::lepton_moment(mass, predictions_coupling, regime.into(), &cfg)
                .map_err(compute)?;
            let rendered = match cli.format {
                Format::Json => report::to_json(&m).map_err(compute)?,
                _ => render_moment(&m),
            };
            emit(&cli.out, &rendered)?;
            let converged = m.exact.is_none_or(|q| q.converged);
            Ok(exit_flag(converged))
        }
        Command::Leptons => {
            let rows = moments::leptons()
                .into_iter()
                .map(|l| {
                    moments::lepton_moment(l.mass, predictions_coupling, Regime::Auto, &cfg)
                        .map(|moment| report::LeptonMoment { name: l.name, moment })
                })
                .collect::<Result<Vec<_>, _>>()
                .map_err(compute)?;
            let rendered = match cli.format {
                Format::Json => report::to_json(&rows).map_err(compute)?,
                _ => {
                    let mut s = format!(
                        "lepton moments at alpha_inv = {}\n",
                        predictions_coupling.alpha_inv()
                    );
                    for r in &rows {
                        s.push_str(&format!("{:<9} ", r.name));
                        s.push_str(&render_moment(&r.moment));
                    }
                    s
                }
            };
            emit(&cli.out, &rendered)?;
            let converged = rows.iter().all(|r| r.moment.exact.is_none_or(|q| q.converged));
            Ok(exit_flag(converged))
        }
    }
}

fn render_moment(m: &moments::MomentResult) -> String {
    let mut s = format!("mass {} regime {} schwinger {:.10e}", m.mass, m.regime_used, m.schwinger_term);
    if let Some(q) = m.exact {
        s.push_str(&format!(
            " exact {:.10e} (err {:.2e}, converged: {})",
            q.value, q.error_estimate, q.converged
        ));
    }
    if let Some(v) = m.small_m {
        s.push_str(&format!(" small-m {v:.10e}"));
    }
    if let Some(v) = m.large_m {
        s.push_str(&format!(" large-m {v:.10e}"));
    }
    if m.extrapolated {
        s.push_str(" [extrapolated]");
    }
    s.push('\n');
    s
}

fn coupling_or(alpha_inv: Option<f64>, default: Coupling) -> Result<Coupling, CliError> {
    match alpha_inv {
        Some(v) => Coupling::from_alpha_inv(v)
            .map_err(|e| CliError::Usage(e.to_string())),
        None => Ok(default),
    }
}

fn require_positive(flag: &str, value: f64) -> Result<(), CliError> {
    if !value.is_finite() || value <= 0.0 {
        return Err(CliError::Usage(format!("{flag} must be positive and finite, got {value}")));
    }
    Ok(())
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

fn compute_usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn exit_flag(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn emit(out: &Option<PathBuf>, rendered: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, rendered).map_err(CliError::from),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spiked_cli::report::{write_comparisons, write_energy, EnergyReport};
use spiked_cli::reproduce::reproduce;
use spiked_cli::wavefunction::{figure, wavefunction, DEFAULT_POINTS};
use spiked_cli::{open_output, CliError, Format, TableId};
use spiked_core::{
    find_eigenvalue, solve, Channel, OscillatorParams, ShootingSettings, SolveRequest,
};

#[derive(Parser)]
#[command(
    name = "spiked",
    version,
    about = "Spectra of the spiked harmonic oscillator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rayleigh-Ritz eigenvalue in a D-term basis
    Solve {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "D", default_value_t = 30)]
        basis: usize,
        #[arg(long, default_value_t = 0)]
        state: usize,
        /// Minimize the eigenvalue over the basis shift A*
        #[arg(long)]
        optimize_shift: bool,
        #[arg(long, requires = "optimize_shift")]
        shift_lo: Option<f64>,
        #[arg(long, requires = "optimize_shift")]
        shift_hi: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Eigenvalue by direct integration; --state is the node count
    Oracle {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        state: usize,
        /// RK4 step in ln x
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Recompute a reference table and compare cell by cell
    Reproduce {
        #[arg(long)]
        table: TableId,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample an eigenstate on a uniform grid (csv unless --format json)
    Wavefunction {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "D", default_value_t = 30)]
        basis: usize,
        #[arg(long, default_value_t = 0)]
        state: usize,
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        /// Emit the nine N = 2..10 states of the third table instead
        #[arg(long)]
        figure: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long = "A", default_value_t = 0.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long = "B", default_value_t = 1.0, allow_negative_numbers = true)]
    b: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, default_value_t = 2.5)]
    alpha: f64,
    /// Spatial dimension N; omit for the half-line problem
    #[arg(long)]
    dim: Option<u32>,
    /// Angular momentum (with --dim)
    #[arg(long, default_value_t = 0, requires = "dim")]
    ell: u32,
}

impl ParamArgs {
    fn params(&self) -> Result<OscillatorParams, CliError> {
        let channel = match self.dim {
            Some(dim) => Channel::Dimensional { dim, ell: self.ell },
            None => Channel::Radial,
        };
        Ok(OscillatorParams::new(
            self.a,
            self.b,
            self.lambda,
            self.alpha,
            channel,
        )?)
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value = "text")]
    format: Format,
    /// Output file; relative paths land in $SPIKED_OUT_DIR when set
    #[arg(long)]
    out: Option<PathBuf>,
}

/// `Ok(true)` when every comparison passed.
fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Solve {
            params,
            basis,
            state,
            optimize_shift,
            shift_lo,
            shift_hi,
            output,
        } => {
            let p = params.params()?;
            let mut req = SolveRequest::new(p, basis, state);
            if optimize_shift {
                let bounds = match (shift_lo, shift_hi) {
                    (None, None) => None,
                    (lo, hi) => {
                        let (dlo, dhi) = spiked_core::variational::default_shift_bounds(p.lambda);
                        Some((lo.unwrap_or(dlo), hi.unwrap_or(dhi)))
                    }
                };
                req = req.optimized(bounds);
            }
            let r = solve(&req)?;
            let report = EnergyReport {
                method: "variational",
                dim: Some(basis),
                state,
                energy: r.energy,
                shift: r.shift,
                shift_on_boundary: r.shift_on_boundary,
            };
            let mut out = open_output(output.out.as_deref())?;
            write_energy(&mut out, &report, output.format)?;
            out.flush()?;
            Ok(true)
        }
        Command::Oracle {
            params,
            state,
            step,
            output,
        } => {
            let p = params.params()?;
            let settings = ShootingSettings::default().with_step(step);
            let e = find_eigenvalue(&p, state, &settings)?;
            let report = EnergyReport {
                method: "shooting",
                dim: None,
                state,
                energy: e,
                shift: None,
                shift_on_boundary: false,
            };
            let mut out = open_output(output.out.as_deref())?;
            write_energy(&mut out, &report, output.format)?;
            out.flush()?;
            Ok(true)
        }
        Command::Reproduce { table, output } => {
            let rows = reproduce(table)?;
            let mut out = open_output(output.out.as_deref())?;
            write_comparisons(&mut out, &rows, output.format)?;
            out.flush()?;
            Ok(rows.iter().all(|r| !r.status.is_failure()))
        }
        Command::Wavefunction {
            params,
            basis,
            state,
            points,
            figure: fig,
            output,
        } => {
            if points == 0 {
                return Err(CliError::Usage("--points must be positive".into()));
            }
            let table = if fig {
                figure(points)?
            } else {
                wavefunction(&params.params()?, basis, state, points)?
            };
            let mut out = open_output(output.out.as_deref())?;
            match output.format {
                Format::Json => table.write_json(&mut out)?,
                Format::Text | Format::Csv => table.write_csv(&mut out)?,
            }
            out.flush()?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

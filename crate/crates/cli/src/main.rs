use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};

use gaussbm::neumann::DEFAULT_DEGREE;
use gaussbm::variations::DEFAULT_FD_STEP;
use gaussbm::WeightMode;
use gaussbm_cli::single::{self, Record};
use gaussbm_cli::{run_suite, Overrides, SuiteConfig};

#[derive(Parser)]
#[command(name = "gaussbm", version, about = "Numerical checks of Gaussian Brunn-Minkowski inequalities in the plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Weight {
    Gaussian,
    Lebesgue,
}

impl From<Weight> for WeightMode {
    fn from(w: Weight) -> Self {
        match w {
            Weight::Gaussian => WeightMode::Gaussian,
            Weight::Lebesgue => WeightMode::Lebesgue,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every suite and write report.json, report.csv and SVG plots.
    Suite {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Boundary grid size for generated bodies.
        #[arg(long)]
        grid: Option<usize>,
        /// Replace every tolerance in the config.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Terms and gap of the boundary Poincare inequality.
    Poincare {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    /// First and second variations, analytic and by finite differences.
    Variations {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long, value_enum, default_value = "gaussian")]
        mode: Weight,
        #[arg(long, default_value_t = DEFAULT_FD_STEP)]
        step: f64,
    },
    /// Concavity profile of Phi^{-1}(gamma((1-t)A + tB)).
    Ehrhard {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Number of profile points.
        #[arg(long, default_value_t = 65)]
        grid: usize,
    },
    /// Conditioned Gaussian counterexample on (-inf, b].
    Cd1 {
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value_t = 65)]
        grid: usize,
    },
    /// Solve the weighted Neumann problem with flux f.
    Neumann {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long, value_enum, default_value = "gaussian")]
        weight: Weight,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
    },
    /// Reilly identity terms for a polynomial u.
    Reilly {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long, value_enum, default_value = "gaussian")]
        weight: Weight,
    },
    /// Neumann-to-Dirichlet probe on a body, or on the half-line (-inf, t].
    D2n {
        #[arg(long, conflicts_with = "t")]
        body: Option<PathBuf>,
        /// Defaults to f = 1.
        #[arg(long, requires = "body")]
        f: Option<PathBuf>,
        #[arg(long, allow_negative_numbers = true)]
        t: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_DEGREE)]
        degree: usize,
    },
    /// Dual inequality gap, minimized over the constant C.
    Dual {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        f: PathBuf,
        /// Extra values of C to report.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-1,0,1")]
        c: Vec<f64>,
    },
    /// Isoperimetric slack, Ledoux estimates and mean-curvature checks.
    Iso {
        #[arg(long)]
        body: PathBuf,
    },
}

fn print(record: Record) -> Result<ExitCode> {
    println!("{}", serde_json::to_string_pretty(&record)?);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Suite {
            config,
            seed,
            out,
            grid,
            tol,
        } => {
            let config = SuiteConfig::load(config.as_deref(), &Overrides { seed, out, grid, tol })?;
            let report = run_suite(&config)?;
            let s = &report.summary;
            println!(
                "{} checks: {} pass, {} fail, {} report-only; report in {}",
                s.total,
                s.pass,
                s.fail,
                s.report_only,
                config.out.display()
            );
            for c in report.failures() {
                let tol = c.tolerance.map(|t| format!(", tolerance {t:e}")).unwrap_or_default();
                println!("FAIL {} ({}): {} = {:e}{tol}", c.id, c.name, c.metric.as_str(), c.value);
            }
            Ok(if s.fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Poincare { body, f } => print(single::poincare(&body, &f)?),
        Command::Variations { body, f, mode, step } => print(single::variation(&body, &f, mode.into(), step)?),
        Command::Ehrhard { a, b, grid } => print(single::ehrhard(&a, &b, grid)?),
        Command::Cd1 { b, grid } => print(single::cd1(b, grid)?),
        Command::Neumann { body, f, weight, degree } => print(single::neumann(&body, &f, weight.into(), degree)?),
        Command::Reilly { body, u, weight } => print(single::reilly(&body, &u, weight.into())?),
        Command::D2n { body, f, t, degree } => print(single::d2n(body.as_deref(), f.as_deref(), t, degree)?),
        Command::Dual { body, f, c } => print(single::dual(&body, &f, &c)?),
        Command::Iso { body } => print(single::iso(&body)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ttbar_qinfo::scan::{
    evaluate_point, figure_data, load_config, run_scan, write_csv, write_figure, ConfigError,
    FigureId, ScanConfig, ScanError,
};

/// Spin-correlation quantum-information scans for top-quark pairs.
#[derive(Parser, Debug)]
#[command(name = "ttbar-scan", version)]
struct Cli {
    /// TOML configuration file; defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the full grid, write `scan.csv` and `summary.txt` to the output directory.
    Scan,
    /// Evaluate one point and print `key=value` lines.
    Point {
        /// Invariant mass in GeV.
        #[arg(long)]
        mass: f64,
        /// Production angle in radians.
        #[arg(long)]
        theta: f64,
        /// Gluon-fusion weight in [0, 1].
        #[arg(long)]
        wgg: f64,
    },
    /// Write the data behind one figure panel as `fig_<id>.csv`.
    Figure {
        #[arg(long)]
        id: String,
    },
}

enum Outcome {
    Clean,
    Violations,
}

fn load(path: Option<&PathBuf>) -> Result<ScanConfig, ConfigError> {
    match path {
        Some(p) => load_config(&std::fs::read_to_string(p)?),
        None => Ok(ScanConfig::default()),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, ScanError> {
    let config = load(cli.config.as_ref())?;
    match &cli.command {
        Command::Scan => {
            let output = run_scan(&config)?;
            std::fs::create_dir_all(&config.output_dir)?;
            write_csv(&output.records, &config.output_dir.join("scan.csv"))?;
            let summary = output.summary.to_string();
            std::fs::write(config.output_dir.join("summary.txt"), &summary)?;
            print!("{summary}");
            Ok(if output.summary.has_violations() {
                Outcome::Violations
            } else {
                Outcome::Clean
            })
        }
        Command::Point { mass, theta, wgg } => {
            let r = evaluate_point(
                *mass,
                *theta,
                *wgg,
                config.m_top,
                &config.axes,
                &config.tolerances,
            )?;
            let opt = |x: Option<f64>| x.map_or("nan".to_string(), |v| v.to_string());
            println!("m_ttbar={}", r.m_ttbar);
            println!("theta={}", r.theta);
            println!("w_gg={}", r.w_gg);
            println!("beta={}", r.beta);
            for (name, value) in r.report.fields() {
                println!("{name}={value}");
            }
            println!("qmi_closed={}", opt(r.qmi_closed));
            println!("rec_closed={}", opt(r.rec_closed));
            println!("closed_form_status={}", r.closed_form_status);
            println!("min_eigenvalue={}", r.min_eigenvalue);
            let violations = r.violations(&config.tolerances);
            if violations.is_empty() {
                Ok(Outcome::Clean)
            } else {
                eprintln!("audit violation: {}", violations.join(","));
                Ok(Outcome::Violations)
            }
        }
        Command::Figure { id } => {
            let id: FigureId = id.parse()?;
            let data = figure_data(&config, id)?;
            let path = write_figure(&data, &config.output_dir)?;
            println!("{}", path.display());
            Ok(Outcome::Clean)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violations) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

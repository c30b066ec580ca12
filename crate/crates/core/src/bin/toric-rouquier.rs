use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use toric_rouquier::bondal_ruan::{br_stratification, frobenius_level_set, image_phi, phi_eval, ImageMethod, TorusPoint};
use toric_rouquier::fan::Fan;
use toric_rouquier::incidence::{cw_summary, CwPoset};
use toric_rouquier::linalg::parse_q_vec;
use toric_rouquier::report::{invalid_fan_error, run_report, ReportOptions};
use toric_rouquier::skeleton::{skeleton_member, skeleton_subset, CotangentPoint, Mode, ModePair, SubsetOptions};
use toric_rouquier::svg::emit_svg;
use toric_rouquier::{Error, Result};

#[derive(Parser)]
#[command(name = "toric-rouquier", version, about = "Exact toric combinatorics for generation-time bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a fan and print its diagnostics.
    Validate { fan: PathBuf },
    /// Print the Cox data (beta, beta dual, Ghat).
    Cox { fan: PathBuf },
    /// Evaluate the Bondal-Ruan map at a point such as 1/3,1/2.
    Phi {
        fan: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Image of the Bondal-Ruan map.
    ImagePhi {
        fan: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Chambers)]
        method: Method,
        #[arg(long)]
        lmax: Option<u64>,
    },
    /// Classes of the level-L Frobenius pushforward.
    Frobenius {
        fan: PathBuf,
        #[arg(long)]
        level: u64,
    },
    /// Bondal-Ruan stratification of the torus (d <= 3).
    Strata { fan: PathBuf },
    /// Full generation-time report.
    Report {
        fan: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Include wall-clock timing (output is then no longer reproducible).
        #[arg(long)]
        timing: bool,
        /// Use the Frobenius grid up to this level instead of chambers.
        #[arg(long)]
        lmax: Option<u64>,
    },
    /// Validate a CW face poset and run the incidence-algebra checks.
    Cw { file: PathBuf },
    #[command(subcommand)]
    Skeleton(SkeletonCommand),
}

#[derive(Subcommand)]
enum SkeletonCommand {
    /// Decide whether (x, xi) lies on the skeleton.
    Member {
        fan: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Variety)]
        mode: ModeArg,
    },
    /// Decide whether the skeleton of COARSE lies in that of FINE.
    Subset {
        coarse: PathBuf,
        fine: PathBuf,
        /// Mode for the coarse fan.
        #[arg(long, value_enum, default_value_t = ModeArg::Variety)]
        mode: ModeArg,
        /// Mode for the fine fan; defaults to --mode.
        #[arg(long, value_enum)]
        fine_mode: Option<ModeArg>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Chambers,
    Grid,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Variety,
    Stack,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Variety => Mode::Variety,
            ModeArg::Stack => Mode::Stack,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_fan(path: &Path) -> Result<Fan> {
    Fan::from_json(&read(path)?)
}

fn load_valid_fan(path: &Path) -> Result<Fan> {
    let fan = load_fan(path)?;
    let diag = fan.validate();
    if !diag.is_valid {
        return Err(invalid_fan_error(&diag));
    }
    Ok(fan)
}

fn emit(text: &str) {
    use std::io::Write;
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print<T: Serialize>(value: &T) {
    emit(&(serde_json::to_string_pretty(value).expect("serializable") + "\n"));
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { fan } => {
            let diag = load_fan(&fan)?.validate();
            print(&diag);
            return Ok(if diag.is_valid { ExitCode::SUCCESS } else { ExitCode::from(3) });
        }
        Command::Cox { fan } => print(&load_valid_fan(&fan)?.cox_data()),
        Command::Phi { fan, point } => {
            let cox = load_valid_fan(&fan)?.cox_data();
            let x = TorusPoint::parse(&point)?;
            let class = phi_eval(&cox, &x)?;
            print(&serde_json::json!({ "point": x.to_string(), "class": class }));
        }
        Command::ImagePhi { fan, method, lmax } => {
            let cox = load_valid_fan(&fan)?.cox_data();
            let method = match method {
                Method::Chambers => ImageMethod::Chambers,
                Method::Grid => ImageMethod::Grid { lmax },
            };
            print(&image_phi(&cox, method)?);
        }
        Command::Frobenius { fan, level } => {
            if level == 0 {
                return Err(Error::Parse("--level must be positive".into()));
            }
            let cox = load_valid_fan(&fan)?.cox_data();
            let classes: Vec<_> = frobenius_level_set(&cox, level).into_iter().collect();
            print(&serde_json::json!({ "level": level, "count": classes.len(), "classes": classes }));
        }
        Command::Strata { fan } => print(&br_stratification(&load_valid_fan(&fan)?.cox_data())?),
        Command::Report { fan, output, svg, jobs, timing, lmax } => {
            let fan = load_fan(&fan)?;
            let opts = ReportOptions { jobs, timing, grid_lmax: lmax, ..ReportOptions::default() };
            let report = match run_report(&fan, &opts) {
                Ok(r) => r,
                Err(e @ Error::InvalidFan(_)) => {
                    print(&fan.validate());
                    return Err(e);
                }
                Err(e) => return Err(e),
            };
            let json = report.to_json();
            match output {
                Some(path) => std::fs::write(path, json)?,
                None => emit(&json),
            }
            if let Some(path) = svg {
                emit_svg(&br_stratification(&fan.cox_data())?, &path)?;
            }
        }
        Command::Cw { file } => {
            let poset = CwPoset::from_json(&read(&file)?)?;
            let diag = poset.validate();
            if !diag.is_valid() {
                print(&diag);
                return Err(Error::InvalidCw(diag.violations));
            }
            print(&cw_summary(&poset)?);
        }
        Command::Skeleton(SkeletonCommand::Member { fan, x, xi, mode }) => {
            let fan = load_valid_fan(&fan)?;
            let p = CotangentPoint::new(parse_q_vec(&x)?, parse_q_vec(&xi)?);
            let member = skeleton_member(&fan, mode.into(), &p)?;
            print(&serde_json::json!({ "mode": Mode::from(mode), "point": p, "member": member }));
        }
        Command::Skeleton(SkeletonCommand::Subset { coarse, fine, mode, fine_mode, samples, seed }) => {
            let coarse = load_valid_fan(&coarse)?;
            let fine = load_valid_fan(&fine)?;
            let modes = ModePair { coarse: mode.into(), fine: fine_mode.unwrap_or(mode).into() };
            print(&skeleton_subset(&coarse, &fine, modes, SubsetOptions { samples, seed }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::Json(_) | Error::InvalidRational(_) => ExitCode::from(2),
                Error::InvalidFan(_) | Error::InvalidCw(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

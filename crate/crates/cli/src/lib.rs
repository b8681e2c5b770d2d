//! The `profin` command-line workbench.

pub mod commands;
pub mod spec;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use commands::{CliError, CliResult, Output};
use profin::Caps;

#[derive(Parser, Debug)]
#[command(
    name = "profin",
    version,
    about = "Normal-structure, fusion and tower invariants of finite groups"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Seed for randomized Sylow searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Also write the CSV report to this path.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = Caps::default().degree)]
    cap_degree: usize,
    #[arg(long, global = true, default_value_t = Caps::default().order)]
    cap_order: u64,
    #[arg(long, global = true, default_value_t = Caps::default().lattice)]
    cap_lattice: u64,
    #[arg(long, global = true, default_value_t = Caps::default().ob_star)]
    cap_ob_star: u64,
    #[arg(long, global = true, default_value_t = Caps::default().aut)]
    cap_aut: u64,
    #[arg(long, global = true, default_value_t = Caps::default().subgroups)]
    cap_subgroups: u64,
}

impl GlobalArgs {
    fn caps(&self) -> Caps {
        Caps {
            degree: self.cap_degree,
            order: self.cap_order,
            lattice: self.cap_lattice,
            ob_star: self.cap_ob_star,
            aut: self.cap_aut,
            subgroups: self.cap_subgroups,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orders of F, E, F*, the normal Frattini subgroup and the p-cores.
    Invariants { spec: String },
    /// ob(n) (and optionally ob*(n)) for n = 1..=N.
    ObTable {
        spec: String,
        #[arg(long)]
        max_n: u64,
        #[arg(long)]
        star: bool,
    },
    /// The four conditions of Tate's transfer criterion.
    Tate {
        spec: String,
        #[arg(long)]
        p: u64,
        /// A subgroup spec, or `self`.
        #[arg(long = "K", value_name = "SPEC")]
        k: String,
    },
    /// Fusion of subgroups of a Sylow p-subgroup.
    Fusion {
        spec: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        alperin: bool,
    },
    /// Build a tower of finite quotients and report its sequences.
    Tower {
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true)]
        params: Vec<u64>,
        #[arg(long)]
        max_n: Option<u64>,
        #[arg(long)]
        star: bool,
    },
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn execute(cli: &Cli) -> CliResult<Output> {
    let caps = cli.global.caps();
    let seed = cli.global.seed;
    match &cli.command {
        Command::Invariants { spec } => commands::invariants(&commands::parse_arg("spec", spec)?, &caps, seed),
        Command::ObTable { spec, max_n, star } => {
            commands::ob_table(&commands::parse_arg("spec", spec)?, *max_n, *star, &caps, seed)
        }
        Command::Tate { spec, p, k } => {
            let g = commands::parse_arg("spec", spec)?;
            let k = if k.trim() == "self" {
                None
            } else {
                Some(commands::parse_arg("K", k)?)
            };
            commands::tate(&g, *p, k.as_ref(), &caps, seed)
        }
        Command::Fusion { spec, p, alperin } => {
            commands::fusion(&commands::parse_arg("spec", spec)?, *p, *alperin, &caps, seed)
        }
        Command::Tower {
            family,
            params,
            max_n,
            star,
        } => commands::tower(family, params, *max_n, *star, &caps),
    }
}

/// Writes via a temporary file so a failed write never leaves a partial report.
fn write_atomic(path: &Path, text: &str) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    fs::write(&tmp, text).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

fn finish(cli: &Cli, out: Output) -> CliResult<String> {
    if cli.global.csv.is_some() && out.csv.is_none() {
        return Err(CliError::Input(
            "this command has no CSV report (tower needs --max-n)".into(),
        ));
    }
    if let (Some(path), Some(text)) = (&cli.global.json, &out.json) {
        write_atomic(path, text)?;
    }
    if let (Some(path), Some(text)) = (&cli.global.csv, &out.csv) {
        write_atomic(path, text)?;
    }
    Ok(out.stdout)
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let d = serde_json::json!({ "error": "usage", "message": e.to_string().trim_end() });
            return Outcome {
                code: 1,
                stdout: String::new(),
                stderr: format!("{d}\n"),
            };
        }
    };
    match execute(&cli).and_then(|out| finish(&cli, out)) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{}\n", e.diagnostic()),
        },
    }
}

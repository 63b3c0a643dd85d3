use clap::{Parser, Subcommand, ValueEnum};
use hnntree_core::commands::{run_command, Command, CommandError, Output, RunConfig};
use hnntree_core::instance::{parse_instance, shipped_instances, to_json, Instance};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hnntree", version, about = "Verify quotients, treeings and HNN descent models on finite instances")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate an instance of any kind.
    Check(Args),
    /// Normality test and quotient construction.
    Quotient(Args),
    /// Induced treeing on a target set.
    Induce(Args),
    /// Fiber balls, degree law, level distance and truncated cost of the descent model.
    Hnn(Args),
    /// Homomorphic section and product decomposition of a central extension.
    Split(Args),
    /// Write the shipped instance files into a directory.
    Fixtures {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(clap::Args)]
struct Args {
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    radius_word: usize,
    #[arg(long, default_value_t = 3)]
    radius_level: usize,
    /// Directory for report files and artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_arrows: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
}

const INPUT: u8 = 2;
const RESOURCE: u8 = 3;

fn load(path: &Path) -> Result<Instance, CommandError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))
}

fn render(out: &Output, format: Format) -> Result<String, CommandError> {
    match format {
        Format::Text => Ok(out.report.to_text()),
        Format::Json => Ok(out.report.to_json()),
        Format::Dot => out
            .dot
            .clone()
            .ok_or_else(|| CommandError::Input(format!("{} has no dot output", out.report.command))),
    }
}

fn write_out(dir: &Path, out: &Output) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let name = &out.report.command;
    std::fs::write(dir.join(format!("{name}-report.txt")), out.report.to_text())?;
    std::fs::write(dir.join(format!("{name}-report.json")), out.report.to_json())?;
    if let Some(dot) = &out.dot {
        std::fs::write(dir.join(format!("{name}.dot")), dot)?;
    }
    for (file, body) in &out.artifacts {
        std::fs::write(dir.join(file), body)?;
    }
    Ok(())
}

fn run(cmd: Command, args: &Args) -> Result<bool, CommandError> {
    let inst = args.instance.as_deref().map(load).transpose()?;
    let cfg = RunConfig {
        radius_word: args.radius_word,
        radius_level: args.radius_level,
        seed: args.seed,
        max_arrows: args.max_arrows as usize,
        p: args.p,
        q: args.q,
    };
    let out = run_command(cmd, inst.as_ref(), &cfg)?;
    print!("{}", render(&out, args.format)?);
    if let Some(dir) = &args.out {
        write_out(dir, &out).map_err(|e| CommandError::Input(format!("{}: {e}", dir.display())))?;
    }
    Ok(out.report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, args) = match &cli.command {
        Cmd::Check(a) => (Command::Check, a),
        Cmd::Quotient(a) => (Command::Quotient, a),
        Cmd::Induce(a) => (Command::Induce, a),
        Cmd::Hnn(a) => (Command::Hnn, a),
        Cmd::Split(a) => (Command::Split, a),
        Cmd::Fixtures { out } => {
            let write = || -> std::io::Result<()> {
                std::fs::create_dir_all(out)?;
                for (name, inst) in shipped_instances() {
                    std::fs::write(out.join(name), to_json(&inst))?;
                }
                Ok(())
            };
            return match write() {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {}: {e}", out.display());
                    ExitCode::from(INPUT)
                }
            };
        }
    };
    match run(cmd, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CommandError::Input(_) => INPUT,
                CommandError::Resource(_) => RESOURCE,
            })
        }
    }
}

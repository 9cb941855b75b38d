use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hsnsim::experiments::{
    replay_trial, sweep, table1_rows, write_csv, write_table1, ExperimentConfig, Point, SweepKind,
};
use hsnsim::topology::generate_field;
use hsnsim::{Error, Result};

#[derive(Parser)]
#[command(name = "hsnsim", version, about = "Sensor network share-routing simulator")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Overrides {
    /// Config file of `key = value` lines.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated scheme names.
    #[arg(long)]
    scheme: Option<String>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Deploy a field and dump it.
    Generate {
        #[command(flatten)]
        o: Overrides,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a sweep and write CSV.
    Run {
        #[command(flatten)]
        o: Overrides,
        /// ttl, shares, radius, density, source, hops or table1.
        #[arg(long)]
        sweep: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the share routes of one trial at the base parameters.
    Trace {
        #[command(flatten)]
        o: Overrides,
        #[arg(long)]
        trial: u64,
    },
}

fn load(o: &Overrides) -> Result<ExperimentConfig> {
    let text = std::fs::read_to_string(&o.config)?;
    let mut cfg = ExperimentConfig::parse(&text)?;
    if let Some(s) = o.seed {
        cfg.seed = s;
    }
    if let Some(t) = o.trials {
        cfg.trials = t;
    }
    if let Some(s) = &o.scheme {
        cfg.set("schemes", s).map_err(Error::Config)?;
    }
    if let Some(j) = o.jobs {
        cfg.jobs = j;
    }
    cfg.validate()?;
    if let Some(w) = cfg.alpha_warning() {
        eprintln!("warning: {w}");
    }
    Ok(cfg)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Command::Generate { o, out } => {
            let cfg = load(&o)?;
            let t = generate_field(cfg.n_l, cfg.n_h, cfg.field()?, cfg.radius, cfg.seed)?;
            let mut w = create(&out)?;
            t.dump(&mut w)?;
            w.flush()?;
            eprintln!("{} nodes, mean degree {:.2}", t.len(), t.mean_degree());
        }
        Command::Run { o, sweep: name, out } => {
            let cfg = load(&o)?;
            let mut w = create(&out)?;
            if name == "table1" {
                write_table1(&table1_rows(&cfg)?, &mut w)?;
            } else {
                let kind: SweepKind = name.parse()?;
                write_csv(&sweep(&cfg, kind)?, &mut w)?;
            }
            w.flush()?;
        }
        Command::Trace { o, trial } => {
            let cfg = load(&o)?;
            let stdout = io::stdout();
            let mut w = stdout.lock();
            for &scheme in &cfg.schemes {
                let point = Point::base(&cfg, scheme);
                let (sc, res) = replay_trial(&cfg, &point, trial)?;
                eprintln!(
                    "{scheme} trial {trial}: source {} intercepted {}/{} delivered {}/{} compromised {}",
                    sc.source,
                    res.outcome.shares_intercepted,
                    res.routes.len(),
                    res.outcome.shares_delivered,
                    res.routes.len(),
                    res.outcome.compromised
                );
                if cfg.schemes.len() > 1 {
                    writeln!(w, "# {scheme}")?;
                }
                for r in &res.routes {
                    writeln!(w, "{}", r.trace_line())?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}


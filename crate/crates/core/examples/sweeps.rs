//! Run every parameter sweep and write one CSV per sweep.
//!
//!     cargo run --release --example sweeps -- [out_dir] [trials]

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use hsnsim::experiments::{sweep, write_csv, ExperimentConfig, SweepKind};
use hsnsim::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "sweeps".into()));
    let trials = args.next().and_then(|s| s.parse().ok()).unwrap_or(1000);
    std::fs::create_dir_all(&dir)?;
    let cfg = ExperimentConfig {
        trials,
        ..ExperimentConfig::default()
    };
    for kind in SweepKind::ALL {
        let start = std::time::Instant::now();
        let rows = sweep(&cfg, kind)?;
        let path = dir.join(format!("{kind}.csv"));
        write_csv(&rows, BufWriter::new(File::create(&path)?))?;
        let best = rows
            .iter()
            .min_by(|a, b| a.intercept_p.total_cmp(&b.intercept_p))
            .unwrap();
        println!(
            "{:<8} {:>3} rows in {:>6.2?} -> {}  (lowest: {} {}={} p={:.4})",
            kind.name(),
            rows.len(),
            start.elapsed(),
            path.display(),
            best.scheme,
            best.param,
            best.value,
            best.intercept_p
        );
    }
    Ok(())
}

//! Estimate interception and delivery for every scheme against one black
//! hole, and replay a single trial to see which shares were caught.
//!
//!     cargo run --release --example black_hole -- [trials]

use hsnsim::adversary::{share_intercepted, AdversaryMode};
use hsnsim::experiments::{replay_trial, run_points, ExperimentConfig, Point};
use hsnsim::routing::SchemeId;
use hsnsim::Result;

fn main() -> Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let mut cfg = ExperimentConfig {
        trials,
        ..ExperimentConfig::default()
    };
    println!(
        "hole at ({}, {}) radius {}, source near ({}, {}), N={} M={} T={}",
        cfg.hole_x,
        cfg.hole_y,
        cfg.hole_radius,
        cfg.source_x,
        cfg.source_y,
        cfg.ttl,
        cfg.shares,
        cfg.threshold_for(cfg.shares)
    );
    for mode in [AdversaryMode::Eavesdrop, AdversaryMode::Block] {
        cfg.adversary = mode;
        let points: Vec<Point> = SchemeId::ALL.iter().map(|&s| Point::base(&cfg, s)).collect();
        println!("{mode}:");
        for r in run_points(&cfg, &points)? {
            println!(
                "  {:<8} intercepted {:.4} +- {:.4}  delivered {:.4}",
                r.scheme.name(),
                r.intercept_p,
                r.stderr,
                r.deliver_p
            );
        }
    }

    cfg.adversary = AdversaryMode::Eavesdrop;
    let (sc, res) = replay_trial(&cfg, &Point::base(&cfg, SchemeId::Mtrp), 0)?;
    println!("MTRP trial 0: compromised {}", res.outcome.compromised);
    for r in &res.routes {
        let caught = share_intercepted(r, &sc.hole, &sc.topology);
        println!("  {}  {}", if caught { "caught" } else { "clear " }, r.trace_line());
    }
    Ok(())
}

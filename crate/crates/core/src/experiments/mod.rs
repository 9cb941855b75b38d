//! Configuration, Monte Carlo runner, parameter sweeps and CSV reports.

pub mod config;
pub mod report;
pub mod runner;
pub mod sweeps;

pub use config::{threshold_for, ExperimentConfig};
pub use report::{
    c_neighbor_summary, csv_line, sig6, table1_rows, write_csv, write_table1, CNeighborSummary, Table1Row,
    CSV_HEADER, TABLE1_HEADER,
};
pub use runner::{
    derive_seed, replay_trial, run_point, run_point_on, run_points, with_jobs, MetricsRow, Point, Scenario, Tally,
    TrialResult,
};
pub use sweeps::{
    rows_for, sweep, sweep_density, sweep_hops, sweep_points, sweep_radius, sweep_shares, sweep_source, sweep_ttl,
    SweepKind,
};

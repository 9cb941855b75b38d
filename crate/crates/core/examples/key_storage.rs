//! Key storage and key-sharing comparison: c-neighbor ECC keys against
//! random key pre-distribution.

use hsnsim::crypto::{eg_share_probability, min_ring_for};
use hsnsim::experiments::{c_neighbor_summary, table1_rows, write_table1, ExperimentConfig};
use hsnsim::Result;

fn main() -> Result<()> {
    let cfg = ExperimentConfig::default();
    write_table1(&table1_rows(&cfg)?, std::io::stdout().lock())?;

    let pool = cfg.table1_pool;
    let m = min_ring_for(pool, 0.9).unwrap();
    println!(
        "\nrings of {m} keys from a pool of {pool} share a key with p = {:.4}",
        eg_share_probability(pool, m).probability
    );
    let s = c_neighbor_summary(&cfg)?;
    println!(
        "{} c-neighbor pairs among {} L-sensors (bound {}), {} keys agreed",
        s.pairs,
        s.l_sensors,
        s.pair_bound(),
        s.keys_established
    );
    Ok(())
}

//! CSV output for sweeps and the key-management cost table.

use std::collections::BTreeMap;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::ExperimentConfig;
use super::runner::{derive_seed, MetricsRow};
use crate::clustering::{build_cluster_tree, c_neighbor_pairs, form_clusters};
use crate::crypto::{eg_share_probability, establish_pairwise_keys, gen_keypair, min_ring_for, storage_cost, StorageScheme};
use crate::error::Result;
use crate::topology::generate_field;

pub const CSV_HEADER: &str = "scheme,param,value,intercept_p,deliver_p,mean_hops,stderr,trials,seed";
pub const TABLE1_HEADER: &str = "metric,h,l,ring,pool,value";

/// Sharing probability the minimum ring is reported for.
pub const EG_TARGET: f64 = 0.9;

const TAG_KEYS: u64 = 0x6b657973;

/// `v` in fixed notation with six significant digits; `nan` for NaN.
pub fn sig6(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0.00000".into();
    }
    let decimals = |x: f64| (5 - x.abs().log10().floor() as i32).max(0) as usize;
    let mut d = decimals(v);
    let s = format!("{v:.d$}");
    // rounding may carry into a new leading digit, e.g. 9.999999 -> 10.00000
    let rounded: f64 = s.parse().unwrap_or(v);
    if rounded != 0.0 && decimals(rounded) < d {
        d = decimals(rounded);
        return format!("{v:.d$}");
    }
    s
}

pub fn csv_line(r: &MetricsRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.scheme,
        r.param,
        sig6(r.value),
        sig6(r.intercept_p),
        sig6(r.deliver_p),
        sig6(r.mean_hops),
        sig6(r.stderr),
        r.trials,
        r.seed
    )
}

pub fn write_csv<W: Write>(rows: &[MetricsRow], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", csv_line(r))?;
    }
    Ok(())
}

/// One line of the cost table. Cells that do not apply are `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub metric: &'static str,
    pub h: Option<u64>,
    pub l: Option<u64>,
    pub ring: Option<u64>,
    pub pool: Option<u64>,
    pub value: f64,
}

impl Table1Row {
    fn new(metric: &'static str, value: f64) -> Self {
        Table1Row {
            metric,
            h: None,
            l: None,
            ring: None,
            pool: None,
            value,
        }
    }

    pub fn csv_line(&self) -> String {
        let cell = |v: Option<u64>| v.map_or(String::new(), |v| v.to_string());
        let value = if self.value.fract() == 0.0 && self.value.abs() < 1e15 {
            format!("{}", self.value as i64)
        } else {
            sig6(self.value)
        };
        format!(
            "{},{},{},{},{},{}",
            self.metric,
            cell(self.h),
            cell(self.l),
            cell(self.ring),
            cell(self.pool),
            value
        )
    }
}

/// Clustering and key-agreement counts on one deployment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct CNeighborSummary {
    pub l_sensors: usize,
    pub clusters: usize,
    pub nonempty_clusters: usize,
    pub virtual_edges: usize,
    pub pairs: usize,
    pub keys_established: usize,
    pub keys_failed: usize,
}

impl CNeighborSummary {
    /// Upper bound on c-neighbor pairs: each cluster tree over `k` members
    /// has at most `k - 1` member-member edges, plus virtual links.
    pub fn pair_bound(&self) -> usize {
        (self.l_sensors + self.virtual_edges).saturating_sub(self.nonempty_clusters)
    }
}

/// Deploy the configured field once, cluster it and run key agreement
/// between every c-neighbor pair.
pub fn c_neighbor_summary(cfg: &ExperimentConfig) -> Result<CNeighborSummary> {
    let topo = generate_field(cfg.n_l, cfg.n_h, cfg.field()?, cfg.radius, derive_seed(cfg.seed, &[TAG_KEYS, 0]))?;
    let clusters = form_clusters(&topo)?;
    let trees: Vec<_> = clusters.iter().map(|c| build_cluster_tree(c, &topo)).collect();
    let pairs = c_neighbor_pairs(&trees);

    let curve = cfg.curve()?;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[TAG_KEYS, 1]));
    let mut keyring = BTreeMap::new();
    for p in &pairs {
        for id in [p.a(), p.b()] {
            keyring.entry(id).or_insert_with(|| gen_keypair(&curve, &mut rng));
        }
    }
    let est = establish_pairwise_keys(pairs.iter().copied(), &keyring, &curve)?;
    Ok(CNeighborSummary {
        l_sensors: cfg.n_l,
        clusters: clusters.len(),
        nonempty_clusters: clusters.iter().filter(|c| !c.members.is_empty()).count(),
        virtual_edges: trees.iter().map(|t| t.virtual_edges.len()).sum(),
        pairs: pairs.len(),
        keys_established: est.keys.len(),
        keys_failed: est.failed.len(),
    })
}

/// Storage grid, random pre-distribution sharing probabilities and the
/// c-neighbor summary for the configured deployment.
pub fn table1_rows(cfg: &ExperimentConfig) -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    for &h in &cfg.table1_h_values {
        for &l in &cfg.table1_l_values {
            rows.push(Table1Row {
                h: Some(h),
                l: Some(l),
                ..Table1Row::new("storage_distributed", storage_cost(StorageScheme::Distributed, h, l, 0) as f64)
            });
            for &m in &cfg.table1_ring_values {
                rows.push(Table1Row {
                    h: Some(h),
                    l: Some(l),
                    ring: Some(m),
                    ..Table1Row::new("storage_basic", storage_cost(StorageScheme::Basic, h, l, m) as f64)
                });
            }
        }
    }
    let pool = cfg.table1_pool;
    for &m in &cfg.table1_eg_rings {
        rows.push(Table1Row {
            ring: Some(m),
            pool: Some(pool),
            ..Table1Row::new("eg_share_p", eg_share_probability(pool, m).probability)
        });
    }
    if let Some(m) = min_ring_for(pool, EG_TARGET) {
        rows.push(Table1Row {
            pool: Some(pool),
            ..Table1Row::new("eg_min_ring_0.9", m as f64)
        });
    }

    let s = c_neighbor_summary(cfg)?;
    let (h, l) = (Some(cfg.n_h as u64), Some(cfg.n_l as u64));
    for (metric, v) in [
        ("cn_clusters", s.clusters),
        ("cn_nonempty_clusters", s.nonempty_clusters),
        ("cn_virtual_edges", s.virtual_edges),
        ("cn_pairs", s.pairs),
        ("cn_pair_bound", s.pair_bound()),
        ("cn_keys_established", s.keys_established),
        ("cn_keys_failed", s.keys_failed),
    ] {
        rows.push(Table1Row {
            h,
            l,
            ..Table1Row::new(metric, v as f64)
        });
    }
    Ok(rows)
}

pub fn write_table1<W: Write>(rows: &[Table1Row], mut out: W) -> Result<()> {
    writeln!(out, "{TABLE1_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.csv_line())?;
    }
    Ok(())
}

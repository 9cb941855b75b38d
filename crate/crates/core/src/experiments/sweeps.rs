//! One-parameter sweeps over the base configuration.

use std::fmt;
use std::str::FromStr;

use super::config::ExperimentConfig;
use super::runner::{run_points, MetricsRow, Point};
use crate::error::{Error, Result};
use crate::routing::SchemeId;
use crate::topology::Position;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepKind {
    /// Interception vs TTL (N).
    Ttl,
    /// Interception vs share count (M), with T following M unless pinned.
    Shares,
    /// Interception vs black-hole radius.
    Radius,
    /// Interception vs total sensor count.
    Density,
    /// Interception vs source x along the configured source y.
    Source,
    /// End-to-end hop count vs TTL.
    Hops,
}

impl SweepKind {
    pub const ALL: [SweepKind; 6] = [
        SweepKind::Ttl,
        SweepKind::Shares,
        SweepKind::Radius,
        SweepKind::Density,
        SweepKind::Source,
        SweepKind::Hops,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepKind::Ttl => "ttl",
            SweepKind::Shares => "shares",
            SweepKind::Radius => "radius",
            SweepKind::Density => "density",
            SweepKind::Source => "source",
            SweepKind::Hops => "hops",
        }
    }

    /// Column value written to the `param` field.
    fn param(self) -> &'static str {
        match self {
            SweepKind::Ttl | SweepKind::Hops => "ttl",
            SweepKind::Shares => "shares",
            SweepKind::Radius => "hole_radius",
            SweepKind::Density => "nodes",
            SweepKind::Source => "source_x",
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown sweep {s:?}")))
    }
}

fn sorted_values(values: Vec<f64>, kind: SweepKind) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::Parameter(format!("{kind} sweep has no values")));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Parameter(format!("{kind} sweep has a non-finite value")));
    }
    let mut v = values;
    v.sort_by(f64::total_cmp);
    v.dedup();
    Ok(v)
}

/// Points for a sweep, ordered by (scheme, value).
pub fn sweep_points(cfg: &ExperimentConfig, kind: SweepKind) -> Result<Vec<Point>> {
    let raw: Vec<f64> = match kind {
        SweepKind::Ttl | SweepKind::Hops => cfg.ttl_values.iter().map(|&v| v as f64).collect(),
        SweepKind::Shares => cfg.share_values.iter().map(|&v| v as f64).collect(),
        SweepKind::Radius => cfg.hole_radius_values.clone(),
        SweepKind::Density => cfg.node_values.iter().map(|&v| v as f64).collect(),
        SweepKind::Source => cfg.source_x_values.clone(),
    };
    let values = sorted_values(raw, kind)?;
    let mut schemes = cfg.schemes.clone();
    schemes.sort();
    schemes.dedup();

    let mut points = Vec::with_capacity(schemes.len() * values.len());
    for &scheme in &schemes {
        for (i, &value) in values.iter().enumerate() {
            let mut p = Point::base(cfg, scheme);
            p.param = kind.param();
            p.value = value;
            p.index = i as u64;
            match kind {
                SweepKind::Ttl | SweepKind::Hops => p.ttl = value as u32,
                SweepKind::Shares => {
                    p.shares = value as usize;
                    p.threshold = cfg.threshold_for(p.shares);
                }
                SweepKind::Radius => p.hole_radius = value,
                SweepKind::Density => p.nodes = value as usize,
                SweepKind::Source => p.source = Position::new(value, cfg.source_y),
            }
            points.push(p);
        }
    }
    Ok(points)
}

pub fn sweep(cfg: &ExperimentConfig, kind: SweepKind) -> Result<Vec<MetricsRow>> {
    run_points(cfg, &sweep_points(cfg, kind)?)
}

pub fn sweep_ttl(cfg: &ExperimentConfig) -> Result<Vec<MetricsRow>> {
    sweep(cfg, SweepKind::Ttl)
}

pub fn sweep_shares(cfg: &ExperimentConfig) -> Result<Vec<MetricsRow>> {
    sweep(cfg, SweepKind::Shares)
}

pub fn sweep_radius(cfg: &ExperimentConfig) -> Result<Vec<MetricsRow>> {
    sweep(cfg, SweepKind::Radius)
}

pub fn sweep_density(cfg: &ExperimentConfig) -> Result<Vec<MetricsRow>> {
    sweep(cfg, SweepKind::Density)
}

pub fn sweep_source(cfg: &ExperimentConfig) -> Result<Vec<MetricsRow>> {
    sweep(cfg, SweepKind::Source)
}

pub fn sweep_hops(cfg: &ExperimentConfig) -> Result<Vec<MetricsRow>> {
    sweep(cfg, SweepKind::Hops)
}

/// Rows of one scheme, in sweep order.
pub fn rows_for(rows: &[MetricsRow], scheme: SchemeId) -> Vec<&MetricsRow> {
    rows.iter().filter(|r| r.scheme == scheme).collect()
}

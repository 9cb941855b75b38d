//! Black-hole adversary: a disk in which every relayed share is captured,
//! either silently (compromised nodes) or by blocking it (jamming).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::routing::RouteRecord;
use crate::topology::{Position, Topology, SINK};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlackHole {
    pub center: Position,
    pub radius: f64,
}

impl BlackHole {
    pub fn new(center: Position, radius: f64) -> Result<Self> {
        if radius < 0.0 || !radius.is_finite() {
            return Err(Error::Config(format!("black hole radius must be >= 0, got {radius}")));
        }
        Ok(BlackHole { center, radius })
    }

    pub fn contains(&self, p: &Position) -> bool {
        self.center.distance_sq(p) <= self.radius * self.radius
    }

    /// The sink must lie outside the hole.
    pub fn validate_against(&self, t: &Topology) -> Result<()> {
        if self.contains(&t.position(SINK)) {
            return Err(Error::Config("black hole covers the sink".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AdversaryMode {
    /// Captured shares are read but still forwarded.
    #[default]
    Eavesdrop,
    /// Captured shares never leave the hole.
    Block,
}

impl fmt::Display for AdversaryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdversaryMode::Eavesdrop => "eavesdrop",
            AdversaryMode::Block => "block",
        })
    }
}

impl FromStr for AdversaryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "eavesdrop" => Ok(AdversaryMode::Eavesdrop),
            "block" => Ok(AdversaryMode::Block),
            other => Err(Error::Config(format!("unknown adversary mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PacketOutcome {
    pub shares_intercepted: usize,
    pub shares_delivered: usize,
    /// At least T shares captured.
    pub compromised: bool,
    /// At least T shares reached the sink.
    pub delivered: bool,
}

/// True iff some node on the route other than the sink lies in the hole.
/// Dropped shares never count.
pub fn share_intercepted(route: &RouteRecord, hole: &BlackHole, t: &Topology) -> bool {
    route.dropped_reason.is_none()
        && route
        .path
        .iter()
        .any(|&id| id != SINK && hole.contains(&t.position(id)))
}

pub fn packet_outcome(
    routes: &[RouteRecord],
    t_threshold: usize,
    hole: &BlackHole,
    topo: &Topology,
    mode: AdversaryMode,
) -> Result<PacketOutcome> {
    if routes.is_empty() {
        return Err(Error::Parameter("packet has no share routes".into()));
    }
    if t_threshold == 0 || t_threshold > routes.len() {
        return Err(Error::Parameter(format!(
            "threshold {t_threshold} not in [1, {}]",
            routes.len()
        )));
    }
    let mut out = PacketOutcome::default();
    for r in routes {
        let caught = share_intercepted(r, hole, topo);
        if caught {
            out.shares_intercepted += 1;
        }
        if r.delivered && !(caught && mode == AdversaryMode::Block) {
            out.shares_delivered += 1;
        }
    }
    out.compromised = out.shares_intercepted >= t_threshold;
    out.delivered = out.shares_delivered >= t_threshold;
    Ok(out)
}

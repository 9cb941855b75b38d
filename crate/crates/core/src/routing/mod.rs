//! Share delivery: a random propagation phase of at most TTL relays, then
//! min-hop routing toward the sink.
//!
//! Four propagation rules are provided:
//!
//! * PRP picks any neighbor uniformly.
//! * NRRP carries the visited node ids (NIR) and never picks one of them.
//! * DRP carries the last relay's closed neighborhood (LHNL) and avoids it,
//!   so each step tends to move away from where the share came from.
//! * MTRP applies the DRP filter and then keeps only neighbors whose hop
//!   count to the sink lies in `[min_hop, max_hop]`.
//!
//! A deterministic node-disjoint multipath baseline lives in [`hspread`].

mod hspread;

use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::error::{parse_err, Error, Result};
use crate::topology::{HopField, NodeId, Topology, SINK};

pub use hspread::{disjoint_paths, hspread_routes};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemeId {
    Prp,
    Nrrp,
    Drp,
    Mtrp,
    Hspread,
}

impl SchemeId {
    pub const ALL: [SchemeId; 5] = [SchemeId::Prp, SchemeId::Nrrp, SchemeId::Drp, SchemeId::Mtrp, SchemeId::Hspread];
    pub const RANDOMIZED: [SchemeId; 4] = [SchemeId::Prp, SchemeId::Nrrp, SchemeId::Drp, SchemeId::Mtrp];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Prp => "PRP",
            SchemeId::Nrrp => "NRRP",
            SchemeId::Drp => "DRP",
            SchemeId::Mtrp => "MTRP",
            SchemeId::Hspread => "HSPREAD",
        }
    }

    pub fn is_randomized(self) -> bool {
        self != SchemeId::Hspread
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SchemeId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Config(format!("unknown scheme {s:?}")))
    }
}

/// Routing state carried in each share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareHeader {
    /// Random relays still to perform.
    pub ttl: u32,
    /// Nodes already on the route (NRRP).
    pub nir: Vec<NodeId>,
    /// Sorted closed neighborhood of the last relay (DRP, MTRP).
    pub lhnl: Vec<NodeId>,
    pub max_hop: u32,
    pub min_hop: u32,
    pub scheme: SchemeId,
}

impl ShareHeader {
    pub fn new(scheme: SchemeId, ttl: u32) -> Self {
        ShareHeader {
            ttl,
            nir: Vec::new(),
            lhnl: Vec::new(),
            max_hop: u32::MAX,
            min_hop: 0,
            scheme,
        }
    }

    pub fn with_band(mut self, (max_hop, min_hop): (u32, u32)) -> Self {
        self.max_hop = max_hop;
        self.min_hop = min_hop;
        self
    }

    fn in_band(&self, hops: Option<u32>) -> bool {
        hops.is_some_and(|h| (self.min_hop..=self.max_hop).contains(&h))
    }
}

impl Default for ShareHeader {
    fn default() -> Self {
        ShareHeader::new(SchemeId::Prp, 0)
    }
}

/// MTRP hop band `(max_hop, min_hop)` around the source's hop count `n_s`.
/// `min_hop` saturates at zero.
pub fn mtrp_bounds(n_s: u32, alpha1: u32, alpha2: u32) -> (u32, u32) {
    (n_s.saturating_add(alpha1), n_s.saturating_sub(alpha2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DropReason {
    /// No admissible neighbor during random propagation.
    Stranded,
    /// The share ended on a node with no path to the sink.
    Unreachable,
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DropReason::Stranded => "stranded",
            DropReason::Unreachable => "unreachable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RouteRecord {
    /// Source first; the sink last when delivered.
    pub path: Vec<NodeId>,
    /// Index in `path` where random propagation ended.
    pub phase_split: usize,
    pub delivered: bool,
    pub dropped_reason: Option<DropReason>,
    /// Hop indices `i` (the relay `path[i] -> path[i + 1]`) chosen through a
    /// fallback rule rather than the scheme's primary filter.
    pub fallback_hops: Vec<usize>,
}

impl RouteRecord {
    pub fn hop_count(&self) -> usize {
        self.path.len().saturating_sub(1)
    }

    /// Nodes visited during random propagation, source included.
    pub fn random_phase(&self) -> &[NodeId] {
        if self.path.is_empty() {
            &[]
        } else {
            &self.path[..=self.phase_split]
        }
    }

    /// `a,b,c|d,e`: node ids with `|` after the node where random
    /// propagation ended.
    pub fn trace_line(&self) -> String {
        if self.path.is_empty() {
            return String::new();
        }
        let join = |ids: &[NodeId]| ids.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        format!(
            "{}|{}",
            join(&self.path[..=self.phase_split]),
            join(&self.path[self.phase_split + 1..])
        )
    }
}

/// Inverse of [`RouteRecord::trace_line`]: the path and its phase split.
pub fn parse_trace_line(line: &str) -> Result<(Vec<NodeId>, usize)> {
    if line.trim().is_empty() {
        return Ok((Vec::new(), 0));
    }
    let (random, normal) = line
        .trim()
        .split_once('|')
        .ok_or_else(|| parse_err(1, "trace line has no `|` separator"))?;
    let ids = |s: &str| -> Result<Vec<NodeId>> {
        s.split(',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|e| parse_err(1, format!("node id {t:?}: {e}"))))
            .collect()
    };
    let mut path = ids(random)?;
    if path.is_empty() {
        return Err(parse_err(1, "random phase must contain the source"));
    }
    let split = path.len() - 1;
    path.extend(ids(normal)?);
    Ok((path, split))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hop {
    pub node: NodeId,
    /// Picked through a fallback rule.
    pub fallback: bool,
}

/// Pick the next random relay from `current` under `header.scheme` and
/// update the header: TTL drops by one, NRRP appends `current` to the NIR,
/// DRP and MTRP replace the LHNL with `current`'s closed neighborhood.
///
/// Returns `None` when no neighbor is admissible (the share is dropped).
pub fn next_hop<R: Rng + ?Sized>(
    current: NodeId,
    header: &mut ShareHeader,
    t: &Topology,
    hf: &HopField,
    rng: &mut R,
) -> Option<Hop> {
    let nbrs = t.adj(current);
    if nbrs.is_empty() || header.ttl == 0 {
        return None;
    }
    let not_recent = |v: &&NodeId| header.lhnl.binary_search(v).is_err();
    let (candidates, fallback): (Vec<NodeId>, bool) = match header.scheme {
        SchemeId::Prp => (nbrs.to_vec(), false),
        SchemeId::Nrrp => {
            let fresh: Vec<NodeId> = nbrs.iter().filter(|v| !header.nir.contains(v)).copied().collect();
            (fresh, false)
        }
        SchemeId::Drp => {
            let fresh: Vec<NodeId> = nbrs.iter().filter(not_recent).copied().collect();
            if fresh.is_empty() {
                (nbrs.to_vec(), true)
            } else {
                (fresh, false)
            }
        }
        SchemeId::Mtrp => {
            let fresh: Vec<NodeId> = nbrs.iter().filter(not_recent).copied().collect();
            let banded: Vec<NodeId> = fresh.iter().filter(|&&v| header.in_band(hf.hops(v))).copied().collect();
            if !banded.is_empty() {
                (banded, false)
            } else {
                let banded_all: Vec<NodeId> = nbrs.iter().filter(|&&v| header.in_band(hf.hops(v))).copied().collect();
                if !banded_all.is_empty() {
                    (banded_all, true)
                } else if !fresh.is_empty() {
                    (fresh, true)
                } else {
                    (nbrs.to_vec(), true)
                }
            }
        }
        SchemeId::Hspread => return None,
    };
    let node = *candidates.choose(rng)?;

    header.ttl -= 1;
    match header.scheme {
        SchemeId::Nrrp => header.nir.push(current),
        SchemeId::Drp | SchemeId::Mtrp => {
            header.lhnl.clear();
            header.lhnl.extend_from_slice(nbrs);
            let at = header.lhnl.binary_search(&current).unwrap_err();
            header.lhnl.insert(at, current);
        }
        _ => {}
    }
    Some(Hop { node, fallback })
}

/// Min-hop route from `from` to the sink, stepping each time to a uniformly
/// chosen neighbor one hop closer. Empty when `from` cannot reach the sink.
pub fn normal_route<R: Rng + ?Sized>(t: &Topology, hf: &HopField, from: NodeId, rng: &mut R) -> Vec<NodeId> {
    let Some(mut h) = hf.hops(from) else {
        return Vec::new();
    };
    let mut path = Vec::with_capacity(h as usize + 1);
    path.push(from);
    let mut cur = from;
    let mut closer = Vec::new();
    while h > 0 {
        closer.clear();
        closer.extend(t.adj(cur).iter().copied().filter(|&v| hf.hops(v) == Some(h - 1)));
        cur = *closer.choose(rng).expect("a reachable node has a neighbor one hop closer");
        path.push(cur);
        h -= 1;
    }
    path
}

/// Random propagation from `source` until the TTL runs out, then min-hop
/// routing to the sink. A share handed to the sink during the random phase
/// is delivered there and propagates no further.
pub fn propagate_share<R: Rng + ?Sized>(
    t: &Topology,
    hf: &HopField,
    source: NodeId,
    header: &mut ShareHeader,
    rng: &mut R,
) -> RouteRecord {
    let mut rec = RouteRecord {
        path: vec![source],
        ..RouteRecord::default()
    };
    let mut cur = source;
    while header.ttl > 0 && cur != SINK {
        match next_hop(cur, header, t, hf, rng) {
            Some(hop) => {
                if hop.fallback {
                    rec.fallback_hops.push(rec.path.len() - 1);
                }
                rec.path.push(hop.node);
                cur = hop.node;
            }
            None => {
                rec.phase_split = rec.path.len() - 1;
                rec.dropped_reason = Some(DropReason::Stranded);
                return rec;
            }
        }
    }
    rec.phase_split = rec.path.len() - 1;
    if cur == SINK {
        rec.delivered = true;
        return rec;
    }
    let tail = normal_route(t, hf, cur, rng);
    if tail.is_empty() {
        rec.dropped_reason = Some(DropReason::Unreachable);
    } else {
        rec.path.extend_from_slice(&tail[1..]);
        rec.delivered = true;
    }
    rec
}

/// Per-packet delivery parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PacketParams {
    /// T: shares needed to rebuild the packet.
    pub threshold: usize,
    /// M: shares per packet.
    pub shares: usize,
    /// N: random relays per share.
    pub ttl: u32,
    pub alpha1: u32,
    pub alpha2: u32,
}

impl PacketParams {
    pub fn validate(&self) -> Result<()> {
        if self.shares == 0 || self.threshold == 0 || self.threshold > self.shares {
            return Err(Error::Parameter(format!(
                "need 1 <= T <= M, got T={}, M={}",
                self.threshold, self.shares
            )));
        }
        Ok(())
    }

    /// Initial header for one share of a packet sent from `source`.
    pub fn header(&self, scheme: SchemeId, source: NodeId, hf: &HopField) -> ShareHeader {
        let header = ShareHeader::new(scheme, self.ttl);
        match (scheme, hf.hops(source)) {
            (SchemeId::Mtrp, Some(n_s)) => header.with_band(mtrp_bounds(n_s, self.alpha1, self.alpha2)),
            _ => header,
        }
    }
}

/// Records for shares sent along fixed paths (the multipath baseline).
pub fn fixed_route_records(routes: &[Vec<NodeId>]) -> Vec<RouteRecord> {
    routes
        .iter()
        .map(|p| {
            let delivered = p.last() == Some(&SINK);
            RouteRecord {
                path: p.clone(),
                phase_split: 0,
                delivered,
                dropped_reason: (!delivered).then_some(DropReason::Unreachable),
                fallback_hops: Vec::new(),
            }
        })
        .collect()
}

/// Route all M shares of one packet from `source`. Randomized schemes draw
/// fresh choices per share; HSPREAD reuses the deterministic disjoint paths.
pub fn send_packet<R: Rng + ?Sized>(
    t: &Topology,
    hf: &HopField,
    source: NodeId,
    scheme: SchemeId,
    params: &PacketParams,
    rng: &mut R,
) -> Result<Vec<RouteRecord>> {
    params.validate()?;
    t.node(source)?;
    if scheme == SchemeId::Hspread {
        let routes = hspread_routes(t, source, params.shares)?;
        if routes.is_empty() {
            return Ok(vec![
                RouteRecord {
                    path: vec![source],
                    dropped_reason: Some(DropReason::Unreachable),
                    ..RouteRecord::default()
                };
                params.shares
            ]);
        }
        return Ok(fixed_route_records(&routes));
    }
    Ok((0..params.shares)
        .map(|_| {
            let mut header = params.header(scheme, source, hf);
            propagate_share(t, hf, source, &mut header, rng)
        })
        .collect())
}

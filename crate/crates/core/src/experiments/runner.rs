//! Monte Carlo estimation of interception and delivery probabilities.
//!
//! Every trial owns a ChaCha stream whose seed is derived from the master
//! seed, the point index, the scheme and the trial index alone, so results
//! do not depend on how work is scheduled across threads. Counts are summed
//! as integers, which keeps aggregation order-independent.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::ExperimentConfig;
use crate::adversary::{packet_outcome, AdversaryMode, BlackHole, PacketOutcome};
use crate::error::{Error, Result};
use crate::routing::{fixed_route_records, hspread_routes, send_packet, PacketParams, RouteRecord, SchemeId};
use crate::topology::{build_sink_tree, generate_field, HopField, NodeId, Position, Topology, SINK};

/// Trials per work unit when a single deployment is shared.
const FIXED_CHUNK: usize = 500;

const TAG_TOPOLOGY: u64 = 0x746f706f;
const TAG_TREE: u64 = 0x74726565;
const TAG_TRIAL: u64 = 0x7472696c;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for the stream identified by `parts` under `master`.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(splitmix(master), |acc, &p| splitmix(acc ^ splitmix(p)))
}

fn scheme_tag(s: SchemeId) -> u64 {
    s as u64 + 1
}

/// One parameter combination to estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct Point {
    pub scheme: SchemeId,
    /// Name of the swept parameter, e.g. `ttl`.
    pub param: &'static str,
    pub value: f64,
    /// Selects the per-trial routing streams.
    pub index: u64,
    pub ttl: u32,
    pub shares: usize,
    pub threshold: usize,
    pub hole_radius: f64,
    /// Total sensors (H + L).
    pub nodes: usize,
    pub source: Position,
}

impl Point {
    /// The configured base parameters for `scheme`.
    pub fn base(cfg: &ExperimentConfig, scheme: SchemeId) -> Point {
        Point {
            scheme,
            param: "base",
            value: 0.0,
            index: 0,
            ttl: cfg.ttl,
            shares: cfg.shares,
            threshold: cfg.threshold_for(cfg.shares),
            hole_radius: cfg.hole_radius,
            nodes: cfg.n_h + cfg.n_l,
            source: cfg.source(),
        }
    }

    fn packet(&self, cfg: &ExperimentConfig) -> PacketParams {
        PacketParams {
            threshold: self.threshold,
            shares: self.shares,
            ttl: self.ttl,
            alpha1: cfg.alpha1,
            alpha2: cfg.alpha2,
        }
    }

    fn hole(&self, cfg: &ExperimentConfig) -> Result<BlackHole> {
        BlackHole::new(Position::new(cfg.hole_x, cfg.hole_y), self.hole_radius)
    }
}

/// Integer tallies over a batch of trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub trials: u64,
    pub compromised: u64,
    pub delivered: u64,
    /// Hops summed over shares that reached the sink.
    pub hop_sum: u64,
    pub delivered_shares: u64,
    pub stranded_shares: u64,
    pub fallback_hops: u64,
}

impl Tally {
    fn record(&mut self, routes: &[RouteRecord], outcome: &PacketOutcome) {
        self.trials += 1;
        self.compromised += outcome.compromised as u64;
        self.delivered += outcome.delivered as u64;
        for r in routes {
            if r.delivered {
                self.hop_sum += r.hop_count() as u64;
                self.delivered_shares += 1;
            } else if r.dropped_reason == Some(crate::routing::DropReason::Stranded) {
                self.stranded_shares += 1;
            }
            self.fallback_hops += r.fallback_hops.len() as u64;
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.trials += o.trials;
        self.compromised += o.compromised;
        self.delivered += o.delivered;
        self.hop_sum += o.hop_sum;
        self.delivered_shares += o.delivered_shares;
        self.stranded_shares += o.stranded_shares;
        self.fallback_hops += o.fallback_hops;
        self
    }
}

/// One aggregated output line.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricsRow {
    pub scheme: SchemeId,
    pub param: String,
    pub value: f64,
    pub intercept_p: f64,
    pub deliver_p: f64,
    /// Mean end-to-end hops of delivered shares; NaN if none arrived.
    pub mean_hops: f64,
    /// Binomial standard error of `intercept_p`.
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
    pub tally: Tally,
}

impl MetricsRow {
    pub fn from_tally(point: &Point, seed: u64, tally: Tally) -> MetricsRow {
        let n = tally.trials as f64;
        let p = tally.compromised as f64 / n;
        MetricsRow {
            scheme: point.scheme,
            param: point.param.to_string(),
            value: point.value,
            intercept_p: p,
            deliver_p: tally.delivered as f64 / n,
            mean_hops: if tally.delivered_shares == 0 {
                f64::NAN
            } else {
                tally.hop_sum as f64 / tally.delivered_shares as f64
            },
            stderr: (p * (1.0 - p) / n).sqrt(),
            trials: tally.trials,
            seed,
            tally,
        }
    }
}

/// A deployment with its sink tree, chosen source and black hole.
pub struct Scenario {
    pub topology: Topology,
    pub hops: HopField,
    pub source: NodeId,
    pub hole: BlackHole,
}

impl Scenario {
    pub fn new(topology: Topology, hops: HopField, source: NodeId, hole: BlackHole) -> Result<Scenario> {
        topology.node(source)?;
        if source == SINK {
            return Err(Error::Parameter("source coincides with the sink".into()));
        }
        hole.validate_against(&topology)?;
        Ok(Scenario {
            topology,
            hops,
            source,
            hole,
        })
    }
}

/// Redraws allowed when the source cannot reach the sink.
const MAX_REDRAWS: u64 = 64;

// Deployments depend only on the sensor count and block, so every value of
// a sweep that keeps the deployment fixed is measured on the same fields.
// A deployment whose source is cut off from the sink is redrawn.
fn deployment(cfg: &ExperimentConfig, point: &Point, block: u64) -> Result<Scenario> {
    let (n_h, n_l) = cfg.split_nodes(point.nodes);
    let nodes = point.nodes as u64;
    for attempt in 0..MAX_REDRAWS {
        let topo_seed = derive_seed(cfg.seed, &[TAG_TOPOLOGY, nodes, block, attempt]);
        let topology = generate_field(n_l, n_h, cfg.field()?, cfg.radius, topo_seed)?;
        let source = topology
            .nearest_sensor(point.source)
            .ok_or_else(|| Error::Config("deployment has no sensors".into()))?;
        let mut tree_rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[TAG_TREE, nodes, block, attempt]));
        let hops = build_sink_tree(&topology, &mut tree_rng);
        if hops.is_reachable(source) {
            return Scenario::new(topology, hops, source, point.hole(cfg)?);
        }
    }
    Err(Error::Config(format!(
        "source cut off from the sink in {MAX_REDRAWS} consecutive deployments; increase density or radius"
    )))
}

fn check_point(cfg: &ExperimentConfig, point: &Point) -> Result<()> {
    point.packet(cfg).validate()?;
    if point.source == Position::new(0.0, 0.0) {
        return Err(Error::Parameter("source coincides with the sink".into()));
    }
    if point.nodes == 0 {
        return Err(Error::Parameter("point has no sensors".into()));
    }
    Ok(())
}

fn trial_rng(cfg: &ExperimentConfig, point: &Point, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(
        cfg.seed,
        &[TAG_TRIAL, point.index, scheme_tag(point.scheme), trial],
    ))
}

/// Routes and outcome of a single trial on a given scenario.
pub struct TrialResult {
    pub routes: Vec<RouteRecord>,
    pub outcome: PacketOutcome,
}

fn run_trials(
    cfg: &ExperimentConfig,
    point: &Point,
    sc: &Scenario,
    trials: std::ops::Range<u64>,
    mode: AdversaryMode,
) -> Result<Tally> {
    let params = point.packet(cfg);
    let fixed = if point.scheme == SchemeId::Hspread {
        Some(hspread_fixed(sc, params.shares)?)
    } else {
        None
    };
    let mut tally = Tally::default();
    for trial in trials {
        let routes = match &fixed {
            Some(r) => r.clone(),
            None => {
                let mut rng = trial_rng(cfg, point, trial);
                send_packet(&sc.topology, &sc.hops, sc.source, point.scheme, &params, &mut rng)?
            }
        };
        let outcome = packet_outcome(&routes, params.threshold, &sc.hole, &sc.topology, mode)?;
        tally.record(&routes, &outcome);
    }
    Ok(tally)
}

fn hspread_fixed(sc: &Scenario, shares: usize) -> Result<Vec<RouteRecord>> {
    let routes = hspread_routes(&sc.topology, sc.source, shares)?;
    if routes.is_empty() {
        return Ok(vec![
            RouteRecord {
                path: vec![sc.source],
                dropped_reason: Some(crate::routing::DropReason::Unreachable),
                ..RouteRecord::default()
            };
            shares
        ]);
    }
    Ok(fixed_route_records(&routes))
}

/// Deployment `block` and the trials run on it.
struct Unit {
    block: u64,
    trials: std::ops::Range<u64>,
}

fn units(cfg: &ExperimentConfig) -> Vec<Unit> {
    let total = cfg.trials as u64;
    let step = if cfg.topology_block == 0 {
        FIXED_CHUNK as u64
    } else {
        cfg.topology_block as u64
    };
    (0..total.div_ceil(step))
        .map(|i| {
            let block = if cfg.topology_block == 0 { 0 } else { i };
            Unit {
                block,
                trials: i * step..((i + 1) * step).min(total),
            }
        })
        .collect()
}

fn run_unit(cfg: &ExperimentConfig, point: &Point, unit: &Unit) -> Result<Tally> {
    let sc = deployment(cfg, point, unit.block)?;
    run_trials(cfg, point, &sc, unit.trials.clone(), cfg.adversary)
}

/// Run `f` on a pool with `jobs` threads (0 = rayon's default).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Estimate every point; rows come back in the order of `points`.
pub fn run_points(cfg: &ExperimentConfig, points: &[Point]) -> Result<Vec<MetricsRow>> {
    for p in points {
        check_point(cfg, p)?;
    }
    let plan = units(cfg);
    let work: Vec<(usize, &Unit)> = (0..points.len()).flat_map(|i| plan.iter().map(move |u| (i, u))).collect();
    let tallies: Vec<Result<(usize, Tally)>> = with_jobs(cfg.jobs, || {
        work.par_iter()
            .map(|&(i, u)| run_unit(cfg, &points[i], u).map(|t| (i, t)))
            .collect()
    })?;
    let mut sums = vec![Tally::default(); points.len()];
    for r in tallies {
        let (i, t) = r?;
        sums[i] = sums[i].merge(t);
    }
    Ok(points
        .iter()
        .zip(sums)
        .map(|(p, t)| MetricsRow::from_tally(p, cfg.seed, t))
        .collect())
}

/// Estimate a single point. Deployments are regenerated every
/// `topology_block` trials, or fixed when it is 0.
pub fn run_point(cfg: &ExperimentConfig, point: &Point) -> Result<MetricsRow> {
    Ok(run_points(cfg, std::slice::from_ref(point))?.remove(0))
}

/// Estimate a point on an explicit scenario that stays fixed for all trials.
pub fn run_point_on(cfg: &ExperimentConfig, point: &Point, scenario: &Scenario) -> Result<MetricsRow> {
    point.packet(cfg).validate()?;
    let total = cfg.trials as u64;
    let chunks: Vec<std::ops::Range<u64>> = (0..total.div_ceil(FIXED_CHUNK as u64))
        .map(|i| i * FIXED_CHUNK as u64..((i + 1) * FIXED_CHUNK as u64).min(total))
        .collect();
    let tallies: Vec<Result<Tally>> = with_jobs(cfg.jobs, || {
        chunks
            .par_iter()
            .map(|r| run_trials(cfg, point, scenario, r.clone(), cfg.adversary))
            .collect()
    })?;
    let mut sum = Tally::default();
    for t in tallies {
        sum = sum.merge(t?);
    }
    Ok(MetricsRow::from_tally(point, cfg.seed, sum))
}

/// Replay trial `trial` of `point` exactly as `run_point` would run it.
pub fn replay_trial(cfg: &ExperimentConfig, point: &Point, trial: u64) -> Result<(Scenario, TrialResult)> {
    check_point(cfg, point)?;
    if trial >= cfg.trials as u64 {
        return Err(Error::Parameter(format!("trial {trial} outside 0..{}", cfg.trials)));
    }
    let block = if cfg.topology_block == 0 {
        0
    } else {
        trial / cfg.topology_block as u64
    };
    let sc = deployment(cfg, point, block)?;
    let params = point.packet(cfg);
    let routes = if point.scheme == SchemeId::Hspread {
        hspread_fixed(&sc, params.shares)?
    } else {
        let mut rng = trial_rng(cfg, point, trial);
        send_packet(&sc.topology, &sc.hops, sc.source, point.scheme, &params, &mut rng)?
    };
    let outcome = packet_outcome(&routes, params.threshold, &sc.hole, &sc.topology, cfg.adversary)?;
    Ok((sc, TrialResult { routes, outcome }))
}

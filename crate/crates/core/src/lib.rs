//! Simulation of secret-shared data delivery in heterogeneous sensor
//! networks.
//!
//! A source splits each packet into M Shamir shares, any T of which recover
//! it. Every share first takes a randomized walk of at most TTL relays and is
//! then routed along min-hop paths to the sink. A black hole captures every
//! share relayed inside its disk; a packet is compromised when at least T of
//! its shares are captured.
//!
//! Modules, bottom up:
//!
//! * [`topology`] deploys sink, H-sensors and L-sensors and builds the
//!   min-hop field toward the sink.
//! * [`clustering`] groups L-sensors around H-sensors and derives
//!   c-neighbor pairs.
//! * [`crypto`] holds the curve arithmetic, pairwise key agreement and the
//!   key storage models.
//! * [`sharing`] splits and reconstructs packets.
//! * [`routing`] implements the propagation schemes and the disjoint-path
//!   baseline.
//! * [`adversary`] decides interception.
//! * [`experiments`] runs Monte Carlo sweeps and writes CSV.

pub mod adversary;
pub mod clustering;
pub mod crypto;
pub mod error;
pub mod experiments;
pub mod routing;
pub mod sharing;
pub mod topology;

pub use error::{Error, Result};
pub use routing::SchemeId;
pub use topology::{NodeId, Position, Topology, SINK};

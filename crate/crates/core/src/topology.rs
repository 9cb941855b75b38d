//! Deployed sensor fields.
//!
//! A [`Topology`] is an immutable snapshot of a deployment: the sink sits at
//! the origin with id 0, followed by the H-sensors and then the L-sensors.
//! Two nodes are neighbors iff their Euclidean distance is at most the
//! communication radius (unit-disk model).

use std::collections::VecDeque;
use std::fmt;
use std::io::{BufRead, Write};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{parse_err, Error, Result};

pub type NodeId = usize;

/// The sink always has id 0.
pub const SINK: NodeId = 0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64) -> Self {
        Position { x, y }
    }

    pub fn distance_sq(&self, other: &Position) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn distance(&self, other: &Position) -> f64 {
        self.distance_sq(other).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    LSensor,
    HSensor,
    Sink,
}

impl NodeKind {
    fn tag(self) -> &'static str {
        match self {
            NodeKind::LSensor => "L",
            NodeKind::HSensor => "H",
            NodeKind::Sink => "S",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "L" => Some(NodeKind::LSensor),
            "H" => Some(NodeKind::HSensor),
            "S" => Some(NodeKind::Sink),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub kind: NodeKind,
    pub pos: Position,
}

/// Axis-aligned deployment rectangle `[0, width] x [0, height]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldRect {
    pub width: f64,
    pub height: f64,
}

impl FieldRect {
    pub const fn new(width: f64, height: f64) -> Self {
        FieldRect { width, height }
    }

    pub fn contains(&self, p: &Position) -> bool {
        (0.0..=self.width).contains(&p.x) && (0.0..=self.height).contains(&p.y)
    }

    pub fn diagonal(&self) -> f64 {
        self.width.hypot(self.height)
    }

    fn validate(&self) -> Result<()> {
        if !(self.width > 0.0 && self.height > 0.0) || !self.width.is_finite() || !self.height.is_finite() {
            return Err(Error::Config(format!(
                "field must have positive finite area, got {} x {}",
                self.width, self.height
            )));
        }
        Ok(())
    }
}

impl Default for FieldRect {
    fn default() -> Self {
        FieldRect::new(100.0, 100.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Topology {
    nodes: Vec<Node>,
    radius: f64,
    field: FieldRect,
    seed: u64,
    adjacency: Vec<Vec<NodeId>>,
}

/// Deploy a random field: the sink at the origin, then `n_h` H-sensors and
/// `n_l` L-sensors placed uniformly from a stream seeded with `seed`.
pub fn generate_field(n_l: usize, n_h: usize, field: FieldRect, radius: f64, seed: u64) -> Result<Topology> {
    field.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes = Vec::with_capacity(1 + n_l + n_h);
    nodes.push(Node {
        id: SINK,
        kind: NodeKind::Sink,
        pos: Position::new(0.0, 0.0),
    });
    for i in 0..n_h + n_l {
        let kind = if i < n_h { NodeKind::HSensor } else { NodeKind::LSensor };
        let pos = Position::new(rng.random::<f64>() * field.width, rng.random::<f64>() * field.height);
        nodes.push(Node { id: i + 1, kind, pos });
    }
    Topology::from_nodes(nodes, field, radius, seed)
}

impl Topology {
    /// Build a topology from explicit nodes. Ids must be dense and in order,
    /// with exactly one sink at id 0.
    pub fn from_nodes(nodes: Vec<Node>, field: FieldRect, radius: f64, seed: u64) -> Result<Topology> {
        field.validate()?;
        if radius <= 0.0 || !radius.is_finite() {
            return Err(Error::Config(format!("radius must be positive, got {radius}")));
        }
        if nodes.is_empty() || nodes[0].kind != NodeKind::Sink {
            return Err(Error::Config("node 0 must be the sink".into()));
        }
        for (i, n) in nodes.iter().enumerate() {
            if n.id != i {
                return Err(Error::Config(format!("node ids must be dense, found {} at index {i}", n.id)));
            }
            if i > 0 && n.kind == NodeKind::Sink {
                return Err(Error::Config(format!("second sink at id {i}")));
            }
            if !field.contains(&n.pos) {
                return Err(Error::Config(format!(
                    "node {i} at ({}, {}) lies outside the field",
                    n.pos.x, n.pos.y
                )));
            }
        }
        let adjacency = unit_disk_adjacency(&nodes, field, radius);
        Ok(Topology {
            nodes,
            radius,
            field,
            seed,
            adjacency,
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn field(&self) -> FieldRect {
        self.field
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn node(&self, id: NodeId) -> Result<&Node> {
        self.nodes.get(id).ok_or(Error::UnknownNode(id))
    }

    pub fn position(&self, id: NodeId) -> Position {
        self.nodes[id].pos
    }

    pub fn kind(&self, id: NodeId) -> NodeKind {
        self.nodes[id].kind
    }

    /// Sorted neighbor ids of `id`.
    pub fn neighbors(&self, id: NodeId) -> Result<&[NodeId]> {
        self.adjacency.get(id).map(Vec::as_slice).ok_or(Error::UnknownNode(id))
    }

    /// Unchecked variant for hot loops where `id` is known to be valid.
    pub(crate) fn adj(&self, id: NodeId) -> &[NodeId] {
        &self.adjacency[id]
    }

    pub fn is_adjacent(&self, a: NodeId, b: NodeId) -> bool {
        self.adjacency.get(a).is_some_and(|n| n.binary_search(&b).is_ok())
    }

    pub fn mean_degree(&self) -> f64 {
        if self.nodes.is_empty() {
            return 0.0;
        }
        let total: usize = self.adjacency.iter().map(Vec::len).sum();
        total as f64 / self.nodes.len() as f64
    }

    pub fn ids_of_kind(&self, kind: NodeKind) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes.iter().filter(move |n| n.kind == kind).map(|n| n.id)
    }

    /// The non-sink node closest to `target`, lowest id on ties.
    pub fn nearest_sensor(&self, target: Position) -> Option<NodeId> {
        let mut best: Option<(f64, NodeId)> = None;
        for n in &self.nodes[1..] {
            let d = n.pos.distance_sq(&target);
            if best.is_none_or(|(bd, _)| d < bd) {
                best = Some((d, n.id));
            }
        }
        best.map(|(_, id)| id)
    }

    /// Write the line-oriented dump: a `field W H radius R seed S` header and
    /// one `id kind x y` line per node. Floats use the shortest round-trip
    /// representation so `load` reproduces the topology bit for bit.
    pub fn dump<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "field {} {} radius {} seed {}",
            self.field.width, self.field.height, self.radius, self.seed
        )?;
        for n in &self.nodes {
            writeln!(out, "{} {} {} {}", n.id, n.kind.tag(), n.pos.x, n.pos.y)?;
        }
        Ok(())
    }

    pub fn load<R: BufRead>(input: R) -> Result<Topology> {
        let mut lines = input.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty topology file"))?;
        let header = header?;
        let tok: Vec<&str> = header.split_whitespace().collect();
        if tok.len() != 7 || tok[0] != "field" || tok[3] != "radius" || tok[5] != "seed" {
            return Err(parse_err(1, format!("bad header {header:?}")));
        }
        let num = |s: &str, line: usize| s.parse::<f64>().map_err(|e| parse_err(line, format!("{s:?}: {e}")));
        let field = FieldRect::new(num(tok[1], 1)?, num(tok[2], 1)?);
        let radius = num(tok[4], 1)?;
        let seed = tok[6].parse::<u64>().map_err(|e| parse_err(1, format!("seed: {e}")))?;

        let mut nodes = Vec::new();
        for (idx, line) in lines {
            let line = line?;
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 4 {
                return Err(parse_err(lineno, "expected `id kind x y`"));
            }
            let id = t[0].parse::<usize>().map_err(|e| parse_err(lineno, format!("id: {e}")))?;
            let kind = NodeKind::from_tag(t[1]).ok_or_else(|| parse_err(lineno, format!("unknown kind {:?}", t[1])))?;
            let pos = Position::new(num(t[2], lineno)?, num(t[3], lineno)?);
            nodes.push(Node { id, kind, pos });
        }
        Topology::from_nodes(nodes, field, radius, seed)
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} nodes in {}x{} field, radius {}, mean degree {:.2}",
            self.nodes.len(),
            self.field.width,
            self.field.height,
            self.radius,
            self.mean_degree()
        )
    }
}

// Bucket nodes into radius-sized cells so only the 3x3 surrounding cells
// need a distance check.
fn unit_disk_adjacency(nodes: &[Node], field: FieldRect, radius: f64) -> Vec<Vec<NodeId>> {
    let cols = ((field.width / radius).floor() as usize + 1).max(1);
    let rows = ((field.height / radius).floor() as usize + 1).max(1);
    let cell_of = |p: &Position| {
        let cx = ((p.x / radius) as usize).min(cols - 1);
        let cy = ((p.y / radius) as usize).min(rows - 1);
        (cx, cy)
    };
    let mut cells: Vec<Vec<NodeId>> = vec![Vec::new(); cols * rows];
    for n in nodes {
        let (cx, cy) = cell_of(&n.pos);
        cells[cy * cols + cx].push(n.id);
    }

    let r2 = radius * radius;
    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); nodes.len()];
    for n in nodes {
        let (cx, cy) = cell_of(&n.pos);
        for ny in cy.saturating_sub(1)..=(cy + 1).min(rows - 1) {
            for nx in cx.saturating_sub(1)..=(cx + 1).min(cols - 1) {
                for &other in &cells[ny * cols + nx] {
                    if other != n.id && n.pos.distance_sq(&nodes[other].pos) <= r2 {
                        adjacency[n.id].push(other);
                    }
                }
            }
        }
        adjacency[n.id].sort_unstable();
    }
    adjacency
}

/// Hop counts to the sink and one min-hop parent per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopField {
    hops: Vec<Option<u32>>,
    parent: Vec<Option<NodeId>>,
}

impl HopField {
    /// `None` marks a node with no path to the sink.
    pub fn hops(&self, id: NodeId) -> Option<u32> {
        self.hops[id]
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    pub fn is_reachable(&self, id: NodeId) -> bool {
        self.hops[id].is_some()
    }

    pub fn len(&self) -> usize {
        self.hops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hops.is_empty()
    }

    pub fn unreachable_count(&self) -> usize {
        self.hops.iter().filter(|h| h.is_none()).count()
    }
}

/// Breadth-first hop counts from the sink. Each reachable node's parent is
/// drawn uniformly from its neighbors one hop closer to the sink.
pub fn build_sink_tree<R: Rng + ?Sized>(t: &Topology, rng: &mut R) -> HopField {
    let n = t.len();
    let mut hops: Vec<Option<u32>> = vec![None; n];
    let mut parent = vec![None; n];
    if n == 0 {
        return HopField { hops, parent };
    }
    hops[SINK] = Some(0);
    let mut queue = VecDeque::from([SINK]);
    while let Some(u) = queue.pop_front() {
        let next = hops[u].map(|h| h + 1);
        for &v in t.adj(u) {
            if hops[v].is_none() {
                hops[v] = next;
                queue.push_back(v);
            }
        }
    }

    let mut closer = Vec::new();
    for v in 1..n {
        let Some(h) = hops[v] else { continue };
        closer.clear();
        closer.extend(t.adj(v).iter().copied().filter(|&u| hops[u] == Some(h - 1)));
        parent[v] = closer.choose(rng).copied();
    }
    HopField { hops, parent }
}

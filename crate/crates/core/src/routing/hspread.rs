//! Deterministic node-disjoint multipath baseline.
//!
//! Each node `v` is split into `v_in -> v_out` with unit capacity (the
//! source and sink are uncapped), every radio link becomes a pair of unit
//! arcs, and shortest augmenting paths (Edmonds-Karp) find up to M
//! node-disjoint source-to-sink routes. The same topology always yields the
//! same routes.

use std::collections::VecDeque;

use crate::error::Result;
use crate::topology::{NodeId, Topology, SINK};

struct FlowNet {
    to: Vec<usize>,
    cap: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(vertices: usize) -> Self {
        FlowNet {
            to: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); vertices],
        }
    }

    // arc e and its residual twin e ^ 1
    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.to.len());
        self.to.push(to);
        self.cap.push(cap);
        self.out[to].push(self.to.len());
        self.to.push(from);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via: Vec<Option<usize>> = vec![None; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &e in &self.out[u] {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    via[v] = Some(e);
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while let Some(e) = via[v] {
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.to[e ^ 1];
        }
        true
    }
}

const fn v_in(v: NodeId) -> usize {
    2 * v
}

const fn v_out(v: NodeId) -> usize {
    2 * v + 1
}

/// Up to `limit` node-disjoint routes from `source` to the sink, shortest
/// first (ties broken by node ids). Each route starts at `source` and ends
/// at the sink.
pub fn disjoint_paths(t: &Topology, source: NodeId, limit: usize) -> Result<Vec<Vec<NodeId>>> {
    t.node(source)?;
    if source == SINK {
        return Ok(vec![vec![SINK]; limit.min(1)]);
    }
    let n = t.len();
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let cap = if v == source || v == SINK { limit as u32 } else { 1 };
        net.add_arc(v_in(v), v_out(v), cap);
    }
    for u in 0..n {
        for &v in t.adj(u) {
            net.add_arc(v_out(u), v_in(v), 1);
        }
    }
    let initial = net.cap.clone();

    let (s, sink) = (v_out(source), v_in(SINK));
    let mut found = 0;
    while found < limit && net.augment(s, sink) {
        found += 1;
    }

    // Flow left on each forward arc, consumed as paths are peeled off.
    let mut flow: Vec<u32> = (0..net.cap.len())
        .map(|e| if e % 2 == 0 { initial[e] - net.cap[e] } else { 0 })
        .collect();
    let mut paths = Vec::with_capacity(found);
    for _ in 0..found {
        let mut path = vec![source];
        let mut at = s;
        while let Some(&e) = net.out[at].iter().find(|&&e| e % 2 == 0 && flow[e] > 0) {
            flow[e] -= 1;
            let v = net.to[e] / 2;
            // drop any loop left behind by cancelled augmentations
            if let Some(pos) = path.iter().position(|&p| p == v) {
                path.truncate(pos + 1);
            } else {
                path.push(v);
            }
            if v == SINK {
                break;
            }
            let through = net.out[v_in(v)]
                .iter()
                .copied()
                .find(|&e| e % 2 == 0 && net.to[e] == v_out(v))
                .expect("split arc exists");
            flow[through] = flow[through].saturating_sub(1);
            at = v_out(v);
        }
        if path.last() == Some(&SINK) {
            paths.push(path);
        }
    }
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(paths)
}

/// Routes for `m` shares: the disjoint paths, reused round-robin when
/// fewer than `m` exist. Empty when the sink is unreachable.
pub fn hspread_routes(t: &Topology, source: NodeId, m: usize) -> Result<Vec<Vec<NodeId>>> {
    let paths = disjoint_paths(t, source, m)?;
    if paths.is_empty() {
        return Ok(Vec::new());
    }
    Ok((0..m).map(|i| paths[i % paths.len()].clone()).collect())
}

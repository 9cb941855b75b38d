//! Helpers shared by the integration tests.
#![allow(dead_code)]

use hsnsim::adversary::BlackHole;
use hsnsim::routing::SchemeId;
use hsnsim::topology::{FieldRect, Node, NodeKind, Topology};
use hsnsim::{Position, SINK};

/// Node 0 is the sink; the rest are L-sensors at the given points.
pub fn micro_topology(points: &[(f64, f64)], radius: f64) -> Topology {
    let nodes = points
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| Node {
            id: i,
            kind: if i == 0 { NodeKind::Sink } else { NodeKind::LSensor },
            pos: Position::new(x, y),
        })
        .collect();
    Topology::from_nodes(nodes, FieldRect::new(10.0, 10.0), radius, 0).unwrap()
}

/// Standard error of a difference of two independent estimates.
pub fn pooled(a: f64, b: f64) -> f64 {
    (a * a + b * b).sqrt()
}

/// Probability that one share from `source` is intercepted, enumerating
/// every random choice of the walk and the min-hop descent.
pub fn exact_share_intercept(
    t: &Topology,
    hops: &dyn Fn(usize) -> Option<u32>,
    source: usize,
    ttl: u32,
    scheme: SchemeId,
    hole: &BlackHole,
) -> f64 {
    let inside = |v: usize| v != SINK && hole.contains(&t.position(v));

    fn descend(t: &Topology, hops: &dyn Fn(usize) -> Option<u32>, at: usize, inside: &dyn Fn(usize) -> bool) -> f64 {
        if inside(at) {
            return 1.0;
        }
        let Some(h) = hops(at) else { return 0.0 };
        if h == 0 {
            return 0.0;
        }
        let closer: Vec<usize> = t
            .neighbors(at)
            .unwrap()
            .iter()
            .copied()
            .filter(|&v| hops(v) == Some(h - 1))
            .collect();
        closer.iter().map(|&v| descend(t, hops, v, inside)).sum::<f64>() / closer.len() as f64
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        t: &Topology,
        hops: &dyn Fn(usize) -> Option<u32>,
        path: &mut Vec<usize>,
        left: u32,
        scheme: SchemeId,
        caught: bool,
        inside: &dyn Fn(usize) -> bool,
    ) -> f64 {
        let at = *path.last().unwrap();
        let caught = caught || inside(at);
        if left == 0 || at == SINK {
            return if caught { 1.0 } else { descend(t, hops, at, inside) };
        }
        let nbrs: Vec<usize> = t
            .neighbors(at)
            .unwrap()
            .iter()
            .copied()
            .filter(|v| scheme != SchemeId::Nrrp || !path[..path.len() - 1].contains(v))
            .collect();
        if nbrs.is_empty() {
            // dropped shares count as neither intercepted nor delivered
            return 0.0;
        }
        let mut total = 0.0;
        for &v in &nbrs {
            path.push(v);
            total += walk(t, hops, path, left - 1, scheme, caught, inside);
            path.pop();
        }
        total / nbrs.len() as f64
    }

    walk(t, hops, &mut vec![source], ttl, scheme, false, &inside)
}

/// P(at least `t` of `m` independent shares intercepted).
pub fn at_least(t: usize, m: usize, p: f64) -> f64 {
    let choose = |n: usize, k: usize| (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
    (t..=m).map(|k| choose(m, k) * p.powi(k as i32) * (1.0 - p).powi((m - k) as i32)).sum()
}


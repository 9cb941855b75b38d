//! H-sensor-headed clusters, their intra-cluster routing trees, and the
//! c-neighbor pairs (L-sensor parent/child) that set up pairwise keys.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::topology::{NodeId, NodeKind, Topology};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub head: NodeId,
    /// L-sensor ids, ascending.
    pub members: Vec<NodeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterTree {
    pub head: NodeId,
    /// member -> parent (the head or another member)
    pub parent: BTreeMap<NodeId, NodeId>,
    /// Members with no in-cluster path to the head, attached to it directly.
    pub virtual_edges: BTreeSet<NodeId>,
}

impl ClusterTree {
    pub fn is_virtual(&self, member: NodeId) -> bool {
        self.virtual_edges.contains(&member)
    }

    /// Depth of `member` below the head, following parent links.
    pub fn depth(&self, member: NodeId) -> usize {
        let mut d = 0;
        let mut cur = member;
        while cur != self.head {
            cur = self.parent[&cur];
            d += 1;
        }
        d
    }
}

/// Unordered node pair in canonical form, `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CNeighborPair {
    a: NodeId,
    b: NodeId,
}

impl CNeighborPair {
    pub fn new(u: NodeId, v: NodeId) -> Self {
        CNeighborPair { a: u.min(v), b: u.max(v) }
    }

    /// The smaller id; it initiates key establishment.
    pub fn a(&self) -> NodeId {
        self.a
    }

    pub fn b(&self) -> NodeId {
        self.b
    }
}

/// Assign every L-sensor to its nearest H-sensor (lower head id on ties).
/// One cluster per H-sensor, in ascending head order; a head may end up
/// with no members.
pub fn form_clusters(t: &Topology) -> Result<Vec<Cluster>> {
    let heads: Vec<NodeId> = t.ids_of_kind(NodeKind::HSensor).collect();
    if heads.is_empty() {
        return Err(Error::Config("clustering needs at least one H-sensor".into()));
    }
    let mut clusters: Vec<Cluster> = heads
        .iter()
        .map(|&head| Cluster {
            head,
            members: Vec::new(),
        })
        .collect();
    for l in t.ids_of_kind(NodeKind::LSensor) {
        let pos = t.position(l);
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, &h) in heads.iter().enumerate() {
            let d = pos.distance_sq(&t.position(h));
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        clusters[best].members.push(l);
    }
    Ok(clusters)
}

/// Breadth-first tree rooted at the head over the subgraph induced by the
/// head and its members.
pub fn build_cluster_tree(c: &Cluster, t: &Topology) -> ClusterTree {
    let in_cluster: BTreeSet<NodeId> = c.members.iter().copied().chain([c.head]).collect();
    let mut parent = BTreeMap::new();
    let mut seen = BTreeSet::from([c.head]);
    let mut queue = VecDeque::from([c.head]);
    while let Some(u) = queue.pop_front() {
        for &v in t.adj(u) {
            if in_cluster.contains(&v) && seen.insert(v) {
                parent.insert(v, u);
                queue.push_back(v);
            }
        }
    }
    let mut virtual_edges = BTreeSet::new();
    for &m in &c.members {
        if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(m) {
            e.insert(c.head);
            virtual_edges.insert(m);
        }
    }
    ClusterTree {
        head: c.head,
        parent,
        virtual_edges,
    }
}

/// One pair per tree edge joining two L-sensors. Head-member edges are left
/// out; those keys are handled through the head's certificates.
pub fn c_neighbor_pairs(trees: &[ClusterTree]) -> BTreeSet<CNeighborPair> {
    trees
        .iter()
        .flat_map(|tree| {
            tree.parent
                .iter()
                .filter(move |(_, &p)| p != tree.head)
                .map(|(&m, &p)| CNeighborPair::new(m, p))
        })
        .collect()
}

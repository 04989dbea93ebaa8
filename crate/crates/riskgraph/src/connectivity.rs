//! Local and global vertex/edge connectivity via unit-capacity maximum flow,
//! with disjoint-path witnesses extracted by flow decomposition.
//!
//! Edge connectivity λ(u,v) runs on the network with two opposite unit arcs
//! per undirected edge. Vertex connectivity κ(u,v) splits every vertex into
//! an in/out pair joined by a unit arc, so each internal vertex can carry at
//! most one path. Global values follow the identities
//! λ(G) = min λ(u,v) and κ(G) = min κ(u,v); for κ the min ranges over
//! non-adjacent pairs, with complete graphs fixed at n−1.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, Path, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectivityError {
    #[error("local connectivity requires two distinct vertices")]
    SameVertex,
    #[error("vertex id {0} is out of range")]
    InvalidVertex(VertexId),
    #[error("global connectivity requires at least 2 vertices")]
    TooSmall,
}

const NO_ARC: usize = usize::MAX;

/// Residual network with unit capacities. Arcs are stored in pairs: arc `a`
/// and `a ^ 1` are mutual reverses.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u32>,
    orig: Vec<u32>,
}

impl FlowNetwork {
    fn with_nodes(n: usize) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            orig: Vec::new(),
        }
    }

    fn add_arc(&mut self, u: usize, v: usize, cap: u32, rev_cap: u32) {
        let a = self.to.len();
        self.to.push(v);
        self.cap.push(cap);
        self.adj[u].push(a);
        self.to.push(u);
        self.cap.push(rev_cap);
        self.adj[v].push(a + 1);
        self.orig.push(cap);
        self.orig.push(rev_cap);
    }

    /// Network for edge connectivity: each undirected edge becomes two
    /// opposite arcs of capacity 1 (each acting as the other's reverse).
    pub fn edge_network(g: &Graph) -> Self {
        let mut net = Self::with_nodes(g.vertex_count());
        for (u, v) in g.edges() {
            net.add_arc(u, v, 1, 1);
        }
        net
    }

    /// Network for vertex connectivity: vertex `v` splits into `in = 2v` and
    /// `out = 2v + 1` joined by a unit arc; each edge {u,v} becomes the arcs
    /// `u_out → v_in` and `v_out → u_in`, capacity 1 each.
    pub fn vertex_split_network(g: &Graph) -> Self {
        let mut net = Self::with_nodes(2 * g.vertex_count());
        for v in g.vertices() {
            net.add_arc(2 * v, 2 * v + 1, 1, 0);
        }
        for (u, v) in g.edges() {
            net.add_arc(2 * u + 1, 2 * v, 1, 0);
            net.add_arc(2 * v + 1, 2 * u, 1, 0);
        }
        net
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Number of capacity-bearing arcs (reverse bookkeeping arcs excluded).
    pub fn capacity_arc_count(&self) -> usize {
        self.orig.iter().filter(|&&c| c > 0).count()
    }

    fn reset(&mut self) {
        self.cap.copy_from_slice(&self.orig);
    }

    /// Shortest-augmenting-path max flow from `s` to `t`, stopping early once
    /// the value reaches `limit`. Capacities are restored before the run, so
    /// the network can be reused across pairs.
    fn max_flow_capped(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        self.reset();
        let mut value = 0u32;
        let mut parent = vec![NO_ARC; self.node_count()];
        while value < limit {
            parent.fill(NO_ARC);
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && parent[v] == NO_ARC && v != s {
                        parent[v] = a;
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if parent[t] == NO_ARC {
                break;
            }
            let mut bottleneck = u32::MAX;
            let mut v = t;
            while v != s {
                let a = parent[v];
                bottleneck = bottleneck.min(self.cap[a]);
                v = self.to[a ^ 1];
            }
            let mut v = t;
            while v != s {
                let a = parent[v];
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                v = self.to[a ^ 1];
            }
            value += bottleneck;
        }
        value
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u32 {
        self.max_flow_capped(s, t, u32::MAX)
    }

    /// Splits the current flow into `value` arc walks from `s` to `t`,
    /// following the lowest-id saturated arc at each step.
    fn decompose(&self, s: usize, t: usize, value: u32) -> Vec<Vec<usize>> {
        let mut used: Vec<bool> = (0..self.to.len())
            .map(|a| self.orig[a] > 0 && self.cap[a] < self.orig[a])
            .collect();
        let mut walks = Vec::with_capacity(value as usize);
        for _ in 0..value {
            let mut seq = vec![s];
            let mut cur = s;
            while cur != t {
                let a = self.adj[cur]
                    .iter()
                    .copied()
                    .find(|&a| used[a])
                    .expect("flow conservation guarantees an unconsumed outgoing arc");
                used[a] = false;
                cur = self.to[a];
                seq.push(cur);
            }
            walks.push(seq);
        }
        walks
    }
}

fn check_pair(g: &Graph, u: VertexId, v: VertexId) -> Result<(), ConnectivityError> {
    for w in [u, v] {
        if !g.contains(w) {
            return Err(ConnectivityError::InvalidVertex(w));
        }
    }
    if u == v {
        return Err(ConnectivityError::SameVertex);
    }
    Ok(())
}

/// Removes cycles from a vertex walk, keeping endpoints: whenever a vertex
/// repeats, the loop between the two visits is cut out.
fn erase_loops(seq: &[VertexId], n: usize) -> Vec<VertexId> {
    let mut pos: Vec<Option<usize>> = vec![None; n];
    let mut out: Vec<VertexId> = Vec::with_capacity(seq.len());
    for &v in seq {
        match pos[v] {
            Some(i) => {
                for w in out.drain(i + 1..) {
                    pos[w] = None;
                }
            }
            None => {
                pos[v] = Some(out.len());
                out.push(v);
            }
        }
    }
    out
}

/// Local edge connectivity λ(u,v): the maximum number of pairwise
/// edge-disjoint u–v paths, computed as a unit-capacity max flow.
pub fn local_edge_connectivity(
    g: &Graph,
    u: VertexId,
    v: VertexId,
) -> Result<usize, ConnectivityError> {
    check_pair(g, u, v)?;
    let mut net = FlowNetwork::edge_network(g);
    Ok(net.max_flow(u, v) as usize)
}

/// Local vertex connectivity κ(u,v): the maximum number of u–v paths sharing
/// no vertex except the endpoints, computed in the vertex-split network.
pub fn local_vertex_connectivity(
    g: &Graph,
    u: VertexId,
    v: VertexId,
) -> Result<usize, ConnectivityError> {
    check_pair(g, u, v)?;
    let mut net = FlowNetwork::vertex_split_network(g);
    Ok(net.max_flow(2 * u + 1, 2 * v) as usize)
}

/// Global edge connectivity λ(G) = min over pairs of λ(u,v).
///
/// The minimizing cut separates vertex 0 from somebody, so a fixed pivot
/// against all other vertices suffices: n−1 flow runs instead of O(n²).
pub fn edge_connectivity(g: &Graph) -> Result<usize, ConnectivityError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(ConnectivityError::TooSmall);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut net = FlowNetwork::edge_network(g);
    let mut best = u32::MAX;
    for v in 1..n {
        best = best.min(net.max_flow_capped(0, v, best));
    }
    Ok(best as usize)
}

/// Global vertex connectivity κ(G) = min over non-adjacent pairs of κ(u,v);
/// complete graphs return n−1 by convention.
pub fn vertex_connectivity(g: &Graph) -> Result<usize, ConnectivityError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(ConnectivityError::TooSmall);
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    let mut net = FlowNetwork::vertex_split_network(g);
    let mut best = u32::MAX;
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) {
                best = best.min(net.max_flow_capped(2 * u + 1, 2 * v, best));
            }
        }
    }
    Ok(best as usize)
}

/// `true` iff `g` is connected and survives removal of any k−1 edges.
/// A single vertex is vacuously k-edge-connected for every k.
pub fn is_k_edge_connected(g: &Graph, k: usize) -> bool {
    if !g.is_connected() {
        return false;
    }
    if g.vertex_count() == 1 || k == 0 {
        return true;
    }
    edge_connectivity(g).map(|lambda| lambda >= k).unwrap_or(false)
}

/// `true` iff `|V| ≥ k+1` and `g` survives removal of any k−1 vertices.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if k == 0 {
        return n >= 1;
    }
    if n < k + 1 {
        return false;
    }
    vertex_connectivity(g).map(|kappa| kappa >= k).unwrap_or(false)
}

/// Exactly λ(u,v) pairwise edge-disjoint u–v paths, extracted from a maximum
/// flow by walking saturated arcs (lowest arc id first) and erasing loops.
pub fn edge_disjoint_paths(
    g: &Graph,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<Path>, ConnectivityError> {
    check_pair(g, u, v)?;
    let mut net = FlowNetwork::edge_network(g);
    let value = net.max_flow(u, v);
    let paths = net
        .decompose(u, v, value)
        .into_iter()
        .map(|walk| Path::new(erase_loops(&walk, g.vertex_count())))
        .collect();
    Ok(paths)
}

/// Exactly κ(u,v) u–v paths that are pairwise vertex-disjoint except at the
/// endpoints, from a maximum flow in the vertex-split network.
pub fn vertex_disjoint_paths(
    g: &Graph,
    u: VertexId,
    v: VertexId,
) -> Result<Vec<Path>, ConnectivityError> {
    check_pair(g, u, v)?;
    let mut net = FlowNetwork::vertex_split_network(g);
    let value = net.max_flow(2 * u + 1, 2 * v);
    let paths = net
        .decompose(2 * u + 1, 2 * v, value)
        .into_iter()
        .map(|walk| {
            let mut mapped: Vec<VertexId> = Vec::with_capacity(walk.len() / 2 + 1);
            for node in walk {
                let vertex = node / 2;
                if mapped.last() != Some(&vertex) {
                    mapped.push(vertex);
                }
            }
            Path::new(erase_loops(&mapped, g.vertex_count()))
        })
        .collect();
    Ok(paths)
}

/// Local connectivity values for one vertex pair, with optional witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct PairConnectivity {
    pub u: VertexId,
    pub v: VertexId,
    pub kappa: usize,
    pub lambda: usize,
    pub vertex_paths: Option<Vec<Path>>,
    pub edge_paths: Option<Vec<Path>>,
}

/// Global connectivity summary plus any requested per-pair results.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectivityReport {
    pub kappa: usize,
    pub lambda: usize,
    pub min_degree: usize,
    pub pairs: Vec<PairConnectivity>,
}

/// Computes κ(G), λ(G), δ(G) and, for each requested pair, the local values
/// (with disjoint-path witnesses when `witnesses` is set).
pub fn analyze(
    g: &Graph,
    pairs: &[(VertexId, VertexId)],
    witnesses: bool,
) -> Result<ConnectivityReport, ConnectivityError> {
    let kappa = vertex_connectivity(g)?;
    let lambda = edge_connectivity(g)?;
    let min_degree = g.min_degree().unwrap_or(0);
    debug_assert!(kappa <= lambda && lambda <= min_degree);
    let mut out = Vec::with_capacity(pairs.len());
    for &(u, v) in pairs {
        let kappa_uv = local_vertex_connectivity(g, u, v)?;
        let lambda_uv = local_edge_connectivity(g, u, v)?;
        let (vertex_paths, edge_paths) = if witnesses {
            (
                Some(vertex_disjoint_paths(g, u, v)?),
                Some(edge_disjoint_paths(g, u, v)?),
            )
        } else {
            (None, None)
        };
        out.push(PairConnectivity {
            u,
            v,
            kappa: kappa_uv,
            lambda: lambda_uv,
            vertex_paths,
            edge_paths,
        });
    }
    Ok(ConnectivityReport {
        kappa,
        lambda,
        min_degree,
        pairs: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn cycle4() -> Graph {
        Graph::from_id_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_id_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        Graph::from_id_edges(n, &edges).unwrap()
    }

    fn two_triangles() -> Graph {
        Graph::from_id_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap()
    }

    #[test]
    fn split_network_shape() {
        let g = cycle4();
        let net = FlowNetwork::vertex_split_network(&g);
        assert_eq!(net.node_count(), 2 * g.vertex_count());
        assert_eq!(net.capacity_arc_count(), 2 * g.edge_count() + g.vertex_count());
    }

    #[test]
    fn local_edge_connectivity_values() {
        let line = path3();
        assert_eq!(local_edge_connectivity(&line, 0, 2).unwrap(), 1);
        let c4 = cycle4();
        for u in 0..4 {
            for v in (u + 1)..4 {
                assert_eq!(local_edge_connectivity(&c4, u, v).unwrap(), 2);
            }
        }
        let split = two_triangles();
        assert_eq!(local_edge_connectivity(&split, 0, 4).unwrap(), 0);
    }

    #[test]
    fn local_vertex_connectivity_values() {
        let c4 = cycle4();
        assert_eq!(local_vertex_connectivity(&c4, 0, 2).unwrap(), 2);
        let line = path3();
        assert_eq!(local_vertex_connectivity(&line, 0, 2).unwrap(), 1);
        let k4 = complete(4);
        for u in 0..4 {
            for v in (u + 1)..4 {
                assert_eq!(local_vertex_connectivity(&k4, u, v).unwrap(), 3);
            }
        }
    }

    #[test]
    fn pair_validation_errors() {
        let g = path3();
        assert_eq!(
            local_edge_connectivity(&g, 1, 1).unwrap_err(),
            ConnectivityError::SameVertex
        );
        assert_eq!(
            local_vertex_connectivity(&g, 0, 9).unwrap_err(),
            ConnectivityError::InvalidVertex(9)
        );
    }

    #[test]
    fn global_edge_connectivity_values() {
        assert_eq!(edge_connectivity(&cycle4()).unwrap(), 2);
        let tree = Graph::from_id_edges(5, &[(0, 1), (0, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(edge_connectivity(&tree).unwrap(), 1);
        assert_eq!(edge_connectivity(&two_triangles()).unwrap(), 0);
        let single = Graph::from_id_edges(1, &[]).unwrap();
        assert_eq!(edge_connectivity(&single).unwrap_err(), ConnectivityError::TooSmall);
    }

    #[test]
    fn global_vertex_connectivity_values() {
        assert_eq!(vertex_connectivity(&complete(4)).unwrap(), 3);
        assert_eq!(vertex_connectivity(&cycle4()).unwrap(), 2);
        let star = Graph::from_id_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(vertex_connectivity(&star).unwrap(), 1);
        assert_eq!(vertex_connectivity(&two_triangles()).unwrap(), 0);
    }

    #[test]
    fn k_connectivity_predicates() {
        let c4 = cycle4();
        assert!(is_k_edge_connected(&c4, 2));
        assert!(!is_k_edge_connected(&c4, 3));
        assert!(is_k_connected(&c4, 2));
        assert!(!is_k_connected(&c4, 3));
        let tri = complete(3);
        assert!(is_k_connected(&tri, 2));
        assert!(!is_k_connected(&tri, 3)); // size clause: n < k + 1
        assert!(!is_k_edge_connected(&two_triangles(), 1));
    }

    fn assert_edge_disjoint(paths: &[Path]) {
        let mut seen = BTreeSet::new();
        for p in paths {
            for w in p.vertices().windows(2) {
                let e = (w[0].min(w[1]), w[0].max(w[1]));
                assert!(seen.insert(e), "edge {e:?} reused across witness paths");
            }
        }
    }

    fn assert_internally_disjoint(paths: &[Path]) {
        let mut seen = BTreeSet::new();
        for p in paths {
            let vs = p.vertices();
            for &x in &vs[1..vs.len().saturating_sub(1)] {
                assert!(seen.insert(x), "internal vertex {x} reused across witness paths");
            }
        }
    }

    #[test]
    fn edge_witnesses_on_cycle() {
        let c4 = cycle4();
        let paths = edge_disjoint_paths(&c4, 0, 2).unwrap();
        assert_eq!(paths.len(), 2);
        for p in &paths {
            assert!(c4.validate_path(p));
            assert_eq!(p.endpoints(), Some((0, 2)));
        }
        assert_edge_disjoint(&paths);
    }

    #[test]
    fn edge_witnesses_trivial_cases() {
        let line = path3();
        let paths = edge_disjoint_paths(&line, 0, 2).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].vertices(), &[0, 1, 2]);
        let split = two_triangles();
        assert!(edge_disjoint_paths(&split, 0, 3).unwrap().is_empty());
    }

    #[test]
    fn vertex_witnesses_on_k4() {
        let k4 = complete(4);
        let paths = vertex_disjoint_paths(&k4, 0, 3).unwrap();
        assert_eq!(paths.len(), 3);
        for p in &paths {
            assert!(k4.validate_path(p));
            assert_eq!(p.endpoints(), Some((0, 3)));
        }
        assert_internally_disjoint(&paths);
    }

    #[test]
    fn vertex_witnesses_trivial_cases() {
        let line = path3();
        let paths = vertex_disjoint_paths(&line, 0, 2).unwrap();
        assert_eq!(paths.len(), 1);
        let split = two_triangles();
        assert!(vertex_disjoint_paths(&split, 1, 5).unwrap().is_empty());
    }

    #[test]
    fn analyze_reports_whitney_consistent_summary() {
        let c4 = cycle4();
        let report = analyze(&c4, &[(0, 2), (1, 2)], true).unwrap();
        assert_eq!((report.kappa, report.lambda, report.min_degree), (2, 2, 2));
        assert_eq!(report.pairs.len(), 2);
        for pair in &report.pairs {
            assert_eq!(pair.vertex_paths.as_ref().unwrap().len(), pair.kappa);
            assert_eq!(pair.edge_paths.as_ref().unwrap().len(), pair.lambda);
        }
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (2usize..=max_n).prop_flat_map(|n| {
            let all_pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            proptest::sample::subsequence(all_pairs.clone(), 0..=all_pairs.len())
                .prop_map(move |edges| Graph::from_id_edges(n, &edges).unwrap())
        })
    }

    proptest! {
        // Menger, both forms: witness counts match the flow values and the
        // witnesses themselves are valid and disjoint.
        #[test]
        fn menger_on_random_graphs(g in arb_graph(10)) {
            let n = g.vertex_count();
            for u in 0..n {
                for v in (u + 1)..n {
                    let lam = local_edge_connectivity(&g, u, v).unwrap();
                    let eps = edge_disjoint_paths(&g, u, v).unwrap();
                    prop_assert_eq!(eps.len(), lam);
                    for p in &eps {
                        prop_assert!(g.validate_path(p));
                        prop_assert_eq!(p.endpoints(), Some((u, v)));
                    }
                    assert_edge_disjoint(&eps);

                    let kap = local_vertex_connectivity(&g, u, v).unwrap();
                    let vps = vertex_disjoint_paths(&g, u, v).unwrap();
                    prop_assert_eq!(vps.len(), kap);
                    for p in &vps {
                        prop_assert!(g.validate_path(p));
                        prop_assert_eq!(p.endpoints(), Some((u, v)));
                    }
                    assert_internally_disjoint(&vps);
                }
            }
        }

        #[test]
        fn whitney_inequality(g in arb_graph(12)) {
            let kappa = vertex_connectivity(&g).unwrap();
            let lambda = edge_connectivity(&g).unwrap();
            let delta = g.min_degree().unwrap();
            prop_assert!(kappa <= lambda && lambda <= delta,
                "whitney violated: kappa={} lambda={} delta={}", kappa, lambda, delta);
        }
    }
}

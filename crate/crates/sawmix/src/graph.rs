//! Simple undirected graphs with stable vertex labels, the path-density
//! metrics used by the mixing bounds, an edge partial order for breaking
//! cycles deterministically, and a handful of standard generators.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::Ratio;

/// Ordered set of dense vertex ids.
pub type VertexSet = BTreeSet<usize>;

/// Default expansion budget for the path-density search. The search is
/// exponential in the worst case; the budget turns a runaway instance
/// into a reportable error instead of a hang.
pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

const UNREACHABLE: u32 = u32::MAX;

/// Undirected simple graph. Vertices carry external `u64` labels but are
/// addressed by dense ids `0..n` everywhere in the API; adjacency lists
/// are kept sorted by neighbor id so every traversal order is
/// reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<u64>,
    index: HashMap<u64, usize>,
    adj: Vec<Vec<(usize, usize)>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Graph over explicit labels with edges given as dense id pairs.
    pub fn with_labels(labels: Vec<u64>, edges: &[(usize, usize)]) -> Result<Graph> {
        if labels.is_empty() {
            return Err(Error::input("graph needs at least one vertex"));
        }
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, &lab) in labels.iter().enumerate() {
            if index.insert(lab, i).is_some() {
                return Err(Error::input(format!("duplicate vertex label {lab}")));
            }
        }
        let mut g = Graph {
            labels,
            index,
            adj: vec![Vec::new(); n],
            edges: Vec::with_capacity(edges.len()),
        };
        let mut seen = HashSet::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::input(format!("edge ({a}, {b}) references a missing vertex")));
            }
            if a == b {
                return Err(Error::input(format!("self loop at vertex {a}")));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::input(format!("duplicate edge ({}, {})", key.0, key.1)));
            }
            let ix = g.edges.len();
            g.edges.push(key);
            g.adj[a].push((b, ix));
            g.adj[b].push((a, ix));
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Graph on vertices `0..n` labelled by their own ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Graph::with_labels((0..n as u64).collect(), edges)
    }

    /// Graph with edges given as label pairs rather than dense ids.
    pub fn new(labels: Vec<u64>, label_edges: &[(u64, u64)]) -> Result<Graph> {
        let index: HashMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut dense = Vec::with_capacity(label_edges.len());
        for &(a, b) in label_edges {
            let ia = *index
                .get(&a)
                .ok_or_else(|| Error::input(format!("edge endpoint {a} is not a vertex")))?;
            let ib = *index
                .get(&b)
                .ok_or_else(|| Error::input(format!("edge endpoint {b} is not a vertex")))?;
            dense.push((ia, ib));
        }
        Graph::with_labels(labels, &dense)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order, each stored as `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.index.get(&label).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Neighbors of `v` paired with the index of the connecting edge,
    /// sorted by neighbor id.
    pub fn adjacency(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.vertex_count()
            && b < self.vertex_count()
            && self.adj[a].binary_search_by_key(&b, |&(w, _)| w).is_ok()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        if a >= self.vertex_count() || b >= self.vertex_count() {
            return None;
        }
        self.adj[a]
            .binary_search_by_key(&b, |&(w, _)| w)
            .ok()
            .map(|pos| self.adj[a][pos].1)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "vertex {v} out of range: graph has {} vertices",
                self.vertex_count()
            )))
        }
    }

    /// BFS distances from `v`; unreachable vertices are `u32::MAX`.
    pub(crate) fn bfs_distances(&self, v: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        dist[v] = 0;
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &(w, _) in &self.adj[u] {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path distance, or `None` when disconnected.
    pub fn distance(&self, a: usize, b: usize) -> Result<Option<usize>> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let d = self.bfs_distances(a)[b];
        Ok((d != UNREACHABLE).then_some(d as usize))
    }

    /// Vertices at graph distance exactly `l` from `v`.
    pub fn sphere(&self, v: usize, l: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let dist = self.bfs_distances(v);
        Ok((0..self.vertex_count())
            .filter(|&u| dist[u] as usize == l && dist[u] != UNREACHABLE)
            .collect())
    }

    /// Largest total degree over self-avoiding paths from `v` that use
    /// at most `l` edges, with the default search budget.
    pub fn max_path_density(&self, v: usize, l: usize) -> Result<GraphMetrics> {
        self.max_path_density_budgeted(v, l, DEFAULT_SEARCH_BUDGET)
    }

    pub fn max_path_density_budgeted(&self, v: usize, l: usize, budget: u64) -> Result<GraphMetrics> {
        let mut remaining = budget;
        let (density, witness) = self.path_density_search(v, l, &mut remaining)?;
        let delta = (l > 0).then(|| Ratio::new(density - self.degree(v) as u64, l as u64));
        Ok(GraphMetrics {
            density,
            delta,
            witness: Path { vertices: witness },
        })
    }

    /// Depth-first search over self-avoiding paths. Shares `budget`
    /// across calls so a whole-graph scan has one overall limit. Each
    /// vertex visit costs one unit; pruned branches cost nothing.
    fn path_density_search(&self, v: usize, l: usize, budget: &mut u64) -> Result<(u64, Vec<usize>)> {
        self.check_vertex(v)?;
        let max_deg = self.max_degree() as u64;
        let mut on_path = vec![false; self.vertex_count()];
        let mut path = vec![v];
        let mut cursors = vec![0usize];
        on_path[v] = true;
        let mut sum = self.degree(v) as u64;
        let mut best = sum;
        let mut best_path = path.clone();
        let charge = |budget: &mut u64, best: u64| -> Result<()> {
            if *budget == 0 {
                Err(Error::resource(
                    format!("path density search budget exhausted at vertex {v}; best density so far is a lower bound"),
                    Some(best as f64),
                ))
            } else {
                *budget -= 1;
                Ok(())
            }
        };
        charge(budget, best)?;
        while !cursors.is_empty() {
            let depth = cursors.len() - 1;
            let cur = path[depth];
            // No extension can strictly beat the incumbent from here.
            let bound = sum + (l - depth) as u64 * max_deg;
            let mut advanced = false;
            if depth < l && bound > best {
                let list = &self.adj[cur];
                while cursors[depth] < list.len() {
                    let (w, _) = list[cursors[depth]];
                    cursors[depth] += 1;
                    if on_path[w] {
                        continue;
                    }
                    charge(budget, best)?;
                    on_path[w] = true;
                    path.push(w);
                    sum += self.degree(w) as u64;
                    cursors.push(0);
                    if sum > best {
                        best = sum;
                        best_path = path.clone();
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                cursors.pop();
                let u = path.pop().unwrap();
                on_path[u] = false;
                sum -= self.degree(u) as u64;
            }
        }
        Ok((best, best_path))
    }

    /// Largest per-step density over all start vertices, together with
    /// the first vertex attaining it. `l` must be at least 1.
    pub fn max_avg_degree(&self, l: usize) -> Result<(Ratio, usize)> {
        self.max_avg_degree_budgeted(l, DEFAULT_SEARCH_BUDGET)
    }

    pub fn max_avg_degree_budgeted(&self, l: usize, budget: u64) -> Result<(Ratio, usize)> {
        if l == 0 {
            return Err(Error::input("radius must be at least 1"));
        }
        let mut remaining = budget;
        let mut best: Option<(Ratio, usize)> = None;
        for v in 0..self.vertex_count() {
            let (m, _) = self.path_density_search(v, l, &mut remaining)?;
            let delta = Ratio::new(m - self.degree(v) as u64, l as u64);
            if best.is_none_or(|(bd, _)| delta > bd) {
                best = Some((delta, v));
            }
        }
        Ok(best.expect("graphs are non-empty"))
    }

    /// Compare two edges using the vertex labels as order keys.
    pub fn edge_compare(&self, e: (usize, usize), f: (usize, usize)) -> Result<EdgeOrder> {
        self.edge_compare_keyed(e, f, self.labels())
    }

    /// Edges sharing an endpoint are ordered by the sum of their
    /// endpoint keys; disjoint edges are incomparable. Keys must be
    /// distinct so that comparable edges never tie.
    pub fn edge_compare_keyed(&self, e: (usize, usize), f: (usize, usize), keys: &[u64]) -> Result<EdgeOrder> {
        validate_keys(keys, self.vertex_count())?;
        for &(a, b) in &[e, f] {
            self.check_vertex(a)?;
            self.check_vertex(b)?;
            if !self.has_edge(a, b) {
                return Err(Error::input(format!("({a}, {b}) is not an edge")));
            }
        }
        let es = (e.0.min(e.1), e.0.max(e.1));
        let fs = (f.0.min(f.1), f.0.max(f.1));
        if es == fs {
            return Err(Error::input("edges must be distinct"));
        }
        let shares = es.0 == fs.0 || es.0 == fs.1 || es.1 == fs.0 || es.1 == fs.1;
        if !shares {
            return Ok(EdgeOrder::Incomparable);
        }
        let sum = |p: (usize, usize)| keys[p.0] as u128 + keys[p.1] as u128;
        if sum(es) > sum(fs) {
            Ok(EdgeOrder::Greater)
        } else {
            Ok(EdgeOrder::Less)
        }
    }

    /// Erdos-Renyi graph: each of the n(n-1)/2 possible edges is kept
    /// independently with probability `p`. Same seed, same graph.
    pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
        if n == 0 {
            return Err(Error::input("graph needs at least one vertex"));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::input(format!("edge probability {p} outside [0, 1]")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen::<f64>() < p {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges(n, &edges)
    }

    pub fn path_graph(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::input("graph needs at least one vertex"));
        }
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::input("a cycle needs at least 3 vertices"));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Axis-aligned grid; vertex at row r, column c has id `r*cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
        if rows == 0 || cols == 0 {
            return Err(Error::input("grid needs at least one row and one column"));
        }
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Graph::from_edges(rows * cols, &edges)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::input("graph needs at least one vertex"));
        }
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// Rooted tree where every internal vertex has `branching` children
    /// and all leaves sit at depth `height`. Vertices are numbered in
    /// breadth-first order with the root at 0.
    pub fn regular_tree(branching: usize, height: usize) -> Result<Graph> {
        if branching == 0 {
            return Err(Error::input("branching factor must be at least 1"));
        }
        let mut total: usize = 1;
        let mut level: usize = 1;
        for _ in 0..height {
            level = level
                .checked_mul(branching)
                .ok_or_else(|| Error::input("regular tree too large"))?;
            total = total
                .checked_add(level)
                .ok_or_else(|| Error::input("regular tree too large"))?;
            if total > 10_000_000 {
                return Err(Error::input("regular tree too large"));
            }
        }
        let mut edges = Vec::with_capacity(total.saturating_sub(1));
        let mut next = 1;
        let mut frontier = vec![0usize];
        for _ in 0..height {
            let mut nxt_frontier = Vec::with_capacity(frontier.len() * branching);
            for &parent in &frontier {
                for _ in 0..branching {
                    edges.push((parent, next));
                    nxt_frontier.push(next);
                    next += 1;
                }
            }
            frontier = nxt_frontier;
        }
        Graph::from_edges(total, &edges)
    }
}

/// Checks a key vector is one distinct key per vertex.
pub(crate) fn validate_keys(keys: &[u64], n: usize) -> Result<()> {
    if keys.len() != n {
        return Err(Error::input(format!(
            "expected {n} order keys, got {}",
            keys.len()
        )));
    }
    let mut sorted: Vec<u64> = keys.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::input("order keys must be distinct"));
    }
    Ok(())
}

/// Outcome of comparing two edges under the shared-endpoint order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeOrder {
    Greater,
    Less,
    Incomparable,
}

/// Walk through a graph, stored as its vertex sequence. A path always
/// contains at least its start vertex; `len` counts edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    pub fn new(vertices: Vec<usize>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::input("a path needs at least one vertex"));
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when consecutive vertices are adjacent in `g` and no vertex
    /// repeats.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        if self.vertices.iter().any(|&v| v >= g.vertex_count()) {
            return false;
        }
        let mut seen = HashSet::with_capacity(self.vertices.len());
        if !self.vertices.iter().all(|&v| seen.insert(v)) {
            return false;
        }
        self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

/// Result of a path-density query at one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMetrics {
    /// Largest degree sum over qualifying paths.
    pub density: u64,
    /// `(density - deg v) / l`; absent when the radius is 0.
    pub delta: Option<Ratio>,
    /// A path attaining `density`.
    pub witness: Path,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::new(vec![1, 2, 3], &[(1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(Graph::with_labels(vec![], &[]).is_err());
        assert!(Graph::with_labels(vec![1, 1], &[]).is_err());
        assert!(Graph::from_edges(2, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 2)]).is_err());
        assert!(Graph::new(vec![1, 2], &[(1, 9)]).is_err());
    }

    #[test]
    fn adjacency_is_sorted_and_indexed() {
        let g = Graph::from_edges(4, &[(2, 0), (3, 0), (0, 1)]).unwrap();
        let nbrs: Vec<usize> = g.neighbors(0).collect();
        assert_eq!(nbrs, vec![1, 2, 3]);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edges(), &[(0, 2), (0, 3), (0, 1)]);
        assert_eq!(g.edge_index(1, 0), Some(2));
        assert_eq!(g.edge_index(0, 2), Some(0));
        assert_eq!(g.edge_index(1, 2), None);
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(1, 3));
    }

    #[test]
    fn labels_round_trip() {
        let g = triangle();
        assert_eq!(g.label(0), 1);
        assert_eq!(g.index_of(3), Some(2));
        assert_eq!(g.index_of(9), None);
    }

    #[test]
    fn sphere_on_path() {
        let g = Graph::path_graph(3).unwrap();
        assert_eq!(g.sphere(0, 0).unwrap(), VertexSet::from([0]));
        assert_eq!(g.sphere(0, 1).unwrap(), VertexSet::from([1]));
        assert_eq!(g.sphere(0, 2).unwrap(), VertexSet::from([2]));
        assert_eq!(g.sphere(0, 3).unwrap(), VertexSet::new());
        assert!(g.sphere(5, 1).is_err());
    }

    #[test]
    fn sphere_on_cycle_and_disconnected() {
        let g = Graph::cycle(4).unwrap();
        assert_eq!(g.sphere(0, 2).unwrap(), VertexSet::from([2]));
        let h = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert_eq!(h.sphere(0, 1).unwrap(), VertexSet::from([1]));
        assert_eq!(h.sphere(0, 2).unwrap(), VertexSet::new());
        assert_eq!(h.distance(0, 2).unwrap(), None);
        assert_eq!(h.distance(0, 1).unwrap(), Some(1));
    }

    #[test]
    fn path_density_on_path_graph() {
        let g = Graph::path_graph(3).unwrap();
        let m = g.max_path_density(0, 2).unwrap();
        assert_eq!(m.density, 4);
        assert_eq!(m.delta, Some(Ratio::new(3, 2)));
        assert_eq!(m.witness.vertices(), &[0, 1, 2]);
        assert!(m.witness.is_valid_in(&g));
    }

    #[test]
    fn path_density_radius_zero() {
        let g = Graph::cycle(5).unwrap();
        let m = g.max_path_density(3, 0).unwrap();
        assert_eq!(m.density, 2);
        assert_eq!(m.delta, None);
        assert_eq!(m.witness.vertices(), &[3]);
    }

    #[test]
    fn path_density_on_cycle() {
        let g = Graph::cycle(4).unwrap();
        let m = g.max_path_density(0, 2).unwrap();
        assert_eq!(m.density, 6);
        assert_eq!(m.delta, Some(Ratio::new(2, 1)));
    }

    #[test]
    fn max_avg_degree_examples() {
        let g = Graph::cycle(4).unwrap();
        let (delta, v) = g.max_avg_degree(2).unwrap();
        assert_eq!(delta, Ratio::new(2, 1));
        assert_eq!(v, 0);

        let edgeless = Graph::from_edges(3, &[]).unwrap();
        let (delta, _) = edgeless.max_avg_degree(1).unwrap();
        assert_eq!(delta, Ratio::zero());
        assert!(edgeless.max_avg_degree(0).is_err());

        // star with 3 leaves: a leaf reaches the hub in one step
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let (delta, v) = star.max_avg_degree(1).unwrap();
        assert_eq!(delta, Ratio::new(3, 1));
        assert_eq!(v, 1);
    }

    #[test]
    fn search_budget_is_enforced() {
        let g = Graph::complete(6).unwrap();
        let err = g.max_path_density_budgeted(0, 5, 3).unwrap_err();
        match err {
            Error::Resource { partial, .. } => {
                let bound = partial.expect("partial bound present");
                assert!(bound >= 5.0);
            }
            other => panic!("expected resource error, got {other:?}"),
        }
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn edge_compare_triangle() {
        let g = triangle();
        // dense ids: 0 -> label 1, 1 -> label 2, 2 -> label 3
        assert_eq!(g.edge_compare((0, 1), (0, 2)).unwrap(), EdgeOrder::Less);
        assert_eq!(g.edge_compare((2, 0), (0, 1)).unwrap(), EdgeOrder::Greater);
        assert_eq!(g.edge_compare((1, 2), (0, 1)).unwrap(), EdgeOrder::Greater);
        assert!(g.edge_compare((0, 1), (1, 0)).is_err());
        assert!(g.edge_compare((0, 3), (0, 1)).is_err());
    }

    #[test]
    fn edge_compare_disjoint_and_keyed() {
        let g = Graph::path_graph(4).unwrap();
        assert_eq!(g.edge_compare((0, 1), (2, 3)).unwrap(), EdgeOrder::Incomparable);
        assert_eq!(g.edge_compare((0, 1), (1, 2)).unwrap(), EdgeOrder::Less);
        // reversed keys flip every comparable pair
        let keys = [3u64, 2, 1, 0];
        assert_eq!(
            g.edge_compare_keyed((0, 1), (1, 2), &keys).unwrap(),
            EdgeOrder::Greater
        );
        assert!(g.edge_compare_keyed((0, 1), (1, 2), &[1, 1, 2, 3]).is_err());
        assert!(g.edge_compare_keyed((0, 1), (1, 2), &[1, 2]).is_err());
    }

    #[test]
    fn gnp_extremes_and_determinism() {
        let empty = Graph::gnp(5, 0.0, 9).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = Graph::gnp(5, 1.0, 9).unwrap();
        assert_eq!(full.edge_count(), 10);
        let a = Graph::gnp(40, 0.1, 1234).unwrap();
        let b = Graph::gnp(40, 0.1, 1234).unwrap();
        assert_eq!(a, b);
        let c = Graph::gnp(40, 0.1, 1235).unwrap();
        assert_ne!(a, c);
        assert!(Graph::gnp(0, 0.5, 1).is_err());
        assert!(Graph::gnp(5, 1.5, 1).is_err());
        assert!(Graph::gnp(5, -0.1, 1).is_err());
    }

    #[test]
    fn standard_generators() {
        assert!(Graph::cycle(2).is_err());
        assert_eq!(Graph::cycle(3).unwrap().edge_count(), 3);
        assert_eq!(Graph::path_graph(1).unwrap().edge_count(), 0);
        assert_eq!(Graph::complete(4).unwrap().edge_count(), 6);

        let g = Graph::grid(3, 4).unwrap();
        assert_eq!(g.vertex_count(), 12);
        assert_eq!(g.edge_count(), 17);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(0, 4));
        assert!(!g.has_edge(3, 4));

        let square = Graph::grid(2, 2).unwrap();
        assert!((0..4).all(|v| square.degree(v) == 2));

        let t = Graph::regular_tree(2, 3).unwrap();
        assert_eq!(t.vertex_count(), 15);
        assert_eq!(t.degree(0), 2);
        assert_eq!(t.degree(1), 3);
        assert_eq!(t.degree(14), 1);
        assert_eq!(Graph::regular_tree(1, 4).unwrap().vertex_count(), 5);
        assert!(Graph::regular_tree(0, 2).is_err());
        assert!(Graph::regular_tree(10, 9).is_err());
    }

    #[test]
    fn path_validity() {
        let g = triangle();
        assert!(Path::new(vec![]).is_err());
        assert!(Path::new(vec![0, 1, 2]).unwrap().is_valid_in(&g));
        assert!(!Path::new(vec![0, 1, 0]).unwrap().is_valid_in(&g));
        assert!(!Path::new(vec![0, 3]).unwrap().is_valid_in(&g));
        let p4 = Graph::path_graph(4).unwrap();
        assert!(!Path::new(vec![0, 2]).unwrap().is_valid_in(&p4));
        assert_eq!(Path::new(vec![0]).unwrap().len(), 0);
    }
}

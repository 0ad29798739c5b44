//! Self-avoiding-walk trees. The tree of a vertex enumerates every
//! self-avoiding walk leaving it; a walk that closes a cycle ends in a
//! pinned copy of the revisited vertex, and a walk that reaches a
//! conditioned vertex ends in a copy pinned to the conditioned spin.
//! Marginals computed on this tree agree exactly with marginals on the
//! original graph.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::graph::{validate_keys, Graph};
use crate::model::{PartialConfiguration, Spin};

/// Default cap on tree size; the tree can grow exponentially with
/// depth, so unbounded builds are never the right default.
pub const DEFAULT_MAX_NODES: usize = 10_000_000;

/// Resource limits for a tree build. `max_depth` of `t` keeps levels
/// `0..=t`; nodes cut off there become frontier leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildLimits {
    pub max_depth: Option<usize>,
    pub max_nodes: usize,
}

impl Default for BuildLimits {
    fn default() -> Self {
        BuildLimits {
            max_depth: None,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

impl BuildLimits {
    pub fn depth(t: usize) -> BuildLimits {
        BuildLimits {
            max_depth: Some(t),
            ..BuildLimits::default()
        }
    }
}

/// Role of a node during marginal evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeStatus {
    /// Recursion descends into the children.
    Free,
    /// Spin pinned by a condition or by closing a cycle.
    Fixed(Spin),
    /// Cut off by the depth limit; spin chosen at evaluation time.
    Frontier,
}

/// One walk endpoint. Children are stored contiguously, so a node only
/// needs the first child index and a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SawNode {
    /// Dense id of the graph vertex this walk ends at.
    pub vertex: u32,
    /// Index of the parent node; `NO_PARENT` at the root.
    pub parent: u32,
    pub first_child: u32,
    pub child_count: u32,
    pub status: NodeStatus,
}

impl SawNode {
    pub const NO_PARENT: u32 = u32::MAX;

    pub fn is_root(&self) -> bool {
        self.parent == Self::NO_PARENT
    }

    /// Node indices of the children.
    pub fn children(&self) -> Range<usize> {
        self.first_child as usize..(self.first_child + self.child_count) as usize
    }
}

/// Tree of self-avoiding walks from one root vertex, laid out in
/// breadth-first order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SawTree {
    nodes: Vec<SawNode>,
    level_counts: Vec<usize>,
    truncated_at: Option<usize>,
}

impl SawTree {
    /// Builds the tree rooted at `root`, using vertex labels as the
    /// cycle-breaking order.
    pub fn build(g: &Graph, root: usize, condition: &PartialConfiguration, limits: &BuildLimits) -> Result<SawTree> {
        SawTree::build_keyed(g, root, condition, limits, g.labels())
    }

    /// Builds with an explicit order-key vector, one distinct key per
    /// vertex. When a walk closes a cycle at vertex `w`, the copy of
    /// `w` is pinned plus exactly when the closing edge outranks the
    /// edge the walk first left `w` by: both contain `w`, so that
    /// comparison reduces to the keys of the two other endpoints.
    pub fn build_keyed(
        g: &Graph,
        root: usize,
        condition: &PartialConfiguration,
        limits: &BuildLimits,
        keys: &[u64],
    ) -> Result<SawTree> {
        g.check_vertex(root)?;
        condition.validate_for(g.vertex_count())?;
        validate_keys(keys, g.vertex_count())?;
        if limits.max_nodes == 0 {
            return Err(Error::input("node limit must be at least 1"));
        }
        if limits.max_nodes >= u32::MAX as usize {
            return Err(Error::input("node limit must fit in 32 bits"));
        }

        if let Some(s) = condition.get(root) {
            return Ok(SawTree {
                nodes: vec![SawNode {
                    vertex: root as u32,
                    parent: SawNode::NO_PARENT,
                    first_child: 0,
                    child_count: 0,
                    status: NodeStatus::Fixed(s),
                }],
                level_counts: vec![1],
                truncated_at: None,
            });
        }

        let mut nodes = vec![SawNode {
            vertex: root as u32,
            parent: SawNode::NO_PARENT,
            first_child: 0,
            child_count: 0,
            status: NodeStatus::Free,
        }];
        let mut level_counts = vec![1usize];
        let mut truncated = false;
        // scratch: position of each graph vertex on the current walk
        const OFF_WALK: u32 = u32::MAX;
        let mut walk: Vec<u32> = Vec::new();
        let mut walk_pos: Vec<u32> = vec![OFF_WALK; g.vertex_count()];

        let mut start = 0usize;
        let mut depth = 0usize;
        while start < nodes.len() {
            let end = nodes.len();
            let at_cutoff = limits.max_depth == Some(depth);
            for ix in start..end {
                if nodes[ix].status != NodeStatus::Free {
                    continue;
                }
                let vtx = nodes[ix].vertex as usize;
                let parent_vertex = if nodes[ix].is_root() {
                    usize::MAX
                } else {
                    nodes[nodes[ix].parent as usize].vertex as usize
                };
                if at_cutoff {
                    // only walks that would continue become frontier
                    if g.neighbors(vtx).any(|w| w != parent_vertex) {
                        nodes[ix].status = NodeStatus::Frontier;
                        truncated = true;
                    }
                    continue;
                }
                walk.clear();
                let mut j = ix;
                loop {
                    walk.push(nodes[j].vertex);
                    if nodes[j].is_root() {
                        break;
                    }
                    j = nodes[j].parent as usize;
                }
                walk.reverse();
                for (pos, &u) in walk.iter().enumerate() {
                    walk_pos[u as usize] = pos as u32;
                }
                let first_child = nodes.len() as u32;
                let mut child_count = 0u32;
                for &(w, _) in g.adjacency(vtx) {
                    if w == parent_vertex {
                        continue;
                    }
                    let status = if let Some(s) = condition.get(w) {
                        NodeStatus::Fixed(s)
                    } else if walk_pos[w] != OFF_WALK {
                        let succ = walk[walk_pos[w] as usize + 1] as usize;
                        let spin = if keys[vtx] > keys[succ] { Spin::Plus } else { Spin::Minus };
                        NodeStatus::Fixed(spin)
                    } else {
                        NodeStatus::Free
                    };
                    if nodes.len() == limits.max_nodes {
                        return Err(Error::resource(
                            format!(
                                "node limit {} reached while expanding level {}",
                                limits.max_nodes, depth
                            ),
                            Some(depth as f64),
                        ));
                    }
                    nodes.push(SawNode {
                        vertex: w as u32,
                        parent: ix as u32,
                        first_child: 0,
                        child_count: 0,
                        status,
                    });
                    child_count += 1;
                }
                nodes[ix].first_child = first_child;
                nodes[ix].child_count = child_count;
                for &u in &walk {
                    walk_pos[u as usize] = OFF_WALK;
                }
            }
            if nodes.len() > end {
                level_counts.push(nodes.len() - end);
            }
            start = end;
            depth += 1;
        }

        Ok(SawTree {
            nodes,
            level_counts,
            truncated_at: truncated.then(|| limits.max_depth.expect("cutoff implies a depth limit")),
        })
    }

    /// Nodes in breadth-first order; the root is index 0.
    pub fn nodes(&self) -> &[SawNode] {
        &self.nodes
    }

    pub fn root(&self) -> &SawNode {
        &self.nodes[0]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of nodes on each level, root level first.
    pub fn level_counts(&self) -> &[usize] {
        &self.level_counts
    }

    /// Depth of the deepest node.
    pub fn depth(&self) -> usize {
        self.level_counts.len() - 1
    }

    /// Depth limit that cut the tree, when any walk was cut.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    /// True when no walk was cut by a depth limit.
    pub fn is_complete(&self) -> bool {
        self.truncated_at.is_none()
    }

    /// Graph vertices along the walk from the root to a node. The last
    /// entry repeats an earlier one exactly for cycle-closing leaves.
    pub fn walk_to(&self, ix: usize) -> Vec<usize> {
        let mut walk = Vec::new();
        let mut j = ix;
        loop {
            walk.push(self.nodes[j].vertex as usize);
            if self.nodes[j].is_root() {
                break;
            }
            j = self.nodes[j].parent as usize;
        }
        walk.reverse();
        walk
    }

    /// Graphviz rendering. Nodes show the graph vertex label plus the
    /// pinned spin, or `?` for frontier leaves.
    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::from("digraph saw_tree {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let label = g.label(node.vertex as usize);
            let suffix = match node.status {
                NodeStatus::Free => "",
                NodeStatus::Fixed(Spin::Plus) => " +",
                NodeStatus::Fixed(Spin::Minus) => " -",
                NodeStatus::Frontier => " ?",
            };
            out.push_str(&format!("  n{i} [label=\"{label}{suffix}\"];\n"));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if !node.is_root() {
                out.push_str(&format!("  n{} -> n{i};\n", node.parent));
            }
        }
        out.push_str("}\n");
        out
    }
}

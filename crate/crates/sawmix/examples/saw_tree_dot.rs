//! Builds the self-avoiding-walk tree of a small cyclic graph and
//! prints it as Graphviz DOT. Cycle-closing copies arrive pinned to a
//! spin decided by the edge order; conditioned vertices prune their
//! subtrees entirely.

use sawmix::model::Spin;
use sawmix::saw::{BuildLimits, NodeStatus, SawTree};
use sawmix::{Graph, PartialConfiguration, Result};

fn describe(tree: &SawTree) {
    let mut free = 0;
    let mut fixed = 0;
    let mut frontier = 0;
    for node in tree.nodes() {
        match node.status {
            NodeStatus::Free => free += 1,
            NodeStatus::Fixed(_) => fixed += 1,
            NodeStatus::Frontier => frontier += 1,
        }
    }
    eprintln!(
        "  {} nodes, levels {:?}, {} free / {} fixed / {} frontier",
        tree.len(),
        tree.level_counts(),
        free,
        fixed,
        frontier
    );
}

fn main() -> Result<()> {
    // two triangles sharing vertex 2
    let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])?;
    let limits = BuildLimits::default();

    eprintln!("unconditioned walk tree from 0:");
    let tree = SawTree::build(&g, 0, &PartialConfiguration::new(), &limits)?;
    describe(&tree);
    println!("{}", tree.to_dot(&g));

    // conditioning on the cut vertex makes the far triangle unreachable
    let mut cond = PartialConfiguration::new();
    cond.fix(2, Spin::Plus);
    eprintln!("with vertex 2 pinned to +:");
    let pruned = SawTree::build(&g, 0, &cond, &limits)?;
    describe(&pruned);
    println!("{}", pruned.to_dot(&g));

    // a depth cutoff leaves frontier leaves for interval evaluation
    let truncated = SawTree::build(
        &g,
        0,
        &PartialConfiguration::new(),
        &BuildLimits { max_depth: Some(2), max_nodes: limits.max_nodes },
    )?;
    eprintln!("truncated at depth 2 (truncated_at = {:?}):", truncated.truncated_at());
    describe(&truncated);
    Ok(())
}

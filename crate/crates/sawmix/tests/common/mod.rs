//! Random instance generators shared by the integration suites. All
//! draws come from a caller-supplied seeded generator so every suite
//! is reproducible from its printed seed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use sawmix::model::{PairPotential, VertexPotential};
use sawmix::{Bmrf, Graph, PartialConfiguration, Spin};

pub fn random_pair_potential(rng: &mut ChaCha8Rng, beta: f64) -> PairPotential {
    PairPotential::new(
        rng.gen_range(-beta..beta),
        rng.gen_range(-beta..beta),
        rng.gen_range(-beta..beta),
        rng.gen_range(-beta..beta),
    )
}

pub fn random_vertex_potential(rng: &mut ChaCha8Rng, h: f64) -> VertexPotential {
    VertexPotential::new(rng.gen_range(-h..h), rng.gen_range(-h..h))
}

/// Random model over a seeded sparse graph. `beta` and `h` bound the
/// potential entries symmetrically around zero.
pub fn random_model(rng: &mut ChaCha8Rng, graph: Graph, beta: f64, h: f64) -> Bmrf {
    let vertex_pots = (0..graph.vertex_count())
        .map(|_| random_vertex_potential(rng, h))
        .collect();
    let pair_pots = (0..graph.edge_count())
        .map(|_| random_pair_potential(rng, beta))
        .collect();
    Bmrf::new(graph, vertex_pots, pair_pots).expect("lengths match by construction")
}

/// Fixes each vertex independently with probability `prob`.
pub fn random_condition(rng: &mut ChaCha8Rng, n: usize, prob: f64) -> PartialConfiguration {
    let mut cond = PartialConfiguration::new();
    for v in 0..n {
        if rng.gen_bool(prob) {
            let spin = if rng.gen_bool(0.5) { Spin::Plus } else { Spin::Minus };
            cond.fix(v, spin);
        }
    }
    cond
}

/// Uniform random attachment tree on n vertices (vertex i joins a
/// uniformly chosen earlier vertex).
pub fn random_tree_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        edges.push((parent, v));
    }
    Graph::from_edges(n, &edges).expect("attachment edges are valid")
}

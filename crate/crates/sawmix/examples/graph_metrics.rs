//! Path-density metrics on a few standard graphs: the degree sum of
//! the heaviest short path from a vertex, the per-step density delta,
//! and the graph-wide maximum that feeds the mixing threshold as d.

use sawmix::{Graph, Result};

fn show(name: &str, g: &Graph, radius: usize) -> Result<()> {
    println!("{name}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
    for v in [0, g.vertex_count() / 2] {
        let m = g.max_path_density(v, radius)?;
        let delta = m
            .delta
            .map(|d| d.to_string())
            .unwrap_or_else(|| "undefined".into());
        println!(
            "  from {:>2}: density {:>3} over {} steps, delta {}, witness {:?}",
            g.label(v),
            m.density,
            radius,
            delta,
            m.witness.vertices()
        );
    }
    let (delta, argmax) = g.max_avg_degree(radius)?;
    println!("  graph-wide delta at radius {radius}: {delta} (attained from {})", g.label(argmax));
    println!();
    Ok(())
}

fn main() -> Result<()> {
    show("path P6", &Graph::path_graph(6)?, 3)?;
    show("cycle C8", &Graph::cycle(8)?, 3)?;
    show("grid 4x5", &Graph::grid(4, 5)?, 3)?;
    show("complete K5", &Graph::complete(5)?, 3)?;
    show("sparse random", &Graph::gnp(30, 0.08, 7)?, 4)?;

    // spheres double as distance classes; their sizes drive the
    // second growth inequality
    let g = Graph::grid(4, 5)?;
    print!("grid sphere sizes from corner:");
    for l in 0..8 {
        print!(" {}", g.sphere(0, l)?.len());
    }
    println!();
    Ok(())
}

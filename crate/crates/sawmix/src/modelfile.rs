//! Plain-text model and condition files.
//!
//! A model file starts with the header `mrf v1`, then one line per
//! vertex and edge:
//!
//! ```text
//! mrf v1
//! vertex <id> <h_plus> <h_minus>
//! edge <i> <j> <b_pp> <b_pm> <b_mp> <b_mm>
//! ```
//!
//! A condition file pins spins, one per line: `fix <id> <+|->`. Blank
//! lines are ignored in both formats, as are lines starting with `#`.
//! Fields are separated by any run of spaces or tabs on input and by
//! single spaces on output. Edge entries are oriented as written: the
//! first spin belongs to `<i>`, the second to `<j>`.

use std::collections::{HashMap, HashSet};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::model::{Bmrf, PairPotential, PartialConfiguration, Spin, VertexPotential};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn field<T: FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    s.parse::<T>()
        .map_err(|_| parse_err(line, format!("invalid {what}: {s:?}")))
}

fn finite(s: &str, line: usize, what: &str) -> Result<f64> {
    let x: f64 = field(s, line, what)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(parse_err(line, format!("{what} must be finite, got {s:?}")))
    }
}

/// Lines that carry content: 1-based line number and fields.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(ix, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((ix + 1, line.split_whitespace().collect()))
        }
    })
}

/// Parses a model file. Vertices must be declared before the edges
/// that use them.
pub fn parse_model(text: &str) -> Result<Bmrf> {
    let mut labels: Vec<u64> = Vec::new();
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut vertex_pots: Vec<VertexPotential> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut pair_pots: Vec<PairPotential> = Vec::new();
    let mut seen_edges: HashSet<(usize, usize)> = HashSet::new();
    let mut header_seen = false;

    for (line, fields) in content_lines(text) {
        if !header_seen {
            if fields != ["mrf", "v1"] {
                return Err(parse_err(line, "expected header \"mrf v1\""));
            }
            header_seen = true;
            continue;
        }
        match fields[0] {
            "vertex" => {
                if fields.len() != 4 {
                    return Err(parse_err(line, "vertex takes an id and two weights"));
                }
                let id: u64 = field(fields[1], line, "vertex id")?;
                if index.contains_key(&id) {
                    return Err(parse_err(line, format!("vertex {id} is declared twice")));
                }
                let h_plus = finite(fields[2], line, "plus weight")?;
                let h_minus = finite(fields[3], line, "minus weight")?;
                index.insert(id, labels.len());
                labels.push(id);
                vertex_pots.push(VertexPotential::new(h_plus, h_minus));
            }
            "edge" => {
                if fields.len() != 7 {
                    return Err(parse_err(line, "edge takes two ids and four weights"));
                }
                let i: u64 = field(fields[1], line, "vertex id")?;
                let j: u64 = field(fields[2], line, "vertex id")?;
                let di = *index
                    .get(&i)
                    .ok_or_else(|| parse_err(line, format!("edge references undeclared vertex {i}")))?;
                let dj = *index
                    .get(&j)
                    .ok_or_else(|| parse_err(line, format!("edge references undeclared vertex {j}")))?;
                if di == dj {
                    return Err(parse_err(line, format!("self loop at vertex {i}")));
                }
                let pot = PairPotential::new(
                    finite(fields[3], line, "weight")?,
                    finite(fields[4], line, "weight")?,
                    finite(fields[5], line, "weight")?,
                    finite(fields[6], line, "weight")?,
                );
                let key = (di.min(dj), di.max(dj));
                if !seen_edges.insert(key) {
                    return Err(parse_err(line, format!("duplicate edge between {i} and {j}")));
                }
                edges.push(key);
                pair_pots.push(if di < dj { pot } else { pot.transposed() });
            }
            other => {
                return Err(parse_err(line, format!("unknown directive {other:?}")));
            }
        }
    }
    if !header_seen {
        return Err(parse_err(1, "missing header \"mrf v1\""));
    }
    if labels.is_empty() {
        return Err(Error::input("model file declares no vertices"));
    }
    let graph = Graph::with_labels(labels, &edges)?;
    Bmrf::new(graph, vertex_pots, pair_pots)
}

/// Renders a model file: vertices in declaration order, edges sorted
/// by their canonical endpoint pair. Parsing the output reproduces the
/// model exactly.
pub fn emit_model(m: &Bmrf) -> String {
    let g = m.graph();
    let mut out = String::from("mrf v1\n");
    for v in 0..g.vertex_count() {
        let pot = m.vertex_pot(v);
        out.push_str(&format!("vertex {} {} {}\n", g.label(v), pot.h_plus, pot.h_minus));
    }
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&ix| g.edges()[ix]);
    for ix in order {
        let (u, v) = g.edges()[ix];
        let pot = m.pair_pot(ix);
        out.push_str(&format!(
            "edge {} {} {} {} {} {}\n",
            g.label(u),
            g.label(v),
            pot.beta_pp,
            pot.beta_pm,
            pot.beta_mp,
            pot.beta_mm
        ));
    }
    out
}

/// Parses a condition file against a model, resolving ids to dense
/// vertices.
pub fn parse_condition(text: &str, m: &Bmrf) -> Result<PartialConfiguration> {
    let mut config = PartialConfiguration::new();
    for (line, fields) in content_lines(text) {
        if fields.len() != 3 || fields[0] != "fix" {
            return Err(parse_err(line, "expected \"fix <id> <+|->\""));
        }
        let id: u64 = field(fields[1], line, "vertex id")?;
        let v = m
            .graph()
            .index_of(id)
            .ok_or_else(|| parse_err(line, format!("unknown vertex {id}")))?;
        let spin: Spin = field(fields[2], line, "spin")?;
        if config.fix(v, spin).is_some() {
            return Err(parse_err(line, format!("vertex {id} is fixed twice")));
        }
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(err: Error) -> usize {
        match err {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_model() {
        let m = parse_model("mrf v1\nvertex 7 0.5 -0.25\n").unwrap();
        assert_eq!(m.graph().vertex_count(), 1);
        assert_eq!(m.graph().label(0), 7);
        assert_eq!(m.vertex_pot(0).h_plus, 0.5);
        assert_eq!(m.vertex_pot(0).h_minus, -0.25);
    }

    #[test]
    fn comments_blanks_and_tabs() {
        let text = "# a model\n\nmrf v1\n# vertices\nvertex\t1\t0\t0\nvertex 2 1e-3 0\n\nedge 1\t2 0.1 -0.1 -0.1 0.1\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.graph().vertex_count(), 2);
        assert_eq!(m.graph().edge_count(), 1);
        assert_eq!(m.vertex_pot(1).h_plus, 1e-3);
    }

    #[test]
    fn header_is_required_first() {
        assert_eq!(line_of(parse_model("vertex 1 0 0\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_model("# hi\nmrf v2\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_model("").unwrap_err()), 1);
    }

    #[test]
    fn malformed_lines_carry_numbers() {
        let base = "mrf v1\nvertex 1 0 0\n";
        assert_eq!(line_of(parse_model(&format!("{base}vertex 2 0\n")).unwrap_err()), 3);
        assert_eq!(line_of(parse_model(&format!("{base}vertex 2 x 0\n")).unwrap_err()), 3);
        assert_eq!(line_of(parse_model(&format!("{base}vertex 2 inf 0\n")).unwrap_err()), 3);
        assert_eq!(line_of(parse_model(&format!("{base}frob 1\n")).unwrap_err()), 3);
        assert_eq!(line_of(parse_model(&format!("{base}vertex 1 0 0\n")).unwrap_err()), 3);
        assert_eq!(
            line_of(parse_model(&format!("{base}edge 1 2 0 0 0 0\n")).unwrap_err()),
            3
        );
        assert_eq!(line_of(parse_model(&format!("{base}edge 1 1 0 0 0 0\n")).unwrap_err()), 3);
    }

    #[test]
    fn duplicate_edges_rejected_in_both_orientations() {
        let text = "mrf v1\nvertex 1 0 0\nvertex 2 0 0\nedge 1 2 0 0 0 0\nedge 2 1 1 1 1 1\n";
        assert_eq!(line_of(parse_model(text).unwrap_err()), 5);
    }

    #[test]
    fn empty_model_is_rejected() {
        assert!(parse_model("mrf v1\n").is_err());
    }

    #[test]
    fn edge_rows_are_oriented_as_written() {
        let text = "mrf v1\nvertex 1 0 0\nvertex 2 0 0\nedge 2 1 0.1 0.2 0.3 0.4\n";
        let m = parse_model(text).unwrap();
        // the row is oriented from vertex 2 to vertex 1
        let as_written = m.pair_between(1, 0).unwrap();
        assert_eq!(as_written, PairPotential::new(0.1, 0.2, 0.3, 0.4));
        let canonical = m.pair_between(0, 1).unwrap();
        assert_eq!(canonical, PairPotential::new(0.1, 0.3, 0.2, 0.4));
    }

    #[test]
    fn round_trip_preserves_everything() {
        let text = "mrf v1\nvertex 5 0.25 -1.5\nvertex 3 0 2\nvertex 9 1e-300 4\nedge 5 3 0.1 -0.2 0.3 -0.4\nedge 9 5 -2 3 5.5 0.125\n";
        let m = parse_model(text).unwrap();
        let emitted = emit_model(&m);
        let again = parse_model(&emitted).unwrap();
        assert_eq!(m, again);
        assert_eq!(emit_model(&again), emitted);
    }

    #[test]
    fn emitted_shape_is_canonical() {
        let g = Graph::new(vec![4, 2], &[(4, 2)]).unwrap();
        let m = Bmrf::ising(g, 0.5, 1.0);
        assert_eq!(
            emit_model(&m),
            "mrf v1\nvertex 4 1 -1\nvertex 2 1 -1\nedge 4 2 0.5 -0.5 -0.5 0.5\n"
        );
    }

    #[test]
    fn condition_parsing() {
        let m = parse_model("mrf v1\nvertex 10 0 0\nvertex 20 0 0\nedge 10 20 0 0 0 0\n").unwrap();
        let c = parse_condition("# pin\nfix 20 +\nfix 10 -\n", &m).unwrap();
        assert_eq!(c.get(1), Some(Spin::Plus));
        assert_eq!(c.get(0), Some(Spin::Minus));
        assert_eq!(c.len(), 2);
        assert_eq!(parse_condition("", &m).unwrap().len(), 0);

        assert_eq!(line_of(parse_condition("fix 30 +\n", &m).unwrap_err()), 1);
        assert_eq!(line_of(parse_condition("fix 10 ?\n", &m).unwrap_err()), 1);
        assert_eq!(line_of(parse_condition("fix 10\n", &m).unwrap_err()), 1);
        assert_eq!(line_of(parse_condition("fix 10 +\nfix 10 -\n", &m).unwrap_err()), 2);
        assert_eq!(line_of(parse_condition("pin 10 +\n", &m).unwrap_err()), 1);
    }
}

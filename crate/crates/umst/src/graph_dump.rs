//! Plain-text graph dumps: one edge per line as `u v weight original_id`.
//! Lines starting with `#` are comments; a `# vertices N` comment fixes the
//! vertex count, which otherwise is one more than the largest endpoint.

use std::io::{BufRead, Write};

use umst_core::graph::UndirectedEdge;
use umst_core::{EdgeId, UndirectedGraph};

use crate::error::{Error, Result};

pub fn write_graph<W: Write>(mut w: W, graph: &UndirectedGraph) -> Result<()> {
    writeln!(w, "# vertices {}", graph.n_vertices())?;
    for e in graph.edges() {
        writeln!(w, "{} {} {} {}", e.u, e.v, e.weight, e.id)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_graph<R: BufRead>(reader: R) -> Result<UndirectedGraph> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        let bad = |message: String| Error::GraphFormat { line: k + 1, message };
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            if let Some(n) = comment.trim().strip_prefix("vertices") {
                declared =
                    Some(n.trim().parse::<usize>().map_err(|_| bad(format!("invalid vertex count {:?}", n.trim())))?);
            }
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [u, v, weight, id] = fields[..] else {
            return Err(bad(format!("expected `u v weight original_id`, found {text:?}")));
        };
        let vertex = |s: &str| s.parse::<u32>().map_err(|_| bad(format!("invalid vertex {s:?}")));
        let weight: f64 = weight.parse().map_err(|_| bad(format!("invalid weight {weight:?}")))?;
        if !weight.is_finite() {
            return Err(bad(format!("weight {weight} is not finite")));
        }
        let id: u32 = id.parse().map_err(|_| bad(format!("invalid edge id {id:?}")))?;
        edges.push(UndirectedEdge::new(vertex(u)?, vertex(v)?, weight, EdgeId(id)));
    }
    let implied = edges.iter().map(|e| e.u.max(e.v) as usize + 1).max().unwrap_or(0);
    let n = declared.unwrap_or(implied);
    Ok(UndirectedGraph::from_edges(n, edges)?)
}

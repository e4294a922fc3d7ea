//! DOT and JSON serialisation of exchange graphs.

use std::fmt::Write;
use std::str::FromStr;

use super::{ExchangeGraph, ExploreError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = ExploreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            other => Err(ExploreError::UnknownFormat(other.to_string())),
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' | '\\' => {
                out.push('\\');
                out.push(c);
            }
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Undirected DOT: nodes labelled by their contents, edges by direction
/// (1-based).
pub fn to_dot(g: &ExchangeGraph) -> String {
    let mut out = String::from("graph exchange {\n");
    for (i, n) in g.nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(&n.label)).unwrap();
    }
    for e in &g.edges {
        writeln!(out, "  n{} -- n{} [label=\"{}\"];", e.a, e.b, e.dir + 1).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn export(g: &ExchangeGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => to_dot(g),
        ExportFormat::Json => g.to_json(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explorer::{explore_flips, ExploreOptions};
    use crate::surface::{initial_quasi_triangulation, MarkedSurface};

    #[test]
    fn single_node_dot() {
        let t = initial_quasi_triangulation(&MarkedSurface::polygon(5).unwrap()).unwrap();
        let g = explore_flips(&t, &ExploreOptions::default().depth(Some(0))).unwrap();
        let dot = to_dot(&g);
        assert_eq!(dot.lines().count(), 3);
        assert!(dot.starts_with("graph exchange {\n  n0 [label=\""));
    }

    #[test]
    fn json_round_trip() {
        let t = initial_quasi_triangulation(&MarkedSurface::polygon(6).unwrap()).unwrap();
        let g = explore_flips(&t, &ExploreOptions::default()).unwrap();
        let back = ExchangeGraph::from_json(&export(&g, ExportFormat::Json)).unwrap();
        assert_eq!(back, g);
        let dot = export(&g, ExportFormat::Dot);
        assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("--")).count(), 14);
        assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 21);
        assert!("svg".parse::<ExportFormat>().is_err());
    }
}

//! Byte-stable DOT and GEXF 1.2 exports of a yearly graph.

use std::fmt::Write as _;
use std::str::FromStr;

use cpis_netlab_core::YearGraph;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Gexf,
    Dot,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "gexf" => Ok(GraphFormat::Gexf),
            "dot" => Ok(GraphFormat::Dot),
            _ => Err(Error::Invalid(format!(
                "unknown graph format {s:?}; expected gexf or dot"
            ))),
        }
    }
}

pub fn export_graph(g: &YearGraph, format: GraphFormat) -> Vec<u8> {
    match format {
        GraphFormat::Dot => to_dot(g).into_bytes(),
        GraphFormat::Gexf => to_gexf(g).into_bytes(),
    }
}

/// Empty document for a year with no graph at all.
pub fn export_empty(year: i32, format: GraphFormat) -> Vec<u8> {
    let g = YearGraph::build(year, std::iter::empty(), &[]).expect("empty graph is valid");
    export_graph(&g, format)
}

fn dot_id(id: &str) -> String {
    let bare = id
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if bare {
        id.to_owned()
    } else {
        format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// ```text
/// digraph investment_2001 {
///   A;
///   B;
///   A -> B [weight=10];
/// }
/// ```
pub fn to_dot(g: &YearGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph investment_{} {{", g.year());
    for node in g.nodes() {
        let _ = writeln!(out, "  {};", dot_id(node.as_str()));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [weight={}];",
            dot_id(g.node(e.source).as_str()),
            dot_id(g.node(e.target).as_str()),
            e.weight
        );
    }
    out.push_str("}\n");
    out
}

fn xml_attr(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn to_gexf(g: &YearGraph) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n");
    let _ = writeln!(
        out,
        "  <meta>\n    <description>Bilateral investment network {} (edge weight in USD millions)</description>\n  </meta>",
        g.year()
    );
    out.push_str("  <graph mode=\"static\" defaultedgetype=\"directed\">\n");
    out.push_str("    <nodes>\n");
    for node in g.nodes() {
        let id = xml_attr(node.as_str());
        let _ = writeln!(out, "      <node id=\"{id}\" label=\"{id}\"/>");
    }
    out.push_str("    </nodes>\n    <edges>\n");
    for (k, e) in g.edges().enumerate() {
        let _ = writeln!(
            out,
            "      <edge id=\"{k}\" source=\"{}\" target=\"{}\" weight=\"{}\"/>",
            xml_attr(g.node(e.source).as_str()),
            xml_attr(g.node(e.target).as_str()),
            e.weight
        );
    }
    out.push_str("    </edges>\n  </graph>\n</gexf>\n");
    out
}

use std::io::Read;
use std::path::Path;

use serde::Deserialize;
use stk_graph::Graph;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Edges,
}

/// A parsed graph together with where it came from.
#[derive(Clone, Debug)]
pub struct GraphDocument {
    pub source: String,
    pub format: Format,
    pub graph: Graph,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<(String, String)>,
}

/// Reads `path`, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Parse(format!("{path}: {e}")))
}

pub fn load(path: &str) -> Result<GraphDocument, CliError> {
    let text = read_source(path)?;
    let (format, graph) = parse_graph(&text)?;
    Ok(GraphDocument { source: path.to_string(), format, graph })
}

/// JSON when the text opens with `{`, otherwise an edge list.
pub fn parse_graph(text: &str) -> Result<(Format, Graph), CliError> {
    if text.trim_start().starts_with('{') {
        let doc: GraphJson = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("graph JSON: {e}")))?;
        let edges: Vec<(&str, &str)> = doc.edges.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
        let vertices: Vec<&str> = doc.vertices.iter().map(String::as_str).collect();
        return Ok((Format::Json, Graph::new(&vertices, &edges)?));
    }
    Ok((Format::Edges, parse_edge_list(text)?))
}

/// One `u v` pair per line; a lone name declares an isolated vertex; `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph, CliError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let note = |v: &str, vs: &mut Vec<String>| {
        if !vs.iter().any(|w| w == v) {
            vs.push(v.to_string());
        }
    };
    for (n, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            [v] => note(v, &mut vertices),
            [u, v] => {
                if edges.iter().any(|(a, b)| (a == u && b == v) || (a == v && b == u)) {
                    return Err(CliError::Invalid(format!("line {}: duplicate edge {u} {v}", n + 1)));
                }
                note(u, &mut vertices);
                note(v, &mut vertices);
                edges.push((u.to_string(), v.to_string()));
            }
            _ => return Err(CliError::Parse(format!("line {}: expected `u v`, got `{}`", n + 1, body.trim()))),
        }
    }
    Ok(Graph::new(&vertices, &edges)?)
}

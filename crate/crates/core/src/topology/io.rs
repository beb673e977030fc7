use std::path::Path;

use crate::error::{Error, Result};

use super::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    GraphMl,
    EdgeList,
}

impl GraphFormat {
    /// `.graphml` and `.xml` are GraphML; anything else is an edge list.
    pub fn from_path(path: &Path) -> GraphFormat {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
        {
            Some(ext) if ext == "graphml" || ext == "xml" => GraphFormat::GraphMl,
            _ => GraphFormat::EdgeList,
        }
    }
}

pub fn load_graph(path: &Path, format: GraphFormat) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let name = path.display().to_string();
    match format {
        GraphFormat::GraphMl => parse_graphml(&text, &name),
        GraphFormat::EdgeList => parse_edgelist(&text, &name),
    }
}

/// `nodeA<TAB>nodeB` per line; blank lines and `#` comments are skipped.
pub fn parse_edgelist(text: &str, source_name: &str) -> Result<Graph> {
    let mut g = Graph::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            [a, b] if !a.is_empty() && !b.is_empty() => {
                g.add_edge(a, b);
            }
            _ => {
                return Err(Error::Parse {
                    source_name: source_name.to_string(),
                    message: format!(
                        "line {}: expected `nodeA<TAB>nodeB`, got {:?}",
                        lineno + 1,
                        line
                    ),
                })
            }
        }
    }
    Ok(g)
}

/// GraphML `node`/`edge` elements; attributes other than ids are ignored.
pub fn parse_graphml(text: &str, source_name: &str) -> Result<Graph> {
    let parse_err = |message: String| Error::Parse {
        source_name: source_name.to_string(),
        message,
    };
    let doc = roxmltree::Document::parse(text).map_err(|e| parse_err(e.to_string()))?;
    let mut g = Graph::new();
    let mut saw_graph = false;
    for node in doc.descendants().filter(|n| n.is_element()) {
        let pos = || doc.text_pos_at(node.range().start);
        match node.tag_name().name() {
            "graph" => saw_graph = true,
            "node" => {
                let id = node
                    .attribute("id")
                    .ok_or_else(|| parse_err(format!("<node> without id at {}", pos())))?;
                g.add_node(id);
            }
            "edge" => {
                let (Some(s), Some(t)) = (node.attribute("source"), node.attribute("target"))
                else {
                    return Err(parse_err(format!(
                        "<edge> without source/target at {}",
                        pos()
                    )));
                };
                g.add_edge(s, t);
            }
            _ => {}
        }
    }
    if !saw_graph {
        return Err(parse_err("no <graph> element".into()));
    }
    Ok(g)
}

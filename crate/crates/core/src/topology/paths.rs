use std::collections::HashSet;
use std::fmt;

use crate::bitcore::Element;
use crate::error::{Error, Result};

use super::Graph;

/// A link used in one forwarding direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirectedLink {
    pub from: String,
    pub to: String,
}

impl DirectedLink {
    pub fn new(from: &str, to: &str) -> Self {
        DirectedLink {
            from: from.to_string(),
            to: to.to_string(),
        }
    }

    /// Stable identifier `from->to`.
    pub fn id(&self) -> String {
        format!("{}->{}", self.from, self.to)
    }

    pub fn reversed(&self) -> DirectedLink {
        DirectedLink::new(&self.to, &self.from)
    }
}

impl fmt::Display for DirectedLink {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

impl Element for DirectedLink {
    fn element_key(&self) -> u64 {
        self.id().element_key()
    }
}

/// A shortest path realising the diameter of the largest component.
///
/// Among endpoint pairs at maximal distance the pair `(a, b)` with `a < b`
/// that is lexicographically smallest wins; the path itself is the
/// lexicographically smallest shortest path from `a` to `b`.
pub fn select_long_path(g: &Graph) -> Result<Vec<String>> {
    let comp = g.largest_component();
    if comp.len() < 2 {
        return Err(Error::Graph(
            "no connected component with two or more nodes".into(),
        ));
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for &u in &comp {
        let dist = g.bfs(u);
        for &v in &comp {
            if g.name(u) >= g.name(v) {
                continue;
            }
            let d = dist[v].expect("same component");
            let better = match best {
                None => true,
                Some((bd, bu, bv)) => {
                    d > bd || (d == bd && (g.name(u), g.name(v)) < (g.name(bu), g.name(bv)))
                }
            };
            if better {
                best = Some((d, u, v));
            }
        }
    }
    let (_, a, b) = best.expect("component has two nodes");
    let to_b = g.bfs(b);
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        let d = to_b[cur].unwrap();
        cur = g
            .neighbors_by_name(cur)
            .into_iter()
            .find(|&w| to_b[w] == Some(d - 1))
            .expect("a neighbour one hop closer exists");
        path.push(cur);
    }
    Ok(path.into_iter().map(|i| g.name(i).to_string()).collect())
}

/// Splits the outgoing links of the path's nodes into the path links `S`
/// and the other adjacent links `T`.
///
/// With `include_reverse` false, links that traverse a path link backwards
/// are left out of `T`.
pub fn derive_link_sets(
    g: &Graph,
    path: &[String],
    include_reverse: bool,
) -> Result<(Vec<DirectedLink>, Vec<DirectedLink>)> {
    if path.len() < 2 {
        return Err(Error::Graph("a path needs at least two nodes".into()));
    }
    let mut seen = HashSet::new();
    for node in path {
        if g.index_of(node).is_none() {
            return Err(Error::Graph(format!(
                "path node {node:?} is not in the graph"
            )));
        }
        if !seen.insert(node.as_str()) {
            return Err(Error::Graph(format!("path visits {node:?} twice")));
        }
    }
    let s: Vec<DirectedLink> = path
        .windows(2)
        .map(|w| {
            if g.has_edge(&w[0], &w[1]) {
                Ok(DirectedLink::new(&w[0], &w[1]))
            } else {
                Err(Error::Graph(format!(
                    "no edge between {:?} and {:?}",
                    w[0], w[1]
                )))
            }
        })
        .collect::<Result<_>>()?;
    let s_set: HashSet<&DirectedLink> = s.iter().collect();
    let reverse: HashSet<DirectedLink> = s.iter().map(DirectedLink::reversed).collect();
    let mut t = Vec::new();
    for node in path {
        let u = g.index_of(node).unwrap();
        for v in g.neighbors_by_name(u) {
            let link = DirectedLink::new(node, g.name(v));
            if s_set.contains(&link) || (!include_reverse && reverse.contains(&link)) {
                continue;
            }
            t.push(link);
        }
    }
    Ok((s, t))
}

use std::collections::{BTreeSet, HashMap, VecDeque};

/// Undirected simple graph with string node ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
    dropped_self_loops: usize,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn add_node(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        self.adj.push(BTreeSet::new());
        i
    }

    /// Adds the undirected edge `a - b`, creating missing nodes. Returns
    /// false for self-loops (dropped) and for edges already present.
    pub fn add_edge(&mut self, a: &str, b: &str) -> bool {
        if a == b {
            log::warn!("dropping self-loop on node {a:?}");
            self.add_node(a);
            self.dropped_self_loops += 1;
            return false;
        }
        let (ia, ib) = (self.add_node(a), self.add_node(b));
        if !self.adj[ia].insert(ib) {
            return false;
        }
        self.adj[ib].insert(ia);
        self.edge_count += 1;
        true
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn dropped_self_loops(&self) -> usize {
        self.dropped_self_loops
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(a), Some(b)) => self.adj[a].contains(&b),
            _ => false,
        }
    }

    /// Neighbours of node `i` ordered by name.
    pub fn neighbors_by_name(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.adj[i].iter().copied().collect();
        out.sort_by(|&x, &y| self.names[x].cmp(&self.names[y]));
        out
    }

    pub(crate) fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().copied()
    }

    /// Edges as name pairs, each listed once with the smaller index first.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.adj.iter().enumerate().flat_map(move |(a, ns)| {
            ns.iter()
                .filter(move |&&b| a < b)
                .map(move |&b| (self.names[a].as_str(), self.names[b].as_str()))
        })
    }

    /// Hop distances from `src`; `None` for unreachable nodes.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Node indices of the largest connected component. Ties go to the
    /// component holding the lexicographically smallest node name.
    pub fn largest_component(&self) -> Vec<usize> {
        let mut seen = vec![false; self.node_count()];
        let mut best: Option<(Vec<usize>, String)> = None;
        for start in 0..self.node_count() {
            if seen[start] {
                continue;
            }
            let comp: Vec<usize> = self
                .bfs(start)
                .iter()
                .enumerate()
                .filter_map(|(i, d)| d.map(|_| i))
                .collect();
            for &i in &comp {
                seen[i] = true;
            }
            let min_name = comp.iter().map(|&i| self.names[i].clone()).min().unwrap();
            let better = match &best {
                None => true,
                Some((b, bn)) => comp.len() > b.len() || (comp.len() == b.len() && min_name < *bn),
            };
            if better {
                best = Some((comp, min_name));
            }
        }
        let mut comp = best.map(|(c, _)| c).unwrap_or_default();
        comp.sort_unstable();
        comp
    }

    /// Edge-list text, one `a<TAB>b` line per edge.
    pub fn to_edgelist(&self) -> String {
        self.edges().map(|(a, b)| format!("{a}\t{b}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_edges_collapse_and_self_loops_drop() {
        let mut g = Graph::new();
        assert!(g.add_edge("a", "b"));
        assert!(!g.add_edge("b", "a"));
        assert!(!g.add_edge("c", "c"));
        assert_eq!(
            (g.node_count(), g.edge_count(), g.dropped_self_loops()),
            (3, 1, 1)
        );
    }

    #[test]
    fn largest_component_wins() {
        let mut g = Graph::new();
        g.add_edge("x", "y");
        g.add_edge("a", "b");
        g.add_edge("b", "c");
        let names: Vec<&str> = g.largest_component().iter().map(|&i| g.name(i)).collect();
        assert_eq!(names, vec!["a", "b", "c"]);
    }

    #[test]
    fn bfs_distances() {
        let mut g = Graph::new();
        g.add_edge("a", "b");
        g.add_edge("b", "c");
        g.add_node("z");
        let d = g.bfs(g.index_of("a").unwrap());
        assert_eq!(d, vec![Some(0), Some(1), Some(2), None]);
    }
}

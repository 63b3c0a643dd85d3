//! Small oriented graphs used for fiber balls, Bass-Serre balls and DOT export.

use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write;

/// A finite oriented graph with a distinguished root (vertex 0) and BFS depths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientedGraph {
    pub labels: Vec<String>,
    pub depth: Vec<usize>,
    /// Oriented edges `(tail, head)`.
    pub edges: Vec<(usize, usize)>,
}

impl OrientedGraph {
    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == v).count()
    }

    /// Count of vertices at each depth `0..=max`.
    pub fn sphere_sizes(&self) -> Vec<usize> {
        let max = self.depth.iter().copied().max().unwrap_or(0);
        let mut out = vec![0; max + 1];
        for &d in &self.depth {
            out[d] += 1;
        }
        out
    }

    /// Connected and `|E| = |V| - 1`, ignoring orientation.
    pub fn is_tree(&self) -> bool {
        let n = self.n_vertices();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    /// Neighbours with a flag: `true` when the edge points away from `v`.
    fn adjacency(&self) -> Vec<Vec<(usize, bool)>> {
        let mut adj = vec![Vec::new(); self.n_vertices()];
        for &(a, b) in &self.edges {
            adj[a].push((b, true));
            adj[b].push((a, false));
        }
        adj
    }

    /// Canonical string of the tree rooted at vertex 0 up to oriented isomorphism.
    /// Only meaningful when [`OrientedGraph::is_tree`] holds.
    pub fn rooted_code(&self) -> String {
        let adj = self.adjacency();
        fn code(v: usize, parent: Option<usize>, adj: &[Vec<(usize, bool)>]) -> String {
            let mut kids: Vec<String> = adj[v]
                .iter()
                .filter(|(w, _)| Some(*w) != parent)
                .map(|&(w, out)| format!("{}{}", if out { '+' } else { '-' }, code(w, Some(v), adj)))
                .collect();
            kids.sort();
            format!("({})", kids.concat())
        }
        code(0, None, &adj)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        writeln!(s, "digraph \"{}\" {{", name).unwrap();
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(s, "  v{} [label=\"{}\"];", i, l.replace('"', "'")).unwrap();
        }
        let mut edges = self.edges.clone();
        edges.sort();
        for (a, b) in edges {
            writeln!(s, "  v{} -> v{};", a, b).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// Rooted oriented-tree isomorphism of two balls.
pub fn rooted_isomorphic(a: &OrientedGraph, b: &OrientedGraph) -> bool {
    a.is_tree() && b.is_tree() && a.rooted_code() == b.rooted_code()
}

/// Builds a graph by BFS from `root` using `neighbours`, which lists `(vertex, edge points away
/// from the current vertex)`. Vertices are identified by key equality; the neighbour relation
/// must be symmetric.
pub fn bfs_ball<K, F, E>(
    root: K,
    radius: usize,
    max_vertices: usize,
    label: impl Fn(&K) -> String,
    mut neighbours: F,
) -> Result<OrientedGraph, E>
where
    K: Ord + Clone,
    F: FnMut(&K) -> Result<Vec<(K, bool)>, E>,
    E: From<BallTooLarge>,
{
    let mut index: BTreeMap<K, usize> = BTreeMap::new();
    let mut keys = vec![root.clone()];
    let mut depth = vec![0];
    let mut edges = Vec::new();
    index.insert(root, 0);
    let mut frontier = 0;
    while frontier < keys.len() {
        let v = frontier;
        frontier += 1;
        if depth[v] == radius {
            continue;
        }
        let k = keys[v].clone();
        for (w, out) in neighbours(&k)? {
            let wi = match index.get(&w) {
                Some(&wi) => {
                    // Edges towards shallower vertices were recorded from the other end;
                    // level edges are recorded once, from the smaller index.
                    if depth[wi] < depth[v] || (depth[wi] == depth[v] && wi < v) {
                        continue;
                    }
                    wi
                }
                None => {
                    if keys.len() >= max_vertices {
                        return Err(BallTooLarge(max_vertices).into());
                    }
                    let wi = keys.len();
                    index.insert(w.clone(), wi);
                    keys.push(w);
                    depth.push(depth[v] + 1);
                    wi
                }
            };
            edges.push(if out { (v, wi) } else { (wi, v) });
        }
    }
    Ok(OrientedGraph { labels: keys.iter().map(label).collect(), depth, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallTooLarge(pub usize);

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(usize, usize)], n: usize) -> OrientedGraph {
        OrientedGraph {
            labels: (0..n).map(|i| i.to_string()).collect(),
            depth: vec![0; n],
            edges: edges.to_vec(),
        }
    }

    #[test]
    fn codes_distinguish_orientation() {
        let a = g(&[(0, 1), (0, 2)], 3);
        let b = g(&[(0, 1), (2, 0)], 3);
        let c = g(&[(0, 2), (0, 1)], 3);
        assert!(rooted_isomorphic(&a, &c));
        assert!(!rooted_isomorphic(&a, &b));
        assert!(!g(&[(0, 1), (1, 2), (2, 0)], 3).is_tree());
    }
}

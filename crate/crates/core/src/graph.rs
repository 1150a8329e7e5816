//! Simple undirected graphs and the structural queries the energy code relies on.
//!
//! Vertices are `0..n` internally. The edge-list text format uses 1-based ids.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// An immutable simple graph. Edges are stored once as `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
    #[serde(skip)]
    duplicates: usize,
}

/// Two-colouring of a connected bipartite graph. `side_a` holds vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl Bipartition {
    pub fn contains_a(&self, v: usize) -> bool {
        self.side_a.binary_search(&v).is_ok()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            duplicates: 0,
        }
    }

    /// Builds a graph from 0-based edge pairs. Repeated edges (in either
    /// orientation) are dropped and counted in [`Graph::duplicate_edges`].
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut set = BTreeSet::new();
        let mut duplicates = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop {
                    line: 0,
                    vertex: u + 1,
                });
            }
            if !set.insert((u.min(v), u.max(v))) {
                duplicates += 1;
            }
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges,
            adjacency,
            duplicates,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Number of repeated edges dropped while building the graph.
    pub fn duplicate_edges(&self) -> usize {
        self.duplicates
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Connected components, each as a sorted vertex list, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Fails unless the graph is connected with at least two vertices.
    pub fn require_connected(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyInput);
        }
        if self.n == 1 {
            return Err(Error::SingleVertex);
        }
        let components = self.components().len();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(())
    }

    /// BFS two-colouring. `Ok(None)` when an odd cycle exists.
    pub fn bipartition(&self) -> Result<Option<Bipartition>> {
        if self.n == 0 {
            return Err(Error::EmptyInput);
        }
        let components = self.components().len();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        colour[0] = Some(false);
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].expect("queued vertices are coloured");
            for &w in &self.adjacency[u] {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return Ok(None),
                    Some(_) => {}
                }
            }
        }
        let (mut side_a, mut side_b) = (Vec::new(), Vec::new());
        for (v, c) in colour.into_iter().enumerate() {
            if c == Some(false) {
                side_a.push(v);
            } else {
                side_b.push(v);
            }
        }
        Ok(Some(Bipartition { side_a, side_b }))
    }

    /// `G - v`: removes `v` and its edges, renumbering later vertices down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let shift = |w: usize| if w > v { w - 1 } else { w };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| a != v && b != v)
            .map(|&(a, b)| (shift(a), shift(b)));
        Graph::from_edges(self.n - 1, edges)
    }

    /// Disjoint union; `other`'s vertices follow this graph's.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let offset = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(a, b)| (a + offset, b + offset)));
        Graph::from_edges(self.n + other.n, edges).expect("union of valid graphs is valid")
    }

    /// Subgraph induced on `vertices` (any order), relabelled `0..vertices.len()` in that order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (new, &old) in vertices.iter().enumerate() {
            self.check_vertex(old)?;
            index[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]));
        Graph::from_edges(vertices.len(), edges)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.n
            )));
        }
        let edges = self.edges.iter().map(|&(a, b)| (perm[a], perm[b]));
        Graph::from_edges(self.n, edges)
    }

    /// Vertices adjacent to both `i` and `j` (the neighbourhood of `i` when `i == j`).
    pub fn common_neighbors(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        let (a, b) = (&self.adjacency[i], &self.adjacency[j]);
        let (mut p, mut q) = (0, 0);
        let mut out = Vec::new();
        while p < a.len() && q < b.len() {
            match a[p].cmp(&b[q]) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[p]);
                    p += 1;
                    q += 1;
                }
            }
        }
        Ok(out)
    }

    /// Serializes to the edge-list format with an explicit `n` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{} {}", u + 1, v + 1);
        }
        out
    }
}

/// Parses the edge-list format: an optional header (`n <count>` or a bare
/// count) followed by `<u> <v>` lines of 1-based ids. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id = 0;
    let mut saw_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let first_content = !saw_content;
        saw_content = true;

        let parse_id = |tok: &str| -> Result<usize> {
            tok.parse::<usize>().map_err(|_| Error::Malformed {
                line: line_no,
                message: format!("expected a vertex id, found {tok:?}"),
            })
        };

        match tokens.as_slice() {
            ["n", count] if first_content => declared = Some(parse_id(count)?),
            [count] if first_content => declared = Some(parse_id(count)?),
            [u, v] => {
                let (u, v) = (parse_id(u)?, parse_id(v)?);
                if u == 0 || v == 0 {
                    return Err(Error::ZeroVertexId { line: line_no });
                }
                if u == v {
                    return Err(Error::SelfLoop {
                        line: line_no,
                        vertex: u,
                    });
                }
                max_id = max_id.max(u).max(v);
                edges.push((u - 1, v - 1));
            }
            _ => {
                return Err(Error::Malformed {
                    line: line_no,
                    message: format!("expected `<u> <v>`, found {line:?}"),
                })
            }
        }
    }

    let n = match declared {
        Some(n) if n < max_id => {
            return Err(Error::VertexOutOfRange { vertex: max_id, n });
        }
        Some(n) => n,
        None => max_id,
    };
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    Graph::from_edges(n, edges)
}

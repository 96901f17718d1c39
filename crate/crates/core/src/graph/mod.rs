//! Simple undirected graphs.

pub mod graph6;

use std::collections::VecDeque;

use nalgebra::DMatrix;
use serde::Deserialize;

use crate::error::{Error, Result};

/// Default construction cap on the number of vertices.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 20;

/// A simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, so structural equality is graph equality
/// on the same labelled vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    neighbors: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("a graph needs at least one vertex".into()));
        }
        Ok(Self {
            neighbors: vec![Vec::new(); n],
            labels: None,
        })
    }

    /// Builds a graph from an edge list. Loops and repeated edges are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (a, b) in edges {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::EdgeList(format!("loop at vertex {a}")));
            }
            g.neighbors[a].push(b);
            g.neighbors[b].push(a);
        }
        for (v, list) in g.neighbors.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::EdgeList(format!("repeated edge at vertex {v}")));
            }
        }
        Ok(g)
    }

    /// Parses the JSON edge-list form `{"n": 3, "edges": [[0,1],[1,2]]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct EdgeList {
            n: usize,
            edges: Vec<[usize; 2]>,
            #[serde(default)]
            labels: Option<Vec<String>>,
        }
        let parsed: EdgeList =
            serde_json::from_str(text).map_err(|e| Error::EdgeList(e.to_string()))?;
        let g = Self::from_edges(parsed.n, parsed.edges.iter().map(|e| (e[0], e[1])))?;
        match parsed.labels {
            Some(labels) => g.with_labels(labels),
            None => Ok(g),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.neighbors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degree(0);
        (1..self.n()).all(|v| self.degree(v) == d)
    }

    pub fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(Option::is_some)
    }

    /// BFS distances from `source`; `None` for unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap_or(0);
            for &y in &self.neighbors[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let n = self.n();
        let mut m = DMatrix::zeros(n, n);
        for (a, b) in self.edges() {
            m[(a, b)] = 1.0;
            m[(b, a)] = 1.0;
        }
        m
    }

    /// Removes `u`; surviving vertices keep their relative order.
    pub fn delete_vertex(&self, u: usize) -> Result<Self> {
        self.check_vertex(u)?;
        if self.n() == 1 {
            return Err(Error::InvalidArgument(
                "deleting the only vertex leaves the null graph".into(),
            ));
        }
        let relabel = |x: usize| if x > u { x - 1 } else { x };
        let neighbors = self
            .neighbors
            .iter()
            .enumerate()
            .filter(|&(x, _)| x != u)
            .map(|(_, list)| list.iter().filter(|&&y| y != u).map(|&y| relabel(y)).collect())
            .collect();
        let labels = self.labels.as_ref().map(|labels| {
            labels
                .iter()
                .enumerate()
                .filter(|&(x, _)| x != u)
                .map(|(_, l)| l.clone())
                .collect()
        });
        Ok(Self { neighbors, labels })
    }

    /// Applies a vertex permutation: vertex `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument("not a permutation".into()));
        }
        Self::from_edges(n, self.edges().map(|(a, b)| (perm[a], perm[b])))
    }
}

/// Construction caps for the named families and products.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

impl Limits {
    fn check(&self, what: &'static str, size: usize) -> Result<()> {
        if size > self.max_vertices {
            Err(Error::TooLarge {
                what,
                size,
                cap: self.max_vertices,
            })
        } else {
            Ok(())
        }
    }

    pub fn hypercube(&self, d: u32) -> Result<Graph> {
        let n = 1usize
            .checked_shl(d)
            .filter(|_| d < usize::BITS)
            .ok_or(Error::TooLarge {
                what: "hypercube",
                size: usize::MAX,
                cap: self.max_vertices,
            })?;
        self.check("hypercube", n)?;
        let edges = (0..n).flat_map(|x| (0..d).map(move |b| (x, x ^ (1 << b))).filter(|(x, y)| x < y));
        Graph::from_edges(n, edges)
    }

    /// Vertex `(a, x)` gets index `a * h.n() + x`.
    pub fn cartesian_product(&self, g: &Graph, h: &Graph) -> Result<Graph> {
        let (gn, hn) = (g.n(), h.n());
        let n = gn.saturating_mul(hn);
        self.check("cartesian product", n)?;
        let idx = |a: usize, x: usize| a * hn + x;
        let mut edges = Vec::with_capacity(gn * h.edge_count() + hn * g.edge_count());
        for a in 0..gn {
            edges.extend(h.edges().map(|(x, y)| (idx(a, x), idx(a, y))));
        }
        for (a, b) in g.edges() {
            edges.extend((0..hn).map(|x| (idx(a, x), idx(b, x))));
        }
        Graph::from_edges(n, edges)
    }
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("path needs at least one vertex".into()));
    }
    Limits::default().check("path", n)?;
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidArgument("cycle needs at least three vertices".into()));
    }
    Limits::default().check("cycle", n)?;
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    Limits::default().check("complete graph", n)?;
    Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
}

/// `K_{1,k}` with the center at vertex 0.
pub fn star(k: usize) -> Result<Graph> {
    Graph::from_edges(k + 1, (1..=k).map(|i| (0, i)))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("static edge list")
}

pub fn hypercube(d: u32) -> Result<Graph> {
    Limits::default().hypercube(d)
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    Limits::default().cartesian_product(g, h)
}

/// Reads one graph from text: graph6 (optionally with header) or a JSON edge list.
pub fn parse_any(text: &str) -> Result<Graph> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        Graph::from_json(trimmed)
    } else {
        Ok(graph6::parse_graph6(trimmed)?)
    }
}

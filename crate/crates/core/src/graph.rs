//! Simple undirected graphs with optional self-loops.
//!
//! A loop at `v` puts `v` into its own neighbourhood and adds one to its
//! degree. Edges have set semantics: adding an existing edge is a no-op.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{HomError, Result};

#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        if let Some(l) = &mut self.labels {
            l.push(String::new());
        }
        self.adj.len() - 1
    }

    /// Adds the edge `uv` (a loop when `u == v`). Returns whether it was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(HomError::Malformed(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                if u != v {
                    let pos = self.adj[v].binary_search(&u).unwrap_err();
                    self.adj[v].insert(pos, u);
                }
                self.m += 1;
                Ok(true)
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n()).all(|v| !self.has_loop(v))
    }

    /// Sorted neighbourhood; contains `v` itself when `v` carries a loop.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if v >= u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n() {
            return Err(HomError::Malformed(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        let l: Vec<String> = labels.into_iter().map(Into::into).collect();
        assert_eq!(l.len(), self.n(), "label count must match vertex count");
        self.labels = Some(l);
        self
    }

    /// The subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && j >= i {
                    g.add_edge(i, j).expect("indices in range");
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
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
        self.components().len() <= 1
    }

    /// Two-colouring with the smallest vertex of each component on side `false`,
    /// or `None` when the graph is not bipartite (loops make it non-bipartite).
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.n();
        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Parses the line-oriented graph format: `n <count>`, then `e <u> <v>` lines.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g: Option<Graph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tok = line.split_whitespace();
            match tok.next() {
                Some("n") => {
                    if g.is_some() {
                        return Err(HomError::parse(line_no, "repeated vertex count"));
                    }
                    let n = parse_usize(tok.next(), line_no)?;
                    expect_end(tok, line_no)?;
                    g = Some(Graph::new(n));
                }
                Some("e") => {
                    let graph = g
                        .as_mut()
                        .ok_or_else(|| HomError::parse(line_no, "edge before vertex count"))?;
                    let u = parse_usize(tok.next(), line_no)?;
                    let v = parse_usize(tok.next(), line_no)?;
                    expect_end(tok, line_no)?;
                    graph
                        .add_edge(u, v)
                        .map_err(|e| HomError::parse(line_no, e.to_string()))?;
                }
                Some(other) => return Err(HomError::parse(line_no, format!("unknown record `{other}`"))),
                None => unreachable!(),
            }
        }
        g.ok_or_else(|| HomError::Malformed("missing `n` line".into()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n {}", self.n()).unwrap();
        for (u, v) in self.edges() {
            writeln!(s, "e {u} {v}").unwrap();
        }
        s
    }
}

pub(crate) fn parse_usize(tok: Option<&str>, line: usize) -> Result<usize> {
    let t = tok.ok_or_else(|| HomError::parse(line, "missing integer"))?;
    t.parse::<usize>()
        .map_err(|_| HomError::parse(line, format!("expected a non-negative integer, got `{t}`")))
}

pub(crate) fn expect_end<'a>(mut tok: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match tok.next() {
        None => Ok(()),
        Some(t) => Err(HomError::parse(line, format!("unexpected token `{t}`"))),
    }
}

//! Simple undirected graphs on dense vertex ids, plus the derived-graph
//! plumbing (induced subgraphs, contractions, attachments) that the
//! extractors build at every recursive step.
//!
//! A [`Graph`] is an immutable value. Operations that change the vertex set
//! return a [`Derived`] graph which remembers, for each of its vertices, the
//! set of parent vertices it stands for. Plain vertices stand for exactly one
//! parent vertex; a merged vertex stands for a group. Paths found in a derived
//! graph are pulled back to the parent with [`Derived::lift_path`].

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A sorted, duplicate-free list of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(ids: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        !self.iter().any(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    pub fn minus(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn without(&self, v: usize) -> VertexSet {
        VertexSet(self.iter().filter(|&u| u != v).collect())
    }

    /// Membership mask over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for v in self.iter() {
            m[v] = true;
        }
        m
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n] }
    }

    /// Builds a graph from an edge list. Repeated and reversed pairs are
    /// merged; self-loops and out-of-range ids are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u},{v}) out of range for n={n}")));
            }
            if u == v {
                return Err(invalid(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph::from_edges(n, &edges).expect("valid")
    }

    /// Complete bipartite graph K_{a,b}; the first part is `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
        Graph::from_edges(a + b, &edges).expect("valid")
    }

    /// Cycle 0-1-...-(n-1)-0.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("valid")
    }

    /// Path 0-1-...-(n-1).
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// The induction measure |V| + |E|.
    pub fn measure(&self) -> usize {
        self.n() + self.m()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Minimum degree over vertices other than the two roots.
    pub fn rooted_min_degree(&self, x: usize, y: usize) -> usize {
        (0..self.n()).filter(|&v| v != x && v != y).map(|v| self.degree(v)).min().unwrap_or(usize::MAX)
    }

    /// Copy of the graph with edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if u != v && !g.has_edge(u, v) {
            let pos = g.adj[u].binary_search(&v).unwrap_err();
            g.adj[u].insert(pos, v);
            let pos = g.adj[v].binary_search(&u).unwrap_err();
            g.adj[v].insert(pos, u);
        }
        g
    }

    /// Copy of the graph with edge `uv` removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.adj[u].retain(|&w| w != v);
        g.adj[v].retain(|&w| w != u);
        g
    }

    /// N(s) = vertices outside `s` with a neighbour in `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        let inside = s.mask(self.n());
        s.iter().flat_map(|v| self.adj[v].iter().copied()).filter(|&w| !inside[w]).collect()
    }

    /// Number of neighbours of `v` inside the mask.
    pub fn degree_into(&self, v: usize, mask: &[bool]) -> usize {
        self.adj[v].iter().filter(|&&w| mask[w]).count()
    }

    /// Common neighbourhood of every vertex in `s`.
    pub fn common_neighbors(&self, s: &VertexSet) -> VertexSet {
        let mut it = s.iter();
        let Some(first) = it.next() else {
            return VertexSet::empty();
        };
        let mut acc: Vec<usize> = self.adj[first].clone();
        for v in it {
            acc.retain(|w| self.has_edge(v, *w));
        }
        VertexSet::new(acc)
    }

    fn check_range(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&v| v >= self.n()) {
            Some(v) => Err(invalid(format!("vertex {v} out of range for n={}", self.n()))),
            None => Ok(()),
        }
    }

    /// Parses the edge-list text format: an optional `p <n> <m>` header, then
    /// one `u v` pair per line. Blank lines and lines starting with `c` or `#`
    /// are ignored. Without a header, n is one more than the largest id.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut declared: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('c') {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: line_no, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields[0] == "p" {
                if declared.is_some() || !edges.is_empty() {
                    return Err(parse_err("header must come first and only once".into()));
                }
                let nums: Vec<&str> =
                    fields[1..].iter().copied().filter(|f| f.parse::<usize>().is_ok()).collect();
                if nums.len() != 2 || fields.len() > 4 {
                    return Err(parse_err(format!("malformed header `{line}`")));
                }
                declared = Some((nums[0].parse().unwrap(), nums[1].parse().unwrap()));
                continue;
            }
            if fields.len() != 2 {
                return Err(parse_err(format!("expected `u v`, found `{line}`")));
            }
            let u: usize = fields[0].parse().map_err(|_| parse_err(format!("bad vertex `{}`", fields[0])))?;
            let v: usize = fields[1].parse().map_err(|_| parse_err(format!("bad vertex `{}`", fields[1])))?;
            if u == v {
                return Err(parse_err(format!("self-loop at {u}")));
            }
            edges.push((u, v));
        }
        let max_id = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let n = match declared {
            Some((n, _)) if n < max_id => {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("vertex id {} exceeds declared n={n}", max_id - 1),
                })
            }
            Some((n, _)) => n,
            None => max_id,
        };
        Graph::from_edges(n, &edges)
    }

    /// Serializes to the edge-list format with a header.
    pub fn to_text(&self) -> String {
        let mut out = format!("p {} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// E(S, T): edges with one end in each of two disjoint sets.
pub fn edges_between(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<(usize, Vec<(usize, usize)>)> {
    g.check_range(s)?;
    g.check_range(t)?;
    if !s.is_disjoint(t) {
        return Err(invalid("edges_between needs disjoint sets"));
    }
    let list: Vec<(usize, usize)> = s
        .iter()
        .flat_map(|u| g.neighbors(u).iter().filter(|&&w| t.contains(w)).map(move |&w| (u, w)))
        .collect();
    Ok((list.len(), list))
}

/// Whether any edge joins the two (disjoint) masks.
pub fn touches(g: &Graph, a: &[bool], b: &[bool]) -> bool {
    (0..g.n()).any(|u| a[u] && g.neighbors(u).iter().any(|&w| b[w]))
}

/// A proper 2-colouring (`false`/`true` per vertex), if one exists.
pub fn is_bipartite(g: &Graph) -> Option<Vec<bool>> {
    let mut color: Vec<Option<bool>> = vec![None; g.n()];
    let mut queue = VecDeque::new();
    for start in 0..g.n() {
        if color[start].is_some() {
            continue;
        }
        color[start] = Some(false);
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in g.neighbors(u) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return None,
                    _ => {}
                }
            }
        }
    }
    Some(color.into_iter().map(Option::unwrap).collect())
}

/// A graph obtained from a parent graph, with the parent vertices behind each
/// of its own vertices.
#[derive(Clone, Debug)]
pub struct Derived {
    pub graph: Graph,
    origin: Vec<Vec<usize>>,
    local: Vec<Option<usize>>,
}

impl Derived {
    /// Parent vertices represented by local vertex `v` (one for plain vertices).
    pub fn members(&self, v: usize) -> &[usize] {
        &self.origin[v]
    }

    pub fn is_merged(&self, v: usize) -> bool {
        self.origin[v].len() != 1
    }

    /// Parent id of a plain local vertex.
    pub fn parent(&self, v: usize) -> usize {
        debug_assert!(!self.is_merged(v));
        self.origin[v][0]
    }

    /// Local id of a parent vertex (plain or merged into a group).
    pub fn local(&self, p: usize) -> Option<usize> {
        self.local.get(p).copied().flatten()
    }

    /// Pulls a local path back to parent ids. A merged vertex may only sit at
    /// either end; it is replaced by its smallest member adjacent to the next
    /// vertex on the path.
    pub fn lift_path(&self, parent: &Graph, path: &[usize]) -> Option<Vec<usize>> {
        let last = path.len().checked_sub(1)?;
        let mut out: Vec<usize> = Vec::with_capacity(path.len());
        for (i, &v) in path.iter().enumerate() {
            if !self.is_merged(v) {
                out.push(self.parent(v));
                continue;
            }
            if last == 0 || (i != 0 && i != last) {
                return None;
            }
            let anchor = if i == 0 { path[1] } else { path[i - 1] };
            if self.is_merged(anchor) {
                return None;
            }
            let a = self.parent(anchor);
            let pick = self.origin[v].iter().copied().find(|&m| parent.has_edge(m, a))?;
            out.push(pick);
        }
        Some(out)
    }
}

/// Incremental construction of a [`Derived`] graph.
pub struct DerivedBuilder<'a> {
    parent: &'a Graph,
    groups: Vec<Vec<usize>>,
    links: Vec<(usize, usize)>,
}

impl<'a> DerivedBuilder<'a> {
    pub fn new(parent: &'a Graph) -> Self {
        DerivedBuilder { parent, groups: Vec::new(), links: Vec::new() }
    }

    /// Adds one plain vertex; returns its local id.
    pub fn vertex(&mut self, p: usize) -> usize {
        self.groups.push(vec![p]);
        self.groups.len() - 1
    }

    pub fn vertices(&mut self, ps: impl IntoIterator<Item = usize>) -> &mut Self {
        for p in ps {
            self.vertex(p);
        }
        self
    }

    /// Adds one vertex standing for all of `members`; returns its local id.
    /// It is adjacent to every plain vertex adjacent to some member, and to
    /// other merged vertices only through [`DerivedBuilder::link`].
    pub fn group(&mut self, members: impl IntoIterator<Item = usize>) -> usize {
        let mut m: Vec<usize> = members.into_iter().collect();
        m.sort_unstable();
        m.dedup();
        self.groups.push(m);
        self.groups.len() - 1
    }

    /// Explicit edge between two local vertices.
    pub fn link(&mut self, a: usize, b: usize) -> &mut Self {
        self.links.push((a, b));
        self
    }

    pub fn build(&self) -> Derived {
        let n = self.groups.len();
        let mut local = vec![None; self.parent.n()];
        for (i, g) in self.groups.iter().enumerate() {
            for &p in g {
                debug_assert!(local[p].is_none(), "parent vertex {p} used twice");
                local[p] = Some(i);
            }
        }
        let mut edges = Vec::new();
        for (u, v) in self.parent.edges() {
            if let (Some(a), Some(b)) = (local[u], local[v]) {
                let both_merged = self.groups[a].len() != 1 && self.groups[b].len() != 1;
                if a != b && !both_merged {
                    edges.push((a, b));
                }
            }
        }
        edges.extend(self.links.iter().copied().filter(|(a, b)| a != b));
        let graph = Graph::from_edges(n, &edges).expect("local ids are in range");
        Derived { graph, origin: self.groups.clone(), local }
    }
}

/// G[S] with the mapping back to `g`.
pub fn induced(g: &Graph, s: &VertexSet) -> Result<Derived> {
    g.check_range(s)?;
    let mut b = DerivedBuilder::new(g);
    b.vertices(s.iter());
    Ok(b.build())
}

/// G[S, T]: vertex set S ∪ T with only the edges between S and T.
pub fn bipartite_subgraph(g: &Graph, s: &VertexSet, t: &VertexSet) -> Result<Derived> {
    let (_, between) = edges_between(g, s, t)?;
    let all = s.union(t);
    let n = all.len();
    let pos = |v: usize| all.as_slice().binary_search(&v).unwrap();
    let edges: Vec<_> = between.iter().map(|&(u, v)| (pos(u), pos(v))).collect();
    let graph = Graph::from_edges(n, &edges)?;
    let mut local = vec![None; g.n()];
    for (i, v) in all.iter().enumerate() {
        local[v] = Some(i);
    }
    Ok(Derived { graph, origin: all.iter().map(|v| vec![v]).collect(), local })
}

/// Replaces `s` by a single vertex adjacent to N(s); returns the derived graph
/// and the local id of the new vertex.
pub fn contract_set(g: &Graph, s: &VertexSet) -> Result<(Derived, usize)> {
    g.check_range(s)?;
    if s.is_empty() {
        return Err(invalid("cannot contract an empty set"));
    }
    let mut b = DerivedBuilder::new(g);
    b.vertices((0..g.n()).filter(|&v| !s.contains(v)));
    let star = if s.len() == 1 { b.vertex(s.first().unwrap()) } else { b.group(s.iter()) };
    Ok((b.build(), star))
}

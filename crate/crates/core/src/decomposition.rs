//! Connectivity structure: components, blocks and cut vertices, rooted
//! 2-connectedness, small vertex cuts, feasible end blocks, and the two
//! path-routing helpers (masked BFS and vertex-disjoint paths) the extractors
//! use to stitch pieces together.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, VertexSet};

/// Connected components of the subgraph induced by `mask` (all vertices when
/// `None`), each sorted, ordered by smallest vertex.
pub fn components(g: &Graph, mask: Option<&[bool]>) -> Vec<Vec<usize>> {
    let n = g.n();
    let inside = |v: usize| mask.is_none_or(|m| m[v]);
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || !inside(s) {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in g.neighbors(u) {
                if !seen[w] && inside(w) {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    components(g, None).len() <= 1
}

/// Whether the subgraph induced by `mask` is connected (empty counts as
/// connected).
pub fn is_connected_mask(g: &Graph, mask: &[bool]) -> bool {
    components(g, Some(mask)).len() <= 1
}

/// Blocks and cut vertices of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCutTree {
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    /// `(block index, cut vertex)` pairs.
    pub incidence: Vec<(usize, usize)>,
    /// Blocks incident to at most one cut vertex.
    pub end_blocks: Vec<usize>,
}

impl BlockCutTree {
    pub fn is_cut(&self, v: usize) -> bool {
        self.cut_vertices.contains(v)
    }

    /// Cut vertices lying in block `b`.
    pub fn cuts_of(&self, b: usize) -> Vec<usize> {
        self.incidence.iter().filter(|&&(bb, _)| bb == b).map(|&(_, c)| c).collect()
    }

    /// Index of the block containing edge `uv`.
    pub fn block_of_edge(&self, u: usize, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(u) && b.contains(v))
    }
}

/// Hopcroft-Tarjan low-link decomposition. Isolated vertices form singleton
/// blocks. Blocks are ordered by smallest vertex.
pub fn blocks(g: &Graph) -> (Vec<VertexSet>, Vec<bool>) {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut out: Vec<VertexSet> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if g.degree(root) == 0 {
            disc[root] = time;
            time += 1;
            out.push(VertexSet::new([root]));
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // Frames: (vertex, parent, next neighbour index).
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(frame) = stack.last_mut() {
            let (u, parent, idx) = *frame;
            if idx < g.degree(u) {
                frame.2 += 1;
                let w = g.neighbors(u)[idx];
                if disc[w] == usize::MAX {
                    edge_stack.push((u, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, u, 0));
                } else if w != parent && disc[w] < disc[u] {
                    edge_stack.push((u, w));
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != usize::MAX {
                    low[parent] = low[parent].min(low[u]);
                    if low[u] >= disc[parent] {
                        if parent != root {
                            is_cut[parent] = true;
                        }
                        let mut comp = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            comp.push(a);
                            comp.push(b);
                            if (a, b) == (parent, u) {
                                break;
                            }
                        }
                        out.push(VertexSet::new(comp));
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    out.sort_by_key(|b| b.first());
    (out, is_cut)
}

/// Block-cut tree of a connected graph.
pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree> {
    if !is_connected(g) {
        return Err(Error::Disconnected);
    }
    let (blocks, is_cut) = blocks(g);
    let cut_vertices = VertexSet::new((0..g.n()).filter(|&v| is_cut[v]));
    let mut incidence = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for c in b.iter().filter(|&c| is_cut[c]) {
            incidence.push((i, c));
        }
    }
    let end_blocks =
        (0..blocks.len()).filter(|&i| incidence.iter().filter(|&&(b, _)| b == i).count() <= 1).collect();
    Ok(BlockCutTree { blocks, cut_vertices, incidence, end_blocks })
}

/// 2-connected: at least three vertices, connected, no cut vertex.
pub fn is_two_connected(g: &Graph) -> bool {
    if g.n() < 3 || !is_connected(g) {
        return false;
    }
    let (_, is_cut) = blocks(g);
    !is_cut.iter().any(|&c| c)
}

/// (G, x, y) is 2-connected iff G + xy is 2-connected. The direct end-block
/// characterisation is evaluated as well and the two must agree.
pub fn is_rooted_2_connected(g: &Graph, x: usize, y: usize) -> Result<bool> {
    if x == y {
        return Err(invalid("roots must differ"));
    }
    if x >= g.n() || y >= g.n() {
        return Err(invalid("root out of range"));
    }
    let via_edge = is_two_connected(&g.with_edge(x, y));
    debug_assert_eq!(via_edge, rooted_end_block_test(g, x, y), "rooted tests disagree on {g:?} {x} {y}");
    Ok(via_edge)
}

/// The end-block form: G connected with at least three vertices and at most
/// two end blocks, each containing x or y as a non-cut vertex.
pub fn rooted_end_block_test(g: &Graph, x: usize, y: usize) -> bool {
    if g.n() < 3 {
        return false;
    }
    let Ok(tree) = block_cut_tree(g) else {
        return false;
    };
    if tree.end_blocks.len() > 2 {
        return false;
    }
    tree.end_blocks.iter().all(|&b| {
        let blk = &tree.blocks[b];
        [x, y].iter().any(|&r| blk.contains(r) && !tree.is_cut(r))
    })
}

/// A separation of order two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation2 {
    pub a: VertexSet,
    pub b: VertexSet,
    pub cut: (usize, usize),
}

fn removal_mask(n: usize, removed: &[usize]) -> Vec<bool> {
    let mut m = vec![true; n];
    for &r in removed {
        m[r] = false;
    }
    m
}

/// Whether G is t-connected, for t in {2, 3}, by brute-force deletion.
pub fn vertex_connectivity_at_least(g: &Graph, t: usize) -> Result<bool> {
    if !(t == 2 || t == 3) {
        return Err(invalid("only t = 2 or 3 is supported"));
    }
    if g.n() < t + 1 {
        return Err(invalid(format!("need at least {} vertices", t + 1)));
    }
    if !is_two_connected(g) {
        return Ok(false);
    }
    if t == 2 {
        return Ok(true);
    }
    Ok(find_2_separation(g)?.is_none())
}

/// The lexicographically smallest separating pair, with A holding the pair and
/// the component of G − pair containing the smallest vertex.
pub fn find_2_separation(g: &Graph) -> Result<Option<Separation2>> {
    let n = g.n();
    if n < 4 {
        return Err(invalid("need at least 4 vertices"));
    }
    for a in 0..n {
        for b in a + 1..n {
            let mask = removal_mask(n, &[a, b]);
            let comps = components(g, Some(&mask));
            if comps.len() >= 2 {
                let side_a = VertexSet::new(comps[0].iter().copied().chain([a, b]));
                let side_b = VertexSet::new(comps[1..].iter().flatten().copied().chain([a, b]));
                return Ok(Some(Separation2 { a: side_a, b: side_b, cut: (a, b) }));
            }
        }
    }
    Ok(None)
}

/// End blocks of C not containing y except possibly as their cut vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleEndBlocks {
    pub two_connected: bool,
    /// `(block, its cut vertex)`, ordered by smallest vertex in the block.
    pub blocks: Vec<(VertexSet, usize)>,
}

pub fn feasible_end_blocks(c: &Graph, y: usize) -> Result<FeasibleEndBlocks> {
    let tree = block_cut_tree(c)?;
    if tree.cut_vertices.is_empty() {
        return Ok(FeasibleEndBlocks {
            two_connected: tree.blocks.len() == 1 && c.n() >= 3,
            blocks: Vec::new(),
        });
    }
    let mut out = Vec::new();
    for &i in &tree.end_blocks {
        let cuts = tree.cuts_of(i);
        let b = cuts[0];
        let blk = &tree.blocks[i];
        if !blk.contains(y) || y == b {
            out.push((blk.clone(), b));
        }
    }
    out.sort_by_key(|(b, _)| b.first());
    Ok(FeasibleEndBlocks { two_connected: false, blocks: out })
}

/// Shortest path from some source to some target whose interior vertices all
/// satisfy `inner`. Sources are tried in the given order; ties resolve
/// toward smaller ids. A source that is itself a target yields a one-vertex
/// path.
pub fn bfs_path(
    g: &Graph,
    sources: &[usize],
    is_target: impl Fn(usize) -> bool,
    inner: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = g.n();
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if !seen[s] {
            if is_target(s) {
                return Some(vec![s]);
            }
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if seen[w] {
                continue;
            }
            if is_target(w) {
                let mut path = vec![w, u];
                let mut cur = u;
                while prev[cur] != usize::MAX {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            if inner(w) {
                seen[w] = true;
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Vertex-disjoint paths, one per sink group, each starting at a distinct
/// vertex of `sources` and ending in its group, using only vertices allowed
/// by `allowed`. Returns `None` when no such system exists.
pub fn disjoint_paths(
    g: &Graph,
    allowed: &[bool],
    sources: &[usize],
    groups: &[Vec<usize>],
) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    // Node layout: v_in = 2v, v_out = 2v+1, source, sink, then one per group.
    let src = 2 * n;
    let snk = 2 * n + 1;
    let gbase = 2 * n + 2;
    let total = gbase + groups.len();
    let mut cap: Vec<std::collections::BTreeMap<usize, i32>> = vec![Default::default(); total];
    let add = |cap: &mut Vec<std::collections::BTreeMap<usize, i32>>, a: usize, b: usize| {
        *cap[a].entry(b).or_insert(0) += 1;
        cap[b].entry(a).or_insert(0);
    };
    for v in 0..n {
        if !allowed[v] {
            continue;
        }
        add(&mut cap, 2 * v, 2 * v + 1);
        for &w in g.neighbors(v) {
            if allowed[w] {
                add(&mut cap, 2 * v + 1, 2 * w);
            }
        }
    }
    for &s in sources {
        if allowed[s] {
            add(&mut cap, src, 2 * s);
        }
    }
    for (i, grp) in groups.iter().enumerate() {
        for &v in grp {
            if allowed[v] {
                add(&mut cap, 2 * v + 1, gbase + i);
            }
        }
        add(&mut cap, gbase + i, snk);
    }
    let original = cap.clone();
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; total];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            if u == snk {
                break;
            }
            for (&w, &c) in &cap[u] {
                if c > 0 && prev[w] == usize::MAX {
                    prev[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if prev[snk] == usize::MAX {
            break;
        }
        let mut cur = snk;
        while cur != src {
            let p = prev[cur];
            *cap[p].get_mut(&cur).unwrap() -= 1;
            *cap[cur].get_mut(&p).unwrap() += 1;
            cur = p;
        }
        flow += 1;
    }
    if flow < groups.len() {
        return None;
    }
    // Decompose: follow saturated arcs (original capacity minus residual).
    let mut used: Vec<std::collections::BTreeMap<usize, i32>> = vec![Default::default(); total];
    for u in 0..total {
        for (&w, &c0) in &original[u] {
            let f = c0 - cap[u][&w];
            if f > 0 {
                used[u].insert(w, f);
            }
        }
    }
    let mut paths = vec![Vec::new(); groups.len()];
    for _ in 0..groups.len() {
        let mut node = src;
        let mut path = Vec::new();
        let group_idx;
        loop {
            let next = *used[node].iter().find(|(_, &f)| f > 0).map(|(w, _)| w)?;
            *used[node].get_mut(&next).unwrap() -= 1;
            if next >= gbase {
                group_idx = next - gbase;
                *used[next].get_mut(&snk).unwrap() -= 1;
                break;
            }
            if next < 2 * n && next % 2 == 0 {
                path.push(next / 2);
            }
            node = next;
        }
        paths[group_idx] = path;
    }
    Some(paths)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    fn two_k4_on_edge() -> Graph {
        // Shared edge {0,1}; sides {2,3} and {4,5}.
        Graph::from_edges(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 5), (1, 4), (1, 5), (4, 5)],
        )
        .unwrap()
    }

    #[test]
    fn block_cut_tree_examples() {
        let t = block_cut_tree(&Graph::path(3)).unwrap();
        assert_eq!(t.blocks, vec![VertexSet::new([0, 1]), VertexSet::new([1, 2])]);
        assert_eq!(t.cut_vertices, VertexSet::new([1]));
        let t = block_cut_tree(&Graph::complete(4)).unwrap();
        assert_eq!((t.blocks.len(), t.cut_vertices.len()), (1, 0));
        let t = block_cut_tree(&bowtie()).unwrap();
        assert_eq!(t.blocks.len(), 2);
        assert_eq!(t.cut_vertices, VertexSet::new([2]));
        assert_eq!(t.end_blocks, vec![0, 1]);
        let disjoint = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(block_cut_tree(&disjoint), Err(Error::Disconnected));
    }

    #[test]
    fn rooted_examples() {
        assert!(is_rooted_2_connected(&Graph::path(3), 0, 2).unwrap());
        assert!(!is_rooted_2_connected(&Graph::path(3), 0, 1).unwrap());
        let k4m = Graph::complete(4).without_edge(0, 1);
        assert!(is_rooted_2_connected(&k4m, 0, 1).unwrap());
        assert!(is_rooted_2_connected(&k4m, 0, 0).is_err());
    }

    #[test]
    fn connectivity_examples() {
        let g = two_k4_on_edge();
        assert!(vertex_connectivity_at_least(&g, 2).unwrap());
        assert!(!vertex_connectivity_at_least(&g, 3).unwrap());
        let sep = find_2_separation(&g).unwrap().unwrap();
        assert_eq!(sep.cut, (0, 1));
        assert_eq!(sep.a, VertexSet::new([0, 1, 2, 3]));
        assert!(vertex_connectivity_at_least(&Graph::complete(4), 3).unwrap());
        assert!(find_2_separation(&Graph::complete(4)).unwrap().is_none());
        let c5 = Graph::cycle(5);
        assert!(vertex_connectivity_at_least(&c5, 2).unwrap());
        assert!(!vertex_connectivity_at_least(&c5, 3).unwrap());
        assert!(vertex_connectivity_at_least(&Graph::complete(3), 3).is_err());
    }

    #[test]
    fn feasible_examples() {
        let f = feasible_end_blocks(&Graph::path(4), 3).unwrap();
        assert_eq!(f.blocks, vec![(VertexSet::new([0, 1]), 1)]);
        let f = feasible_end_blocks(&bowtie(), 0).unwrap();
        assert_eq!(f.blocks, vec![(VertexSet::new([2, 3, 4]), 2)]);
        let f = feasible_end_blocks(&Graph::complete(4), 2).unwrap();
        assert!(f.two_connected && f.blocks.is_empty());
    }

    #[test]
    fn disjoint_paths_in_grid() {
        // 0-1-2 / 3-4-5 ladder; sources {0,3}, sinks {2} and {5}.
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]).unwrap();
        let p = disjoint_paths(&g, &[true; 6], &[0, 3], &[vec![2], vec![5]]).unwrap();
        assert_eq!(p[0].last(), Some(&2));
        assert_eq!(p[1].last(), Some(&5));
        assert!(p[0].iter().all(|v| !p[1].contains(v)));
        assert!(disjoint_paths(&Graph::path(3), &[true; 3], &[0, 2], &[vec![1], vec![1]]).is_none());
    }

    #[test]
    fn bfs_respects_interior() {
        let g = Graph::cycle(6);
        let p = bfs_path(&g, &[0], |v| v == 3, |v| v != 1).unwrap();
        assert_eq!(p, vec![0, 5, 4, 3]);
    }
}

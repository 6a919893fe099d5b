//! Exhaustive generation of small graphs up to isomorphism.
//!
//! Graphs on n vertices are produced by attaching a new vertex to every
//! subset of the vertices of each graph on n - 1 vertices, then deduplicated
//! by a canonical edge code. Every graph arises this way (delete any vertex),
//! so the lists are complete.

use std::collections::BTreeSet;

use crate::decomposition::{is_two_connected, vertex_connectivity_at_least};
use crate::graph::Graph;

/// Largest order supported; the canonical code is a 64-bit edge mask.
pub const MAX_N: usize = 9;

fn pair_bit(n: usize, i: usize, j: usize) -> u32 {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    // Row-major upper triangle.
    (a * (2 * n - a - 1) / 2 + (b - a - 1)) as u32
}

/// Edge mask of `g` relabelled by `perm` (old vertex -> new position).
fn code_under(g: &Graph, perm: &[usize]) -> u64 {
    let n = g.n();
    let mut c = 0u64;
    for (u, v) in g.edges() {
        c |= 1 << pair_bit(n, perm[u], perm[v]);
    }
    c
}

/// Canonical 64-bit code: the maximum edge mask over all relabellings that
/// keep vertices sorted by a refinement invariant.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= MAX_N, "canonical form supports at most {MAX_N} vertices");
    let inv: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match cells.last_mut() {
            Some(cell) if inv[cell[0]] == inv[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut best = 0u64;
    let mut perm = vec![0usize; n];
    permute_cells(g, &mut cells, 0, 0, &mut perm, &mut best);
    best
}

fn permute_cells(
    g: &Graph,
    cells: &mut [Vec<usize>],
    ci: usize,
    base: usize,
    perm: &mut [usize],
    best: &mut u64,
) {
    if ci == cells.len() {
        *best = (*best).max(code_under(g, perm));
        return;
    }
    let len = cells[ci].len();
    let mut cell = cells[ci].clone();
    heap_permutations(&mut cell, len, &mut |arr| {
        for (i, &v) in arr.iter().enumerate() {
            perm[v] = base + i;
        }
        permute_cells(g, cells, ci + 1, base + len, perm, best);
    });
}

fn heap_permutations(arr: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(arr);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(arr, k - 1, f);
        if k.is_multiple_of(2) {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
    heap_permutations(arr, k - 1, f);
}

/// Rebuilds the graph a canonical code stands for.
pub fn from_code(n: usize, code: u64) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if code >> pair_bit(n, i, j) & 1 == 1 {
                e.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &e).expect("codes describe valid graphs")
}

/// Canonical representative of the isomorphism class of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    from_code(g.n(), canonical_code(g))
}

/// All graphs on `n` vertices up to isomorphism, in increasing code order.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= MAX_N);
    let mut level: BTreeSet<u64> = BTreeSet::new();
    level.insert(0);
    for m in 2..=n {
        let prev: Vec<Graph> = level.iter().map(|&c| from_code(m - 1, c)).collect();
        level = BTreeSet::new();
        for g in &prev {
            let base = g.edges();
            for subset in 0u32..(1 << (m - 1)) {
                let mut e = base.clone();
                e.extend((0..m - 1).filter(|&i| subset >> i & 1 == 1).map(|i| (i, m - 1)));
                let h = Graph::from_edges(m, &e).expect("in range");
                level.insert(canonical_code(&h));
            }
        }
    }
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    level.into_iter().map(|c| from_code(n, c)).collect()
}

/// 2-connected graphs on `n` vertices up to isomorphism.
pub fn two_connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(is_two_connected).collect()
}

/// 3-connected graphs on `n` vertices up to isomorphism.
pub fn three_connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n)
        .into_iter()
        .filter(|g| n >= 4 && vertex_connectivity_at_least(g, 3).unwrap_or(false))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // Numbers of unlabelled graphs and 2-connected graphs.
        let counts: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34, 156]);
        let bi: Vec<usize> = (3..=6).map(|n| two_connected_graphs(n).len()).collect();
        assert_eq!(bi, vec![1, 3, 10, 56]);
    }

    #[test]
    fn canonical_is_invariant() {
        let a = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let b = Graph::from_edges(5, &[(4, 3), (3, 2), (2, 1), (1, 0), (0, 4), (4, 2)]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
        assert_ne!(canonical_code(&a), canonical_code(&Graph::cycle(5)));
    }
}

//! A few named graphs used in tests, benches and examples.

use crate::graph::Graph;

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &e).unwrap()
}

/// Wheel with a rim of `r` vertices `0..r` and hub `r`.
pub fn wheel(r: usize) -> Graph {
    let mut e: Vec<_> = (0..r).map(|i| (i, (i + 1) % r)).collect();
    e.extend((0..r).map(|i| (i, r)));
    Graph::from_edges(r + 1, &e).unwrap()
}

/// Two copies of K_t sharing the edge {0, 1}.
pub fn two_cliques_on_edge(t: usize) -> Graph {
    let side = t - 2;
    let n = 2 + 2 * side;
    let mut e = vec![(0, 1)];
    for s in 0..2 {
        let vs: Vec<usize> = [0, 1].into_iter().chain((0..side).map(|i| 2 + s * side + i)).collect();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                e.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &e).unwrap()
}

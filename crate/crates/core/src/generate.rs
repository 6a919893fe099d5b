//! Seeded random graphs with a minimum degree and a connectivity class.
//!
//! For connectivity 2 the graph is built as two sides sharing a separating
//! pair, so it is never 3-connected. Every candidate is checked against the
//! whole spec before it is returned.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decomposition::{is_two_connected, vertex_connectivity_at_least};
use crate::error::{Error, Result};
use crate::graph::{is_bipartite, Graph};

/// Candidates drawn before giving up.
pub const MAX_ATTEMPTS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub n: usize,
    pub min_degree: usize,
    /// 2: 2-connected but not 3-connected. 3: 3-connected.
    pub conn: usize,
    pub bipartite: bool,
    pub seed: u64,
}

impl GenSpec {
    /// Whether `g` meets every requested property.
    pub fn accepts(&self, g: &Graph) -> bool {
        if g.n() != self.n || g.min_degree() < self.min_degree {
            return false;
        }
        if self.bipartite && is_bipartite(g).is_none() {
            return false;
        }
        let three = g.n() >= 4 && vertex_connectivity_at_least(g, 3).unwrap_or(false);
        match self.conn {
            2 => is_two_connected(g) && !three,
            3 => three,
            _ => false,
        }
    }

    fn quick_infeasible(&self) -> Option<String> {
        let (n, d) = (self.n, self.min_degree);
        if !(self.conn == 2 || self.conn == 3) {
            return Some(format!("connectivity must be 2 or 3, got {}", self.conn));
        }
        if d >= n {
            return Some(format!("minimum degree {d} needs more than {n} vertices"));
        }
        if self.bipartite && d > n / 2 {
            return Some(format!("a bipartite graph on {n} vertices has minimum degree at most {}", n / 2));
        }
        if self.conn == 3 && (n < 4 || d < 3) {
            return Some("3-connected graphs need n >= 4 and minimum degree >= 3".into());
        }
        if self.conn == 2 && (n < 4 || d < 2) {
            return Some("a 2-separation needs n >= 4 and minimum degree >= 2".into());
        }
        if self.conn == 2 && n < 2 + 2 * self.min_side() {
            return Some(format!(
                "each side of a 2-separation needs {} vertices, so n >= {}",
                self.min_side(),
                2 + 2 * self.min_side()
            ));
        }
        None
    }

    /// Fewest vertices on one side of a 2-separation: a side vertex has all
    /// its neighbours in its side or the pair, and in the bipartite case the
    /// side plus the pair must hold d vertices of each colour.
    fn min_side(&self) -> usize {
        let d = self.min_degree;
        if self.bipartite && d >= 3 {
            2 * d - 2
        } else {
            d.saturating_sub(1).max(1)
        }
    }
}

/// A graph meeting `spec`, the same one for the same spec.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    if let Some(why) = spec.quick_infeasible() {
        return Err(Error::Infeasible(why));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..MAX_ATTEMPTS {
        let g = candidate(spec, &mut rng);
        if spec.accepts(&g) {
            return Ok(g);
        }
    }
    Err(Error::Infeasible(format!("no graph found in {MAX_ATTEMPTS} attempts")))
}

fn candidate(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Graph {
    let n = spec.n;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // Sides of the separation: 0 = separating pair, 1 and 2 = the sides.
    let mut side = vec![1u8; n];
    let mut color = vec![false; n];
    if spec.conn == 2 {
        let lo = spec.min_side();
        let a = rng.gen_range(lo..=n - 2 - lo);
        side[order[0]] = 0;
        side[order[1]] = 0;
        color[order[1]] = true;
        for (i, &v) in order[2..].iter().enumerate() {
            if i >= a {
                side[v] = 2;
            }
            let j = if i >= a { i - a } else { i };
            color[v] = j % 2 == 1;
        }
    } else {
        for (i, &v) in order.iter().enumerate() {
            color[v] = i % 2 == 1;
        }
    }
    if !spec.bipartite {
        color.iter_mut().for_each(|c| *c = false);
    }
    let allowed = |u: usize, v: usize| -> bool {
        u != v
            && (!spec.bipartite || color[u] != color[v])
            && (side[u] == 0 || side[v] == 0 || side[u] == side[v])
    };
    let mut adj = vec![vec![false; n]; n];
    let density: f64 = rng.gen_range(0.0..0.35);
    for (u, v) in (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))) {
        if allowed(u, v) && rng.gen_bool(density) {
            adj[u][v] = true;
            adj[v][u] = true;
        }
    }
    let deg = |adj: &Vec<Vec<bool>>, v: usize| adj[v].iter().filter(|&&b| b).count();
    for &v in &order {
        while deg(&adj, v) < spec.min_degree {
            let mut cands: Vec<usize> = (0..n).filter(|&w| allowed(v, w) && !adj[v][w]).collect();
            if cands.is_empty() {
                break;
            }
            // Prefer partners that still need edges.
            cands.sort_by_key(|&w| deg(&adj, w));
            let low = deg(&adj, cands[0]);
            let pool: Vec<usize> = cands.iter().copied().filter(|&w| deg(&adj, w) <= low + 1).collect();
            let w = *pool.choose(rng).expect("nonempty");
            adj[v][w] = true;
            adj[w][v] = true;
        }
    }
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u][v]).collect();
    Graph::from_edges(n, &edges).expect("ids in range")
}

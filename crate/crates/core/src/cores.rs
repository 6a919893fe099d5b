//! Complete bipartite cores around the root x and the path families they
//! manufacture.
//!
//! An l-core of a rooted graph (G, x, y) is a complete bipartite subgraph
//! H = G[S, T] with x ∈ S, y outside H and |T| ≥ |S| = l + 1 ≥ 2, such that
//! every vertex outside H ∪ {y} sees at most l vertices of S, and every
//! vertex outside S ∪ {y} sees at most l + 1 vertices of T other than itself.
//! C denotes the component of G − V(H) containing y.
//!
//! Inside H any two vertices are joined by paths of every length of the right
//! parity, up to the number of spare vertices on each side. Those "ladders"
//! are what turn a handful of paths entering H into a full family.

use serde::{Deserialize, Serialize};

use crate::decomposition::{bfs_path, components, is_rooted_2_connected};
use crate::error::{unmet, Error, Result};
use crate::families::{semi_switch, Family, FamilyClass, PathWitness};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Core {
    pub s: VertexSet,
    pub t: VertexSet,
    pub l: usize,
    pub x: usize,
    pub y: usize,
    pub component_c: VertexSet,
}

impl Core {
    /// Builds the core record for given sides, computing C. The sides are not
    /// checked; use [`verify_core`].
    pub fn new(g: &Graph, s: VertexSet, t: VertexSet, x: usize, y: usize) -> Core {
        let mut mask = vec![true; g.n()];
        for v in s.iter().chain(t.iter()) {
            mask[v] = false;
        }
        let component_c = if mask[y] {
            components(g, Some(&mask))
                .into_iter()
                .find(|c| c.contains(&y))
                .map(VertexSet::new)
                .unwrap_or_default()
        } else {
            VertexSet::empty()
        };
        let l = s.len().saturating_sub(1);
        Core { s, t, l, x, y, component_c }
    }

    pub fn in_h(&self, v: usize) -> bool {
        self.s.contains(v) || self.t.contains(v)
    }

    pub fn vertices(&self) -> VertexSet {
        self.s.union(&self.t)
    }

    /// A path inside H from `from` to `to` with exactly `len` edges, avoiding
    /// `avoid`, using the smallest spare vertices on each side.
    pub fn ladder(&self, from: usize, to: usize, len: usize, avoid: &[usize]) -> Option<Vec<usize>> {
        let side = |v: usize| {
            if self.s.contains(v) {
                Some(0)
            } else if self.t.contains(v) {
                Some(1)
            } else {
                None
            }
        };
        let (a, b) = (side(from)?, side(to)?);
        if from == to || len == 0 || (a == b) != len.is_multiple_of(2) {
            return None;
        }
        let free = |set: &VertexSet| -> Vec<usize> {
            set.iter().filter(|&v| v != from && v != to && !avoid.contains(&v)).collect()
        };
        let pools = [free(&self.s), free(&self.t)];
        let mut next = [0usize, 0usize];
        let mut path = vec![from];
        for i in 1..len {
            let sd = (a + i) % 2;
            let v = *pools[sd].get(next[sd])?;
            next[sd] += 1;
            path.push(v);
        }
        path.push(to);
        Some(path)
    }

    /// A path from `from` (in H) into C ending at y, with interior in C.
    pub fn exit_from(&self, g: &Graph, from: &[usize]) -> Option<Vec<usize>> {
        let y = self.y;
        bfs_path(g, from, |v| v == y, |v| self.component_c.contains(v) && v != y)
    }
}

/// Outcome of checking the four core conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreReport {
    /// First violated condition (1-4) and a witness vertex where one exists.
    pub violation: Option<(u8, Option<usize>, String)>,
}

impl CoreReport {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn verify_core(g: &Graph, core: &Core) -> CoreReport {
    let fail = |c: u8, w: Option<usize>, msg: String| CoreReport { violation: Some((c, w, msg)) };
    let (s, t) = (&core.s, &core.t);
    if s.len() < 2 || t.len() < s.len() || core.l + 1 != s.len() || !s.is_disjoint(t) {
        return fail(1, None, format!("|S|={} |T|={} l={}", s.len(), t.len(), core.l));
    }
    if s.iter().chain(t.iter()).any(|v| v >= g.n()) {
        return fail(1, None, "vertex out of range".into());
    }
    for a in s.iter() {
        if let Some(b) = t.iter().find(|&b| !g.has_edge(a, b)) {
            return fail(1, Some(a), format!("{a} and {b} not adjacent"));
        }
    }
    if !s.contains(core.x) {
        return fail(2, Some(core.x), "x not in S".into());
    }
    if core.in_h(core.y) {
        return fail(2, Some(core.y), "y inside H".into());
    }
    for v in 0..g.n() {
        if v == core.y {
            continue;
        }
        if !core.in_h(v) {
            let e = g.neighbors(v).iter().filter(|&&w| s.contains(w)).count();
            if e > core.l {
                return fail(3, Some(v), format!("{v} has {e} neighbours in S"));
            }
        }
        if !s.contains(v) {
            let e = g.neighbors(v).iter().filter(|&&w| t.contains(w) && w != v).count();
            if e > core.l + 1 {
                return fail(4, Some(v), format!("{v} has {e} neighbours in T"));
            }
        }
    }
    CoreReport { violation: None }
}

/// Whether G − y has a 4-cycle through x.
pub fn has_c4_through(g: &Graph, x: usize, y: usize) -> bool {
    let nx: Vec<usize> = g.neighbors(x).iter().copied().filter(|&v| v != y).collect();
    for (i, &a) in nx.iter().enumerate() {
        for &b in &nx[i + 1..] {
            if g.neighbors(a).iter().any(|&s| s != x && s != y && g.has_edge(s, b)) {
                return true;
            }
        }
    }
    false
}

/// The extremal core: |S| maximum, T all common neighbours of S except y,
/// then |C| maximum, then |N(C) ∩ S| minimum, then S lexicographically least.
/// `None` exactly when G − y has no 4-cycle through x.
pub fn find_core(g: &Graph, x: usize, y: usize) -> Result<Option<Core>> {
    if !is_rooted_2_connected(g, x, y)? {
        return Err(Error::NotRooted2Connected);
    }
    Ok(find_core_unchecked(g, x, y))
}

pub(crate) fn find_core_unchecked(g: &Graph, x: usize, y: usize) -> Option<Core> {
    if !has_c4_through(g, x, y) {
        return None;
    }
    let t_of = |s: &[usize]| -> Vec<usize> {
        let mut acc: Vec<usize> = g.neighbors(s[0]).iter().copied().filter(|&v| v != y).collect();
        for &v in &s[1..] {
            acc.retain(|&w| g.has_edge(v, w));
        }
        acc
    };
    // Candidates for S − x: vertices sharing at least two neighbours (other
    // than y) with x.
    let nx: Vec<usize> = g.neighbors(x).iter().copied().filter(|&v| v != y).collect();
    let cands: Vec<usize> = (0..g.n())
        .filter(|&v| v != x && v != y)
        .filter(|&v| nx.iter().filter(|&&w| g.has_edge(v, w)).count() >= 2)
        .collect();
    let mut best: Vec<Vec<usize>> = Vec::new();
    let mut best_size = 0;
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(vec![x], 0)];
    while let Some((s, from)) = stack.pop() {
        let t = t_of(&s);
        if t.len() < s.len() {
            continue;
        }
        if s.len() >= 2 {
            if s.len() > best_size {
                best_size = s.len();
                best.clear();
            }
            if s.len() == best_size {
                best.push(s.clone());
            }
        }
        for (i, &v) in cands.iter().enumerate().skip(from) {
            if t.iter().filter(|&&w| w != v && g.has_edge(v, w)).count() < s.len() + 1 {
                continue;
            }
            let mut s2 = s.clone();
            s2.push(v);
            stack.push((s2, i + 1));
        }
    }
    let mut scored: Vec<(usize, usize, Vec<usize>, Core)> = best
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            let t = VertexSet::new(t_of(&s));
            let core = Core::new(g, VertexSet::new(s.iter().copied()), t, x, y);
            let nc = g.neighborhood(&core.component_c);
            let attach = core.s.iter().filter(|&v| nc.contains(v)).count();
            (core.component_c.len(), attach, s, core)
        })
        .collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    scored.into_iter().next().map(|(_, _, _, c)| c)
}

/// Which kind of attachment family is routed through the core.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Attachment {
    /// Paths with both ends in T; `s` is the exit vertex of S − x.
    TPaths { s: usize },
    /// Paths from T to {x, s}.
    TxsPaths { s: usize },
    /// Paths from T to S − {x, s}.
    TsPaths { s: usize },
    /// Paths from T to y.
    TyPaths,
    /// Paths from S − x to y.
    SyPaths,
}

fn path_class(lengths: &[usize]) -> Option<FamilyClass> {
    if FamilyClass::LengthCondition.holds_for(lengths) {
        Some(FamilyClass::LengthCondition)
    } else {
        semi_switch(lengths)
    }
}

fn finish(g: &Graph, core: &Core, paths: Vec<Vec<usize>>, class: FamilyClass) -> Result<Family<PathWitness>> {
    let members: Vec<PathWitness> = paths.into_iter().map(PathWitness).collect();
    for p in &members {
        p.validate_between(g, core.x, core.y)?;
    }
    Family::new(members, class)
}

fn join(parts: &[&[usize]]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for p in parts {
        if let (Some(&last), Some(&first)) = (out.last(), p.first()) {
            if last == first {
                out.extend_from_slice(&p[1..]);
                continue;
            }
        }
        out.extend_from_slice(p);
    }
    out
}

/// k (x, y)-paths with the length condition when l ≥ k, or l = k − 1 and T
/// sends an edge into C.
pub fn core_paths_big_l(g: &Graph, core: &Core, k: usize) -> Result<Family<PathWitness>> {
    if k == 0 || core.l == 0 {
        return Err(unmet("need k ≥ 1 and l ≥ 1"));
    }
    let t_exit = || core.exit_from(g, core.t.as_slice());
    let (exit, from_t) = if core.l >= k {
        let s_rest: Vec<usize> = core.s.iter().filter(|&v| v != core.x).collect();
        match t_exit() {
            Some(e) => (e, true),
            None => (core.exit_from(g, &s_rest).ok_or_else(|| unmet("H − x has no edge into C"))?, false),
        }
    } else if core.l + 1 == k {
        (t_exit().ok_or_else(|| unmet("l = k − 1 but E(T, C) is empty"))?, true)
    } else {
        return Err(unmet("l < k − 1"));
    };
    let z = exit[0];
    let mut paths = Vec::with_capacity(k);
    for j in 0..k {
        let len = if from_t { 2 * j + 1 } else { 2 * j + 2 };
        let ladder = core.ladder(core.x, z, len, &[]).ok_or_else(|| unmet("core too small for ladder"))?;
        paths.push(join(&[&ladder, &exit]));
    }
    finish(g, core, paths, FamilyClass::LengthCondition)
}

/// k (x, y)-paths with the semi-length condition when l = k − 1, S − x sends
/// an edge into C and G[T] has an edge.
pub fn core_paths_semilength(g: &Graph, core: &Core, k: usize) -> Result<Family<PathWitness>> {
    if core.l + 1 != k {
        return Err(unmet("need l = k − 1"));
    }
    let (t1, t2) = core
        .t
        .iter()
        .flat_map(|a| core.t.iter().filter(move |&b| b > a).map(move |b| (a, b)))
        .find(|&(a, b)| g.has_edge(a, b))
        .ok_or_else(|| unmet("G[T] has no edge"))?;
    let s_rest: Vec<usize> = core.s.iter().filter(|&v| v != core.x).collect();
    let exit = core.exit_from(g, &s_rest).ok_or_else(|| unmet("S − x has no edge into C"))?;
    let s = exit[0];
    let l = core.l;
    let mut paths = Vec::with_capacity(k);
    for j in 1..=l {
        let ladder = core.ladder(core.x, s, 2 * j, &[]).ok_or_else(|| unmet("core too small for ladder"))?;
        paths.push(join(&[&ladder, &exit]));
    }
    let tail = core
        .ladder(t2, s, 2 * l - 1, &[core.x, t1])
        .ok_or_else(|| unmet("core too small for the twin step"))?;
    paths.push(join(&[&[core.x, t1], &tail, &exit]));
    let lengths: Vec<usize> = paths.iter().map(|p| p.len() - 1).collect();
    finish(g, core, paths, FamilyClass::SemiLength { switch: l })
        .map_err(|_| unmet(format!("lengths {lengths:?}")))
}

/// Routes an attachment family through the core into k (x, y)-paths of the
/// same class.
pub fn extend_from_core(
    g: &Graph,
    core: &Core,
    attachment: Attachment,
    fam: &[PathWitness],
    k: usize,
) -> Result<Family<PathWitness>> {
    let l = core.l;
    let need = match attachment {
        Attachment::TPaths { .. } | Attachment::TxsPaths { .. } => (k + 1).checked_sub(l),
        Attachment::TsPaths { .. } => (k + 2).checked_sub(l),
        Attachment::TyPaths => k.checked_sub(l),
        Attachment::SyPaths => (k + 1).checked_sub(l),
    };
    let need =
        need.filter(|&c| c >= 1).ok_or_else(|| unmet("core parameter too large for this attachment"))?;
    if fam.len() != need {
        return Err(unmet(format!("expected {need} attachment paths, got {}", fam.len())));
    }
    let lengths: Vec<usize> = fam.iter().map(PathWitness::len).collect();
    let class =
        path_class(&lengths).ok_or_else(|| unmet(format!("attachment lengths {lengths:?} fit no class")))?;
    let x = core.x;
    let bad = |what: &str| Error::InvalidWitness(format!("attachment path has wrong ends ({what})"));
    let mut paths: Vec<Vec<usize>> = Vec::with_capacity(k);
    match attachment {
        Attachment::TPaths { s } | Attachment::TxsPaths { s } | Attachment::TsPaths { s } => {
            if !core.s.contains(s) || s == x {
                return Err(unmet("s must lie in S − x"));
            }
            let exit = core.exit_from(g, &[s]).ok_or_else(|| unmet("s has no edge into C"))?;
            let mut xs: Vec<Vec<usize>> = Vec::with_capacity(k);
            let last = fam.last().unwrap().vertices();
            match attachment {
                Attachment::TPaths { .. } => {
                    for p in fam {
                        let (a, b) = (p.start(), p.end());
                        if !core.t.contains(a) || !core.t.contains(b) {
                            return Err(bad("T-path"));
                        }
                        xs.push(join(&[&[x], p.vertices(), &[s]]));
                    }
                    let (a, b) = (last[0], *last.last().unwrap());
                    for j in 1..l {
                        let lad = core.ladder(x, a, 2 * j + 1, &[s, b]).ok_or_else(|| unmet("ladder"))?;
                        xs.push(join(&[&lad, last, &[s]]));
                    }
                }
                Attachment::TxsPaths { .. } => {
                    let oriented = |p: &[usize]| -> Result<(Vec<usize>, usize)> {
                        let (u, v) = (p[0], *p.last().unwrap());
                        if !core.t.contains(u) || (v != x && v != s) {
                            return Err(bad("(T, {x,s})-path"));
                        }
                        Ok((p.to_vec(), v))
                    };
                    for p in fam {
                        let (p, v) = oriented(p.vertices())?;
                        if v == s {
                            xs.push(join(&[&[x], &p]));
                        } else {
                            let rev: Vec<usize> = p.iter().rev().copied().collect();
                            xs.push(join(&[&rev, &[s]]));
                        }
                    }
                    let (p, v) = oriented(last)?;
                    let u = p[0];
                    for j in 1..l {
                        if v == s {
                            let lad = core.ladder(x, u, 2 * j + 1, &[s]).ok_or_else(|| unmet("ladder"))?;
                            xs.push(join(&[&lad, &p]));
                        } else {
                            let rev: Vec<usize> = p.iter().rev().copied().collect();
                            let lad = core.ladder(u, s, 2 * j + 1, &[x]).ok_or_else(|| unmet("ladder"))?;
                            xs.push(join(&[&rev, &lad]));
                        }
                    }
                }
                _ => {
                    for p in fam {
                        let (u, v) = (p.start(), p.end());
                        if !core.t.contains(u) || !core.s.contains(v) || v == x || v == s {
                            return Err(bad("(T, S − {x,s})-path"));
                        }
                        let lad = core.ladder(v, s, 2, &[x, u]).ok_or_else(|| unmet("ladder"))?;
                        xs.push(join(&[&[x], p.vertices(), &lad]));
                    }
                    let (u, v) = (last[0], *last.last().unwrap());
                    for j in 2..l {
                        let lad = core.ladder(v, s, 2 * j, &[x, u]).ok_or_else(|| unmet("ladder"))?;
                        xs.push(join(&[&[x], last, &lad]));
                    }
                }
            }
            for p in xs {
                paths.push(join(&[&p, &exit]));
            }
        }
        Attachment::TyPaths => {
            for p in fam {
                if !core.t.contains(p.start()) || p.end() != core.y {
                    return Err(bad("(T, y)-path"));
                }
                paths.push(join(&[&[x], p.vertices()]));
            }
            let last = fam.last().unwrap().vertices();
            for j in 1..=l {
                let lad = core.ladder(x, last[0], 2 * j + 1, &[]).ok_or_else(|| unmet("ladder"))?;
                paths.push(join(&[&lad, last]));
            }
        }
        Attachment::SyPaths => {
            for p in fam {
                let v = p.start();
                if !core.s.contains(v) || v == x || p.end() != core.y {
                    return Err(bad("(S − x, y)-path"));
                }
                let lad = core.ladder(x, v, 2, &[]).ok_or_else(|| unmet("ladder"))?;
                paths.push(join(&[&lad, p.vertices()]));
            }
            let last = fam.last().unwrap().vertices();
            for j in 2..=l {
                let lad = core.ladder(x, last[0], 2 * j, &[]).ok_or_else(|| unmet("ladder"))?;
                paths.push(join(&[&lad, last]));
            }
        }
    }
    if paths.len() != k {
        return Err(unmet(format!("built {} paths, wanted {k}", paths.len())));
    }
    finish(g, core, paths, class)
}

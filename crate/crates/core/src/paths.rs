//! Families of (x, y)-paths with the length condition (internal degrees at
//! least 2k) or with the length or semi-length condition (at least 2k - 1).
//!
//! The extractor follows an induction on |V| + |E|. Every step either builds
//! the family directly from local structure or reduces to smaller rooted
//! graphs (blocks, contractions, vertex groups) and stitches the answers
//! back together. Cases are tried in a fixed order and the first result that
//! validates is kept. If none does, the exhaustive oracle answers instead and
//! the trace records a constructive gap.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::cores::{
    core_paths_big_l, core_paths_semilength, extend_from_core, find_core_unchecked, Attachment, Core,
};
use crate::decomposition::{
    bfs_path, block_cut_tree, blocks, components, disjoint_paths, is_connected, is_rooted_2_connected,
    is_two_connected,
};
use crate::error::{invalid, unmet, Error, Result};
use crate::families::{sum_schedule, Family, FamilyClass, PathWitness};
use crate::graph::{induced, Derived, DerivedBuilder, Graph, VertexSet};
use crate::oracle::{oracle_paths, path_family_class, PathMode};

type Path = Vec<usize>;

/// One accepted decision of the extractor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub tag: String,
    /// `n<vertices>m<edges>:<hash>` of the instance the decision was made on.
    pub fingerprint: String,
    pub decision: String,
    pub depth: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractionTrace {
    pub steps: Vec<TraceStep>,
    /// Deepest recursion level reached (the root instance is depth 1).
    pub depth: usize,
    /// Number of distinct instances solved.
    pub instances: usize,
    /// Recursive calls whose preconditions held but which found nothing.
    pub inner_failures: usize,
    /// The answer came from the oracle, not from a construction.
    pub constructive_gap: bool,
}

impl ExtractionTrace {
    /// Short human-readable digest.
    pub fn summary(&self) -> String {
        let tags: Vec<&str> = self.steps.iter().filter(|s| s.depth == 1).map(|s| s.tag.as_str()).collect();
        format!(
            "depth={} instances={} inner_failures={} gap={} root={}",
            self.depth,
            self.instances,
            self.inner_failures,
            self.constructive_gap,
            tags.join(",")
        )
    }
}

/// A validated family together with how it was found.
#[derive(Clone, Debug)]
pub struct PathExtraction {
    pub family: Family<PathWitness>,
    pub trace: ExtractionTrace,
}

/// k paths with the length condition; needs δ(G, x, y) ≥ 2k.
pub fn find_paths_length(g: &Graph, x: usize, y: usize, k: usize) -> Result<PathExtraction> {
    find_paths(g, x, y, k, PathMode::Length)
}

/// k paths with the length or semi-length condition; needs δ(G, x, y) ≥ 2k - 1.
pub fn find_paths_flex(g: &Graph, x: usize, y: usize, k: usize) -> Result<PathExtraction> {
    find_paths(g, x, y, k, PathMode::LengthOrSemi)
}

pub fn find_paths(g: &Graph, x: usize, y: usize, k: usize, mode: PathMode) -> Result<PathExtraction> {
    check_hypothesis(g, x, y, k, mode)?;
    let mut solver = Solver::default();
    let found = solver.top(g, x, y, k, mode);
    let mut trace = solver.trace;
    let family = match found {
        Some(paths) => to_family(paths)?,
        None => {
            trace.constructive_gap = true;
            oracle_paths(g, x, y, k, mode)?.ok_or(Error::NoFamily)?
        }
    };
    Ok(PathExtraction { family, trace })
}

/// Checks the rooted 2-connectivity and degree hypotheses.
pub fn check_hypothesis(g: &Graph, x: usize, y: usize, k: usize, mode: PathMode) -> Result<()> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    if x >= g.n() || y >= g.n() || x == y {
        return Err(invalid("roots must be distinct vertices of the graph"));
    }
    if !is_rooted_2_connected(g, x, y)? {
        return Err(unmet("(G, x, y) is not rooted 2-connected"));
    }
    let need = degree_need(k, mode);
    let have = g.rooted_min_degree(x, y);
    if have < need {
        return Err(unmet(format!("internal minimum degree {have} < {need}")));
    }
    Ok(())
}

fn degree_need(k: usize, mode: PathMode) -> usize {
    match mode {
        PathMode::Length => 2 * k,
        PathMode::LengthOrSemi => 2 * k - 1,
    }
}

fn to_family(paths: Vec<Path>) -> Result<Family<PathWitness>> {
    let lengths: Vec<usize> = paths.iter().map(|p| p.len() - 1).collect();
    let class =
        path_family_class(&lengths).ok_or_else(|| Error::InvalidWitness(format!("lengths {lengths:?}")))?;
    Family::new(paths.into_iter().map(PathWitness).collect(), class)
}

fn fingerprint(g: &Graph) -> String {
    let mut h = DefaultHasher::new();
    g.hash(&mut h);
    format!("n{}m{}:{:016x}", g.n(), g.m(), h.finish())
}

/// Joins path pieces that share their junction vertices.
fn cat(parts: &[&[usize]]) -> Path {
    let mut out: Path = Vec::new();
    for p in parts {
        if let (Some(&a), Some(&b)) = (out.last(), p.first()) {
            if a == b {
                out.extend_from_slice(&p[1..]);
                continue;
            }
        }
        out.extend_from_slice(p);
    }
    out
}

fn rev(p: &[usize]) -> Path {
    p.iter().rev().copied().collect()
}

fn mask(n: usize, vs: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut m = vec![false; n];
    for v in vs {
        m[v] = true;
    }
    m
}

fn sees(g: &Graph, v: usize, set: &[bool]) -> bool {
    g.neighbors(v).iter().any(|&w| set[w])
}

/// Whether some vertex of `a` is adjacent to some vertex of `b`.
fn touch(g: &Graph, a: &[usize], b: &[bool]) -> bool {
    a.iter().any(|&v| sees(g, v, b))
}

/// Sums of two ordered families along [`sum_schedule`]; every `a[i]` ends
/// where every `b[j]` starts.
fn sums(a: &[Path], b: &[Path]) -> Vec<Path> {
    sum_schedule(a.len(), b.len()).into_iter().map(|(i, j)| cat(&[&a[i], &b[j]])).collect()
}

/// The instance currently being solved.
#[derive(Clone, Copy)]
struct Ctx<'a> {
    g: &'a Graph,
    x: usize,
    y: usize,
    k: usize,
    mode: PathMode,
}

type Key = (Graph, usize, usize, usize, PathMode);

#[derive(Default)]
pub(crate) struct Solver {
    memo: HashMap<Key, Option<Vec<Path>>>,
    pub(crate) trace: ExtractionTrace,
    depth: usize,
}

impl Solver {
    /// Root call: no measure bound, hypothesis assumed checked.
    pub(crate) fn top(
        &mut self,
        g: &Graph,
        x: usize,
        y: usize,
        k: usize,
        mode: PathMode,
    ) -> Option<Vec<Path>> {
        self.solve(g, x, y, k, mode)
    }

    fn solve(&mut self, g: &Graph, x: usize, y: usize, k: usize, mode: PathMode) -> Option<Vec<Path>> {
        let key = (g.clone(), x, y, k, mode);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        self.depth += 1;
        self.trace.depth = self.trace.depth.max(self.depth);
        self.trace.instances += 1;
        let out = if g.degree(x) > g.degree(y) {
            self.oriented(g, y, x, k, mode).map(|ps| ps.iter().map(|p| rev(p)).collect())
        } else {
            self.oriented(g, x, y, k, mode)
        };
        self.depth -= 1;
        self.memo.insert(key, out.clone());
        out
    }

    /// Validates a candidate: at least k members, the shortest k of which
    /// are simple (x, y)-paths of the right class.
    fn accept(&self, c: &Ctx, mut paths: Vec<Path>) -> Option<Vec<Path>> {
        paths.sort_by_key(Vec::len);
        paths.dedup();
        if paths.len() < c.k {
            return None;
        }
        paths.truncate(c.k);
        for p in &paths {
            PathWitness(p.clone()).validate_between(c.g, c.x, c.y).ok()?;
        }
        let lengths: Vec<usize> = paths.iter().map(|p| p.len() - 1).collect();
        let ok = match c.mode {
            PathMode::Length => FamilyClass::LengthCondition.holds_for(&lengths),
            PathMode::LengthOrSemi => path_family_class(&lengths).is_some(),
        };
        ok.then_some(paths)
    }

    fn log(&mut self, c: &Ctx, tag: &str, decision: String) {
        self.trace.steps.push(TraceStep {
            tag: tag.to_string(),
            fingerprint: fingerprint(c.g),
            decision,
            depth: self.depth,
        });
    }

    /// Solves a smaller rooted instance given as a derived graph and lifts
    /// the answer back to parent ids. Instances that miss the hypothesis
    /// are skipped silently.
    fn sub(
        &mut self,
        c: &Ctx,
        d: &Derived,
        a: usize,
        b: usize,
        k: usize,
        mode: PathMode,
    ) -> Option<Vec<Path>> {
        if k == 0 {
            return None;
        }
        let h = if d.graph.has_edge(a, b) { d.graph.without_edge(a, b) } else { d.graph.clone() };
        if h.measure() >= c.g.measure() {
            return None;
        }
        if !is_rooted_2_connected(&h, a, b).unwrap_or(false)
            || h.rooted_min_degree(a, b) < degree_need(k, mode)
        {
            return None;
        }
        let Some(found) = self.solve(&h, a, b, k, mode) else {
            self.trace.inner_failures += 1;
            return None;
        };
        found.iter().map(|p| d.lift_path(c.g, p)).collect()
    }

    /// `sub` on the subgraph induced by `vs` (parent ids), rooted at parent
    /// vertices `a` and `b`.
    fn sub_induced(
        &mut self,
        c: &Ctx,
        vs: &[usize],
        a: usize,
        b: usize,
        k: usize,
        mode: PathMode,
    ) -> Option<Vec<Path>> {
        let d = induced(c.g, &VertexSet::new(vs.iter().copied())).ok()?;
        let (la, lb) = (d.local(a)?, d.local(b)?);
        self.sub(c, &d, la, lb, k, mode)
    }

    fn oriented(&mut self, g: &Graph, x: usize, y: usize, k: usize, mode: PathMode) -> Option<Vec<Path>> {
        let c = Ctx { g, x, y, k, mode };
        let c = &c;
        macro_rules! attempt {
            ($tag:expr, $e:expr) => {
                if let Some(found) = $e {
                    let lengths: Vec<usize> = found.iter().map(|p| p.len() - 1).collect();
                    self.log(c, $tag, format!("lengths {lengths:?}"));
                    return Some(found);
                }
            };
        }
        if k == 1 {
            attempt!("shortest-path", self.base(c));
            return None;
        }
        if !is_two_connected(g) {
            attempt!("split-at-cut-vertex", self.split_at_cut(c));
            return None;
        }
        if g.has_edge(x, y) {
            let d = induced(g, &VertexSet::new(0..g.n())).ok()?;
            attempt!("drop-root-edge", self.sub(c, &d, x, y, k, mode));
            return None;
        }
        let Some(core) = find_core_unchecked(g, x, y) else {
            attempt!("contract-root-neighbourhood", self.contract_neighbourhood(c));
            return None;
        };
        attempt!("core-ladders", core_paths_big_l(g, &core, k).ok().and_then(|f| self.accept(c, unwrap(f))));
        if mode == PathMode::LengthOrSemi {
            attempt!(
                "core-twin-step",
                core_paths_semilength(g, &core, k).ok().and_then(|f| self.accept(c, unwrap(f)))
            );
            attempt!("core-twin-step-at-y", self.core_twin_at_y(c, &core));
        }
        attempt!("outside-component", self.outside_component(c, &core));
        if core.component_c.len() == 1 {
            attempt!("single-vertex-c", self.single_vertex_c(c, &core));
        } else {
            attempt!("large-c", self.large_c(c, &core));
        }
        None
    }

    fn base(&mut self, c: &Ctx) -> Option<Vec<Path>> {
        let (x, y) = (c.x, c.y);
        let p = bfs_path(c.g, &[x], |v| v == y, |_| true).filter(|p| p.len() >= 3).or_else(|| {
            let h = c.g.without_edge(x, y);
            bfs_path(&h, &[x], |v| v == y, |_| true)
        })?;
        self.accept(c, vec![p])
    }

    /// G is not 2-connected but G + xy is: split at a cut vertex, recurse on
    /// the side with at least two vertices and walk across the other side.
    fn split_at_cut(&mut self, c: &Ctx) -> Option<Vec<Path>> {
        let g = c.g;
        let (_, is_cut) = blocks(g);
        for cut in (0..g.n()).filter(|&v| is_cut[v]) {
            let mut m = vec![true; g.n()];
            m[cut] = false;
            let comps = components(g, Some(&m));
            if comps.len() != 2 {
                continue;
            }
            for i in 0..2 {
                let (c1, c2) = (&comps[i], &comps[1 - i]);
                let (r1, r2) = if c1.contains(&c.x) && c2.contains(&c.y) {
                    (c.x, c.y)
                } else if c1.contains(&c.y) && c2.contains(&c.x) {
                    (c.y, c.x)
                } else {
                    continue;
                };
                if c1.len() < 2 {
                    continue;
                }
                let in2 = mask(g.n(), c2.iter().copied());
                let Some(bridge) = bfs_path(g, &[cut], |v| v == r2, |v| in2[v]) else {
                    continue;
                };
                let mut vs = c1.clone();
                vs.push(cut);
                let Some(fam) = self.sub_induced(c, &vs, r1, cut, c.k, c.mode) else {
                    continue;
                };
                let paths: Vec<Path> = fam
                    .iter()
                    .map(|p| {
                        let q = cat(&[p, &bridge]);
                        if r1 == c.x {
                            q
                        } else {
                            rev(&q)
                        }
                    })
                    .collect();
                if let Some(ok) = self.accept(c, paths) {
                    return Some(ok);
                }
            }
        }
        None
    }

    /// No 4-cycle through x avoiding y: contract x with its neighbourhood,
    /// or, when that leaves y hanging, route through a component beyond
    /// N(x) = N(y) with its attachments split into two groups.
    fn contract_neighbourhood(&mut self, c: &Ctx) -> Option<Vec<Path>> {
        let (g, x, y) = (c.g, c.x, c.y);
        let nx: Vec<usize> = g.neighbors(x).to_vec();
        let in_nx = mask(g.n(), nx.iter().copied().chain([x]));
        let rest: Vec<usize> = (0..g.n()).filter(|&v| !in_nx[v]).collect();
        if rest == [y] && c.mode == PathMode::LengthOrSemi && c.k == 2 {
            for &a in &nx {
                for &b in &nx {
                    if a != b && g.has_edge(a, b) {
                        if let Some(ok) = self.accept(c, vec![vec![x, a, y], vec![x, a, b, y]]) {
                            return Some(ok);
                        }
                    }
                }
            }
        }
        // G* and the block containing y.
        let star_graph = {
            let mut b = DerivedBuilder::new(g);
            b.vertices(rest.iter().copied());
            b.group(nx.iter().copied());
            b.build()
        };
        let star = star_graph.graph.n() - 1;
        let ly = star_graph.local(y)?;
        let (blks, _) = blocks(&star_graph.graph);
        for blk in blks.iter().filter(|b| b.contains(ly) && b.contains(star)) {
            let mut b = DerivedBuilder::new(g);
            b.vertices(blk.iter().filter(|&v| v != star).map(|v| star_graph.parent(v)));
            let s = b.group(nx.iter().copied());
            let d = b.build();
            if let Some(fam) = self.sub(c, &d, s, d.local(y)?, c.k, c.mode) {
                let paths = fam.iter().map(|p| cat(&[&[x], p])).collect();
                if let Some(ok) = self.accept(c, paths) {
                    return Some(ok);
                }
            }
        }
        // Components beyond the common neighbourhood.
        let mut m = vec![true; g.n()];
        for &v in nx.iter().chain([&x, &y]) {
            m[v] = false;
        }
        for comp in components(g, Some(&m)) {
            let cm = mask(g.n(), comp.iter().copied());
            let attach: Vec<usize> = nx.iter().copied().filter(|&v| sees(g, v, &cm)).collect();
            if attach.len() < 2 || sees(g, y, &cm) || attach.len() > 18 {
                continue;
            }
            let rest_bits = attach.len() - 1;
            for bits in 0..(1u32 << rest_bits) - 1 {
                let mut s = vec![attach[0]];
                let mut t = Vec::new();
                for (i, &v) in attach[1..].iter().enumerate() {
                    if bits >> i & 1 == 1 {
                        s.push(v);
                    } else {
                        t.push(v);
                    }
                }
                let mut b = DerivedBuilder::new(g);
                b.vertices(comp.iter().copied());
                let ls = b.group(s.iter().copied());
                let lt = b.group(t.iter().copied());
                let d = b.build();
                if let Some(fam) = self.sub(c, &d, ls, lt, c.k, c.mode) {
                    let paths = fam.iter().map(|p| cat(&[&[x], p, &[y]])).collect();
                    if let Some(ok) = self.accept(c, paths) {
                        return Some(ok);
                    }
                }
            }
        }
        None
    }

    /// Semi-length family inside H + y when l = k - 2 and some t ∈ T sees y
    /// and another vertex of T.
    fn core_twin_at_y(&mut self, c: &Ctx, core: &Core) -> Option<Vec<Path>> {
        let (g, x, y, l) = (c.g, c.x, c.y, core.l);
        if l + 2 != c.k {
            return None;
        }
        for tc in core.t.iter().filter(|&t| g.has_edge(t, y)) {
            for tb in core.t.iter().filter(|&t| t != tc && g.has_edge(t, tc)) {
                let mut paths = Vec::new();
                for j in 0..=l {
                    paths.push(cat(&[&core.ladder(x, tc, 2 * j + 1, &[])?, &[y]]));
                }
                let Some(lad) = core.ladder(x, tb, 2 * l + 1, &[tc]) else {
                    continue;
                };
                paths.push(cat(&[&lad, &[tc, y]]));
                if let Some(ok) = self.accept(c, paths) {
                    return Some(ok);
                }
            }
        }
        None
    }

    /// Some component D ≠ C of G − V(H) receives edges from T: families
    /// through D, routed back through the core.
    fn outside_component(&mut self, c: &Ctx, core: &Core) -> Option<Vec<Path>> {
        let g = c.g;
        let n = g.n();
        let (k, l, x) = (c.k, core.l, c.x);
        let in_c = core.component_c.mask(n);
        let in_t = core.t.mask(n);
        let s_exits: Vec<usize> = core.s.iter().filter(|&s| s != x && sees(g, s, &in_c)).collect();
        if s_exits.is_empty() {
            return None;
        }
        let mut m = vec![true; n];
        for v in core.vertices().iter() {
            m[v] = false;
        }
        let others: Vec<Vec<usize>> =
            components(g, Some(&m)).into_iter().filter(|d| !d.contains(&c.y) && touch(g, d, &in_t)).collect();
        for &s in &s_exits {
            let s2: Vec<usize> = core.s.iter().filter(|&v| v != x && v != s).collect();
            for d in &others {
                let in_d = mask(n, d.iter().copied());
                // An end block of D hanging only on S − {x, s}.
                if !s2.is_empty() && d.len() >= 2 {
                    let dd = induced(g, &VertexSet::new(d.iter().copied())).ok()?;
                    if let Ok(tree) = block_cut_tree(&dd.graph) {
                        for &bi in &tree.end_blocks {
                            let cuts = tree.cuts_of(bi);
                            let [cut] = cuts.as_slice() else { continue };
                            let b = dd.parent(*cut);
                            let blk: Vec<usize> = tree.blocks[bi].iter().map(|v| dd.parent(v)).collect();
                            let interior: Vec<usize> = blk.iter().copied().filter(|&v| v != b).collect();
                            let xs_t = mask(n, core.t.iter().chain([x, s]));
                            if touch(g, &interior, &xs_t) {
                                continue;
                            }
                            let in_blk = mask(n, blk.iter().copied());
                            let Some(r) =
                                bfs_path(g, core.t.as_slice(), |v| v == b, |v| in_d[v] && !in_blk[v])
                            else {
                                continue;
                            };
                            let mut bd = DerivedBuilder::new(g);
                            bd.vertices(blk.iter().copied());
                            let sg = bd.group(s2.iter().copied());
                            let der = bd.build();
                            let Some(fam) = self.sub(c, &der, sg, der.local(b)?, k + 2 - l, c.mode) else {
                                continue;
                            };
                            let att: Vec<PathWitness> =
                                fam.iter().map(|p| PathWitness(cat(&[&r, &rev(p)]))).collect();
                            if let Some(ok) = self.through_core(c, core, Attachment::TsPaths { s }, &att) {
                                return Some(ok);
                            }
                        }
                    }
                }
                // D sees x or s: paths from T to {x, s}.
                if sees(g, x, &in_d) || sees(g, s, &in_d) {
                    let mut bd = DerivedBuilder::new(g);
                    bd.vertices(d.iter().copied());
                    let xg = bd.group([x, s]);
                    let tg = bd.group(core.t.iter());
                    let der = bd.build();
                    if let Some(fam) = self.sub(c, &der, tg, xg, k + 1 - l, c.mode) {
                        let att: Vec<PathWitness> = fam.into_iter().map(PathWitness).collect();
                        if let Some(ok) = self.through_core(c, core, Attachment::TxsPaths { s }, &att) {
                            return Some(ok);
                        }
                    }
                }
                let nd_t: Vec<usize> = core.t.iter().filter(|&t| sees(g, t, &in_d)).collect();
                if nd_t.len() == 1 && !s2.is_empty() {
                    let t = nd_t[0];
                    let mut bd = DerivedBuilder::new(g);
                    bd.vertices(d.iter().copied());
                    let lt = bd.vertex(t);
                    let sg = bd.group(s2.iter().copied());
                    let der = bd.build();
                    if let Some(fam) = self.sub(c, &der, lt, sg, k + 2 - l, c.mode) {
                        let att: Vec<PathWitness> = fam.into_iter().map(PathWitness).collect();
                        if let Some(ok) = self.through_core(c, core, Attachment::TsPaths { s }, &att) {
                            return Some(ok);
                        }
                    }
                }
                if nd_t.len() >= 2 {
                    for &t in &nd_t {
                        let mut bd = DerivedBuilder::new(g);
                        bd.vertices(d.iter().copied());
                        let lt = bd.vertex(t);
                        let tg = bd.group(core.t.iter().filter(|&v| v != t));
                        let der = bd.build();
                        if let Some(fam) = self.sub(c, &der, lt, tg, k + 1 - l, c.mode) {
                            let att: Vec<PathWitness> = fam.into_iter().map(PathWitness).collect();
                            if let Some(ok) = self.through_core(c, core, Attachment::TPaths { s }, &att) {
                                return Some(ok);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn through_core(
        &mut self,
        c: &Ctx,
        core: &Core,
        att: Attachment,
        fam: &[PathWitness],
    ) -> Option<Vec<Path>> {
        let f = extend_from_core(c.g, core, att, fam, c.k).ok()?;
        self.accept(c, unwrap(f))
    }

    /// C = {y}, so N(x) = N(y) = T.
    fn single_vertex_c(&mut self, c: &Ctx, core: &Core) -> Option<Vec<Path>> {
        let (g, x, y, k) = (c.g, c.x, c.y, c.k);
        let n = g.n();
        let t_all: Vec<usize> = core.t.iter().collect();
        if t_all.len() == 2 {
            let (t1, t2) = (t_all[0], t_all[1]);
            let vs: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
            if let Some(fam) = self.sub_induced(c, &vs, t1, t2, k, c.mode) {
                let paths = fam.iter().map(|p| cat(&[&[x], p, &[y]])).collect();
                if let Some(ok) = self.accept(c, paths) {
                    return Some(ok);
                }
            }
        }
        let in_h_or_y = mask(n, core.vertices().iter().chain([y]));
        for s in core.s.iter().filter(|&v| v != x) {
            for &t in &t_all {
                let keep: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
                let dd = induced(g, &VertexSet::new(keep.iter().copied())).ok()?;
                if is_two_connected(&dd.graph) {
                    if let Some(mut fam) = self.sub(c, &dd, dd.local(x)?, dd.local(y)?, k - 1, c.mode) {
                        let longest = fam.iter().max_by_key(|p| p.len())?.clone();
                        fam.push(cat(&[&longest[..longest.len() - 1], &[s, t, y]]));
                        if let Some(ok) = self.accept(c, fam) {
                            return Some(ok);
                        }
                    }
                    continue;
                }
                if !is_connected(&dd.graph) {
                    let mut m = vec![true; n];
                    m[s] = false;
                    m[t] = false;
                    for comp in components(g, Some(&m)) {
                        if comp.iter().any(|&v| in_h_or_y[v]) {
                            continue;
                        }
                        let mut vs = comp.clone();
                        vs.extend([s, t]);
                        let Some(fam) = self.sub_induced(c, &vs, s, t, k, c.mode) else {
                            continue;
                        };
                        for &t2 in t_all.iter().filter(|&&v| v != t) {
                            let paths = fam.iter().map(|p| cat(&[&[x], &rev(p), &[t2, y]])).collect();
                            if let Some(ok) = self.accept(c, paths) {
                                return Some(ok);
                            }
                        }
                    }
                    continue;
                }
                if let Some(ok) = self.single_vertex_c_end_block(c, core, s, t, &dd) {
                    return Some(ok);
                }
            }
        }
        None
    }

    /// G − {s, t} is connected but not 2-connected: an end block away from
    /// H ∪ y, entered through s or t.
    fn single_vertex_c_end_block(
        &mut self,
        c: &Ctx,
        core: &Core,
        s: usize,
        t: usize,
        dd: &Derived,
    ) -> Option<Vec<Path>> {
        let (g, x, y, k) = (c.g, c.x, c.y, c.k);
        let n = g.n();
        let tree = block_cut_tree(&dd.graph).ok()?;
        let in_h = core.vertices().mask(n);
        let t_rest: Vec<usize> = core.t.iter().filter(|&v| v != t).collect();
        for &bi in &tree.end_blocks {
            let cuts = tree.cuts_of(bi);
            let [cut] = cuts.as_slice() else { continue };
            let b = dd.parent(*cut);
            let blk: Vec<usize> = tree.blocks[bi].iter().map(|v| dd.parent(v)).collect();
            if blk.iter().any(|&v| v != b && (in_h[v] || v == y)) {
                continue;
            }
            let in_blk = mask(n, blk.iter().copied());
            let is_a = |v: usize| in_h[v] && v != x && v != s && v != t;
            let Some(p) = bfs_path(g, &[b], is_a, |v| !in_blk[v] && !in_h[v] && v != y && v != s && v != t)
            else {
                continue;
            };
            let a = *p.last().unwrap();
            let a_in_t = core.t.contains(a);
            let interior: Vec<usize> = blk.iter().copied().filter(|&v| v != b).collect();
            let t_sees = touch(g, &interior, &mask(n, [t]));
            let mut vs = blk.clone();
            if !t_sees {
                vs.push(s);
                let Some(fam) = self.sub_induced(c, &vs, s, b, k, c.mode) else {
                    continue;
                };
                let tails: Vec<Path> = if a_in_t {
                    vec![cat(&[&p, &[y]])]
                } else {
                    t_rest.iter().map(|&t2| cat(&[&p, &[t2, y]])).collect()
                };
                for tail in tails {
                    let paths = fam.iter().map(|q| cat(&[&[x, t], q, &tail])).collect();
                    if let Some(ok) = self.accept(c, paths) {
                        return Some(ok);
                    }
                }
            } else {
                vs.push(t);
                let Some(fam) = self.sub_induced(c, &vs, t, b, k - 1, c.mode) else {
                    continue;
                };
                let last = fam.last()?.clone();
                if a_in_t {
                    for &t2 in t_rest.iter().filter(|&&v| v != a) {
                        let mut paths: Vec<Path> = fam.iter().map(|q| cat(&[&[x], q, &p, &[y]])).collect();
                        paths.push(cat(&[&[x], &last, &p, &[s, t2, y]]));
                        if let Some(ok) = self.accept(c, paths) {
                            return Some(ok);
                        }
                    }
                } else {
                    for &t1 in &t_rest {
                        for &t2 in t_rest.iter().filter(|&&v| v != t1) {
                            let mut paths: Vec<Path> =
                                fam.iter().map(|q| cat(&[&[x], q, &p, &[t1, y]])).collect();
                            paths.push(cat(&[&[x], &last, &p, &[t1, s, t2, y]]));
                            if let Some(ok) = self.accept(c, paths) {
                                return Some(ok);
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// |C| ≥ 2.
    fn large_c(&mut self, c: &Ctx, core: &Core) -> Option<Vec<Path>> {
        let (g, x, y, k) = (c.g, c.x, c.y, c.k);
        let n = g.n();
        let l = core.l;
        let cv: Vec<usize> = core.component_c.iter().collect();
        let in_c = core.component_c.mask(n);
        let in_t = core.t.mask(n);
        let s_rest: Vec<usize> = core.s.iter().filter(|&v| v != x).collect();
        let in_s_rest = mask(n, s_rest.iter().copied());
        let c_minus_y: Vec<usize> = cv.iter().copied().filter(|&v| v != y).collect();

        // C hangs on x and y only.
        if !touch(g, &c_minus_y, &in_t) {
            let mut vs = cv.clone();
            vs.push(x);
            if let Some(fam) = self.sub_induced(c, &vs, x, y, k, c.mode) {
                if let Some(ok) = self.accept(c, fam) {
                    return Some(ok);
                }
            }
        }

        let cd = induced(g, &core.component_c).ok()?;
        let tree = block_cut_tree(&cd.graph).ok()?;
        let to_parent = |b: &VertexSet| -> Vec<usize> { b.iter().map(|v| cd.parent(v)).collect() };
        let ly = cd.local(y)?;
        let mut feasible: Vec<(Vec<usize>, usize)> = Vec::new();
        let mut by: Option<(Vec<usize>, usize)> = None;
        for &bi in &tree.end_blocks {
            let cuts = tree.cuts_of(bi);
            let [cut] = cuts.as_slice() else { continue };
            let blk = &tree.blocks[bi];
            if blk.contains(ly) && *cut != ly {
                by = Some((to_parent(blk), cd.parent(*cut)));
            } else {
                feasible.push((to_parent(blk), cd.parent(*cut)));
            }
        }
        let c_two_connected = tree.cut_vertices.is_empty();
        // Path from b to y inside C avoiding the interior of `blk`.
        let exit = |blk: &[usize], b: usize| -> Option<Path> {
            let in_blk = mask(n, blk.iter().copied());
            bfs_path(g, &[b], |v| v == y, |v| in_c[v] && !in_blk[v])
        };

        // A block of C (or C itself) fed from T: (T, y)-paths.
        if k > l {
            let mut feeders: Vec<(Vec<usize>, usize)> = Vec::new();
            if c_two_connected {
                feeders.push((cv.clone(), y));
            }
            for (blk, b) in &feasible {
                if touch(g, &blk.iter().copied().filter(|v| v != b).collect::<Vec<_>>(), &in_t) {
                    feeders.push((blk.clone(), *b));
                }
            }
            for (blk, b) in &feeders {
                let Some(r) = (if *b == y { Some(vec![y]) } else { exit(blk, *b) }) else {
                    continue;
                };
                let mut bd = DerivedBuilder::new(g);
                bd.vertices(blk.iter().copied());
                let tg = bd.group(core.t.iter());
                let der = bd.build();
                if let Some(fam) = self.sub(c, &der, tg, der.local(*b)?, k - l, c.mode) {
                    let att: Vec<PathWitness> = fam.iter().map(|p| PathWitness(cat(&[p, &r]))).collect();
                    if let Some(ok) = self.through_core(c, core, Attachment::TyPaths, &att) {
                        return Some(ok);
                    }
                }
            }
        }

        for (blk, b) in &feasible {
            let Some(r) = exit(blk, *b) else { continue };
            let interior: Vec<usize> = blk.iter().copied().filter(|v| v != b).collect();
            // Only x among S sees the block: recurse on B + x.
            if !touch(g, &interior, &in_s_rest) {
                let mut vs = blk.clone();
                vs.push(x);
                if let Some(fam) = self.sub_induced(c, &vs, x, *b, k, c.mode) {
                    let paths = fam.iter().map(|p| cat(&[p, &r])).collect();
                    if let Some(ok) = self.accept(c, paths) {
                        return Some(ok);
                    }
                }
            }
            // (S − x, y)-paths through the block.
            let mut bd = DerivedBuilder::new(g);
            bd.vertices(blk.iter().copied());
            let sg = bd.group(s_rest.iter().copied());
            let der = bd.build();
            let lb = der.local(*b)?;
            if l >= 2 {
                if let Some(fam) = self.sub(c, &der, sg, lb, k + 1 - l, c.mode) {
                    let att: Vec<PathWitness> = fam.iter().map(|p| PathWitness(cat(&[p, &r]))).collect();
                    if let Some(ok) = self.through_core(c, core, Attachment::SyPaths, &att) {
                        return Some(ok);
                    }
                }
            } else if let Some(fam) = self.sub(c, &der, sg, lb, k, c.mode) {
                for t in core.t.iter() {
                    let paths = fam.iter().map(|p| cat(&[&[x, t], p, &r])).collect();
                    if let Some(ok) = self.accept(c, paths) {
                        return Some(ok);
                    }
                }
            }
        }

        if l != 1 || k < 3 || feasible.is_empty() {
            return None;
        }
        let s = s_rest[0];
        let mut c_prime = in_c.clone();
        for (blk, b) in &feasible {
            for &v in blk.iter().filter(|v| *v != b) {
                c_prime[v] = false;
            }
        }
        let u_set: Vec<usize> = c_minus_y.iter().copied().filter(|&v| sees(g, v, &in_t)).collect();

        // Paths from v ∈ {x, s} into a feasible block, with the length
        // condition and one fewer member.
        let eq3 = |me: &mut Solver, i: usize, v: usize| -> Option<Vec<Path>> {
            let (blk, b) = &feasible[i];
            let mut vs = blk.clone();
            vs.push(v);
            me.sub_induced(c, &vs, v, *b, k - 1, PathMode::Length)
        };

        if by.is_none() {
            // Two blocks: one leading to T via U, the other to y.
            for i in 0..feasible.len() {
                for j in 0..feasible.len() {
                    if i == j {
                        continue;
                    }
                    let (bi, bj) = (feasible[i].1, feasible[j].1);
                    if bi == bj {
                        continue;
                    }
                    let Some(two) = disjoint_paths(g, &c_prime, &[bi, bj], &[u_set.clone(), vec![y]]) else {
                        continue;
                    };
                    let (pu, qy) =
                        if two[0].last() == Some(&y) { (&two[1], &two[0]) } else { (&two[0], &two[1]) };
                    let (pi, qj) = if pu[0] == bi { (i, j) } else { (j, i) };
                    let u = *pu.last().unwrap();
                    let Some(pf) = eq3(self, pi, x) else { continue };
                    let Some(qf) = eq3(self, qj, s) else { continue };
                    for t in core.t.iter().filter(|&t| g.has_edge(t, u)) {
                        let left: Vec<Path> = pf.iter().map(|p| cat(&[p, pu, &[t, s]])).collect();
                        let right: Vec<Path> = qf.iter().map(|q| cat(&[q, qy])).collect();
                        if let Some(ok) = self.accept(c, sums(&left, &right)) {
                            return Some(ok);
                        }
                    }
                }
            }
        }

        // A vertex of C seeing three vertices of H, away from some block's
        // route to y.
        for &v in &c_minus_y {
            if g.neighbors(v).iter().filter(|&&w| core.in_h(w)).count() < 3 {
                continue;
            }
            let tv: Vec<usize> = core.t.iter().filter(|&t| g.has_edge(t, v)).collect();
            for (i, (blk, b)) in feasible.iter().enumerate() {
                if blk.contains(&v) {
                    continue;
                }
                let in_blk = mask(n, blk.iter().copied());
                let Some(q2) = bfs_path(g, &[*b], |w| w == y, |w| in_c[w] && w != v && !in_blk[w]) else {
                    continue;
                };
                let Some(qf) = eq3(self, i, s) else { continue };
                for &t1 in &tv {
                    for &t2 in tv.iter().filter(|&&w| w != t1) {
                        let mut paths: Vec<Path> = qf.iter().map(|q| cat(&[&[x, t1], q, &q2])).collect();
                        paths.push(cat(&[&[x, t2, v, t1], qf.last()?, &q2]));
                        if let Some(ok) = self.accept(c, paths) {
                            return Some(ok);
                        }
                    }
                }
            }
        }

        let (by_blk, b_y) = by?;
        let in_by = mask(n, by_blk.iter().copied());
        let p1 = eq3(self, 0, x)?;
        let b1 = feasible[0].1;
        let to_by = bfs_path(g, &[b1], |w| w == b_y, |w| c_prime[w] && !in_by[w])?;
        let p1_ext: Vec<Path> = p1.iter().map(|p| cat(&[p, &to_by])).collect();

        if by_blk.len() >= 3 {
            let der = induced(g, &VertexSet::new(by_blk.iter().copied())).ok()?;
            if let Some(qf) = self.sub(c, &der, der.local(b_y)?, der.local(y)?, k - 1, c.mode) {
                if let Some(ok) = self.accept(c, sums(&p1_ext, &qf)) {
                    return Some(ok);
                }
            }
        }
        if g.has_edge(b_y, y) {
            for v in core.vertices().iter().filter(|&v| v != x && g.has_edge(v, y) && g.has_edge(v, b_y)) {
                let mut paths: Vec<Path> = p1_ext.iter().map(|p| cat(&[p, &[y]])).collect();
                paths.push(cat(&[p1_ext.last()?, &[v, y]]));
                if let Some(ok) = self.accept(c, paths) {
                    return Some(ok);
                }
            }
        }

        // Two feasible blocks joined inside C′, closed through H.
        let a_cands: Vec<usize> = core.vertices().iter().filter(|&a| a != x && g.has_edge(a, y)).collect();
        if feasible.len() >= 2 {
            for i in 0..feasible.len() {
                for j in 0..feasible.len() {
                    if i == j {
                        continue;
                    }
                    let (bi, bj) = (feasible[i].1, feasible[j].1);
                    let Some(r) = bfs_path(g, &[bi], |w| w == bj, |w| c_prime[w] && w != y) else {
                        continue;
                    };
                    let Some(pf) = eq3(self, i, x) else { continue };
                    let Some(qf) = eq3(self, j, s) else { continue };
                    for &a in &a_cands {
                        let r2: Path = if a == s { vec![s] } else { vec![s, a] };
                        let left: Vec<Path> = pf.iter().map(|p| cat(&[p, &r])).collect();
                        let right: Vec<Path> = qf.iter().map(|q| cat(&[&rev(q), &r2, &[y]])).collect();
                        if let Some(ok) = self.accept(c, sums(&left, &right)) {
                            return Some(ok);
                        }
                    }
                }
            }
        }

        // The block W next to B_y.
        let lby = cd.local(b_y)?;
        let w_blocks: Vec<usize> = (0..tree.blocks.len())
            .filter(|&bi| tree.blocks[bi].contains(lby) && to_parent(&tree.blocks[bi]) != by_blk)
            .collect();
        let end_with =
            |paths: &[Path], tail: &[usize]| -> Vec<Path> { paths.iter().map(|p| cat(&[p, tail])).collect() };
        let p1y = end_with(&p1_ext, &[b_y, y]);
        let last = p1_ext.last()?.clone();
        // Short families around b_y when W is B₁ or b_y is nearly isolated in W.
        let mut small: Vec<Vec<Path>> = Vec::new();
        for t1 in core.t.iter() {
            for t2 in core.t.iter().filter(|&t| t != t1 && g.has_edge(t, t1)) {
                let mut ps = p1y.clone();
                ps.push(cat(&[&last, &[t1, t2, y]]));
                small.push(ps);
            }
        }
        for a in core.t.iter().filter(|&a| g.has_edge(a, y)) {
            for t1 in core.t.iter().filter(|&t| t != a && g.has_edge(t, a)) {
                let mut ps = p1y.clone();
                ps.push(cat(&[&last, &[t1, a, y]]));
                small.push(ps);
                for t2 in core.t.iter().filter(|&t| t != a && t != t1 && g.has_edge(t, a)) {
                    small.push(vec![vec![x, a, y], vec![x, a, t1, y], vec![x, a, t1, s, t2, y]]);
                }
            }
            let mut ps = p1y.clone();
            ps.push(cat(&[&last, &[s, a, y]]));
            small.push(ps);
        }
        for t in core.t.iter() {
            let mut ps = p1y.clone();
            ps.push(cat(&[&last, &[t, s, y]]));
            small.push(ps);
        }
        let tb: Vec<usize> = core.t.iter().filter(|&t| g.has_edge(t, b_y)).collect();
        for &t1 in &tb {
            for &t2 in tb.iter().filter(|&&t| t != t1) {
                small.push(vec![vec![x, b_y, y], vec![x, t1, b_y, y], vec![x, t1, s, t2, b_y, y]]);
            }
        }
        for ps in small {
            if let Some(ok) = self.accept(c, ps) {
                return Some(ok);
            }
        }

        let in_b1 = mask(n, feasible[0].0.iter().copied().filter(|&v| v != b1));
        for &wi in &w_blocks {
            let w_blk = to_parent(&tree.blocks[wi]);
            if w_blk.len() < 3 {
                continue;
            }
            let in_w = mask(n, w_blk.iter().copied());
            for lw in tree.cuts_of(wi).into_iter().filter(|&v| v != lby) {
                let w = cd.parent(lw);
                let Some(bridge) = bfs_path(
                    g,
                    &[b1],
                    |v| v == w,
                    |v| in_c[v] && !in_w[v] && !in_b1[v] && !in_by[v] && v != y,
                ) else {
                    continue;
                };
                let der = induced(g, &VertexSet::new(w_blk.iter().copied())).ok()?;
                let Some(rf) = self.sub(c, &der, der.local(w)?, der.local(b_y)?, k - 1, c.mode) else {
                    continue;
                };
                let left: Vec<Path> = p1.iter().map(|p| cat(&[p, &bridge])).collect();
                let right: Vec<Path> = rf.iter().map(|r| cat(&[r, &[y]])).collect();
                if let Some(ok) = self.accept(c, sums(&left, &right)) {
                    return Some(ok);
                }
            }
        }
        None
    }
}

fn unwrap(f: Family<PathWitness>) -> Vec<Path> {
    f.members.into_iter().map(|p| p.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k5_length() {
        let r = find_paths_length(&Graph::complete(5), 0, 1, 2).unwrap();
        assert_eq!(r.family.lengths(), vec![2, 4]);
        assert!(!r.trace.constructive_gap);
    }

    #[test]
    fn c4_base_case() {
        let g = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let r = find_paths_length(&g, 0, 1, 1).unwrap();
        assert_eq!(r.family.lengths(), vec![2]);
    }

    #[test]
    fn hypotheses() {
        assert!(matches!(find_paths_length(&Graph::complete(4), 0, 1, 2), Err(Error::HypothesisNotMet(_))));
        assert!(matches!(find_paths_flex(&Graph::complete(3), 0, 1, 2), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn flex_examples() {
        let r = find_paths_flex(&Graph::complete(4), 0, 1, 2).unwrap();
        assert_eq!(r.family.lengths(), vec![2, 3]);
        assert!(!r.trace.constructive_gap);
        let r = find_paths_flex(&Graph::complete(6), 0, 1, 3).unwrap();
        assert!(matches!(r.family.class, FamilyClass::SemiLength { .. } | FamilyClass::LengthCondition));
        assert!(!r.trace.constructive_gap, "{}", r.trace.summary());
    }
}

//! Families of k cycles with consecutive lengths or with the length
//! condition in 2-connected graphs of minimum degree at least k + 1.
//!
//! Three regimes: a 2-separation glued from path families on both sides; a
//! non-separating induced odd cycle fanned out through path families in the
//! rest of the graph; and bipartite graphs, answered by the exhaustive
//! oracle.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::decomposition::{
    bfs_path, block_cut_tree, find_2_separation, is_connected_mask, is_two_connected,
    vertex_connectivity_at_least,
};
use crate::error::{invalid, unmet, Error, Result};
use crate::families::{
    glue_two_sided_length, glue_two_sided_semilength, odd_cycle_fan, odd_cycle_x_fan, semi_glue_schedule,
    semi_switch, sum_schedule, CycleWitness, Family, FamilyClass, PathWitness,
};
use crate::graph::{induced, is_bipartite, DerivedBuilder, Graph, VertexSet};
use crate::oracle::{oracle_cycles, Budget, CyclePreference, PathMode};
use crate::paths::find_paths;

/// k = 2l - 1 + φ with φ = 0 for odd k and 1 for even k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityFlag {
    pub phi: usize,
    pub l: usize,
}

impl ParityFlag {
    pub fn of(k: usize) -> ParityFlag {
        assert!(k >= 1, "k must be positive");
        let phi = 1 - k % 2;
        ParityFlag { phi, l: (k + 1 - phi) / 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OddCycleProperty {
    Triangle,
    /// Every non-cut vertex off the cycle has at most two neighbours on it,
    /// and two exactly when they are u⁺ and u⁻ for some u on the cycle.
    TwoNeighborRule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddCycleWitness {
    pub cycle: CycleWitness,
    pub m: usize,
    pub property: OddCycleProperty,
}

impl OddCycleWitness {
    /// Checks that the cycle is odd, induced, non-separating and has the
    /// declared property.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let c = &self.cycle;
        c.validate(g)?;
        if c.len() != 2 * self.m + 1 {
            return Err(Error::InvalidWitness(format!(
                "cycle of length {} is not 2m + 1 for m = {}",
                c.len(),
                self.m
            )));
        }
        if !is_induced(g, &c.0) {
            return Err(Error::InvalidWitness("cycle has a chord".into()));
        }
        let off = off_cycle_mask(g, &c.0);
        if !is_connected_mask(g, &off) {
            return Err(Error::InvalidWitness("removing the cycle disconnects the graph".into()));
        }
        let ok = match self.property {
            OddCycleProperty::Triangle => c.len() == 3,
            OddCycleProperty::TwoNeighborRule => two_neighbor_rule(g, c),
        };
        if !ok {
            return Err(Error::InvalidWitness(format!("property {:?} fails", self.property)));
        }
        Ok(())
    }
}

/// Which regime produced a cycle family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Branch {
    /// 2-connected, not 3-connected.
    I,
    /// 3-connected and non-bipartite.
    II,
    /// Bipartite and 3-connected; answered by the oracle.
    III,
}

impl Branch {
    pub fn tag(&self) -> &'static str {
        match self {
            Branch::I => "I",
            Branch::II => "II",
            Branch::III => "III",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleTrace {
    /// Constructions tried that produced the answer, outermost first.
    pub steps: Vec<String>,
    /// Some part of the answer came from an oracle instead of a construction.
    pub constructive_gap: bool,
}

impl CycleTrace {
    pub fn summary(&self) -> String {
        format!("steps={} gap={}", self.steps.join(","), self.constructive_gap)
    }
}

#[derive(Clone, Debug)]
pub struct CycleExtraction {
    pub family: Family<CycleWitness>,
    pub branch: Branch,
    pub trace: CycleTrace,
}

fn is_induced(g: &Graph, cyc: &[usize]) -> bool {
    let n = cyc.len();
    (0..n).all(|i| (i + 2..n).all(|j| (i == 0 && j == n - 1) || !g.has_edge(cyc[i], cyc[j])))
}

fn off_cycle_mask(g: &Graph, cyc: &[usize]) -> Vec<bool> {
    let mut m = vec![true; g.n()];
    for &v in cyc {
        m[v] = false;
    }
    m
}

fn two_neighbor_rule(g: &Graph, c: &CycleWitness) -> bool {
    let off = off_cycle_mask(g, &c.0);
    let rest: Vec<usize> = (0..g.n()).filter(|&v| off[v]).collect();
    let sub = match induced(g, &VertexSet::new(rest.iter().copied())) {
        Ok(d) => d,
        Err(_) => return false,
    };
    let cut = crate::decomposition::blocks(&sub.graph).1;
    for (i, &v) in rest.iter().enumerate() {
        if cut[i] {
            continue;
        }
        let on: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| !off[w]).collect();
        match on.len() {
            0 | 1 => {}
            2 => {
                if c.step(on[0], 2) != on[1] && c.step(on[0], -2) != on[1] {
                    return false;
                }
            }
            _ => return false,
        }
    }
    true
}

/// Induced odd cycles in order of length, then of their vertex sequence
/// (starting at the smallest vertex, second vertex below the last).
fn induced_odd_cycles(g: &Graph, budget: &mut Budget) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let mut out = Vec::new();
    for s in 0..n {
        let mut path = vec![s];
        let mut on = vec![false; n];
        on[s] = true;
        extend_induced(g, s, &mut path, &mut on, &mut out, budget)?;
    }
    out.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(out)
}

fn extend_induced(
    g: &Graph,
    s: usize,
    path: &mut Vec<usize>,
    on: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    budget: &mut Budget,
) -> Result<()> {
    budget.charge()?;
    let last = *path.last().unwrap();
    for &w in g.neighbors(last) {
        if w <= s || on[w] {
            continue;
        }
        // w may touch only `last` among interior path vertices, and s only
        // when closing.
        let inner = if path.len() >= 2 { &path[1..path.len() - 1] } else { &[][..] };
        if inner.iter().any(|&v| g.has_edge(v, w)) {
            continue;
        }
        let closes = path.len() >= 2 && g.has_edge(w, s);
        if closes {
            if path[1] < w && (path.len() + 1) % 2 == 1 {
                let mut c = path.clone();
                c.push(w);
                out.push(c);
            }
            continue;
        }
        path.push(w);
        on[w] = true;
        extend_induced(g, s, path, on, out, budget)?;
        on[w] = false;
        path.pop();
    }
    Ok(())
}

/// A non-separating induced odd cycle that is a triangle or obeys the
/// two-neighbour rule, shortest first. `None` when there is none.
pub fn find_nonsep_induced_odd_cycle(g: &Graph) -> Option<OddCycleWitness> {
    find_nonsep_induced_odd_cycle_with(g, &mut Budget::from_env()).ok().flatten()
}

pub fn find_nonsep_induced_odd_cycle_with(g: &Graph, budget: &mut Budget) -> Result<Option<OddCycleWitness>> {
    if is_bipartite(g).is_some() {
        return Ok(None);
    }
    for cyc in induced_odd_cycles(g, budget)? {
        let off = off_cycle_mask(g, &cyc);
        if !is_connected_mask(g, &off) {
            continue;
        }
        let m = (cyc.len() - 1) / 2;
        let cycle = CycleWitness(cyc);
        if m == 1 {
            return Ok(Some(OddCycleWitness { cycle, m, property: OddCycleProperty::Triangle }));
        }
        if two_neighbor_rule(g, &cycle) {
            return Ok(Some(OddCycleWitness { cycle, m, property: OddCycleProperty::TwoNeighborRule }));
        }
    }
    Ok(None)
}

/// Class reported for a cycle family: consecutive before the length
/// condition; a single cycle counts as the length condition.
pub fn cycle_family_class(lengths: &[usize]) -> Option<FamilyClass> {
    if lengths.len() == 1 && lengths[0] >= 3 {
        return Some(FamilyClass::LengthCondition);
    }
    [FamilyClass::Consecutive, FamilyClass::LengthCondition].into_iter().find(|c| c.holds_for(lengths))
}

/// The shortest k members of a candidate list, if they validate and form a
/// family of an allowed class.
fn accept(
    g: &Graph,
    k: usize,
    mut cycles: Vec<CycleWitness>,
    allowed: &[FamilyClass],
) -> Option<Family<CycleWitness>> {
    cycles.sort_by_key(|c| c.len());
    cycles.dedup_by_key(|c| c.len());
    if cycles.len() < k {
        return None;
    }
    cycles.truncate(k);
    for c in &cycles {
        c.validate(g).ok()?;
    }
    let lengths: Vec<usize> = cycles.iter().map(|c| c.len()).collect();
    let class = cycle_family_class(&lengths)?;
    let ok = allowed.contains(&class) || (k == 1 && lengths[0] >= 3);
    ok.then_some(Family { members: cycles, class })
}

fn check_cycle_hypothesis(g: &Graph, k: usize) -> Result<()> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    if g.n() < 3 || !is_two_connected(g) {
        return Err(unmet("graph is not 2-connected"));
    }
    if g.min_degree() < k + 1 {
        return Err(unmet(format!("minimum degree {} < {}", g.min_degree(), k + 1)));
    }
    Ok(())
}

/// Path family on a rooted piece, lifted to the parent ids, with the gap
/// flag folded into `trace`. `None` when the hypothesis fails there.
fn piece_paths(
    parent: &Graph,
    vs: &[usize],
    a: usize,
    b: usize,
    k: usize,
    mode: PathMode,
    trace: &mut CycleTrace,
) -> Result<Option<Vec<PathWitness>>> {
    if k == 0 {
        return Ok(Some(Vec::new()));
    }
    let d = induced(parent, &VertexSet::new(vs.iter().copied()))?;
    let (la, lb) = (
        d.local(a).ok_or_else(|| invalid("root outside piece"))?,
        d.local(b).ok_or_else(|| invalid("root outside piece"))?,
    );
    match find_paths(&d.graph, la, lb, k, mode) {
        Ok(r) => {
            trace.constructive_gap |= r.trace.constructive_gap;
            Ok(Some(
                r.family
                    .members
                    .iter()
                    .map(|p| PathWitness(p.0.iter().map(|&v| d.parent(v)).collect()))
                    .collect(),
            ))
        }
        Err(Error::HypothesisNotMet(_)) | Err(Error::NotRooted2Connected) => Ok(None),
        Err(e) => Err(e),
    }
}

fn is_length(paths: &[PathWitness]) -> bool {
    let l: Vec<usize> = paths.iter().map(PathWitness::len).collect();
    FamilyClass::LengthCondition.holds_for(&l)
}

fn switch_of(paths: &[PathWitness]) -> Option<usize> {
    let l: Vec<usize> = paths.iter().map(PathWitness::len).collect();
    match semi_switch(&l)? {
        FamilyClass::SemiLength { switch } => Some(switch),
        _ => None,
    }
}

/// 2-connected graphs with a 2-separation: path families on both sides of
/// the separating pair, closed into cycles with the length condition.
pub fn cycles_2conn_not_3conn(g: &Graph, k: usize) -> Result<CycleExtraction> {
    check_cycle_hypothesis(g, k)?;
    if g.n() < 4 || vertex_connectivity_at_least(g, 3)? {
        return Err(unmet("graph is 3-connected"));
    }
    let sep = find_2_separation(g)?.ok_or_else(|| unmet("graph is 3-connected"))?;
    let (x, y) = sep.cut;
    let (a, b) = (sep.a.as_slice().to_vec(), sep.b.as_slice().to_vec());
    let ParityFlag { phi, l } = ParityFlag::of(k);
    let mut trace = CycleTrace::default();
    let none = || Error::NoFamily;
    let fam = if phi == 0 {
        let p = piece_paths(g, &a, x, y, l, PathMode::Length, &mut trace)?.ok_or_else(none)?;
        let q = piece_paths(g, &b, x, y, l, PathMode::Length, &mut trace)?.ok_or_else(none)?;
        trace.steps.push("separation-length".into());
        glue_two_sided_length(&p, &q, 0)?
    } else {
        let p = piece_paths(g, &a, x, y, l + 1, PathMode::LengthOrSemi, &mut trace)?.ok_or_else(none)?;
        let q = piece_paths(g, &b, x, y, l + 1, PathMode::LengthOrSemi, &mut trace)?.ok_or_else(none)?;
        if is_length(&p) {
            let q2 = piece_paths(g, &b, x, y, l, PathMode::Length, &mut trace)?.ok_or_else(none)?;
            trace.steps.push("separation-length".into());
            glue_two_sided_length(&p, &q2, 1)?
        } else if is_length(&q) {
            let p2 = piece_paths(g, &a, x, y, l, PathMode::Length, &mut trace)?.ok_or_else(none)?;
            trace.steps.push("separation-length".into());
            glue_two_sided_length(&q, &p2, 1)?
        } else {
            trace.steps.push("separation-semi".into());
            glue_two_sided_semilength(&p, &q)?
        }
    };
    for c in &fam.members {
        c.validate(g)?;
    }
    Ok(CycleExtraction { family: fam, branch: Branch::I, trace })
}

/// Graphs with a non-separating induced odd cycle: consecutive lengths or
/// the length condition. Falls back to the oracle (flagged) when no
/// construction applies.
pub fn cycles_with_odd_cycle(g: &Graph, k: usize, w: &OddCycleWitness) -> Result<CycleExtraction> {
    check_cycle_hypothesis(g, k)?;
    w.validate(g)?;
    let mut trace = CycleTrace::default();
    let allowed = [FamilyClass::Consecutive, FamilyClass::LengthCondition];
    let found = odd_cycle_constructions(g, k, w, &mut trace)?;
    let family = match found {
        Some(f) => f,
        None => {
            trace.constructive_gap = true;
            let f = oracle_cycles(g, k, CyclePreference::ConsecutiveFirst, &mut Budget::from_env())?
                .ok_or(Error::NoFamily)?;
            accept(g, k, f.members, &allowed).ok_or(Error::NoFamily)?
        }
    };
    Ok(CycleExtraction { family, branch: Branch::II, trace })
}

fn odd_cycle_constructions(
    g: &Graph,
    k: usize,
    w: &OddCycleWitness,
    trace: &mut CycleTrace,
) -> Result<Option<Family<CycleWitness>>> {
    let allowed = [FamilyClass::Consecutive, FamilyClass::LengthCondition];
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    if k == 1 {
        trace.steps.push("odd-cycle-itself".into());
        return Ok(accept(g, 1, vec![w.cycle.clone()], &allowed));
    }
    if k == 2 {
        for (x, y) in g.edges() {
            let Some(ps) = piece_paths(g, &all, x, y, 2, PathMode::LengthOrSemi, trace)? else {
                continue;
            };
            let cycles = ps.iter().map(|p| CycleWitness(p.0.clone())).collect();
            if let Some(f) = accept(g, 2, cycles, &allowed) {
                trace.steps.push("edge-and-two-paths".into());
                return Ok(Some(f));
            }
        }
        return Ok(None);
    }
    let ParityFlag { phi, l } = ParityFlag::of(k);
    let c = &w.cycle;
    let m = w.m;
    // Paths for the fan: flexible for odd k, length condition for even k.
    let fan_mode = if phi == 0 { PathMode::LengthOrSemi } else { PathMode::Length };

    if m == 1 {
        for &u in &c.0 {
            let (up, um) = (c.step(u, 1), c.step(u, -1));
            let mut bd = DerivedBuilder::new(g);
            bd.vertices((0..n).filter(|&v| v != up && v != um));
            let star = bd.group([up, um]);
            let d = bd.build();
            let lu = d.local(u).expect("u kept");
            let r = match find_paths(&d.graph, lu, star, l, fan_mode) {
                Ok(r) => r,
                Err(Error::HypothesisNotMet(_)) => continue,
                Err(e) => return Err(e),
            };
            trace.constructive_gap |= r.trace.constructive_gap;
            let Some(paths) = r
                .family
                .members
                .iter()
                .map(|p| d.lift_path(g, &p.0).map(PathWitness))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            if let Ok(f) = odd_cycle_fan(c, u, &paths, phi) {
                if let Some(f) = accept(g, k, f.members, &allowed) {
                    trace.steps.push("triangle-contraction-fan".into());
                    return Ok(Some(f));
                }
            }
        }
        return Ok(None);
    }

    let off = off_cycle_mask(g, &c.0);
    let rest: Vec<usize> = (0..n).filter(|&v| off[v]).collect();
    let rd = induced(g, &VertexSet::new(rest.iter().copied()))?;
    let tree = block_cut_tree(&rd.graph)?;
    // (block, cut) pairs: end blocks, or the whole remainder with every
    // choice of b when it is 2-connected.
    let mut ends: Vec<(Vec<usize>, usize)> = Vec::new();
    if tree.cut_vertices.is_empty() {
        for &b in &rest {
            ends.push((rest.clone(), b));
        }
    } else {
        for &bi in &tree.end_blocks {
            let cuts = tree.cuts_of(bi);
            let [cut] = cuts.as_slice() else { continue };
            ends.push((tree.blocks[bi].iter().map(|v| rd.parent(v)).collect(), rd.parent(*cut)));
        }
    }

    for (blk, b) in &ends {
        let in_blk_inner: Vec<bool> = {
            let mut v = vec![false; n];
            for &x in blk.iter().filter(|&&x| x != *b) {
                v[x] = true;
            }
            v
        };
        for &x in blk.iter().filter(|&&x| x != *b) {
            for &u in &c.0 {
                for orient in [c.clone(), c.reversed()] {
                    let target = orient.step(u, m as isize);
                    let ys: Vec<usize> =
                        g.neighbors(target).iter().copied().filter(|&y| off[y] && !in_blk_inner[y]).collect();
                    for &y in &ys {
                        let Some(r) = bfs_path(g, &[*b], |v| v == y, |v| off[v] && !in_blk_inner[v]) else {
                            continue;
                        };
                        // Single attachment at u: a fan from u.
                        if g.has_edge(x, u) {
                            if let Some(ps) = piece_paths(g, blk, x, *b, l, fan_mode, trace)? {
                                let paths: Vec<PathWitness> = ps
                                    .iter()
                                    .map(|p| PathWitness([&[u][..], &p.0, &r[1..], &[target]].concat()))
                                    .collect();
                                if let Ok(f) = odd_cycle_fan(&orient, u, &paths, phi) {
                                    if let Some(f) = accept(g, k, f.members, &allowed) {
                                        trace.steps.push("fan-from-cycle-vertex".into());
                                        return Ok(Some(f));
                                    }
                                }
                            }
                        }
                        // x sees u⁺ and u⁻: a fan from x.
                        if g.has_edge(x, orient.step(u, 1)) && g.has_edge(x, orient.step(u, -1)) {
                            if let Some(ps) = piece_paths(g, blk, x, *b, l - 1, PathMode::Length, trace)? {
                                let paths: Vec<PathWitness> = ps
                                    .iter()
                                    .map(|p| PathWitness([&p.0[..], &r[1..], &[target]].concat()))
                                    .collect();
                                if let Ok(f) = odd_cycle_x_fan(&orient, u, x, &paths) {
                                    if let Some(f) = accept(g, k, f.members, &allowed) {
                                        trace.steps.push("fan-from-twin-neighbour".into());
                                        return Ok(Some(f));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // Two end blocks, each with a vertex seeing u⁺ and u⁻ for some u.
    if tree.cut_vertices.is_empty() {
        return Ok(None);
    }
    let twins = |blk: &[usize], b: usize| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &x in blk.iter().filter(|&&x| x != b) {
            for &u in &c.0 {
                if g.has_edge(x, c.step(u, 1)) && g.has_edge(x, c.step(u, -1)) {
                    out.push((x, u));
                }
            }
        }
        out
    };
    for i in 0..ends.len() {
        for j in 0..ends.len() {
            if i == j {
                continue;
            }
            let ((b1v, b1), (b2v, b2)) = (&ends[i], &ends[j]);
            for &(x1, u1) in &twins(b1v, *b1) {
                for &(x2, u2) in &twins(b2v, *b2) {
                    let Some(ps) = two_block_paths(g, (b1v, *b1, x1), (b2v, *b2, x2), &off, l, phi, trace)?
                    else {
                        continue;
                    };
                    for orient in [c.clone(), c.reversed()] {
                        if let Some(f) = close_two_blocks(g, k, &orient, u1, u2, &ps) {
                            trace.steps.push("two-end-blocks".into());
                            return Ok(Some(f));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// 2l - 3 + φ (x₁, x₂)-paths with the length condition off the cycle,
/// through end blocks B₁ ∋ x₁ and B₂ ∋ x₂ joined at their cut vertices.
fn two_block_paths(
    g: &Graph,
    (blk1, b1, x1): (&[usize], usize, usize),
    (blk2, b2, x2): (&[usize], usize, usize),
    off: &[bool],
    l: usize,
    phi: usize,
    trace: &mut CycleTrace,
) -> Result<Option<Vec<PathWitness>>> {
    let n = g.n();
    let mut inner = vec![false; n];
    for &v in blk1.iter().filter(|&&v| v != b1).chain(blk2.iter().filter(|&&v| v != b2)) {
        inner[v] = true;
    }
    let Some(bridge) = bfs_path(g, &[b1], |v| v == b2, |v| off[v] && !inner[v]) else {
        return Ok(None);
    };
    let join = |q: &PathWitness, r: &PathWitness| -> PathWitness {
        PathWitness([&q.0[..], &bridge[1..], &r.0[1..]].concat())
    };
    let sums = |q: &[PathWitness], r: &[PathWitness]| -> Vec<PathWitness> {
        sum_schedule(q.len(), r.len()).into_iter().map(|(i, j)| join(&q[i], &r[j])).collect()
    };
    let out = if phi == 0 {
        let Some(q) = piece_paths(g, blk1, x1, b1, l - 1, PathMode::Length, trace)? else {
            return Ok(None);
        };
        let Some(r) = piece_paths(g, blk2, b2, x2, l - 1, PathMode::Length, trace)? else {
            return Ok(None);
        };
        sums(&q, &r)
    } else {
        let Some(q) = piece_paths(g, blk1, x1, b1, l, PathMode::LengthOrSemi, trace)? else {
            return Ok(None);
        };
        let Some(r) = piece_paths(g, blk2, b2, x2, l, PathMode::LengthOrSemi, trace)? else {
            return Ok(None);
        };
        if is_length(&q) {
            let Some(r2) = piece_paths(g, blk2, b2, x2, l - 1, PathMode::Length, trace)? else {
                return Ok(None);
            };
            sums(&q, &r2)
        } else if is_length(&r) {
            let Some(q2) = piece_paths(g, blk1, x1, b1, l - 1, PathMode::Length, trace)? else {
                return Ok(None);
            };
            sums(&q2, &r)
        } else {
            let (Some(qs), Some(rs)) = (switch_of(&q), switch_of(&r)) else {
                return Ok(None);
            };
            semi_glue_schedule(l - 1, qs, rs).into_iter().map(|(i, j)| join(&q[i], &r[j])).collect()
        }
    };
    Ok(Some(out))
}

/// Closes (x₁, x₂)-paths around the cycle: each path through u₂⁻ back to
/// u₁⁺, and the longest also to u₁⁻ and from u₂⁺.
fn close_two_blocks(
    g: &Graph,
    k: usize,
    c: &CycleWitness,
    u1: usize,
    u2: usize,
    ps: &[PathWitness],
) -> Option<Family<CycleWitness>> {
    let last = ps.last()?;
    let close = |p: &PathWitness, from: usize, to: usize| -> CycleWitness {
        let arc = c.arc(from, to, -1);
        CycleWitness([&p.0[..], &arc[..]].concat())
    };
    let (u1p, u1m, u2p, u2m) = (c.step(u1, 1), c.step(u1, -1), c.step(u2, 1), c.step(u2, -1));
    let mut cycles: Vec<CycleWitness> = ps.iter().map(|p| close(p, u2m, u1p)).collect();
    cycles.push(close(last, u2m, u1m));
    cycles.push(close(last, u2p, u1m));
    accept(g, k, cycles, &[FamilyClass::LengthCondition])
}

/// Bipartite graphs: the oracle's length-condition family.
pub fn cycles_bipartite_oracle(g: &Graph, k: usize) -> Result<CycleExtraction> {
    check_cycle_hypothesis(g, k)?;
    if is_bipartite(g).is_none() {
        return Err(unmet("graph is not bipartite"));
    }
    let f =
        oracle_cycles(g, k, CyclePreference::LengthOnly, &mut Budget::from_env())?.ok_or(Error::NoFamily)?;
    let trace = CycleTrace { steps: vec!["bipartite-oracle".into()], constructive_gap: false };
    Ok(CycleExtraction { family: f, branch: Branch::III, trace })
}

/// k cycles with consecutive lengths or with the length condition in a
/// 2-connected graph of minimum degree at least k + 1.
pub fn find_k_cycles(g: &Graph, k: usize) -> Result<CycleExtraction> {
    check_cycle_hypothesis(g, k)?;
    let three = g.n() >= 4 && vertex_connectivity_at_least(g, 3)?;
    if g.n() >= 4 && !three {
        return cycles_2conn_not_3conn(g, k);
    }
    if is_bipartite(g).is_some() {
        return cycles_bipartite_oracle(g, k);
    }
    let w = find_nonsep_induced_odd_cycle_with(g, &mut Budget::from_env())?
        .ok_or_else(|| unmet("no non-separating induced odd cycle"))?;
    cycles_with_odd_cycle(g, k, &w)
}

/// For odd k, one cycle for every residue modulo k.
pub fn all_residues_mod_k(g: &Graph, k: usize) -> Result<(BTreeMap<usize, CycleWitness>, CycleExtraction)> {
    if k.is_multiple_of(2) {
        return Err(unmet("residue coverage needs odd k"));
    }
    let ext = find_k_cycles(g, k)?;
    let mut map = BTreeMap::new();
    for c in &ext.family.members {
        map.entry(c.len() % k).or_insert_with(|| c.clone());
    }
    if map.len() != k {
        return Err(Error::InvalidWitness(format!(
            "residues {:?} do not cover 0..{k}",
            map.keys().collect::<Vec<_>>()
        )));
    }
    Ok((map, ext))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{two_cliques_on_edge, wheel};

    #[test]
    fn parity() {
        for k in 1..20 {
            let p = ParityFlag::of(k);
            assert_eq!(p.phi + k % 2, 1);
            assert_eq!(2 * p.l - 1 + p.phi, k);
        }
    }

    #[test]
    fn odd_cycle_examples() {
        let w = find_nonsep_induced_odd_cycle(&Graph::complete(4)).unwrap();
        assert_eq!(w.cycle.len(), 3);
        assert!(find_nonsep_induced_odd_cycle(&Graph::complete_bipartite(3, 3)).is_none());
        let g = wheel(5);
        let w = find_nonsep_induced_odd_cycle(&g).unwrap();
        assert_eq!(w.cycle.len(), 3);
        assert!(w.cycle.0.contains(&5));
        w.validate(&g).unwrap();
    }

    #[test]
    fn separation_examples() {
        let r = cycles_2conn_not_3conn(&two_cliques_on_edge(4), 2).unwrap();
        assert_eq!(r.family.lengths(), vec![4, 6]);
        let r = find_k_cycles(&Graph::cycle(5), 1).unwrap();
        assert_eq!(r.family.lengths(), vec![5]);
        assert!(matches!(cycles_2conn_not_3conn(&Graph::complete(4), 2), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn dispatch_examples() {
        let r = find_k_cycles(&Graph::complete(4), 2).unwrap();
        assert_eq!((r.branch, r.family.lengths()), (Branch::II, vec![3, 4]));
        let r = find_k_cycles(&Graph::complete(5), 3).unwrap();
        assert_eq!(r.family.lengths(), vec![3, 4, 5]);
        let r = find_k_cycles(&Graph::complete_bipartite(4, 4), 3).unwrap();
        assert_eq!((r.branch, r.family.lengths()), (Branch::III, vec![4, 6, 8]));
        let r = find_k_cycles(&two_cliques_on_edge(4), 2).unwrap();
        assert_eq!(r.branch, Branch::I);
        assert!(matches!(
            find_k_cycles(&Graph::complete_bipartite(3, 3), 3),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn residues() {
        let (map, _) = all_residues_mod_k(&Graph::complete(5), 3).unwrap();
        assert_eq!(map.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(matches!(all_residues_mod_k(&Graph::complete(6), 4), Err(Error::HypothesisNotMet(_))));
        assert!(matches!(all_residues_mod_k(&Graph::complete(6), 5), Err(Error::HypothesisNotMet(_))));
    }
}

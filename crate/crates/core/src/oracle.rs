//! Exhaustive ground truth: every (x, y)-path length, every cycle length,
//! and the smallest family of each class that those lengths admit.
//!
//! Searches are plain backtracking over simple paths. Each search charges one
//! unit per visited node against a [`Budget`]; running out is reported as
//! [`Error::BudgetExceeded`] so that "no family" always means a complete
//! search.

use std::collections::BTreeMap;

use crate::decomposition::is_rooted_2_connected;
use crate::error::{invalid, Error, Result};
use crate::families::{semi_switch, CycleWitness, Family, FamilyClass, PathWitness};
use crate::graph::{is_bipartite, Graph};

/// Environment variable overriding the default node budget.
pub const BUDGET_ENV: &str = "CYCLEMOD_NODE_BUDGET";
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Node allowance for one search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    /// The limit from `CYCLEMOD_NODE_BUDGET`, or the default.
    pub fn from_env() -> Self {
        let limit =
            std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub(crate) fn charge(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

/// Which path classes the oracle may return.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathMode {
    Length,
    LengthOrSemi,
}

/// One witness (x, y)-path for every realizable length.
pub fn path_lengths(
    g: &Graph,
    x: usize,
    y: usize,
    budget: &mut Budget,
) -> Result<BTreeMap<usize, PathWitness>> {
    let n = g.n();
    if x >= n || y >= n || x == y {
        return Err(invalid("roots must be distinct vertices of the graph"));
    }
    let mut found: BTreeMap<usize, PathWitness> = BTreeMap::new();
    let mut on = vec![false; n];
    let mut path = vec![x];
    on[x] = true;
    // Lengths 1..=n-1 are the only candidates; stop as soon as all of them
    // (or all lengths of the parity allowed by a bipartition) are in hand.
    let colors = is_bipartite(g);
    let target = match &colors {
        Some(c) => (1..n).filter(|&l| (l % 2 == 1) == (c[x] != c[y])).count(),
        None => n - 1,
    };
    let mut stack: Vec<usize> = vec![0];
    while let Some(idx) = stack.last_mut() {
        let u = *path.last().unwrap();
        let nb = g.neighbors(u);
        if *idx >= nb.len() {
            stack.pop();
            on[u] = false;
            path.pop();
            continue;
        }
        let w = nb[*idx];
        *idx += 1;
        if on[w] {
            continue;
        }
        budget.charge()?;
        if w == y {
            let len = path.len();
            found.entry(len).or_insert_with(|| {
                let mut p = path.clone();
                p.push(y);
                PathWitness(p)
            });
            if found.len() == target {
                break;
            }
            continue;
        }
        on[w] = true;
        path.push(w);
        stack.push(0);
    }
    Ok(found)
}

/// The first family of the requested kind among the realizable lengths:
/// smallest start, length condition before semi-length, then the earliest
/// switch.
pub fn match_path_pattern(lengths: &[usize], k: usize, mode: PathMode) -> Option<(Vec<usize>, FamilyClass)> {
    if k == 0 {
        return None;
    }
    let has = |l: usize| lengths.binary_search(&l).is_ok();
    let max = *lengths.last()?;
    let run = |d: usize, switch: Option<usize>| -> Vec<usize> {
        let mut out = vec![d];
        for j in 1..k {
            let step = if Some(j) == switch { 1 } else { 2 };
            out.push(out[j - 1] + step);
        }
        out
    };
    for d in 2..=max {
        let seq = run(d, None);
        if seq.iter().all(|&l| has(l)) {
            return Some((seq, FamilyClass::LengthCondition));
        }
    }
    if mode == PathMode::LengthOrSemi {
        for d in 2..=max {
            for j in 1..k {
                let seq = run(d, Some(j));
                if seq.iter().all(|&l| has(l)) {
                    return Some((seq, FamilyClass::SemiLength { switch: j }));
                }
            }
        }
    }
    None
}

/// Ground-truth path family, or `None` when the graph admits none.
pub fn oracle_paths(
    g: &Graph,
    x: usize,
    y: usize,
    k: usize,
    mode: PathMode,
) -> Result<Option<Family<PathWitness>>> {
    oracle_paths_with(g, x, y, k, mode, &mut Budget::from_env())
}

pub fn oracle_paths_with(
    g: &Graph,
    x: usize,
    y: usize,
    k: usize,
    mode: PathMode,
    budget: &mut Budget,
) -> Result<Option<Family<PathWitness>>> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let found = path_lengths(g, x, y, budget)?;
    let lengths: Vec<usize> = found.keys().copied().collect();
    Ok(match_path_pattern(&lengths, k, mode).map(|(seq, class)| {
        let members = seq.iter().map(|l| found[l].clone()).collect();
        Family { members, class }
    }))
}

/// Whether the rooted instance meets the degree hypothesis for `k` paths.
pub fn meets_path_hypothesis(g: &Graph, x: usize, y: usize, k: usize, mode: PathMode) -> Result<bool> {
    let need = match mode {
        PathMode::Length => 2 * k,
        PathMode::LengthOrSemi => 2 * k - 1,
    };
    Ok(k >= 1 && is_rooted_2_connected(g, x, y)? && g.rooted_min_degree(x, y) >= need)
}

/// A cycle of exactly `len` edges, searched from each possible smallest
/// vertex with distance pruning.
pub fn cycle_of_length(g: &Graph, len: usize, budget: &mut Budget) -> Result<Option<CycleWitness>> {
    let n = g.n();
    if len < 3 || len > n {
        return Ok(None);
    }
    if len % 2 == 1 && is_bipartite(g).is_some() {
        return Ok(None);
    }
    for s in 0..n {
        if n - s < len {
            break;
        }
        // Distances to s inside the vertices >= s.
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if w > s && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if (s + 1..n).filter(|&v| dist[v] != usize::MAX).count() + 1 < len {
            continue;
        }
        let mut on = vec![false; n];
        on[s] = true;
        let mut path = vec![s];
        let mut stack: Vec<usize> = vec![0];
        while let Some(idx) = stack.last_mut() {
            let u = *path.last().unwrap();
            let nb = g.neighbors(u);
            if *idx >= nb.len() {
                stack.pop();
                on[u] = false;
                path.pop();
                continue;
            }
            let w = nb[*idx];
            *idx += 1;
            if w == s && path.len() == len {
                return Ok(Some(CycleWitness(path.clone())));
            }
            if w <= s || on[w] || dist[w] == usize::MAX {
                continue;
            }
            // After stepping to w the path has path.len() edges; closing
            // needs at least dist[w] more and exactly len in total.
            let used = path.len();
            if used + dist[w] > len || used >= len {
                continue;
            }
            budget.charge()?;
            on[w] = true;
            path.push(w);
            stack.push(0);
        }
    }
    Ok(None)
}

/// Every cycle length of `g` with one witness each.
pub fn cycle_witnesses(g: &Graph, budget: &mut Budget) -> Result<BTreeMap<usize, CycleWitness>> {
    let mut out = BTreeMap::new();
    for len in 3..=g.n() {
        if let Some(c) = cycle_of_length(g, len, budget)? {
            out.insert(len, c);
        }
    }
    Ok(out)
}

/// The set of cycle lengths of `g`.
pub fn cycle_spectrum(g: &Graph, budget: &mut Budget) -> Result<Vec<usize>> {
    Ok(cycle_witnesses(g, budget)?.into_keys().collect())
}

/// Which cycle classes the cycle oracle may return, in order of preference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CyclePreference {
    /// Consecutive lengths first, then the length condition.
    ConsecutiveFirst,
    LengthOnly,
}

/// The first k-cycle family in the spectrum: smallest start, consecutive
/// before length condition when allowed.
pub fn match_cycle_pattern(
    lengths: &[usize],
    k: usize,
    pref: CyclePreference,
) -> Option<(Vec<usize>, FamilyClass)> {
    let has = |l: usize| lengths.binary_search(&l).is_ok();
    let max = *lengths.last()?;
    if pref == CyclePreference::ConsecutiveFirst {
        if let Some(c) = (3..=max).find(|&c| (0..k).all(|i| has(c + i))) {
            return Some(((0..k).map(|i| c + i).collect(), FamilyClass::Consecutive));
        }
    }
    (3..=max)
        .find(|&c| (0..k).all(|i| has(c + 2 * i)))
        .map(|c| ((0..k).map(|i| c + 2 * i).collect(), FamilyClass::LengthCondition))
}

/// Ground-truth cycle family.
pub fn oracle_cycles(
    g: &Graph,
    k: usize,
    pref: CyclePreference,
    budget: &mut Budget,
) -> Result<Option<Family<CycleWitness>>> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    let found = cycle_witnesses(g, budget)?;
    let lengths: Vec<usize> = found.keys().copied().collect();
    Ok(match_cycle_pattern(&lengths, k, pref).map(|(seq, class)| {
        let class = if k == 1 { FamilyClass::LengthCondition } else { class };
        Family { members: seq.iter().map(|l| found[l].clone()).collect(), class }
    }))
}

/// Class of a path family as the extractors report it: the length condition
/// when it holds, otherwise the semi-length switch.
pub fn path_family_class(lengths: &[usize]) -> Option<FamilyClass> {
    if FamilyClass::LengthCondition.holds_for(lengths) {
        Some(FamilyClass::LengthCondition)
    } else {
        semi_switch(lengths)
    }
}

//! Batch runs of both extractors over small graphs, every answer checked by
//! the certificate verifier.
//!
//! Instances are either every graph up to isomorphism (`Exhaustive`) or
//! seeded random labelled graphs (`Samples`). Each instance is independent;
//! results are tallied into a map with sorted keys so the report does not
//! depend on the order workers finish in.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::cycles::find_k_cycles;
use crate::decomposition::{is_rooted_2_connected, is_two_connected};
use crate::enumerate::all_graphs;
use crate::error::Error;
use crate::graph::Graph;
use crate::oracle::PathMode;
use crate::par::{par_map, Execution};
use crate::paths::find_paths;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    Exhaustive,
    /// This many random graphs per order, each kept only if it is connected.
    Samples(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub nmax: usize,
    pub kmax: usize,
    pub selection: Selection,
    pub seed: u64,
    pub paths: bool,
    pub execution: Execution,
}

impl SweepConfig {
    pub fn new(nmax: usize, kmax: usize, selection: Selection) -> Self {
        SweepConfig { nmax, kmax, selection, seed: 0, paths: true, execution: Execution::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Key {
    /// `cycles`, `paths-length` or `paths-flex`.
    pub kind: String,
    pub n: usize,
    pub k: usize,
    /// Cycle branch tag; `-` for paths.
    pub branch: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub gap: u64,
    pub budget: u64,
}

impl Tally {
    fn add(&mut self, o: &Tally) {
        self.pass += o.pass;
        self.fail += o.fail;
        self.gap += o.gap;
        self.budget += o.budget;
    }

    pub fn total(&self) -> u64 {
        self.pass + self.fail + self.gap + self.budget
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub rows: BTreeMap<Key, Tally>,
    /// Up to a few failing instances, for diagnosis.
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn totals(&self) -> Tally {
        let mut t = Tally::default();
        for v in self.rows.values() {
            t.add(v);
        }
        t
    }

    pub fn budget_exceeded(&self) -> bool {
        self.totals().budget > 0
    }

    pub fn all_pass(&self) -> bool {
        let t = self.totals();
        t.fail == 0 && t.gap == 0 && t.budget == 0
    }

    /// One object per row with the key and tally fields side by side.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            #[serde(flatten)]
            key: &'a Key,
            #[serde(flatten)]
            tally: &'a Tally,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            rows: Vec<Row<'a>>,
            totals: Tally,
            failures: &'a [String],
        }
        let rows = self.rows.iter().map(|(key, tally)| Row { key, tally }).collect();
        serde_json::to_string_pretty(&Doc { rows, totals: self.totals(), failures: &self.failures })
            .expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:<13} {:>3} {:>3} {:>6} {:>8} {:>6} {:>6} {:>6}",
            "kind", "n", "k", "branch", "pass", "fail", "gap", "budget"
        );
        for (key, t) in &self.rows {
            let _ = writeln!(
                s,
                "{:<13} {:>3} {:>3} {:>6} {:>8} {:>6} {:>6} {:>6}",
                key.kind, key.n, key.k, key.branch, t.pass, t.fail, t.gap, t.budget
            );
        }
        let t = self.totals();
        let _ = writeln!(
            s,
            "total: {} instances, {} pass, {} fail, {} gap, {} over budget",
            t.total(),
            t.pass,
            t.fail,
            t.gap,
            t.budget
        );
        for f in &self.failures {
            let _ = writeln!(s, "failed: {f}");
        }
        s
    }
}

type Outcome = Vec<(Key, Tally, Option<String>)>;

fn record(
    out: &mut Outcome,
    key: Key,
    gap: bool,
    res: std::result::Result<(), Error>,
    what: impl FnOnce() -> String,
) {
    let mut t = Tally::default();
    let note = match res {
        Ok(()) if gap => {
            t.gap = 1;
            Some(format!("gap: {}", what()))
        }
        Ok(()) => {
            t.pass = 1;
            None
        }
        Err(Error::BudgetExceeded(_)) => {
            t.budget = 1;
            None
        }
        Err(e) => {
            t.fail = 1;
            Some(format!("{}: {e}", what()))
        }
    };
    out.push((key, t, note));
}

fn check(cert: &Certificate) -> std::result::Result<(), Error> {
    cert.verify().map_err(|f| Error::InvalidWitness(f.to_string()))
}

fn run_graph(g: &Graph, cfg: &SweepConfig) -> Outcome {
    let mut out = Outcome::new();
    let n = g.n();
    if is_two_connected(g) {
        for k in 1..=cfg.kmax.min(g.min_degree().saturating_sub(1)) {
            let (branch, gap, res) = match find_k_cycles(g, k) {
                Ok(ext) => (
                    ext.branch.tag().to_string(),
                    ext.trace.constructive_gap,
                    check(&Certificate::for_cycles(g, k, &ext, false)),
                ),
                Err(e) => ("?".to_string(), false, Err(e)),
            };
            record(&mut out, Key { kind: "cycles".into(), n, k, branch }, gap, res, || {
                format!("cycles k={k} {}", g.to_text().trim())
            });
        }
    }
    if !cfg.paths {
        return out;
    }
    for x in 0..n {
        for y in x + 1..n {
            if !is_rooted_2_connected(g, x, y).unwrap_or(false) {
                continue;
            }
            let d = g.rooted_min_degree(x, y);
            for (mode, kind) in [(PathMode::Length, "paths-length"), (PathMode::LengthOrSemi, "paths-flex")] {
                let kcap = match mode {
                    PathMode::Length => d / 2,
                    PathMode::LengthOrSemi => d.div_ceil(2),
                };
                for k in 1..=cfg.kmax.min(kcap) {
                    let (gap, res) = match find_paths(g, x, y, k, mode) {
                        Ok(ext) => (
                            ext.trace.constructive_gap,
                            check(&Certificate::for_paths(g, x, y, k, mode, &ext)),
                        ),
                        Err(e) => (false, Err(e)),
                    };
                    let key = Key { kind: kind.into(), n, k, branch: "-".into() };
                    record(&mut out, key, gap, res, || {
                        format!("{kind} k={k} x={x} y={y} {}", g.to_text().trim())
                    });
                }
            }
        }
    }
    out
}

/// Random connected graphs of order `n`, `count` of them, from `rng`.
fn sample_graphs(n: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Graph> {
    let mut v = Vec::with_capacity(count);
    let mut tries = 0;
    while v.len() < count && tries < 200 * count.max(1) {
        tries += 1;
        let p: f64 = rng.gen_range(0.3..0.95);
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    e.push((a, b));
                }
            }
        }
        let g = Graph::from_edges(n, &e).expect("in range");
        if crate::decomposition::is_connected(&g) {
            v.push(g);
        }
    }
    v
}

/// Instances the sweep would run, before any extraction.
pub fn instances(cfg: &SweepConfig) -> Vec<Graph> {
    let mut gs = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for n in 3..=cfg.nmax {
        match cfg.selection {
            Selection::Exhaustive => {
                gs.extend(all_graphs(n).into_iter().filter(crate::decomposition::is_connected))
            }
            Selection::Samples(m) => gs.extend(sample_graphs(n, m, &mut rng)),
        }
    }
    gs
}

pub fn run(cfg: &SweepConfig) -> SweepReport {
    let graphs = instances(cfg);
    let outcomes = par_map(&graphs, cfg.execution, |g| run_graph(g, cfg));
    let mut report = SweepReport::default();
    for (key, t, note) in outcomes.into_iter().flatten() {
        report.rows.entry(key).or_default().add(&t);
        if let Some(s) = note {
            if report.failures.len() < 20 {
                report.failures.push(s);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small() {
        let r = run(&SweepConfig::new(5, 3, Selection::Exhaustive));
        assert!(r.all_pass(), "{}", r.render());
        assert!(r.rows.keys().any(|k| k.kind == "cycles" && k.branch == "II"));
        assert!(r.rows.keys().any(|k| k.kind == "paths-flex"));
    }

    #[test]
    fn order_independent() {
        let mut cfg = SweepConfig::new(6, 2, Selection::Samples(8));
        cfg.seed = 3;
        let a = run(&cfg);
        cfg.execution = Execution::Sequential;
        assert_eq!(a, run(&cfg));
    }
}

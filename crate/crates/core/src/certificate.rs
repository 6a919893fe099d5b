//! Self-contained certificates and their independent verifier.
//!
//! A certificate embeds the graph, the request and the family. `verify`
//! re-checks it from scratch: it only trusts the graph and the witnesses.
//! The trailing SHA-256 digest covers every other field, so an edit to a
//! field the semantic checks cannot see (version, trace) is still caught.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cycles::{cycle_family_class, CycleExtraction};
use crate::decomposition::{is_rooted_2_connected, is_two_connected};
use crate::error::{Error, Result};
use crate::families::{CycleWitness, FamilyClass, PathWitness};
use crate::graph::Graph;
use crate::oracle::PathMode;
use crate::paths::PathExtraction;

pub const TOOL: &str = "cyclemod";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertGraph {
    pub n: usize,
    /// Sorted `[u, v]` pairs with `u < v`.
    pub edges: Vec<[usize; 2]>,
}

impl CertGraph {
    pub fn of(g: &Graph) -> CertGraph {
        CertGraph { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect() }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let mut prev: Option<[usize; 2]> = None;
        for &e in &self.edges {
            if e[0] >= e[1] || prev.is_some_and(|p| p >= e) {
                return Err(Error::InvalidWitness(format!("edge list not canonical at {e:?}")));
            }
            prev = Some(e);
        }
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(self.n, &pairs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Paths,
    Cycles,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub tool: String,
    pub version: String,
    pub command: Command,
    pub graph: CertGraph,
    pub k: usize,
    /// Roots for path certificates.
    pub roots: Option<[usize; 2]>,
    pub mode: Option<PathMode>,
    /// Regime tag for cycle certificates; `III` answers come from the oracle.
    pub branch: Option<String>,
    pub family: Vec<Vec<usize>>,
    pub class: FamilyClass,
    /// Residue mod k to the index of a family member with that residue.
    pub residues: Option<BTreeMap<usize, usize>>,
    pub trace: String,
    pub constructive_gap: bool,
    pub digest: String,
}

/// First failed check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFailure {
    pub check: &'static str,
    pub detail: String,
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.check, self.detail)
    }
}

impl Certificate {
    pub fn for_paths(
        g: &Graph,
        x: usize,
        y: usize,
        k: usize,
        mode: PathMode,
        ext: &PathExtraction,
    ) -> Certificate {
        let mut c = Certificate {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: Command::Paths,
            graph: CertGraph::of(g),
            k,
            roots: Some([x, y]),
            mode: Some(mode),
            branch: None,
            family: ext.family.members.iter().map(|p| p.0.clone()).collect(),
            class: ext.family.class,
            residues: None,
            trace: ext.trace.summary(),
            constructive_gap: ext.trace.constructive_gap,
            digest: String::new(),
        };
        c.seal();
        c
    }

    pub fn for_cycles(g: &Graph, k: usize, ext: &CycleExtraction, with_residues: bool) -> Certificate {
        let residues = with_residues.then(|| {
            let mut m = BTreeMap::new();
            for (i, c) in ext.family.members.iter().enumerate() {
                m.entry(c.len() % k).or_insert(i);
            }
            m
        });
        let mut c = Certificate {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: Command::Cycles,
            graph: CertGraph::of(g),
            k,
            roots: None,
            mode: None,
            branch: Some(ext.branch.tag().into()),
            family: ext.family.members.iter().map(|c| c.0.clone()).collect(),
            class: ext.family.class,
            residues,
            trace: ext.trace.summary(),
            constructive_gap: ext.trace.constructive_gap,
            digest: String::new(),
        };
        c.seal();
        c
    }

    fn compute_digest(&self) -> String {
        let mut body = self.clone();
        body.digest = String::new();
        let bytes = serde_json::to_vec(&body).expect("certificate serializes");
        let hash = Sha256::digest(&bytes);
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Recomputes the digest after the fields are final.
    pub fn seal(&mut self) {
        self.digest = self.compute_digest();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    /// Re-checks everything; returns the first failed check.
    pub fn verify(&self) -> std::result::Result<(), VerifyFailure> {
        let fail = |check: &'static str, detail: String| Err(VerifyFailure { check, detail });
        if self.tool != TOOL {
            return fail("tool", format!("unknown tool {:?}", self.tool));
        }
        let g = match self.graph.to_graph() {
            Ok(g) => g,
            Err(e) => return fail("graph", e.to_string()),
        };
        if self.k == 0 || self.family.len() != self.k {
            return fail("size", format!("{} members for k = {}", self.family.len(), self.k));
        }
        let lengths: Vec<usize> = match self.command {
            Command::Paths => {
                let Some([x, y]) = self.roots else {
                    return fail("roots", "path certificate without roots".into());
                };
                if self.branch.is_some() || self.residues.is_some() {
                    return fail("fields", "cycle-only fields on a path certificate".into());
                }
                for p in &self.family {
                    if let Err(e) = PathWitness(p.clone()).validate_between(&g, x, y) {
                        return fail("adjacency", e.to_string());
                    }
                }
                self.family.iter().map(|p| p.len().saturating_sub(1)).collect()
            }
            Command::Cycles => {
                if self.roots.is_some() || self.mode.is_some() {
                    return fail("fields", "path-only fields on a cycle certificate".into());
                }
                for c in &self.family {
                    if c.len() < 3 {
                        return fail("adjacency", format!("cycle {c:?} is too short"));
                    }
                    if let Err(e) = CycleWitness(c.clone()).validate(&g) {
                        return fail("adjacency", e.to_string());
                    }
                }
                self.family.iter().map(Vec::len).collect()
            }
        };
        if !self.class.holds_for(&lengths) {
            return fail("classification", format!("lengths {lengths:?} are not {}", self.class.name()));
        }
        match self.command {
            Command::Paths => {
                let expected = crate::oracle::path_family_class(&lengths);
                let allowed = match self.mode {
                    Some(PathMode::Length) => self.class == FamilyClass::LengthCondition,
                    Some(PathMode::LengthOrSemi) => Some(self.class) == expected,
                    None => false,
                };
                if !allowed || Some(self.class) != expected {
                    return fail(
                        "classification",
                        format!("class {} not allowed for {:?}", self.class.name(), self.mode),
                    );
                }
            }
            Command::Cycles => {
                if Some(self.class) != cycle_family_class(&lengths) {
                    return fail(
                        "classification",
                        format!("class {} is not the reported class of {lengths:?}", self.class.name()),
                    );
                }
                if !matches!(self.branch.as_deref(), Some("I" | "II" | "III")) {
                    return fail("branch", format!("unknown branch {:?}", self.branch));
                }
            }
        }
        if let Err(e) = self.check_hypothesis(&g) {
            return fail("hypothesis", e);
        }
        if let Some(res) = &self.residues {
            if self.k.is_multiple_of(2) {
                return fail("residues", "residue map for even k".into());
            }
            if res.keys().copied().ne(0..self.k) {
                return fail(
                    "residues",
                    format!("keys {:?} are not 0..{}", res.keys().collect::<Vec<_>>(), self.k),
                );
            }
            for (&r, &i) in res {
                match lengths.get(i) {
                    Some(&len) if len % self.k == r => {}
                    _ => return fail("residues", format!("member {i} does not have residue {r}")),
                }
            }
        }
        if self.digest != self.compute_digest() {
            return fail("digest", "digest does not match contents".into());
        }
        Ok(())
    }

    fn check_hypothesis(&self, g: &Graph) -> std::result::Result<(), String> {
        match self.command {
            Command::Paths => {
                let [x, y] = self.roots.expect("checked");
                let need = match self.mode {
                    Some(PathMode::Length) => 2 * self.k,
                    _ => 2 * self.k - 1,
                };
                if !is_rooted_2_connected(g, x, y).unwrap_or(false) {
                    return Err("rooted graph is not 2-connected".into());
                }
                if g.rooted_min_degree(x, y) < need {
                    return Err(format!("internal degree below {need}"));
                }
            }
            Command::Cycles => {
                if !is_two_connected(g) || g.min_degree() < self.k + 1 {
                    return Err("graph is not 2-connected with minimum degree k + 1".into());
                }
            }
        }
        Ok(())
    }
}

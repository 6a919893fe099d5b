//! Length classes of path and cycle families, and the fixed row schedules
//! that combine families into larger ones.
//!
//! Three classes are recognised, all requiring the shortest member to have at
//! least two edges: consecutive (steps of one), the length condition (steps of
//! two) and the semi-length condition (steps of two except exactly one step of
//! one, at the *switch*). A list such as `[2, 3]` satisfies both consecutive
//! and semi-length; [`classify`] reports one canonical class, preferring the
//! length condition, then consecutive, then semi-length, while
//! [`FamilyClass::holds_for`] checks a declared class exactly.
//!
//! Every combinator is split into a pure schedule (index pairs, used for the
//! arithmetic checks) and a witness builder that applies the schedule to
//! concrete paths.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// An oriented path, stored as its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathWitness(pub Vec<usize>);

impl PathWitness {
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn start(&self) -> usize {
        self.0[0]
    }

    pub fn end(&self) -> usize {
        *self.0.last().unwrap()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn reversed(&self) -> PathWitness {
        PathWitness(self.0.iter().rev().copied().collect())
    }

    /// Checks simplicity and adjacency in `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        validate_sequence(g, &self.0, false)
    }

    /// Checks the path runs from `x` to `y` in `g`.
    pub fn validate_between(&self, g: &Graph, x: usize, y: usize) -> Result<()> {
        if self.0.first() != Some(&x) || self.0.last() != Some(&y) {
            return Err(Error::InvalidWitness(format!("path {:?} does not run from {x} to {y}", self.0)));
        }
        self.validate(g)
    }
}

/// A cycle, stored as a vertex sequence whose last vertex is adjacent to the
/// first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleWitness(pub Vec<usize>);

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.0.len() < 3 {
            return Err(Error::InvalidWitness(format!("cycle {:?} shorter than 3", self.0)));
        }
        validate_sequence(g, &self.0, true)
    }

    /// Position of `v` on the cycle.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.0.iter().position(|&w| w == v)
    }

    /// The vertex `h` steps after `v` in the stored orientation (negative `h`
    /// walks backwards).
    pub fn step(&self, v: usize, h: isize) -> usize {
        let n = self.0.len() as isize;
        let i = self.position(v).expect("vertex on cycle") as isize;
        self.0[(((i + h) % n + n) % n) as usize]
    }

    /// The arc from `a` to `b` walking forwards (`dir = 1`) or backwards
    /// (`dir = -1`), both ends included.
    pub fn arc(&self, a: usize, b: usize, dir: isize) -> Vec<usize> {
        let mut out = vec![a];
        let mut cur = a;
        while cur != b {
            cur = self.step(cur, dir);
            out.push(cur);
        }
        out
    }

    pub fn reversed(&self) -> CycleWitness {
        CycleWitness(self.0.iter().rev().copied().collect())
    }
}

fn validate_sequence(g: &Graph, seq: &[usize], closed: bool) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &v in seq {
        if v >= g.n() {
            return Err(Error::InvalidWitness(format!("vertex {v} out of range")));
        }
        if !seen.insert(v) {
            return Err(Error::InvalidWitness(format!("vertex {v} repeated in {seq:?}")));
        }
    }
    for w in seq.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::InvalidWitness(format!("{} and {} are not adjacent", w[0], w[1])));
        }
    }
    if closed && !g.has_edge(seq[0], *seq.last().unwrap()) {
        return Err(Error::InvalidWitness(format!(
            "{} and {} are not adjacent",
            seq.last().unwrap(),
            seq[0]
        )));
    }
    Ok(())
}

/// Length class of an ordered family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyClass {
    Consecutive,
    LengthCondition,
    /// `switch` is the 1-based index j with `len[j] - len[j-1] = 1`.
    SemiLength {
        switch: usize,
    },
}

impl FamilyClass {
    pub fn holds_for(&self, lengths: &[usize]) -> bool {
        if lengths.is_empty() || lengths[0] < 2 {
            return false;
        }
        let diffs = || lengths.windows(2).map(|w| w[1] as isize - w[0] as isize);
        match *self {
            FamilyClass::Consecutive => diffs().all(|d| d == 1),
            FamilyClass::LengthCondition => diffs().all(|d| d == 2),
            FamilyClass::SemiLength { switch } => {
                switch >= 1
                    && switch < lengths.len()
                    && diffs().enumerate().all(|(i, d)| if i + 1 == switch { d == 1 } else { d == 2 })
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            FamilyClass::Consecutive => "consecutive".into(),
            FamilyClass::LengthCondition => "length".into(),
            FamilyClass::SemiLength { switch } => format!("semi-length(switch={switch})"),
        }
    }
}

/// Canonical class of a length sequence, or `None` when no class fits.
pub fn classify(lengths: &[usize]) -> Option<FamilyClass> {
    if lengths.is_empty() || lengths[0] < 2 {
        return None;
    }
    if FamilyClass::LengthCondition.holds_for(lengths) {
        return Some(FamilyClass::LengthCondition);
    }
    if FamilyClass::Consecutive.holds_for(lengths) {
        return Some(FamilyClass::Consecutive);
    }
    let ones: Vec<usize> = lengths
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] as isize - w[0] as isize == 1)
        .map(|(i, _)| i + 1)
        .collect();
    match ones.as_slice() {
        [j] if FamilyClass::SemiLength { switch: *j }.holds_for(lengths) => {
            Some(FamilyClass::SemiLength { switch: *j })
        }
        _ => None,
    }
}

/// An ordered family with its declared class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family<W> {
    pub members: Vec<W>,
    pub class: FamilyClass,
}

pub trait Witness {
    fn edge_count(&self) -> usize;
}

impl Witness for PathWitness {
    fn edge_count(&self) -> usize {
        self.len()
    }
}

impl Witness for CycleWitness {
    fn edge_count(&self) -> usize {
        self.len()
    }
}

impl<W: Witness> Family<W> {
    /// Wraps members with a declared class, checking it.
    pub fn new(members: Vec<W>, class: FamilyClass) -> Result<Self> {
        let f = Family { members, class };
        if !class.holds_for(&f.lengths()) {
            return Err(Error::InvalidWitness(format!("lengths {:?} are not {}", f.lengths(), class.name())));
        }
        Ok(f)
    }

    /// Wraps members with their canonical class.
    pub fn classified(members: Vec<W>) -> Result<Self> {
        let lengths: Vec<usize> = members.iter().map(Witness::edge_count).collect();
        let class = classify(&lengths)
            .ok_or_else(|| Error::InvalidWitness(format!("lengths {lengths:?} fit no class")))?;
        Ok(Family { members, class })
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.members.iter().map(Witness::edge_count).collect()
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }
}

/// Which end of each member the bridge attaches to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The bridge ends where every member starts.
    Prefix,
    /// The bridge starts where every member ends.
    Suffix,
}

/// Extends every member by the same bridge path.
pub fn combine_across_cut(
    family: &[PathWitness],
    bridge: &PathWitness,
    side: Side,
) -> Result<Vec<PathWitness>> {
    family
        .iter()
        .map(|p| {
            let (head, tail) = match side {
                Side::Prefix => (bridge, p),
                Side::Suffix => (p, bridge),
            };
            if head.end() != tail.start() {
                return Err(Error::InvalidWitness(format!("bridge does not meet member {:?}", p.0)));
            }
            if head.0[..head.0.len() - 1].iter().any(|v| tail.0.contains(v)) {
                return Err(Error::InvalidWitness("bridge overlaps a member".into()));
            }
            Ok(concat(&head.0, &tail.0))
        })
        .collect()
}

/// `a` followed by `b` without repeating the shared junction vertex.
pub fn concat(a: &[usize], b: &[usize]) -> PathWitness {
    debug_assert_eq!(a.last(), b.first());
    let mut out = a.to_vec();
    out.extend_from_slice(&b[1..]);
    PathWitness(out)
}

/// Pairs `(i, j)` of a sum of two ordered families: the first member of `a`
/// with every member of `b`, then the later members of `a` with the last of
/// `b`. When `a` satisfies the length condition the sums inherit the class of
/// `b`, shifted; `a.len() + b.len() - 1` rows in total.
pub fn sum_schedule(a: usize, b: usize) -> Vec<(usize, usize)> {
    if a == 0 || b == 0 {
        return Vec::new();
    }
    let mut rows: Vec<(usize, usize)> = (0..b).map(|j| (0, j)).collect();
    rows.extend((1..a).map(|i| (i, b - 1)));
    rows
}

/// Gluing across a 2-separation when both sides satisfy the length
/// condition: `l + φ` paths on one side, `l` on the other, `2l - 1 + φ` rows.
pub fn length_glue_schedule(l: usize, phi: usize) -> Vec<(usize, usize)> {
    let rows = sum_schedule(l + phi, l);
    debug_assert_eq!(rows.len(), 2 * l - 1 + phi);
    rows
}

/// Gluing two semi-length families of `l + 1` members with switches `p` and
/// `q` (1-based) into `2l` cycles with the length condition. The five column
/// groups are emitted left to right; indices in the result are 0-based.
pub fn semi_glue_schedule(l: usize, p: usize, q: usize) -> Vec<(usize, usize)> {
    let mut rows = Vec::new();
    rows.extend((1..=q).map(|i| (1, i)));
    rows.extend((2..=p).map(|i| (i, q)));
    rows.push((p + 1, q + 1));
    rows.extend((q + 2..=l + 1).map(|i| (p + 1, i)));
    rows.extend((p + 2..=l + 1).map(|i| (i, l + 1)));
    rows.into_iter().map(|(a, b)| (a - 1, b - 1)).collect()
}

/// Which arc around the odd cycle closes a fan row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arc {
    /// The short way back (m edges, or m - 1 from u⁺).
    Short,
    /// The long way back (m + 1 edges, or m + 2 to u⁺).
    Long,
    /// From u⁺ᵐ to u⁻ the short way (x-fan only).
    ShortToMinus,
    /// From u⁺ᵐ to u⁻ the long way (x-fan only).
    LongToMinus,
}

/// Fan rows over `l` paths satisfying the length condition: every path with
/// both arcs, `2l` rows.
pub fn fan_schedule(l: usize) -> Vec<(usize, Arc)> {
    (0..l).flat_map(|i| [(i, Arc::Short), (i, Arc::Long)]).collect()
}

/// Fan rows over `l` semi-length paths with 1-based switch `j`: the path just
/// after the switch keeps only its long arc, `2l - 1` rows.
pub fn semi_fan_schedule(l: usize, j: usize) -> Vec<(usize, Arc)> {
    (0..l)
        .flat_map(|i| if i == j { vec![(i, Arc::Long)] } else { vec![(i, Arc::Short), (i, Arc::Long)] })
        .collect()
}

/// Rows of the fan through an outside vertex x adjacent to u⁺ and u⁻, over
/// `l - 1` paths from x to u⁺ᵐ: each path closes at u⁺ (m - 1) and at u⁻
/// (m), and the last path also through the long arcs, `2l` rows.
pub fn x_fan_schedule(l: usize) -> Vec<(usize, Arc)> {
    let mut rows: Vec<(usize, Arc)> =
        (0..l - 1).flat_map(|i| [(i, Arc::Short), (i, Arc::ShortToMinus)]).collect();
    rows.push((l - 2, Arc::LongToMinus));
    rows.push((l - 2, Arc::Long));
    rows
}

/// Lengths produced by an index schedule over two length lists.
pub fn schedule_sums(rows: &[(usize, usize)], a: &[usize], b: &[usize]) -> Vec<usize> {
    rows.iter().map(|&(i, j)| a[i] + b[j]).collect()
}

fn close_pair(p: &PathWitness, q: &PathWitness) -> CycleWitness {
    // p runs x..y, q runs x..y on the other side.
    let mut v = p.0.clone();
    v.extend(q.0[1..q.0.len() - 1].iter().rev());
    CycleWitness(v)
}

fn require_class(lengths: &[usize], class: FamilyClass, what: &str) -> Result<()> {
    if class.holds_for(lengths) {
        Ok(())
    } else {
        Err(invalid(format!("{what}: lengths {lengths:?} are not {}", class.name())))
    }
}

/// Cycles from two families of (x, y)-paths on opposite sides of a
/// 2-separation, both with the length condition (`l + φ` and `l` members).
pub fn glue_two_sided_length(
    p: &[PathWitness],
    q: &[PathWitness],
    phi: usize,
) -> Result<Family<CycleWitness>> {
    let l = q.len();
    if l == 0 || p.len() != l + phi || phi > 1 {
        return Err(invalid(format!("expected {} and {} members", l + phi, l)));
    }
    let pl: Vec<usize> = p.iter().map(PathWitness::len).collect();
    let ql: Vec<usize> = q.iter().map(PathWitness::len).collect();
    require_class(&pl, FamilyClass::LengthCondition, "first side")?;
    require_class(&ql, FamilyClass::LengthCondition, "second side")?;
    let members = length_glue_schedule(l, phi).into_iter().map(|(i, j)| close_pair(&p[i], &q[j])).collect();
    Family::new(members, FamilyClass::LengthCondition)
}

/// Cycles from two semi-length families of `l + 1` (x, y)-paths on opposite
/// sides of a 2-separation.
pub fn glue_two_sided_semilength(p: &[PathWitness], q: &[PathWitness]) -> Result<Family<CycleWitness>> {
    if p.len() != q.len() || p.len() < 2 {
        return Err(invalid("both sides need the same number (at least 2) of members"));
    }
    let l = p.len() - 1;
    let pl: Vec<usize> = p.iter().map(PathWitness::len).collect();
    let ql: Vec<usize> = q.iter().map(PathWitness::len).collect();
    let (Some(FamilyClass::SemiLength { switch: ps }), Some(FamilyClass::SemiLength { switch: qs })) =
        (semi_switch(&pl), semi_switch(&ql))
    else {
        return Err(invalid("both sides must satisfy the semi-length condition"));
    };
    let members = semi_glue_schedule(l, ps, qs).into_iter().map(|(i, j)| close_pair(&p[i], &q[j])).collect();
    Family::new(members, FamilyClass::LengthCondition)
}

/// Semi-length class with its switch, even where the canonical class differs.
pub fn semi_switch(lengths: &[usize]) -> Option<FamilyClass> {
    (1..lengths.len()).map(|j| FamilyClass::SemiLength { switch: j }).find(|c| c.holds_for(lengths))
}

fn odd_m(c: &CycleWitness) -> Result<usize> {
    if c.len() < 3 || c.len().is_multiple_of(2) {
        return Err(invalid("fan needs an odd cycle"));
    }
    Ok((c.len() - 1) / 2)
}

/// Cycles through an odd cycle C of length 2m + 1 and paths from u to u⁺ᵐ or
/// u⁻ᵐ that avoid C otherwise. Each path closes along the short arc (m
/// edges) or the long arc (m + 1). Returns every row: `2l` cycles for
/// the length condition, `2l - 1` for a semi-length family (odd k only).
pub fn odd_cycle_fan(
    c: &CycleWitness,
    u: usize,
    paths: &[PathWitness],
    phi: usize,
) -> Result<Family<CycleWitness>> {
    let m = odd_m(c)?;
    if paths.is_empty() {
        return Err(invalid("fan needs at least one path"));
    }
    let lengths: Vec<usize> = paths.iter().map(PathWitness::len).collect();
    let rows = if FamilyClass::LengthCondition.holds_for(&lengths) {
        fan_schedule(paths.len())
    } else if let Some(FamilyClass::SemiLength { switch }) = semi_switch(&lengths) {
        if phi != 0 {
            return Err(invalid("a semi-length fan needs odd k"));
        }
        semi_fan_schedule(paths.len(), switch)
    } else {
        return Err(invalid(format!("fan paths {lengths:?} fit neither length nor semi-length")));
    };
    let plus = c.step(u, m as isize);
    let minus = c.step(u, -(m as isize));
    let mut members = Vec::with_capacity(rows.len());
    for (i, arc) in rows {
        let p = &paths[i];
        if p.start() != u || (p.end() != plus && p.end() != minus) {
            return Err(Error::InvalidWitness(format!("fan path {:?} has wrong ends", p.0)));
        }
        // Walking from the far end back to u: towards u the short way is
        // backwards from u⁺ᵐ and forwards from u⁻ᵐ.
        let short_dir = if p.end() == plus { -1 } else { 1 };
        let dir = if arc == Arc::Short { short_dir } else { -short_dir };
        let back = c.arc(p.end(), u, dir);
        if p.0[1..p.0.len() - 1].iter().any(|v| c.position(*v).is_some()) {
            return Err(Error::InvalidWitness("fan path re-enters the cycle".into()));
        }
        let mut v = p.0.clone();
        v.extend(&back[1..back.len() - 1]);
        members.push(CycleWitness(v));
    }
    Family::new(members, FamilyClass::Consecutive)
}

/// Cycles through an odd cycle C (m ≥ 2), a vertex x off C adjacent to u⁺
/// and u⁻, and `l - 1` paths from x to u⁺ᵐ with the length condition that
/// avoid C ∪ {x} otherwise. Returns all `2l` cycles.
pub fn odd_cycle_x_fan(
    c: &CycleWitness,
    u: usize,
    x: usize,
    paths: &[PathWitness],
) -> Result<Family<CycleWitness>> {
    let m = odd_m(c)?;
    if m < 2 {
        return Err(invalid("the x-fan needs a cycle of length at least 5"));
    }
    if paths.is_empty() {
        return Err(invalid("the x-fan needs at least one path"));
    }
    let lengths: Vec<usize> = paths.iter().map(PathWitness::len).collect();
    require_class(&lengths, FamilyClass::LengthCondition, "x-fan paths")?;
    let l = paths.len() + 1;
    let up = c.step(u, 1);
    let um = c.step(u, -1);
    let target = c.step(u, m as isize);
    let mut members = Vec::new();
    for (i, arc) in x_fan_schedule(l) {
        let p = &paths[i];
        if p.start() != x || p.end() != target {
            return Err(Error::InvalidWitness(format!("x-fan path {:?} has wrong ends", p.0)));
        }
        let back = match arc {
            Arc::Short => c.arc(target, up, -1),
            Arc::ShortToMinus => c.arc(target, um, 1),
            Arc::LongToMinus => c.arc(target, um, -1),
            Arc::Long => c.arc(target, up, 1),
        };
        let mut v = p.0.clone();
        v.extend(&back[1..]);
        members.push(CycleWitness(v));
    }
    Family::new(members, FamilyClass::Consecutive)
}

/// Residues of the lengths modulo k, and whether all k residues occur.
pub fn residues_mod_k(lengths: &[usize], k: usize) -> (BTreeSet<usize>, bool) {
    let set: BTreeSet<usize> = lengths.iter().map(|&l| l % k.max(1)).collect();
    let full = set.len() == k;
    (set, full)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&[3, 5, 7]), Some(FamilyClass::LengthCondition));
        assert_eq!(classify(&[2, 4, 5, 7]), Some(FamilyClass::SemiLength { switch: 2 }));
        assert_eq!(classify(&[1, 2, 3]), None);
        assert_eq!(classify(&[2, 3]), Some(FamilyClass::Consecutive));
        assert!(FamilyClass::SemiLength { switch: 1 }.holds_for(&[2, 3]));
        assert_eq!(classify(&[5]), Some(FamilyClass::LengthCondition));
        assert_eq!(classify(&[2, 3, 4, 6]), None);
    }

    fn path(v: &[usize]) -> PathWitness {
        PathWitness(v.to_vec())
    }

    #[test]
    fn combine_examples() {
        let fam = vec![path(&[10, 1, 2]), path(&[10, 3, 4, 5, 2])];
        let bridge = path(&[2, 20, 21, 22]);
        let out = combine_across_cut(&fam, &bridge, Side::Suffix).unwrap();
        assert_eq!(out.iter().map(PathWitness::len).collect::<Vec<_>>(), vec![5, 7]);
        let fam = vec![path(&[9, 1, 2]), path(&[9, 3, 4, 2]), path(&[9, 5, 6, 7, 8, 2])];
        let out = combine_across_cut(&fam, &path(&[30, 9]), Side::Prefix).unwrap();
        let lens: Vec<_> = out.iter().map(PathWitness::len).collect();
        assert_eq!(lens, vec![3, 4, 6]);
        assert_eq!(classify(&lens), Some(FamilyClass::SemiLength { switch: 1 }));
        assert!(combine_across_cut(&fam, &path(&[1, 9]), Side::Prefix).is_err());
    }

    #[test]
    fn glue_schedule_arithmetic() {
        assert_eq!(schedule_sums(&length_glue_schedule(2, 1), &[2, 4, 6], &[2, 4]), vec![4, 6, 8, 10]);
        assert_eq!(schedule_sums(&length_glue_schedule(1, 1), &[2, 4], &[2]), vec![4, 6]);
        assert_eq!(schedule_sums(&semi_glue_schedule(2, 2, 1), &[2, 4, 5], &[2, 3, 5]), vec![4, 6, 8, 10]);
        assert_eq!(schedule_sums(&semi_glue_schedule(2, 1, 1), &[2, 3, 5], &[2, 3, 5]), vec![4, 6, 8, 10]);
    }

    fn c(n: usize) -> CycleWitness {
        CycleWitness((0..n).collect())
    }

    #[test]
    fn fan_examples() {
        // u = 0 on C5; u⁺² = 2. Paths leave through fresh vertices.
        let paths = vec![path(&[0, 10, 2]), path(&[0, 11, 12, 13, 2])];
        let f = odd_cycle_fan(&c(5), 0, &paths, 1).unwrap();
        assert_eq!(f.lengths(), vec![4, 5, 6, 7]);
        let semi = vec![path(&[0, 10, 2]), path(&[0, 11, 12, 2])];
        assert_eq!(odd_cycle_fan(&c(5), 0, &semi, 0).unwrap().lengths(), vec![4, 5, 6]);
        assert!(odd_cycle_fan(&c(5), 0, &semi, 1).is_err());
        let f = odd_cycle_fan(&c(3), 0, &[path(&[0, 10, 1]), path(&[0, 11, 12, 13, 1])], 0).unwrap();
        assert_eq!(f.lengths(), vec![3, 4, 5, 6]);
    }

    #[test]
    fn x_fan_examples() {
        let f = odd_cycle_x_fan(&c(5), 0, 10, &[path(&[10, 11, 2])]).unwrap();
        assert_eq!(f.lengths(), vec![4, 5, 6, 7]);
        let f = odd_cycle_x_fan(&c(7), 0, 10, &[path(&[10, 11, 3]), path(&[10, 12, 13, 14, 3])]).unwrap();
        assert_eq!(f.lengths(), vec![5, 6, 7, 8, 9, 10]);
        assert!(odd_cycle_x_fan(&c(3), 0, 10, &[path(&[10, 11, 1])]).is_err());
    }

    #[test]
    fn residue_examples() {
        assert_eq!(residues_mod_k(&[3, 5, 7], 3), (BTreeSet::from([0, 1, 2]), true));
        assert!(residues_mod_k(&[3, 5, 7, 9, 11], 5).1);
        assert_eq!(residues_mod_k(&[3, 5, 7, 9], 4), (BTreeSet::from([1, 3]), false));
    }
}

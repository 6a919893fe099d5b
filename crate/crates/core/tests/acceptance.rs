//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Run with `cargo test --test acceptance`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use cyclemod::certificate::Certificate;
use cyclemod::cycles::{all_residues_mod_k, find_k_cycles, find_nonsep_induced_odd_cycle, Branch};
use cyclemod::enumerate::{all_graphs, three_connected_graphs, two_connected_graphs};
use cyclemod::families::{
    glue_two_sided_length, glue_two_sided_semilength, length_glue_schedule, odd_cycle_fan, odd_cycle_x_fan,
    schedule_sums, semi_glue_schedule, PathWitness,
};
use cyclemod::generate::{generate, GenSpec};
use cyclemod::oracle::{oracle_paths, PathMode};
use cyclemod::paths::find_paths;
use cyclemod::sweep::{run, Selection, SweepConfig};
use cyclemod::{CycleWitness, FamilyClass, Graph};

/// Wall-clock limit for the exhaustive cycle check.
const EXHAUSTIVE_LIMIT: Duration = Duration::from_secs(15 * 60);
/// Largest order in the exhaustive checks.
const NMAX: usize = 7;
/// Generated graphs per odd k in the residue check.
const RESIDUE_GRAPHS: usize = 200;
/// Random larger graphs in the odd-cycle check.
const ODD_SAMPLES: usize = 100;
/// Certificates emitted and re-verified.
const ROUND_TRIPS: usize = 1000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: &[String], detail: String) -> Outcome {
    let mut detail = detail;
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; {} failures, first: {first}", failures.len()));
    }
    Outcome { pass: failures.is_empty(), detail }
}

fn criterion_cycles_exhaustive() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 3..=NMAX {
        for g in two_connected_graphs(n) {
            let a = matrix(&g);
            if !two_connected(&a) {
                failures
                    .push(format!("enumeration returned a graph that is not 2-connected: {:?}", g.edges()));
                continue;
            }
            let delta = (0..n).map(|v| degree(&a, v)).min().unwrap();
            for k in 1..delta {
                checked += 1;
                let ext = match find_k_cycles(&g, k) {
                    Ok(e) => e,
                    Err(e) => {
                        failures.push(format!("k={k} {:?}: {e}", g.edges()));
                        continue;
                    }
                };
                let lens: Option<Vec<usize>> =
                    ext.family.members.iter().map(|c| cycle_len(&a, &c.0)).collect();
                let ok = match lens {
                    Some(l) => {
                        l.len() == k
                            && match ext.family.class {
                                FamilyClass::Consecutive => is_consecutive(&l),
                                FamilyClass::LengthCondition => is_length_condition(&l),
                                FamilyClass::SemiLength { .. } => false,
                            }
                    }
                    None => false,
                };
                if !ok {
                    failures.push(format!("k={k} {:?}: bad family {:?}", g.edges(), ext.family.members));
                }
            }
        }
    }
    let took = start.elapsed();
    if took > EXHAUSTIVE_LIMIT {
        failures.push(format!("took {took:?}"));
    }
    outcome(
        &failures,
        format!("{checked} instances on 2-connected graphs with n <= {NMAX} in {:.1}s", took.as_secs_f64()),
    )
}

fn criterion_paths_exhaustive() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = [0usize; 2];
    for n in 3..=NMAX {
        for g in all_graphs(n) {
            let a = matrix(&g);
            for x in 0..n {
                for y in 0..n {
                    if x == y || !rooted_two_connected(&a, x, y) {
                        continue;
                    }
                    let d = (0..n)
                        .filter(|&v| v != x && v != y)
                        .map(|v| degree(&a, v))
                        .min()
                        .unwrap_or(usize::MAX);
                    for (mi, mode) in [PathMode::Length, PathMode::LengthOrSemi].into_iter().enumerate() {
                        let need = |k: usize| {
                            if mode == PathMode::Length {
                                2 * k
                            } else {
                                2 * k - 1
                            }
                        };
                        let mut k = 1;
                        while need(k) <= d && k <= n {
                            checked[mi] += 1;
                            match find_paths(&g, x, y, k, mode) {
                                Ok(ext) => {
                                    let lens: Option<Vec<usize>> =
                                        ext.family.members.iter().map(|p| path_len(&a, &p.0, x, y)).collect();
                                    let ok = lens.is_some_and(|l| {
                                        l.len() == k
                                            && match (mode, ext.family.class) {
                                                (_, FamilyClass::LengthCondition) => is_length_condition(&l),
                                                (PathMode::LengthOrSemi, FamilyClass::SemiLength { .. }) => {
                                                    is_semi_length(&l)
                                                }
                                                _ => false,
                                            }
                                    });
                                    if !ok {
                                        failures.push(format!("{mode:?} k={k} x={x} y={y} {:?}", g.edges()));
                                    }
                                }
                                Err(e) => {
                                    failures.push(format!("{mode:?} k={k} x={x} y={y} {:?}: {e}", g.edges()))
                                }
                            }
                            k += 1;
                        }
                    }
                }
            }
        }
    }
    outcome(&failures, format!("{} length and {} flex instances, n <= {NMAX}", checked[0], checked[1]))
}

fn criterion_sharpness() -> Outcome {
    let mut failures = Vec::new();
    for k in [2usize, 3] {
        let even = Graph::complete(2 * k);
        let odd = Graph::complete(2 * k - 1);
        for x in 0..2 * k {
            for y in 0..2 * k {
                if x == y {
                    continue;
                }
                match oracle_paths(&even, x, y, k, PathMode::Length) {
                    Ok(None) => {}
                    other => failures.push(format!("K{}: length family {x}-{y}: {other:?}", 2 * k)),
                }
                match oracle_paths(&even, x, y, k, PathMode::LengthOrSemi) {
                    Ok(Some(f)) => {
                        let a = matrix(&even);
                        let l: Option<Vec<usize>> =
                            f.members.iter().map(|p| path_len(&a, &p.0, x, y)).collect();
                        if !l.is_some_and(|l| l.len() == k && is_semi_length(&l)) {
                            failures.push(format!("K{}: bad semi family {x}-{y}", 2 * k));
                        }
                    }
                    other => failures.push(format!("K{}: semi family {x}-{y}: {other:?}", 2 * k)),
                }
                if x < 2 * k - 1 && y < 2 * k - 1 {
                    match oracle_paths(&odd, x, y, k, PathMode::LengthOrSemi) {
                        Ok(None) => {}
                        other => failures.push(format!("K{}: flex family {x}-{y}: {other:?}", 2 * k - 1)),
                    }
                }
            }
        }
    }
    outcome(&failures, "K4, K6 have no length family but a semi-length one; K3, K5 have neither".into())
}

fn residue_specs(k: usize) -> Vec<GenSpec> {
    let mut specs = Vec::new();
    let mut seed = 1000 * k as u64;
    while specs.len() < RESIDUE_GRAPHS {
        let i = specs.len();
        let d = k + 1 + i % 2;
        let (conn, bipartite) = [(2, false), (3, false), (3, true), (2, true)][i % 4];
        // Smallest orders that admit the spec, plus a little slack.
        let n = match (conn, bipartite) {
            (2, false) => 2 * d + i % 4,
            (2, true) => 4 * d - 2 + i % 3,
            (_, false) => d + 2 + i % 6,
            (_, true) => 2 * d + 2 + i % 3,
        };
        specs.push(GenSpec { n, min_degree: d, conn, bipartite, seed });
        seed += 1;
    }
    specs
}

fn criterion_residues() -> Outcome {
    let mut failures = Vec::new();
    let mut branches: BTreeMap<(usize, Branch), usize> = BTreeMap::new();
    let mut gaps = 0;
    let mut graphs = 0;
    for k in [3usize, 5] {
        for spec in residue_specs(k) {
            let g = match generate(&spec) {
                Ok(g) => g,
                Err(e) => {
                    failures.push(format!("gen {spec:?}: {e}"));
                    continue;
                }
            };
            let a = matrix(&g);
            if !two_connected(&a) || (0..g.n()).any(|v| degree(&a, v) < k + 1) {
                failures.push(format!("generated graph misses the hypothesis {spec:?}"));
                continue;
            }
            graphs += 1;
            match all_residues_mod_k(&g, k) {
                Ok((map, ext)) => {
                    gaps += usize::from(ext.trace.constructive_gap);
                    *branches.entry((k, ext.branch)).or_default() += 1;
                    let keys: BTreeSet<usize> = map.keys().copied().collect();
                    let ok = keys == (0..k).collect()
                        && map.iter().all(|(&r, c)| cycle_len(&a, &c.0).is_some_and(|len| len % k == r));
                    if !ok {
                        failures.push(format!("k={k} {spec:?}: residues {keys:?}"));
                    }
                }
                Err(e) => failures.push(format!("k={k} {spec:?}: {e}")),
            }
        }
        for b in [Branch::I, Branch::II, Branch::III] {
            if !branches.contains_key(&(k, b)) {
                failures.push(format!("k={k}: branch {} never exercised", b.tag()));
            }
        }
    }
    let mix: Vec<String> = branches.iter().map(|((k, b), c)| format!("k{k}/{}:{c}", b.tag())).collect();
    outcome(
        &failures,
        format!("{graphs} generated graphs, branches {}, {gaps} answered by the fallback", mix.join(" ")),
    )
}

/// Blow-up of C_len with `t` vertices per class and random edge deletions.
fn sparse_odd_sample(rng: &mut ChaCha8Rng) -> Graph {
    let len = [5usize, 7, 9][rng.gen_range(0..3)];
    let t = rng.gen_range(2..=4usize);
    let mut e = Vec::new();
    for i in 0..len {
        for a in 0..t {
            for b in 0..t {
                if rng.gen_bool(0.85) {
                    e.push((i * t + a, ((i + 1) % len) * t + b));
                }
            }
        }
    }
    Graph::from_edges(len * t, &e).unwrap()
}

fn criterion_odd_cycle() -> Outcome {
    let mut failures = Vec::new();
    let mut exhaustive = 0;
    for n in 4..=NMAX {
        for g in three_connected_graphs(n) {
            let a = matrix(&g);
            if bipartite(&a) {
                continue;
            }
            exhaustive += 1;
            check_odd(&g, &a, &mut failures);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut samples = 0;
    let mut seed = 0;
    while samples < ODD_SAMPLES {
        seed += 1;
        let g = if samples % 2 == 0 {
            let spec = GenSpec {
                n: rng.gen_range(8..=16),
                min_degree: rng.gen_range(3..=6),
                conn: 3,
                bipartite: false,
                seed,
            };
            match generate(&spec) {
                Ok(g) => g,
                Err(_) => continue,
            }
        } else {
            sparse_odd_sample(&mut rng)
        };
        let a = matrix(&g);
        if bipartite(&a) || !t_connected(&a, 3) {
            continue;
        }
        samples += 1;
        check_odd(&g, &a, &mut failures);
    }
    outcome(
        &failures,
        format!("{exhaustive} 3-connected non-bipartite graphs with n <= {NMAX}, {samples} larger samples"),
    )
}

fn check_odd(g: &Graph, a: &[Vec<bool>], failures: &mut Vec<String>) {
    match find_nonsep_induced_odd_cycle(g) {
        Some(w) => {
            if let Err(e) = good_odd_cycle(a, &w.cycle.0) {
                failures.push(format!("{:?}: {e}", g.edges()));
            }
        }
        None => failures.push(format!("{:?}: none found", g.edges())),
    }
}

/// A path from `from` to `to` of `len` edges through fresh vertices.
fn fresh_path(from: usize, to: usize, len: usize, next: &mut usize) -> PathWitness {
    let mut v = vec![from];
    for _ in 1..len {
        v.push(*next);
        *next += 1;
    }
    v.push(to);
    PathWitness(v)
}

fn lengths_with_switch(start: usize, count: usize, switch: Option<usize>) -> Vec<usize> {
    let mut out = vec![start];
    for j in 1..count {
        out.push(out[j - 1] + if Some(j) == switch { 1 } else { 2 });
    }
    out
}

fn shape(name: &str, got: Vec<usize>, want_count: usize, consecutive: bool) -> Option<String> {
    let shape_ok = if consecutive { is_consecutive(&got) } else { is_length_condition(&got) };
    (got.len() != want_count || !shape_ok).then(|| {
        format!(
            "{name}: {got:?}, expected {want_count} {}",
            if consecutive { "consecutive" } else { "length" }
        )
    })
}

fn criterion_schedules() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for l in 1..=5usize {
        for phi in 0..=1usize {
            // Two-sided gluing, both sides with the length condition.
            let mut next = 100;
            let p: Vec<PathWitness> = lengths_with_switch(2, l + phi, None)
                .iter()
                .map(|&n| fresh_path(0, 1, n, &mut next))
                .collect();
            let q: Vec<PathWitness> =
                lengths_with_switch(3, l, None).iter().map(|&n| fresh_path(0, 1, n, &mut next)).collect();
            let rows = length_glue_schedule(l, phi);
            let sums = schedule_sums(
                &rows,
                &lengths_with_switch(2, l + phi, None),
                &lengths_with_switch(3, l, None),
            );
            cases += 1;
            failures.extend(shape(
                &format!("length glue l={l} phi={phi} rows"),
                sums,
                l + (l + phi - 1),
                false,
            ));
            match glue_two_sided_length(&p, &q, phi) {
                Ok(f) => {
                    cases += 1;
                    failures.extend(shape(
                        &format!("length glue l={l} phi={phi} glue"),
                        f.lengths(),
                        l + (l + phi - 1),
                        false,
                    ))
                }
                Err(e) => failures.push(format!("length glue l={l} phi={phi}: {e}")),
            }

            // Fan around an odd cycle from paths with the length condition.
            for m in 1..=3usize {
                let c = CycleWitness((0..2 * m + 1).collect());
                let mut next = 100;
                let paths: Vec<PathWitness> = lengths_with_switch(m.max(2), l, None)
                    .iter()
                    .map(|&n| fresh_path(0, m, n, &mut next))
                    .collect();
                match odd_cycle_fan(&c, 0, &paths, phi) {
                    Ok(f) => {
                        cases += 1;
                        failures.extend(shape(
                            &format!("fan l={l} m={m} phi={phi}"),
                            f.lengths(),
                            2 * l,
                            true,
                        ))
                    }
                    Err(e) => failures.push(format!("fan l={l} m={m}: {e}")),
                }
            }

            // The outside-vertex fan needs l - 1 >= 1 paths and m >= 2.
            if l >= 2 {
                for m in 2..=3usize {
                    let c = CycleWitness((0..2 * m + 1).collect());
                    let mut next = 100;
                    let x = 99;
                    let paths: Vec<PathWitness> = lengths_with_switch(2, l - 1, None)
                        .iter()
                        .map(|&n| fresh_path(x, m, n, &mut next))
                        .collect();
                    match odd_cycle_x_fan(&c, 0, x, &paths) {
                        Ok(f) => {
                            cases += 1;
                            failures.extend(shape(&format!("x-fan l={l} m={m}"), f.lengths(), 2 * l, true))
                        }
                        Err(e) => failures.push(format!("x-fan l={l} m={m}: {e}")),
                    }
                }
            }
        }

        // Two semi-length sides of l + 1 paths, every pair of switches.
        for sp in 1..=l {
            for sq in 1..=l {
                let pl = lengths_with_switch(2, l + 1, Some(sp));
                let ql = lengths_with_switch(3, l + 1, Some(sq));
                let sums = schedule_sums(&semi_glue_schedule(l, sp, sq), &pl, &ql);
                cases += 1;
                failures.extend(shape(&format!("semi glue l={l} p={sp} q={sq} rows"), sums, 2 * l, false));
                let mut next = 100;
                let p: Vec<PathWitness> = pl.iter().map(|&n| fresh_path(0, 1, n, &mut next)).collect();
                let q: Vec<PathWitness> = ql.iter().map(|&n| fresh_path(0, 1, n, &mut next)).collect();
                match glue_two_sided_semilength(&p, &q) {
                    Ok(f) => {
                        cases += 1;
                        failures.extend(shape(
                            &format!("semi glue l={l} p={sp} q={sq} glue"),
                            f.lengths(),
                            2 * l,
                            false,
                        ))
                    }
                    Err(e) => failures.push(format!("semi glue l={l} p={sp} q={sq}: {e}")),
                }
            }
        }

        // Fan from semi-length paths, every switch.
        for j in 1..l {
            for m in 1..=3usize {
                let c = CycleWitness((0..2 * m + 1).collect());
                let mut next = 100;
                let paths: Vec<PathWitness> = lengths_with_switch(m.max(2), l, Some(j))
                    .iter()
                    .map(|&n| fresh_path(0, m, n, &mut next))
                    .collect();
                match odd_cycle_fan(&c, 0, &paths, 0) {
                    Ok(f) => {
                        cases += 1;
                        failures.extend(shape(
                            &format!("semi fan l={l} j={j} m={m}"),
                            f.lengths(),
                            2 * l - 1,
                            true,
                        ))
                    }
                    Err(e) => failures.push(format!("semi fan l={l} j={j} m={m}: {e}")),
                }
            }
        }
    }
    outcome(&failures, format!("{cases} schedule cases over l <= 5, phi in {{0, 1}}, every switch"))
}

fn random_certificate(rng: &mut ChaCha8Rng, i: usize) -> Option<Certificate> {
    let n = rng.gen_range(5..=10);
    let p = rng.gen_range(0.4..0.95);
    let mut e = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                e.push((a, b));
            }
        }
    }
    let g = Graph::from_edges(n, &e).ok()?;
    if i.is_multiple_of(2) {
        let d = g.min_degree();
        if d < 2 || !cyclemod::decomposition::is_two_connected(&g) {
            return None;
        }
        let k = rng.gen_range(1..d);
        let with_residues = k % 2 == 1 && rng.gen_bool(0.5);
        let ext =
            if with_residues { all_residues_mod_k(&g, k).ok()?.1 } else { find_k_cycles(&g, k).ok()? };
        Some(Certificate::for_cycles(&g, k, &ext, with_residues))
    } else {
        let x = rng.gen_range(0..n);
        let y = (x + rng.gen_range(1..n)) % n;
        let mode = if rng.gen_bool(0.5) { PathMode::Length } else { PathMode::LengthOrSemi };
        let d = g.rooted_min_degree(x, y);
        let kmax = if mode == PathMode::Length { d / 2 } else { d.div_ceil(2) };
        if kmax == 0 {
            return None;
        }
        let k = rng.gen_range(1..=kmax);
        let ext = find_paths(&g, x, y, k, mode).ok()?;
        Some(Certificate::for_paths(&g, x, y, k, mode, &ext))
    }
}

/// Every top-level field of the JSON form, each changed in isolation.
fn mutations(cert: &Certificate) -> Vec<(String, serde_json::Value)> {
    let base: serde_json::Value = serde_json::from_str(&cert.to_json()).unwrap();
    let obj = base.as_object().unwrap();
    let mut out = Vec::new();
    for (field, value) in obj {
        let changed = match value {
            serde_json::Value::String(s) => serde_json::Value::String(format!("{s}x")),
            serde_json::Value::Number(n) => serde_json::json!(n.as_u64().unwrap() + 1),
            serde_json::Value::Bool(b) => serde_json::Value::Bool(!b),
            serde_json::Value::Null => serde_json::json!([0, 1]),
            serde_json::Value::Array(a) if field == "family" => {
                let mut a = a.clone();
                let first = a[0].as_array_mut().unwrap();
                let last = first.len() - 1;
                first.swap(0, last);
                if first.len() == 2 || last == 0 {
                    first.push(serde_json::json!(0));
                }
                serde_json::Value::Array(a)
            }
            serde_json::Value::Array(a) => {
                let mut a = a.clone();
                a.reverse();
                a.push(serde_json::json!(0));
                serde_json::Value::Array(a)
            }
            serde_json::Value::Object(o) if field == "graph" => {
                let mut o = o.clone();
                o["edges"].as_array_mut().unwrap().pop();
                serde_json::Value::Object(o)
            }
            serde_json::Value::Object(o) if field == "class" => {
                let kind = if o["kind"] == "consecutive" { "length_condition" } else { "consecutive" };
                serde_json::json!({ "kind": kind })
            }
            serde_json::Value::Object(o) => {
                let mut o = o.clone();
                let first = o.keys().next().cloned();
                match first {
                    Some(key) => {
                        o.remove(&key);
                    }
                    None => {
                        o.insert("0".into(), serde_json::json!(0));
                    }
                }
                serde_json::Value::Object(o)
            }
        };
        let mut v = base.clone();
        v[field.as_str()] = changed;
        out.push((field.clone(), v));
    }
    out
}

fn criterion_certificates() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (mut made, mut mutated, mut i) = (0, 0, 0);
    while made < ROUND_TRIPS {
        i += 1;
        let Some(cert) = random_certificate(&mut rng, i) else {
            continue;
        };
        made += 1;
        let back = match Certificate::from_json(&cert.to_json()) {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("parse: {e}"));
                continue;
            }
        };
        if back != cert || back.to_json() != cert.to_json() {
            failures.push("round trip changed the certificate".into());
        }
        if let Err(f) = back.verify() {
            failures.push(format!("verify: {f}"));
        }
        for (field, v) in mutations(&cert) {
            mutated += 1;
            // A mutation that no longer parses is rejected too.
            if let Ok(c) = serde_json::from_value::<Certificate>(v) {
                if c.verify().is_ok() {
                    failures.push(format!("mutation of {field} not detected"));
                }
            }
        }
    }
    outcome(&failures, format!("{made} round trips, {mutated} single-field mutations"))
}

fn criterion_sweep_gaps() -> Outcome {
    let report = run(&SweepConfig::new(NMAX, NMAX, Selection::Exhaustive));
    let t = report.totals();
    let mut failures: Vec<String> = report.failures.clone();
    if t.gap > 0 || t.fail > 0 || t.budget > 0 {
        failures.push(format!("{} gaps, {} failures, {} over budget", t.gap, t.fail, t.budget));
    }
    outcome(&failures, format!("{} sweep instances with n <= {NMAX}, {} gaps", t.total(), t.gap))
}

fn main() {
    // libtest-style flags are accepted and ignored.
    let criteria: [Criterion; 8] = [
        ("k cycles, exhaustive", criterion_cycles_exhaustive),
        ("path families, exhaustive", criterion_paths_exhaustive),
        ("degree sharpness", criterion_sharpness),
        ("all residues for odd k", criterion_residues),
        ("non-separating induced odd cycle", criterion_odd_cycle),
        ("combinator schedules", criterion_schedules),
        ("certificate round trip", criterion_certificates),
        ("sweep gap rate", criterion_sweep_gaps),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} [{}] {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

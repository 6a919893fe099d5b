mod common;

use common::*;
use cyclemod::certificate::Certificate;
use cyclemod::cycles::{all_residues_mod_k, find_k_cycles, ParityFlag};
use cyclemod::decomposition::{is_rooted_2_connected, is_two_connected, vertex_connectivity_at_least};
use cyclemod::enumerate::canonical_code;
use cyclemod::families::{length_glue_schedule, schedule_sums, semi_glue_schedule, semi_switch};
use cyclemod::generate::{generate, GenSpec};
use cyclemod::graph::is_bipartite;
use cyclemod::oracle::PathMode;
use cyclemod::paths::find_paths;
use cyclemod::{classify, FamilyClass, Graph};
use proptest::prelude::*;

/// A graph on `lo..=hi` vertices with each edge present with probability
/// roughly `dense`.
fn graph(lo: usize, hi: usize, dense: f64) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(dense), n * (n - 1) / 2).prop_map(move |bits| {
            let mut e = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        e.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &e).unwrap()
        })
    })
}

fn lengths_of(start: usize, count: usize, switch: Option<usize>) -> Vec<usize> {
    let mut out = vec![start];
    for j in 1..count {
        out.push(out[j - 1] + if Some(j) == switch { 1 } else { 2 });
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(g in graph(1, 10, 0.4)) {
        let back = Graph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.n(), g.n());
    }

    #[test]
    fn canonical_code_ignores_labels(g in graph(1, 8, 0.5), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let e: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let h = Graph::from_edges(g.n(), &e).unwrap();
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
    }

    #[test]
    fn connectivity_matches_brute_force(g in graph(2, 9, 0.5)) {
        let a = matrix(&g);
        prop_assert_eq!(is_two_connected(&g), two_connected(&a));
        match vertex_connectivity_at_least(&g, 3) {
            Ok(three) => prop_assert_eq!(three, t_connected(&a, 3)),
            Err(_) => prop_assert!(g.n() < 4),
        }
        prop_assert_eq!(is_bipartite(&g).is_some(), bipartite(&a));
        prop_assert_eq!(is_rooted_2_connected(&g, 0, 1).unwrap(), rooted_two_connected(&a, 0, 1));
    }

    #[test]
    fn classify_is_consistent(lengths in proptest::collection::vec(1usize..20, 1..7)) {
        if let Some(c) = classify(&lengths) {
            prop_assert!(c.holds_for(&lengths));
        }
        let d: Vec<isize> = lengths.windows(2).map(|w| w[1] as isize - w[0] as isize).collect();
        if lengths[0] >= 2 && d.iter().all(|&x| x == 2) {
            prop_assert_eq!(classify(&lengths), Some(FamilyClass::LengthCondition));
        }
    }

    #[test]
    fn classify_recovers_switch(start in 2usize..10, count in 2usize..8, j in 1usize..8) {
        prop_assume!(j < count);
        let l = lengths_of(start, count, Some(j));
        let want = if count == 2 { FamilyClass::Consecutive } else { FamilyClass::SemiLength { switch: j } };
        prop_assert_eq!(classify(&l), Some(want));
        prop_assert_eq!(semi_switch(&l), Some(FamilyClass::SemiLength { switch: j }));
    }

    #[test]
    fn parity_decomposes_k(k in 1usize..200) {
        let p = ParityFlag::of(k);
        prop_assert!(p.phi <= 1);
        prop_assert_eq!(2 * p.l + p.phi, k + 1);
        prop_assert_eq!(p.phi == 1, k % 2 == 0);
    }

    #[test]
    fn length_gluing_keeps_the_condition(l in 1usize..8, phi in 0usize..2, a0 in 2usize..9, b0 in 2usize..9) {
        let sums = schedule_sums(&length_glue_schedule(l, phi), &lengths_of(a0, l + phi, None), &lengths_of(b0, l, None));
        prop_assert_eq!(sums.len(), 2 * l - 1 + phi);
        prop_assert!(is_length_condition(&sums));
    }

    #[test]
    fn semi_gluing_gives_the_condition(l in 1usize..8, p in 1usize..8, q in 1usize..8, a0 in 2usize..9, b0 in 2usize..9) {
        prop_assume!(p <= l && q <= l);
        let sums = schedule_sums(&semi_glue_schedule(l, p, q), &lengths_of(a0, l + 1, Some(p)), &lengths_of(b0, l + 1, Some(q)));
        prop_assert_eq!(sums.len(), 2 * l);
        prop_assert!(is_length_condition(&sums));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn path_families_are_sound(g in graph(4, 9, 0.75), x in 0usize..9, dy in 1usize..9, k in 1usize..4, flex in any::<bool>()) {
        let n = g.n();
        let (x, y) = (x % n, (x + dy) % n);
        prop_assume!(x != y);
        let mode = if flex { PathMode::LengthOrSemi } else { PathMode::Length };
        let a = matrix(&g);
        let need = if flex { 2 * k - 1 } else { 2 * k };
        let d = (0..n).filter(|&v| v != x && v != y).map(|v| degree(&a, v)).min().unwrap();
        let meets = rooted_two_connected(&a, x, y) && d >= need;
        match find_paths(&g, x, y, k, mode) {
            Ok(ext) => {
                prop_assert!(meets);
                prop_assert!(!ext.trace.constructive_gap);
                let l: Vec<usize> = ext.family.members.iter().map(|p| path_len(&a, &p.0, x, y).unwrap()).collect();
                prop_assert_eq!(l.len(), k);
                prop_assert!(is_length_condition(&l) || (flex && is_semi_length(&l)));
                prop_assert!(Certificate::for_paths(&g, x, y, k, mode, &ext).verify().is_ok());
            }
            Err(_) => prop_assert!(!meets),
        }
    }

    #[test]
    fn cycle_families_are_sound(g in graph(4, 9, 0.7), k in 1usize..7) {
        let a = matrix(&g);
        let delta = g.min_degree();
        let meets = two_connected(&a) && delta > k;
        match find_k_cycles(&g, k) {
            Ok(ext) => {
                prop_assert!(meets);
                prop_assert!(!ext.trace.constructive_gap);
                let l: Vec<usize> = ext.family.members.iter().map(|c| cycle_len(&a, &c.0).unwrap()).collect();
                prop_assert_eq!(l.len(), k);
                prop_assert!(is_consecutive(&l) || is_length_condition(&l));
                let cert = Certificate::for_cycles(&g, k, &ext, false);
                prop_assert!(cert.verify().is_ok());
                prop_assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
            }
            Err(_) => prop_assert!(!meets),
        }
    }

    #[test]
    fn odd_k_covers_every_residue(g in graph(4, 9, 0.8), k in prop::sample::select(vec![1usize, 3, 5])) {
        prop_assume!(is_two_connected(&g) && g.min_degree() > k);
        let a = matrix(&g);
        let (map, ext) = all_residues_mod_k(&g, k).unwrap();
        prop_assert_eq!(map.len(), k);
        for (r, c) in &map {
            prop_assert_eq!(cycle_len(&a, &c.0).unwrap() % k, *r);
        }
        let cert = Certificate::for_cycles(&g, k, &ext, true);
        prop_assert!(cert.verify().is_ok());
    }

    #[test]
    fn certificates_are_deterministic(g in graph(4, 8, 0.8), k in 1usize..4) {
        prop_assume!(is_two_connected(&g) && g.min_degree() > k);
        let a = Certificate::for_cycles(&g, k, &find_k_cycles(&g, k).unwrap(), false).to_json();
        let b = Certificate::for_cycles(&g, k, &find_k_cycles(&g, k).unwrap(), false).to_json();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn generated_graphs_meet_their_spec(n in 6usize..16, d in 2usize..6, conn in 2usize..4, bip in any::<bool>(), seed in any::<u64>()) {
        let spec = GenSpec { n, min_degree: d, conn, bipartite: bip, seed };
        if let Ok(g) = generate(&spec) {
            let a = matrix(&g);
            prop_assert_eq!(g.n(), n);
            prop_assert!(g.min_degree() >= d);
            prop_assert!(!bip || bipartite(&a));
            prop_assert!(two_connected(&a));
            prop_assert_eq!(t_connected(&a, 3), conn == 3);
            prop_assert_eq!(generate(&spec).unwrap().to_text(), g.to_text());
        }
    }
}

use wsat_core::graph::gnp;
use wsat_core::percolation::{is_weakly_saturated, verify_trace};
use wsat_core::transference::{
    build_partition, check_properties, compute_uv, is_h_completable, run_restoration, CliqueFamily, HCopy,
    StarFamily, TransferError,
};
use wsat_core::{BitSet, Graph, Mode, Pattern, Seed};

#[test]
fn completability_of_small_cliques() {
    let k3 = Pattern::clique(3).unwrap();
    let g = Graph::complete(4);
    let z = HCopy { map: vec![2] };
    assert!(is_h_completable(&g, 0, Some(1), &z, None, &k3).unwrap().is_some());
    let mut cut = g.clone();
    cut.remove_edge(1, 2);
    assert!(is_h_completable(&cut, 0, Some(1), &z, None, &k3).unwrap().is_none());

    // K_4: completable iff the four vertices span K_4.
    let k4 = Pattern::clique(4).unwrap();
    let copy = HCopy { map: vec![2, 3] };
    for missing in Graph::complete(4).edges() {
        let mut h = Graph::complete(4);
        h.remove_edge(missing.0, missing.1);
        let ok = h.has_edge(2, 3) && is_h_completable(&h, 0, Some(1), &copy, None, &k4).unwrap().is_some();
        assert!(!ok, "{missing:?}");
    }
    assert!(is_h_completable(&Graph::complete(4), 0, Some(1), &copy, None, &k4).unwrap().is_some());
    assert!(matches!(
        is_h_completable(&Graph::complete(4), 2, Some(1), &copy, None, &k4),
        Err(TransferError::InvalidCopy)
    ));
}

#[test]
fn uv_agrees_with_completability() {
    for (seed, pattern) in [(1, Pattern::clique(3)), (2, Pattern::clique(4)), (3, Pattern::star(3))] {
        let pattern = pattern.unwrap();
        let g = gnp(40, 0.6, Seed(seed)).unwrap();
        let hp = pattern.h_prime().n();
        let z2 = BitSet::from_iter(40, 20..40);
        let mut checked = 0;
        for v in 0..10 {
            // First copy of H' among 10..20 adjacent to v where required.
            let candidates: Vec<usize> = (10..20).collect();
            let Some(map) = wsat_core::embed::find_embedding(
                &g,
                pattern.h_prime(),
                &wsat_core::embed::EmbedQuery::new().within(BitSet::from_iter(40, candidates)),
            ) else {
                continue;
            };
            assert_eq!(map.len(), hp);
            let copy = HCopy { map };
            let others = pattern.w1_other_neighbors();
            let v_v: Vec<usize> = pattern
                .prime_to_h()
                .iter()
                .zip(&copy.map)
                .filter(|(h, _)| others.contains(h))
                .map(|(_, &x)| x)
                .collect();
            let uv = compute_uv(&g, v, &copy, &v_v, &pattern, &z2).unwrap();
            for u in 20..40 {
                let direct = g.has_edge(u, v) && is_h_completable(&g, v, Some(u), &copy, Some(&v_v), &pattern).unwrap().is_some();
                assert_eq!(uv.contains(u), direct, "v={v} u={u}");
            }
            checked += 1;
        }
        assert!(checked > 0);
    }
}

#[test]
fn partitions_of_complete_and_empty_hosts() {
    let g = Graph::complete(200);
    let k3 = Pattern::clique(3).unwrap();
    let p = build_partition(&g, &k3, &CliqueFamily { s: 3 }).unwrap();
    assert_eq!(p.z, p.g2);
    assert!(is_h_completable(&g, p.outside[0], None, &p.attachments[0].copy, Some(&p.attachments[0].v_v), &k3)
        .unwrap()
        .is_some());
    assert!(matches!(
        build_partition(&Graph::new(200), &k3, &CliqueFamily { s: 3 }),
        Err(TransferError::CliqueTooSmall { .. })
    ));
    assert!(matches!(
        build_partition(&Graph::complete(201), &k3, &CliqueFamily { s: 3 }),
        Err(TransferError::OddOrder(201))
    ));
}

#[test]
fn partition_invariants_on_a_random_host() {
    let g = gnp(200, 0.5, Seed(5)).unwrap();
    let k3 = Pattern::clique(3).unwrap();
    let p = build_partition(&g, &k3, &CliqueFamily { s: 3 }).unwrap();
    assert!(wsat_core::embed::is_clique(&g, &p.k));
    assert!(p.k.len() >= (200f64).ln().ceil() as usize);
    assert!(p.d.iter().all(|v| p.s.contains(v)) && p.s.iter().all(|v| p.k.contains(v)));
    assert_eq!(p.d.len(), k3.d());
    assert_eq!(p.r.len(), k3.r());
    assert!(p.r.iter().all(|v| !p.s.contains(v)));
    for &z in &p.z {
        assert!(p.g2.contains(&z) && p.d.iter().all(|&d| g.has_edge(z, d)));
    }
    for &t in &p.t {
        assert!(p.z.contains(&t) && p.r.iter().all(|&r| g.has_edge(t, r)));
    }
    let mut zs = [p.z1.clone(), p.z2.clone(), p.z3.clone()].concat();
    zs.sort_unstable();
    assert_eq!(zs, p.z);
    let mut vs = [p.v1.clone(), p.v2.clone(), p.v3.clone()].concat();
    vs.sort_unstable();
    assert_eq!(vs, p.g2);
    // |Z| ~ Bin(100, 1/2).
    assert!((p.z.len() as f64 - 50.0).abs() <= 4.0 * 5.0, "|Z| = {}", p.z.len());
}

#[test]
fn restoration_on_a_random_host_with_triangles() {
    let g = gnp(200, 0.5, Seed(5)).unwrap();
    let k3 = Pattern::clique(3).unwrap();
    let fam = CliqueFamily { s: 3 };
    let p = build_partition(&g, &k3, &fam).unwrap();
    let r = run_restoration(&g, &p, &k3, &fam).unwrap();
    assert_eq!(r.f.edge_count(), 199);
    assert!(r.report.identity_holds && r.report.equals_family);
    verify_trace(&g, &k3, &r.trace, Mode::Free).unwrap();
    assert_eq!(r.trace.final_graph(), g);
    assert!(is_weakly_saturated(&g, &r.f, &k3, Mode::Free).unwrap());
}

#[test]
fn restoration_on_a_random_host_with_stars() {
    let g = gnp(300, 0.5, Seed(12)).unwrap();
    let star = Pattern::star(3).unwrap();
    let fam = StarFamily { t: 3 };
    let p = build_partition(&g, &star, &fam).unwrap();
    let r = run_restoration(&g, &p, &star, &fam).unwrap();
    assert_eq!(r.f.edge_count(), 3);
    verify_trace(&g, &star, &r.trace, Mode::Free).unwrap();
    assert_eq!(r.trace.final_graph(), g);
}

/// Outcome on a larger sample is printed, not asserted.
#[test]
fn property_report_on_a_larger_host() {
    let g = gnp(300, 0.5, Seed(9)).unwrap();
    let k3 = Pattern::clique(3).unwrap();
    let p = build_partition(&g, &k3, &CliqueFamily { s: 3 }).unwrap();
    let report = check_properties(&g, &p, &k3).unwrap();
    assert_eq!(report.conditions.len(), 9);
    for c in &report.conditions {
        assert!(c.violations <= c.instances);
        assert_eq!(c.passed, c.violations == 0);
        println!("{}: {} ({} / {})", c.name, c.passed, c.violations, c.instances);
    }
    assert!(report.condition("first.1").unwrap().passed);
}

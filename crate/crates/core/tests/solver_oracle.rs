use wsat_core::percolation::{closure_graph, is_weakly_saturated, verify_trace};
use wsat_core::solver::{
    construct_witness, predict, wsat_exact, Budget, Family, HostDescriptor, Optimality,
    PatternDescriptor,
};
use wsat_core::{Graph, Mode, Pattern};

fn exact(host: &Graph, h: &Pattern, mode: Mode) -> usize {
    let cert = wsat_exact(host, h, mode, Budget::unlimited()).unwrap();
    assert_eq!(cert.optimality, Optimality::Exhaustive);
    assert_eq!(cert.witness.edge_count(), cert.value);
    verify_trace(host, h, &cert.trace, mode).unwrap();
    assert_eq!(cert.trace.final_graph(), *host);
    cert.value
}

fn predicted(host: HostDescriptor, h: PatternDescriptor, bisat: bool) -> (u64, u64) {
    let p = predict(host, h, bisat).unwrap_or_else(|| panic!("no prediction for {host:?} {h:?}"));
    assert!(p.lower <= p.upper);
    (p.lower, p.upper)
}

#[test]
fn cliques_and_stars_on_complete_hosts() {
    for n in 2..=6 {
        for s in 2..=n {
            let v = exact(&Graph::complete(n), &Pattern::clique(s).unwrap(), Mode::Free) as u64;
            assert_eq!(predicted(HostDescriptor::Kn(n), PatternDescriptor::Ks(s), false), (v, v), "K_{n}, K_{s}");
        }
        for t in 1..n {
            let v = exact(&Graph::complete(n), &Pattern::star(t).unwrap(), Mode::Free) as u64;
            assert_eq!(predicted(HostDescriptor::Kn(n), PatternDescriptor::Star(t), false), (v, v), "K_{n}, star {t}");
        }
    }
}

#[test]
fn bicliques_on_complete_hosts() {
    for n in 3..=6 {
        let v = exact(&Graph::complete(n), &Pattern::biclique(2, 2).unwrap(), Mode::Free) as u64;
        assert_eq!(predicted(HostDescriptor::Kn(n), PatternDescriptor::Kst(2, 2), false), (v, v), "K_{n}, C4");
    }
    for n in 5..=6 {
        let v = exact(&Graph::complete(n), &Pattern::biclique(2, 3).unwrap(), Mode::Free) as u64;
        assert_eq!(predicted(HostDescriptor::Kn(n), PatternDescriptor::Kst(2, 3), false), (v, v), "K_{n}, K_2,3");
    }
}

#[test]
fn bisaturation_matches_alon() {
    for (a, b) in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)] {
        for (s, t) in [(2, 2), (2, 3)] {
            if t > b {
                continue;
            }
            let host = Graph::complete_bipartite(a, b);
            let v = exact(&host, &Pattern::biclique(s, t).unwrap(), Mode::Bipartite) as u64;
            let want = predicted(HostDescriptor::Knl(a, b), PatternDescriptor::Kst(s, t), true);
            assert_eq!(want, (v, v), "K_{a},{b}, K_{s},{t}");
        }
    }
}

#[test]
fn unrestricted_saturation_of_bipartite_hosts() {
    for (n, l, s, t) in [(2, 2, 2, 2), (2, 3, 2, 2), (3, 3, 2, 2), (3, 3, 2, 3), (3, 4, 2, 2), (3, 4, 2, 3)] {
        let host = Graph::complete_bipartite(n, l);
        let v = exact(&host, &Pattern::biclique(s, t).unwrap(), Mode::Free) as u64;
        let want = predicted(HostDescriptor::Knl(n, l), PatternDescriptor::Kst(s, t), false);
        assert_eq!(want, (v, v), "K_{n},{l}, K_{s},{t}");
    }
}

#[test]
fn barbell_values_fall_inside_the_interval() {
    for n in [4, 6] {
        let v = exact(&Graph::complete(n), &Pattern::barbell(2).unwrap(), Mode::Free) as u64;
        let (lo, hi) = predicted(HostDescriptor::Kn(n), PatternDescriptor::Barbell(2), false);
        assert!(lo <= v && v <= hi, "K_{n}: {v} outside [{lo}, {hi}]");
    }
    let v = exact(&Graph::complete(6), &Pattern::barbell(3).unwrap(), Mode::Free) as u64;
    let (lo, hi) = predicted(HostDescriptor::Kn(6), PatternDescriptor::Barbell(3), false);
    assert!(lo <= v && v <= hi);
}

#[test]
fn non_complete_hosts() {
    let two = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3)]);
    assert_eq!(exact(&two, &Pattern::star(3).unwrap(), Mode::Free), 6);
    let c5 = Graph::cycle(5);
    assert_eq!(exact(&c5, &Pattern::clique(3).unwrap(), Mode::Free), 5);
}

/// Every host edge set is checked: if some m-subset saturates, some
/// (m+1)-subset does.
#[test]
fn feasibility_is_monotone_in_m() {
    let hosts = [
        (Graph::complete(5), Pattern::clique(3).unwrap()),
        (Graph::complete(5), Pattern::biclique(2, 2).unwrap()),
        (Graph::complete(4), Pattern::star(2).unwrap()),
        (Graph::cycle(6), Pattern::star(2).unwrap()),
        (Graph::complete_bipartite(2, 4), Pattern::biclique(2, 2).unwrap()),
    ];
    for (host, h) in hosts {
        let edges = host.edges();
        assert!(edges.len() <= 10);
        let feasible: Vec<bool> = (0..=edges.len())
            .map(|m| {
                (0u32..1 << edges.len()).filter(|mask| mask.count_ones() as usize == m).any(|mask| {
                    let chosen: Vec<(usize, usize)> =
                        (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
                    let f = Graph::from_edges(host.n(), &chosen).unwrap();
                    closure_graph(&host, &f, h.graph(), Mode::Free).unwrap().edge_count() == host.edge_count()
                })
            })
            .collect();
        for m in 0..edges.len() {
            assert!(!feasible[m] || feasible[m + 1], "m = {m}");
        }
        let first = feasible.iter().position(|&x| x).unwrap_or_else(|| panic!("{:?} {:?}", host.edges(), feasible));
        assert_eq!(first, exact(&host, &h, Mode::Free));
    }
}

#[test]
fn budget_downgrades_instead_of_failing() {
    let cert = wsat_exact(&Graph::complete(6), &Pattern::clique(4).unwrap(), Mode::Free, Budget::subsets(50)).unwrap();
    assert_eq!(cert.optimality, Optimality::UpperBoundOnly);
    assert!(cert.lower_bound <= 9 && 9 <= cert.value);
    assert!(is_weakly_saturated(&Graph::complete(6), &cert.witness, &Pattern::clique(4).unwrap(), Mode::Free).unwrap());
}

#[test]
fn constructions() {
    let k3 = Pattern::clique(3).unwrap();
    let l = construct_witness(&Family::Lovasz { n: 5, s: 3 }).unwrap();
    assert_eq!(l.edge_count(), 4);
    assert!(l.neighbors(0).count() == 4);
    assert!(is_weakly_saturated(&Graph::complete(5), &l, &k3, Mode::Free).unwrap());

    let s = construct_witness(&Family::StarCore { n: 7, t: 3 }).unwrap();
    assert_eq!(s.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    assert!(is_weakly_saturated(&Graph::complete(7), &s, &Pattern::star(3).unwrap(), Mode::Free).unwrap());

    let b = construct_witness(&Family::BarbellCliques { n: 9, t: 3 }).unwrap();
    assert_eq!(b.edge_count(), 9);
    assert!(is_weakly_saturated(&Graph::complete(9), &b, &Pattern::barbell(3).unwrap(), Mode::Free).unwrap());

    let a = construct_witness(&Family::CoreAttach {
        n: 6,
        pattern: k3.clone(),
        core: Graph::complete(3),
    })
    .unwrap();
    assert_eq!(a.edge_count(), 6);
    assert!(is_weakly_saturated(&Graph::complete(6), &a, &k3, Mode::Free).unwrap());

    assert!(construct_witness(&Family::Lovasz { n: 2, s: 3 }).is_err());
    assert!(construct_witness(&Family::BarbellCliques { n: 10, t: 3 }).is_err());
    assert!(construct_witness(&Family::CoreAttach {
        n: 6,
        pattern: k3,
        core: Graph::new(3),
    })
    .is_err());
}

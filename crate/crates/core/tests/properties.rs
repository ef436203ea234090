use std::collections::BTreeSet;

use proptest::prelude::*;

use chromadyn::codec::{parse_dimacs, parse_graph6, write_dimacs, write_graph6};
use chromadyn::coloring::{bad_set, greedy_proper, is_proper, is_r_dynamic, Coloring};
use chromadyn::lll::{moser_tardos, BadEvent, RandomModel, VarDist};
use chromadyn::Graph;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn distance_two_pairs(g: &Graph) -> BTreeSet<(usize, usize)> {
    let n = g.n();
    let mut out = BTreeSet::new();
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (t, &d) in dist.iter().enumerate() {
            if t > s && (d == 1 || d == 2) {
                out.insert((s, t));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn square_matches_bfs(g in graph_strategy(12)) {
        let sq: BTreeSet<(usize, usize)> = g.square().edges().collect();
        prop_assert_eq!(sq, distance_two_pairs(&g));
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        let text = write_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn dimacs_round_trip(g in graph_strategy(20)) {
        let text = write_dimacs(&g);
        prop_assert_eq!(parse_dimacs(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn greedy_is_proper(g in graph_strategy(16)) {
        let order: Vec<usize> = g.vertices().collect();
        let c = greedy_proper(&g, &order);
        prop_assert!(is_proper(&g, &c).unwrap());
        prop_assert!(c.num_colors() <= g.max_degree() + 1);
    }

    #[test]
    fn distinct_colors_are_dynamic(g in graph_strategy(12), r in 1usize..4) {
        let c = Coloring::new(g.vertices().collect());
        prop_assert!(is_r_dynamic(&g, &c, r).unwrap());
        prop_assert!(bad_set(&g, &c, r).unwrap().bad.is_empty());
    }

    #[test]
    fn dynamic_implies_fewer_dynamic(g in graph_strategy(9), colors in proptest::collection::vec(0usize..4, 9)) {
        let c = Coloring::new(colors[..g.n()].to_vec());
        for r in (2..=3).rev() {
            if is_r_dynamic(&g, &c, r).unwrap() {
                prop_assert!(is_r_dynamic(&g, &c, r - 1).unwrap());
            }
        }
        prop_assert_eq!(is_r_dynamic(&g, &c, 1).unwrap(), is_proper(&g, &c).unwrap());
    }

    #[test]
    fn engine_output_avoids_events(n in 4usize..40, seed in any::<u64>()) {
        // Each window of three consecutive bits must not be constant.
        let model = RandomModel { vars: vec![VarDist::Bernoulli { p: 0.5 }; n], seed };
        let events: Vec<BadEvent> = (0..n - 2)
            .map(|i| {
                BadEvent::new(i, vec![i, i + 1, i + 2], move |a: &[u32]| {
                    a[i] == a[i + 1] && a[i + 1] == a[i + 2]
                })
            })
            .collect();
        let out = moser_tardos(&model, &events, 1_000_000).unwrap();
        prop_assert!(out.converged);
        prop_assert!(events.iter().all(|e| !e.is_violated(&out.assignment)));
        prop_assert_eq!(out.resamples.iter().sum::<u64>(), out.rounds);
        let again = moser_tardos(&model, &events, 1_000_000).unwrap();
        prop_assert_eq!(again, out);
    }
}

#[test]
fn engine_reports_exhaustion() {
    let model = RandomModel {
        vars: vec![VarDist::uniform(2); 2],
        seed: 1,
    };
    let events = vec![BadEvent::new(0, vec![0, 1], |_: &[u32]| true)];
    let out = moser_tardos(&model, &events, 50).unwrap();
    assert!(!out.converged);
    assert_eq!(out.rounds, 50);
}

#[test]
fn engine_rejects_unscoped_events() {
    let model = RandomModel {
        vars: vec![VarDist::uniform(2)],
        seed: 0,
    };
    let events = vec![BadEvent::new(0, vec![3], |_: &[u32]| false)];
    assert!(moser_tardos(&model, &events, 10).is_err());
}

//! Randomised invariants across modules.

use std::collections::VecDeque;

use num_traits::{One, Zero};
use proptest::prelude::*;

use crate::distribution::{parse_distribution, serialize_distribution, ContinuousDistribution, Distribution, ParsedDistribution};
use crate::grid::{GridSpec, Vertex};
use crate::lp::{self, LpProblem, LpStatus};
use crate::ratio::{dyadic, frac, int, Rational};
use crate::reach::{apply_move, Engine};
use crate::weight;

fn grids(max_side: u32) -> impl Strategy<Value = GridSpec> {
    (1..=max_side, 1..=max_side, any::<bool>()).prop_map(|(w, h, torus)| {
        if torus {
            GridSpec::torus(w, h).unwrap()
        } else {
            GridSpec::plane(w, h).unwrap()
        }
    })
}

/// A grid and up to `max_units` (index, count) pairs on it.
fn distributions(max_side: u32, max_units: usize, max_count: u64) -> impl Strategy<Value = Distribution> {
    grids(max_side).prop_flat_map(move |g| {
        let n = g.vertex_count();
        prop::collection::vec((0..n, 1..=max_count), 1..=max_units).prop_map(move |units| {
            let mut d = Distribution::empty(g);
            for (i, c) in units {
                d.add(g.vertex(i), c).unwrap();
            }
            d
        })
    })
}

fn bfs_distances(g: &GridSpec, from: Vertex) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.vertex_count()];
    dist[g.index(from)] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if dist[g.index(u)] == u32::MAX {
                dist[g.index(u)] = dist[g.index(v)] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

/// `ceiling_infinite` of `k` pebbles on one vertex, summed shell by shell:
/// `4d` vertices at distance `d >= 1`, each with weight `k 2^-d`.
fn single_unit_ceiling(k: u64) -> Rational {
    let mut excess = int(k as i64 - 1);
    for d in 1.. {
        let w = int(k as i64) * dyadic(d);
        if w <= Rational::one() {
            break;
        }
        excess += int(4 * d as i64) * (w - Rational::one());
    }
    (int(9 * k as i64) - excess) / int(k as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_axioms_and_bfs((g, a, b, c) in grids(7).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), 0..n, 0..n, 0..n)
    })) {
        let (a, b, c) = (g.vertex(a), g.vertex(b), g.vertex(c));
        let d = |x, y| g.distance(x, y).unwrap();
        prop_assert_eq!(d(a, a), 0);
        prop_assert_eq!(d(a, b), d(b, a));
        prop_assert!(d(a, c) <= d(a, b) + d(b, c));
        prop_assert_eq!(d(a, b) == 0, a == b);
        prop_assert_eq!(d(a, b), bfs_distances(&g, a)[g.index(b)]);
    }

    #[test]
    fn weight_is_linear((d1, d2) in distributions(5, 4, 5).prop_flat_map(|d1| {
        let g = *d1.grid();
        let n = g.vertex_count();
        (Just(d1), prop::collection::vec((0..n, 1..=5u64), 1..=4).prop_map(move |units| {
            let mut d = Distribution::empty(g);
            for (i, c) in units {
                d.add(g.vertex(i), c).unwrap();
            }
            d
        }))
    })) {
        let sum = d1.combine(&d2).unwrap();
        for u in d1.grid().vertices() {
            prop_assert_eq!(
                weight::weight(&sum, u).unwrap(),
                weight::weight(&d1, u).unwrap() + weight::weight(&d2, u).unwrap()
            );
        }
    }

    #[test]
    fn moves_never_raise_weight(d in distributions(5, 4, 6), pick in any::<prop::sample::Index>()) {
        let g = *d.grid();
        let moves: Vec<(Vertex, Vertex)> = d
            .units()
            .filter(|&(_, c)| c >= 2)
            .flat_map(|(v, _)| g.neighbors(v).into_iter().map(move |u| (v, u)))
            .collect();
        prop_assume!(!moves.is_empty());
        let (from, to) = moves[pick.index(moves.len())];
        let after = apply_move(&d, from, to).unwrap();
        for u in g.vertices() {
            prop_assert!(weight::weight(&after, u).unwrap() <= weight::weight(&d, u).unwrap());
        }
    }

    #[test]
    fn ceiling_bounds_ratio(d in distributions(6, 4, 6)) {
        let c = Engine::default().coverage(&d).unwrap();
        prop_assert!(weight::covering_ratio_ceiling(&d).unwrap() >= c.ratio);
    }

    #[test]
    fn coverage_grows_with_pebbles(d in distributions(6, 3, 4), extra in any::<prop::sample::Index>()) {
        let e = Engine::default();
        let g = *d.grid();
        let mut bigger = d.clone();
        bigger.add(g.vertex(extra.index(g.vertex_count())), 1).unwrap();
        let small = e.reachable_set(&d).unwrap();
        let large = e.reachable_set(&bigger).unwrap();
        prop_assert!(small.is_subset(&large));
    }

    #[test]
    fn torus_translation_invariance(d in distributions(6, 3, 5).prop_filter("torus", |d| d.grid().is_torus()),
                                    dc in -6i64..6, dr in -6i64..6) {
        let e = Engine::default();
        let g = *d.grid();
        let moved = d.translate(dc, dr).unwrap();
        prop_assert_eq!(e.coverage(&d).unwrap().cov, e.coverage(&moved).unwrap().cov);
        for u in g.vertices() {
            let shifted = g.offset(u, dc, dr).unwrap();
            prop_assert_eq!(weight::weight(&d, u).unwrap(), weight::weight(&moved, shifted).unwrap());
        }
    }

    #[test]
    fn single_unit_infinite_ceiling(k in 1u64..=16) {
        let d = Distribution::from_offsets(&[(0, 0, k)], 3).unwrap();
        prop_assert_eq!(weight::ceiling_infinite(&d).unwrap(), single_unit_ceiling(k));
    }

    #[test]
    fn text_round_trip(d in distributions(6, 5, 9)) {
        let parsed = ParsedDistribution::Integer(d.clone());
        let again = parse_distribution(&serialize_distribution(&parsed)).unwrap().into_integer().unwrap();
        prop_assert_eq!(again, d);
    }

    #[test]
    fn continuous_round_trip(g in grids(5), amounts in prop::collection::vec((1i64..20, 1i64..20), 1..6)) {
        let mut c = ContinuousDistribution::empty(g);
        for (i, (p, q)) in amounts.into_iter().enumerate() {
            c.add(g.vertex(i % g.vertex_count()), frac(p, q)).unwrap();
        }
        let text = serialize_distribution(&ParsedDistribution::Continuous(c.clone()));
        match parse_distribution(&text).unwrap() {
            ParsedDistribution::Continuous(back) => prop_assert_eq!(back, c),
            ParsedDistribution::Integer(back) => prop_assert_eq!(back.to_continuous(), c),
        }
    }

    #[test]
    fn lp_invariant_under_permutation(
        cols in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
        rows in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let p = lp::lemma2_problem();
        let permuted = LpProblem::new(
            cols.iter().map(|&j| p.objective[j].clone()).collect(),
            rows.iter().map(|&i| cols.iter().map(|&j| p.constraints[i][j].clone()).collect()).collect(),
            rows.iter().map(|&i| p.rhs[i].clone()).collect(),
        ).unwrap();
        let s = lp::solve(&permuted).unwrap();
        prop_assert_eq!(s.status, LpStatus::Optimal);
        prop_assert_eq!(&s.objective_value, &frac(12, 25));
        prop_assert!(lp::verify_certificate(&permuted, &s.primal, &s.dual));
    }

    #[test]
    fn random_lp_certificates(
        a in prop::collection::vec(prop::collection::vec(0i64..5, 3), 1..5),
        b in prop::collection::vec(0i64..6, 4),
        c in prop::collection::vec(1i64..6, 3),
    ) {
        let rows = a.len();
        let p = LpProblem::new(
            c.iter().map(|&x| int(x)).collect(),
            a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            b[..rows].iter().map(|&x| int(x)).collect(),
        ).unwrap();
        let s = lp::solve(&p).unwrap();
        // A row of zeros with a positive right-hand side is the only way to be infeasible.
        let impossible = a.iter().zip(&b).any(|(r, &bi)| r.iter().all(|&x| x == 0) && bi > 0);
        if impossible {
            prop_assert_eq!(s.status, LpStatus::Infeasible);
        } else {
            prop_assert_eq!(s.status, LpStatus::Optimal);
            prop_assert!(lp::verify_solution(&p, &s));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fractional_witnesses_cover(g in grids(4)) {
        let (value, witness) = lp::fractional_optimal_pebbling(&g).unwrap();
        prop_assert!(weight::fractional_solvable(&witness));
        prop_assert_eq!(witness.size(), value.clone());
        prop_assert!(value > Rational::zero());
        // One pebble per vertex is always a fractional cover.
        prop_assert!(value <= int(g.vertex_count() as i64));
    }
}

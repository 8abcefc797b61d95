//! Brute-force reference answers for tiny instances.
//!
//! Everything here enumerates the full state graph of legal moves, so it is
//! only usable for a handful of pebbles on a handful of vertices. The engine
//! is tested against it.

use std::collections::{HashSet, VecDeque};

use crate::distribution::Distribution;
use crate::error::Result;
use crate::grid::GridSpec;

/// Largest number of pebbles that can sit on vertex index `t` at once.
pub fn max_on(grid: &GridSpec, start: &[u64], t: usize) -> u64 {
    let adjacency: Vec<Vec<usize>> =
        grid.vertices().map(|v| grid.neighbors(v).into_iter().map(|u| grid.index(u)).collect()).collect();
    let mut seen = HashSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([start.to_vec()]);
    let mut best = start[t];
    while let Some(state) = queue.pop_front() {
        best = best.max(state[t]);
        for v in 0..state.len() {
            if state[v] < 2 {
                continue;
            }
            for &u in &adjacency[v] {
                let mut next = state.clone();
                next[v] -= 2;
                next[u] += 1;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    best
}

/// Indices of vertices that can receive a pebble.
pub fn reachable(grid: &GridSpec, start: &[u64]) -> Vec<bool> {
    (0..grid.vertex_count()).map(|t| max_on(grid, start, t) >= 1).collect()
}

pub fn is_solvable(grid: &GridSpec, start: &[u64]) -> bool {
    reachable(grid, start).into_iter().all(|r| r)
}

/// Every multiset of `size` vertices out of `n`, as dense count vectors.
pub fn multisets(n: usize, size: u64) -> Vec<Vec<u64>> {
    fn rec(n: usize, from: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in from..n {
            cur[i] += 1;
            rec(n, i, left - 1, cur, out);
            cur[i] -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, 0, size, &mut vec![0; n], &mut out);
    out
}

pub fn to_distribution(grid: GridSpec, dense: &[u64]) -> Result<Distribution> {
    Distribution::from_units(grid, dense.iter().enumerate().map(|(i, &c)| (grid.vertex(i), c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Vertex;
    use crate::reach::Engine;

    fn check_grid(grid: GridSpec, max_size: u64, ks: &[u64]) -> usize {
        let engine = Engine::default();
        let mut checked = 0;
        for size in 1..=max_size {
            for dense in multisets(grid.vertex_count(), size) {
                let d = to_distribution(grid, &dense).unwrap();
                for t in 0..grid.vertex_count() {
                    let best = max_on(&grid, &dense, t);
                    for &k in ks {
                        let got = engine.can_move_k(&d, grid.vertex(t), k).unwrap();
                        assert_eq!(got, best >= k, "{grid} D={dense:?} t={} k={k}", grid.vertex(t));
                        checked += 1;
                    }
                }
            }
        }
        checked
    }

    #[test]
    fn engine_matches_enumeration_on_3x3_plane_up_to_5_pebbles() {
        assert!(check_grid(GridSpec::plane(3, 3).unwrap(), 5, &[1, 2]) > 0);
    }

    #[test]
    fn engine_matches_enumeration_on_3x3_torus_up_to_5_pebbles() {
        check_grid(GridSpec::torus(3, 3).unwrap(), 5, &[1, 2]);
    }

    #[test]
    fn engine_matches_enumeration_on_small_rectangles() {
        check_grid(GridSpec::plane(2, 2).unwrap(), 6, &[1, 2, 3]);
        check_grid(GridSpec::plane(4, 2).unwrap(), 6, &[1, 2]);
        check_grid(GridSpec::plane(5, 1).unwrap(), 8, &[1, 2]);
    }

    #[test]
    fn engine_matches_enumeration_on_4x4_sampled() {
        // Every multiset of size 6 on 4x4 is 54264 distributions; take a stride.
        let grid = GridSpec::plane(4, 4).unwrap();
        let engine = Engine::default();
        for dense in multisets(16, 6).into_iter().step_by(97) {
            let d = to_distribution(grid, &dense).unwrap();
            for t in 0..16 {
                let best = max_on(&grid, &dense, t);
                assert_eq!(engine.is_reachable(&d, grid.vertex(t)).unwrap(), best >= 1, "D={dense:?} t={t}");
            }
        }
    }

    #[test]
    fn three_pebbles_never_reach_distance_two() {
        let grid = GridSpec::plane(5, 5).unwrap();
        let dense: Vec<u64> = (0..25).map(|i| if i == 12 { 3 } else { 0 }).collect();
        assert_eq!(max_on(&grid, &dense, grid.index(Vertex::new(2, 4))), 0);
    }
}

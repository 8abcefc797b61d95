//! Optimal pebbling numbers of small grids by exhaustive search.

use std::sync::atomic::{AtomicU64, Ordering};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::block_composition_size;
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Vertex};
use crate::lp;
use crate::ratio::{self, Rational};
use crate::reach::Engine;

#[derive(Clone, Debug, Serialize)]
pub struct OptimalResult {
    pub grid: GridSpec,
    pub pi_opt: u64,
    #[serde(skip)]
    pub witness: Distribution,
    /// Candidates whose solvability was decided by the engine.
    pub nodes_explored: u64,
    /// Candidates of each size, after symmetry reduction.
    pub candidates_per_size: Vec<u64>,
}

/// Canonical multisets allowed per size before the search gives up.
pub const DEFAULT_CANDIDATE_CAP: usize = 5_000_000;

pub fn optimal_pebbling_number(engine: &Engine, spec: &GridSpec) -> Result<OptimalResult> {
    optimal_pebbling_number_capped(engine, spec, DEFAULT_CANDIDATE_CAP)
}

/// Tries sizes `1, 2, ...` in turn; within a size every distribution up to
/// the grid's symmetries is tested, so the first hit is optimal.
pub fn optimal_pebbling_number_capped(engine: &Engine, spec: &GridSpec, cap: usize) -> Result<OptimalResult> {
    let n = spec.vertex_count();
    let symmetries = spec.symmetries();
    let weights = ScaledWeights::new(spec);
    let order = hardest_first(spec);
    let explored = AtomicU64::new(0);
    let mut per_size = vec![];

    for size in 1..=n as u64 {
        let candidates = canonical_multisets(n, size as usize, &symmetries, cap).ok_or_else(|| {
            Error::ScaleLimit(format!(
                "{spec}: more than {cap} candidates of size {size}; bounds so far {size} <= pi_opt <= {n}"
            ))
        })?;
        per_size.push(candidates.len() as u64);
        let hit = candidates
            .par_iter()
            .map(|c| -> Result<bool> {
                if !weights.covers(c) {
                    return Ok(false);
                }
                explored.fetch_add(1, Ordering::Relaxed);
                let d = to_distribution(spec, c)?;
                Ok(engine.first_unreachable(&d, &order)?.is_none())
            })
            .enumerate()
            .find_first(|(_, r)| !matches!(r, Ok(false)));
        if let Some((i, r)) = hit {
            r?;
            return Ok(OptimalResult {
                grid: *spec,
                pi_opt: size,
                witness: to_distribution(spec, &candidates[i])?,
                nodes_explored: explored.load(Ordering::Relaxed),
                candidates_per_size: per_size,
            });
        }
    }
    unreachable!("one pebble on every vertex is solvable")
}

fn to_distribution(spec: &GridSpec, indices: &[usize]) -> Result<Distribution> {
    let mut d = Distribution::empty(*spec);
    for &i in indices {
        d.add(spec.vertex(i), 1)?;
    }
    Ok(d)
}

/// Corners, then the rest of the border, then the interior.
fn hardest_first(spec: &GridSpec) -> Vec<Vertex> {
    let mut vs: Vec<Vertex> = spec.vertices().collect();
    vs.sort_by_key(|&v| {
        let corner = spec.neighbors(v).len();
        (corner, spec.border_distance(v), v)
    });
    vs
}

/// Weights scaled by `2^diameter` so that the necessary condition
/// `W(u) >= 1` is an integer comparison.
struct ScaledWeights {
    table: Vec<Vec<u128>>,
    one: u128,
}

impl ScaledWeights {
    fn new(spec: &GridSpec) -> Self {
        let diam = spec.diameter().min(100);
        let vs: Vec<Vertex> = spec.vertices().collect();
        let table = vs
            .iter()
            .map(|&u| vs.iter().map(|&v| 1u128 << (diam - spec.dist(u, v).min(diam))).collect())
            .collect();
        ScaledWeights { table, one: 1u128 << diam }
    }

    fn covers(&self, multiset: &[usize]) -> bool {
        self.table.iter().all(|row| multiset.iter().map(|&i| row[i]).sum::<u128>() >= self.one)
    }
}

/// Non-decreasing index sequences of length `size` that are
/// lexicographically smallest among their images under `symmetries`.
/// `None` once more than `cap` are found.
pub fn canonical_multisets(n: usize, size: usize, symmetries: &[Vec<usize>], cap: usize) -> Option<Vec<Vec<usize>>> {
    let mut out = vec![];
    let mut current = Vec::with_capacity(size);
    let mut image = Vec::with_capacity(size);
    fn rec(
        n: usize,
        size: usize,
        start: usize,
        current: &mut Vec<usize>,
        image: &mut Vec<usize>,
        symmetries: &[Vec<usize>],
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        if current.len() == size {
            let canonical = symmetries.iter().all(|map| {
                image.clear();
                image.extend(current.iter().map(|&i| map[i]));
                image.sort_unstable();
                *image >= *current
            });
            if canonical {
                if out.len() >= cap {
                    return false;
                }
                out.push(current.clone());
            }
            return true;
        }
        for i in start..n {
            current.push(i);
            let ok = rec(n, size, i, current, image, symmetries, out, cap);
            current.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(n, size, 0, &mut current, &mut image, symmetries, &mut out, cap).then_some(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesRow {
    pub n: u32,
    pub pi_opt: Option<u64>,
    #[serde(with = "ratio::serde_pq_opt")]
    pub ratio: Option<Rational>,
    /// Best bound from tiling with a smaller solved grid and filling the rest.
    pub composed_bound: Option<u64>,
    /// `ceil` of the fractional optimum.
    pub lp_lower_bound: Option<u64>,
    #[serde(with = "ratio::serde_pq_opt")]
    pub fractional_optimum: Option<Rational>,
}

/// Exact values for `n <= max_n` and composed upper bounds up to `2 max_n`.
pub fn optimal_ratio_series(engine: &Engine, max_n: u32) -> Result<Vec<SeriesRow>> {
    let mut exact: Vec<(u32, u64)> = vec![];
    let mut rows = vec![];
    for n in 1..=2 * max_n {
        let grid = GridSpec::plane(n, n)?;
        let pi_opt = if n <= max_n {
            let r = optimal_pebbling_number(engine, &grid)?;
            exact.push((n, r.pi_opt));
            Some(r.pi_opt)
        } else {
            None
        };
        let composed_bound = exact
            .iter()
            .filter(|&&(m, _)| m < n)
            .map(|&(m, p)| block_composition_size(n as u64, m as u64, p))
            .min();
        let fractional = if grid.vertex_count() <= lp::FRACTIONAL_LP_MAX_VERTICES {
            Some(lp::fractional_optimal_pebbling(&grid)?.0)
        } else {
            None
        };
        rows.push(SeriesRow {
            n,
            pi_opt,
            ratio: pi_opt.map(|p| Rational::new((p as i64).into(), ((n * n) as i64).into())),
            composed_bound,
            lp_lower_bound: fractional.as_ref().map(|f| f.numer().div_ceil(f.denom()).try_into().unwrap_or(u64::MAX)),
            fractional_optimum: fractional,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_grids() {
        let e = Engine::default();
        let r = optimal_pebbling_number(&e, &GridSpec::plane(1, 1).unwrap()).unwrap();
        assert_eq!(r.pi_opt, 1);
        let r = optimal_pebbling_number(&e, &GridSpec::plane(2, 2).unwrap()).unwrap();
        assert_eq!(r.pi_opt, 3);
        assert_eq!(r.witness.size(), 3);
        assert!(e.is_solvable(&r.witness).unwrap());
    }

    #[test]
    fn canonical_counts_square() {
        let g = GridSpec::plane(2, 2).unwrap();
        // Multisets of size 2 on the 4-cycle up to its 8 symmetries:
        // {a,a}, {a,b} adjacent, {a,c} opposite.
        assert_eq!(canonical_multisets(4, 2, &g.symmetries(), 100).unwrap().len(), 3);
        assert!(canonical_multisets(4, 2, &g.symmetries(), 2).is_none());
    }

    #[test]
    fn cap_is_reported() {
        let e = Engine::default();
        let err = optimal_pebbling_number_capped(&e, &GridSpec::plane(3, 3).unwrap(), 3).unwrap_err();
        assert!(matches!(err, Error::ScaleLimit(_)));
    }
}

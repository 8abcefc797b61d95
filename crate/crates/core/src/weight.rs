//! The weight function `W_D(u) = sum_v D(v) 2^{-d(u,v)}` and the quantities
//! built from it.
//!
//! Excess weight is `max(W - 1, 0)`. The covering ratio ceiling of `D` is
//! `sum_v min(W_D(v), 1) / |D|`, i.e. total weight minus total excess over the
//! number of pebbles.
//!
//! Two evaluation modes exist. *Finite* mode sums over the distribution's own
//! grid (plane or torus). *Infinite-analytic* mode places a plane
//! distribution on the unbounded grid: one pebble spreads total weight
//! `1 + sum_{k>=1} 4k 2^{-k} = 9` over the grid, so the ceiling numerator is
//! `9|D|` minus the excess, and excess can only occur within
//! `ceil(log2 |D|)` of a unit.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::distribution::{same_grid, ContinuousDistribution, Distribution};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Vertex};
use crate::lp;
use crate::ratio::{self, dyadic, Rational};

/// Anything carrying pebble mass on a grid.
pub trait PebbleMass {
    fn grid(&self) -> &GridSpec;
    fn masses(&self) -> Vec<(Vertex, Rational)>;
    fn total_mass(&self) -> Rational {
        self.masses().into_iter().fold(Rational::zero(), |acc, (_, m)| acc + m)
    }
}

impl PebbleMass for Distribution {
    fn grid(&self) -> &GridSpec {
        Distribution::grid(self)
    }
    fn masses(&self) -> Vec<(Vertex, Rational)> {
        self.units().map(|(v, c)| (v, ratio::int(c as i64))).collect()
    }
}

impl PebbleMass for ContinuousDistribution {
    fn grid(&self) -> &GridSpec {
        ContinuousDistribution::grid(self)
    }
    fn masses(&self) -> Vec<(Vertex, Rational)> {
        self.units().map(|(v, c)| (v, c.clone())).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightMode {
    Finite,
    InfiniteAnalytic,
}

/// Groups masses by distance from `u` before scaling, so each vertex costs
/// one rational addition per distinct distance.
fn weight_from(grid: &GridSpec, masses: &[(Vertex, Rational)], u: Vertex) -> Rational {
    let mut by_distance: BTreeMap<u32, Rational> = BTreeMap::new();
    for (v, m) in masses {
        *by_distance.entry(grid.dist(u, *v)).or_insert_with(Rational::zero) += m;
    }
    by_distance.into_iter().fold(Rational::zero(), |acc, (d, m)| acc + m * dyadic(d))
}

/// `W_D(u)` on the distribution's own grid.
pub fn weight<D: PebbleMass>(d: &D, u: Vertex) -> Result<Rational> {
    d.grid().check(u)?;
    Ok(weight_from(d.grid(), &d.masses(), u))
}

/// `max(W_D(u) - 1, 0)`.
pub fn excess<D: PebbleMass>(d: &D, u: Vertex) -> Result<Rational> {
    Ok(excess_of(&weight(d, u)?))
}

pub fn excess_of(w: &Rational) -> Rational {
    ratio::max_zero(w - Rational::one())
}

/// Weights at every vertex, in vertex order.
pub fn all_weights<D: PebbleMass>(d: &D) -> Vec<(Vertex, Rational)> {
    let grid = *d.grid();
    let masses = d.masses();
    grid.vertices().map(|u| (u, weight_from(&grid, &masses, u))).collect()
}

/// `sum_{a in Z} 2^{-|dx + a p|}` for `0 <= dx < p`, which is
/// `(2^{p-dx} + 2^{dx}) / (2^p - 1)`.
fn lifted_axis(dx: u32, period: u32) -> Rational {
    let two = BigInt::from(2);
    let num = two.pow(period - dx) + two.pow(dx);
    Rational::new(num, two.pow(period) - 1)
}

/// Weight at `u` of the periodic extension of a torus distribution to the
/// unbounded grid: every pebble is counted once per lift, at plane
/// distance. Uniform `q` has periodic weight exactly `9q`.
pub fn periodic_weight<D: PebbleMass>(d: &D, u: Vertex) -> Result<Rational> {
    let grid = *d.grid();
    if !grid.is_torus() {
        return Err(Error::Input(format!("periodic weight needs a torus, got {grid}")));
    }
    grid.check(u)?;
    let (w, h) = (grid.width(), grid.height());
    Ok(d.masses().into_iter().fold(Rational::zero(), |acc, (v, m)| {
        let dx = (u.col + w - v.col) % w;
        let dy = (u.row + h - v.row) % h;
        acc + m * lifted_axis(dx, w) * lifted_axis(dy, h)
    }))
}

/// Per-vertex weights with the aggregates of a finite-mode evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightReport {
    pub grid: GridSpec,
    pub weights: BTreeMap<Vertex, Rational>,
    pub excess: BTreeMap<Vertex, Rational>,
    pub size: Rational,
    pub total_weight: Rational,
    pub total_excess: Rational,
    /// `(total_weight - total_excess) / size`; `None` for an empty distribution.
    pub ceiling: Option<Rational>,
}

impl WeightReport {
    pub fn min_weight(&self) -> Option<&Rational> {
        self.weights.values().min()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .weights
            .iter()
            .map(|(v, w)| {
                serde_json::json!({
                    "vertex": [v.col, v.row],
                    "w": ratio::to_pq(w),
                    "excess": ratio::to_pq(&self.excess[v]),
                })
            })
            .collect();
        serde_json::json!({
            "grid": self.grid,
            "mode": WeightMode::Finite,
            "rows": rows,
            "size": ratio::to_pq(&self.size),
            "total_weight": ratio::to_pq(&self.total_weight),
            "total_excess": ratio::to_pq(&self.total_excess),
            "ceiling": self.ceiling.as_ref().map(ratio::to_pq),
            "min_weight": self.min_weight().map(ratio::to_pq),
        })
    }
}

pub fn weight_report<D: PebbleMass>(d: &D) -> WeightReport {
    let weights: BTreeMap<Vertex, Rational> = all_weights(d).into_iter().collect();
    let excess: BTreeMap<Vertex, Rational> = weights.iter().map(|(v, w)| (*v, excess_of(w))).collect();
    let total_weight = weights.values().fold(Rational::zero(), |a, w| a + w);
    let total_excess = excess.values().fold(Rational::zero(), |a, w| a + w);
    let size = d.total_mass();
    let ceiling = if size.is_zero() { None } else { Some((&total_weight - &total_excess) / &size) };
    WeightReport { grid: *d.grid(), weights, excess, size, total_weight, total_excess, ceiling }
}

/// `sum_v min(W_D(v), 1)` over the distribution's grid.
pub fn capped_weight_sum<D: PebbleMass>(d: &D) -> Rational {
    all_weights(d).into_iter().fold(Rational::zero(), |acc, (_, w)| acc + w.min(Rational::one()))
}

/// Covering ratio ceiling in finite mode.
pub fn covering_ratio_ceiling<D: PebbleMass>(d: &D) -> Result<Rational> {
    let size = d.total_mass();
    if size.is_zero() {
        return Err(Error::Input("ceiling needs at least one pebble".into()));
    }
    Ok(capped_weight_sum(d) / size)
}

/// Total excess of a plane distribution placed on the unbounded grid.
pub fn infinite_total_excess(d: &Distribution) -> Result<Rational> {
    if d.grid().is_torus() {
        return Err(Error::Input("infinite-analytic mode needs a plane distribution".into()));
    }
    let size = d.size();
    if size == 0 {
        return Ok(Rational::zero());
    }
    // W(u) <= |D| 2^{-dist(u, support)}, so W > 1 forces dist < log2 |D|.
    let radius = 64 - (size - 1).leading_zeros();
    let units: Vec<(i64, i64, u64)> = d.units().map(|(v, c)| (v.col as i64, v.row as i64, c)).collect();
    let mut region: BTreeSet<(i64, i64)> = BTreeSet::new();
    let r = radius as i64;
    for &(c, row, _) in &units {
        for dr in -r..=r {
            let rem = r - dr.abs();
            for dc in -rem..=rem {
                region.insert((c + dc, row + dr));
            }
        }
    }
    let mut total = Rational::zero();
    for (c, row) in region {
        let mut scaled = BigInt::zero();
        let mut max_d = 0u32;
        let dists: Vec<(u32, u64)> = units
            .iter()
            .map(|&(uc, ur, k)| (((uc - c).abs() + (ur - row).abs()) as u32, k))
            .collect();
        for &(dd, _) in &dists {
            max_d = max_d.max(dd);
        }
        for (dd, k) in dists {
            scaled += BigInt::from(k) << (max_d - dd) as usize;
        }
        let w = Rational::new(scaled, BigInt::one() << max_d as usize);
        total += excess_of(&w);
    }
    Ok(total)
}

/// Covering ratio ceiling of a plane distribution on the unbounded grid:
/// `(9|D| - total excess) / |D|`.
pub fn ceiling_infinite(d: &Distribution) -> Result<Rational> {
    if d.size() == 0 {
        return Err(Error::Input("ceiling needs at least one pebble".into()));
    }
    let size = ratio::int(d.size() as i64);
    Ok((ratio::int(9) * &size - infinite_total_excess(d)?) / size)
}

fn ceiling_numerator(d: &Distribution, mode: WeightMode) -> Result<Rational> {
    match mode {
        WeightMode::Finite => Ok(capped_weight_sum(d)),
        WeightMode::InfiniteAnalytic => {
            Ok(ratio::int(9 * d.size() as i64) - infinite_total_excess(d)?)
        }
    }
}

/// Change of the ceiling numerator per added pebble when `d` grows to `dplus`.
pub fn marginal_covering_ratio_ceiling(d: &Distribution, dplus: &Distribution, mode: WeightMode) -> Result<Rational> {
    same_grid(d.grid(), dplus.grid())?;
    if !d.is_dominated_by(dplus) {
        return Err(Error::Input("the extended distribution must dominate the base pointwise".into()));
    }
    if dplus.size() == d.size() {
        return Err(Error::Input("marginal ceiling is undefined when no pebbles are added".into()));
    }
    let delta = ceiling_numerator(dplus, mode)? - ceiling_numerator(d, mode)?;
    Ok(delta / ratio::int((dplus.size() - d.size()) as i64))
}

/// Whether every vertex has weight at least one.
pub fn fractional_solvable<D: PebbleMass>(d: &D) -> bool {
    let one = Rational::one();
    let grid = *d.grid();
    let masses = d.masses();
    let ok = grid.vertices().all(|u| weight_from(&grid, &masses, u) >= one);
    ok
}

pub fn min_weight<D: PebbleMass>(d: &D) -> Option<(Vertex, Rational)> {
    all_weights(d).into_iter().min_by(|a, b| a.1.cmp(&b.1))
}

/// Weight a single pebble spreads over the vertices within `radius` of it on
/// the unbounded grid: `1 + sum_{k=1..radius} 4k 2^{-k}`, increasing to 9.
pub fn single_pebble_weight_total(radius: u32) -> Rational {
    (1..=radius).fold(Rational::one(), |acc, k| acc + ratio::int(4 * k as i64) * dyadic(k))
}

/// Accounting behind the integer fractional covering bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IfcovBoundReport {
    pub size: u64,
    pub vertices: u64,
    #[serde(with = "ratio::serde_pq")]
    pub ratio: Rational,
    #[serde(with = "ratio::serde_pq")]
    pub lemma_excess_per_pebble: Rational,
    #[serde(with = "ratio::serde_pq")]
    pub lemma_excess_lower_bound: Rational,
    #[serde(with = "ratio::serde_pq")]
    pub unit_excess_total: Rational,
    #[serde(with = "ratio::serde_pq")]
    pub bound: Rational,
    pub fractionally_solvable: bool,
    pub within_bound: bool,
    /// Units whose own excess falls below the per-pebble lower bound times their size.
    pub lemma_violations: Vec<Vertex>,
}

/// Checks `n^2 / |D| <= 9 - m` where `m` is the LP minimum of the excess a
/// lone pebble forces at its own vertex. `n` is the side of the grid the
/// distribution covers (`vertices = n^2`).
pub fn ifcov_bound_report(d: &Distribution, n: u64) -> Result<IfcovBoundReport> {
    if d.size() == 0 {
        return Err(Error::Input("bound report needs at least one pebble".into()));
    }
    let per_pebble = lp::lemma2_minimum();
    let bound = ratio::int(9) - &per_pebble;
    let size = ratio::int(d.size() as i64);
    let ratio_value = ratio::int((n * n) as i64) / &size;
    let mut unit_excess_total = Rational::zero();
    let mut lemma_violations = Vec::new();
    for (v, k) in d.units() {
        let e = excess(d, v)?;
        if e < &per_pebble * ratio::int(k as i64) {
            lemma_violations.push(v);
        }
        unit_excess_total += e;
    }
    Ok(IfcovBoundReport {
        size: d.size(),
        vertices: n * n,
        within_bound: ratio_value <= bound,
        ratio: ratio_value,
        lemma_excess_lower_bound: &per_pebble * &size,
        lemma_excess_per_pebble: per_pebble,
        unit_excess_total,
        bound,
        fractionally_solvable: fractional_solvable(d),
        lemma_violations,
    })
}

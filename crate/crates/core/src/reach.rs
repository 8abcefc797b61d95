//! Exact pebbling-move semantics: reachability, coverage and the vocabulary
//! used when combining distributions (boundary, interaction, lonely units).
//!
//! # Search
//!
//! Deciding whether `k` pebbles can be gathered on a target `t` is done over
//! *move multisets* rather than over distribution states. A multiset `m` of
//! moves is *balanced* when every vertex ends non-negative:
//!
//! ```text
//! D(x) + in_m(x) - 2 * out_m(x) >= k * [x == t]
//! ```
//!
//! Any balanced multiset without directed cycles can be executed by firing
//! vertices in topological order, and a cycle can always be removed from a
//! balanced multiset without breaking balance. So `t` is reachable exactly
//! when an acyclic balanced multiset exists, and a minimal one never moves a
//! pebble off `t`.
//!
//! The search grows `m` backwards from the demand at `t`: it repeatedly picks
//! a vertex in deficit and branches on which neighbour supplies its next
//! pebble. Suppliers of a vertex are added in increasing index order so each
//! multiset is built once, and failed multisets are memoised.
//!
//! Pruning uses the potential `phi(y) = 2^{-d(y, X)}` for any target set `X`:
//! a move `v -> u` changes `sum_y b(y) phi(y)` by `phi(u) - 2 phi(v) <= 0`, so
//! the current balance vector `b` must already satisfy `sum b phi >= 0`. With
//! no moves yet this is the weight cut-off `W_D(t) >= k`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::distribution::{same_grid, Distribution};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Vertex};
use crate::ratio::{self, Rational};

pub const DEFAULT_NODE_CAP: u64 = 10_000_000;

/// Upper bound on search nodes for a single reachability query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub node_cap: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { node_cap: DEFAULT_NODE_CAP }
    }
}

/// A single pebbling move: two pebbles leave `from`, one arrives at `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Move {
    pub from: Vertex,
    pub to: Vertex,
}

/// Applies one pebbling move.
pub fn apply_move(d: &Distribution, from: Vertex, to: Vertex) -> Result<Distribution> {
    let grid = d.grid();
    grid.check(from)?;
    grid.check(to)?;
    if !grid.are_adjacent(from, to) {
        return Err(Error::Input(format!("{from} and {to} are not adjacent")));
    }
    if d.get(from) < 2 {
        return Err(Error::Input(format!("{from} holds {} pebble(s); a move needs 2", d.get(from))));
    }
    let mut out = d.clone();
    out.remove(from, 2);
    out.add(to, 1)?;
    Ok(out)
}

/// Applies a sequence of moves in order.
pub fn apply_moves(d: &Distribution, moves: &[Move]) -> Result<Distribution> {
    moves.iter().try_fold(d.clone(), |acc, m| apply_move(&acc, m.from, m.to))
}

/// Reachable set and covering ratio of a distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub grid: GridSpec,
    pub reachable: BTreeSet<Vertex>,
    pub cov: usize,
    pub size: u64,
    pub ratio: Rational,
    pub boundary: BTreeSet<Vertex>,
}

impl CoverageReport {
    /// Smallest distance from a reachable vertex to the grid border.
    pub fn min_border_distance(&self) -> u32 {
        self.reachable.iter().map(|&v| self.grid.border_distance(v)).min().unwrap_or(u32::MAX)
    }

    pub fn is_complete(&self) -> bool {
        self.cov == self.grid.vertex_count()
    }

    pub fn unreachable(&self) -> Vec<Vertex> {
        self.grid.vertices().filter(|v| !self.reachable.contains(v)).collect()
    }
}

/// Reachability queries with a fixed per-query budget.
#[derive(Clone, Copy, Debug, Default)]
pub struct Engine {
    pub budget: SearchBudget,
}

impl Engine {
    pub fn new(budget: SearchBudget) -> Self {
        Engine { budget }
    }

    pub fn with_node_cap(node_cap: u64) -> Self {
        Engine { budget: SearchBudget { node_cap } }
    }

    pub fn is_reachable(&self, d: &Distribution, t: Vertex) -> Result<bool> {
        self.can_move_k(d, t, 1)
    }

    /// Whether some move sequence puts at least `k` pebbles on `t` at once.
    pub fn can_move_k(&self, d: &Distribution, t: Vertex, k: u64) -> Result<bool> {
        Ok(self.find_moves(d, t, k)?.is_some())
    }

    /// A move sequence gathering `k` pebbles on `t`, or `None` when impossible.
    pub fn find_moves(&self, d: &Distribution, t: Vertex, k: u64) -> Result<Option<Vec<Move>>> {
        d.grid().check(t)?;
        if k == 0 {
            return Err(Error::Input("k must be at least 1".into()));
        }
        let mut search = DemandSearch::new(d, t, k, self.budget.node_cap);
        match search.run() {
            Ok(true) => Ok(Some(search.witness())),
            Ok(false) => Ok(None),
            Err(()) => Err(Error::BudgetExceeded { target: t, node_cap: self.budget.node_cap }),
        }
    }

    pub fn coverage(&self, d: &Distribution) -> Result<CoverageReport> {
        if d.size() == 0 {
            return Err(Error::Input("coverage needs a distribution with at least one pebble".into()));
        }
        let reachable = self.reachable_set(d)?;
        let grid = *d.grid();
        let boundary = boundary_of(&grid, &reachable);
        let cov = reachable.len();
        Ok(CoverageReport {
            grid,
            cov,
            size: d.size(),
            ratio: ratio::frac(cov as i64, d.size() as i64),
            reachable,
            boundary,
        })
    }

    /// Coverage of a pattern meant to stand for the same pattern on the
    /// infinite grid: fails unless every reachable vertex keeps `margin` from
    /// the border (at least 1 is needed for the finite answer to be exact).
    pub fn coverage_with_margin(&self, d: &Distribution, margin: u32) -> Result<CoverageReport> {
        if d.grid().is_torus() {
            return Err(Error::Input("margin checks apply to plane grids".into()));
        }
        let report = self.coverage(d)?;
        let got = report.min_border_distance();
        if got < margin.max(1) {
            return Err(Error::Input(format!(
                "coverage reaches within {got} of the border; need a margin of {margin}"
            )));
        }
        Ok(report)
    }

    /// Reachable vertices, deciding targets in parallel. Targets already
    /// holding a pebble or lacking weight are settled without searching.
    pub fn reachable_set(&self, d: &Distribution) -> Result<BTreeSet<Vertex>> {
        let grid = *d.grid();
        let results: Vec<Result<(Vertex, bool)>> = grid
            .vertices()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|t| self.is_reachable(d, t).map(|r| (t, r)))
            .collect();
        let mut out = BTreeSet::new();
        for r in results {
            let (t, reachable) = r?;
            if reachable {
                out.insert(t);
            }
        }
        Ok(out)
    }

    pub fn is_solvable(&self, d: &Distribution) -> Result<bool> {
        Ok(self.first_unreachable(d, &d.grid().vertices().collect::<Vec<_>>())?.is_none())
    }

    /// The first vertex of `order` that is not reachable, if any.
    pub fn first_unreachable(&self, d: &Distribution, order: &[Vertex]) -> Result<Option<Vertex>> {
        for &t in order {
            if !self.is_reachable(d, t)? {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }

    pub fn boundary_vertices(&self, d: &Distribution) -> Result<BTreeSet<Vertex>> {
        Ok(boundary_of(d.grid(), &self.reachable_set(d)?))
    }

    /// Vertices reachable under both distributions.
    pub fn interaction_vertices(&self, d1: &Distribution, d2: &Distribution) -> Result<BTreeSet<Vertex>> {
        same_grid(d1.grid(), d2.grid())?;
        let r1 = self.reachable_set(d1)?;
        let r2 = self.reachable_set(d2)?;
        Ok(r1.intersection(&r2).copied().collect())
    }

    /// Units whose own coverage is disjoint from the coverage of the rest of `d`.
    pub fn lonely_units(&self, d: &Distribution) -> Result<BTreeSet<Vertex>> {
        let mut out = BTreeSet::new();
        for (v, c) in d.units() {
            let unit = d.unit_at(v);
            let mut rest = d.clone();
            rest.remove(v, c);
            let own = self.reachable_set(&unit)?;
            let others = if rest.is_empty() { BTreeSet::new() } else { self.reachable_set(&rest)? };
            if own.is_disjoint(&others) {
                out.insert(v);
            }
        }
        Ok(out)
    }

    /// `(Cov(D') - Cov(D)) / (|D'| - |D|)` for `D <= D'` pointwise.
    pub fn marginal_covering_ratio(&self, d: &Distribution, dplus: &Distribution) -> Result<Rational> {
        same_grid(d.grid(), dplus.grid())?;
        if !d.is_dominated_by(dplus) {
            return Err(Error::Input("the extended distribution must dominate the base pointwise".into()));
        }
        if dplus.size() == d.size() {
            return Err(Error::Input("marginal ratio is undefined when no pebbles are added".into()));
        }
        let base = if d.is_empty() { 0 } else { self.reachable_set(d)?.len() };
        let extended = self.reachable_set(dplus)?.len();
        assert!(extended >= base, "coverage shrank after adding pebbles");
        Ok(ratio::frac((extended - base) as i64, (dplus.size() - d.size()) as i64))
    }
}

fn boundary_of(grid: &GridSpec, reachable: &BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    reachable
        .iter()
        .copied()
        .filter(|&v| grid.neighbors(v).iter().any(|u| !reachable.contains(u)))
        .collect()
}

pub fn is_reachable(d: &Distribution, t: Vertex) -> Result<bool> {
    Engine::default().is_reachable(d, t)
}

pub fn can_move_k(d: &Distribution, t: Vertex, k: u64) -> Result<bool> {
    Engine::default().can_move_k(d, t, k)
}

pub fn coverage(d: &Distribution) -> Result<CoverageReport> {
    Engine::default().coverage(d)
}

pub fn is_solvable(d: &Distribution) -> Result<bool> {
    Engine::default().is_solvable(d)
}

pub fn boundary_vertices(d: &Distribution) -> Result<BTreeSet<Vertex>> {
    Engine::default().boundary_vertices(d)
}

pub fn interaction_vertices(d1: &Distribution, d2: &Distribution) -> Result<BTreeSet<Vertex>> {
    Engine::default().interaction_vertices(d1, d2)
}

pub fn lonely_units(d: &Distribution) -> Result<BTreeSet<Vertex>> {
    Engine::default().lonely_units(d)
}

pub fn marginal_covering_ratio(d: &Distribution, dplus: &Distribution) -> Result<Rational> {
    Engine::default().marginal_covering_ratio(d, dplus)
}

/// Fixed-point scale for potentials: `2^{-d}` is stored as `2^{SCALE - d}`.
const MAX_SCALE: u32 = 90;

struct DemandSearch {
    grid: GridSpec,
    coords: Vec<Vertex>,
    neighbors: Vec<Vec<u32>>,
    target: u32,
    scale: u32,
    /// `D(x) + in(x) - need(x)`.
    balance: Vec<i64>,
    /// Vertices whose balance may be non-zero.
    active: Vec<u32>,
    is_active: Vec<bool>,
    /// Move multiplicities keyed by `(from, to)`.
    moves: BTreeMap<(u32, u32), u32>,
    out_edges: Vec<Vec<u32>>,
    /// Largest supplier index used for each vertex so far.
    suppliers: Vec<Vec<u32>>,
    failed: HashSet<Vec<u32>>,
    nodes: u64,
    node_cap: u64,
}

impl DemandSearch {
    fn new(d: &Distribution, t: Vertex, k: u64, node_cap: u64) -> Self {
        let grid = *d.grid();
        let n = grid.vertex_count();
        let coords: Vec<Vertex> = grid.vertices().collect();
        let neighbors = coords
            .iter()
            .map(|&v| grid.neighbors(v).into_iter().map(|u| grid.index(u) as u32).collect())
            .collect();
        let mut balance = vec![0i64; n];
        let mut active = Vec::new();
        let mut is_active = vec![false; n];
        for (v, c) in d.units() {
            let i = grid.index(v);
            balance[i] = c as i64;
            active.push(i as u32);
            is_active[i] = true;
        }
        let target = grid.index(t);
        balance[target] -= k as i64;
        if !is_active[target] {
            active.push(target as u32);
            is_active[target] = true;
        }
        DemandSearch {
            grid,
            coords,
            neighbors,
            target: target as u32,
            scale: grid.diameter().min(MAX_SCALE),
            balance,
            active,
            is_active,
            moves: BTreeMap::new(),
            out_edges: vec![Vec::new(); n],
            suppliers: vec![Vec::new(); n],
            failed: HashSet::new(),
            nodes: 0,
            node_cap,
        }
    }

    fn dist(&self, a: u32, b: u32) -> u32 {
        self.grid.dist(self.coords[a as usize], self.coords[b as usize])
    }

    /// Upper estimate of `sum_y b(y) 2^{-dist(y)}` in units of `2^{-scale}`.
    /// Exact when every distance is within the scale.
    fn potential(&self, dist_of: impl Fn(u32) -> u32) -> i128 {
        let mut total: i128 = 0;
        for &y in &self.active {
            let b = self.balance[y as usize];
            if b == 0 {
                continue;
            }
            let d = dist_of(y);
            if d <= self.scale {
                total += (b as i128) << (self.scale - d);
            } else if b > 0 {
                total += b as i128;
            }
        }
        total
    }

    fn key(&self) -> Vec<u32> {
        let mut key = Vec::with_capacity(self.moves.len() * 3);
        for (&(a, b), &c) in &self.moves {
            key.extend_from_slice(&[a, b, c]);
        }
        key
    }

    /// Whether `to` can reach `from` along existing moves.
    fn creates_cycle(&self, from: u32, to: u32) -> bool {
        let mut stack = vec![to];
        let mut seen = HashSet::new();
        while let Some(x) = stack.pop() {
            if x == from {
                return true;
            }
            if seen.insert(x) {
                stack.extend(self.out_edges[x as usize].iter().copied());
            }
        }
        false
    }

    fn activate(&mut self, v: u32) -> bool {
        if self.is_active[v as usize] {
            false
        } else {
            self.is_active[v as usize] = true;
            self.active.push(v);
            true
        }
    }

    fn push_move(&mut self, from: u32, to: u32) -> (bool, bool) {
        *self.moves.entry((from, to)).or_insert(0) += 1;
        if !self.out_edges[from as usize].contains(&to) {
            self.out_edges[from as usize].push(to);
        }
        self.suppliers[to as usize].push(from);
        self.balance[to as usize] += 1;
        self.balance[from as usize] -= 2;
        let a = self.activate(from);
        let b = self.activate(to);
        (a, b)
    }

    fn pop_move(&mut self, from: u32, to: u32, activated: (bool, bool)) {
        if activated.1 {
            self.active.pop();
            self.is_active[to as usize] = false;
        }
        if activated.0 {
            self.active.pop();
            self.is_active[from as usize] = false;
        }
        self.balance[to as usize] -= 1;
        self.balance[from as usize] += 2;
        self.suppliers[to as usize].pop();
        let count = self.moves.get_mut(&(from, to)).expect("move present");
        *count -= 1;
        if *count == 0 {
            self.moves.remove(&(from, to));
            self.out_edges[from as usize].retain(|&x| x != to);
        }
    }

    fn run(&mut self) -> std::result::Result<bool, ()> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(());
        }
        let deficits: Vec<u32> = self.active.iter().copied().filter(|&x| self.balance[x as usize] < 0).collect();
        if deficits.is_empty() {
            return Ok(true);
        }
        let key = self.key();
        if self.failed.contains(&key) {
            return Ok(false);
        }

        // Per-deficit potentials; the most constrained deficit is expanded.
        let mut chosen = None;
        for &x in &deficits {
            let p = self.potential(|y| self.dist(x, y));
            if p < 0 {
                self.failed.insert(key);
                return Ok(false);
            }
            if chosen.is_none_or(|(_, best)| p < best) {
                chosen = Some((x, p));
            }
        }
        if deficits.len() > 1 {
            let joint = self.potential(|y| deficits.iter().map(|&x| self.dist(x, y)).min().unwrap());
            if joint < 0 {
                self.failed.insert(key);
                return Ok(false);
            }
        }
        let (x, _) = chosen.expect("at least one deficit");

        let floor = self.suppliers[x as usize].iter().copied().max().unwrap_or(0);
        let mut candidates: Vec<(i128, u32)> = self.neighbors[x as usize]
            .iter()
            .copied()
            .filter(|&u| {
                u != self.target
                    && u >= floor
                    && !self.moves.contains_key(&(x, u))
                    && !self.creates_cycle(u, x)
            })
            .map(|u| (self.potential(|y| self.dist(u, y)), u))
            .collect();
        // Richest supplier first; ties by index.
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        for (_, u) in candidates {
            let activated = self.push_move(u, x);
            let found = self.run()?;
            if found {
                return Ok(true);
            }
            self.pop_move(u, x, activated);
        }
        self.failed.insert(key);
        Ok(false)
    }

    /// Executable order for the balanced acyclic move multiset found by `run`.
    fn witness(&self) -> Vec<Move> {
        let n = self.coords.len();
        let mut indegree = vec![0usize; n];
        for &(_, to) in self.moves.keys() {
            indegree[to as usize] += 1;
        }
        let involved: BTreeSet<u32> = self.moves.keys().flat_map(|&(a, b)| [a, b]).collect();
        let mut ready: Vec<u32> = involved.iter().copied().filter(|&v| indegree[v as usize] == 0).collect();
        let mut out = Vec::new();
        while let Some(v) = ready.pop() {
            for (&(from, to), &count) in self.moves.range((v, 0)..=(v, u32::MAX)) {
                debug_assert_eq!(from, v);
                for _ in 0..count {
                    out.push(Move { from: self.coords[from as usize], to: self.coords[to as usize] });
                }
                indegree[to as usize] -= 1;
                if indegree[to as usize] == 0 {
                    ready.push(to);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::frac;

    fn plane(w: u32, h: u32) -> GridSpec {
        GridSpec::plane(w, h).unwrap()
    }

    fn dist(grid: GridSpec, units: &[(u32, u32, u64)]) -> Distribution {
        Distribution::from_units(grid, units.iter().map(|&(c, r, k)| (Vertex::new(c, r), k))).unwrap()
    }

    #[test]
    fn apply_move_examples() {
        let g = plane(5, 5);
        let d = dist(g, &[(2, 2, 2)]);
        let moved = apply_move(&d, Vertex::new(2, 2), Vertex::new(2, 1)).unwrap();
        assert_eq!(moved, dist(g, &[(2, 1, 1)]));

        let d = dist(g, &[(2, 2, 4)]);
        let once = apply_move(&d, Vertex::new(2, 2), Vertex::new(3, 2)).unwrap();
        let twice = apply_move(&once, Vertex::new(2, 2), Vertex::new(3, 2)).unwrap();
        assert_eq!(twice, dist(g, &[(3, 2, 2)]));
        assert_eq!(twice.size(), d.size() - 2);

        let single = dist(g, &[(2, 2, 1)]);
        assert!(apply_move(&single, Vertex::new(2, 2), Vertex::new(3, 2)).is_err());
        assert!(apply_move(&d, Vertex::new(2, 2), Vertex::new(4, 2)).is_err());
    }

    #[test]
    fn reachability_examples() {
        let g = plane(9, 9);
        let v = Vertex::new(4, 4);
        let t = Vertex::new(4, 6);
        assert!(is_reachable(&dist(g, &[(4, 4, 1)]), v).unwrap());
        assert!(!is_reachable(&dist(g, &[(4, 4, 3)]), t).unwrap());
        assert!(is_reachable(&dist(g, &[(4, 4, 4)]), t).unwrap());
    }

    #[test]
    fn can_move_k_examples() {
        let g = plane(9, 9);
        let t = Vertex::new(4, 4);
        assert!(can_move_k(&dist(g, &[(4, 4, 3)]), t, 3).unwrap());
        assert!(!can_move_k(&dist(g, &[(4, 4, 3)]), t, 4).unwrap());
        assert!(can_move_k(&dist(g, &[(4, 5, 8)]), t, 4).unwrap());
        assert!(!can_move_k(&dist(g, &[(4, 5, 7)]), t, 4).unwrap());
    }

    #[test]
    fn witness_replays_to_target() {
        let g = plane(7, 7);
        let d = dist(g, &[(1, 1, 3), (3, 1, 3), (5, 1, 2)]);
        let engine = Engine::default();
        for t in g.vertices() {
            if let Some(moves) = engine.find_moves(&d, t, 1).unwrap() {
                let end = apply_moves(&d, &moves).unwrap();
                assert!(end.get(t) >= 1, "witness for {t} does not deliver");
            }
        }
    }

    #[test]
    fn solvable_examples() {
        assert!(is_solvable(&dist(plane(3, 3), &[(1, 1, 4)])).unwrap());
        assert!(!is_solvable(&dist(plane(2, 2), &[(0, 0, 2)])).unwrap());
    }

    #[test]
    fn coverage_fixtures() {
        let single = Distribution::from_offsets(&[(0, 0, 2)], 3).unwrap();
        let report = coverage(&single).unwrap();
        assert_eq!(report.cov, 5);
        assert_eq!(report.ratio, frac(5, 2));

        let pair = Distribution::from_offsets(&[(0, 0, 2), (1, 0, 2)], 3).unwrap();
        let report = coverage(&pair).unwrap();
        assert_eq!(report.cov, 8);
        assert_eq!(report.ratio, frac(2, 1));
    }

    #[test]
    fn boundary_of_size_two_unit_is_its_neighbours() {
        let d = Distribution::from_offsets(&[(0, 0, 2)], 3).unwrap();
        let v = Vertex::new(3, 3);
        let b = boundary_vertices(&d).unwrap();
        let expected: BTreeSet<Vertex> = d.grid().neighbors(v).into_iter().collect();
        assert_eq!(b, expected);
    }

    #[test]
    fn interaction_and_loneliness() {
        let g = plane(11, 7);
        let d1 = dist(g, &[(3, 3, 2)]);
        let d2 = dist(g, &[(6, 3, 2)]);
        assert!(interaction_vertices(&d1, &d2).unwrap().is_empty());
        let d3 = dist(g, &[(5, 3, 2)]);
        assert_eq!(interaction_vertices(&d1, &d3).unwrap(), BTreeSet::from([Vertex::new(4, 3)]));

        // Single pebbles cover only themselves, so a row of them is all lonely.
        let d = dist(g, &[(2, 3, 1), (3, 3, 1), (8, 3, 1)]);
        assert_eq!(lonely_units(&d).unwrap(), BTreeSet::from([Vertex::new(2, 3), Vertex::new(3, 3), Vertex::new(8, 3)]));
        // A single inside a size-2 unit's coverage is not.
        let d = dist(g, &[(2, 3, 2), (3, 3, 1), (8, 3, 1)]);
        assert_eq!(lonely_units(&d).unwrap(), BTreeSet::from([Vertex::new(8, 3)]));
    }

    #[test]
    fn marginal_ratio_examples() {
        let base = Distribution::from_offsets(&[(0, 0, 1)], 3).unwrap();
        let plus = Distribution::from_offsets(&[(0, 0, 2)], 3).unwrap();
        assert_eq!(marginal_covering_ratio(&base, &plus).unwrap(), frac(4, 1));

        let single = Distribution::from_offsets(&[(0, 0, 2), (1, 0, 0)], 3).unwrap();
        let pair = Distribution::from_offsets(&[(0, 0, 2), (1, 0, 2)], 3).unwrap();
        assert_eq!(marginal_covering_ratio(&single, &pair).unwrap(), frac(3, 2));

        assert!(marginal_covering_ratio(&pair, &pair).is_err());
        assert!(marginal_covering_ratio(&pair, &single).is_err());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = plane(7, 7);
        let d = dist(g, &[(1, 1, 3), (3, 1, 3), (5, 1, 3), (1, 5, 3), (3, 5, 3), (5, 5, 3)]);
        let engine = Engine::with_node_cap(2);
        let err = engine.is_reachable(&d, Vertex::new(3, 3)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }
}

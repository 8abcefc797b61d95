//! Generators for the distribution families studied on grids.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::distribution::{ContinuousDistribution, Distribution, ParsedDistribution};
use crate::error::{Error, Result};
use crate::grid::{GridSpec, Vertex};
use crate::ratio::{self, dyadic, Rational};
use crate::reach::Engine;
use crate::weight;

/// A family together with its parameters.
#[derive(Clone, Debug)]
pub enum PatternSpec {
    Diag7 { grid: GridSpec },
    RowOnes { k: u32, with_unit2: bool },
    CascadeOnes { k: u32 },
    Fig4 { n: u32, m: u32 },
    Fig4Augmented { n: u32, m: u32 },
    UniformFrac { grid: GridSpec, q: Rational },
    Density7Frac { grid: GridSpec },
    BlockComposition { n: u32, inner: Distribution },
}

impl PatternSpec {
    pub fn family(&self) -> &'static str {
        match self {
            PatternSpec::Diag7 { .. } => "diag7",
            PatternSpec::RowOnes { .. } => "row-ones",
            PatternSpec::CascadeOnes { .. } => "cascade-ones",
            PatternSpec::Fig4 { .. } => "fig4",
            PatternSpec::Fig4Augmented { .. } => "fig4-augmented",
            PatternSpec::UniformFrac { .. } => "uniform-frac",
            PatternSpec::Density7Frac { .. } => "density7-frac",
            PatternSpec::BlockComposition { .. } => "block-composition",
        }
    }

    pub fn generate(&self) -> Result<ParsedDistribution> {
        let engine = Engine::default();
        Ok(match self {
            PatternSpec::Diag7 { grid } => ParsedDistribution::Integer(gen_diag7(grid)?),
            PatternSpec::RowOnes { k, with_unit2 } => {
                ParsedDistribution::Integer(gen_row_ones(&row_ones_grid(*k), *k, *with_unit2)?)
            }
            PatternSpec::CascadeOnes { k } => {
                let (d, u) = gen_cascade_ones(&cascade_grid(*k), *k)?;
                ParsedDistribution::Integer(d.combine(&u)?)
            }
            PatternSpec::Fig4 { n, m } => ParsedDistribution::Integer(gen_fig4(*n, *m, false)?),
            PatternSpec::Fig4Augmented { n, m } => {
                ParsedDistribution::Integer(fig4_augmentation(&engine, *n, *m)?.distribution)
            }
            PatternSpec::UniformFrac { grid, q } => ParsedDistribution::Continuous(gen_uniform_frac(grid, q.clone())?),
            PatternSpec::Density7Frac { grid } => ParsedDistribution::Integer(gen_density7(grid)?),
            PatternSpec::BlockComposition { n, inner } => ParsedDistribution::Integer(gen_block_composition(*n, inner)?),
        })
    }
}

/// Units of four on every other vertex of every seventh diagonal:
/// `(col + row) % 7 == 0` and `col` even.
pub fn is_diag7_site(v: Vertex) -> bool {
    (v.col + v.row) % 7 == 0 && v.col % 2 == 0
}

/// The diagonal pattern. On a torus both periods must divide the grid
/// (width a multiple of 14, height a multiple of 7). On a plane grid one
/// pebble is added on every vertex the pattern leaves unreachable.
pub fn gen_diag7(spec: &GridSpec) -> Result<Distribution> {
    if spec.is_torus() {
        if spec.width() % 14 != 0 || spec.height() % 7 != 0 {
            return Err(Error::Input(format!(
                "diag7 needs a torus with width divisible by 14 and height divisible by 7, got {spec}"
            )));
        }
        return diag7_core(spec);
    }
    Ok(gen_diag7_plane(&Engine::default(), spec)?.distribution)
}

fn diag7_core(spec: &GridSpec) -> Result<Distribution> {
    Distribution::from_units(*spec, spec.vertices().filter(|&v| is_diag7_site(v)).map(|v| (v, 4)))
}

#[derive(Clone, Debug)]
pub struct Diag7Plane {
    pub distribution: Distribution,
    pub core_pebbles: u64,
    pub filler_pebbles: u64,
}

pub fn gen_diag7_plane(engine: &Engine, spec: &GridSpec) -> Result<Diag7Plane> {
    let mut d = diag7_core(spec)?;
    let core_pebbles = d.size();
    let missing = if d.is_empty() { spec.vertices().collect() } else { engine.coverage(&d)?.unreachable() };
    for v in &missing {
        d.add(*v, 1)?;
    }
    Ok(Diag7Plane { distribution: d, core_pebbles, filler_pebbles: missing.len() as u64 })
}

/// Smallest plane that holds a row of `k` singles, the optional pair unit
/// and a margin of three on every side.
pub fn row_ones_grid(k: u32) -> GridSpec {
    GridSpec::plane(k + 7, 7).expect("positive dimensions")
}

/// `k` singles on the middle row; with `with_unit2` a unit of two sits just
/// left of the first one.
pub fn gen_row_ones(spec: &GridSpec, k: u32, with_unit2: bool) -> Result<Distribution> {
    if k == 0 {
        return Err(Error::Input("row-ones needs k >= 1".into()));
    }
    let needed_width = k + 7;
    if spec.is_torus() || spec.width() < needed_width || spec.height() < 7 {
        return Err(Error::Input(format!("a row of {k} singles needs a plane of at least {needed_width}x7, got {spec}")));
    }
    let row = spec.height() / 2;
    let start = (spec.width() - k - 1) / 2 + 1;
    let mut d = Distribution::empty(*spec);
    for i in 0..k {
        d.add(Vertex::new(start + i, row), 1)?;
    }
    if with_unit2 {
        d.add(Vertex::new(start - 1, row), 2)?;
    }
    Ok(d)
}

pub fn cascade_grid(k: u32) -> GridSpec {
    GridSpec::plane(k + 8, 7).expect("positive dimensions")
}

/// A unit of two followed, after a one-vertex gap, by `k` singles. `U` is a
/// single pebble on the gap: alone it reaches nothing new, added to `D` it
/// lets a pair of pebbles walk the whole row.
pub fn gen_cascade_ones(spec: &GridSpec, k: u32) -> Result<(Distribution, Distribution)> {
    if k == 0 {
        return Err(Error::Input("cascade-ones needs k >= 1".into()));
    }
    let needed_width = k + 8;
    if spec.is_torus() || spec.width() < needed_width || spec.height() < 7 {
        return Err(Error::Input(format!("cascade of length {k} needs a plane of at least {needed_width}x7, got {spec}")));
    }
    let row = spec.height() / 2;
    let left = (spec.width() - k - 2) / 2;
    let mut d = Distribution::empty(*spec);
    d.add(Vertex::new(left, row), 2)?;
    for i in 0..k {
        d.add(Vertex::new(left + 2 + i, row), 1)?;
    }
    let u = Distribution::from_units(*spec, [(Vertex::new(left + 1, row), 1)])?;
    Ok((d, u))
}

pub fn fig4_grid(n: u32, m: u32) -> Result<GridSpec> {
    if n == 0 || m == 0 {
        return Err(Error::Input(format!("fig4 needs n >= 1 and m >= 1, got n={n}, m={m}")));
    }
    GridSpec::plane(2 * n + 1, 5 * m + 1)
}

/// Units of three on the even columns of rows `0, 5, ..., 5m` of the
/// `(2n+1) x (5m+1)` plane. `augmented` adds the `2m` units of two found by
/// [`fig4_augmentation`].
pub fn gen_fig4(n: u32, m: u32, augmented: bool) -> Result<Distribution> {
    if augmented {
        return Ok(fig4_augmentation(&Engine::default(), n, m)?.distribution);
    }
    let grid = fig4_grid(n, m)?;
    let units = (0..=m).flat_map(|k| (0..=n).map(move |i| (Vertex::new(2 * i, 5 * k), 3)));
    Distribution::from_units(grid, units)
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig4Augmentation {
    /// Added units of two, in the order they are added.
    pub units: Vec<Vertex>,
    /// Covering ratio before and after each addition.
    #[serde(with = "ratio::serde_pq_vec")]
    pub ratios: Vec<Rational>,
    /// Whether four pebbles can be moved to every vertex of every row that
    /// carries units of three.
    pub four_on_unit_rows: bool,
    #[serde(skip)]
    pub distribution: Distribution,
}

/// Reachability queries allowed to the augmentation search.
pub const FIG4_SEARCH_LIMIT: usize = 2_000_000;

/// Queries spent looking for a placement with four pebbles on every unit
/// row before settling for any solvable one.
pub const FIG4_PREFERRED_LIMIT: usize = 50_000;

/// Looks for `2m` units of two on empty vertices that make the base
/// solvable, added in an order along which the covering ratio strictly
/// increases. Placements that also allow four pebbles on every vertex of
/// the unit rows are preferred; when none exists the first solvable one is
/// returned, as it is when that first pass runs out of its smaller budget.
/// Candidates at each step are tried by decreasing coverage and
/// then by vertex order, so the result is deterministic.
pub fn fig4_augmentation(engine: &Engine, n: u32, m: u32) -> Result<Fig4Augmentation> {
    let base = gen_fig4(n, m, false)?;
    let reachable: Vec<bool> = {
        let set = engine.reachable_set(&base)?;
        base.grid().vertices().map(|v| set.contains(&v)).collect()
    };
    let unit_rows: Vec<Vertex> = (0..=m).flat_map(|k| (0..=2 * n).map(move |c| Vertex::new(c, 5 * k))).collect();
    for (require_four, limit) in [(true, FIG4_PREFERRED_LIMIT), (false, FIG4_SEARCH_LIMIT)] {
        let mut search = AugmentSearch {
            engine,
            queries: 0,
            limit,
            path: vec![],
            require_four: require_four.then_some(unit_rows.as_slice()),
        };
        let found = match search.dfs(&base, &reachable, 2 * m as usize) {
            Err(Error::SearchFailed(_)) if require_four => false,
            other => other?,
        };
        if found {
            let mut d = base.clone();
            let cov = reachable.iter().filter(|&&r| r).count() as i64;
            let mut ratios = vec![Rational::new(cov.into(), (d.size() as i64).into())];
            for &(v, c) in &search.path {
                d.add(v, 2)?;
                ratios.push(Rational::new((c as i64).into(), (d.size() as i64).into()));
            }
            let four_on_unit_rows = require_four || four_everywhere(engine, &d, &unit_rows)?;
            return Ok(Fig4Augmentation {
                units: search.path.iter().map(|p| p.0).collect(),
                ratios,
                four_on_unit_rows,
                distribution: d,
            });
        }
    }
    Err(Error::SearchFailed(format!(
        "no {} units of two make fig4(n={n}, m={m}) solvable with a strictly increasing ratio",
        2 * m
    )))
}

fn four_everywhere(engine: &Engine, d: &Distribution, targets: &[Vertex]) -> Result<bool> {
    for &t in targets {
        if !engine.can_move_k(d, t, 4)? {
            return Ok(false);
        }
    }
    Ok(true)
}

struct AugmentSearch<'a> {
    engine: &'a Engine,
    queries: usize,
    limit: usize,
    path: Vec<(Vertex, usize)>,
    require_four: Option<&'a [Vertex]>,
}

impl AugmentSearch<'_> {
    fn dfs(&mut self, d: &Distribution, reachable: &[bool], remaining: usize) -> Result<bool> {
        let grid = *d.grid();
        let cov = reachable.iter().filter(|&&r| r).count();
        if remaining == 0 {
            return match self.require_four {
                _ if cov < reachable.len() => Ok(false),
                Some(targets) => four_everywhere(self.engine, d, targets),
                None => Ok(true),
            };
        }
        let size = d.size() as usize;
        let mut candidates = vec![];
        for v in grid.vertices().filter(|&v| d.get(v) == 0) {
            let mut next = d.clone();
            next.add(v, 2)?;
            // Adding pebbles never loses a vertex, so only the gaps are asked.
            let mut now = reachable.to_vec();
            for (i, r) in now.iter_mut().enumerate() {
                if !*r {
                    self.queries += 1;
                    if self.queries > self.limit {
                        return Err(Error::SearchFailed(format!(
                            "fig4 augmentation search stopped after {} reachability queries",
                            self.limit
                        )));
                    }
                    *r = self.engine.is_reachable(&next, grid.vertex(i))?;
                }
            }
            let c = now.iter().filter(|&&r| r).count();
            // c/(size+2) > cov/size
            if c * size > cov * (size + 2) {
                candidates.push((c, v, next, now));
            }
        }
        candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (c, v, next, now) in candidates {
            self.path.push((v, c));
            if self.dfs(&next, &now, remaining - 1)? {
                return Ok(true);
            }
            self.path.pop();
        }
        Ok(false)
    }
}

pub fn gen_uniform_frac(spec: &GridSpec, q: Rational) -> Result<ContinuousDistribution> {
    if q <= Rational::zero() {
        return Err(Error::Input(format!("uniform amount must be positive, got {}", ratio::to_pq(&q))));
    }
    let mut d = ContinuousDistribution::empty(*spec);
    for v in spec.vertices() {
        d.add(v, q.clone())?;
    }
    Ok(d)
}

/// A sublattice of index seven: `{(c, r) : c + a r = 0 mod 7}` for
/// `a = 0..6`, or `{(c, r) : r = 0 mod 7}`. These are all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lattice7 {
    pub a: Option<u32>,
}

impl Lattice7 {
    pub fn all() -> Vec<Lattice7> {
        (0..7).map(|a| Lattice7 { a: Some(a) }).chain([Lattice7 { a: None }]).collect()
    }

    pub fn basis(&self) -> [(i64, i64); 2] {
        match self.a {
            Some(a) => [(7, 0), ((7 - a as i64) % 7, 1)],
            None => [(1, 0), (0, 7)],
        }
    }

    /// Coset index of a vertex, `0` for lattice points.
    pub fn class_of(&self, v: Vertex) -> u32 {
        match self.a {
            Some(a) => (v.col + a * v.row) % 7,
            None => v.row % 7,
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.class_of(v) == 0
    }

    pub fn distribution(&self, spec: &GridSpec) -> Result<Distribution> {
        Distribution::from_units(*spec, spec.vertices().filter(|&v| self.contains(v)).map(|v| (v, 1)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexClass {
    /// Coset indices sharing this distance profile.
    pub cosets: Vec<u32>,
    pub representative: Vertex,
    /// Number of pebbles at distance 0, 1, 2, ...
    pub profile: Vec<u64>,
    /// Smallest radius whose pebbles alone give weight at least one.
    pub radius: Option<u32>,
    /// Weight contributed by pebbles within `radius`.
    #[serde(with = "ratio::serde_pq")]
    pub near_weight: Rational,
    #[serde(with = "ratio::serde_pq")]
    pub weight: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct Density7Pattern {
    pub lattice: Lattice7,
    pub basis: [(i64, i64); 2],
    pub grid: GridSpec,
    #[serde(skip)]
    pub distribution: Distribution,
    #[serde(with = "ratio::serde_pq")]
    pub density: Rational,
    #[serde(with = "ratio::serde_pq")]
    pub min_weight: Rational,
    /// Classes of empty vertices, grouped by distance profile.
    pub classes: Vec<VertexClass>,
}

/// Searches the index-seven sublattices on the `7k x 7k` torus and returns
/// the first whose single pebbles give every vertex weight at least one.
pub fn find_density7_pattern_on(k: u32) -> Result<Density7Pattern> {
    if k == 0 {
        return Err(Error::Input("torus side must be a positive multiple of 7".into()));
    }
    let grid = GridSpec::torus(7 * k, 7 * k)?;
    for lattice in Lattice7::all() {
        let d = lattice.distribution(&grid)?;
        let Some((_, min)) = weight::min_weight(&d) else { continue };
        if min >= Rational::one() {
            return Ok(describe_density7(lattice, grid, d, min));
        }
    }
    Err(Error::SearchFailed(format!("no index-7 lattice covers the {grid} fractionally")))
}

/// [`find_density7_pattern_on`] on the 14 x 14 torus, the smallest torus
/// where a lattice works.
pub fn find_density7_pattern() -> Result<Density7Pattern> {
    find_density7_pattern_on(2)
}

fn describe_density7(lattice: Lattice7, grid: GridSpec, d: Distribution, min_weight: Rational) -> Density7Pattern {
    // Profiles are read within half the torus side, where no ball wraps.
    let max_radius = (grid.width().min(grid.height()) - 1) / 2;
    let mut by_profile: BTreeMap<Vec<u64>, (Vec<u32>, Vertex)> = BTreeMap::new();
    for coset in 1..7 {
        let Some(rep) = grid.vertices().find(|&v| lattice.class_of(v) == coset) else { continue };
        let mut profile = vec![0u64; max_radius as usize + 1];
        for (p, c) in d.units() {
            let dist = grid.dist(rep, p);
            if dist <= max_radius {
                profile[dist as usize] += c;
            }
        }
        by_profile.entry(profile).or_insert_with(|| (vec![], rep)).0.push(coset);
    }
    let mut classes: Vec<VertexClass> = by_profile
        .into_iter()
        .map(|(profile, (cosets, representative))| {
            let mut partial = Rational::zero();
            let mut radius = None;
            for (r, &count) in profile.iter().enumerate() {
                partial += dyadic(r as u32) * Rational::from_integer((count as i64).into());
                if partial >= Rational::one() {
                    radius = Some(r as u32);
                    break;
                }
            }
            VertexClass {
                weight: weight::weight(&d, representative).expect("vertex on grid"),
                cosets,
                representative,
                profile,
                radius,
                near_weight: partial,
            }
        })
        .collect();
    classes.sort_by_key(|c| c.cosets[0]);
    let density = Rational::new((d.size() as i64).into(), (grid.vertex_count() as i64).into());
    Density7Pattern { lattice, basis: lattice.basis(), grid, distribution: d, density, min_weight, classes }
}

/// The first covering lattice placed on an arbitrary grid. On a plane a
/// pebble is added on every vertex whose weight is still below one.
pub fn gen_density7(spec: &GridSpec) -> Result<Distribution> {
    let lattice = find_density7_pattern()?.lattice;
    let mut d = lattice.distribution(spec)?;
    let short: Vec<Vertex> =
        weight::all_weights(&d).into_iter().filter(|(_, w)| *w < Rational::one()).map(|(v, _)| v).collect();
    for v in short {
        d.add(v, 1)?;
    }
    Ok(d)
}

/// Tiles the `n x n` plane with copies of a solvable `m x m` distribution
/// and puts one pebble on every vertex left over.
pub fn gen_block_composition(n: u32, inner: &Distribution) -> Result<Distribution> {
    let g = inner.grid();
    if g.is_torus() || g.width() != g.height() {
        return Err(Error::Input(format!("inner distribution must live on a square plane grid, got {g}")));
    }
    let m = g.width();
    if n < m {
        return Err(Error::Input(format!("cannot compose a {m}x{m} block into a {n}x{n} grid")));
    }
    let grid = GridSpec::plane(n, n)?;
    let k = n / m;
    let mut d = Distribution::empty(grid);
    for bi in 0..k {
        for bj in 0..k {
            for (v, c) in inner.units() {
                d.add(Vertex::new(bi * m + v.col, bj * m + v.row), c)?;
            }
        }
    }
    for v in grid.vertices() {
        if v.col >= k * m || v.row >= k * m {
            d.add(v, 1)?;
        }
    }
    Ok(d)
}

/// `k^2 |inner| + r^2 + 2rkm` for `n = km + r`.
pub fn block_composition_size(n: u64, m: u64, inner_size: u64) -> u64 {
    let (k, r) = (n / m, n % m);
    k * k * inner_size + r * r + 2 * r * k * m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::frac;

    #[test]
    fn diag7_counts() {
        let d = gen_diag7(&GridSpec::torus(14, 14).unwrap()).unwrap();
        assert_eq!(d.unit_count(), 14);
        assert_eq!(d.size(), 56);
        let d = gen_diag7(&GridSpec::torus(28, 28).unwrap()).unwrap();
        assert_eq!(d.unit_count(), 56);
        assert!(gen_diag7(&GridSpec::torus(13, 13).unwrap()).is_err());
    }

    #[test]
    fn diag7_is_periodic() {
        let d = gen_diag7(&GridSpec::torus(28, 14).unwrap()).unwrap();
        assert_eq!(d.translate(2, 5).unwrap(), d);
        assert_eq!(d.translate(14, 0).unwrap(), d);
        assert_eq!(d.translate(0, 7).unwrap(), d);
    }

    #[test]
    fn row_ones_layout() {
        let g = row_ones_grid(5);
        let d = gen_row_ones(&g, 5, true).unwrap();
        assert_eq!(d.size(), 7);
        assert_eq!(d.unit_count(), 6);
        assert!(gen_row_ones(&GridSpec::plane(6, 7).unwrap(), 5, false).is_err());
    }

    #[test]
    fn fig4_base_size() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (3, 2)] {
            let d = gen_fig4(n, m, false).unwrap();
            assert_eq!(d.size(), 3 * (n as u64 + 1) * (m as u64 + 1));
        }
        assert!(gen_fig4(0, 1, false).is_err());
    }

    #[test]
    fn uniform_frac_size() {
        let d = gen_uniform_frac(&GridSpec::torus(9, 9).unwrap(), frac(1, 9)).unwrap();
        assert_eq!(d.size(), ratio::int(9));
        assert!(gen_uniform_frac(&GridSpec::torus(9, 9).unwrap(), ratio::int(0)).is_err());
    }

    #[test]
    fn lattices_are_index_seven() {
        let g = GridSpec::torus(14, 14).unwrap();
        for l in Lattice7::all() {
            assert_eq!(l.distribution(&g).unwrap().size(), 28);
            let [(a, b), (c, e)] = l.basis();
            assert_eq!((a * e - b * c).abs(), 7);
        }
    }

    #[test]
    fn block_composition_sizes() {
        let inner = Distribution::from_units(GridSpec::plane(2, 2).unwrap(), [(Vertex::new(0, 0), 2), (Vertex::new(1, 1), 1)])
            .unwrap();
        assert_eq!(gen_block_composition(2, &inner).unwrap(), inner);
        assert_eq!(gen_block_composition(4, &inner).unwrap().size(), 12);
        let d = gen_block_composition(5, &inner).unwrap();
        assert_eq!(d.size(), block_composition_size(5, 2, 3));
        assert_eq!(d.size(), 4 * 3 + 25 - 16);
    }
}

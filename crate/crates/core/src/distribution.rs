//! Pebble distributions and their line-oriented text format.
//!
//! ```text
//! # comments start with '#'
//! grid 5 5 plane
//! pebble 2 2 4
//! ```
//!
//! A `continuous` flag after the topology switches the counts to rationals
//! (`pebble 0 0 1/9`). Serialization emits pebble lines sorted by `(row, col)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::grid::{GridSpec, Topology, Vertex};
use crate::ratio::{self, Rational};

/// Integer pebble counts; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Distribution {
    grid: GridSpec,
    counts: BTreeMap<Vertex, u64>,
}

impl Distribution {
    pub fn empty(grid: GridSpec) -> Self {
        Distribution { grid, counts: BTreeMap::new() }
    }

    /// Builds a distribution from `(vertex, count)` pairs; repeated vertices add up.
    pub fn from_units<I>(grid: GridSpec, units: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, u64)>,
    {
        let mut d = Distribution::empty(grid);
        for (v, c) in units {
            d.add(v, c)?;
        }
        Ok(d)
    }

    /// Lays out units given by integer offsets on a plane grid just large
    /// enough to leave `margin` empty rows/columns around their bounding box.
    pub fn from_offsets(units: &[(i64, i64, u64)], margin: u32) -> Result<Self> {
        if units.is_empty() {
            return Err(Error::Input("no units given".into()));
        }
        let min_c = units.iter().map(|u| u.0).min().unwrap();
        let max_c = units.iter().map(|u| u.0).max().unwrap();
        let min_r = units.iter().map(|u| u.1).min().unwrap();
        let max_r = units.iter().map(|u| u.1).max().unwrap();
        let m = margin as i64;
        let grid = GridSpec::plane((max_c - min_c + 1 + 2 * m) as u32, (max_r - min_r + 1 + 2 * m) as u32)?;
        Distribution::from_units(
            grid,
            units
                .iter()
                .map(|&(c, r, k)| (Vertex::new((c - min_c + m) as u32, (r - min_r + m) as u32), k)),
        )
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn get(&self, v: Vertex) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    pub fn add(&mut self, v: Vertex, count: u64) -> Result<()> {
        self.grid.check(v)?;
        if count > 0 {
            *self.counts.entry(v).or_insert(0) += count;
        }
        Ok(())
    }

    /// Removes up to `count` pebbles from `v`.
    pub fn remove(&mut self, v: Vertex, count: u64) {
        if let Some(c) = self.counts.get_mut(&v) {
            if *c <= count {
                self.counts.remove(&v);
            } else {
                *c -= count;
            }
        }
    }

    /// Total number of pebbles `|D|`.
    pub fn size(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// The units of the distribution, in vertex order.
    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.counts.keys().copied()
    }

    pub fn units(&self) -> impl Iterator<Item = (Vertex, u64)> + '_ {
        self.counts.iter().map(|(&v, &c)| (v, c))
    }

    pub fn unit_count(&self) -> usize {
        self.counts.len()
    }

    /// Pointwise sum of two distributions on the same grid.
    pub fn combine(&self, other: &Distribution) -> Result<Distribution> {
        same_grid(&self.grid, &other.grid)?;
        let mut out = self.clone();
        for (v, c) in other.units() {
            out.add(v, c)?;
        }
        Ok(out)
    }

    /// `true` when every count of `self` is at most the matching count of `other`.
    pub fn is_dominated_by(&self, other: &Distribution) -> bool {
        self.grid == other.grid && self.units().all(|(v, c)| other.get(v) >= c)
    }

    /// The sub-distribution consisting of the single unit at `v`.
    pub fn unit_at(&self, v: Vertex) -> Distribution {
        let mut d = Distribution::empty(self.grid);
        if let Some(&c) = self.counts.get(&v) {
            d.counts.insert(v, c);
        }
        d
    }

    /// Moves every pebble by `(dc, dr)`; only defined on a torus.
    pub fn translate(&self, dc: i64, dr: i64) -> Result<Distribution> {
        if !self.grid.is_torus() {
            return Err(Error::Input("translation is only defined on a torus".into()));
        }
        let mut out = Distribution::empty(self.grid);
        for (v, c) in self.units() {
            out.add(self.grid.offset(v, dc, dr).expect("torus offsets always exist"), c)?;
        }
        Ok(out)
    }

    /// Dense counts indexed by [`GridSpec::index`].
    pub fn to_dense(&self) -> Vec<u64> {
        let mut dense = vec![0; self.grid.vertex_count()];
        for (v, c) in self.units() {
            dense[self.grid.index(v)] = c;
        }
        dense
    }

    pub fn to_continuous(&self) -> ContinuousDistribution {
        ContinuousDistribution {
            grid: self.grid,
            counts: self.units().map(|(v, c)| (v, ratio::int(c as i64))).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = header(&self.grid, false);
        for (v, c) in self.units() {
            let _ = writeln!(out, "pebble {} {} {}", v.col, v.row, c);
        }
        out
    }
}

/// Non-negative rational pebble counts; zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuousDistribution {
    grid: GridSpec,
    counts: BTreeMap<Vertex, Rational>,
}

impl ContinuousDistribution {
    pub fn empty(grid: GridSpec) -> Self {
        ContinuousDistribution { grid, counts: BTreeMap::new() }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn get(&self, v: Vertex) -> Rational {
        self.counts.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&mut self, v: Vertex, amount: Rational) -> Result<()> {
        self.grid.check(v)?;
        if amount.is_negative() {
            return Err(Error::Input(format!("negative amount {} at {v}", ratio::to_pq(&amount))));
        }
        if !amount.is_zero() {
            let entry = self.counts.entry(v).or_insert_with(Rational::zero);
            *entry += amount;
        }
        Ok(())
    }

    pub fn size(&self) -> Rational {
        self.counts.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn units(&self) -> impl Iterator<Item = (Vertex, &Rational)> + '_ {
        self.counts.iter().map(|(v, c)| (*v, c))
    }

    pub fn to_text(&self) -> String {
        let mut out = header(&self.grid, true);
        for (v, c) in self.units() {
            let text = if c.is_integer() { c.numer().to_string() } else { ratio::to_pq(c) };
            let _ = writeln!(out, "pebble {} {} {}", v.col, v.row, text);
        }
        out
    }
}

/// Either kind of distribution, as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum ParsedDistribution {
    Integer(Distribution),
    Continuous(ContinuousDistribution),
}

impl ParsedDistribution {
    pub fn grid(&self) -> &GridSpec {
        match self {
            ParsedDistribution::Integer(d) => d.grid(),
            ParsedDistribution::Continuous(d) => d.grid(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            ParsedDistribution::Integer(d) => d.to_text(),
            ParsedDistribution::Continuous(d) => d.to_text(),
        }
    }

    pub fn into_integer(self) -> Result<Distribution> {
        match self {
            ParsedDistribution::Integer(d) => Ok(d),
            ParsedDistribution::Continuous(_) => {
                Err(Error::Input("expected an integer distribution, found a continuous one".into()))
            }
        }
    }

    pub fn to_continuous(&self) -> ContinuousDistribution {
        match self {
            ParsedDistribution::Integer(d) => d.to_continuous(),
            ParsedDistribution::Continuous(d) => d.clone(),
        }
    }
}

fn header(grid: &GridSpec, continuous: bool) -> String {
    let mut out = format!("grid {} {} {}", grid.width(), grid.height(), grid.topology());
    if continuous {
        out.push_str(" continuous");
    }
    out.push('\n');
    out
}

pub(crate) fn same_grid(a: &GridSpec, b: &GridSpec) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GridMismatch(format!("{a} vs {b}")))
    }
}

/// Parses the text format. The header's `continuous` flag, or
/// `force_continuous` (used for `.cdist` files), selects rational counts.
pub fn parse_distribution(text: &str) -> Result<ParsedDistribution> {
    parse_with_mode(text, false)
}

pub fn parse_with_mode(text: &str, force_continuous: bool) -> Result<ParsedDistribution> {
    let perr = |line: usize, message: String| Error::Parse { line, message };
    let mut grid: Option<(GridSpec, bool)> = None;
    let mut integer: BTreeMap<Vertex, u64> = BTreeMap::new();
    let mut continuous: BTreeMap<Vertex, Rational> = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match (fields[0], &grid) {
            ("grid", None) => {
                if !(4..=5).contains(&fields.len()) {
                    return Err(perr(line_no, "expected `grid <width> <height> <plane|torus> [continuous]`".into()));
                }
                let w: u32 = fields[1].parse().map_err(|_| perr(line_no, format!("bad width {:?}", fields[1])))?;
                let h: u32 = fields[2].parse().map_err(|_| perr(line_no, format!("bad height {:?}", fields[2])))?;
                let topology = match fields[3] {
                    "plane" => Topology::Plane,
                    "torus" => Topology::Torus,
                    other => return Err(perr(line_no, format!("unknown topology {other:?}"))),
                };
                let cont = match fields.get(4) {
                    None => force_continuous,
                    Some(&"continuous") => true,
                    Some(other) => return Err(perr(line_no, format!("unknown header flag {other:?}"))),
                };
                let spec = GridSpec::new(w, h, topology).map_err(|e| perr(line_no, e.to_string()))?;
                grid = Some((spec, cont));
            }
            ("grid", Some(_)) => return Err(perr(line_no, "duplicate grid header".into())),
            ("pebble", None) => return Err(perr(line_no, "pebble line before grid header".into())),
            ("pebble", Some((spec, cont))) => {
                if fields.len() != 4 {
                    return Err(perr(line_no, "expected `pebble <col> <row> <count>`".into()));
                }
                let col: u32 = fields[1].parse().map_err(|_| perr(line_no, format!("bad column {:?}", fields[1])))?;
                let row: u32 = fields[2].parse().map_err(|_| perr(line_no, format!("bad row {:?}", fields[2])))?;
                let v = Vertex::new(col, row);
                if !spec.contains(v) {
                    return Err(perr(line_no, format!("vertex {v} outside the {spec} grid")));
                }
                if integer.contains_key(&v) || continuous.contains_key(&v) {
                    return Err(perr(line_no, format!("duplicate vertex {v}")));
                }
                if *cont {
                    let amount = ratio::parse(fields[3])
                        .ok_or_else(|| perr(line_no, format!("bad rational count {:?}", fields[3])))?;
                    if !amount.is_positive() {
                        return Err(perr(line_no, format!("count must be positive, got {}", fields[3])));
                    }
                    continuous.insert(v, amount);
                } else {
                    if fields[3].starts_with('-') {
                        return Err(perr(line_no, format!("negative count {}", fields[3])));
                    }
                    let count: u64 = fields[3]
                        .parse()
                        .map_err(|_| perr(line_no, format!("bad integer count {:?}", fields[3])))?;
                    if count == 0 {
                        return Err(perr(line_no, "count must be positive".into()));
                    }
                    integer.insert(v, count);
                }
            }
            (other, _) => return Err(perr(line_no, format!("unknown directive {other:?}"))),
        }
    }

    let (grid, cont) = grid.ok_or_else(|| perr(0, "missing grid header".into()))?;
    Ok(if cont {
        ParsedDistribution::Continuous(ContinuousDistribution { grid, counts: continuous })
    } else {
        ParsedDistribution::Integer(Distribution { grid, counts: integer })
    })
}

/// Canonical text form of either distribution kind.
pub fn serialize_distribution(d: &ParsedDistribution) -> String {
    d.to_text()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::frac;

    #[test]
    fn parses_integer_file() {
        let d = parse_distribution("grid 3 3 plane\npebble 1 1 4\n").unwrap().into_integer().unwrap();
        assert_eq!(d.size(), 4);
        assert_eq!(d.get(Vertex::new(1, 1)), 4);
    }

    #[test]
    fn parses_continuous_file() {
        let p = parse_distribution("# uniform\ngrid 2 2 torus continuous\npebble 0 0 1/9\n").unwrap();
        match p {
            ParsedDistribution::Continuous(c) => assert_eq!(c.get(Vertex::new(0, 0)), frac(1, 9)),
            _ => panic!("expected continuous"),
        }
    }

    #[test]
    fn rejects_bad_input_with_line_numbers() {
        let cases = [
            ("grid 3 3 plane\npebble 0 0 1\npebble 0 0 1\n", 3),
            ("grid 3 3 plane\npebble 3 0 1\n", 2),
            ("grid 3 3 plane\npebble 0 0 -1\n", 2),
            ("grid 3 3 plane\npebble 0 0 0\n", 2),
            ("grid 3 3 plane\npebble 0 0 1/9\n", 2),
            ("grid 3 3 plane\n\nstone 0 0 1\n", 3),
            ("pebble 0 0 1\n", 1),
            ("grid 3 3 cylinder\n", 1),
        ];
        for (text, line) in cases {
            match parse_distribution(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
        assert!(parse_distribution("# nothing\n").is_err());
    }

    #[test]
    fn serialization_is_sorted_by_row_then_col() {
        let grid = GridSpec::plane(4, 4).unwrap();
        let d = Distribution::from_units(grid, [(Vertex::new(3, 0), 1), (Vertex::new(0, 2), 2), (Vertex::new(1, 0), 5)])
            .unwrap();
        assert_eq!(d.to_text(), "grid 4 4 plane\npebble 1 0 5\npebble 3 0 1\npebble 0 2 2\n");
    }

    #[test]
    fn from_offsets_centres_with_margin() {
        let d = Distribution::from_offsets(&[(0, 0, 2), (1, 0, 2)], 3).unwrap();
        assert_eq!(d.grid(), &GridSpec::plane(8, 7).unwrap());
        assert_eq!(d.get(Vertex::new(3, 3)), 2);
        assert_eq!(d.get(Vertex::new(4, 3)), 2);
    }
}

//! Grid and torus geometry.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Plane,
    Torus,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Topology::Plane => f.write_str("plane"),
            Topology::Torus => f.write_str("torus"),
        }
    }
}

/// A vertex of a grid. Ordered by `(row, col)`, which is also the order of
/// [`GridSpec::index`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub col: u32,
    pub row: u32,
}

impl Vertex {
    pub const fn new(col: u32, row: u32) -> Self {
        Vertex { col, row }
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.row, self.col).cmp(&(other.row, other.col))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// A finite `width × height` grid, optionally wrapped into a torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    width: u32,
    height: u32,
    topology: Topology,
}

impl GridSpec {
    pub fn new(width: u32, height: u32, topology: Topology) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Input(format!("grid dimensions must be positive, got {width}x{height}")));
        }
        Ok(GridSpec { width, height, topology })
    }

    pub fn plane(width: u32, height: u32) -> Result<Self> {
        Self::new(width, height, Topology::Plane)
    }

    pub fn torus(width: u32, height: u32) -> Result<Self> {
        Self::new(width, height, Topology::Torus)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn is_torus(&self) -> bool {
        self.topology == Topology::Torus
    }

    pub fn vertex_count(&self) -> usize {
        self.width as usize * self.height as usize
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.col < self.width && v.row < self.height
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "vertex {v} is outside the {}x{} grid",
                self.width, self.height
            )))
        }
    }

    pub fn index(&self, v: Vertex) -> usize {
        v.row as usize * self.width as usize + v.col as usize
    }

    pub fn vertex(&self, index: usize) -> Vertex {
        let w = self.width as usize;
        Vertex::new((index % w) as u32, (index / w) as u32)
    }

    /// All vertices in `(row, col)` order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(move |i| self.vertex(i))
    }

    fn axis_distance(&self, a: u32, b: u32, len: u32) -> u32 {
        let d = a.abs_diff(b);
        match self.topology {
            Topology::Plane => d,
            Topology::Torus => d.min(len - d),
        }
    }

    /// Distance without bounds checks; callers guarantee both vertices are in range.
    pub(crate) fn dist(&self, u: Vertex, v: Vertex) -> u32 {
        self.axis_distance(u.col, v.col, self.width) + self.axis_distance(u.row, v.row, self.height)
    }

    /// Shortest-path distance in the grid graph (Manhattan, wrapped per axis on a torus).
    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<u32> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.dist(u, v))
    }

    /// The largest distance between any two vertices.
    pub fn diameter(&self) -> u32 {
        match self.topology {
            Topology::Plane => (self.width - 1) + (self.height - 1),
            Topology::Torus => self.width / 2 + self.height / 2,
        }
    }

    /// Distinct neighbours of `v`, in vertex order. On narrow tori the two
    /// wrapped neighbours may coincide or equal `v`; both cases are dropped.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(4);
        let (w, h) = (self.width, self.height);
        let torus = self.is_torus();
        let mut push = |c: u32, r: u32| {
            let u = Vertex::new(c, r);
            if u != v && !out.contains(&u) {
                out.push(u);
            }
        };
        if v.row > 0 {
            push(v.col, v.row - 1);
        } else if torus {
            push(v.col, h - 1);
        }
        if v.col > 0 {
            push(v.col - 1, v.row);
        } else if torus {
            push(w - 1, v.row);
        }
        if v.col + 1 < w {
            push(v.col + 1, v.row);
        } else if torus {
            push(0, v.row);
        }
        if v.row + 1 < h {
            push(v.col, v.row + 1);
        } else if torus {
            push(v.col, 0);
        }
        out.sort();
        out
    }

    pub fn are_adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u != v && self.dist(u, v) == 1
    }

    /// Vertices within `radius` of `center`.
    pub fn ball(&self, center: Vertex, radius: u32) -> Result<BTreeSet<Vertex>> {
        self.check(center)?;
        let r = radius as i64;
        let mut out = BTreeSet::new();
        for dr in -r..=r {
            let rem = r - dr.abs();
            for dc in -rem..=rem {
                if let Some(u) = self.offset(center, dc, dr) {
                    out.insert(u);
                }
            }
        }
        Ok(out)
    }

    /// `v + (dc, dr)`, wrapping on a torus and `None` off the edge of a plane.
    pub fn offset(&self, v: Vertex, dc: i64, dr: i64) -> Option<Vertex> {
        let (w, h) = (self.width as i64, self.height as i64);
        let c = v.col as i64 + dc;
        let r = v.row as i64 + dr;
        match self.topology {
            Topology::Torus => Some(Vertex::new(c.rem_euclid(w) as u32, r.rem_euclid(h) as u32)),
            Topology::Plane => {
                if (0..w).contains(&c) && (0..h).contains(&r) {
                    Some(Vertex::new(c as u32, r as u32))
                } else {
                    None
                }
            }
        }
    }

    /// Distance from `v` to the nearest border row or column (`u32::MAX` on a torus).
    pub fn border_distance(&self, v: Vertex) -> u32 {
        match self.topology {
            Topology::Torus => u32::MAX,
            Topology::Plane => v.col.min(v.row).min(self.width - 1 - v.col).min(self.height - 1 - v.row),
        }
    }

    pub fn is_border(&self, v: Vertex) -> bool {
        self.border_distance(v) == 0
    }

    /// The symmetries of the grid that map it onto itself, as vertex maps.
    /// Square grids get the full dihedral group of order 8, rectangles the
    /// Klein four-group.
    pub fn symmetries(&self) -> Vec<Vec<usize>> {
        let (w, h) = (self.width, self.height);
        let mut maps: Vec<Box<dyn Fn(Vertex) -> Vertex>> = vec![
            Box::new(|v| v),
            Box::new(move |v: Vertex| Vertex::new(w - 1 - v.col, v.row)),
            Box::new(move |v: Vertex| Vertex::new(v.col, h - 1 - v.row)),
            Box::new(move |v: Vertex| Vertex::new(w - 1 - v.col, h - 1 - v.row)),
        ];
        if w == h {
            maps.push(Box::new(|v: Vertex| Vertex::new(v.row, v.col)));
            maps.push(Box::new(move |v: Vertex| Vertex::new(w - 1 - v.row, v.col)));
            maps.push(Box::new(move |v: Vertex| Vertex::new(v.row, w - 1 - v.col)));
            maps.push(Box::new(move |v: Vertex| Vertex::new(w - 1 - v.row, w - 1 - v.col)));
        }
        maps.iter()
            .map(|f| self.vertices().map(|v| self.index(f(v))).collect())
            .collect()
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.width, self.height, self.topology)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    fn bfs_distances(spec: &GridSpec, from: Vertex) -> Vec<u32> {
        let mut dist = vec![u32::MAX; spec.vertex_count()];
        dist[spec.index(from)] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let d = dist[spec.index(v)];
            for u in spec.neighbors(v) {
                if dist[spec.index(u)] == u32::MAX {
                    dist[spec.index(u)] = d + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    #[test]
    fn distance_examples() {
        let plane = GridSpec::plane(10, 10).unwrap();
        assert_eq!(plane.distance(Vertex::new(0, 0), Vertex::new(2, 3)).unwrap(), 5);
        assert_eq!(plane.distance(Vertex::new(4, 7), Vertex::new(4, 7)).unwrap(), 0);
        let torus = GridSpec::torus(5, 5).unwrap();
        assert_eq!(torus.distance(Vertex::new(0, 0), Vertex::new(4, 4)).unwrap(), 2);
        assert!(plane.distance(Vertex::new(10, 0), Vertex::new(0, 0)).is_err());
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(GridSpec::plane(0, 3).is_err());
        assert!(GridSpec::torus(3, 0).is_err());
    }

    #[test]
    fn distance_matches_bfs_up_to_8x8() {
        for topology in [Topology::Plane, Topology::Torus] {
            for w in 1..=8 {
                for h in 1..=8 {
                    let spec = GridSpec::new(w, h, topology).unwrap();
                    for from in spec.vertices() {
                        let bfs = bfs_distances(&spec, from);
                        for to in spec.vertices() {
                            assert_eq!(spec.dist(from, to), bfs[spec.index(to)], "{spec} {from} {to}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ball_examples() {
        let spec = GridSpec::plane(9, 9).unwrap();
        let c = Vertex::new(4, 4);
        assert_eq!(spec.ball(c, 0).unwrap(), BTreeSet::from([c]));
        assert_eq!(spec.ball(c, 2).unwrap().len(), 13);
        assert_eq!(spec.ball(Vertex::new(0, 0), 2).unwrap().len(), 6);
    }

    #[test]
    fn interior_ball_size_formula() {
        let spec = GridSpec::plane(21, 21).unwrap();
        let c = Vertex::new(10, 10);
        for r in 0..=10u32 {
            assert_eq!(spec.ball(c, r).unwrap().len() as u32, 2 * r * r + 2 * r + 1);
        }
    }

    #[test]
    fn narrow_torus_neighbours_are_distinct() {
        let spec = GridSpec::torus(2, 1).unwrap();
        assert_eq!(spec.neighbors(Vertex::new(0, 0)), vec![Vertex::new(1, 0)]);
        let spec = GridSpec::torus(1, 1).unwrap();
        assert!(spec.neighbors(Vertex::new(0, 0)).is_empty());
    }

    #[test]
    fn symmetries_preserve_distance() {
        for spec in [GridSpec::plane(4, 4).unwrap(), GridSpec::plane(3, 5).unwrap()] {
            let syms = spec.symmetries();
            assert_eq!(syms.len(), if spec.width() == spec.height() { 8 } else { 4 });
            for map in &syms {
                for u in spec.vertices() {
                    for v in spec.vertices() {
                        let (mu, mv) = (spec.vertex(map[spec.index(u)]), spec.vertex(map[spec.index(v)]));
                        assert_eq!(spec.dist(u, v), spec.dist(mu, mv));
                    }
                }
            }
        }
    }
}

//! Dense exact-rational simplex for small linear programs in the form
//!
//! ```text
//! minimize c·x   subject to   A x >= b,  x >= 0
//! ```
//!
//! with dual `maximize b·y  subject to  Aᵀy <= c, y >= 0`. Pivoting follows
//! Bland's rule, so the method terminates without any cycling safeguards.
//! Every optimal answer carries a dual vector that certifies it, infeasible
//! problems carry a Farkas ray and unbounded ones a primal ray.

use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::distribution::ContinuousDistribution;
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::ratio::{self, dyadic, frac, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpProblem {
    #[serde(with = "ratio::serde_pq_vec")]
    pub objective: Vec<Rational>,
    #[serde(with = "ratio::serde_pq_matrix")]
    pub constraints: Vec<Vec<Rational>>,
    #[serde(with = "ratio::serde_pq_vec")]
    pub rhs: Vec<Rational>,
}

impl LpProblem {
    pub fn new(objective: Vec<Rational>, constraints: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Result<Self> {
        let p = LpProblem { objective, constraints, rhs };
        p.validate()?;
        Ok(p)
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.constraints.len() != self.rhs.len() {
            return Err(Error::Input(format!(
                "{} constraint rows but {} right-hand sides",
                self.constraints.len(),
                self.rhs.len()
            )));
        }
        for (i, row) in self.constraints.iter().enumerate() {
            if row.len() != self.objective.len() {
                return Err(Error::Input(format!(
                    "constraint row {i} has {} entries, expected {}",
                    row.len(),
                    self.objective.len()
                )));
            }
        }
        Ok(())
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    /// `A x >= b` and `x >= 0`.
    pub fn is_primal_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && x.iter().all(|v| !v.is_negative())
            && self.constraints.iter().zip(&self.rhs).all(|(row, b)| dot(row, x) >= *b)
    }

    /// `Aᵀ y <= c` and `y >= 0`.
    pub fn is_dual_feasible(&self, y: &[Rational]) -> bool {
        y.len() == self.num_constraints()
            && y.iter().all(|v| !v.is_negative())
            && (0..self.num_vars()).all(|j| {
                let col: Rational = self
                    .constraints
                    .iter()
                    .zip(y)
                    .fold(Rational::zero(), |acc, (row, yi)| acc + &row[j] * yi);
                col <= self.objective[j]
            })
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    #[serde(with = "ratio::serde_pq_vec")]
    pub primal: Vec<Rational>,
    #[serde(with = "ratio::serde_pq_vec")]
    pub dual: Vec<Rational>,
    #[serde(with = "ratio::serde_pq")]
    pub objective_value: Rational,
    /// Farkas vector `y >= 0, Aᵀy <= 0, b·y > 0` when infeasible; primal
    /// direction `d >= 0, A d >= 0, c·d < 0` when unbounded.
    #[serde(with = "ratio::serde_pq_vec", default)]
    pub ray: Vec<Rational>,
    pub pivots: usize,
}

/// True iff `primal` is feasible, `dual` is dual feasible and the two
/// objective values coincide, which proves both optimal.
pub fn verify_certificate(p: &LpProblem, primal: &[Rational], dual: &[Rational]) -> bool {
    p.validate().is_ok()
        && p.is_primal_feasible(primal)
        && p.is_dual_feasible(dual)
        && p.objective_at(primal) == dot(&p.rhs, dual)
}

/// Checks whatever certificate a solution carries.
pub fn verify_solution(p: &LpProblem, s: &LpSolution) -> bool {
    match s.status {
        LpStatus::Optimal => verify_certificate(p, &s.primal, &s.dual) && s.objective_value == p.objective_at(&s.primal),
        LpStatus::Infeasible => {
            let y = &s.ray;
            y.len() == p.num_constraints()
                && y.iter().all(|v| !v.is_negative())
                && dot(&p.rhs, y).is_positive()
                && (0..p.num_vars()).all(|j| {
                    !p.constraints.iter().zip(y).fold(Rational::zero(), |acc, (row, yi)| acc + &row[j] * yi).is_positive()
                })
        }
        LpStatus::Unbounded => {
            let d = &s.ray;
            d.len() == p.num_vars()
                && d.iter().all(|v| !v.is_negative())
                && p.objective_at(d).is_negative()
                && p.constraints.iter().all(|row| !dot(row, d).is_negative())
                && p.is_primal_feasible(&s.primal)
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    /// Reduced costs; the last entry is minus the objective value.
    obj: Vec<Rational>,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let inv = Rational::one() / &self.rows[r][j];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        for (k, row) in self.rows.iter_mut().enumerate() {
            if k == r || row[j].is_zero() {
                continue;
            }
            let f = row[j].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        if !self.obj[j].is_zero() {
            let f = self.obj[j].clone();
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = j;
        self.pivots += 1;
    }

    /// Runs Bland's rule over columns `< allowed`. Returns the entering
    /// column with no positive entries if the objective is unbounded.
    fn optimize(&mut self, allowed: usize) -> Option<usize> {
        let rhs = self.rhs_col();
        loop {
            let j = (0..allowed).find(|&j| self.obj[j].is_negative())?;
            let mut best: Option<(usize, Rational)> = None;
            for (k, row) in self.rows.iter().enumerate() {
                if !row[j].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[j];
                let better = match &best {
                    None => true,
                    Some((bk, br)) => ratio < *br || (ratio == *br && self.basis[k] < self.basis[*bk]),
                };
                if better {
                    best = Some((k, ratio));
                }
            }
            match best {
                None => return Some(j),
                Some((r, _)) => self.pivot(r, j),
            }
        }
    }

    /// `cost_B B^{-1}`, reading `B^{-1}` from the identity columns the
    /// tableau started with.
    fn multipliers(&self, costs: &[Rational], identity_cols: &[usize]) -> Vec<Rational> {
        identity_cols
            .iter()
            .map(|&col| {
                self.rows
                    .iter()
                    .zip(&self.basis)
                    .fold(Rational::zero(), |acc, (row, &b)| acc + &costs[b] * &row[col])
            })
            .collect()
    }
}

/// Solves `min c·x, A x >= b, x >= 0` exactly.
pub fn solve(p: &LpProblem) -> Result<LpSolution> {
    p.validate()?;
    let n = p.num_vars();
    let m = p.num_constraints();

    // Columns: x (n), surplus s (m), artificial a (m), rhs.
    // Row i reads sign_i (A_i x - s_i) + a_i = sign_i b_i with sign_i b_i >= 0.
    let slack0 = n;
    let art0 = n + m;
    let width = n + 2 * m + 1;
    let rhs = width - 1;
    let signs: Vec<bool> = p.rhs.iter().map(|b| b.is_negative()).collect();

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let flip = signs[i];
        let mut row = vec![Rational::zero(); width];
        for j in 0..n {
            row[j] = if flip { -p.constraints[i][j].clone() } else { p.constraints[i][j].clone() };
        }
        row[slack0 + i] = if flip { Rational::one() } else { -Rational::one() };
        row[art0 + i] = Rational::one();
        row[rhs] = if flip { -p.rhs[i].clone() } else { p.rhs[i].clone() };
        rows.push(row);
        // A flipped row already has a +1 surplus column to start from.
        basis.push(if flip { slack0 + i } else { art0 + i });
    }

    // Phase 1: minimise the sum of artificials still in the basis.
    let mut phase1_costs = vec![Rational::zero(); width - 1];
    for i in 0..m {
        if !signs[i] {
            phase1_costs[art0 + i] = Rational::one();
        }
    }
    let mut obj = vec![Rational::zero(); width];
    obj[..width - 1].clone_from_slice(&phase1_costs);
    for (i, row) in rows.iter().enumerate() {
        if !signs[i] {
            for (o, v) in obj.iter_mut().zip(row) {
                *o -= v;
            }
        }
    }
    // Artificials of flipped rows are never allowed to enter.
    let mut t = Tableau { rows, obj, basis, pivots: 0 };
    for i in 0..m {
        if signs[i] {
            t.obj[art0 + i] = Rational::zero();
        }
    }
    let art_cols: Vec<usize> = (art0..art0 + m).collect();
    t.optimize(art0);
    let phase1_value = -t.obj[rhs].clone();
    if phase1_value.is_positive() {
        let pi = t.multipliers(&phase1_costs, &art_cols);
        let ray = pi.iter().zip(&signs).map(|(v, &flip)| if flip { -v.clone() } else { v.clone() }).collect();
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            primal: vec![],
            dual: vec![],
            objective_value: Rational::zero(),
            ray,
            pivots: t.pivots,
        });
    }

    // Drive zero-level artificials out of the basis where possible.
    for r in 0..m {
        if t.basis[r] >= art0 {
            if let Some(j) = (0..art0).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            }
        }
    }

    // Phase 2.
    let mut costs = vec![Rational::zero(); width - 1];
    costs[..n].clone_from_slice(&p.objective);
    let mut obj = vec![Rational::zero(); width];
    obj[..width - 1].clone_from_slice(&costs);
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if !costs[b].is_zero() {
            let f = costs[b].clone();
            for (o, v) in obj.iter_mut().zip(row) {
                *o -= &f * v;
            }
        }
    }
    t.obj = obj;
    let unbounded = t.optimize(art0);

    let mut primal = vec![Rational::zero(); n];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if b < n {
            primal[b] = row[rhs].clone();
        }
    }

    if let Some(j) = unbounded {
        let mut dir = vec![Rational::zero(); n];
        if j < n {
            dir[j] = Rational::one();
        }
        for (row, &b) in t.rows.iter().zip(&t.basis) {
            if b < n {
                dir[b] = -row[j].clone();
            }
        }
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            objective_value: p.objective_at(&primal),
            primal,
            dual: vec![],
            ray: dir,
            pivots: t.pivots,
        });
    }

    let pi = t.multipliers(&costs, &art_cols);
    let dual: Vec<Rational> = pi.iter().zip(&signs).map(|(v, &flip)| if flip { -v.clone() } else { v.clone() }).collect();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        objective_value: p.objective_at(&primal),
        primal,
        dual,
        ray: vec![],
        pivots: t.pivots,
    })
}

/// Weight contributions to the distance-two neighbourhood of a lone pebble:
/// `x` from the four regions behind its neighbours, `y` from the four
/// diagonal regions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExcessRegionProfile {
    #[serde(with = "ratio::serde_pq_vec")]
    pub x: Vec<Rational>,
    #[serde(with = "ratio::serde_pq_vec")]
    pub y: Vec<Rational>,
}

impl ExcessRegionProfile {
    pub fn from_vector(v: &[Rational]) -> Result<Self> {
        if v.len() != 8 {
            return Err(Error::Input(format!("expected 8 region values, got {}", v.len())));
        }
        Ok(ExcessRegionProfile { x: v[..4].to_vec(), y: v[4..].to_vec() })
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        self.x.iter().chain(&self.y).cloned().collect()
    }

    /// Excess forced at the pebble's own vertex: `(sum x)/2 + (sum y)/4`.
    pub fn excess(&self) -> Rational {
        let sx = self.x.iter().fold(Rational::zero(), |a, v| a + v);
        let sy = self.y.iter().fold(Rational::zero(), |a, v| a + v);
        sx * frac(1, 2) + sy * frac(1, 4)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.x.iter().chain(&self.y).all(|v| !v.is_negative())
    }
}

/// Coefficient pattern of one covering constraint: contributions of
/// `(x1..x4, y1..y4)` plus the lone pebble's own share.
fn lemma2_rows(y_block_first_row: [Rational; 4]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let h = frac(1, 2);
    let q = frac(1, 4);
    let e = frac(1, 8);
    let rot = |v: &[Rational; 4], s: usize| -> Vec<Rational> { (0..4).map(|i| v[(i + 4 - s) % 4].clone()).collect() };

    let neighbour_x = [Rational::one(), q.clone(), q.clone(), q.clone()];
    let neighbour_y = [h.clone(), e.clone(), e.clone(), h.clone()];
    let diagonal_x = [h.clone(), h.clone(), e.clone(), e.clone()];

    let mut rows = Vec::with_capacity(8);
    let mut rhs = Vec::with_capacity(8);
    for s in 0..4 {
        let mut row = rot(&neighbour_x, s);
        row.extend(rot(&neighbour_y, s));
        rows.push(row);
        rhs.push(h.clone());
    }
    for s in 0..4 {
        let mut row = rot(&diagonal_x, s);
        row.extend(rot(&y_block_first_row, s));
        rows.push(row);
        rhs.push(Rational::one() - &q);
    }
    (rows, rhs)
}

fn lemma2_objective() -> Vec<Rational> {
    let mut c = vec![frac(1, 2); 4];
    c.extend(vec![frac(1, 4); 4]);
    c
}

/// Minimum excess a single pebble forces at its own vertex when its
/// distance-two neighbourhood must reach weight one. Variables are
/// `(x1..x4, y1..y4)`; each row is one neighbourhood vertex with the lone
/// pebble's share (1/2 at distance one, 1/4 at distance two) moved to the
/// right-hand side. The eight rows are cyclic shifts of two patterns.
pub fn lemma2_problem() -> LpProblem {
    let y_diag = [Rational::one(), frac(1, 4), frac(1, 16), frac(1, 4)];
    let (rows, rhs) = lemma2_rows(y_diag);
    LpProblem::new(lemma2_objective(), rows, rhs).expect("well-formed")
}

/// The same system with the first diagonal row carrying `1/8` instead of
/// `1/4` on `y4`, as it is sometimes quoted. Its optimum is 114/233.
pub fn lemma2_problem_as_printed() -> LpProblem {
    let mut p = lemma2_problem();
    p.constraints[4][7] = frac(1, 8);
    p
}

/// Optimum of [`lemma2_problem`], computed once.
pub fn lemma2_minimum() -> Rational {
    static MIN: OnceLock<Rational> = OnceLock::new();
    MIN.get_or_init(|| {
        let s = solve(&lemma2_problem()).expect("lemma2 problem is well-formed");
        assert_eq!(s.status, LpStatus::Optimal);
        s.objective_value
    })
    .clone()
}

/// Largest grid the fractional pebbling LP is attempted on.
pub const FRACTIONAL_LP_MAX_VERTICES: usize = 196;

/// The covering LP `min sum D(v)` subject to `W_D(u) >= 1` for every `u`.
pub fn fractional_pebbling_problem(spec: &GridSpec) -> LpProblem {
    let vertices: Vec<_> = spec.vertices().collect();
    let rows = vertices
        .iter()
        .map(|&u| vertices.iter().map(|&v| dyadic(spec.dist(u, v))).collect())
        .collect();
    LpProblem {
        objective: vec![Rational::one(); vertices.len()],
        constraints: rows,
        rhs: vec![Rational::one(); vertices.len()],
    }
}

/// Size of the smallest continuous distribution with weight at least one
/// everywhere, with an optimal distribution.
pub fn fractional_optimal_pebbling(spec: &GridSpec) -> Result<(Rational, ContinuousDistribution)> {
    if spec.vertex_count() > FRACTIONAL_LP_MAX_VERTICES {
        return Err(Error::ScaleLimit(format!(
            "{spec} has {} vertices; the fractional LP is limited to {FRACTIONAL_LP_MAX_VERTICES}",
            spec.vertex_count()
        )));
    }
    let problem = fractional_pebbling_problem(spec);
    let solution = solve(&problem)?;
    if solution.status != LpStatus::Optimal {
        return Err(Error::SearchFailed(format!("fractional LP on {spec} ended {:?}", solution.status)));
    }
    let mut witness = ContinuousDistribution::empty(*spec);
    for (i, value) in solution.primal.iter().enumerate() {
        witness.add(spec.vertex(i), value.clone())?;
    }
    Ok((solution.objective_value, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::int;

    fn lp(c: &[i64], a: &[&[i64]], b: &[i64]) -> LpProblem {
        LpProblem::new(
            c.iter().map(|&v| int(v)).collect(),
            a.iter().map(|row| row.iter().map(|&v| int(v)).collect()).collect(),
            b.iter().map(|&v| int(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn trivial_optimum() {
        let p = lp(&[1], &[&[1]], &[3]);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective_value, int(3));
        assert!(verify_solution(&p, &s));
    }

    #[test]
    fn unbounded_below() {
        let p = lp(&[-1], &[&[1]], &[0]);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Unbounded);
        assert!(verify_solution(&p, &s));
    }

    #[test]
    fn infeasible_system() {
        // x >= 2 and -x >= -1.
        let p = lp(&[1], &[&[1], &[-1]], &[2, -1]);
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Infeasible);
        assert!(verify_solution(&p, &s));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let p = LpProblem { objective: vec![int(1)], constraints: vec![vec![int(1), int(2)]], rhs: vec![int(1)] };
        assert!(solve(&p).is_err());
        assert!(!verify_certificate(&p, &[int(1)], &[int(1)]));
    }

    #[test]
    fn lemma2_has_minimum_twelve_over_twenty_five() {
        let p = lemma2_problem();
        let s = solve(&p).unwrap();
        assert_eq!(s.status, LpStatus::Optimal);
        assert_eq!(s.objective_value, frac(12, 25));
        assert!(verify_certificate(&p, &s.primal, &s.dual));
    }

    #[test]
    fn lemma2_claimed_minimiser_is_feasible_and_optimal() {
        let p = lemma2_problem();
        let mut point = vec![int(0); 4];
        point.extend(vec![frac(12, 25); 4]);
        assert!(p.is_primal_feasible(&point));
        assert_eq!(p.objective_at(&point), frac(12, 25));
        // Every diagonal row is tight at that point.
        for i in 4..8 {
            assert_eq!(dot(&p.constraints[i], &point), p.rhs[i]);
        }
        let profile = ExcessRegionProfile::from_vector(&point).unwrap();
        assert_eq!(profile.excess(), frac(12, 25));
    }

    #[test]
    fn lemma2_as_printed_differs() {
        let p = lemma2_problem_as_printed();
        let s = solve(&p).unwrap();
        assert_eq!(s.objective_value, frac(114, 233));
        let mut point = vec![int(0); 4];
        point.extend(vec![frac(12, 25); 4]);
        assert!(!p.is_primal_feasible(&point));
    }

    #[test]
    fn certificate_rejects_perturbation_and_infeasible_points() {
        let p = lemma2_problem();
        let s = solve(&p).unwrap();
        let mut bumped = s.primal.clone();
        bumped[0] += frac(1, 100);
        assert!(!verify_certificate(&p, &bumped, &s.dual));
        assert!(!verify_certificate(&p, &vec![int(0); 8], &s.dual));
    }

    #[test]
    fn fractional_single_vertex() {
        let (value, witness) = fractional_optimal_pebbling(&GridSpec::plane(1, 1).unwrap()).unwrap();
        assert_eq!(value, int(1));
        assert_eq!(witness.size(), int(1));
    }

    #[test]
    fn fractional_scale_limit() {
        assert!(matches!(
            fractional_optimal_pebbling(&GridSpec::torus(15, 15).unwrap()),
            Err(Error::ScaleLimit(_))
        ));
    }
}

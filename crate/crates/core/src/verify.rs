//! Reproduces the published numeric claims and records each comparison.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::constructions::{self, fig4_grid};
use crate::distribution::Distribution;
use crate::error::Result;
use crate::grid::{GridSpec, Vertex};
use crate::lp::{self, LpStatus};
use crate::optimal;
use crate::ratio::{dyadic, frac, int, to_pq, Rational};
use crate::reach::Engine;
use crate::weight::{self, WeightMode};

pub const REPORT_SCHEMA: &str = "pebblekit.verification.v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scale {
    Small,
    FullDesk,
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated in the published text.
    Published,
    /// Immediate from a definition.
    Trivial,
    /// Computed here by an independent route.
    Derived,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    /// The claim being checked, in words.
    pub anchor: String,
    pub source: Source,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub scale: Scale,
    pub passed: usize,
    pub failed: usize,
    pub all_passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {:<40} expected {:<16} got {:<16} ({:.1} ms)\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.expected,
                c.computed,
                c.runtime_ms
            ));
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

struct Runner<'a> {
    engine: &'a Engine,
    checks: Vec<Check>,
}

impl Runner<'_> {
    /// `f` returns `(computed, pass)`; an error is recorded as a failure.
    fn check<F>(&mut self, id: &str, anchor: &str, source: Source, expected: impl Into<String>, f: F)
    where
        F: FnOnce(&Engine) -> Result<(String, bool)>,
    {
        let start = Instant::now();
        let (computed, pass) = match f(self.engine) {
            Ok(v) => v,
            Err(e) => (format!("error: {e}"), false),
        };
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            source,
            expected: expected.into(),
            computed,
            pass,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }

    fn rational(&mut self, id: &str, anchor: &str, source: Source, expected: Rational, f: impl FnOnce(&Engine) -> Result<Rational>) {
        let want = to_pq(&expected);
        self.check(id, anchor, source, want, |e| {
            let got = f(e)?;
            Ok((to_pq(&got), got == expected))
        });
    }

    fn truth(&mut self, id: &str, anchor: &str, source: Source, f: impl FnOnce(&Engine) -> Result<bool>) {
        self.check(id, anchor, source, "true", |e| {
            let got = f(e)?;
            Ok((got.to_string(), got))
        });
    }
}

fn r(n: u64, d: u64) -> Rational {
    Rational::new((n as i64).into(), (d as i64).into())
}

pub fn unit2() -> Distribution {
    Distribution::from_offsets(&[(0, 0, 2)], 3).expect("fits")
}

pub fn two_adjacent_unit2() -> Distribution {
    Distribution::from_offsets(&[(0, 0, 2), (1, 0, 2)], 3).expect("fits")
}

pub fn verify_paper(engine: &Engine, scale: Scale) -> VerificationReport {
    let mut run = Runner { engine, checks: vec![] };
    use Source::*;

    run.check("unit2-coverage", "a unit of two covers five vertices, ratio 2.5", Published, "5, 5/2", |e| {
        let c = e.coverage_with_margin(&unit2(), 2)?;
        Ok((format!("{}, {}", c.cov, to_pq(&c.ratio)), c.cov == 5 && c.ratio == frac(5, 2)))
    });
    run.check("two-adjacent-2-units-coverage", "two adjacent units of two have covering ratio 2", Published, "8, 2/1", |e| {
        let c = e.coverage_with_margin(&two_adjacent_unit2(), 2)?;
        Ok((format!("{}, {}", c.cov, to_pq(&c.ratio)), c.cov == 8 && c.ratio == int(2)))
    });
    run.rational("unit2-ceiling = 17/2", "covering ratio ceiling of a unit of two is 8.5", Published, frac(17, 2), |_| {
        weight::ceiling_infinite(&unit2())
    });
    run.rational(
        "two-adjacent-2-units ceiling = 29/4",
        "ceiling of two adjacent units of two is 7.25",
        Published,
        frac(29, 4),
        |_| weight::ceiling_infinite(&two_adjacent_unit2()),
    );
    run.rational("unit4-ceiling", "ceiling of a unit of four", Derived, frac(29, 4), |_| {
        weight::ceiling_infinite(&Distribution::from_offsets(&[(0, 0, 4)], 3)?)
    });
    run.rational("marginal-ceiling-1-to-2", "marginal ceiling from one pebble to two", Derived, int(8), |_| {
        let one = Distribution::from_offsets(&[(0, 0, 1)], 3)?;
        weight::marginal_covering_ratio_ceiling(&one, &unit2(), WeightMode::InfiniteAnalytic)
    });
    run.rational("marginal-ratio-unit2-pair", "marginal ratio of a second adjacent unit of two", Derived, frac(3, 2), |e| {
        let pair = two_adjacent_unit2();
        let single = Distribution::from_units(*pair.grid(), [(Vertex::new(3, 3), 2)])?;
        e.marginal_covering_ratio(&single, &pair)
    });

    run.check("lemma2-lp = 12/25", "minimum excess forced at a lone pebble is 12/25", Published, "12/25, certified", |_| {
        let p = lp::lemma2_problem();
        let s = lp::solve(&p)?;
        let ok = s.status == LpStatus::Optimal && lp::verify_certificate(&p, &s.primal, &s.dual);
        Ok((format!("{}, {}", to_pq(&s.objective_value), if ok { "certified" } else { "uncertified" }), ok && s.objective_value == frac(12, 25)))
    });
    run.truth("lemma2-minimiser", "the minimum is attained at x = 0, y = 12/25", Published, |_| {
        let p = lp::lemma2_problem();
        let mut point = vec![Rational::zero(); 4];
        point.extend(vec![frac(12, 25); 4]);
        Ok(p.is_primal_feasible(&point) && p.objective_at(&point) == frac(12, 25))
    });
    run.rational("ifcov-upper-bound = 213/25", "9 - 12/25 = 8.52", Published, frac(213, 25), |_| {
        Ok(int(9) - lp::lemma2_minimum())
    });
    run.check("single-pebble-total", "one pebble contributes total weight 9", Published, "within 2^-20 of 9", |_| {
        let gap = int(9) - weight::single_pebble_weight_total(30);
        Ok((format!("9 - {}", to_pq(&gap)), gap >= Rational::zero() && gap < dyadic(20)))
    });

    let fig4_sizes: &[(u32, u32)] = &[(1, 1), (2, 1), (1, 2), (2, 2)];
    for &(n, m) in fig4_sizes {
        fig4_checks(&mut run, n, m);
    }
    run.check("fig4-2-2-monotone", "ratio rises while the ceiling falls as units are added", Published, "strict", |e| {
        let aug = constructions::fig4_augmentation(e, 2, 2)?;
        let mut d = constructions::gen_fig4(2, 2, false)?;
        let mut ceilings = vec![weight::covering_ratio_ceiling(&d)?];
        for &u in &aug.units {
            d.add(u, 2)?;
            ceilings.push(weight::covering_ratio_ceiling(&d)?);
        }
        let ratios_up = aug.ratios.windows(2).all(|w| w[0] < w[1]);
        let ceil_down = ceilings.windows(2).all(|w| w[0] > w[1]);
        let text = format!(
            "ratios {} ceilings {}",
            aug.ratios.iter().map(to_pq).collect::<Vec<_>>().join(","),
            ceilings.iter().map(to_pq).collect::<Vec<_>>().join(",")
        );
        Ok((text, ratios_up && ceil_down))
    });

    let diag_sides: &[u32] = match scale {
        Scale::Small => &[14],
        Scale::FullDesk => &[14, 28],
    };
    for &side in diag_sides {
        run.check(
            &format!("diag7-torus-{side}"),
            "units of four on every other vertex of every seventh diagonal give ratio 3.5",
            Published,
            format!("{}, solvable, 7/2", side * side * 2 / 7),
            |e| {
                let d = constructions::gen_diag7(&GridSpec::torus(side, side)?)?;
                let c = e.coverage(&d)?;
                let ok = d.size() == (side * side * 2 / 7) as u64 && c.is_complete() && c.ratio == frac(7, 2);
                Ok((format!("{}, {}, {}", d.size(), if c.is_complete() { "solvable" } else { "unsolvable" }, to_pq(&c.ratio)), ok))
            },
        );
    }

    let lp_sides: &[u32] = match scale {
        Scale::Small => &[3, 5, 7, 9],
        Scale::FullDesk => &[3, 5, 7, 9, 11, 14],
    };
    for &side in lp_sides {
        run.truth(&format!("fractional-lp-torus-{side}"), "the optimal continuous distribution covers fractionally", Derived, |_| {
            let (value, witness) = lp::fractional_optimal_pebbling(&GridSpec::torus(side, side)?)?;
            Ok(weight::fractional_solvable(&witness) && witness.size() == value)
        });
    }
    run.check(
        "uniform-1/9-tori-5-to-9",
        "a ninth of a pebble on every vertex of a torus covers fractionally",
        Derived,
        "all weights >= 1",
        |_| {
            let mut weights = vec![];
            for side in 5..=9 {
                let d = constructions::gen_uniform_frac(&GridSpec::torus(side, side)?, frac(1, 9))?;
                weights.push((side, weight::weight(&d, Vertex::new(0, 0))?, weight::fractional_solvable(&d)));
            }
            let text = weights.iter().map(|(s, w, _)| format!("{s}:{}", to_pq(w))).collect::<Vec<_>>().join(" ");
            Ok((text, weights.iter().all(|(_, _, ok)| *ok)))
        },
    );
    run.truth("uniform-1/9-limit", "a ninth of a pebble everywhere has weight exactly one on the unbounded grid", Published, |_| {
        let mut ok = true;
        for side in 5..=9 {
            let d = constructions::gen_uniform_frac(&GridSpec::torus(side, side)?, frac(1, 9))?;
            ok &= weight::periodic_weight(&d, Vertex::new(0, 0))? == Rational::one();
        }
        Ok(ok)
    });
    run.check("density7-pattern", "a density 1/7 pattern covers fractionally, class B sums to exactly 1", Published, "min >= 1, class at 1/1", |_| {
        let p = constructions::find_density7_pattern()?;
        let tight = p.classes.iter().any(|c| c.near_weight == Rational::one() && c.radius == Some(5));
        let a_bound = p.classes.iter().any(|c| c.near_weight == frac(17, 16) && c.radius == Some(4));
        Ok((
            format!("min {}, density {}, tight class {}", to_pq(&p.min_weight), to_pq(&p.density), tight),
            p.min_weight >= Rational::one() && p.density == frac(1, 7) && tight && a_bound,
        ))
    });

    let mut previous = None;
    for k in [4u32, 8, 16] {
        run.check(&format!("row-ones-{k}"), "a unit of two at the end of a row of singles", Derived, "increasing", |e| {
            let g = constructions::row_ones_grid(k);
            let d = constructions::gen_row_ones(&g, k, false)?;
            let dp = constructions::gen_row_ones(&g, k, true)?;
            let mr = e.marginal_covering_ratio(&d, &dp)?;
            let ok = previous.as_ref().is_none_or(|p| &mr > p) && (k < 16 || mr > frac(17, 4));
            previous = Some(mr.clone());
            Ok((to_pq(&mr), ok))
        });
    }
    run.rational("row-ones-threshold", "smallest row length whose end unit beats 4.25", Derived, int(2), |e| {
        for k in 1..=16u32 {
            let g = constructions::row_ones_grid(k);
            let mr = e.marginal_covering_ratio(&constructions::gen_row_ones(&g, k, false)?, &constructions::gen_row_ones(&g, k, true)?)?;
            if mr > frac(17, 4) {
                return Ok(int(k as i64));
            }
        }
        Ok(int(0))
    });
    run.truth("cascade-ones", "a single pebble can add arbitrarily many reachable vertices", Derived, |e| {
        let mut last = None;
        for k in [1u32, 2, 4, 8] {
            let (d, u) = constructions::gen_cascade_ones(&constructions::cascade_grid(k), k)?;
            let mr = e.marginal_covering_ratio(&d, &d.combine(&u)?)?;
            if last.as_ref().is_some_and(|l| &mr <= l) || e.coverage(&u)?.cov != 1 {
                return Ok(false);
            }
            last = Some(mr);
        }
        Ok(true)
    });

    let max_n = match scale {
        Scale::Small => 3,
        Scale::FullDesk => 4,
    };
    for (n, want) in [(1u32, Some(1u64)), (2, Some(3)), (3, None), (4, None)].into_iter().filter(|(n, _)| *n <= max_n) {
        let expected = want.map_or_else(|| "within bounds".to_string(), |w| w.to_string());
        let source = if n == 1 { Trivial } else { Derived };
        run.check(&format!("pi-opt-{n}x{n}"), "optimal pebbling number of a small square grid", source, expected, |e| {
            let grid = GridSpec::plane(n, n)?;
            let res = optimal::optimal_pebbling_number(e, &grid)?;
            let (lp_value, _) = lp::fractional_optimal_pebbling(&grid)?;
            let lower_ok = int(res.pi_opt as i64) >= lp_value;
            let solvable = e.is_solvable(&res.witness)?;
            let upper_ok = (1..n).all(|m| {
                optimal::optimal_pebbling_number(e, &GridSpec::plane(m, m).expect("positive"))
                    .map(|inner| res.pi_opt <= constructions::block_composition_size(n as u64, m as u64, inner.pi_opt))
                    .unwrap_or(false)
            });
            let ok = want.is_none_or(|w| w == res.pi_opt) && lower_ok && upper_ok && solvable;
            Ok((res.pi_opt.to_string(), ok))
        });
    }

    let passed = run.checks.iter().filter(|c| c.pass).count();
    let failed = run.checks.len() - passed;
    VerificationReport { schema: REPORT_SCHEMA, scale, passed, failed, all_passed: failed == 0, checks: run.checks }
}

fn fig4_checks(run: &mut Runner<'_>, n: u32, m: u32) {
    use Source::*;
    let (nn, mm) = (n as u64, m as u64);
    let base_size = 3 * (nn + 1) * (mm + 1);
    let vertices = (5 * mm + 1) * (2 * nn + 1);
    let tag = format!("fig4-{n}-{m}");

    run.check(
        &format!("{tag}-coverage"),
        "rows 0, 1, 4 mod 5 are reachable and rows 2, 3 mod 5 are not",
        Published,
        to_pq(&r((3 * mm + 1) * (2 * nn + 1), base_size)),
        |e| {
            let d = constructions::gen_fig4(n, m, false)?;
            let c = e.coverage(&d)?;
            let grid = fig4_grid(n, m)?;
            let rows: BTreeSet<Vertex> = grid.vertices().filter(|v| matches!(v.row % 5, 0 | 1 | 4)).collect();
            let ok = c.reachable == rows && c.ratio == r((3 * mm + 1) * (2 * nn + 1), base_size);
            Ok((to_pq(&c.ratio), ok))
        },
    );
    run.rational(&format!("{tag}-ceiling"), "covering ratio ceiling of the base family", Published, r(vertices, base_size), |_| {
        weight::covering_ratio_ceiling(&constructions::gen_fig4(n, m, false)?)
    });
    run.check(&format!("{tag}-augmented"), "augmented family is solvable with the stated ratio", Published, to_pq(&r(vertices, base_size + 4 * mm)), |e| {
        let aug = constructions::fig4_augmentation(e, n, m)?;
        let mut d = constructions::gen_fig4(n, m, false)?;
        let mut marginal_zero = true;
        for &u in &aug.units {
            let mut next = d.clone();
            next.add(u, 2)?;
            marginal_zero &= weight::marginal_covering_ratio_ceiling(&d, &next, WeightMode::Finite)?.is_zero();
            d = next;
        }
        let c = e.coverage(&d)?;
        let want = r(vertices, base_size + 4 * mm);
        Ok((
            format!("{}{}", to_pq(&c.ratio), if marginal_zero { "" } else { " (marginal ceiling nonzero)" }),
            c.is_complete() && d.size() == base_size + 4 * mm && c.ratio == want && marginal_zero,
        ))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_helpers() {
        assert_eq!(unit2().size(), 2);
        assert_eq!(two_adjacent_unit2().unit_count(), 2);
    }
}

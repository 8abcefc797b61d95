//! Plain-text and SVG pictures of a distribution.

use std::collections::BTreeSet;
use std::fmt::Write;

use num_traits::{One, Zero};

use crate::distribution::ParsedDistribution;
use crate::error::Result;
use crate::grid::Vertex;
use crate::ratio::{self, Rational};
use crate::reach::Engine;
use crate::weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overlay {
    None,
    Coverage,
    Weights,
}

/// Per-vertex shading: reachable or not, or weight capped at one.
enum Shade {
    None,
    Reachable(BTreeSet<Vertex>),
    Weight(Vec<Rational>),
}

fn shade(engine: &Engine, d: &ParsedDistribution, overlay: Overlay) -> Result<Shade> {
    Ok(match overlay {
        Overlay::None => Shade::None,
        Overlay::Coverage => match d {
            ParsedDistribution::Integer(d) if !d.is_empty() => Shade::Reachable(engine.reachable_set(d)?),
            ParsedDistribution::Integer(_) => Shade::Reachable(BTreeSet::new()),
            // A continuous distribution "reaches" where its weight is at least one.
            ParsedDistribution::Continuous(c) => Shade::Reachable(
                weight::all_weights(c).into_iter().filter(|(_, w)| *w >= Rational::one()).map(|(v, _)| v).collect(),
            ),
        },
        Overlay::Weights => Shade::Weight(match d {
            ParsedDistribution::Integer(d) => weight::all_weights(d).into_iter().map(|(_, w)| w).collect(),
            ParsedDistribution::Continuous(c) => weight::all_weights(c).into_iter().map(|(_, w)| w).collect(),
        }),
    })
}

fn amount(d: &ParsedDistribution, v: Vertex) -> Option<String> {
    match d {
        ParsedDistribution::Integer(d) => match d.get(v) {
            0 => None,
            c if c < 10 => Some(c.to_string()),
            _ => Some("+".into()),
        },
        ParsedDistribution::Continuous(c) => {
            let q = c.get(v);
            (!q.is_zero()).then(|| ratio::to_pq(&q))
        }
    }
}

/// One character per vertex, row 0 on top. Units show their count (`+`
/// above nine, `o` for fractional amounts). Empty vertices show `*` when
/// reachable under the coverage overlay, and `#`, `:` or `.` for weight at
/// least 1, at least 1/2, or below under the weights overlay.
pub fn render_ascii(engine: &Engine, d: &ParsedDistribution, overlay: Overlay) -> Result<String> {
    let grid = *d.grid();
    let shade = shade(engine, d, overlay)?;
    let half = ratio::frac(1, 2);
    let mut out = String::new();
    for row in 0..grid.height() {
        for col in 0..grid.width() {
            let v = Vertex::new(col, row);
            let ch = match (amount(d, v), d) {
                (Some(_), ParsedDistribution::Continuous(_)) => 'o',
                (Some(s), _) => s.chars().next().unwrap_or('+'),
                (None, _) => match &shade {
                    Shade::None => '.',
                    Shade::Reachable(set) => {
                        if set.contains(&v) {
                            '*'
                        } else {
                            '.'
                        }
                    }
                    Shade::Weight(ws) => {
                        let w = &ws[grid.index(v)];
                        if *w >= Rational::one() {
                            '#'
                        } else if *w >= half {
                            ':'
                        } else {
                            '.'
                        }
                    }
                },
            };
            out.push(ch);
        }
        out.push('\n');
    }
    Ok(out)
}

const CELL: u32 = 24;

pub fn render_svg(engine: &Engine, d: &ParsedDistribution, overlay: Overlay) -> Result<String> {
    let grid = *d.grid();
    let shade = shade(engine, d, overlay)?;
    let (w, h) = (grid.width() * CELL, grid.height() * CELL);
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    for v in grid.vertices() {
        let (x, y) = (v.col * CELL, v.row * CELL);
        let fill = match &shade {
            Shade::None => None,
            Shade::Reachable(set) => set.contains(&v).then(|| "#9ecae1".to_string()),
            Shade::Weight(ws) => {
                let w = ratio::to_f64(&ws[grid.index(v)]).min(1.0);
                let level = (255.0 - 200.0 * w).round() as u8;
                Some(format!("rgb({level},{level},255)"))
            }
        };
        if let Some(fill) = fill {
            let _ = writeln!(out, r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}"/>"#);
        }
        let _ = writeln!(
            out,
            r##"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="none" stroke="#ccc" stroke-width="0.5"/>"##
        );
        if let Some(label) = amount(d, v) {
            let (cx, cy) = (x + CELL / 2, y + CELL / 2);
            let _ = writeln!(out, r##"<circle cx="{cx}" cy="{cy}" r="{}" fill="#333"/>"##, CELL * 2 / 5);
            let label = match d {
                ParsedDistribution::Integer(d) => d.get(v).to_string(),
                ParsedDistribution::Continuous(_) => label,
            };
            let _ = writeln!(
                out,
                r#"<text x="{cx}" y="{}" font-size="10" font-family="monospace" text-anchor="middle" fill="white">{label}</text>"#,
                cy + 4
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

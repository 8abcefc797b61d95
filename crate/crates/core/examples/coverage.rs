//! Reachable vertices of a few small distributions.
//!
//! cargo run --example coverage

use pebblekit::{Distribution, Engine, GridSpec, Vertex};

fn main() -> pebblekit::Result<()> {
    let engine = Engine::default();
    let g = GridSpec::plane(9, 7)?;
    let c = Vertex::new(4, 3);

    for (name, units) in [
        ("unit of two", vec![(c, 2)]),
        ("two adjacent units of two", vec![(c, 2), (Vertex::new(5, 3), 2)]),
        ("unit of four", vec![(c, 4)]),
        ("three in a row", vec![(Vertex::new(3, 3), 1), (c, 1), (Vertex::new(5, 3), 1)]),
    ] {
        let d = Distribution::from_units(g, units)?;
        let report = engine.coverage(&d)?;
        let lonely = engine.lonely_units(&d)?;
        println!(
            "{name:<28} size {}  cov {:>2}  ratio {:>5}  boundary {:>2}  lonely {}",
            d.size(),
            report.cov,
            pebblekit::ratio::to_pq(&report.ratio),
            report.boundary.len(),
            lonely.len()
        );
    }

    // Moves that put two pebbles on a corner of a 3x3 grid from its centre.
    let d = Distribution::from_units(GridSpec::plane(3, 3)?, [(Vertex::new(1, 1), 8)])?;
    if let Some(moves) = engine.find_moves(&d, Vertex::new(0, 0), 2)? {
        println!("8 at centre, 2 to corner in {} moves:", moves.len());
        for m in moves {
            println!("  {} -> {}", m.from, m.to);
        }
    }
    Ok(())
}

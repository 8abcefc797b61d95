//! Units of four on every other vertex of every seventh diagonal.
//!
//! cargo run --release --example diag7

use pebblekit::constructions::{gen_diag7, gen_diag7_plane};
use pebblekit::ratio::{to_f64, to_pq};
use pebblekit::{Engine, GridSpec};

fn main() -> pebblekit::Result<()> {
    let engine = Engine::default();
    for side in [14, 28] {
        let d = gen_diag7(&GridSpec::torus(side, side)?)?;
        let c = engine.coverage(&d)?;
        println!("{side}x{side} torus: {} pebbles, solvable {}, ratio {}", d.size(), c.is_complete(), to_pq(&c.ratio));
    }
    // Without wrap-around the border needs extra pebbles, and the ratio
    // creeps toward 7/2 as the grid grows.
    for side in [14, 21, 28] {
        let p = gen_diag7_plane(&engine, &GridSpec::plane(side, side)?)?;
        let c = engine.coverage(&p.distribution)?;
        println!(
            "{side}x{side} plane: {} + {} filler, solvable {}, ratio {:.4}",
            p.core_pebbles,
            p.filler_pebbles,
            c.is_complete(),
            to_f64(&c.ratio)
        );
    }
    print!("{}", gen_diag7(&GridSpec::torus(14, 7)?)?.to_text());
    Ok(())
}

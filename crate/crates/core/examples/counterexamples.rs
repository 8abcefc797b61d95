//! Marginal covering ratios that grow without bound.
//!
//! cargo run --example counterexamples

use pebblekit::constructions::{cascade_grid, gen_cascade_ones, gen_row_ones, row_ones_grid};
use pebblekit::ratio::to_pq;
use pebblekit::Engine;

fn main() -> pebblekit::Result<()> {
    let engine = Engine::default();
    println!("unit of two at the end of k singles");
    for k in [1, 2, 4, 8, 16] {
        let g = row_ones_grid(k);
        let d = gen_row_ones(&g, k, false)?;
        let dp = gen_row_ones(&g, k, true)?;
        println!("  k={k:>2}  marginal ratio {}", to_pq(&engine.marginal_covering_ratio(&d, &dp)?));
    }
    println!("one extra pebble in front of k singles");
    for k in [1, 2, 4, 8, 16] {
        let (d, u) = gen_cascade_ones(&cascade_grid(k), k)?;
        println!("  k={k:>2}  marginal ratio {}", to_pq(&engine.marginal_covering_ratio(&d, &d.combine(&u)?)?));
    }
    Ok(())
}

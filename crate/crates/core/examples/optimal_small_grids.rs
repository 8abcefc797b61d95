//! Optimal pebbling numbers of n x n grids by exhaustive search.
//!
//! cargo run --release --example optimal_small_grids

use pebblekit::optimal::optimal_ratio_series;
use pebblekit::ratio::to_pq;
use pebblekit::Engine;

fn main() -> pebblekit::Result<()> {
    let rows = optimal_ratio_series(&Engine::default(), 4)?;
    println!("{:>2} {:>6} {:>6} {:>8} {:>10}", "n", "pi_opt", "ratio", "composed", "fractional");
    for r in rows {
        println!(
            "{:>2} {:>6} {:>6} {:>8} {:>10}",
            r.n,
            r.pi_opt.map_or("-".into(), |p| p.to_string()),
            r.ratio.as_ref().map_or("-".into(), to_pq),
            r.composed_bound.map_or("-".into(), |b| b.to_string()),
            r.fractional_optimum.as_ref().map_or("-".into(), to_pq),
        );
    }
    Ok(())
}

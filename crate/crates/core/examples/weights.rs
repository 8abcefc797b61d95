//! Weight function, excess and covering ratio ceilings.
//!
//! cargo run --example weights

use pebblekit::ratio::to_pq;
use pebblekit::weight::{self, WeightMode};
use pebblekit::{Distribution, Engine};

fn main() -> pebblekit::Result<()> {
    let engine = Engine::default();
    let cases = [
        ("one pebble", vec![(0, 0, 1)]),
        ("unit of two", vec![(0, 0, 2)]),
        ("unit of four", vec![(0, 0, 4)]),
        ("two adjacent units of two", vec![(0, 0, 2), (1, 0, 2)]),
        ("units of two at distance 3", vec![(0, 0, 2), (3, 0, 2)]),
    ];
    println!("{:<28} {:>6} {:>10} {:>10} {:>9}", "distribution", "ratio", "ceiling", "unbounded", "excess");
    for (name, units) in cases {
        let d = Distribution::from_offsets(&units, 4)?;
        let ratio = engine.coverage(&d)?.ratio;
        println!(
            "{name:<28} {:>6} {:>10} {:>10} {:>9}",
            to_pq(&ratio),
            to_pq(&weight::covering_ratio_ceiling(&d)?),
            to_pq(&weight::ceiling_infinite(&d)?),
            to_pq(&weight::infinite_total_excess(&d)?),
        );
    }

    let one = Distribution::from_offsets(&[(0, 0, 1)], 4)?;
    let two = Distribution::from_offsets(&[(0, 0, 2)], 4)?;
    println!(
        "marginal ceiling from one pebble to two: {}",
        to_pq(&weight::marginal_covering_ratio_ceiling(&one, &two, WeightMode::InfiniteAnalytic)?)
    );
    for r in [4, 8, 16, 30] {
        println!("single pebble weight within radius {r:>2}: {}", to_pq(&weight::single_pebble_weight_total(r)));
    }
    Ok(())
}

//! Fractional pebbling: continuous distributions with weight at least one
//! everywhere.
//!
//! cargo run --release --example fractional

use pebblekit::constructions::{find_density7_pattern, gen_uniform_frac};
use pebblekit::lp::fractional_optimal_pebbling;
use pebblekit::ratio::{frac, to_pq};
use pebblekit::{weight, GridSpec, Vertex};

fn main() -> pebblekit::Result<()> {
    for side in [3, 4, 5, 6, 7] {
        let g = GridSpec::plane(side, side)?;
        let (value, _) = fractional_optimal_pebbling(&g)?;
        println!("{g}: fractional optimum {}", to_pq(&value));
    }
    for side in [5, 7, 9] {
        let g = GridSpec::torus(side, side)?;
        let (value, _) = fractional_optimal_pebbling(&g)?;
        let u = gen_uniform_frac(&g, frac(1, 9))?;
        println!(
            "{g}: optimum {}, a ninth everywhere has weight {} (periodic {})",
            to_pq(&value),
            to_pq(&weight::weight(&u, Vertex::new(0, 0))?),
            to_pq(&weight::periodic_weight(&u, Vertex::new(0, 0))?)
        );
    }

    let p = find_density7_pattern()?;
    println!("density {} lattice, basis {:?}, min weight {}", to_pq(&p.density), p.basis, to_pq(&p.min_weight));
    for c in &p.classes {
        println!(
            "  cosets {:?}: profile {:?}, within radius {:?} weight {}",
            c.cosets,
            c.profile,
            c.radius,
            to_pq(&c.near_weight)
        );
    }
    Ok(())
}

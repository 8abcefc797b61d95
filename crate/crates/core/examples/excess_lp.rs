//! The minimum excess forced around a lone pebble, as an exact LP.
//!
//! cargo run --example excess_lp

use pebblekit::lp::{self, ExcessRegionProfile};
use pebblekit::ratio::{int, to_pq};

fn main() -> pebblekit::Result<()> {
    let p = lp::lemma2_problem();
    let s = lp::solve(&p)?;
    println!("status   {:?} after {} pivots", s.status, s.pivots);
    println!("optimum  {}", to_pq(&s.objective_value));
    let profile = ExcessRegionProfile::from_vector(&s.primal)?;
    println!("x        {}", profile.x.iter().map(to_pq).collect::<Vec<_>>().join(" "));
    println!("y        {}", profile.y.iter().map(to_pq).collect::<Vec<_>>().join(" "));
    println!("dual     {}", s.dual.iter().map(to_pq).collect::<Vec<_>>().join(" "));
    println!("verified {}", lp::verify_solution(&p, &s));
    println!("bound    9 - {} = {}", to_pq(&s.objective_value), to_pq(&(int(9) - &s.objective_value)));

    // With 1/8 in place of 1/4 for the last y coefficient of the fifth row.
    let literal = lp::solve(&lp::lemma2_problem_as_printed())?;
    println!("variant  {}", to_pq(&literal.objective_value));
    Ok(())
}

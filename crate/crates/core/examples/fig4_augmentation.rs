//! Rows of units of three, then units of two added one at a time.
//!
//! cargo run --release --example fig4_augmentation

use pebblekit::constructions::{fig4_augmentation, gen_fig4};
use pebblekit::ratio::to_pq;
use pebblekit::render::{render_ascii, Overlay};
use pebblekit::{weight, Engine, ParsedDistribution};

fn main() -> pebblekit::Result<()> {
    let engine = Engine::default();
    for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        let base = gen_fig4(n, m, false)?;
        let aug = fig4_augmentation(&engine, n, m)?;
        let mut d = base.clone();
        let mut ceilings = vec![weight::covering_ratio_ceiling(&d)?];
        for &u in &aug.units {
            d.add(u, 2)?;
            ceilings.push(weight::covering_ratio_ceiling(&d)?);
        }
        println!("n={n} m={m}: units of two at {:?}", aug.units.iter().map(|v| (v.col, v.row)).collect::<Vec<_>>());
        println!("  ratios   {}", aug.ratios.iter().map(to_pq).collect::<Vec<_>>().join(" < "));
        println!("  ceilings {}", ceilings.iter().map(to_pq).collect::<Vec<_>>().join(" > "));
        println!("  four pebbles on every unit row: {}", aug.four_on_unit_rows);
    }
    let d = ParsedDistribution::Integer(gen_fig4(1, 1, false)?);
    print!("{}", render_ascii(&engine, &d, Overlay::Coverage)?);
    Ok(())
}

//! ASCII and SVG pictures of a distribution.
//!
//! cargo run --example render_grid > /tmp/grid.svg

use pebblekit::constructions::gen_diag7;
use pebblekit::render::{render_ascii, render_svg, Overlay};
use pebblekit::{Engine, GridSpec, ParsedDistribution};

fn main() -> pebblekit::Result<()> {
    let engine = Engine::default();
    let d = ParsedDistribution::Integer(gen_diag7(&GridSpec::torus(14, 14)?)?);
    for overlay in [Overlay::None, Overlay::Weights] {
        eprintln!("{}", render_ascii(&engine, &d, overlay)?);
    }
    print!("{}", render_svg(&engine, &d, Overlay::Coverage)?);
    Ok(())
}

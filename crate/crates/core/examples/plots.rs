//! Writes SVG drawings of a polygon, its normal fan and the secondary fan of
//! the blow-up configuration into a directory (default: the system temp dir).

use std::path::PathBuf;

use quantum_gkz::fan::normal_fan;
use quantum_gkz::instances::{pentagon, sqrt2_blowup};
use quantum_gkz::secondary::enumerate_chambers;
use quantum_gkz::svg::{fan_svg, polytope_svg, secondary_svg, PlotKind, PlotSpec};
use quantum_gkz::Scalar;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;

    let c = pentagon();
    let b = vec![Scalar::one(); 5];
    let poly = polytope_svg(&c, &b, &PlotSpec::new(PlotKind::Polytope))?;
    let fan = fan_svg(&normal_fan(&c, &b)?, &PlotSpec::new(PlotKind::Fan))?;

    let q = sqrt2_blowup();
    let sf = enumerate_chambers(&q)?;
    let chi = vec![Scalar::one(), Scalar::one()];
    let sec = secondary_svg(&sf, &q, Some(&chi), &PlotSpec::new(PlotKind::Secondary))?;

    for (name, body) in [("polytope.svg", poly), ("fan.svg", fan), ("secondary.svg", sec)] {
        let path = dir.join(name);
        std::fs::write(&path, body)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

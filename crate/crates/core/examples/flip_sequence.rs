//! A straight path of characters through several chambers of the pentagon
//! configuration, and a flip of the square pyramid.

use quantum_gkz::instances::{pentagon, square_pyramid};
use quantum_gkz::secondary::{cobordism_from_path, enumerate_chambers, wall_path, AffinePath, WallKind};
use quantum_gkz::Scalar;

fn main() -> quantum_gkz::Result<()> {
    let c = pentagon();
    let sf = enumerate_chambers(&c)?;
    let first = &sf.chambers[0];
    let last = &sf.chambers[sf.chambers.len() - 1];
    let path = AffinePath::between(&c, &first.rep_point, &last.rep_point)?;
    let report = cobordism_from_path(&path, &c)?;
    println!("pentagon: {} crossings ({})", report.crossings.len(), report.index_convention);
    for x in &report.crossings {
        println!(
            "  t = {}: {} -> {} cones, {}, index {:?}, checks pass {}",
            x.t,
            x.before.cones.len(),
            x.after.cones.len(),
            x.wall.kind,
            x.wall.index,
            x.checks.passed()
        );
    }

    let c = square_pyramid();
    let sf = enumerate_chambers(&c)?;
    for ch in &sf.chambers {
        for (k, _) in ch.facets.iter().enumerate() {
            let path = match wall_path(ch, k, &c) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let report = cobordism_from_path(&path, &c)?;
            let Some(x) = report.crossings.first() else { continue };
            if let WallKind::Flipping { circuit } = &x.wall.kind {
                println!(
                    "square pyramid flip at t = {}: circuit {} / {}, index {:?}",
                    x.t,
                    circuit.positive,
                    circuit.negative,
                    x.wall.index
                );
                println!("  {:?}", x.checks);
                assert_eq!(x.t, Scalar::zero());
                return Ok(());
            }
        }
    }
    Ok(())
}

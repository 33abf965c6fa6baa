//! Normal fans of the blow-up configuration on both sides of its walls,
//! with their fan checks and combinatorial types.

use quantum_gkz::fan::{normal_fan, CombinatorialType};
use quantum_gkz::instances::{sqrt2_blowup, sqrt2_blowup_far};
use quantum_gkz::Scalar;

fn main() -> quantum_gkz::Result<()> {
    let b: Vec<Scalar> = ["0", "0", "1", "1"].iter().map(|t| t.parse().unwrap()).collect();
    for (name, c) in [("near", sqrt2_blowup()), ("far", sqrt2_blowup_far())] {
        let f = normal_fan(&c, &b)?;
        let cones: Vec<String> = f.cones().iter().map(|s| s.to_string()).collect();
        println!("{name}: cones {}", cones.join(" "));
        println!("  rays {}, virtual {}", f.rays(), f.virtual_set());
        println!("  checks {:?}", f.checks());
        let t = f.combinatorial_type();
        let n = f.rays().len();
        if t.isomorphic(&CombinatorialType::cycle(n)) {
            println!("  a cycle on {n} rays");
        }
        if t.isomorphic(&CombinatorialType::simplex(2)) {
            println!("  the fan of the projective plane");
        }
    }
    Ok(())
}

//! Vertices, facets and simplicity of a polygon cut out by the pentagon
//! configuration, for a generic and a degenerate parameter.

use quantum_gkz::instances::pentagon;
use quantum_gkz::polytope::HPolytope;
use quantum_gkz::Scalar;

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn main() -> quantum_gkz::Result<()> {
    let c = pentagon();
    for b in [ints(&[1, 1, 1, 1, 1]), ints(&[1, 1, 6, 1, 1]), ints(&[0, 0, 0, 0, 0])] {
        let p = HPolytope::new(&c, &b)?;
        println!("b = {b:?}");
        println!("  dimension {}, bounded {}, simple {}", p.dimension(), p.is_bounded(), p.is_simple());
        for v in p.vertices() {
            let pt: Vec<String> = v.point.iter().map(|x| x.to_string()).collect();
            println!("  vertex ({}) on {}", pt.join(", "), v.tight);
        }
        println!("  facets {}, redundant {}", p.facet_set(), p.virtual_facets());
    }
    Ok(())
}

//! Both presentations of the stabilizer of a non-simplicial cone, for an
//! irrational and a rational fourth generator.

use quantum_gkz::fan::stabilizer_profiles;
use quantum_gkz::instances::stabilizer_example;
use quantum_gkz::{IndexSet, Scalar};

fn main() -> quantum_gkz::Result<()> {
    let s = |t: &str| -> Scalar { t.parse().unwrap() };
    let all = IndexSet::from_one_based(&[1, 2, 3, 4]);
    for (a1, a2, a3) in [("sqrt2", "1", "1"), ("1", "1", "1"), ("1", "sqrt2", "1")] {
        let c = stabilizer_example(s(a1), s(a2), s(a3));
        let r = stabilizer_profiles(&c, all)?;
        println!(
            "({a1}, -{a2}, {a3}): old {:?}, new {:?}, isomorphic {}",
            r.old, r.new, r.isomorphic
        );
    }
    Ok(())
}

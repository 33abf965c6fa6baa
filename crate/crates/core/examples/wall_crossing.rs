//! One divisorial wall of the blow-up configuration, crossed in both
//! directions.

use quantum_gkz::instances::sqrt2_blowup;
use quantum_gkz::secondary::{cross_wall, AffinePath};
use quantum_gkz::Scalar;

fn chi(x: &str, y: &str) -> Vec<Scalar> {
    vec![x.parse().unwrap(), y.parse().unwrap()]
}

fn main() -> quantum_gkz::Result<()> {
    let c = sqrt2_blowup();
    let (a, b) = (chi("1", "1"), chi("2", "1/2"));
    for (from, to) in [(&a, &b), (&b, &a)] {
        let path = AffinePath::between(&c, from, to)?;
        let report = cross_wall(&path, &c)?;
        match report.crossing {
            Some(x) => println!(
                "{:?} -> {:?}: t = {}, {}, index {:?}, virtual {} -> {}",
                from.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                to.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                x.t,
                x.wall.kind,
                x.wall.index,
                x.before.virtual_set,
                x.after.virtual_set
            ),
            None => println!("no wall between the endpoints"),
        }
    }
    Ok(())
}

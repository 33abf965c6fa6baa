//! Projective certificates, the planar classification and a path to a fan of
//! projective type.

use quantum_gkz::instances::{exceptional_n4, pentagon};
use quantum_gkz::projective::{classify_dim2, path_to_projective, projective_certificate, simplex_parameter};
use quantum_gkz::Scalar;

fn main() -> quantum_gkz::Result<()> {
    let c = pentagon();
    let cert = projective_certificate(&c).expect("the pentagon has a certificate");
    println!("certificate on {} with weights {:?}", cert.indices, cert.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>());
    let b = simplex_parameter(&c, &cert)?;
    println!("simplex parameter {:?}", b.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    println!("pentagon: {:?}", classify_dim2(&c)?);
    println!("exceptional: {:?}", classify_dim2(&exceptional_n4(Scalar::from_int(2), Scalar::from_int(3)))?);

    let start = vec![Scalar::one(); 5];
    let path = path_to_projective(&c, &start)?;
    println!("path status {:?}", path.status);
    if let Some(report) = &path.cobordism {
        println!("{} crossings on the way", report.crossings.len());
        for x in &report.crossings {
            println!("  t = {}: {}", x.t, x.wall.kind);
        }
        println!("ends at {} cones", report.end.cones.len());
    }
    Ok(())
}

//! Gale dual of the blow-up configuration and the character of a parameter.

use quantum_gkz::instances::sqrt2_blowup;
use quantum_gkz::{linalg, Scalar};

fn show(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn main() -> quantum_gkz::Result<()> {
    let c = sqrt2_blowup();
    println!("d = {}, n = {}, field Q(sqrt{})", c.dim(), c.len(), c.field());
    for (i, g) in c.gale_generators().iter().enumerate() {
        println!("k{} = {}", i + 1, show(g));
    }
    // every Gale generator pairs to zero with every row of h
    for r in 0..c.dim() {
        let row: Vec<Scalar> = c.columns().iter().map(|col| col[r].clone()).collect();
        for g in 0..c.corank() {
            let col: Vec<Scalar> = (0..c.len()).map(|i| c.gale_generator(i)[g].clone()).collect();
            assert!(linalg::dot(&row, &col).is_zero());
        }
    }
    let b: Vec<Scalar> = ["0", "0", "1", "1"].iter().map(|t| t.parse().unwrap()).collect();
    let chi = c.chi_of(&b)?;
    println!("b = {} has character {}", show(&b), show(&chi));
    println!("minimum-norm preimage {}", show(&c.preimage(&chi)?));
    Ok(())
}

//! All chambers of the pentagon configuration with their walls.

use quantum_gkz::instances::pentagon;
use quantum_gkz::secondary::enumerate_chambers;

fn main() -> quantum_gkz::Result<()> {
    let c = pentagon();
    let sf = enumerate_chambers(&c)?;
    println!("{} chambers", sf.chambers.len());
    for (i, ch) in sf.chambers.iter().enumerate() {
        let cones: Vec<String> = ch.combinatorics.cones.iter().map(|s| s.to_string()).collect();
        println!("chamber {i}: {} virtual {}", cones.join(" "), ch.combinatorics.virtual_set);
        for a in sf.neighbors(i) {
            println!("  -> chamber {}: {}", a.to, a.wall.kind);
        }
    }
    for (ch, k) in &sf.boundary {
        println!("chamber {ch} meets the boundary of the Gale cone at facet {k}");
    }
    Ok(())
}

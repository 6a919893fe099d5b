//! Cycle families and residues in the Petersen graph, with certificates.

use cyclemod::certificate::Certificate;
use cyclemod::cycles::{all_residues_mod_k, find_k_cycles};
use cyclemod::named::petersen;

fn main() -> cyclemod::Result<()> {
    let g = petersen();
    for k in 1..g.min_degree() {
        let ext = find_k_cycles(&g, k)?;
        println!(
            "k = {k}: branch {}, lengths {:?} ({})",
            ext.branch.tag(),
            ext.family.lengths(),
            ext.family.class.name()
        );
    }
    // The Petersen graph has minimum degree 3, so k = 1 is the only odd k
    // with a residue guarantee; K5 shows the k = 3 case.
    let k5 = cyclemod::Graph::complete(5);
    let (residues, ext) = all_residues_mod_k(&k5, 3)?;
    for (r, c) in &residues {
        println!("K5 residue {r} mod 3: cycle {:?}", c.vertices());
    }
    let cert = Certificate::for_cycles(&k5, 3, &ext, true);
    println!("certificate check: {:?}", cert.verify().map(|_| "ok"));
    Ok(())
}

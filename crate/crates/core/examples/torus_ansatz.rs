//! The torus ansatz for the p-map of a restricted algebra, checked on two Brown algebras.

use modlie::families::{build_l_at, greedy_torus};
use modlie::pstruct::{check_pmap, torus_pmap_ansatz};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for eps in [-1, 1] {
        let g = build_l_at(eps, 0, 0)?;
        let torus = greedy_torus(&g)?;
        let names: Vec<String> = torus.iter().map(|t| g.format(t)).collect();
        let pmap = torus_pmap_ansatz(&g, &torus)?;
        let bad = check_pmap(&g, &pmap);
        println!("L({eps},0,0), torus {names:?}: {} failures", bad.len());
        for (i, v) in &pmap.even {
            println!("  {}^[3] = {}", g.basis()[*i].name, g.format(v));
        }
    }
    Ok(())
}

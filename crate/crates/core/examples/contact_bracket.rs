//! The contact bracket on O(3;(1,1,1)) and the generating functions of L(eps, 0, 0).

use modlie::divpow::{contact_bracket, k31_algebra, DPDescriptor};
use modlie::families::{build_l_symbolic, GeneratingTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = DPDescriptor::k31();
    let f = d.parse("ph*qh")?;
    for g in ["ph", "qh", "t", "ph^(2)"] {
        let g = d.parse(g)?;
        println!(
            "{{{}, {}}} = {}",
            f.format(&d),
            g.format(&d),
            contact_bracket(&d, &f, &g)?.format(&d)
        );
    }
    let k = k31_algebra();
    println!(
        "O(3;(1,1,1)): dim {}, {}",
        k.dim(),
        k.check_super_identities()
    );

    let l = build_l_symbolic()?;
    let eps = l.ring().var("eps")?;
    let table = GeneratingTable::new(&eps)?;
    for e in &table.entries {
        println!(
            "{:>3} {:<10} degree {:>2}: {}",
            e.alias,
            e.name,
            e.degree,
            e.function.format(&d)
        );
    }
    Ok(())
}

//! Deforming br(2;1) by a cocycle, transporting it by the Chevalley flip, and the p-map
//! of the result.

use modlie::families::{apply_cocycle_deform, build_l_at, chevalley_flip, Cocycle};
use modlie::pstruct::verify_restricted;
use modlie::scalars::Parity;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_l_at(1, 0, 0)?;
    let mut c = Cocycle::zero("lambda", Parity::Even);
    for (a, b, v) in [("y4", "y3", "y1"), ("y3", "x1", "-x4"), ("y4", "x1", "-x3")] {
        c.set(&g, g.index_of(a)?, g.index_of(b)?, g.parse_vector(v)?);
    }
    c.validate(&g)?;
    let h = apply_cocycle_deform(&g, &c)?;
    println!(
        "deformed bracket is Jacobi: {}",
        h.check_super_identities().is_empty()
    );
    let r = verify_restricted(&h);
    println!(
        "y3^[3] = {}",
        h.format(r.pmap.get(h.index_of("y3")?).unwrap())
    );

    let (fg, fc) = chevalley_flip(&g, &c)?;
    let fh = apply_cocycle_deform(&fg, &fc)?;
    let fr = verify_restricted(&fh);
    println!(
        "flipped x3^[3] = {}",
        fh.format(fr.pmap.get(fh.index_of("x3")?).unwrap())
    );
    println!("{}", c.to_json(&g));
    Ok(())
}

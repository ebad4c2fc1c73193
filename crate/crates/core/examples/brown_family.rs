//! Builds L(eps, delta, rho) over GF(3)[eps^±1, delta, rho] and a few specializations.

use modlie::families::{build_l_at, build_l_symbolic, degree_violations};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_l_symbolic()?;
    let ids = g.check_super_identities();
    println!("dim {}, parameters {:?}: {ids}", g.dim(), g.parameters());
    for name in ["y4", "y3", "y2"] {
        for other in ["y1", "x1", "y3"] {
            let v = g.bracket(&g.named(name)?, &g.named(other)?)?;
            println!("[{name}, {other}] = {}", g.format(&v));
        }
    }
    for (e, d, r) in [(1, 0, 0), (2, 0, 0), (1, 1, 1)] {
        let l = build_l_at(e, d, r)?;
        println!(
            "L({e},{d},{r}): jacobi {}, degree violations {}",
            l.check_super_identities().is_empty(),
            degree_violations(&l).len()
        );
    }
    Ok(())
}

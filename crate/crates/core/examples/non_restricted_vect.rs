//! W(1;(2)) in characteristic 3 is not restricted: ad(∂)^3 is not inner.

use modlie::divpow::{vect_algebra, DPDescriptor};
use modlie::pstruct::{solve_p_power, verify_restricted};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = DPDescriptor::new(3, vec![2], 0)?;
    let w = vect_algebra(&d)?.algebra;
    println!("dim {}", w.dim());
    let r = verify_restricted(&w);
    for f in &r.failures {
        println!("  {}: {}", f.element, f.reason);
    }
    match solve_p_power(&w, &w.named("d_u1")?) {
        Ok(s) => println!("d_u1^[3] = {}", w.format(&s.value)),
        Err(e) => println!("d_u1: {e}"),
    }
    Ok(())
}

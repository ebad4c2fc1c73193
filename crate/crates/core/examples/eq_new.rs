//! ad((1-ū)∂_i)^p against ad(-(∂_i^{p-1}ū)∂_i) on svect_{(1+ū)}(m;1|2s).

use modlie::divpow::{verify_eq_new, DPDescriptor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, m, s) in [(3, 1, 1), (3, 2, 1), (5, 1, 1)] {
        let d = DPDescriptor::new(p, vec![1; m], 2 * s)?;
        for i in 0..m {
            let r = verify_eq_new(&d, i)?;
            println!(
                "p={p} m={m} s={s} i={}: dim {}, X = {}, rhs = {}, holds {}",
                i + 1,
                r.algebra_dim,
                r.lhs_field,
                r.rhs_field,
                r.holds()
            );
        }
    }
    Ok(())
}

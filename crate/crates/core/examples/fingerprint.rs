//! Invariants distinguishing members of the Brown family, and L(-1,0,0) against sp(4).

use modlie::families::{build_l_at, invariant_fingerprint};
use modlie::superalg::SuperAlgebra;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (e, d, r) in [(-1, 0, 0), (1, 0, 0), (1, 1, 1)] {
        let f = invariant_fingerprint(&build_l_at(e, d, r)?)?;
        println!("L({e},{d},{r}): {f:?}");
    }
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/sp4.json");
    let sp4 = SuperAlgebra::from_json(&std::fs::read_to_string(path)?)?;
    println!("sp(4):      {:?}", invariant_fingerprint(&sp4)?);
    Ok(())
}

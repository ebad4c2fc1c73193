//! Computes the 3-structure of L(eps, delta, rho) and compares it with the stated one.

use modlie::families::{build_l_symbolic, verify_lemma_l3, L3_SPECIALIZATIONS};
use modlie::pstruct::verify_restricted;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = build_l_symbolic()?;
    let r = verify_restricted(&g);
    println!("restricted: {}", r.is_restricted());
    for i in 0..g.dim() {
        if let Some(v) = r.pmap.get(i) {
            println!("  {}^[3] = {}", g.basis()[i].name, g.format(v));
        }
    }
    let report = verify_lemma_l3(true, &L3_SPECIALIZATIONS)?;
    println!();
    for c in report.mismatches().take(8) {
        println!(
            "mismatch {}: stated {}, computed {}",
            c.name, c.expected, c.computed
        );
    }
    let ok = report.checks.iter().filter(|c| c.matches).count();
    println!(
        "{}: {ok}/{} checks agree",
        report.status.as_str(),
        report.checks.len()
    );
    Ok(())
}

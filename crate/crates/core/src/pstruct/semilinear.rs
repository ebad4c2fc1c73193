use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::{same_coset, PMap, PowerSolver};
use crate::scalars::{FieldElement, Parity, Scalar};
use crate::superalg::{vector, SuperAlgebra, Vector};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SemilinearityReport {
    pub trials: usize,
    pub discrepancies: Vec<String>,
}

impl SemilinearityReport {
    pub fn is_empty(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

fn random_even(g: &SuperAlgebra, elements: &[FieldElement], rng: &mut StdRng) -> Vector {
    g.basis()
        .iter()
        .map(|e| match e.parity {
            Parity::Even => Scalar::constant(elements[rng.gen_range(0..elements.len())]),
            Parity::Odd => Scalar::zero(),
        })
        .collect()
}

/// Random checks of (c x)^[p] = c^p x^[p] and existence of (x + y)^[p], modulo the center.
///
/// Needs numeric structure constants; the basis values are taken from `pmap`.
pub fn semilinearity_check(
    g: &SuperAlgebra,
    pmap: &PMap,
    trials: usize,
    seed: u64,
) -> SemilinearityReport {
    let mut report = SemilinearityReport {
        trials,
        discrepancies: Vec::new(),
    };
    if !g.is_numeric() {
        report
            .discrepancies
            .push("structure constants are not numeric".into());
        return report;
    }
    let solver = PowerSolver::new(g);
    let center = solver.center().to_vec();
    let elements = g.field().elements();
    let even: Vec<usize> = pmap.even.keys().copied().collect();
    let mut rng = StdRng::seed_from_u64(seed);
    for t in 0..trials {
        let c = elements[rng.gen_range(0..elements.len())];
        let cs = Scalar::constant(c);
        let cp = Scalar::constant(c.frobenius());

        if let Some(&i) = even.get(rng.gen_range(0..even.len().max(1))) {
            let scaled = vector::scale(&cs, &g.basis_vector(i));
            match solver.p_power(&scaled) {
                Ok(sol) => {
                    let expected = vector::scale(&cp, &pmap.even[&i]);
                    if !same_coset(&sol.value, &expected, &center) {
                        report.discrepancies.push(format!(
                            "trial {t}: ({c}*{})^[p] is {}, expected {}",
                            g.basis()[i].name,
                            g.format(&sol.value),
                            g.format(&expected)
                        ));
                    }
                }
                Err(e) => report.discrepancies.push(format!("trial {t}: {e}")),
            }
        }

        let x = random_even(g, &elements, &mut rng);
        let y = random_even(g, &elements, &mut rng);
        let px = solver.p_power(&x);
        let pcx = solver.p_power(&vector::scale(&cs, &x));
        match (px, pcx) {
            (Ok(a), Ok(b)) => {
                let expected = vector::scale(&cp, &a.value);
                if !same_coset(&b.value, &expected, &center) {
                    report.discrepancies.push(format!(
                        "trial {t}: (c x)^[p] != c^p x^[p] for x = {}",
                        g.format(&x)
                    ));
                }
            }
            (Err(e), _) | (_, Err(e)) => report.discrepancies.push(format!("trial {t}: {e}")),
        }
        if let Err(e) = solver.p_power(&vector::add(&x, &y)) {
            report
                .discrepancies
                .push(format!("trial {t}: (x + y)^[p]: {e}"));
        }
    }
    report
}

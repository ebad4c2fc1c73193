//! p- and 2p-structures: solving ad(y) = ad(x)^p, the torus ansatz, restrictedness.

mod json;
mod semilinear;

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{self, Matrix, Reduction};
use crate::scalars::{Parity, Scalar};
use crate::superalg::{vector, weight_decomposition, SuperAlgError, SuperAlgebra, Vector};

pub use json::{vector_from_json, vector_to_json, PMapJson, VectorJson};
pub use semilinear::{semilinearity_check, SemilinearityReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PStructError {
    #[error("no p-th power: {0}")]
    NoSolution(String),
    #[error("could not isolate a solution over the parameter ring: {0}")]
    SymbolicUnderdetermined(String),
    #[error("expected an even element, got {0}")]
    NotEven(String),
    #[error("basis is not a weight basis: {0}")]
    NotWeightBasis(String),
    #[error("structure constants outside the prime field: {0}")]
    NotPrimeField(String),
    #[error(transparent)]
    Algebra(#[from] SuperAlgError),
}

/// ad(x)^n as an exact matrix, by repeated squaring of parity-aware compositions.
pub fn ad_power(g: &SuperAlgebra, x: &[Scalar], n: u64) -> Result<Matrix, PStructError> {
    let parity = g.element_parity(x)?;
    let ad = g.ad_matrix(x)?;
    Ok(operator_power(&ad, parity, n, g))
}

fn operator_power(m: &Matrix, parity: Parity, mut n: u64, g: &SuperAlgebra) -> Matrix {
    let mut result = Matrix::identity(m.rows(), g.field());
    let mut rp = Parity::Even;
    let mut base = m.clone();
    let mut bp = parity;
    while n > 0 {
        if n & 1 == 1 {
            result = Matrix::super_compose(&result, rp, &base);
            rp = rp + bp;
        }
        n >>= 1;
        if n > 0 {
            base = Matrix::super_compose(&base, bp, &base);
            bp = Parity::Even;
        }
    }
    result
}

/// A solution of ad(y) = T together with the center it is determined modulo.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSolution {
    pub value: Vector,
    pub center: Vec<Vector>,
}

/// Linear system for ad(y) = T with unknowns y_i of parity |e_i|.
///
/// The coefficient matrix depends only on the algebra, so it is built once.
pub struct PowerSolver<'a> {
    g: &'a SuperAlgebra,
    /// Row (k, j) holds the coefficients of y_i in the (k, j) entry of ad(y).
    rows: Vec<(usize, usize, Vector)>,
    center: Vec<Vector>,
}

impl<'a> PowerSolver<'a> {
    pub fn new(g: &'a SuperAlgebra) -> Self {
        let n = g.dim();
        let mut rows = Vec::new();
        for j in 0..n {
            let mut block: Vec<Vector> = vec![vector::zero(n); n];
            for i in 0..n {
                // y_i c = (-1)^{|e_i||c|} c y_i
                for (k, c) in g.bracket_basis(i, j).into_iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    block[k][i] = if Parity::sign(g.basis()[i].parity, c.parity()) {
                        -c
                    } else {
                        c
                    };
                }
            }
            for (k, row) in block.into_iter().enumerate() {
                rows.push((k, j, row));
            }
        }
        let coefficient_rows: Vec<Vector> = rows
            .iter()
            .filter(|(_, _, r)| !vector::is_zero(r))
            .map(|(_, _, r)| r.clone())
            .collect();
        let red = linalg::reduce(coefficient_rows, n);
        let center = red
            .kernel(g.field())
            .into_iter()
            .filter(|z| (0..n).all(|j| vector::is_zero(&g.bracket(z, &g.basis_vector(j)).unwrap())))
            .collect();
        PowerSolver { g, rows, center }
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        self.g
    }

    /// Central vectors found by the elimination (a basis of the center over a field).
    pub fn center(&self) -> &[Vector] {
        &self.center
    }

    /// Some y with ad(y) = target, free coordinates set to zero; verified exactly.
    pub fn solve_operator(&self, target: &Matrix) -> Result<PowerSolution, PStructError> {
        let n = self.g.dim();
        let system: Vec<Vector> = self
            .rows
            .iter()
            .filter_map(|(k, j, r)| {
                let rhs = target.get(*k, *j);
                if vector::is_zero(r) && rhs.is_zero() {
                    return None;
                }
                let mut row = r.clone();
                row.push(rhs.clone());
                Some(row)
            })
            .collect();
        let red = linalg::reduce(system, n);
        let mut y = vector::zero(n);
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            y[p] = row[n].clone();
        }
        if self.g.ad_matrix(&y).ok().as_ref() == Some(target) {
            return Ok(PowerSolution {
                value: y,
                center: self.center.clone(),
            });
        }
        Err(self.diagnose(&red, n))
    }

    fn diagnose(&self, red: &Reduction, n: usize) -> PStructError {
        let inconsistent = red
            .rest
            .iter()
            .find(|row| row[..n].iter().all(Scalar::is_zero) && !row[n].is_zero());
        match inconsistent {
            Some(row) => PStructError::NoSolution(format!("equation 0 = {}", row[n])),
            None if red.is_complete() => {
                PStructError::NoSolution("candidate fails verification".into())
            }
            None => PStructError::SymbolicUnderdetermined(format!(
                "{} equations without a unit pivot",
                red.rest.len()
            )),
        }
    }

    /// x^[p] for even x.
    pub fn p_power(&self, x: &[Scalar]) -> Result<PowerSolution, PStructError> {
        if self.g.element_parity(x)? != Parity::Even {
            return Err(PStructError::NotEven(self.g.format(x)));
        }
        let p = self.g.characteristic() as u64;
        self.solve_operator(&ad_power(self.g, x, p)?)
    }

    /// x^[2p] = (x²)^[p] for odd x, checked against ad(x)^{2p}.
    pub fn two_p_power(&self, x: &[Scalar]) -> Result<PowerSolution, PStructError> {
        let sq = self.g.squaring(x)?;
        let sol = self.p_power(&sq)?;
        let p = self.g.characteristic() as u64;
        if self.g.ad_matrix(&sol.value)? != ad_power(self.g, x, 2 * p)? {
            return Err(PStructError::NoSolution(format!(
                "ad of the 2p-power of {} differs from ad^2p",
                self.g.format(x)
            )));
        }
        Ok(sol)
    }
}

pub fn solve_p_power(g: &SuperAlgebra, x: &[Scalar]) -> Result<PowerSolution, PStructError> {
    PowerSolver::new(g).p_power(x)
}

pub fn two_p_power(g: &SuperAlgebra, x: &[Scalar]) -> Result<PowerSolution, PStructError> {
    PowerSolver::new(g).two_p_power(x)
}

/// True when a - b lies in the span of `center` (unit-pivot reduction).
pub fn same_coset(a: &[Scalar], b: &[Scalar], center: &[Vector]) -> bool {
    let diff = vector::sub(a, b);
    if vector::is_zero(&diff) {
        return true;
    }
    let basis = linalg::reduce(center.to_vec(), a.len());
    vector::is_zero(&linalg::reduce_against(&diff, &basis))
}

/// Values x^[p] on even basis elements and x^[2p] on odd ones, each up to the center.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PMap {
    pub even: BTreeMap<usize, Vector>,
    pub odd: BTreeMap<usize, Vector>,
    pub center: Vec<Vector>,
}

impl PMap {
    pub fn get(&self, i: usize) -> Option<&Vector> {
        self.even.get(&i).or_else(|| self.odd.get(&i))
    }

    /// Entries where the two maps disagree modulo the union of their centers.
    pub fn differences(&self, other: &PMap) -> Vec<usize> {
        let mut center = self.center.clone();
        center.extend(other.center.iter().cloned());
        let keys: std::collections::BTreeSet<usize> = self
            .even
            .keys()
            .chain(self.odd.keys())
            .chain(other.even.keys())
            .chain(other.odd.keys())
            .copied()
            .collect();
        keys.into_iter()
            .filter(|i| match (self.get(*i), other.get(*i)) {
                (Some(a), Some(b)) => !same_coset(a, b, &center),
                _ => true,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFailure {
    pub element: String,
    pub reason: String,
}

/// Outcome of [`verify_restricted`]; `pmap` holds every entry that could be solved.
#[derive(Clone, Debug)]
pub struct Restrictedness {
    pub pmap: PMap,
    pub failures: Vec<PFailure>,
}

impl Restrictedness {
    pub fn is_restricted(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Solves for every basis element, acting by ad on the whole superalgebra.
pub fn verify_restricted(g: &SuperAlgebra) -> Restrictedness {
    let solver = PowerSolver::new(g);
    let results: Vec<(usize, Parity, Result<PowerSolution, PStructError>)> = (0..g.dim())
        .into_par_iter()
        .map(|i| {
            let e = g.basis_vector(i);
            let parity = g.basis()[i].parity;
            let r = match parity {
                Parity::Even => solver.p_power(&e),
                Parity::Odd => solver.two_p_power(&e),
            };
            (i, parity, r)
        })
        .collect();
    let mut pmap = PMap {
        center: solver.center().to_vec(),
        ..PMap::default()
    };
    let mut failures = Vec::new();
    for (i, parity, r) in results {
        match r {
            Ok(sol) => {
                let table = match parity {
                    Parity::Even => &mut pmap.even,
                    Parity::Odd => &mut pmap.odd,
                };
                table.insert(i, sol.value);
            }
            Err(e) => failures.push(PFailure {
                element: g.basis()[i].name.clone(),
                reason: e.to_string(),
            }),
        }
    }
    Restrictedness { pmap, failures }
}

/// Candidate map: toral basis elements to themselves, every other basis element to 0.
pub fn torus_pmap_ansatz(g: &SuperAlgebra, torus: &[Vector]) -> Result<PMap, PStructError> {
    let prime = g
        .stored()
        .flat_map(|(_, t)| t.iter())
        .find(|(_, c)| !c.as_constant().is_some_and(|f| f.is_prime_field()));
    if let Some((_, c)) = prime {
        return Err(PStructError::NotPrimeField(c.to_string()));
    }
    weight_decomposition(g, torus).map_err(|e| match e {
        SuperAlgError::NotDiagonal(msg) => PStructError::NotWeightBasis(msg),
        other => PStructError::Algebra(other),
    })?;
    let n = g.dim();
    let span = linalg::reduce(torus.to_vec(), n);
    let mut pmap = PMap::default();
    for i in 0..n {
        let e = g.basis_vector(i);
        let toral = g.basis()[i].parity == Parity::Even
            && vector::is_zero(&linalg::reduce_against(&e, &span));
        let value = if toral { e } else { vector::zero(n) };
        match g.basis()[i].parity {
            Parity::Even => pmap.even.insert(i, value),
            Parity::Odd => pmap.odd.insert(i, value),
        };
    }
    Ok(pmap)
}

/// Entries of `pmap` that violate ad(x^[p]) = ad(x)^p (or the 2p version for odd x).
pub fn check_pmap(g: &SuperAlgebra, pmap: &PMap) -> Vec<PFailure> {
    let p = g.characteristic() as u64;
    let mut out = Vec::new();
    for (table, exp) in [(&pmap.even, p), (&pmap.odd, 2 * p)] {
        for (&i, value) in table {
            let e = g.basis_vector(i);
            let lhs = g.ad_matrix(value);
            let rhs = ad_power(g, &e, exp);
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => {}
                (Ok(_), Ok(_)) => out.push(PFailure {
                    element: g.basis()[i].name.clone(),
                    reason: format!("ad({}) differs from ad^{exp}", g.format(value)),
                }),
                (Err(e), _) => out.push(PFailure {
                    element: g.basis()[i].name.clone(),
                    reason: e.to_string(),
                }),
                (_, Err(e)) => out.push(PFailure {
                    element: g.basis()[i].name.clone(),
                    reason: e.to_string(),
                }),
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{GaloisField, ParameterRing};
    use crate::superalg::{AlgebraBuilder, BasisElement};

    fn ring() -> ParameterRing {
        ParameterRing::standard(GaloisField::prime(3).unwrap())
    }

    fn sl2() -> SuperAlgebra {
        let r = ring();
        let mut b = AlgebraBuilder::new(r.clone());
        for n in ["h", "e", "f"] {
            b.add_basis(BasisElement::even(n)).unwrap();
        }
        b.set_bracket_named("h", "e", &[("e", r.int(2))]).unwrap();
        b.set_bracket_named("h", "f", &[("f", r.int(-2))]).unwrap();
        b.set_bracket_named("e", "f", &[("h", r.int(1))]).unwrap();
        b.build()
    }

    fn osp12() -> SuperAlgebra {
        let r = ring();
        let mut b = sl2().to_builder();
        b.add_basis(BasisElement::odd("x")).unwrap();
        b.add_basis(BasisElement::odd("y")).unwrap();
        b.set_bracket_named("h", "x", &[("x", r.int(1))]).unwrap();
        b.set_bracket_named("h", "y", &[("y", r.int(-1))]).unwrap();
        b.set_bracket_named("e", "y", &[("x", r.int(-1))]).unwrap();
        b.set_bracket_named("f", "x", &[("y", r.int(-1))]).unwrap();
        b.set_bracket_named("x", "x", &[("e", r.int(2))]).unwrap();
        b.set_bracket_named("y", "y", &[("f", r.int(-2))]).unwrap();
        b.set_bracket_named("x", "y", &[("h", r.int(1))]).unwrap();
        b.build()
    }

    #[test]
    fn sl2_is_restricted_with_standard_map() {
        let g = sl2();
        let r = verify_restricted(&g);
        assert!(r.is_restricted());
        assert_eq!(r.pmap.even[&0], g.named("h").unwrap());
        assert!(vector::is_zero(&r.pmap.even[&1]));
        assert!(check_pmap(&g, &r.pmap).is_empty());
        let ansatz = torus_pmap_ansatz(&g, &[g.named("h").unwrap()]).unwrap();
        assert!(ansatz.differences(&r.pmap).is_empty());
    }

    #[test]
    fn osp_two_p_map() {
        let g = osp12();
        let r = verify_restricted(&g);
        assert!(r.is_restricted(), "{:?}", r.failures);
        // x² = e and e^[3] = 0
        assert!(vector::is_zero(&r.pmap.odd[&3]));
    }

    #[test]
    fn zero_and_power_basics() {
        let g = sl2();
        let z = vector::zero(3);
        assert!(ad_power(&g, &z, 5).unwrap().is_zero());
        assert!(vector::is_zero(&solve_p_power(&g, &z).unwrap().value));
        let h = g.named("h").unwrap();
        assert_eq!(ad_power(&g, &h, 3).unwrap(), g.ad_matrix(&h).unwrap());
    }

    #[test]
    fn abelian_gets_zero_map_and_full_center() {
        let mut b = AlgebraBuilder::new(ring());
        b.add_basis(BasisElement::even("a")).unwrap();
        b.add_basis(BasisElement::odd("b")).unwrap();
        let g = b.build();
        let r = verify_restricted(&g);
        assert!(r.is_restricted());
        assert!(r.pmap.even.values().all(|v| vector::is_zero(v)));
        assert_eq!(r.pmap.center.len(), 2);
    }

    #[test]
    fn heisenberg_like_no_solution() {
        // ad(d) shifts u3 -> u2 -> u1 -> u0, so ad(d)^3 sends u3 to u0; no ad(y) does
        let r = ring();
        let mut b = AlgebraBuilder::new(r.clone());
        for n in ["d", "u0", "u1", "u2", "u3"] {
            b.add_basis(BasisElement::even(n)).unwrap();
        }
        b.set_bracket_named("d", "u1", &[("u0", r.int(1))]).unwrap();
        b.set_bracket_named("d", "u2", &[("u1", r.int(1))]).unwrap();
        b.set_bracket_named("d", "u3", &[("u2", r.int(1))]).unwrap();
        let g = b.build();
        assert!(g.check_super_identities().is_empty());
        let err = solve_p_power(&g, &g.named("d").unwrap()).unwrap_err();
        assert!(matches!(err, PStructError::NoSolution(_)), "{err}");
    }

    #[test]
    fn odd_input_rejected() {
        let g = osp12();
        assert!(matches!(
            solve_p_power(&g, &g.named("x").unwrap()),
            Err(PStructError::NotEven(_))
        ));
    }
}

use super::FamilyError;
use crate::divpow::{DPDescriptor, DPElement};
use crate::linalg;
use crate::scalars::Scalar;

/// Root-vector name, Chevalley alias and degree of each row of the table, in table order.
pub const TABLE: [(&str, &str, i64); 10] = [
    ("E_{-2a-b}", "y4", -2),
    ("E_{-a}", "y2", -1),
    ("E_{-a-b}", "y3", -1),
    ("H_a", "h2", 0),
    ("H_b", "h1", 0),
    ("E_b", "y1", 0),
    ("E_{-b}", "x1", 0),
    ("E_a", "x2", 1),
    ("E_{a+b}", "x3", 1),
    ("E_{2a+b}", "x4", 2),
];

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub name: &'static str,
    pub alias: &'static str,
    pub degree: i64,
    pub function: DPElement,
}

/// Generating functions in O(3;(1,1,1)) of a basis of L(ε,0,0).
///
/// Squares are divided squares: p^2 stands for p^(2).
#[derive(Clone, Debug)]
pub struct GeneratingTable {
    pub descriptor: DPDescriptor,
    pub entries: Vec<TableEntry>,
    echelon: linalg::Reduction,
}

fn mono(a: u32, b: u32, c: u32, coef: Scalar) -> DPElement {
    DPElement::monomial(vec![a, b, c], coef)
}

impl GeneratingTable {
    pub fn new(eps: &Scalar) -> Result<Self, FamilyError> {
        if !eps.is_unit() {
            return Err(FamilyError::EpsilonZero(eps.to_string()));
        }
        let d = DPDescriptor::k31();
        let r = d.ring();
        let one = r.one();
        let e = eps.clone();
        let e1 = &one + &e;
        let functions = [
            mono(0, 0, 0, one.clone()),
            mono(1, 0, 0, one.clone()),
            mono(0, 1, 0, one.clone()),
            mono(0, 0, 1, -&e).add(&mono(1, 1, 0, one.clone())),
            mono(1, 1, 0, -&one),
            mono(2, 0, 0, one.clone()),
            mono(0, 2, 0, -&one),
            mono(1, 2, 0, -&e1).add(&mono(0, 1, 1, e.clone())),
            mono(2, 1, 0, e1.clone()).add(&mono(1, 0, 1, e.clone())),
            mono(2, 2, 0, &e * &e1).add(&mono(0, 0, 2, &e * &e)),
        ];
        let entries: Vec<TableEntry> = TABLE
            .iter()
            .zip(functions)
            .map(|(&(name, alias, degree), function)| TableEntry {
                name,
                alias,
                degree,
                function,
            })
            .collect();

        let monomials = d.monomials();
        let width = monomials.len();
        let n = entries.len();
        let rows: Vec<Vec<Scalar>> = entries
            .iter()
            .enumerate()
            .map(|(i, t)| {
                let mut row: Vec<Scalar> = monomials
                    .iter()
                    .map(|m| t.function.coefficient(m))
                    .collect();
                row.extend((0..n).map(|k| if k == i { one.clone() } else { Scalar::zero() }));
                row
            })
            .collect();
        let echelon = linalg::reduce(rows, width);
        if echelon.rank() != n {
            return Err(FamilyError::ExpansionFailure(format!(
                "generating functions have rank {} over unit pivots",
                echelon.rank()
            )));
        }
        Ok(GeneratingTable {
            descriptor: d,
            entries,
            echelon,
        })
    }

    pub fn index_of_alias(&self, alias: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.alias == alias)
    }

    /// Coefficients of f on the table functions (table order), checked exactly.
    pub fn expand(&self, f: &DPElement) -> Result<Vec<Scalar>, FamilyError> {
        let monomials = self.descriptor.monomials();
        let width = monomials.len();
        let v: Vec<Scalar> = monomials.iter().map(|m| f.coefficient(m)).collect();
        let n = self.entries.len();
        let mut coords = vec![Scalar::zero(); n];
        for (row, &p) in self.echelon.rows.iter().zip(&self.echelon.pivots) {
            if v[p].is_zero() {
                continue;
            }
            for (k, c) in coords.iter_mut().enumerate() {
                let a = &row[width + k];
                if !a.is_zero() {
                    *c += &(&v[p] * a);
                }
            }
        }
        if self.combine(&coords) != *f {
            return Err(FamilyError::ExpansionFailure(format!(
                "{} is not in the span of the table",
                f.format(&self.descriptor)
            )));
        }
        Ok(coords)
    }

    /// Σ c_k f_k over the table functions.
    pub fn combine(&self, coords: &[Scalar]) -> DPElement {
        let mut out = DPElement::zero();
        for (c, e) in coords.iter().zip(&self.entries) {
            if !c.is_zero() {
                out = out.add(&e.function.scale(c));
            }
        }
        out
    }

    /// Degree of a homogeneous function, p̂ and q̂ counting 1 and t counting 2, shifted by -2.
    pub fn degree_of(f: &DPElement) -> Option<i64> {
        let mut found = None;
        for (m, _) in f.terms() {
            let deg = (m[0] + m[1] + 2 * m[2]) as i64 - 2;
            match found {
                None => found = Some(deg),
                Some(d) if d != deg => return None,
                _ => {}
            }
        }
        found
    }
}

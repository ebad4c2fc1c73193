//! Divided-power superalgebras O(m;N|n), their vector fields, divergence-free
//! deformations and the contact bracket on O(3;(1,1,1)).

mod contact;
mod element;
mod svect;
mod vfield;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::scalars::{GaloisField, ParameterRing, Parity, ScalarError};
use crate::superalg::SuperAlgError;

pub use contact::{contact_bracket, k31_algebra, laplace};
pub use element::{binomial_mod, dp_derivative, dp_multiply, DPElement, Exponents};
pub use svect::{
    field_algebra, svect_deformed_basis, u_bar, vect_algebra, verify_eq_new, EqNewReport,
    FieldAlgebra,
};
pub use vfield::{deformed_divergence, derivation_power, divergence, vf_bracket, VectorField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DivPowError {
    #[error("descriptor mismatch: {0}")]
    DescriptorMismatch(String),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("operation needs the O(3;(1,1,1)) descriptor with indeterminates ph, qh, t")]
    WrongDescriptor,
    #[error("only the shearing vector (1,...,1) is supported here, got {0:?}")]
    UnsupportedShearing(Vec<u32>),
    #[error("odd indeterminate count must be even, got {0}")]
    OddCount(usize),
    #[error("index {0} is not an even indeterminate")]
    NotEvenIndex(usize),
    #[error("inhomogeneous vector field")]
    Inhomogeneous,
    #[error("span of fields is not closed under the bracket: {0}")]
    NotClosed(String),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Algebra(#[from] SuperAlgError),
}

/// Shape of O(m;N|n): heights of the even indeterminates and the odd count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPDescriptor {
    ring: ParameterRing,
    heights: Vec<u32>,
    odd: usize,
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl DPDescriptor {
    /// Indeterminates named u1.. (even) and th1.. (odd).
    pub fn new(p: u32, heights: Vec<u32>, odd: usize) -> Result<Self, DivPowError> {
        let names = (1..=heights.len())
            .map(|i| format!("u{i}"))
            .chain((1..=odd).map(|j| format!("th{j}")))
            .collect();
        DPDescriptor::with_names(p, heights, odd, names)
    }

    pub fn with_names(
        p: u32,
        heights: Vec<u32>,
        odd: usize,
        names: Vec<String>,
    ) -> Result<Self, DivPowError> {
        let field = GaloisField::prime(p)?;
        if names.len() != heights.len() + odd {
            return Err(DivPowError::DescriptorMismatch(format!(
                "{} names for {} indeterminates",
                names.len(),
                heights.len() + odd
            )));
        }
        if heights.contains(&0) {
            return Err(DivPowError::DescriptorMismatch(
                "heights must be positive".into(),
            ));
        }
        let ring = ParameterRing::standard(field);
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if ring.find(n).is_some() || n == "z" || index.insert(n.clone(), i).is_some() {
                return Err(DivPowError::DescriptorMismatch(format!("bad name {n}")));
            }
        }
        Ok(DPDescriptor {
            ring,
            heights,
            odd,
            names,
            index,
        })
    }

    /// O(3;(1,1,1)) at p = 3 with indeterminates ph, qh, t.
    pub fn k31() -> Self {
        DPDescriptor::with_names(
            3,
            vec![1, 1, 1],
            0,
            vec!["ph".into(), "qh".into(), "t".into()],
        )
        .expect("valid descriptor")
    }

    pub fn ring(&self) -> &ParameterRing {
        &self.ring
    }

    pub fn field(&self) -> GaloisField {
        self.ring.field()
    }

    pub fn characteristic(&self) -> u32 {
        self.field().characteristic()
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn even_count(&self) -> usize {
        self.heights.len()
    }

    pub fn odd_count(&self) -> usize {
        self.odd
    }

    pub fn count(&self) -> usize {
        self.heights.len() + self.odd
    }

    /// Exclusive exponent bound of indeterminate i.
    pub fn bound(&self, i: usize) -> u32 {
        if i < self.heights.len() {
            self.characteristic().pow(self.heights[i])
        } else {
            2
        }
    }

    pub fn parity_of(&self, i: usize) -> Parity {
        if i < self.heights.len() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn monomial_parity(&self, k: &[u32]) -> Parity {
        Parity::from_count(k[self.heights.len()..].iter().sum::<u32>() as usize)
    }

    pub fn dim(&self) -> usize {
        (0..self.count()).map(|i| self.bound(i) as usize).product()
    }

    /// All monomials, last indeterminate varying fastest.
    pub fn monomials(&self) -> Vec<Exponents> {
        let n = self.count();
        let mut out = Vec::with_capacity(self.dim());
        let mut cur = vec![0u32; n];
        loop {
            out.push(cur.clone());
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.bound(i) {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    pub fn format_monomial(&self, k: &[u32]) -> String {
        let parts: Vec<String> = k
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| {
                if a == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^({a})", self.names[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn parse(&self, text: &str) -> Result<DPElement, DivPowError> {
        element::parse(self, text)
    }

    /// Header such as `O(m=1;N=[1]|n=2;p=3)`.
    pub fn header(&self) -> String {
        self.to_string()
    }

    pub fn parse_header(text: &str) -> Result<DPDescriptor, DivPowError> {
        let bad = || DivPowError::Parse(format!("bad descriptor header {text:?}"));
        let inner = text
            .trim()
            .strip_prefix("O(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (left, right) = inner.split_once('|').ok_or_else(bad)?;
        let mut m = None;
        let mut heights = None;
        let mut n = None;
        let mut p = None;
        for part in left.split(';').chain(right.split(';')) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "m" => m = Some(v.trim().parse::<usize>().map_err(|_| bad())?),
                "n" => n = Some(v.trim().parse::<usize>().map_err(|_| bad())?),
                "p" => p = Some(v.trim().parse::<u32>().map_err(|_| bad())?),
                "N" => {
                    let list = v
                        .trim()
                        .strip_prefix('[')
                        .and_then(|s| s.strip_suffix(']'))
                        .ok_or_else(bad)?;
                    let hs: Result<Vec<u32>, _> = list
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| s.trim().parse::<u32>())
                        .collect();
                    heights = Some(hs.map_err(|_| bad())?);
                }
                _ => return Err(bad()),
            }
        }
        let (m, heights, n, p) = (
            m.ok_or_else(bad)?,
            heights.ok_or_else(bad)?,
            n.ok_or_else(bad)?,
            p.ok_or_else(bad)?,
        );
        if heights.len() != m {
            return Err(bad());
        }
        DPDescriptor::new(p, heights, n)
    }
}

impl fmt::Display for DPDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hs: Vec<String> = self.heights.iter().map(ToString::to_string).collect();
        write!(
            f,
            "O(m={};N=[{}]|n={};p={})",
            self.heights.len(),
            hs.join(","),
            self.odd,
            self.characteristic()
        )
    }
}

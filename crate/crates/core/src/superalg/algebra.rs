use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;

use super::{vector, SuperAlgError, Vector};
use crate::linalg::Matrix;
use crate::scalars::{FieldElement, GaloisField, ParameterRing, Parity, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub name: String,
    pub parity: Parity,
    pub weight: Option<Vec<i64>>,
    pub degree: Option<i64>,
}

impl BasisElement {
    pub fn even(name: &str) -> Self {
        BasisElement {
            name: name.to_string(),
            parity: Parity::Even,
            weight: None,
            degree: None,
        }
    }

    pub fn odd(name: &str) -> Self {
        BasisElement {
            parity: Parity::Odd,
            ..BasisElement::even(name)
        }
    }

    pub fn with_degree(mut self, d: i64) -> Self {
        self.degree = Some(d);
        self
    }

    pub fn with_weight(mut self, w: Vec<i64>) -> Self {
        self.weight = Some(w);
        self
    }
}

/// Sparse linear combination Σ c_k e_k.
pub type Terms = Vec<(usize, Scalar)>;

/// Lie superalgebra given by structure constants on a homogeneous basis.
///
/// Constants are kept for i ≤ j only; [e_j, e_i] = -(-1)^{|e_i||e_j|}[e_i, e_j].
#[derive(Clone)]
pub struct SuperAlgebra {
    ring: ParameterRing,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    table: BTreeMap<(usize, usize), Terms>,
}

#[derive(Clone)]
pub struct AlgebraBuilder {
    ring: ParameterRing,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    table: BTreeMap<(usize, usize), Vector>,
}

impl AlgebraBuilder {
    pub fn new(ring: ParameterRing) -> Self {
        AlgebraBuilder {
            ring,
            basis: Vec::new(),
            index: HashMap::new(),
            table: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &ParameterRing {
        &self.ring
    }

    pub fn add_basis(&mut self, e: BasisElement) -> Result<usize, SuperAlgError> {
        if self.index.contains_key(&e.name) {
            return Err(SuperAlgError::DuplicateBasis(e.name));
        }
        let i = self.basis.len();
        self.index.insert(e.name.clone(), i);
        self.basis.push(e);
        for v in self.table.values_mut() {
            v.push(Scalar::zero());
        }
        Ok(i)
    }

    pub fn index_of(&self, name: &str) -> Result<usize, SuperAlgError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| SuperAlgError::UnknownBasis(name.to_string()))
    }

    fn normalize(&self, i: usize, j: usize, value: Vector) -> ((usize, usize), Vector) {
        if i <= j {
            return ((i, j), value);
        }
        let pi = self.basis[i].parity;
        let pj = self.basis[j].parity;
        let flipped = if Parity::sign(pi, pj) {
            value
        } else {
            vector::neg(&value)
        };
        ((j, i), flipped)
    }

    fn dense(&self, value: &[(usize, Scalar)]) -> Result<Vector, SuperAlgError> {
        let n = self.basis.len();
        let mut v = vector::zero(n);
        for (k, c) in value {
            if *k >= n {
                return Err(SuperAlgError::DimensionMismatch {
                    expected: n,
                    got: *k + 1,
                });
            }
            v[*k] += c;
        }
        Ok(v)
    }

    /// Dense value of [e_i, e_j] keyed by the stored (min, max) pair.
    pub(crate) fn normalized(
        &self,
        i: usize,
        j: usize,
        value: &[(usize, Scalar)],
    ) -> Result<((usize, usize), Vector), SuperAlgError> {
        let v = self.dense(value)?;
        Ok(self.normalize(i, j, v))
    }

    /// Sets [e_i, e_j], replacing any previous value.
    pub fn set_bracket(
        &mut self,
        i: usize,
        j: usize,
        value: &[(usize, Scalar)],
    ) -> Result<(), SuperAlgError> {
        let v = self.dense(value)?;
        let (key, v) = self.normalize(i, j, v);
        self.table.insert(key, v);
        Ok(())
    }

    /// Adds to [e_i, e_j].
    pub fn add_bracket(
        &mut self,
        i: usize,
        j: usize,
        value: &[(usize, Scalar)],
    ) -> Result<(), SuperAlgError> {
        let v = self.dense(value)?;
        let (key, v) = self.normalize(i, j, v);
        let n = self.basis.len();
        let slot = self.table.entry(key).or_insert_with(|| vector::zero(n));
        *slot = vector::add(slot, &v);
        Ok(())
    }

    pub fn set_bracket_named(
        &mut self,
        a: &str,
        b: &str,
        value: &[(&str, Scalar)],
    ) -> Result<(), SuperAlgError> {
        let terms = self.named_terms(value)?;
        self.set_bracket(self.index_of(a)?, self.index_of(b)?, &terms)
    }

    pub fn add_bracket_named(
        &mut self,
        a: &str,
        b: &str,
        value: &[(&str, Scalar)],
    ) -> Result<(), SuperAlgError> {
        let terms = self.named_terms(value)?;
        self.add_bracket(self.index_of(a)?, self.index_of(b)?, &terms)
    }

    fn named_terms(&self, value: &[(&str, Scalar)]) -> Result<Terms, SuperAlgError> {
        value
            .iter()
            .map(|(k, c)| Ok((self.index_of(k)?, c.clone())))
            .collect()
    }

    pub fn build(self) -> SuperAlgebra {
        let table = self
            .table
            .into_iter()
            .filter_map(|(key, v)| {
                let terms: Terms = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                (!terms.is_empty()).then_some((key, terms))
            })
            .collect();
        SuperAlgebra {
            ring: self.ring,
            basis: self.basis,
            index: self.index,
            table,
        }
    }
}

/// Violations found by [`SuperAlgebra::check_super_identities`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdentityReport {
    /// Even elements with nonzero self-bracket.
    pub skew: Vec<String>,
    /// Pairs whose bracket has the wrong parity: (a, b, offending term).
    pub parity: Vec<(String, String, String)>,
    /// Triples (a, b, c) with nonzero Jacobiator, and its value.
    pub jacobi: Vec<([String; 3], String)>,
}

impl IdentityReport {
    pub fn is_empty(&self) -> bool {
        self.skew.is_empty() && self.parity.is_empty() && self.jacobi.is_empty()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "super identities hold");
        }
        for s in &self.skew {
            writeln!(f, "skew: [{s},{s}] != 0")?;
        }
        for (a, b, t) in &self.parity {
            writeln!(f, "parity: [{a},{b}] has term {t}")?;
        }
        for ([a, b, c], v) in &self.jacobi {
            writeln!(f, "jacobi: ({a}, {b}, {c}) -> {v}")?;
        }
        Ok(())
    }
}

impl SuperAlgebra {
    pub fn to_builder(&self) -> AlgebraBuilder {
        let n = self.dim();
        AlgebraBuilder {
            ring: self.ring.clone(),
            basis: self.basis.clone(),
            index: self.index.clone(),
            table: self
                .table
                .iter()
                .map(|(k, t)| {
                    let mut v = vector::zero(n);
                    for (i, c) in t {
                        v[*i] = c.clone();
                    }
                    (*k, v)
                })
                .collect(),
        }
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

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// (even dimension, odd dimension).
    pub fn sdim(&self) -> (usize, usize) {
        let odd = self.basis.iter().filter(|e| e.parity.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn index_of(&self, name: &str) -> Result<usize, SuperAlgError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| SuperAlgError::UnknownBasis(name.to_string()))
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = vector::zero(self.dim());
        v[i] = self.ring.one();
        v
    }

    pub fn named(&self, name: &str) -> Result<Vector, SuperAlgError> {
        Ok(self.basis_vector(self.index_of(name)?))
    }

    /// Vector from (basis name, coefficient) pairs.
    pub fn vector_from(&self, terms: &[(&str, Scalar)]) -> Result<Vector, SuperAlgError> {
        let mut v = vector::zero(self.dim());
        for (name, c) in terms {
            v[self.index_of(name)?] += c;
        }
        Ok(v)
    }

    /// Stored constants of [e_i, e_j] for i ≤ j.
    pub fn stored(&self) -> impl Iterator<Item = (&(usize, usize), &Terms)> {
        self.table.iter()
    }

    /// Constants of [e_i, e_j] together with the sign to apply.
    fn constants(&self, i: usize, j: usize) -> Option<(&Terms, bool)> {
        if i <= j {
            self.table.get(&(i, j)).map(|t| (t, false))
        } else {
            let negate = !Parity::sign(self.basis[i].parity, self.basis[j].parity);
            self.table.get(&(j, i)).map(|t| (t, negate))
        }
    }

    /// [e_i, e_j] as a dense vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        let mut out = vector::zero(self.dim());
        if let Some((terms, negate)) = self.constants(i, j) {
            for (k, c) in terms {
                out[*k] = if negate { -c } else { c.clone() };
            }
        }
        out
    }

    pub fn check_dim(&self, v: &[Scalar]) -> Result<(), SuperAlgError> {
        if v.len() != self.dim() {
            return Err(SuperAlgError::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension: [Σ v_i e_i, Σ w_j e_j] = Σ (-1)^{|e_i||w_j|} v_i w_j [e_i, e_j].
    pub fn bracket(&self, v: &[Scalar], w: &[Scalar]) -> Result<Vector, SuperAlgError> {
        self.check_dim(v)?;
        self.check_dim(w)?;
        let mut out = vector::zero(self.dim());
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                let Some((terms, negate)) = self.constants(i, j) else {
                    continue;
                };
                let mut coef = vi * wj;
                if negate != Parity::sign(self.basis[i].parity, wj.parity()) {
                    coef = -coef;
                }
                for (k, c) in terms {
                    out[*k] += &(&coef * c);
                }
            }
        }
        Ok(out)
    }

    /// Parity of a homogeneous element (zero counts as even).
    pub fn element_parity(&self, v: &[Scalar]) -> Result<Parity, SuperAlgError> {
        self.check_dim(v)?;
        let mut found: Option<Parity> = None;
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = c.parity() + self.basis[i].parity;
            match found {
                None => found = Some(p),
                Some(q) if q != p => {
                    return Err(SuperAlgError::InhomogeneousElement(self.format(v)))
                }
                _ => {}
            }
        }
        Ok(found.unwrap_or(Parity::Even))
    }

    /// Matrix of y ↦ [x, y]: column j holds the coordinates of [x, e_j].
    pub fn ad_matrix(&self, x: &[Scalar]) -> Result<Matrix, SuperAlgError> {
        self.element_parity(x)?;
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                let Some((terms, negate)) = self.constants(i, j) else {
                    continue;
                };
                for (k, c) in terms {
                    let t = xi * c;
                    let cur = m.get(*k, j).clone();
                    m.set(*k, j, if negate { &cur - &t } else { &cur + &t });
                }
            }
        }
        Ok(m)
    }

    /// Skew, parity and Jacobi checks on all basis pairs and sorted triples.
    pub fn check_super_identities(&self) -> IdentityReport {
        let mut report = IdentityReport::default();
        let n = self.dim();
        for (&(i, j), terms) in &self.table {
            if i == j && !self.basis[i].parity.is_odd() {
                report.skew.push(self.basis[i].name.clone());
            }
            let expected = self.basis[i].parity + self.basis[j].parity;
            for (k, c) in terms {
                if !c.is_homogeneous() || c.parity() + self.basis[*k].parity != expected {
                    report.parity.push((
                        self.basis[i].name.clone(),
                        self.basis[j].name.clone(),
                        format!("({c})*{}", self.basis[*k].name),
                    ));
                }
            }
        }
        let basis: Vec<Vector> = (0..n).map(|i| self.basis_vector(i)).collect();
        let mut jacobi: Vec<([String; 3], String)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut found = Vec::new();
                for j in i..n {
                    let eij = self.bracket_basis(i, j);
                    for k in j..n {
                        let jac = self.jacobiator(&basis[i], &basis[j], &basis[k], &eij);
                        if !vector::is_zero(&jac) {
                            found.push((
                                [
                                    self.basis[i].name.clone(),
                                    self.basis[j].name.clone(),
                                    self.basis[k].name.clone(),
                                ],
                                self.format(&jac),
                            ));
                        }
                    }
                }
                found
            })
            .collect();
        jacobi.sort();
        report.jacobi = jacobi;
        report
    }

    /// [a,[b,c]] - [[a,b],c] - (-1)^{|a||b|}[b,[a,c]] for basis vectors, with [a,b] given.
    fn jacobiator(&self, a: &Vector, b: &Vector, c: &Vector, ab: &Vector) -> Vector {
        let pa = self.element_parity(a).unwrap_or(Parity::Even);
        let pb = self.element_parity(b).unwrap_or(Parity::Even);
        let bc = self.bracket(b, c).expect("dimensions agree");
        let ac = self.bracket(a, c).expect("dimensions agree");
        let t1 = self.bracket(a, &bc).expect("dimensions agree");
        let t2 = self.bracket(ab, c).expect("dimensions agree");
        let t3 = self.bracket(b, &ac).expect("dimensions agree");
        let mut out = vector::sub(&t1, &t2);
        out = if Parity::sign(pa, pb) {
            vector::add(&out, &t3)
        } else {
            vector::sub(&out, &t3)
        };
        out
    }

    /// Jacobiator of three homogeneous elements.
    pub fn jacobi(
        &self,
        a: &[Scalar],
        b: &[Scalar],
        c: &[Scalar],
    ) -> Result<Vector, SuperAlgError> {
        let ab = self.bracket(a, b)?;
        self.element_parity(a)?;
        self.element_parity(b)?;
        Ok(self.jacobiator(&a.to_vec(), &b.to_vec(), &c.to_vec(), &ab))
    }

    /// x² = ½[x, x] for odd x.
    pub fn squaring(&self, x: &[Scalar]) -> Result<Vector, SuperAlgError> {
        if self.characteristic() == 2 {
            return Err(SuperAlgError::CharacteristicTwo);
        }
        if self.element_parity(x)? != Parity::Odd {
            return Err(SuperAlgError::EvenElement(self.format(x)));
        }
        let field = self.field();
        let half = field.int(2).inverse().expect("p is odd");
        let xx = self.bracket(x, x)?;
        Ok(xx.iter().map(|c| c.scale(&half)).collect())
    }

    /// Substitutes field values for some parameters.
    pub fn specialize(
        &self,
        assignment: &BTreeMap<String, FieldElement>,
    ) -> Result<SuperAlgebra, SuperAlgError> {
        let mut table = BTreeMap::new();
        for (key, terms) in &self.table {
            let mut out = Vec::new();
            for (k, c) in terms {
                let s = c.specialize(assignment)?;
                if !s.is_zero() {
                    out.push((*k, s));
                }
            }
            if !out.is_empty() {
                table.insert(*key, out);
            }
        }
        Ok(SuperAlgebra {
            ring: self.ring.clone(),
            basis: self.basis.clone(),
            index: self.index.clone(),
            table,
        })
    }

    /// Specialization from (name, integer) pairs.
    pub fn at(&self, values: &[(&str, i64)]) -> Result<SuperAlgebra, SuperAlgError> {
        let field = self.field();
        let assignment = values
            .iter()
            .map(|(k, v)| (k.to_string(), field.int(*v)))
            .collect();
        self.specialize(&assignment)
    }

    /// Same structure constants over a larger parameter ring with the same field.
    pub fn with_ring(&self, ring: ParameterRing) -> Result<SuperAlgebra, SuperAlgError> {
        let merged = self.ring.union(&ring)?;
        Ok(SuperAlgebra {
            ring: merged,
            ..self.clone()
        })
    }

    /// Base change to an extension field.
    pub fn embed(&self, target: GaloisField) -> Result<SuperAlgebra, SuperAlgError> {
        let mut table = BTreeMap::new();
        for (key, terms) in &self.table {
            let mut out = Vec::new();
            for (k, c) in terms {
                let s = c
                    .embed(target)
                    .ok_or_else(|| SuperAlgError::FieldMismatch(target.to_string()))?;
                out.push((*k, s));
            }
            table.insert(*key, out);
        }
        Ok(SuperAlgebra {
            ring: self.ring.with_field(target),
            basis: self.basis.clone(),
            index: self.index.clone(),
            table,
        })
    }

    /// True when every structure constant is a field constant.
    pub fn is_numeric(&self) -> bool {
        self.table
            .values()
            .all(|t| t.iter().all(|(_, c)| c.is_constant()))
    }

    /// Parameters that actually occur in the structure constants.
    pub fn parameters(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .table
            .values()
            .flat_map(|t| t.iter().flat_map(|(_, c)| c.generators()))
            .map(|g| g.name().to_string())
            .collect();
        names.sort();
        names.dedup();
        names
    }

    /// Human-readable form such as `2*h1 + (eps^-1*rho)*h2`.
    pub fn format(&self, v: &[Scalar]) -> String {
        let names: Vec<&str> = self.basis.iter().map(|e| e.name.as_str()).collect();
        vector::format(v, &names)
    }

    /// Inverse of [`format`](Self::format).
    pub fn parse_vector(&self, text: &str) -> Result<Vector, SuperAlgError> {
        vector::parse(text, self)
    }
}

impl fmt::Debug for SuperAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (e, o) = self.sdim();
        writeln!(f, "SuperAlgebra over {} of sdim {e}|{o}", self.field())?;
        for &(i, j) in self.table.keys() {
            let v = self.bracket_basis(i, j);
            writeln!(
                f,
                "[{}, {}] = {}",
                self.basis[i].name,
                self.basis[j].name,
                self.format(&v)
            )?;
        }
        Ok(())
    }
}

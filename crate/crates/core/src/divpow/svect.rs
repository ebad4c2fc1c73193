use std::collections::HashMap;

use serde::Serialize;

use super::element::{dp_derivative, DPElement, Exponents};
use super::vfield::{deformed_divergence, derivation_power, vf_bracket, VectorField};
use super::{DPDescriptor, DivPowError};
use crate::linalg;
use crate::pstruct::ad_power;
use crate::scalars::Scalar;
use crate::superalg::{derived_subalgebra, AlgebraBuilder, BasisElement, SuperAlgebra, Vector};

/// Coordinates of vector fields in the monomial basis u^(a)·∂_i.
struct FieldCoords {
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    count: usize,
}

impl FieldCoords {
    fn new(d: &DPDescriptor) -> Self {
        let monomials = d.monomials();
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        FieldCoords {
            monomials,
            index,
            count: d.count(),
        }
    }

    fn len(&self) -> usize {
        self.monomials.len() * self.count
    }

    fn flatten(&self, v: &VectorField) -> Vector {
        let mut out = vec![Scalar::zero(); self.len()];
        for (i, f) in v.coeffs.iter().enumerate() {
            for (k, c) in f.terms() {
                out[self.index[k] * self.count + i] = c.clone();
            }
        }
        out
    }

    fn unflatten(&self, d: &DPDescriptor, w: &[Scalar]) -> VectorField {
        let mut v = VectorField::zero(d);
        for (idx, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (m, i) = (idx / self.count, idx % self.count);
            v.coeffs[i].add_term(self.monomials[m].clone(), c);
        }
        v
    }

    fn basis_field(&self, d: &DPDescriptor, idx: usize) -> VectorField {
        let (m, i) = (idx / self.count, idx % self.count);
        VectorField::single(
            d,
            DPElement::monomial(self.monomials[m].clone(), d.ring().one()),
            i,
        )
    }

    fn name(&self, d: &DPDescriptor, idx: usize) -> String {
        let (m, i) = (idx / self.count, idx % self.count);
        let mono = d.format_monomial(&self.monomials[m]);
        if mono == "1" {
            format!("d_{}", d.name(i))
        } else {
            format!("{mono}*d_{}", d.name(i))
        }
    }
}

/// A Lie superalgebra of vector fields with its basis fields in algebra order.
///
/// The basis is in reduced echelon form in monomial coordinates, so the algebra
/// coordinates of a field are its entries at the pivot positions.
pub struct FieldAlgebra {
    pub descriptor: DPDescriptor,
    pub algebra: SuperAlgebra,
    pub fields: Vec<VectorField>,
    pivots: Vec<usize>,
    coords: FieldCoords,
}

impl FieldAlgebra {
    /// Algebra coordinates of a field, if it lies in the span.
    pub fn coordinates(&self, v: &VectorField) -> Option<Vector> {
        let flat = self.coords.flatten(v);
        let c: Vector = self.pivots.iter().map(|&p| flat[p].clone()).collect();
        (self.field_of(&c) == *v).then_some(c)
    }

    pub fn field_of(&self, c: &[Scalar]) -> VectorField {
        let mut out = VectorField::zero(&self.descriptor);
        for (ck, f) in c.iter().zip(&self.fields) {
            if !ck.is_zero() {
                out = out.add(&f.scale(ck));
            }
        }
        out
    }
}

/// Algebra spanned by homogeneous numeric fields closed under the bracket.
pub fn field_algebra(
    d: &DPDescriptor,
    fields: &[VectorField],
) -> Result<FieldAlgebra, DivPowError> {
    let coords = FieldCoords::new(d);
    let rows: Vec<Vector> = fields.iter().map(|f| coords.flatten(f)).collect();
    if let Some(c) = rows.iter().flatten().find(|c| !c.is_constant()) {
        return Err(DivPowError::Parse(format!(
            "symbolic coefficient {c} in a field basis"
        )));
    }
    let red = linalg::reduce(rows, coords.len());
    let basis_fields: Vec<VectorField> = red.rows.iter().map(|r| coords.unflatten(d, r)).collect();
    let mut b = AlgebraBuilder::new(d.ring().clone());
    for (f, &p) in basis_fields.iter().zip(&red.pivots) {
        let parity = f.parity(d).ok_or(DivPowError::Inhomogeneous)?;
        let m = &coords.monomials[p / coords.count];
        let degree = m.iter().sum::<u32>() as i64 - 1;
        b.add_basis(BasisElement {
            name: coords.name(d, p),
            parity,
            weight: None,
            degree: Some(degree),
        })?;
    }
    let partial = FieldAlgebra {
        descriptor: d.clone(),
        algebra: b.clone().build(),
        fields: basis_fields.clone(),
        pivots: red.pivots.clone(),
        coords,
    };
    let n = basis_fields.len();
    for i in 0..n {
        for j in i..n {
            let br = vf_bracket(d, &basis_fields[i], &basis_fields[j])?;
            if br.is_zero() {
                continue;
            }
            let c = partial.coordinates(&br).ok_or_else(|| {
                DivPowError::NotClosed(format!(
                    "[{}, {}]",
                    partial.algebra.basis()[i].name,
                    partial.algebra.basis()[j].name
                ))
            })?;
            let terms: Vec<(usize, Scalar)> = c
                .into_iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .collect();
            b.set_bracket(i, j, &terms)?;
        }
    }
    Ok(FieldAlgebra {
        algebra: b.build(),
        ..partial
    })
}

/// W(m;N|n): all vector fields.
pub fn vect_algebra(d: &DPDescriptor) -> Result<FieldAlgebra, DivPowError> {
    let coords = FieldCoords::new(d);
    let fields: Vec<VectorField> = (0..coords.len())
        .map(|i| coords.basis_field(d, i))
        .collect();
    field_algebra(d, &fields)
}

/// ū = u_1^(p^N_1 - 1)···u_m^(p^N_m - 1)·θ_1···θ_n.
pub fn u_bar(d: &DPDescriptor) -> DPElement {
    let exps: Exponents = (0..d.count()).map(|i| d.bound(i) - 1).collect();
    DPElement::monomial(exps, d.ring().one())
}

fn check_svect_descriptor(d: &DPDescriptor) -> Result<(), DivPowError> {
    if d.heights().iter().any(|&h| h != 1) {
        return Err(DivPowError::UnsupportedShearing(d.heights().to_vec()));
    }
    if !d.odd_count().is_multiple_of(2) {
        return Err(DivPowError::OddCount(d.odd_count()));
    }
    Ok(())
}

/// svect_{(1+ū)}(m;1|2s): fields D with div D + (1+ū)⁻¹D(1+ū) = 0, or its derived algebra.
pub fn svect_deformed_basis(d: &DPDescriptor, derived: bool) -> Result<FieldAlgebra, DivPowError> {
    check_svect_descriptor(d)?;
    let coords = FieldCoords::new(d);
    let f = DPElement::one(d).add(&u_bar(d));
    let fn_index: HashMap<Exponents, usize> = coords.index.clone();
    let nfields = coords.len();
    let mut rows = vec![vec![Scalar::zero(); nfields]; coords.monomials.len()];
    for col in 0..nfields {
        let div = deformed_divergence(d, &coords.basis_field(d, col), &f)?;
        for (k, c) in div.terms() {
            rows[fn_index[k]][col] = c.clone();
        }
    }
    let kernel = linalg::reduce(rows, nfields).kernel(d.field());
    let fields: Vec<VectorField> = kernel.iter().map(|v| coords.unflatten(d, v)).collect();
    let full = field_algebra(d, &fields)?;
    if !derived {
        return Ok(full);
    }
    let sub = derived_subalgebra(&full.algebra, 1)?;
    let fields: Vec<VectorField> = sub.basis().iter().map(|c| full.field_of(c)).collect();
    field_algebra(d, &fields)
}

/// Outcome of checking ((1-ū)∂_i)^[p] = -(∂_i^{p-1}ū)∂_i.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EqNewReport {
    pub descriptor: String,
    pub index: usize,
    pub algebra_dim: usize,
    pub lhs_field: String,
    pub rhs_field: String,
    pub lhs_in_algebra: bool,
    pub rhs_in_algebra: bool,
    /// ad(X)^p equals ad(rhs) inside the algebra.
    pub ad_equal: bool,
    /// X^p as an operator on functions equals rhs.
    pub operator_equal: bool,
    pub witness: Option<String>,
}

impl EqNewReport {
    pub fn holds(&self) -> bool {
        self.lhs_in_algebra && self.rhs_in_algebra && self.ad_equal
    }
}

/// Checks the p-th power formula for (1-ū)∂_i in svect_{(1+ū)}(m;1|2s).
pub fn verify_eq_new(d: &DPDescriptor, i: usize) -> Result<EqNewReport, DivPowError> {
    check_svect_descriptor(d)?;
    if i >= d.even_count() {
        return Err(DivPowError::NotEvenIndex(i));
    }
    let p = d.characteristic();
    let ub = u_bar(d);
    let one = DPElement::one(d);
    let x = VectorField::single(d, one.sub(&ub), i);
    let mut der = ub.clone();
    for _ in 0..p - 1 {
        der = dp_derivative(d, i, &der);
    }
    let rhs = VectorField::single(d, der.neg(), i);

    let alg = svect_deformed_basis(d, false)?;
    let f = one.add(&ub);
    let lhs_div_zero = deformed_divergence(d, &x, &f)?.is_zero();
    let cx = alg.coordinates(&x);
    let cr = alg.coordinates(&rhs);
    let mut report = EqNewReport {
        descriptor: d.header(),
        index: i,
        algebra_dim: alg.algebra.dim(),
        lhs_field: x.format(d),
        rhs_field: rhs.format(d),
        lhs_in_algebra: lhs_div_zero && cx.is_some(),
        rhs_in_algebra: cr.is_some(),
        ad_equal: false,
        operator_equal: derivation_power(d, &x, p) == rhs,
        witness: None,
    };
    if let (Some(cx), Some(cr)) = (cx, cr) {
        let lhs =
            ad_power(&alg.algebra, &cx, p as u64).map_err(|e| DivPowError::Parse(e.to_string()))?;
        let rhs_ad = alg.algebra.ad_matrix(&cr)?;
        report.ad_equal = lhs == rhs_ad;
        if !report.ad_equal {
            let diff = lhs.sub(&rhs_ad);
            let first = diff.entries().next().map(|(r, c, v)| (r, c, v.clone()));
            if let Some((r, c, v)) = first {
                report.witness = Some(format!(
                    "on {}: component {} differs by {v}",
                    alg.algebra.basis()[c].name,
                    alg.algebra.basis()[r].name
                ));
            }
        }
    }
    Ok(report)
}

use super::element::{dp_derivative, dp_multiply, DPElement};
use super::{DPDescriptor, DivPowError};
use crate::scalars::Parity;
use crate::superalg::{AlgebraBuilder, BasisElement, SuperAlgebra};

const P: usize = 0;
const Q: usize = 1;
const T: usize = 2;

fn check(d: &DPDescriptor) -> Result<(), DivPowError> {
    if *d != DPDescriptor::k31() {
        return Err(DivPowError::WrongDescriptor);
    }
    Ok(())
}

/// Δf = 2f - p̂·∂_p f - q̂·∂_q f.
pub fn laplace(d: &DPDescriptor, f: &DPElement) -> Result<DPElement, DivPowError> {
    check(d)?;
    let two = d.ring().int(2);
    let p = DPElement::variable(d, P);
    let q = DPElement::variable(d, Q);
    Ok(f.scale(&two)
        .sub(&dp_multiply(d, &p, &dp_derivative(d, P, f)))
        .sub(&dp_multiply(d, &q, &dp_derivative(d, Q, f))))
}

/// {f, g} = Δf·∂_t g - ∂_t f·Δg + ∂_p f·∂_q g - ∂_q f·∂_p g.
pub fn contact_bracket(
    d: &DPDescriptor,
    f: &DPElement,
    g: &DPElement,
) -> Result<DPElement, DivPowError> {
    let df = laplace(d, f)?;
    let dg = laplace(d, g)?;
    let der = |h: &DPElement, i| dp_derivative(d, i, h);
    Ok(dp_multiply(d, &df, &der(g, T))
        .sub(&dp_multiply(d, &der(f, T), &dg))
        .add(&dp_multiply(d, &der(f, P), &der(g, Q)))
        .sub(&dp_multiply(d, &der(f, Q), &der(g, P))))
}

/// O(3;(1,1,1)) with the contact bracket, on the monomial basis.
///
/// Degrees count p̂, q̂ as 1 and t as 2, shifted by -2.
pub fn k31_algebra() -> SuperAlgebra {
    let d = DPDescriptor::k31();
    let monomials = d.monomials();
    let mut b = AlgebraBuilder::new(d.ring().clone());
    for m in &monomials {
        let name = match d.format_monomial(m).as_str() {
            "1" => "one".to_string(),
            other => other.to_string(),
        };
        let degree = (m[P] + m[Q] + 2 * m[T]) as i64 - 2;
        b.add_basis(BasisElement {
            name,
            parity: Parity::Even,
            weight: None,
            degree: Some(degree),
        })
        .expect("distinct monomials");
    }
    let elems: Vec<DPElement> = monomials
        .iter()
        .map(|m| DPElement::monomial(m.clone(), d.ring().one()))
        .collect();
    for i in 0..elems.len() {
        for j in i..elems.len() {
            let br = contact_bracket(&d, &elems[i], &elems[j]).expect("k31 descriptor");
            let terms: Vec<_> = monomials
                .iter()
                .enumerate()
                .map(|(k, m)| (k, br.coefficient(m)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            b.set_bracket(i, j, &terms).expect("in range");
        }
    }
    b.build()
}

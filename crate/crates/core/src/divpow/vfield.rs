use super::element::{dp_derivative, dp_multiply, DPElement};
use super::{DPDescriptor, DivPowError};
use crate::scalars::Parity;

/// Derivation Σ f_i ∂_i of O(m;N|n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub coeffs: Vec<DPElement>,
}

impl VectorField {
    pub fn zero(d: &DPDescriptor) -> Self {
        VectorField {
            coeffs: vec![DPElement::zero(); d.count()],
        }
    }

    /// f·∂_i.
    pub fn single(d: &DPDescriptor, f: DPElement, i: usize) -> Self {
        let mut v = VectorField::zero(d);
        v.coeffs[i] = f;
        v
    }

    /// ∂_i.
    pub fn partial(d: &DPDescriptor, i: usize) -> Self {
        VectorField::single(d, DPElement::one(d), i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(DPElement::is_zero)
    }

    fn check(&self, d: &DPDescriptor) -> Result<(), DivPowError> {
        if self.coeffs.len() != d.count() {
            return Err(DivPowError::DescriptorMismatch(format!(
                "{} coefficients for {} indeterminates",
                self.coeffs.len(),
                d.count()
            )));
        }
        Ok(())
    }

    /// Parity of f_i ∂_i for every nonzero term, or None when mixed.
    pub fn parity(&self, d: &DPDescriptor) -> Option<Parity> {
        let mut found = None;
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let p = f.parity(d)? + d.parity_of(i);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &crate::scalars::Scalar) -> VectorField {
        VectorField {
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// f·D.
    pub fn multiply(&self, d: &DPDescriptor, f: &DPElement) -> VectorField {
        VectorField {
            coeffs: self.coeffs.iter().map(|c| dp_multiply(d, f, c)).collect(),
        }
    }

    /// D(g) = Σ f_i ∂_i(g).
    pub fn apply(&self, d: &DPDescriptor, g: &DPElement) -> DPElement {
        let mut out = DPElement::zero();
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            out = out.add(&dp_multiply(d, f, &dp_derivative(d, i, g)));
        }
        out
    }

    pub fn format(&self, d: &DPDescriptor) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(i, f)| format!("({})*d_{}", f.format(d), d.name(i)))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// [D1, D2] = Σ_j (D1(f2_j) - (-1)^{|D1||D2|} D2(f1_j)) ∂_j.
pub fn vf_bracket(
    d: &DPDescriptor,
    a: &VectorField,
    b: &VectorField,
) -> Result<VectorField, DivPowError> {
    a.check(d)?;
    b.check(d)?;
    let pa = a.parity(d).ok_or(DivPowError::Inhomogeneous)?;
    let pb = b.parity(d).ok_or(DivPowError::Inhomogeneous)?;
    let sign = Parity::sign(pa, pb);
    let coeffs = (0..d.count())
        .map(|j| {
            let x = a.apply(d, &b.coeffs[j]);
            let y = b.apply(d, &a.coeffs[j]);
            if sign {
                x.add(&y)
            } else {
                x.sub(&y)
            }
        })
        .collect();
    Ok(VectorField { coeffs })
}

/// div D = Σ (-1)^{|u_i|(|D|+1)} ∂_i f_i.
pub fn divergence(d: &DPDescriptor, v: &VectorField) -> Result<DPElement, DivPowError> {
    v.check(d)?;
    let pd = v.parity(d).ok_or(DivPowError::Inhomogeneous)?;
    let mut out = DPElement::zero();
    for (i, f) in v.coeffs.iter().enumerate() {
        let t = dp_derivative(d, i, f);
        out = if d.parity_of(i).is_odd() && !pd.is_odd() {
            out.sub(&t)
        } else {
            out.add(&t)
        };
    }
    Ok(out)
}

/// div D + f⁻¹·D(f); zero exactly when D preserves f·vol.
pub fn deformed_divergence(
    d: &DPDescriptor,
    v: &VectorField,
    f: &DPElement,
) -> Result<DPElement, DivPowError> {
    let inv = f.inverse(d)?;
    Ok(divergence(d, v)?.add(&dp_multiply(d, &inv, &v.apply(d, f))))
}

/// n-fold composite of an even derivation, read off on the indeterminates.
///
/// For even D in characteristic p, D^p is again a derivation, so it is determined by
/// its values D^p(u_j); this is the operator-level oracle for p-th powers.
pub fn derivation_power(d: &DPDescriptor, v: &VectorField, n: u32) -> VectorField {
    let coeffs = (0..d.count())
        .map(|j| {
            let mut g = DPElement::variable(d, j);
            for _ in 0..n {
                g = v.apply(d, &g);
            }
            g
        })
        .collect();
    VectorField { coeffs }
}

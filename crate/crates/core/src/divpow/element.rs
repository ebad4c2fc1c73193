use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::{DPDescriptor, DivPowError};
use crate::scalars::expr::{self, ExprContext, ScalarContext};
use crate::scalars::{Parity, Scalar, ScalarError};

/// Exponent vector: even exponents first, then 0/1 for each odd indeterminate.
pub type Exponents = Vec<u32>;

/// binom(n, k) mod p by Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut out = 1;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for t in 0..b {
            c = c * (a - t) / (t + 1);
        }
        out = out * (c % p) % p;
        n /= p;
        k /= p;
    }
    out
}

/// Element of O(m;N|n): Scalar-linear combination of divided-power monomials.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct DPElement {
    terms: BTreeMap<Exponents, Scalar>,
}

impl DPElement {
    pub fn zero() -> Self {
        DPElement::default()
    }

    pub fn monomial(exps: Exponents, coef: Scalar) -> Self {
        let mut e = DPElement::zero();
        e.add_term(exps, &coef);
        e
    }

    pub fn constant(d: &DPDescriptor, c: Scalar) -> Self {
        DPElement::monomial(vec![0; d.count()], c)
    }

    pub fn one(d: &DPDescriptor) -> Self {
        DPElement::constant(d, d.ring().one())
    }

    /// u_i^(k) (or θ for odd i and k = 1); zero when k is out of range.
    pub fn divided_power(d: &DPDescriptor, i: usize, k: u32) -> Self {
        if k >= d.bound(i) {
            return DPElement::zero();
        }
        let mut exps = vec![0; d.count()];
        exps[i] = k;
        DPElement::monomial(exps, d.ring().one())
    }

    pub fn variable(d: &DPDescriptor, i: usize) -> Self {
        DPElement::divided_power(d, i, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &DPElement) -> DPElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> DPElement {
        DPElement {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &DPElement) -> DPElement {
        self.add(&other.neg())
    }

    /// c·f with c acting from the left.
    pub fn scale(&self, c: &Scalar) -> DPElement {
        let mut out = DPElement::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(c * v));
        }
        out
    }

    /// Parity, or None when inhomogeneous; zero is even.
    pub fn parity(&self, d: &DPDescriptor) -> Option<Parity> {
        let mut found = None;
        for (k, c) in &self.terms {
            let p = c.parity() + d.monomial_parity(k);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    /// Constant term (coefficient of 1).
    pub fn constant_term(&self, d: &DPDescriptor) -> Scalar {
        self.coefficient(&vec![0; d.count()])
    }

    pub fn format(&self, d: &DPDescriptor) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let m = d.format_monomial(k);
                match (m.as_str(), c.is_one(), c.terms().len()) {
                    ("1", _, _) => c.to_string(),
                    (_, true, _) => m,
                    (_, _, 1) => format!("{c}*{m}"),
                    _ => format!("({c})*{m}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for DPElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in &self.terms {
            write!(f, "[{c}]{k:?} ")?;
        }
        Ok(())
    }
}

/// Product of basis monomials: (coefficient mod p, sign), or None when it vanishes.
fn monomial_product(d: &DPDescriptor, a: &[u32], b: &[u32]) -> Option<(Exponents, u64, bool)> {
    let p = d.characteristic() as u64;
    let m = d.even_count();
    let mut out = vec![0; d.count()];
    let mut coef = 1u64;
    for i in 0..m {
        let s = a[i] + b[i];
        if s >= d.bound(i) {
            return None;
        }
        coef = coef * binomial_mod(s as u64, a[i] as u64, p) % p;
        if coef == 0 {
            return None;
        }
        out[i] = s;
    }
    let mut negative = false;
    for j in m..d.count() {
        if a[j] == 1 && b[j] == 1 {
            return None;
        }
        out[j] = a[j] + b[j];
        if b[j] == 1 {
            // θ_j from b moves left past the θ_k of a with k > j
            let passed = (j + 1..d.count()).filter(|&k| a[k] == 1).count();
            negative ^= passed % 2 == 1;
        }
    }
    Some((out, coef, negative))
}

/// Supercommutative divided-power product with truncation.
pub fn dp_multiply(d: &DPDescriptor, f: &DPElement, g: &DPElement) -> DPElement {
    let field = d.field();
    let mut out = DPElement::zero();
    for (ka, ca) in &f.terms {
        let pa = d.monomial_parity(ka);
        for (kb, cb) in &g.terms {
            let Some((k, coef, mut negative)) = monomial_product(d, ka, kb) else {
                continue;
            };
            // a·m1·b·m2 = a·b·(-1)^{|m1||b|}·m1·m2
            negative ^= Parity::sign(pa, cb.parity());
            let mut c = (ca * cb).scale(&field.int(coef as i64));
            if negative {
                c = -c;
            }
            out.add_term(k, &c);
        }
    }
    out
}

/// ∂_i as a superderivation (odd for odd indeterminates).
pub fn dp_derivative(d: &DPDescriptor, i: usize, f: &DPElement) -> DPElement {
    let mut out = DPElement::zero();
    let odd = i >= d.even_count();
    for (k, c) in &f.terms {
        if k[i] == 0 {
            continue;
        }
        let mut e = k.clone();
        e[i] -= 1;
        let mut negative = false;
        if odd {
            // pass the scalar and the θ_k with k < i
            negative ^= c.parity().is_odd();
            let before = (d.even_count()..i).filter(|&j| k[j] == 1).count();
            negative ^= before % 2 == 1;
        }
        out.add_term(e, &if negative { -c } else { c.clone() });
    }
    out
}

impl DPElement {
    /// Inverse of a unit 1·c + nilpotent, via the finite geometric series.
    pub fn inverse(&self, d: &DPDescriptor) -> Result<DPElement, DivPowError> {
        let c = self.constant_term(d);
        if !c.is_unit() {
            return Err(DivPowError::NotAUnit(self.format(d)));
        }
        let cinv = c.invert()?;
        let nil = DPElement::one(d).sub(&self.scale(&cinv));
        let mut out = DPElement::one(d);
        let mut power = DPElement::one(d);
        loop {
            power = dp_multiply(d, &power, &nil);
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(dp_multiply(d, &out, &DPElement::constant(d, cinv)))
    }
}

struct DPContext<'a> {
    d: &'a DPDescriptor,
}

impl ExprContext for DPContext<'_> {
    type Value = DPElement;

    fn int(&self, n: i64) -> DPElement {
        DPElement::constant(self.d, self.d.ring().int(n))
    }

    fn ident(&self, name: &str) -> Result<DPElement, ScalarError> {
        if let Some(i) = self.d.index_of(name) {
            return Ok(DPElement::variable(self.d, i));
        }
        let s = ScalarContext {
            ring: self.d.ring(),
        }
        .ident(name)?;
        Ok(DPElement::constant(self.d, s))
    }

    fn divided_power(&self, name: &str, k: u32) -> Result<DPElement, ScalarError> {
        let i = self
            .d
            .index_of(name)
            .ok_or_else(|| ScalarError::Parse(format!("unknown indeterminate {name}")))?;
        if i >= self.d.even_count() && k > 1 {
            return Ok(DPElement::zero());
        }
        Ok(DPElement::divided_power(self.d, i, k))
    }

    fn add(&self, a: &DPElement, b: &DPElement) -> DPElement {
        a.add(b)
    }

    fn neg(&self, a: &DPElement) -> DPElement {
        a.neg()
    }

    fn mul(&self, a: &DPElement, b: &DPElement) -> DPElement {
        dp_multiply(self.d, a, b)
    }

    fn invert(&self, a: &DPElement) -> Result<DPElement, ScalarError> {
        a.inverse(self.d)
            .map_err(|_| ScalarError::NotAUnit(a.format(self.d)))
    }
}

pub(crate) fn parse(d: &DPDescriptor, text: &str) -> Result<DPElement, DivPowError> {
    let e = expr::parse(text)?;
    Ok(e.eval(&DPContext { d })?)
}

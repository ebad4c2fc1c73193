//! Finite fields GF(p^k), realized as GF(p)[z] modulo a fixed Conway polynomial.

use std::fmt;

use super::ScalarError;

/// Largest extension degree supported by [`FieldElement`].
pub const MAX_DEGREE: usize = 4;

/// Conway polynomials, stored as the non-leading coefficients `c_0..c_{k-1}` of a
/// monic polynomial of degree `k`.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (7, 2, &[3, 6]),
];

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Descriptor of a finite field GF(p^k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaloisField {
    p: u32,
    k: u32,
}

impl GaloisField {
    /// GF(p^k). Prime fields are available for every prime below 2^15; proper
    /// extensions only for the degrees with a shipped Conway polynomial.
    pub fn new(p: u32, k: u32) -> Result<Self, ScalarError> {
        if !is_prime(p) || p >= 1 << 15 {
            return Err(ScalarError::UnsupportedField { p, k });
        }
        if k == 0 || k as usize > MAX_DEGREE {
            return Err(ScalarError::UnsupportedField { p, k });
        }
        if k > 1 && !CONWAY.iter().any(|&(cp, ck, _)| cp == p && ck == k) {
            return Err(ScalarError::UnsupportedField { p, k });
        }
        Ok(GaloisField { p, k })
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self, ScalarError> {
        Self::new(p, 1)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// Non-leading coefficients of the defining polynomial (empty for prime fields).
    pub fn modulus(&self) -> &'static [u32] {
        if self.k == 1 {
            return &[];
        }
        CONWAY
            .iter()
            .find(|&&(p, k, _)| p == self.p && k == self.k)
            .map(|&(_, _, m)| m)
            .expect("field descriptors are validated at construction")
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: *self,
            c: [0; MAX_DEGREE],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.int(1)
    }

    /// Image of an integer under ℤ → GF(p).
    pub fn int(&self, n: i64) -> FieldElement {
        let mut e = self.zero();
        e.c[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    /// The class of `z`, a root of the defining polynomial. Only meaningful for k > 1.
    pub fn generator(&self) -> Option<FieldElement> {
        if self.k < 2 {
            return None;
        }
        let mut e = self.zero();
        e.c[1] = 1;
        Some(e)
    }

    /// Element with the given coefficients in the basis `1, z, ..., z^{k-1}`.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement, ScalarError> {
        if coeffs.len() > self.k as usize {
            return Err(ScalarError::UnsupportedField {
                p: self.p,
                k: self.k,
            });
        }
        let mut e = self.zero();
        for (slot, &c) in e.c.iter_mut().zip(coeffs) {
            *slot = c.rem_euclid(self.p as i64) as u32;
        }
        Ok(e)
    }

    /// Every element of the field, in lexicographic coefficient order.
    pub fn elements(&self) -> Vec<FieldElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        for mut idx in 0..self.order() {
            let mut e = self.zero();
            for slot in e.c.iter_mut().take(self.k as usize) {
                *slot = (idx % self.p as u64) as u32;
                idx /= self.p as u64;
            }
            out.push(e);
        }
        out
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

/// An element of GF(p^k).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    field: GaloisField,
    c: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub fn field(&self) -> GaloisField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c[..self.field.k as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&c| c == 0)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_field(&self) -> bool {
        self.c[1..].iter().all(|&c| c == 0)
    }

    /// Integer representative in `0..p` for prime-field elements.
    pub fn as_int(&self) -> Option<u32> {
        self.is_prime_field().then_some(self.c[0])
    }

    fn check(&self, other: &Self) {
        debug_assert_eq!(self.field, other.field, "mixed fields in arithmetic");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.field.p;
        let mut out = *self;
        for (a, b) in out.c.iter_mut().zip(other.c.iter()) {
            *a = (*a + *b) % p;
        }
        out
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        let mut out = *self;
        for a in out.c.iter_mut() {
            *a = (p - *a) % p;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let p = self.field.p as u64;
        let k = self.field.k as usize;
        if k == 1 {
            let mut out = *self;
            out.c[0] = ((self.c[0] as u64 * other.c[0] as u64) % p) as u32;
            return out;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + self.c[i] as u64 * other.c[j] as u64) % p;
            }
        }
        // z^k = -(c_0 + c_1 z + ... + c_{k-1} z^{k-1})
        let modulus = self.field.modulus();
        for d in (k..2 * k - 1).rev() {
            let top = prod[d];
            if top == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in modulus.iter().enumerate() {
                let sub = top * m as u64 % p;
                prod[d - k + i] = (prod[d - k + i] + p - sub) % p;
            }
        }
        let mut out = self.field.zero();
        for i in 0..k {
            out.c[i] = prod[i] as u32;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(self.pow(self.field.order() - 2))
    }

    /// a ↦ a^p.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p as u64)
    }

    /// Image under the inclusion GF(p^k) ⊂ GF(p^{k'}); only prime-field elements embed
    /// into arbitrary extensions.
    pub fn embed(&self, target: GaloisField) -> Option<Self> {
        if target == self.field {
            return Some(*self);
        }
        if target.p != self.field.p || !self.is_prime_field() {
            return None;
        }
        Some(target.int(self.c[0] as i64))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_prime_field() {
            return write!(f, "{}", self.c[0]);
        }
        let mut first = true;
        for d in (0..self.field.k as usize).rev() {
            let c = self.c[d];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (d, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "z")?,
                (1, _) => write!(f, "{c}*z")?,
                (_, 1) => write!(f, "z^{d}")?,
                _ => write!(f, "{c}*z^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_has_factor_of_degree(field: GaloisField, d: usize) -> bool {
        // brute force: does any monic polynomial of degree d divide the modulus?
        let p = field.p as i64;
        let k = field.k as usize;
        let mut modulus: Vec<i64> = field.modulus().iter().map(|&c| c as i64).collect();
        modulus.push(1);
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = vec![0i64; d + 1];
            let mut t = idx;
            for slot in div.iter_mut().take(d) {
                *slot = (t % p as u64) as i64;
                t /= p as u64;
            }
            div[d] = 1;
            let mut rem = modulus.clone();
            for top in (d..=k).rev() {
                let q = rem[top].rem_euclid(p);
                if q == 0 {
                    continue;
                }
                for i in 0..=d {
                    rem[top - d + i] = (rem[top - d + i] - q * div[i]).rem_euclid(p);
                }
            }
            if rem.iter().all(|&c| c.rem_euclid(p) == 0) {
                return true;
            }
        }
        false
    }

    #[test]
    fn conway_polynomials_are_irreducible_and_primitive() {
        for &(p, k, _) in CONWAY {
            let f = GaloisField::new(p, k).unwrap();
            for d in 1..=(k as usize) / 2 {
                assert!(!poly_has_factor_of_degree(f, d), "{f} modulus reducible");
            }
            let z = f.generator().unwrap();
            let order = f.order() - 1;
            let mut seen_one = None;
            let mut acc = f.one();
            for e in 1..=order {
                acc = acc.mul(&z);
                if acc.is_one() {
                    seen_one = Some(e);
                    break;
                }
            }
            assert_eq!(seen_one, Some(order), "{f}: z not primitive");
        }
    }

    #[test]
    fn every_nonzero_element_inverts() {
        for (p, k) in [(3, 1), (3, 2), (5, 1), (2, 3)] {
            let f = GaloisField::new(p, k).unwrap();
            for a in f.elements().into_iter().filter(|a| !a.is_zero()) {
                assert!(a.mul(&a.inverse().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn frobenius_is_additive_and_fixes_prime_field() {
        let f = GaloisField::new(3, 2).unwrap();
        let els = f.elements();
        for a in &els {
            for b in &els {
                assert_eq!(a.add(b).frobenius(), a.frobenius().add(&b.frobenius()));
            }
        }
        assert_eq!(f.int(2).frobenius(), f.int(2));
        let z = f.generator().unwrap();
        assert_ne!(z.frobenius(), z);
    }

    #[test]
    fn rejects_non_prime_and_unknown_extension() {
        assert!(GaloisField::new(4, 1).is_err());
        assert!(GaloisField::new(11, 3).is_err());
        assert!(GaloisField::new(3, 0).is_err());
    }

    #[test]
    fn display() {
        let f = GaloisField::new(3, 2).unwrap();
        assert_eq!(f.from_coeffs(&[2, 1]).unwrap().to_string(), "z+2");
        assert_eq!(f.from_coeffs(&[0, 2]).unwrap().to_string(), "2*z");
        assert_eq!(f.int(-1).to_string(), "2");
    }
}

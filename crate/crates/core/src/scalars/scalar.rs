use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use super::field::{FieldElement, GaloisField};
use super::{Parity, ScalarError};

/// How a parameter behaves in the coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// Even and invertible: Laurent exponents are allowed.
    Invertible,
    /// Even polynomial parameter.
    Even,
    /// Odd Grassmann parameter; anticommutes and squares to zero.
    Odd,
}

/// A named parameter of the coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    kind: GenKind,
    name: Arc<str>,
}

impl Generator {
    pub fn new(name: &str, kind: GenKind) -> Self {
        Generator {
            kind,
            name: Arc::from(name),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> GenKind {
        self.kind
    }
}

/// Monomial in the parameters: Laurent in invertible generators, polynomial in even
/// ones, and a sorted product of distinct odd ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    even: Vec<(Generator, i32)>,
    odd: Vec<Generator>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn generator(g: &Generator) -> Self {
        match g.kind {
            GenKind::Odd => Monomial {
                even: Vec::new(),
                odd: vec![g.clone()],
            },
            _ => Monomial {
                even: vec![(g.clone(), 1)],
                odd: Vec::new(),
            },
        }
    }

    pub fn is_one(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn parity(&self) -> Parity {
        Parity::from_count(self.odd.len())
    }

    pub fn degree_in(&self, name: &str) -> i32 {
        if self.odd.iter().any(|g| g.name() == name) {
            return 1;
        }
        self.even
            .iter()
            .find(|(g, _)| g.name() == name)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// True when the monomial only involves invertible generators.
    pub fn is_laurent_unit(&self) -> bool {
        self.odd.is_empty() && self.even.iter().all(|(g, _)| g.kind == GenKind::Invertible)
    }

    pub fn generators(&self) -> impl Iterator<Item = &Generator> {
        self.even.iter().map(|(g, _)| g).chain(self.odd.iter())
    }

    /// Product with the Grassmann sign; `None` when an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let mut even = Vec::with_capacity(self.even.len() + other.even.len());
        let (mut i, mut j) = (0, 0);
        while i < self.even.len() || j < other.even.len() {
            let ord = match (self.even.get(i), other.even.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    even.push(self.even[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    even.push(other.even[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.even[i].1 + other.even[j].1;
                    if e != 0 {
                        even.push((self.even[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let mut odd = Vec::with_capacity(self.odd.len() + other.odd.len());
        let mut negative = false;
        let (mut i, mut j) = (0, 0);
        while i < self.odd.len() || j < other.odd.len() {
            let ord = match (self.odd.get(i), other.odd.get(j)) {
                (Some(a), Some(b)) => a.cmp(b),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    odd.push(self.odd[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    // moves past every remaining factor of the left operand
                    if (self.odd.len() - i) % 2 == 1 {
                        negative = !negative;
                    }
                    odd.push(other.odd[j].clone());
                    j += 1;
                }
                Ordering::Equal => return None,
            }
        }
        Some((Monomial { even, odd }, negative))
    }

    fn pow_even(&self, n: i32) -> Monomial {
        debug_assert!(self.odd.is_empty());
        Monomial {
            even: self.even.iter().map(|(g, e)| (g.clone(), e * n)).collect(),
            odd: Vec::new(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, e) in &self.even {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{}", g.name)?;
            } else {
                write!(f, "{}^{}", g.name, e)?;
            }
        }
        for g in &self.odd {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", g.name)?;
        }
        Ok(())
    }
}

/// Element of the coefficient superring GF(p^k)[even][invertible^±1] ⊗ Λ[odd].
///
/// Terms are kept sorted by monomial with zero coefficients removed, so structural
/// equality is ring equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    terms: Vec<(Monomial, FieldElement)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: vec![(Monomial::one(), c)],
        }
    }

    pub fn int(field: GaloisField, n: i64) -> Self {
        Scalar::constant(field.int(n))
    }

    pub fn one(field: GaloisField) -> Self {
        Scalar::constant(field.one())
    }

    pub fn generator(field: GaloisField, g: &Generator) -> Self {
        Scalar {
            terms: vec![(Monomial::generator(g), field.one())],
        }
    }

    /// Builds a scalar from arbitrary terms, combining repeats. Fails on mixed parity.
    pub fn from_terms(
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self, ScalarError> {
        let s = Self::collect(terms);
        if !s.is_homogeneous() {
            return Err(ScalarError::MixedParity(s.to_string()));
        }
        Ok(s)
    }

    fn collect(terms: impl IntoIterator<Item = (Monomial, FieldElement)>) -> Self {
        let mut map: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        Scalar {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The field of the coefficients, if the scalar is nonzero.
    pub fn field(&self) -> Option<GaloisField> {
        self.terms.first().map(|(_, c)| c.field())
    }

    /// True when no parameter occurs.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn as_constant(&self) -> Option<FieldElement> {
        match self.terms.as_slice() {
            [] => None,
            [(m, c)] if m.is_one() => Some(*c),
            _ => None,
        }
    }

    /// Constant value including zero; `field` supplies the zero.
    pub fn constant_value(&self, field: GaloisField) -> Option<FieldElement> {
        if self.is_zero() {
            Some(field.zero())
        } else {
            self.as_constant()
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut parities = self.terms.iter().map(|(m, _)| m.parity());
        match parities.next() {
            None => true,
            Some(first) => parities.all(|p| p == first),
        }
    }

    /// Parity of a homogeneous scalar; zero counts as even.
    pub fn parity(&self) -> Parity {
        self.terms
            .first()
            .map(|(m, _)| m.parity())
            .unwrap_or(Parity::Even)
    }

    pub fn generators(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.generators().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Multiplies every coefficient by a field element.
    pub fn scale(&self, c: &FieldElement) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    fn merge(&self, other: &Scalar, negate: bool) -> Scalar {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { c.neg() } else { *c }));
                    j += 1;
                }
                Ordering::Equal => {
                    let b = other.terms[j].1;
                    let c = if negate {
                        self.terms[i].1.sub(&b)
                    } else {
                        self.terms[i].1.add(&b)
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Scalar { terms: out }
    }

    fn product(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, negative)) = ma.mul(mb) {
                    let c = ca.mul(cb);
                    out.push((m, if negative { c.neg() } else { c }));
                }
            }
        }
        Scalar::collect(out)
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let Some(field) = self.field() else {
            return if n == 0 {
                panic!("0^0 has no field context")
            } else {
                Scalar::zero()
            };
        };
        let mut acc = Scalar::one(field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Units: (nonzero constant) · (Laurent monomial) + nilpotent (odd-containing) terms.
    pub fn is_unit(&self) -> bool {
        let mut body = self.terms.iter().filter(|(m, _)| m.odd.is_empty());
        match (body.next(), body.next()) {
            (Some((m, _)), None) => m.is_laurent_unit(),
            _ => false,
        }
    }

    pub fn invert(&self) -> Result<Scalar, ScalarError> {
        if !self.is_unit() {
            return Err(ScalarError::NotAUnit(self.to_string()));
        }
        let (m, c) = self
            .terms
            .iter()
            .find(|(m, _)| m.odd.is_empty())
            .expect("unit has a body");
        let inv_body = Scalar {
            terms: vec![(m.pow_even(-1), c.inverse().expect("nonzero"))],
        };
        // a = u(1 + n) with n nilpotent, so a^{-1} = (1 - n + n^2 - ...) u^{-1}
        let field = c.field();
        let n = &(&inv_body * self) - &Scalar::one(field);
        let mut inv = Scalar::one(field);
        let mut power = Scalar::one(field);
        loop {
            power = -&(&power * &n);
            if power.is_zero() {
                break;
            }
            inv = &inv + &power;
        }
        Ok(&inv * &inv_body)
    }

    /// a ↦ a^p on an even scalar: coefficients via Frobenius, parameter exponents times p.
    /// Terms containing odd generators vanish.
    pub fn frobenius(&self) -> Result<Scalar, ScalarError> {
        if self.parity() == Parity::Odd {
            return Err(ScalarError::OddParity(self.to_string()));
        }
        let Some(field) = self.field() else {
            return Ok(Scalar::zero());
        };
        let p = field.characteristic() as i32;
        Ok(Scalar::collect(
            self.terms
                .iter()
                .filter(|(m, _)| m.odd.is_empty())
                .map(|(m, c)| (m.pow_even(p), c.frobenius())),
        ))
    }

    /// Substitutes field values for some generators; the rest stay symbolic.
    pub fn specialize(
        &self,
        assignment: &BTreeMap<String, FieldElement>,
    ) -> Result<Scalar, ScalarError> {
        let mut out = Vec::with_capacity(self.terms.len());
        'terms: for (m, c) in &self.terms {
            let mut coeff = *c;
            let mut even = Vec::new();
            for (g, e) in &m.even {
                match assignment.get(g.name()) {
                    Some(v) => {
                        if v.is_zero() {
                            if g.kind == GenKind::Invertible {
                                return Err(ScalarError::ZeroForInvertible(g.name().to_string()));
                            }
                            continue 'terms;
                        }
                        let v = v
                            .embed(coeff.field())
                            .ok_or_else(|| ScalarError::FieldMismatch(g.name().to_string()))?;
                        let factor = if *e < 0 {
                            v.inverse().expect("nonzero").pow((-*e) as u64)
                        } else {
                            v.pow(*e as u64)
                        };
                        coeff = coeff.mul(&factor);
                    }
                    None => even.push((g.clone(), *e)),
                }
            }
            let mut odd = Vec::new();
            for g in &m.odd {
                match assignment.get(g.name()) {
                    Some(v) if v.is_zero() => continue 'terms,
                    Some(_) => return Err(ScalarError::OddNonzero(g.name().to_string())),
                    None => odd.push(g.clone()),
                }
            }
            out.push((Monomial { even, odd }, coeff));
        }
        Ok(Scalar::collect(out))
    }

    /// Ring homomorphism to the field. Odd generators are sent to 0 unless assigned.
    pub fn evaluate(
        &self,
        field: GaloisField,
        assignment: &BTreeMap<String, FieldElement>,
    ) -> Result<FieldElement, ScalarError> {
        for g in self.generators() {
            match (g.kind, assignment.get(g.name())) {
                (GenKind::Odd, _) => {}
                (GenKind::Invertible, Some(v)) if v.is_zero() => {
                    return Err(ScalarError::ZeroForInvertible(g.name().to_string()))
                }
                (_, None) => return Err(ScalarError::MissingAssignment(g.name().to_string())),
                _ => {}
            }
        }
        let mut assignment = assignment.clone();
        for g in self.generators() {
            if g.kind == GenKind::Odd {
                assignment
                    .entry(g.name().to_string())
                    .or_insert(field.zero());
            }
        }
        let s = self.specialize(&assignment)?;
        s.constant_value(field)
            .ok_or_else(|| ScalarError::MissingAssignment(s.to_string()))
    }

    /// Drops every term of degree > `max` in the named generator.
    pub fn truncate(&self, name: &str, max: i32) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(name) <= max)
                .cloned()
                .collect(),
        }
    }

    /// Coefficient of `name^degree`, as a scalar in the remaining generators.
    pub fn coefficient_of(&self, name: &str, degree: i32) -> Scalar {
        Scalar::collect(
            self.terms
                .iter()
                .filter(|(m, _)| m.degree_in(name) == degree)
                .map(|(m, c)| {
                    let even = m
                        .even
                        .iter()
                        .filter(|(g, _)| g.name() != name)
                        .cloned()
                        .collect();
                    let odd = m.odd.iter().filter(|g| g.name() != name).cloned().collect();
                    (Monomial { even, odd }, *c)
                }),
        )
    }

    /// Re-expresses every coefficient in an extension field.
    pub fn embed(&self, target: GaloisField) -> Option<Scalar> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), c.embed(target)?));
        }
        Some(Scalar { terms })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let coeff = if c.is_prime_field() {
                c.to_string()
            } else {
                format!("({c})")
            };
            match (m.is_one(), c.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{coeff}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.merge(rhs, false)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.merge(rhs, true)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.product(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(rhs, true);
    }
}

/// The coefficient ring: a base field together with named parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterRing {
    field: GaloisField,
    generators: Vec<Generator>,
}

impl ParameterRing {
    pub fn new(field: GaloisField) -> Self {
        ParameterRing {
            field,
            generators: Vec::new(),
        }
    }

    /// ε invertible; δ, ρ, λ even; τ odd.
    pub fn standard(field: GaloisField) -> Self {
        let mut ring = ParameterRing::new(field);
        for (name, kind) in [
            ("eps", GenKind::Invertible),
            ("delta", GenKind::Even),
            ("rho", GenKind::Even),
            ("lambda", GenKind::Even),
            ("tau", GenKind::Odd),
        ] {
            ring.add_generator(name, kind).expect("distinct names");
        }
        ring
    }

    pub fn add_generator(&mut self, name: &str, kind: GenKind) -> Result<Generator, ScalarError> {
        if name == "z" {
            return Err(ScalarError::ReservedName(name.to_string()));
        }
        if let Some(g) = self.generators.iter().find(|g| g.name() == name) {
            if g.kind != kind {
                return Err(ScalarError::ConflictingGenerator(name.to_string()));
            }
            return Ok(g.clone());
        }
        let g = Generator::new(name, kind);
        self.generators.push(g.clone());
        Ok(g)
    }

    pub fn field(&self) -> GaloisField {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn find(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name() == name)
    }

    pub fn var(&self, name: &str) -> Result<Scalar, ScalarError> {
        let g = self
            .find(name)
            .ok_or_else(|| ScalarError::UnknownGenerator(name.to_string()))?;
        Ok(Scalar::generator(self.field, g))
    }

    pub fn int(&self, n: i64) -> Scalar {
        Scalar::int(self.field, n)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.field)
    }

    /// Merges the generators of another ring over the same field.
    pub fn union(&self, other: &ParameterRing) -> Result<ParameterRing, ScalarError> {
        if self.field != other.field {
            return Err(ScalarError::FieldMismatch(other.field.to_string()));
        }
        let mut out = self.clone();
        for g in &other.generators {
            out.add_generator(g.name(), g.kind)?;
        }
        Ok(out)
    }

    /// Same generators over a different field.
    pub fn with_field(&self, field: GaloisField) -> ParameterRing {
        ParameterRing {
            field,
            generators: self.generators.clone(),
        }
    }

    /// Rejects zero values for invertible generators and nonzero values for odd ones.
    pub fn check_assignment(
        &self,
        assignment: &BTreeMap<String, FieldElement>,
    ) -> Result<(), ScalarError> {
        for (name, v) in assignment {
            let g = self
                .find(name)
                .ok_or_else(|| ScalarError::UnknownGenerator(name.clone()))?;
            match g.kind {
                GenKind::Invertible if v.is_zero() => {
                    return Err(ScalarError::ZeroForInvertible(name.clone()))
                }
                GenKind::Odd if !v.is_zero() => return Err(ScalarError::OddNonzero(name.clone())),
                _ => {}
            }
        }
        Ok(())
    }

    /// Parses the textual scalar form, e.g. `2*eps^-1*delta + rho*tau`.
    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        let expr = super::expr::parse(text)?;
        let s = expr.eval(&super::expr::ScalarContext { ring: self })?;
        if !s.is_homogeneous() {
            return Err(ScalarError::MixedParity(text.to_string()));
        }
        Ok(s)
    }

    /// Parses a field constant (integer or polynomial in `z`).
    pub fn parse_constant(&self, text: &str) -> Result<FieldElement, ScalarError> {
        let bare = ParameterRing::new(self.field);
        let s = bare.parse(text)?;
        s.constant_value(self.field)
            .ok_or_else(|| ScalarError::NotConstant(text.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> ParameterRing {
        ParameterRing::standard(GaloisField::prime(3).unwrap())
    }

    #[test]
    fn laurent_product() {
        let r = ring();
        let a = r.parse("2 + eps").unwrap();
        let b = r.parse("eps^-1").unwrap();
        assert_eq!(&a * &b, r.parse("2*eps^-1 + 1").unwrap());
    }

    #[test]
    fn odd_square_vanishes_and_even_commutes() {
        let r = ring();
        let tau = r.var("tau").unwrap();
        assert!((&tau * &tau).is_zero());
        let dt = &r.var("delta").unwrap() * &tau;
        assert_eq!(
            &dt * &r.var("rho").unwrap(),
            r.parse("delta*rho*tau").unwrap()
        );
    }

    #[test]
    fn grassmann_sign() {
        let mut r = ring();
        r.add_generator("sigma", GenKind::Odd).unwrap();
        let s = r.var("sigma").unwrap();
        let t = r.var("tau").unwrap();
        assert_eq!(&s * &t, -&(&t * &s));
        assert!(!(&s * &t).is_zero());
    }

    #[test]
    fn frobenius_examples() {
        let r = ring();
        assert_eq!(
            r.var("eps").unwrap().frobenius().unwrap(),
            r.parse("eps^3").unwrap()
        );
        assert_eq!(r.int(2).frobenius().unwrap(), r.int(2));
        assert_eq!(
            r.parse("delta + rho").unwrap().frobenius().unwrap(),
            r.parse("delta^3 + rho^3").unwrap()
        );
        assert!(matches!(
            r.var("tau").unwrap().frobenius(),
            Err(ScalarError::OddParity(_))
        ));
    }

    #[test]
    fn evaluate_examples() {
        let r = ring();
        let f = r.field();
        let mut at = BTreeMap::new();
        at.insert("eps".to_string(), f.int(1));
        at.insert("delta".to_string(), f.int(1));
        assert_eq!(
            r.parse("delta*(1+2*eps^2)")
                .unwrap()
                .evaluate(f, &at)
                .unwrap(),
            f.int(0)
        );
        let mut at = BTreeMap::new();
        at.insert("eps".to_string(), f.int(2));
        at.insert("rho".to_string(), f.int(1));
        assert_eq!(
            r.parse("eps^-1*rho").unwrap().evaluate(f, &at).unwrap(),
            f.int(2)
        );
        let mut at = BTreeMap::new();
        at.insert("eps".to_string(), f.int(0));
        assert!(matches!(
            r.var("eps").unwrap().evaluate(f, &at),
            Err(ScalarError::ZeroForInvertible(_))
        ));
        assert!(matches!(
            r.var("rho").unwrap().evaluate(f, &BTreeMap::new()),
            Err(ScalarError::MissingAssignment(_))
        ));
    }

    #[test]
    fn invert_examples() {
        let r = ring();
        assert_eq!(
            r.parse("2*eps").unwrap().invert().unwrap(),
            r.parse("2*eps^-1").unwrap()
        );
        assert!(matches!(
            r.var("delta").unwrap().invert(),
            Err(ScalarError::NotAUnit(_))
        ));
        assert!(r.parse("1 + eps").unwrap().invert().is_err());
        let mut r2 = r.clone();
        r2.add_generator("sigma", GenKind::Odd).unwrap();
        let u = r2.parse("eps + delta*tau*sigma").unwrap();
        let inv = u.invert().unwrap();
        assert!((&u * &inv).is_one());
    }

    #[test]
    fn mixed_parity_rejected() {
        let r = ring();
        assert!(matches!(
            r.parse("1 + delta*tau"),
            Err(ScalarError::MixedParity(_))
        ));
    }

    #[test]
    fn display_roundtrip() {
        let r = ring();
        for text in [
            "2*eps^-1*delta + rho",
            "eps*tau + 2*delta*rho*tau",
            "0",
            "1 + eps^2",
            "2*delta*rho*lambda",
        ] {
            let s = r.parse(text).unwrap();
            assert_eq!(r.parse(&s.to_string()).unwrap(), s, "{text}");
        }
    }

    #[test]
    fn truncate_and_coefficient() {
        let r = ring();
        let s = r.parse("1 + lambda + lambda^2*delta").unwrap();
        assert_eq!(s.truncate("lambda", 1), r.parse("1 + lambda").unwrap());
        assert_eq!(s.coefficient_of("lambda", 2), r.var("delta").unwrap());
    }
}

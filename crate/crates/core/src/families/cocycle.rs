use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::linalg::Matrix;
use crate::scalars::{GenKind, Parity, Scalar};
use crate::superalg::{vector, AlgebraBuilder, BracketJson, SuperAlgebra, TermJson, Vector};

/// Super-antisymmetric bilinear map on basis pairs, deforming [x,y] to [x,y] + t·c(x,y)
/// for a parameter t of the same parity as the map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub parameter: String,
    pub parity: Parity,
    pub degree: Option<i64>,
    /// c(e_i, e_j) for i ≤ j; c(e_j, e_i) = -(-1)^{|e_i||e_j|} c(e_i, e_j).
    pub values: BTreeMap<(usize, usize), Vector>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub parameter: String,
    pub parity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub values: Vec<BracketJson>,
}

fn swap_sign(g: &SuperAlgebra, i: usize, j: usize, v: Vector) -> Vector {
    if Parity::sign(g.basis()[i].parity, g.basis()[j].parity) {
        v
    } else {
        vector::neg(&v)
    }
}

impl Cocycle {
    pub fn zero(parameter: &str, parity: Parity) -> Self {
        Cocycle {
            parameter: parameter.into(),
            parity,
            degree: None,
            values: BTreeMap::new(),
        }
    }

    /// Sets c(e_i, e_j) (and with it c(e_j, e_i)).
    pub fn set(&mut self, g: &SuperAlgebra, i: usize, j: usize, v: Vector) {
        let (key, v) = if i <= j {
            ((i, j), v)
        } else {
            ((j, i), swap_sign(g, j, i, v))
        };
        if vector::is_zero(&v) {
            self.values.remove(&key);
        } else {
            self.values.insert(key, v);
        }
    }

    pub fn value(&self, g: &SuperAlgebra, i: usize, j: usize) -> Vector {
        let key = (i.min(j), i.max(j));
        match self.values.get(&key) {
            None => vector::zero(g.dim()),
            Some(v) if i <= j => v.clone(),
            Some(v) => swap_sign(g, j, i, v.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Every value is homogeneous of parity |e_i| + |e_j| + shift, and the parameter
    /// kind (if the ring already knows it) matches the shift.
    pub fn validate(&self, g: &SuperAlgebra) -> Result<(), FamilyError> {
        if let Some(gen) = g.ring().find(&self.parameter) {
            let ok = match self.parity {
                Parity::Odd => gen.kind() == GenKind::Odd,
                Parity::Even => gen.kind() != GenKind::Odd,
            };
            if !ok {
                return Err(FamilyError::InvalidCocycle(format!(
                    "parameter {} has the wrong parity",
                    self.parameter
                )));
            }
        }
        for (&(i, j), v) in &self.values {
            if i >= g.dim() || j >= g.dim() || v.len() != g.dim() {
                return Err(FamilyError::InvalidCocycle("index out of range".into()));
            }
            let want = g.basis()[i].parity + g.basis()[j].parity + self.parity;
            match g.element_parity(v) {
                Ok(p) if p == want => {}
                _ => {
                    return Err(FamilyError::InvalidCocycle(format!(
                        "c({}, {}) = {} is not homogeneous of parity {want}",
                        g.basis()[i].name,
                        g.basis()[j].name,
                        g.format(v)
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn from_json_value(g: &SuperAlgebra, file: &CocycleJson) -> Result<Self, FamilyError> {
        let parity = match file.parity.as_str() {
            "even" | "0" => Parity::Even,
            "odd" | "1" => Parity::Odd,
            other => {
                return Err(FamilyError::InvalidCocycle(format!(
                    "unknown parity {other:?}"
                )))
            }
        };
        let mut c = Cocycle {
            parameter: file.parameter.clone(),
            parity,
            degree: file.degree,
            values: BTreeMap::new(),
        };
        for br in &file.values {
            let i = g.index_of(&br.i)?;
            let j = g.index_of(&br.j)?;
            let mut v = vector::zero(g.dim());
            for t in &br.value {
                v[g.index_of(&t.k)?] += &g.ring().parse(&t.coef)?;
            }
            let key = (i.min(j), i.max(j));
            let normalized = if i <= j {
                v.clone()
            } else {
                swap_sign(g, j, i, v.clone())
            };
            if let Some(prev) = c.values.get(&key) {
                if *prev != normalized {
                    return Err(FamilyError::InvalidCocycle(format!(
                        "conflicting values for ({}, {})",
                        br.i, br.j
                    )));
                }
                continue;
            }
            c.set(g, i, j, v);
        }
        c.validate(g)?;
        Ok(c)
    }

    pub fn from_json(g: &SuperAlgebra, text: &str) -> Result<Self, FamilyError> {
        let file: CocycleJson =
            serde_json::from_str(text).map_err(|e| FamilyError::InvalidCocycle(e.to_string()))?;
        Cocycle::from_json_value(g, &file)
    }

    pub fn to_json_value(&self, g: &SuperAlgebra) -> CocycleJson {
        CocycleJson {
            parameter: self.parameter.clone(),
            parity: self.parity.to_string(),
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(&(i, j), v)| BracketJson {
                    i: g.basis()[i].name.clone(),
                    j: g.basis()[j].name.clone(),
                    value: v
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| TermJson {
                            coef: c.to_string(),
                            k: g.basis()[k].name.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self, g: &SuperAlgebra) -> String {
        serde_json::to_string_pretty(&self.to_json_value(g)).expect("cocycle serializes")
    }
}

/// c(x, y) = [φx, y] + [x, φy] - φ[x, y] for an even linear map φ (columns are images).
///
/// This is the first-order term of the bracket transported by id + t·φ.
pub fn coboundary(g: &SuperAlgebra, phi: &Matrix, parameter: &str) -> Result<Cocycle, FamilyError> {
    let n = g.dim();
    let image = |v: &[Scalar]| -> Vector {
        (0..n)
            .map(|k| {
                let mut s = Scalar::zero();
                for (j, c) in v.iter().enumerate() {
                    let m = phi.get(k, j);
                    if !c.is_zero() && !m.is_zero() {
                        s += &(m * c);
                    }
                }
                s
            })
            .collect()
    };
    let mut c = Cocycle::zero(parameter, Parity::Even);
    for i in 0..n {
        let ei = g.basis_vector(i);
        let pi = image(&ei);
        for j in i..n {
            let ej = g.basis_vector(j);
            let pj = image(&ej);
            let v = vector::sub(
                &vector::add(&g.bracket(&pi, &ej)?, &g.bracket(&ei, &pj)?),
                &image(&g.bracket_basis(i, j)),
            );
            c.set(g, i, j, v);
        }
    }
    c.validate(g)?;
    Ok(c)
}

/// The deformed algebra with bracket [x,y] + t·c(x,y) over the ring extended by t.
///
/// Super Jacobi is checked exactly; a failure linear in t means c is not a cocycle,
/// a failure only at higher order means c does not integrate as it stands.
pub fn apply_cocycle_deform(g: &SuperAlgebra, c: &Cocycle) -> Result<SuperAlgebra, FamilyError> {
    c.validate(g)?;
    let mut ring = g.ring().clone();
    let kind = match c.parity {
        Parity::Even => GenKind::Even,
        Parity::Odd => GenKind::Odd,
    };
    if ring.find(&c.parameter).is_none() {
        ring.add_generator(&c.parameter, kind)?;
    }
    let base = g.with_ring(ring.clone())?;
    let t = ring.var(&c.parameter)?;
    let mut b: AlgebraBuilder = base.to_builder();
    for (&(i, j), v) in &c.values {
        let terms: Vec<(usize, Scalar)> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k, &t * x))
            .collect();
        b.add_bracket(i, j, &terms)?;
    }
    let h = b.build();
    let report = h.check_super_identities();
    if !report.skew.is_empty() || !report.parity.is_empty() {
        return Err(FamilyError::InvalidCocycle(report.to_string()));
    }
    let mut higher = None;
    for (names, _) in &report.jacobi {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| h.index_of(n))
            .collect::<Result<_, _>>()?;
        let jac = h.jacobi(
            &h.basis_vector(idx[0]),
            &h.basis_vector(idx[1]),
            &h.basis_vector(idx[2]),
        )?;
        let linear: Vector = jac
            .iter()
            .map(|s| s.coefficient_of(&c.parameter, 1))
            .collect();
        if !vector::is_zero(&linear) {
            return Err(FamilyError::NotACocycle(format!(
                "d c({}, {}, {}) = {}",
                names[0],
                names[1],
                names[2],
                h.format(&linear)
            )));
        }
        if higher.is_none() {
            higher = Some((names.clone(), h.format(&jac)));
        }
    }
    if let Some((names, value)) = higher {
        return Err(FamilyError::JacobiFailure(names, value));
    }
    Ok(h)
}

/// x<i> <-> y<i>; every other name is fixed.
pub fn flip_name(name: &str) -> Option<String> {
    let (head, rest) = name.split_at(name.len().min(1));
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    match head {
        "x" => Some(format!("y{rest}")),
        "y" => Some(format!("x{rest}")),
        _ => None,
    }
}

fn flip_permutation(g: &SuperAlgebra) -> Result<Vec<usize>, FamilyError> {
    let mut perm: Vec<usize> = (0..g.dim()).collect();
    let mut any = false;
    for (i, e) in g.basis().iter().enumerate() {
        if let Some(other) = flip_name(&e.name) {
            let j = g.index_of(&other).map_err(|_| {
                FamilyError::NamingConvention(format!("{} has no partner {other}", e.name))
            })?;
            if g.basis()[j].parity != e.parity {
                return Err(FamilyError::NamingConvention(format!(
                    "{} and {other} have different parities",
                    e.name
                )));
            }
            perm[i] = j;
            any = true;
        }
    }
    if !any {
        return Err(FamilyError::NamingConvention(
            "no x_i/y_i basis elements".into(),
        ));
    }
    Ok(perm)
}

/// Transports g and c along x_i <-> y_i: the element named x_i of the result behaves
/// as y_i did, and vice versa. Applying it twice gives back the input.
pub fn chevalley_flip(
    g: &SuperAlgebra,
    c: &Cocycle,
) -> Result<(SuperAlgebra, Cocycle), FamilyError> {
    let perm = flip_permutation(g)?;
    let n = g.dim();
    let permute = |v: &[Scalar]| -> Vector { (0..n).map(|k| v[perm[k]].clone()).collect() };
    let mut b = AlgebraBuilder::new(g.ring().clone());
    for i in 0..n {
        let src = &g.basis()[perm[i]];
        let mut e = src.clone();
        e.name = g.basis()[i].name.clone();
        b.add_basis(e)?;
    }
    let mut flipped_c = Cocycle {
        values: BTreeMap::new(),
        ..c.clone()
    };
    for i in 0..n {
        for j in i..n {
            let v = permute(&g.bracket_basis(perm[i], perm[j]));
            let terms: Vec<(usize, Scalar)> = v
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect();
            if !terms.is_empty() {
                b.set_bracket(i, j, &terms)?;
            }
        }
    }
    let h = b.build();
    for i in 0..n {
        for j in i..n {
            let v = permute(&c.value(g, perm[i], perm[j]));
            flipped_c.set(&h, i, j, v);
        }
    }
    Ok((h, flipped_c))
}

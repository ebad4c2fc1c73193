//! JSON form of an algebra: basis, nonzero brackets, declared parameters.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{AlgebraBuilder, BasisElement, SuperAlgError, SuperAlgebra, Vector};
use crate::scalars::{GaloisField, GenKind, ParameterRing, Parity};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub coef: String,
    pub k: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisJson {
    pub name: String,
    pub parity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BracketJson {
    pub i: String,
    pub j: String,
    pub value: Vec<TermJson>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct ParametersJson {
    #[serde(default)]
    pub even: Vec<String>,
    #[serde(default)]
    pub invertible: Vec<String>,
    #[serde(default)]
    pub odd: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AlgebraJson {
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub basis: Vec<BasisJson>,
    #[serde(default)]
    pub brackets: Vec<BracketJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<ParametersJson>,
}

pub(crate) fn parse_parity(s: &str) -> Result<Parity, SuperAlgError> {
    match s {
        "even" | "0" => Ok(Parity::Even),
        "odd" | "1" => Ok(Parity::Odd),
        other => Err(SuperAlgError::Parse(format!("unknown parity {other:?}"))),
    }
}

/// Ring with the declared parameters, or the standard one when none are declared.
pub fn ring_from_parameters(
    field: GaloisField,
    params: Option<&ParametersJson>,
) -> Result<ParameterRing, SuperAlgError> {
    let Some(params) = params else {
        return Ok(ParameterRing::standard(field));
    };
    let mut ring = ParameterRing::new(field);
    for (names, kind) in [
        (&params.invertible, GenKind::Invertible),
        (&params.even, GenKind::Even),
        (&params.odd, GenKind::Odd),
    ] {
        for name in names {
            ring.add_generator(name, kind)?;
        }
    }
    Ok(ring)
}

pub fn parameters_of(ring: &ParameterRing) -> ParametersJson {
    let mut out = ParametersJson::default();
    for g in ring.generators() {
        let list = match g.kind() {
            GenKind::Invertible => &mut out.invertible,
            GenKind::Even => &mut out.even,
            GenKind::Odd => &mut out.odd,
        };
        list.push(g.name().to_string());
    }
    out
}

impl SuperAlgebra {
    pub fn from_json_value(file: &AlgebraJson) -> Result<SuperAlgebra, SuperAlgError> {
        let field = GaloisField::new(file.p, file.k.unwrap_or(1))?;
        let ring = ring_from_parameters(field, file.parameters.as_ref())?;
        let mut b = AlgebraBuilder::new(ring.clone());
        for e in &file.basis {
            b.add_basis(BasisElement {
                name: e.name.clone(),
                parity: parse_parity(&e.parity)?,
                weight: e.weight.clone(),
                degree: e.degree,
            })?;
        }
        let mut seen: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for br in &file.brackets {
            let i = b.index_of(&br.i)?;
            let j = b.index_of(&br.j)?;
            let mut terms = Vec::new();
            for t in &br.value {
                terms.push((b.index_of(&t.k)?, ring.parse(&t.coef)?));
            }
            let (key, value) = b.normalized(i, j, &terms)?;
            if let Some(prev) = seen.get(&key) {
                if *prev != value {
                    return Err(SuperAlgError::ConflictingBracket(
                        br.i.clone(),
                        br.j.clone(),
                    ));
                }
                continue;
            }
            seen.insert(key, value);
            b.set_bracket(i, j, &terms)?;
        }
        Ok(b.build())
    }

    pub fn from_json(text: &str) -> Result<SuperAlgebra, SuperAlgError> {
        let file: AlgebraJson =
            serde_json::from_str(text).map_err(|e| SuperAlgError::Parse(e.to_string()))?;
        SuperAlgebra::from_json_value(&file)
    }

    pub fn to_json_value(&self) -> AlgebraJson {
        let field = self.field();
        let brackets = self
            .stored()
            .map(|(&(i, j), terms)| BracketJson {
                i: self.basis()[i].name.clone(),
                j: self.basis()[j].name.clone(),
                value: terms
                    .iter()
                    .map(|(k, c)| TermJson {
                        coef: c.to_string(),
                        k: self.basis()[*k].name.clone(),
                    })
                    .collect(),
            })
            .collect();
        AlgebraJson {
            p: field.characteristic(),
            k: (field.degree() > 1).then_some(field.degree()),
            basis: self
                .basis()
                .iter()
                .map(|e| BasisJson {
                    name: e.name.clone(),
                    parity: e.parity.to_string(),
                    weight: e.weight.clone(),
                    degree: e.degree,
                })
                .collect(),
            brackets,
            parameters: Some(parameters_of(self.ring())),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("serializable")
    }
}

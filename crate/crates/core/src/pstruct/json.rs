use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::PMap;
use crate::superalg::{vector, SuperAlgError, SuperAlgebra, TermJson, Vector};

pub type VectorJson = Vec<TermJson>;

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct PMapJson {
    #[serde(default)]
    pub even: BTreeMap<String, VectorJson>,
    #[serde(default)]
    pub odd: BTreeMap<String, VectorJson>,
    #[serde(default)]
    pub center: Vec<VectorJson>,
}

pub fn vector_to_json(g: &SuperAlgebra, v: &[crate::scalars::Scalar]) -> VectorJson {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| TermJson {
            coef: c.to_string(),
            k: g.basis()[k].name.clone(),
        })
        .collect()
}

pub fn vector_from_json(g: &SuperAlgebra, terms: &[TermJson]) -> Result<Vector, SuperAlgError> {
    let mut v = vector::zero(g.dim());
    for t in terms {
        v[g.index_of(&t.k)?] += &g.ring().parse(&t.coef)?;
    }
    Ok(v)
}

impl PMap {
    pub fn to_json(&self, g: &SuperAlgebra) -> PMapJson {
        let table = |m: &BTreeMap<usize, Vector>| {
            m.iter()
                .map(|(i, v)| (g.basis()[*i].name.clone(), vector_to_json(g, v)))
                .collect()
        };
        PMapJson {
            even: table(&self.even),
            odd: table(&self.odd),
            center: self.center.iter().map(|v| vector_to_json(g, v)).collect(),
        }
    }

    pub fn from_json(g: &SuperAlgebra, file: &PMapJson) -> Result<PMap, SuperAlgError> {
        let table =
            |m: &BTreeMap<String, VectorJson>| -> Result<BTreeMap<usize, Vector>, SuperAlgError> {
                m.iter()
                    .map(|(name, terms)| Ok((g.index_of(name)?, vector_from_json(g, terms)?)))
                    .collect()
            };
        Ok(PMap {
            even: table(&file.even)?,
            odd: table(&file.odd)?,
            center: file
                .center
                .iter()
                .map(|t| vector_from_json(g, t))
                .collect::<Result<_, _>>()?,
        })
    }
}

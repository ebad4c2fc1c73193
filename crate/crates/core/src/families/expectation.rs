use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::pstruct::{same_coset, Restrictedness};
use crate::report::CheckRecord;
use crate::scalars::{FieldElement, Parity};
use crate::superalg::{vector, SuperAlgebra, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedEntry {
    pub element: String,
    pub value: String,
}

/// Stated values of x^[p] (even x) or x^[2p] (odd x) for one algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaExpectation {
    pub algebra: String,
    /// Algebra file, relative to the expectation file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra_file: Option<String>,
    /// Cocycle key k (file `cocycle_<k>.json`) or a path ending in `.json`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<String>,
    pub entries: Vec<ExpectedEntry>,
    /// Basis elements not listed are expected to map to 0.
    #[serde(default)]
    pub rest_zero: bool,
    /// Compare modulo the computed center (plus `modulo`) instead of exactly.
    #[serde(default = "yes")]
    pub modulo_center: bool,
    /// Extra central elements the values are stated modulo.
    #[serde(default)]
    pub modulo: Vec<String>,
    /// Also check the x_i <-> y_i mirror of the deform against the mirrored values.
    #[serde(default)]
    pub flip: bool,
}

fn yes() -> bool {
    true
}

impl LemmaExpectation {
    pub fn from_json(text: &str) -> Result<Self, FamilyError> {
        serde_json::from_str(text).map_err(|e| FamilyError::Expectation(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("expectation serializes")
    }
}

fn power_label(g: &SuperAlgebra, i: usize) -> String {
    let p = g.characteristic();
    match g.basis()[i].parity {
        Parity::Even => format!("{}^[{p}]", g.basis()[i].name),
        Parity::Odd => format!("{}^[{}]", g.basis()[i].name, 2 * p),
    }
}

fn parse_value(
    g: &SuperAlgebra,
    text: &str,
    assignment: Option<&BTreeMap<String, FieldElement>>,
) -> Result<Vector, FamilyError> {
    let v = g
        .parse_vector(text)
        .map_err(|e| FamilyError::Expectation(format!("{text:?}: {e}")))?;
    match assignment {
        None => Ok(v),
        Some(a) => v
            .iter()
            .map(|c| c.specialize(a).map_err(FamilyError::from))
            .collect(),
    }
}

/// One check record per basis element named in `expect` (and per remaining element
/// when `rest_zero`), in basis order. Expected values are specialized by `assignment`.
pub fn compare_pmap(
    g: &SuperAlgebra,
    computed: &Restrictedness,
    expect: &LemmaExpectation,
    assignment: Option<&BTreeMap<String, FieldElement>>,
    prefix: &str,
) -> Result<Vec<CheckRecord>, FamilyError> {
    let mut wanted: BTreeMap<usize, (Vector, String)> = BTreeMap::new();
    for e in &expect.entries {
        let i = g
            .index_of(&e.element)
            .map_err(|_| FamilyError::Expectation(format!("unknown element {}", e.element)))?;
        let v = parse_value(g, &e.value, assignment)?;
        if wanted.insert(i, (v, e.value.clone())).is_some() {
            return Err(FamilyError::Expectation(format!(
                "{} listed twice",
                e.element
            )));
        }
    }
    if expect.rest_zero {
        for i in 0..g.dim() {
            wanted
                .entry(i)
                .or_insert_with(|| (vector::zero(g.dim()), "0".into()));
        }
    }
    let mut center: Vec<Vector> = Vec::new();
    if expect.modulo_center {
        center.extend(computed.pmap.center.iter().cloned());
        for m in &expect.modulo {
            center.push(parse_value(g, m, assignment)?);
        }
    }
    let coset = center.iter().any(|c| !vector::is_zero(c));
    let mut out = Vec::new();
    for (i, (want, _)) in wanted {
        let name = format!("{prefix}{}", power_label(g, i));
        let expected = g.format(&want);
        let record = match computed.pmap.get(i) {
            Some(v) => {
                let matches = same_coset(v, &want, &center);
                CheckRecord {
                    name,
                    expected,
                    computed: g.format(v),
                    coset,
                    matches,
                }
            }
            None => {
                let reason = computed
                    .failures
                    .iter()
                    .find(|f| f.element == g.basis()[i].name)
                    .map(|f| f.reason.clone())
                    .unwrap_or_else(|| "not computed".into());
                CheckRecord {
                    name,
                    expected,
                    computed: reason,
                    coset,
                    matches: false,
                }
            }
        };
        out.push(record);
    }
    Ok(out)
}

/// The expectation with every x<i>/y<i> token swapped, for the mirrored deform.
pub fn flip_expectation(e: &LemmaExpectation) -> LemmaExpectation {
    let swap = |text: &str| -> String {
        let mut out = String::new();
        let mut token = String::new();
        let flush = |token: &mut String, out: &mut String| {
            out.push_str(&super::flip_name(token).unwrap_or_else(|| token.clone()));
            token.clear();
        };
        for ch in text.chars() {
            if ch.is_ascii_alphanumeric() || ch == '_' {
                token.push(ch);
            } else {
                flush(&mut token, &mut out);
                out.push(ch);
            }
        }
        flush(&mut token, &mut out);
        out
    };
    LemmaExpectation {
        algebra: format!("{} (x<->y)", e.algebra),
        entries: e
            .entries
            .iter()
            .map(|x| ExpectedEntry {
                element: swap(&x.element),
                value: swap(&x.value),
            })
            .collect(),
        modulo: e.modulo.iter().map(|m| swap(m)).collect(),
        flip: false,
        ..e.clone()
    }
}

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use super::expectation::{compare_pmap, ExpectedEntry, LemmaExpectation};
use super::table::GeneratingTable;
use super::FamilyError;
use crate::divpow::{contact_bracket, DPDescriptor};
use crate::pstruct::{check_pmap, torus_pmap_ansatz, verify_restricted};
use crate::report::{CheckRecord, Report};
use crate::scalars::{GaloisField, ParameterRing, Scalar};
use crate::superalg::{AlgebraBuilder, BasisElement, SuperAlgebra, Vector};

/// Basis order of L(ε,δ,ρ).
pub const L_ORDER: [&str; 10] = ["h1", "h2", "x1", "x2", "x3", "x4", "y1", "y2", "y3", "y4"];

/// Pairs carrying the δ- and ρ-deformation, with the basis element each one hits.
pub const DEFORMATION_PAIRS: [(&str, &str, &str); 6] = [
    ("y4", "y1", "x2"),
    ("y4", "y2", "x1"),
    ("y2", "y1", "x4"),
    ("y4", "y3", "y1"),
    ("y3", "x1", "x4"),
    ("y4", "x1", "x3"),
];

/// ε ∈ {1,2}, δ, ρ ∈ {0,1,2} over GF(3).
pub const L3_SPECIALIZATIONS: [(i64, i64, i64); 18] = {
    let mut out = [(0, 0, 0); 18];
    let mut n = 0;
    while n < 18 {
        out[n] = (1 + (n / 9) as i64, ((n / 3) % 3) as i64, (n % 3) as i64);
        n += 1;
    }
    out
};

fn deformation_values(
    eps: &Scalar,
    delta: &Scalar,
    rho: &Scalar,
) -> Result<[Scalar; 6], FamilyError> {
    let inv = eps.invert()?;
    Ok([
        delta.clone(),
        delta.clone(),
        -&(delta * &inv),
        rho.clone(),
        -&(rho * &inv),
        -rho,
    ])
}

fn standard_ring() -> ParameterRing {
    DPDescriptor::k31().ring().clone()
}

/// L(ε,δ,ρ) over GF(3): contact brackets of the table functions, re-expanded in the
/// table basis, with the six δ/ρ values installed on the pairs they name.
pub fn build_l(eps: &Scalar, delta: &Scalar, rho: &Scalar) -> Result<SuperAlgebra, FamilyError> {
    let table = GeneratingTable::new(eps)?;
    let d = &table.descriptor;
    let mut b = AlgebraBuilder::new(d.ring().clone());
    let order: Vec<usize> = L_ORDER
        .iter()
        .map(|a| table.index_of_alias(a).expect("alias in table"))
        .collect();
    for &t in &order {
        let e = &table.entries[t];
        b.add_basis(BasisElement::even(e.alias).with_degree(e.degree))?;
    }
    let mut contact: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
    for (i, &ti) in order.iter().enumerate() {
        for (j, &tj) in order.iter().enumerate().skip(i) {
            let f = contact_bracket(d, &table.entries[ti].function, &table.entries[tj].function)?;
            let coords = table.expand(&f).map_err(|e| {
                FamilyError::ExpansionFailure(format!("[{}, {}]: {e}", L_ORDER[i], L_ORDER[j]))
            })?;
            let terms: Vec<(usize, Scalar)> = order
                .iter()
                .enumerate()
                .map(|(k, &tk)| (k, coords[tk].clone()))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            if !terms.is_empty() {
                contact.insert((i, j), terms);
            }
        }
    }
    for (&(i, j), terms) in &contact {
        b.set_bracket(i, j, terms)?;
    }
    for (&(a, bb, target), c) in DEFORMATION_PAIRS
        .iter()
        .zip(deformation_values(eps, delta, rho)?)
    {
        let (i, j) = (b.index_of(a)?, b.index_of(bb)?);
        if contact.contains_key(&(i.min(j), i.max(j))) {
            return Err(FamilyError::ExpansionFailure(format!(
                "contact bracket [{a}, {bb}] is nonzero, so the deformed value is ambiguous"
            )));
        }
        if !c.is_zero() {
            b.set_bracket_named(a, bb, &[(target, c)])?;
        }
    }
    Ok(b.build())
}

/// L with ε, δ, ρ left as parameters.
pub fn build_l_symbolic() -> Result<SuperAlgebra, FamilyError> {
    let r = standard_ring();
    build_l(&r.var("eps")?, &r.var("delta")?, &r.var("rho")?)
}

pub fn build_l_at(eps: i64, delta: i64, rho: i64) -> Result<SuperAlgebra, FamilyError> {
    let r = standard_ring();
    build_l(&r.int(eps), &r.int(delta), &r.int(rho))
}

/// Stored brackets whose terms break deg[a,b] = deg a + deg b.
pub fn degree_violations(g: &SuperAlgebra) -> Vec<String> {
    let basis = g.basis();
    let mut out = Vec::new();
    for (&(i, j), terms) in g.stored() {
        let (Some(di), Some(dj)) = (basis[i].degree, basis[j].degree) else {
            out.push(format!(
                "[{}, {}]: missing degree",
                basis[i].name, basis[j].name
            ));
            continue;
        };
        for (k, _) in terms {
            if basis[*k].degree != Some(di + dj) {
                out.push(format!(
                    "[{}, {}] has a {} component",
                    basis[i].name, basis[j].name, basis[*k].name
                ));
            }
        }
    }
    out
}

/// Pairs where {f_a, f_b} differs from Σ_k c_k f_k with c = [a, b] read from `g`.
///
/// Compares functions directly, so it does not depend on how `g` was expanded.
pub fn table_closure_mismatches(
    g: &SuperAlgebra,
    eps: &Scalar,
) -> Result<Vec<String>, FamilyError> {
    let table = GeneratingTable::new(eps)?;
    let d = &table.descriptor;
    let func = |name: &str| {
        table
            .index_of_alias(name)
            .map(|t| table.entries[t].function.clone())
            .ok_or_else(|| FamilyError::ExpansionFailure(format!("no table entry {name}")))
    };
    let names: Vec<&str> = g.basis().iter().map(|e| e.name.as_str()).collect();
    let funcs = names
        .iter()
        .map(|n| func(n))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for i in 0..names.len() {
        for j in i..names.len() {
            let lhs = contact_bracket(d, &funcs[i], &funcs[j])?;
            let v = g.bracket_basis(i, j);
            let mut rhs = crate::divpow::DPElement::zero();
            for (c, f) in v.iter().zip(&funcs) {
                if !c.is_zero() {
                    rhs = rhs.add(&f.scale(c));
                }
            }
            if lhs != rhs {
                out.push(format!(
                    "{{{}, {}}} = {} but [{}, {}] = {}",
                    names[i],
                    names[j],
                    lhs.format(d),
                    names[i],
                    names[j],
                    g.format(&v)
                ));
            }
        }
    }
    Ok(out)
}

/// The stated 3-structure of L(ε,δ,ρ), transcribed as printed.
pub fn lemma_l3_expectation() -> LemmaExpectation {
    let entry = |e: &str, v: &str| ExpectedEntry {
        element: e.into(),
        value: v.into(),
    };
    LemmaExpectation {
        algebra: "L(eps,delta,rho)".into(),
        algebra_file: None,
        cocycle: None,
        entries: vec![
            entry("h1", "h1"),
            entry("h2", "eps^2*h2"),
            entry(
                "y2",
                "delta*(1 + 2*eps^2)*h1 + delta*eps^-1*(1 + 2*eps^2)*h2",
            ),
            entry("y3", "rho*eps^-1*h2"),
            entry("y4", "eps*delta*rho*(2 + eps^2)*y1"),
            entry("y1", "0"),
            entry("x1", "0"),
            entry("x2", "0"),
            entry("x3", "0"),
            entry("x4", "0"),
        ],
        rest_zero: true,
        modulo_center: true,
        modulo: Vec::new(),
        flip: false,
    }
}

fn point_label(p: (i64, i64, i64)) -> String {
    format!("eps={},delta={},rho={}: ", p.0, p.1, p.2)
}

fn verify_point(
    symbolic: &SuperAlgebra,
    expect: &LemmaExpectation,
    point: (i64, i64, i64),
) -> Result<Vec<CheckRecord>, FamilyError> {
    let field: GaloisField = symbolic.field();
    let assignment: BTreeMap<String, _> = [("eps", point.0), ("delta", point.1), ("rho", point.2)]
        .iter()
        .map(|(k, v)| (k.to_string(), field.int(*v)))
        .collect();
    let g = symbolic.specialize(&assignment)?;
    let label = point_label(point);
    let r = verify_restricted(&g);
    let mut out = compare_pmap(&g, &r, expect, Some(&assignment), &label)?;
    if point == (1, 0, 0) {
        let torus: Vec<Vector> = vec![g.named("h1")?, g.named("h2")?];
        let ansatz = torus_pmap_ansatz(&g, &torus)?;
        let diffs = ansatz.differences(&r.pmap);
        let bad = check_pmap(&g, &ansatz);
        out.push(CheckRecord::flag(
            format!("{label}torus ansatz coincides"),
            diffs.is_empty() && bad.is_empty(),
            format!("{} differing entries, {} failing", diffs.len(), bad.len()),
        ));
    }
    Ok(out)
}

/// Computes the 3-structure of L symbolically and at each given specialization and
/// compares it with [`lemma_l3_expectation`].
pub fn verify_lemma_l3(symbolic: bool, points: &[(i64, i64, i64)]) -> Result<Report, FamilyError> {
    let start = Instant::now();
    let g = build_l_symbolic()?;
    let expect = lemma_l3_expectation();
    let mut report = Report::new("L3");
    if symbolic {
        let r = verify_restricted(&g);
        report.extend(compare_pmap(&g, &r, &expect, None, "symbolic: ")?);
    }
    let per_point: Vec<Result<Vec<CheckRecord>, FamilyError>> = points
        .par_iter()
        .map(|&p| verify_point(&g, &expect, p))
        .collect();
    for r in per_point {
        report.extend(r?);
    }
    Ok(report.finish(start.elapsed()))
}

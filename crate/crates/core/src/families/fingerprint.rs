use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::FamilyError;
use crate::linalg::{self, Matrix};
use crate::scalars::{Parity, Scalar};
use crate::superalg::{center, derived_series, vector, weight_decomposition, SuperAlgebra, Vector};

/// Isomorphism invariants of a numeric algebra; equal fingerprints are necessary, not
/// sufficient, for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub sdim: (usize, usize),
    pub center_dim: usize,
    pub derived_dims: Vec<usize>,
    /// Rank of (x, y) ↦ str(ad x ∘ ad y).
    pub trace_form_rank: usize,
    /// Weight-space dimensions for [`greedy_torus`], largest first.
    pub weight_dims: Vec<usize>,
    /// Number of x in g(F_p) whose ad is nilpotent of each index (0: not nilpotent).
    /// Only over prime fields with at most [`NILPOTENCY_LIMIT`] points.
    pub ad_nilpotency: Option<BTreeMap<usize, u64>>,
}

pub const NILPOTENCY_LIMIT: u64 = 1 << 20;

/// `c[(i * n + j) * n + k]` is the e_k-coefficient of [e_i, e_j].
fn structure_table(g: &SuperAlgebra) -> Option<Vec<u64>> {
    let n = g.dim();
    let mut c = vec![0; n * n * n];
    for i in 0..n {
        for j in 0..n {
            for (k, s) in g.bracket_basis(i, j).iter().enumerate() {
                if !s.is_zero() {
                    c[(i * n + j) * n + k] = s.as_constant()?.as_int()? as u64;
                }
            }
        }
    }
    Some(c)
}

/// Square matrices stored row-major; products reduced once per entry.
fn mat_mul(a: &[u64], b: &[u64], n: usize, p: u64, out: &mut [u64]) {
    for i in 0..n {
        let row = &a[i * n..(i + 1) * n];
        for j in 0..n {
            let mut acc = 0u64;
            for (k, &x) in row.iter().enumerate() {
                acc += x * b[k * n + j];
            }
            out[i * n + j] = acc % p;
        }
    }
}

fn nilpotency_index(ad: &[u64], n: usize, p: u64) -> usize {
    let zero = |m: &[u64]| m.iter().all(|&v| v == 0);
    let trace = |m: &[u64]| (0..n).map(|i| m[i * n + i]).sum::<u64>() % p;
    if trace(ad) != 0 {
        return 0;
    }
    let mut tmp = vec![0; n * n];
    mat_mul(ad, ad, n, p, &mut tmp);
    if trace(&tmp) != 0 {
        return 0;
    }
    let mut big = ad.to_vec();
    let mut e = 1;
    while e < n && !zero(&big) {
        mat_mul(&big, &big, n, p, &mut tmp);
        std::mem::swap(&mut big, &mut tmp);
        e *= 2;
    }
    if !zero(&big) {
        return 0;
    }
    let mut m = ad.to_vec();
    let mut k = 1;
    while !zero(&m) {
        mat_mul(&m, ad, n, p, &mut tmp);
        std::mem::swap(&mut m, &mut tmp);
        k += 1;
    }
    k
}

/// Distribution of ad-nilpotency indices over all F_p-points of a numeric algebra.
pub fn ad_nilpotency_profile(g: &SuperAlgebra) -> Option<BTreeMap<usize, u64>> {
    let field = g.field();
    if field.degree() != 1 || !g.is_numeric() {
        return None;
    }
    let p = field.characteristic() as u64;
    let n = g.dim();
    let points = p.checked_pow(n as u32).filter(|&q| q <= NILPOTENCY_LIMIT)?;
    let c = structure_table(g)?;
    // The index of cx equals that of x, so only vectors whose last nonzero coordinate
    // is 1 are visited and counted p - 1 times.
    let normalized = |mut code: u64| {
        let mut last = 0;
        for _ in 0..n {
            if !code.is_multiple_of(p) {
                last = code % p;
            }
            code /= p;
        }
        last == 1
    };
    let mut counts = (1..points)
        .into_par_iter()
        .filter(|&code| normalized(code))
        .fold(BTreeMap::new, |mut acc: BTreeMap<usize, u64>, mut code| {
            let mut ad = vec![0u64; n * n];
            for i in 0..n {
                let x = code % p;
                code /= p;
                if x == 0 {
                    continue;
                }
                let block = &c[i * n * n..(i + 1) * n * n];
                for j in 0..n {
                    for k in 0..n {
                        ad[k * n + j] += x * block[j * n + k];
                    }
                }
            }
            ad.iter_mut().for_each(|v| *v %= p);
            *acc.entry(nilpotency_index(&ad, n, p)).or_default() += p - 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    *counts.entry(1).or_default() += 1;
    Some(counts)
}

/// Even basis elements with diagonal ad, taken in basis order while they commute with
/// those already chosen.
pub fn greedy_torus(g: &SuperAlgebra) -> Result<Vec<Vector>, FamilyError> {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..g.dim() {
        if g.basis()[i].parity != Parity::Even {
            continue;
        }
        let ad = g.ad_matrix(&g.basis_vector(i))?;
        if ad.entries().any(|(r, c, _)| r != c) {
            continue;
        }
        if chosen
            .iter()
            .all(|&t| vector::is_zero(&g.bracket_basis(i, t)))
        {
            chosen.push(i);
        }
    }
    Ok(chosen.into_iter().map(|i| g.basis_vector(i)).collect())
}

fn supertrace(g: &SuperAlgebra, m: &Matrix) -> Scalar {
    let mut s = Scalar::zero();
    for (i, e) in g.basis().iter().enumerate() {
        let d = m.get(i, i);
        match e.parity {
            Parity::Even => s += d,
            Parity::Odd => s -= d,
        }
    }
    s
}

pub fn invariant_fingerprint(g: &SuperAlgebra) -> Result<Fingerprint, FamilyError> {
    let n = g.dim();
    let ads: Vec<Matrix> = (0..n)
        .map(|i| g.ad_matrix(&g.basis_vector(i)))
        .collect::<Result<_, _>>()?;
    let gram: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| supertrace(g, &ads[i].mul(&ads[j])))
                .collect()
        })
        .collect();
    let torus = greedy_torus(g)?;
    let mut weight_dims: Vec<usize> = weight_decomposition(g, &torus)?
        .into_iter()
        .map(|w| w.indices.len())
        .collect();
    weight_dims.sort_unstable_by(|a, b| b.cmp(a));
    Ok(Fingerprint {
        dim: n,
        sdim: g.sdim(),
        center_dim: center(g)?.dim(),
        derived_dims: derived_series(g)?.iter().map(|s| s.dim()).collect(),
        trace_form_rank: linalg::reduce(gram, n).rank(),
        weight_dims,
        ad_nilpotency: ad_nilpotency_profile(g),
    })
}

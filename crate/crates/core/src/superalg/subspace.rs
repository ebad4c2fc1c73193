use std::collections::BTreeMap;

use super::{vector, SuperAlgError, SuperAlgebra, Vector};
use crate::linalg::{self, Matrix, Reduction};
use crate::scalars::Scalar;

/// Subspace of a numeric algebra, kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    echelon: Reduction,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.echelon.pivots == other.echelon.pivots
            && self.echelon.rows == other.echelon.rows
    }
}

impl Eq for Subspace {}

fn require_constant(vectors: &[Vector]) -> Result<(), SuperAlgError> {
    for v in vectors {
        if let Some(c) = v.iter().find(|c| !c.is_constant()) {
            return Err(SuperAlgError::SymbolicNotSupported(c.to_string()));
        }
    }
    Ok(())
}

impl Subspace {
    pub fn span(ambient: usize, vectors: Vec<Vector>) -> Result<Self, SuperAlgError> {
        require_constant(&vectors)?;
        for v in &vectors {
            if v.len() != ambient {
                return Err(SuperAlgError::DimensionMismatch {
                    expected: ambient,
                    got: v.len(),
                });
            }
        }
        Ok(Subspace {
            ambient,
            echelon: linalg::row_space(vectors, ambient),
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            echelon: linalg::row_space(Vec::new(), ambient),
        }
    }

    pub fn full(g: &SuperAlgebra) -> Self {
        let n = g.dim();
        Subspace::span(n, (0..n).map(|i| g.basis_vector(i)).collect()).expect("unit vectors")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    /// Echelon basis.
    pub fn basis(&self) -> &[Vector] {
        &self.echelon.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.echelon.pivots
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        vector::is_zero(&linalg::reduce_against(v, &self.echelon))
    }

    /// Representative of v + self with zero coordinates at the pivot columns.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        linalg::reduce_against(v, &self.echelon)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis().to_vec();
        rows.extend(other.basis().iter().cloned());
        Subspace::span(self.ambient, rows).expect("numeric rows")
    }
}

/// g^(i): g^(0) = g, g^(i) = [g^(i-1), g^(i-1)].
pub fn derived_subalgebra(g: &SuperAlgebra, i: usize) -> Result<Subspace, SuperAlgError> {
    require_numeric(g)?;
    let mut current = Subspace::full(g);
    for _ in 0..i {
        current = bracket_span(g, &current, &current)?;
    }
    Ok(current)
}

/// Derived series until it stabilizes; the last entry is the stable term.
pub fn derived_series(g: &SuperAlgebra) -> Result<Vec<Subspace>, SuperAlgError> {
    require_numeric(g)?;
    let mut series = vec![Subspace::full(g)];
    loop {
        let last = series.last().expect("nonempty");
        let next = bracket_span(g, last, last)?;
        if next.dim() == last.dim() {
            return Ok(series);
        }
        series.push(next);
    }
}

fn bracket_span(g: &SuperAlgebra, a: &Subspace, b: &Subspace) -> Result<Subspace, SuperAlgError> {
    let mut rows = Vec::new();
    for (s, x) in a.basis().iter().enumerate() {
        for (t, y) in b.basis().iter().enumerate() {
            if std::ptr::eq(a, b) && t < s {
                continue;
            }
            let v = g.bracket(x, y)?;
            if !vector::is_zero(&v) {
                rows.push(v);
            }
        }
    }
    Subspace::span(g.dim(), rows)
}

fn require_numeric(g: &SuperAlgebra) -> Result<(), SuperAlgError> {
    if g.is_numeric() {
        Ok(())
    } else {
        Err(SuperAlgError::SymbolicNotSupported(
            g.parameters().join(", "),
        ))
    }
}

/// Rows (j, k) ↦ coefficient of e_k in [e_i, e_j], columns i: the kernel is the center.
pub(crate) fn center_system(g: &SuperAlgebra) -> Vec<Vector> {
    let n = g.dim();
    let mut rows = vec![vector::zero(n); n * n];
    for i in 0..n {
        for j in 0..n {
            let v = g.bracket_basis(i, j);
            for (k, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    rows[j * n + k][i] = c;
                }
            }
        }
    }
    rows.retain(|r| !vector::is_zero(r));
    rows
}

/// {z : [z, g] = 0}.
pub fn center(g: &SuperAlgebra) -> Result<Subspace, SuperAlgError> {
    require_numeric(g)?;
    let red = linalg::reduce(center_system(g), g.dim());
    Subspace::span(g.dim(), red.kernel(g.field()))
}

/// One simultaneous ad-eigenspace of a torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpace {
    pub weight: Vec<Scalar>,
    pub indices: Vec<usize>,
}

/// Groups basis vectors by their ad-eigenvalues under the given commuting elements.
pub fn weight_decomposition(
    g: &SuperAlgebra,
    torus: &[Vector],
) -> Result<Vec<WeightSpace>, SuperAlgError> {
    let n = g.dim();
    let mats: Vec<Matrix> = torus
        .iter()
        .map(|h| g.ad_matrix(h))
        .collect::<Result<_, _>>()?;
    for (h, m) in torus.iter().zip(&mats) {
        if let Some((r, c, _)) = m.entries().find(|(r, c, _)| r != c) {
            return Err(SuperAlgError::NotDiagonal(format!(
                "ad({}) maps {} to {}",
                g.format(h),
                g.basis()[c].name,
                g.basis()[r].name
            )));
        }
    }
    let mut groups: BTreeMap<Vec<String>, WeightSpace> = BTreeMap::new();
    for j in 0..n {
        let weight: Vec<Scalar> = mats.iter().map(|m| m.get(j, j).clone()).collect();
        let key: Vec<String> = weight.iter().map(ToString::to_string).collect();
        groups
            .entry(key)
            .or_insert_with(|| WeightSpace {
                weight,
                indices: Vec::new(),
            })
            .indices
            .push(j);
    }
    let mut spaces: Vec<WeightSpace> = groups.into_values().collect();
    spaces.sort_by_key(|s| s.indices[0]);
    Ok(spaces)
}

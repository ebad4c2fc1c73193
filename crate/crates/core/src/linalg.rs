//! Dense matrices over [`Scalar`] and Gauss–Jordan elimination with unit pivots.
//!
//! Over a field every nonzero entry is a unit and the elimination is the usual one.
//! Over the parameter ring only units are used as pivots; rows that survive without a
//! unit entry are reported back instead of being guessed at.

use std::fmt;

use crate::scalars::{GaloisField, Parity, Scalar};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: GaloisField) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Ordinary product; correct whenever the entries commute (no odd parameters).
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cell = &mut out.data[i * other.cols + j];
                    *cell += &(a * b);
                }
            }
        }
        out
    }

    /// Matrix of F∘G for operators given by left-coefficient matrices
    /// (F(e_k) = Σ_l F_lk e_l), where F has parity `f_parity`.
    ///
    /// Passing F over a coefficient c of G(e_j) costs the sign (-1)^{|F||c|}:
    /// (FG)_lj = Σ_k (-1)^{|F||G_kj|} G_kj F_lk.
    pub fn super_compose(f: &Matrix, f_parity: Parity, g: &Matrix) -> Matrix {
        assert_eq!(f.cols, g.rows);
        let mut out = Matrix::zeros(f.rows, g.cols);
        for k in 0..f.cols {
            for j in 0..g.cols {
                let gkj = g.get(k, j);
                if gkj.is_zero() {
                    continue;
                }
                let negative = Parity::sign(f_parity, gkj.parity());
                for l in 0..f.rows {
                    let flk = f.get(l, k);
                    if flk.is_zero() {
                        continue;
                    }
                    let term = gkj * flk;
                    let cell = &mut out.data[l * g.cols + j];
                    if negative {
                        *cell -= &term;
                    } else {
                        *cell += &term;
                    }
                }
            }
        }
        out
    }

    /// Non-zero entries with their positions.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_zero())
            .map(move |(idx, s)| (idx / self.cols, idx % self.cols, s))
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn into_rows(self) -> Vec<Vec<Scalar>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[Scalar]>::to_vec)
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of [`reduce`].
#[derive(Clone, Debug)]
pub struct Reduction {
    /// Pivot rows, normalized to 1 at the pivot and cleared in every other pivot column.
    pub rows: Vec<Vec<Scalar>>,
    /// Pivot column of each entry of `rows`.
    pub pivots: Vec<usize>,
    /// Remaining nonzero rows (no unit left in the pivotable columns).
    pub rest: Vec<Vec<Scalar>>,
    pub pivot_cols: usize,
}

fn pick_pivot(rows: &[Vec<Scalar>], from: usize, col: usize) -> Option<usize> {
    let mut fallback = None;
    for (i, row) in rows.iter().enumerate().skip(from) {
        let a = &row[col];
        if a.is_zero() {
            continue;
        }
        if a.as_constant().is_some() {
            return Some(i);
        }
        if fallback.is_none() && a.is_unit() {
            fallback = Some(i);
        }
    }
    fallback
}

fn left_scale(s: &Scalar, row: &[Scalar]) -> Vec<Scalar> {
    row.iter().map(|x| s * x).collect()
}

/// Gauss–Jordan on `rows`, pivoting only in the first `pivot_cols` columns (the rest
/// ride along, e.g. right-hand sides). Row operations are left multiplications.
pub fn reduce(mut rows: Vec<Vec<Scalar>>, pivot_cols: usize) -> Reduction {
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..pivot_cols {
        let Some(i) = pick_pivot(&rows, r, c) else {
            continue;
        };
        rows.swap(r, i);
        let inv = rows[r][c].invert().expect("pivot is a unit");
        if !inv.is_one() {
            rows[r] = left_scale(&inv, &rows[r]);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rest = rows
        .split_off(r)
        .into_iter()
        .filter(|row| row.iter().any(|x| !x.is_zero()))
        .collect();
    Reduction {
        rows,
        pivots,
        rest,
        pivot_cols,
    }
}

impl Reduction {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.pivot_cols)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// True when no leftover row has a nonzero entry in a pivotable column.
    pub fn is_complete(&self) -> bool {
        self.rest
            .iter()
            .all(|row| row[..self.pivot_cols].iter().all(Scalar::is_zero))
    }

    /// Kernel vectors indexed by free columns (free coordinate 1, others determined).
    /// Columns still touched by leftover rows are skipped.
    pub fn kernel(&self, field: GaloisField) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        for f in self.free_columns() {
            if self.rest.iter().any(|row| !row[f].is_zero()) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.pivot_cols];
            v[f] = Scalar::one(field);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = -&row[f];
            }
            out.push(v);
        }
        out
    }
}

/// Reduced row echelon basis of the span of `vectors` (nonzero rows only).
pub fn row_space(vectors: Vec<Vec<Scalar>>, ncols: usize) -> Reduction {
    reduce(vectors, ncols)
}

/// Reduces `v` against a fully reduced echelon basis; the remainder is zero iff
/// `v` lies in the span (exactly so for unit pivots).
pub fn reduce_against(v: &[Scalar], basis: &Reduction) -> Vec<Scalar> {
    let mut out = v.to_vec();
    for (row, &p) in basis.rows.iter().zip(&basis.pivots) {
        if out[p].is_zero() {
            continue;
        }
        let f = out[p].clone();
        for (x, y) in out.iter_mut().zip(row) {
            if !y.is_zero() {
                *x -= &(&f * y);
            }
        }
    }
    out
}

/// Coordinates of `v` in a reduced echelon basis, if `v` lies in its span.
pub fn coordinates(v: &[Scalar], basis: &Reduction) -> Option<Vec<Scalar>> {
    let coords: Vec<Scalar> = basis.pivots.iter().map(|&p| v[p].clone()).collect();
    let rem = reduce_against(v, basis);
    rem.iter().all(Scalar::is_zero).then_some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ParameterRing;

    fn f3() -> GaloisField {
        GaloisField::prime(3).unwrap()
    }

    fn ints(row: &[i64]) -> Vec<Scalar> {
        row.iter().map(|&n| Scalar::int(f3(), n)).collect()
    }

    #[test]
    fn rank_and_kernel_over_gf3() {
        // third row = first + second (mod 3)
        let m = vec![
            ints(&[1, 2, 0, 1]),
            ints(&[0, 1, 1, 2]),
            ints(&[1, 0, 1, 0]),
        ];
        let red = reduce(m.clone(), 4);
        assert_eq!(red.rank(), 2);
        let ker = red.kernel(f3());
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &m {
                let dot = row
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn symbolic_unit_pivots() {
        let ring = ParameterRing::standard(f3());
        let eps = ring.var("eps").unwrap();
        let delta = ring.var("delta").unwrap();
        let rows = vec![
            vec![eps.clone(), ring.int(1), delta.clone()],
            vec![Scalar::zero(), delta.clone(), ring.int(1)],
        ];
        let red = reduce(rows, 2);
        // column 1 only has the non-unit delta below the first pivot
        assert_eq!(red.pivots, vec![0]);
        assert!(!red.is_complete());
    }

    #[test]
    fn coordinates_in_span() {
        let basis = row_space(vec![ints(&[1, 1, 0]), ints(&[0, 1, 1])], 3);
        let v = ints(&[2, 0, 1]); // 2*(1,1,0) + (0,1,1)*... check
        let coords = coordinates(&v, &basis);
        assert!(coords.is_some());
        assert!(coordinates(&ints(&[1, 0, 0]), &basis).is_none());
    }
}

//! Dense matrices over a [`Field`]: row reduction, rank, kernels and solving.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<u32> = self.row(r).iter().map(|e| e.index()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|e| e.index() >= field.order()) {
                return Err(Error::invalid(format!("{bad} is not an element of {field:?}")));
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows).map(|r| dot(f, self.row(r), v)).collect())
    }

    /// Reduced row echelon form and its strictly increasing pivot columns.
    /// Zero rows are kept at the bottom.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(src) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, src);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            if inv != Elem::ONE {
                for v in &mut self.data[r * cols..(r + 1) * cols] {
                    *v = f.mul(*v, inv);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            for other in before.chunks_mut(cols).chain(after.chunks_mut(cols)) {
                let factor = other[c];
                if !factor.is_zero() {
                    sub_scaled(&f, other, pivot_row, factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        for c in 0..cols {
            self.data.swap(a * cols + c, b * cols + c);
        }
    }

    /// RREF with the zero rows dropped: a canonical basis of the row space.
    pub fn row_basis(&self) -> Matrix {
        let (mut m, pivots) = self.rref();
        m.rows = pivots.len();
        m.data.truncate(m.rows * m.cols);
        m
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis (in RREF) of `{v : M v^T = 0}`, one vector per row.
    pub fn kernel(&self) -> Matrix {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Elem::ZERO; self.cols];
            v[free] = Elem::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Matrix::from_rows(f, self.cols, &basis)
            .expect("kernel rows have the right width")
            .row_basis()
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for (r, &rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, rhs);
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Elem::ZERO; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(i, self.cols);
        }
        Ok(Some(x))
    }
}

pub(crate) fn dot(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter()
        .zip(b)
        .fold(Elem::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `dst -= factor * src`.
pub(crate) fn sub_scaled(f: &Field, dst: &mut [Elem], src: &[Elem], factor: Elem) {
    if f.is_binary() {
        for (d, s) in dst.iter_mut().zip(src) {
            d.0 ^= s.0;
        }
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = f.sub(*d, f.mul(factor, s));
        }
    }
}

/// `dst += factor * src`.
pub(crate) fn add_scaled(f: &Field, dst: &mut [Elem], src: &[Elem], factor: Elem) {
    sub_scaled(f, dst, src, f.neg(factor));
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(f: &Field, rows: &[&[u32]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| f.elem(v).unwrap()).collect())
            .collect();
        Matrix::from_rows(f, cols, &rows).unwrap()
    }

    #[test]
    fn rref_basics() {
        let f = Field::new(2, 1).unwrap();
        let id = Matrix::identity(&f, 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));
        let z = Matrix::zeros(&f, 2, 3);
        assert_eq!(z.rref(), (z.clone(), vec![]));
        let a = m(&f, &[&[1, 1], &[1, 1]]);
        assert_eq!(a.rref(), (m(&f, &[&[1, 1], &[0, 0]]), vec![0]));
    }

    #[test]
    fn kernel_of_all_ones_row() {
        let f = Field::new(2, 1).unwrap();
        let k = m(&f, &[&[1, 1, 1]]).kernel();
        assert_eq!(k.rows(), 2);
        for r in 0..k.rows() {
            assert_eq!(k.row(r).iter().filter(|e| !e.is_zero()).count() % 2, 0);
        }
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let f = Field::new(7, 1).unwrap();
        let id = Matrix::identity(&f, 2);
        let b = vec![Elem(3), Elem(5)];
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));
        let a = m(&f, &[&[1, 2], &[2, 4]]);
        assert_eq!(a.solve(&[Elem(1), Elem(1)]).unwrap(), None);
        assert!(a.solve(&[Elem(1)]).is_err());
        assert_eq!(Matrix::identity(&f, 5).rank(), 5);
    }

    #[test]
    fn ragged_rows_rejected() {
        let f = Field::new(3, 1).unwrap();
        let rows = vec![vec![Elem(1), Elem(0)], vec![Elem(1)]];
        assert!(matches!(
            Matrix::from_rows(&f, 2, &rows),
            Err(Error::DimensionMismatch(_))
        ));
    }

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (
            prop::sample::select(vec![(2u64, 1u32), (3, 1), (2, 2), (5, 1)]),
            0usize..6,
            1usize..8,
        )
            .prop_flat_map(|((p, e), r, c)| {
                let f = Field::new(p, e).unwrap();
                let q = f.order();
                prop::collection::vec(0..q, r * c).prop_map(move |data| {
                    let rows: Vec<Vec<Elem>> = data.chunks(c).map(|ch| ch.iter().map(|&v| Elem(v)).collect()).collect();
                    Matrix::from_rows(&f, c, &rows).unwrap()
                })
            })
    }

    proptest! {
        #[test]
        fn kernel_annihilates_and_ranks_add_up(a in matrix_strategy()) {
            let k = a.kernel();
            for r in 0..k.rows() {
                let prod = a.mul_vec(k.row(r)).unwrap();
                prop_assert!(prod.iter().all(|e| e.is_zero()));
            }
            prop_assert_eq!(a.rank() + k.rows(), a.cols());
        }

        #[test]
        fn rref_is_idempotent(a in matrix_strategy()) {
            let (r, p) = a.rref();
            prop_assert_eq!(r.rref(), (r.clone(), p.clone()));
            prop_assert_eq!(r.rank(), a.rank());
            prop_assert!(p.windows(2).all(|w| w[0] < w[1]));
        }
    }
}

//! Dense exact matrices whose rows and columns are labelled by point sets.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::mindex::MultiIndex;
use crate::pointset::PointSet;
use crate::scalar::Scalar;

/// Row or column labels: the points of a set, or the plain range `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axis {
    Points(PointSet),
    Range(usize),
}

impl Axis {
    pub fn len(&self) -> usize {
        match self {
            Axis::Points(r) => r.len(),
            Axis::Range(n) => *n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Option<&PointSet> {
        match self {
            Axis::Points(r) => Some(r),
            Axis::Range(_) => None,
        }
    }

    pub fn label(&self, i: usize) -> String {
        match self {
            Axis::Points(r) => r.points()[i].to_string(),
            Axis::Range(_) => i.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<T> {
    rows: Axis,
    cols: Axis,
    data: Vec<T>,
}

impl<T> ExactMatrix<T> {
    pub fn from_fn(rows: Axis, cols: Axis, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let (r, c) = (rows.len(), cols.len());
        let mut data = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Axis, cols: Axis, entries: Vec<Vec<T>>) -> Result<Self> {
        if entries.len() != rows.len() || entries.iter().any(|row| row.len() != cols.len()) {
            return Err(Error::ShapeMismatch(format!(
                "expected {}x{} entries",
                rows.len(),
                cols.len()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            data: entries.into_iter().flatten().collect(),
        })
    }

    pub fn row_axis(&self) -> &Axis {
        &self.rows
    }

    pub fn col_axis(&self) -> &Axis {
        &self.cols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.ncols() + j]
    }

    /// Entry at the given row and column labels.
    pub fn entry(&self, row: &MultiIndex, col: &MultiIndex) -> Option<&T> {
        let i = self.rows.points()?.position(row)?;
        let j = self.cols.points()?.position(col)?;
        Some(self.get(i, j))
    }

    pub fn row(&self, i: usize) -> &[T] {
        let c = self.ncols();
        &self.data[i * c..(i + 1) * c]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        (0..self.nrows()).map(move |i| self.row(i))
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        self.rows().map(<[T]>::to_vec).collect()
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: self.data.iter().map(&mut f).collect(),
        }
    }

    /// Same entries with different labels of the same sizes.
    pub fn relabel(self, rows: Axis, cols: Axis) -> Result<Self> {
        if rows.len() != self.nrows() || cols.len() != self.ncols() {
            return Err(Error::ShapeMismatch("relabel with different sizes".into()));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            data: self.data,
        })
    }
}

impl<T: Scalar> ExactMatrix<T> {
    pub fn identity(axis: Axis, one: &T) -> Self {
        let zero = one.zero_like();
        Self::from_fn(axis.clone(), axis, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols.clone(), self.rows.clone(), |i, j| self.get(j, i).clone())
    }

    fn sample(&self) -> Option<&T> {
        self.data.first()
    }

    pub fn mul(&self, other: &ExactMatrix<T>) -> Result<ExactMatrix<T>> {
        if self.ncols() != other.nrows() {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        let inner = self.ncols();
        let zero = match self.sample().or(other.sample()) {
            Some(s) => s.zero_like(),
            None => {
                return Ok(ExactMatrix {
                    rows: self.rows.clone(),
                    cols: other.cols.clone(),
                    data: Vec::new(),
                })
            }
        };
        if inner == 0 && self.nrows() * other.ncols() > 0 {
            return Err(Error::ShapeMismatch("empty inner dimension".into()));
        }
        let mut out = vec![zero; self.nrows() * other.ncols()];
        for i in 0..self.nrows() {
            for t in 0..inner {
                let a = self.get(i, t);
                if a.vanishes() {
                    continue;
                }
                for j in 0..other.ncols() {
                    let b = other.get(t, j);
                    if b.vanishes() {
                        continue;
                    }
                    let cell = &mut out[i * other.ncols() + j];
                    *cell = cell.add_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(ExactMatrix {
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            data: out,
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.ncols() {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.ncols()
            )));
        }
        let Some(zero) = v.first().map(Scalar::zero_like) else {
            return Err(Error::ShapeMismatch("empty vector".into()));
        };
        Ok(self
            .rows()
            .map(|row| {
                row.iter().zip(v).fold(zero.clone(), |acc, (a, b)| {
                    if a.vanishes() || b.vanishes() {
                        acc
                    } else {
                        acc.add_ref(&a.mul_ref(b))
                    }
                })
            })
            .collect())
    }

    pub fn add(&self, other: &ExactMatrix<T>) -> Result<ExactMatrix<T>> {
        if self.nrows() != other.nrows() || self.ncols() != other.ncols() {
            return Err(Error::ShapeMismatch("cannot add matrices of different shapes".into()));
        }
        Ok(ExactMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add_ref(b)).collect(),
        })
    }

    pub fn scale(&self, c: &T) -> ExactMatrix<T> {
        self.map(|e| e.mul_ref(c))
    }

    pub fn pow(&self, mut e: u32) -> Result<ExactMatrix<T>> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("power of a non-square matrix".into()));
        }
        let Some(s) = self.sample() else {
            return Ok(self.clone());
        };
        let mut acc = Self::identity(self.rows.clone(), &s.one_like());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::vanishes)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.nrows()).all(|i| (i + 1..self.ncols()).all(|j| self.get(i, j).vanishes()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.nrows()).all(|i| (0..i.min(self.ncols())).all(|j| self.get(i, j).vanishes()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.nrows()).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Product of the diagonal of a triangular matrix.
    pub fn determinant_triangular(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        if !self.is_lower_triangular() && !self.is_upper_triangular() {
            return Err(Error::NotTriangular);
        }
        let Some(s) = self.sample() else {
            return Err(Error::ShapeMismatch("determinant of an empty matrix".into()));
        };
        Ok((0..self.nrows()).fold(s.one_like(), |acc, i| acc.mul_ref(self.get(i, i))))
    }

    /// First position where the two matrices differ, scanning rows in order.
    pub fn first_difference(&self, other: &ExactMatrix<T>) -> Option<(usize, usize)> {
        if self.nrows() != other.nrows() || self.ncols() != other.ncols() {
            return Some((0, 0));
        }
        (0..self.nrows())
            .flat_map(|i| (0..self.ncols()).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }
}

impl ExactMatrix<BigInt> {
    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.nrows();
        let mut a: Vec<Vec<BigInt>> = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    // exact by Sylvester's identity
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(if n == 0 { sign } else { sign * &a[n - 1][n - 1] })
    }

    pub fn to_rational(&self) -> ExactMatrix<BigRational> {
        self.map(|e| BigRational::from_integer(e.clone()))
    }
}

impl ExactMatrix<BigRational> {
    /// Inverse by Gauss–Jordan elimination over the rationals.
    pub fn inverse(&self) -> Result<ExactMatrix<BigRational>> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let rows = invert_rows(self.to_rows())?;
        ExactMatrix::from_rows(self.cols.clone(), self.rows.clone(), rows)
    }

    /// Converts back to integers when every entry is integral.
    pub fn to_integer(&self) -> Result<ExactMatrix<BigInt>> {
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                if !self.get(i, j).is_integer() {
                    return Err(Error::NonIntegralEntry { row: i, col: j });
                }
            }
        }
        Ok(self.map(|e| e.to_integer()))
    }
}

/// Inverts a square matrix given as rows.
pub(crate) fn invert_rows(mut a: Vec<Vec<BigRational>>) -> Result<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                a[r][j] -= x;
                inv[r][j] -= y;
            }
        }
    }
    Ok(inv)
}

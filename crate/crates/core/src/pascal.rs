//! Pascal matrices `L_R`, `U_R`, `S_R`, their powers, the creation matrix `A_R`
//! and the multidimensional binomial transform.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{Axis, ExactMatrix};
use crate::mindex::{multi_binom_unchecked, MultiIndex};
use crate::pointset::PointSet;
use crate::poly::{monomial_power, shifted_variables, Polynomial};
use crate::scalar::Scalar;

fn square(r: &PointSet, f: impl FnMut(usize, usize) -> BigInt) -> ExactMatrix<BigInt> {
    ExactMatrix::from_fn(Axis::Points(r.clone()), Axis::Points(r.clone()), f)
}

/// Lower-triangular Pascal matrix, entry `C(k_i, k_j)`.
pub fn build_l(r: &PointSet) -> ExactMatrix<BigInt> {
    let pts = r.points();
    square(r, |i, j| multi_binom_unchecked(&pts[i], &pts[j]))
}

pub fn build_u(r: &PointSet) -> ExactMatrix<BigInt> {
    build_l(r).transpose()
}

/// Symmetric Pascal matrix, entry `C(k_i + k_j, k_i)`.
pub fn build_s(r: &PointSet) -> ExactMatrix<BigInt> {
    let pts = r.points();
    square(r, |i, j| {
        let sum = pts[i].checked_add(&pts[j]).expect("same dimension");
        multi_binom_unchecked(&sum, &pts[i])
    })
}

/// `D_R = diag((−1)^{|k|})`.
pub fn build_sign_diagonal(r: &PointSet) -> ExactMatrix<BigInt> {
    let pts = r.points();
    square(r, |i, j| {
        if i != j {
            BigInt::zero()
        } else if pts[i].degree().is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    })
}

/// `L_R^p` from the closed form `p^{|k_i|−|k_j|} C(k_i, k_j)`.
///
/// `p = 0` gives the identity. Away from `p ∈ {0, 1}` the set must satisfy the
/// monomial condition, since otherwise the closed form is not a power of `L_R`.
pub fn build_l_power(r: &PointSet, p: i64) -> Result<ExactMatrix<BigInt>> {
    if p == 0 {
        return Ok(ExactMatrix::identity(Axis::Points(r.clone()), &BigInt::one()));
    }
    if p != 1 && !r.satisfies_monomial_condition() {
        return Err(Error::MonomialConditionViolated);
    }
    let pts = r.points();
    let base = BigInt::from(p);
    Ok(square(r, |i, j| {
        let c = multi_binom_unchecked(&pts[i], &pts[j]);
        if c.is_zero() {
            return c;
        }
        let e = pts[i].degree() - pts[j].degree();
        c * num_traits::pow(base.clone(), e as usize)
    }))
}

/// Creation matrix: `C(k_i, k_j)` when `|k_i| = |k_j| + 1`, zero otherwise.
pub fn build_a(r: &PointSet) -> ExactMatrix<BigInt> {
    let pts = r.points();
    square(r, |i, j| {
        if pts[i].degree() == pts[j].degree() + 1 {
            multi_binom_unchecked(&pts[i], &pts[j])
        } else {
            BigInt::zero()
        }
    })
}

/// `exp(pA) = Σ_m p^m A^m / m!` for a nilpotent integer matrix, summed until `A^m = 0`.
///
/// Works over the integers: with `A^M = 0`, it sums `p^m (M!/m!) A^m` and divides by
/// `M!` once at the end.
pub fn matrix_exponential_nilpotent(a: &ExactMatrix<BigInt>, p: i64) -> Result<ExactMatrix<BigInt>> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch("exponential of a non-square matrix".into()));
    }
    let dim = a.nrows();
    let id = ExactMatrix::identity(a.row_axis().clone(), &BigInt::one());
    if p == 0 || dim == 0 {
        return Ok(id);
    }
    let step = a.scale(&BigInt::from(p));
    let mut powers = vec![id];
    loop {
        let next = powers.last().expect("nonempty").mul(&step)?;
        if next.is_zero() {
            break;
        }
        if powers.len() >= dim {
            // A^dim vanishes for every nilpotent dim x dim matrix
            return Err(Error::NonNilpotent(dim));
        }
        powers.push(next);
    }
    let top = powers.len();
    // weights[m] = top! / m!
    let mut weights = vec![BigInt::one(); top + 1];
    for m in (0..top).rev() {
        weights[m] = &weights[m + 1] * BigInt::from(m + 1);
    }
    let denom = weights[0].clone();
    let mut sum = powers[0].scale(&weights[0]);
    for (m, pm) in powers.iter().enumerate().skip(1) {
        sum = sum.add(&pm.scale(&weights[m]))?;
    }
    let mut entries = Vec::with_capacity(dim);
    for (i, row) in sum.rows().enumerate() {
        let mut out = Vec::with_capacity(dim);
        for (j, v) in row.iter().enumerate() {
            if !(v % &denom).is_zero() {
                return Err(Error::NonIntegralEntry { row: i, col: j });
            }
            out.push(v / &denom);
        }
        entries.push(out);
    }
    ExactMatrix::from_rows(a.row_axis().clone(), a.col_axis().clone(), entries)
}

/// `b_k = Σ_{i≤k} C(k,i) a_i`, or with signs `(−1)^{|k|−|i|}` when `inverse` is set.
pub fn binomial_transform<T: Scalar>(
    r: &PointSet,
    seq: &BTreeMap<MultiIndex, T>,
    inverse: bool,
) -> Result<BTreeMap<MultiIndex, T>> {
    if !r.satisfies_monomial_condition() {
        return Err(Error::MonomialConditionViolated);
    }
    let values = r
        .iter()
        .map(|k| seq.get(k).ok_or_else(|| Error::MissingValue(k.to_string())))
        .collect::<Result<Vec<&T>>>()?;
    let mut out = BTreeMap::new();
    for (k, _) in r.iter().zip(&values) {
        let mut acc: Option<T> = None;
        for (i, a) in r.iter().zip(&values) {
            if !i.divides(k) {
                continue;
            }
            let mut c = multi_binom_unchecked(k, i);
            if inverse && (k.degree() - i.degree()) % 2 == 1 {
                c = -c;
            }
            let term = a.int_like(&c).mul_ref(a);
            acc = Some(match acc {
                Some(s) => s.add_ref(&term),
                None => term,
            });
        }
        out.insert(k.clone(), acc.expect("k ≤ k contributes"));
    }
    Ok(out)
}

/// The column vector `(x^{k})_{k∈R}` in the polynomial ring with `x0`.
pub fn monomial_vector(r: &PointSet) -> Vec<Polynomial> {
    r.iter().map(Polynomial::x_pow).collect()
}

/// The column vector `((p1 + x)^{k})_{k∈R}`.
pub fn shifted_monomial_vector(r: &PointSet, p: i64) -> Vec<Polynomial> {
    let base = shifted_variables(r.dim(), p);
    r.iter()
        .map(|k| monomial_power(&base, k).expect("dimensions agree"))
        .collect()
}

/// Lifts an integer matrix into the polynomial ring with `nvars` variables.
pub fn to_polynomial_matrix(m: &ExactMatrix<BigInt>, nvars: usize) -> ExactMatrix<Polynomial> {
    m.map(|e| Polynomial::from_int(nvars, e.clone()))
}

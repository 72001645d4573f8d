//! Stirling numbers and multivariate Stirling polynomials of the second kind, the
//! factorial Stirling matrix and the Vandermonde matrix of the linear forms
//! `A_k = x0 + k1 x1 + … + kn xn`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::{Axis, ExactMatrix};
use crate::mindex::{factorial, MultiIndex};
use crate::pascal::{build_l, to_polynomial_matrix};
use crate::pointset::{degree_window, PointSet};
use crate::poly::Polynomial;

/// Memo tables for `S(n, k)` and `S_k^{(ℓ)}`.
///
/// Entries are computed outside the lock and inserted idempotently, so concurrent
/// readers always see complete values.
#[derive(Default)]
pub struct StirlingTable {
    numbers: Mutex<Vec<Vec<BigInt>>>,
    polys: Mutex<HashMap<(MultiIndex, u32), Polynomial>>,
}

impl StirlingTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `S(n, k)` from `S(n, k) = k S(n−1, k) + S(n−1, k−1)`, `S(0, 0) = 1`.
    pub fn number(&self, n: u32, k: u32) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        let mut rows = self.numbers.lock().expect("stirling table poisoned");
        if rows.is_empty() {
            rows.push(vec![BigInt::one()]);
        }
        while rows.len() <= n as usize {
            let m = rows.len();
            let prev = &rows[m - 1];
            let mut row = vec![BigInt::zero(); m + 1];
            for (j, cell) in row.iter_mut().enumerate().skip(1) {
                let stay = prev.get(j).map(|v| v * BigInt::from(j)).unwrap_or_default();
                *cell = stay + &prev[j - 1];
            }
            rows.push(row);
        }
        rows[n as usize][k as usize].clone()
    }

    /// `S_k^{(ℓ)}(x0, …, xn)` from the closed formula
    /// `Σ_{i≥k, |i|≤ℓ} ℓ!/(i! (ℓ−|i|)!) Π_j S(i_j, k_j) x0^{ℓ−|i|} x^i`.
    pub fn poly(&self, k: &MultiIndex, ell: u32) -> Polynomial {
        let key = (k.clone(), ell);
        if let Some(p) = self.polys.lock().expect("stirling table poisoned").get(&key) {
            return p.clone();
        }
        let p = self.compute_poly(k, ell);
        self.polys
            .lock()
            .expect("stirling table poisoned")
            .entry(key)
            .or_insert(p)
            .clone()
    }

    fn compute_poly(&self, k: &MultiIndex, ell: u32) -> Polynomial {
        let n = k.dim();
        let nvars = n + 1;
        let mut terms = Vec::new();
        if k.degree() <= ell {
            let ell_fact = factorial(ell);
            for i in degree_window(n, ell).iter().filter(|i| k.divides(i)) {
                let rest = ell - i.degree();
                let stirling: BigInt = (0..n).map(|j| self.number(i.get(j), k.get(j))).product();
                if stirling.is_zero() {
                    continue;
                }
                let multinomial = &ell_fact / (i.factorial() * factorial(rest));
                let mut exps = Vec::with_capacity(nvars);
                exps.push(rest);
                exps.extend_from_slice(i.exps());
                terms.push((exps, BigRational::from_integer(multinomial * stirling)));
            }
        }
        Polynomial::from_terms(nvars, terms).expect("exponent vectors have n + 1 slots")
    }
}

fn global() -> &'static StirlingTable {
    static TABLE: OnceLock<StirlingTable> = OnceLock::new();
    TABLE.get_or_init(StirlingTable::new)
}

/// Stirling number of the second kind `S(n, k)`.
pub fn stirling_number(n: u32, k: u32) -> BigInt {
    global().number(n, k)
}

/// Stirling polynomial `S_k^{(ℓ)}` in the variables `x0, …, xn`, by the closed formula.
pub fn stirling_poly(k: &MultiIndex, ell: u32) -> Polynomial {
    global().poly(k, ell)
}

/// Truncated series in `t` with polynomial coefficients.
fn series_mul(a: &[Polynomial], b: &[Polynomial], len: usize) -> Vec<Polynomial> {
    let nvars = a[0].nvars();
    (0..len)
        .map(|d| {
            (0..=d).fold(Polynomial::zero(nvars), |acc, i| {
                if a[i].is_zero() || b[d - i].is_zero() {
                    acc
                } else {
                    &acc + &(&a[i] * &b[d - i])
                }
            })
        })
        .collect()
}

/// `e^{x t}` truncated after `t^{len−1}`, optionally minus the constant 1.
fn exp_series(x: &Polynomial, len: usize, minus_one: bool) -> Vec<Polynomial> {
    (0..len)
        .map(|m| {
            if m == 0 {
                if minus_one {
                    Polynomial::zero(x.nvars())
                } else {
                    Polynomial::one(x.nvars())
                }
            } else {
                x.pow(m as u32).scale(&BigRational::new(BigInt::one(), factorial(m as u32)))
            }
        })
        .collect()
}

/// `S_k^{(ℓ)}` extracted from its exponential generating function
/// `(1/k!) e^{x0 t} Π_j (e^{xj t} − 1)^{kj}`; an independent route to [`stirling_poly`].
pub fn stirling_poly_egf(k: &MultiIndex, ell: u32) -> Polynomial {
    let nvars = k.dim() + 1;
    let len = ell as usize + 1;
    let mut acc = exp_series(&Polynomial::var(nvars, 0), len, false);
    for j in 0..k.dim() {
        let factor = exp_series(&Polynomial::var(nvars, j + 1), len, true);
        for _ in 0..k.get(j) {
            acc = series_mul(&acc, &factor, len);
        }
    }
    acc[ell as usize].scale(&BigRational::new(factorial(ell), k.factorial()))
}

/// `A_k = x0 + k1 x1 + … + kn xn`.
pub fn linear_form(k: &MultiIndex) -> Polynomial {
    let nvars = k.dim() + 1;
    let mut exps0 = vec![0; nvars];
    exps0[0] = 1;
    let terms = std::iter::once((exps0, BigRational::one())).chain((0..k.dim()).map(|j| {
        let mut e = vec![0; nvars];
        e[j + 1] = 1;
        (e, BigRational::from_integer(k.get(j).into()))
    }));
    Polynomial::from_terms(nvars, terms).expect("exponent vectors have n + 1 slots")
}

/// `|R| × (ℓ+1)` matrix with entries `k! S_k^{(j)}`.
pub fn build_stirling_matrix(r: &PointSet, ell: u32) -> ExactMatrix<Polynomial> {
    let pts = r.points();
    let weights: Vec<BigInt> = pts.iter().map(MultiIndex::factorial).collect();
    ExactMatrix::from_fn(Axis::Points(r.clone()), Axis::Range(ell as usize + 1), |i, j| {
        stirling_poly(&pts[i], j as u32).scale_int(&weights[i])
    })
}

/// `|R| × (ℓ+1)` matrix with entries `A_k^j`.
pub fn build_vandermonde_matrix(r: &PointSet, ell: u32) -> ExactMatrix<Polynomial> {
    let pts = r.points();
    let forms: Vec<Polynomial> = pts.iter().map(linear_form).collect();
    ExactMatrix::from_fn(Axis::Points(r.clone()), Axis::Range(ell as usize + 1), |i, j| {
        forms[i].pow(j as u32)
    })
}

/// Whether `L_R · 𝒮_{R,ℓ} = V_{R,ℓ}` holds exactly.
pub fn verify_decomposition(r: &PointSet, ell: u32) -> bool {
    let nvars = r.dim() + 1;
    let l = to_polynomial_matrix(&build_l(r), nvars);
    match l.mul(&build_stirling_matrix(r, ell)) {
        Ok(lhs) => lhs == build_vandermonde_matrix(r, ell),
        Err(_) => false,
    }
}

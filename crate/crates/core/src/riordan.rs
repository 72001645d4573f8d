//! The multivariate Riordan group acting on truncated power series, and its
//! matrix representation on finite windows of multi-indices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::matrix::{invert_rows, Axis, ExactMatrix};
use crate::mindex::{multi_binom_unchecked, MultiIndex};
use crate::pascal::{build_s, build_u};
use crate::pointset::{degree_window, PointSet};
use crate::series::{jacobian_at_origin, ts_comp_inverse, ts_compose, PowerCache, TruncatedSeries};

/// A pair `(G, X)`: a unit series and a set of variables, all of one shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanBasis {
    g: TruncatedSeries,
    x: Vec<TruncatedSeries>,
}

impl RiordanBasis {
    pub fn new(g: TruncatedSeries, x: Vec<TruncatedSeries>) -> Result<Self> {
        check_dim(g.nvars(), x.len())?;
        for xi in &x {
            if xi.nvars() != g.nvars() || xi.cap() != g.cap() {
                return Err(Error::ShapeMismatch(format!(
                    "basis components must share {} variables and cap {}",
                    g.nvars(),
                    g.cap()
                )));
            }
            if !xi.constant_term().is_zero() {
                return Err(Error::NonzeroConstantTerm);
            }
        }
        if g.constant_term().is_zero() {
            return Err(Error::NonUnit);
        }
        invert_rows(jacobian_at_origin(&x)).map_err(|_| Error::SingularJacobian)?;
        Ok(RiordanBasis { g, x })
    }

    /// The group identity `(1, Z)`.
    pub fn identity(nvars: usize, cap: u32) -> Self {
        RiordanBasis {
            g: TruncatedSeries::one(nvars, cap),
            x: (1..=nvars).map(|i| TruncatedSeries::z(nvars, cap, i)).collect(),
        }
    }

    /// `(1/Π(1 − p z_j), z_j/(1 − p z_j))`, whose matrix is the `p`-th power of `L`.
    pub fn pascal(nvars: usize, cap: u32, p: i64) -> Self {
        let geometric = |j: usize| {
            let pz = TruncatedSeries::z(nvars, cap, j).scale(&BigRational::from_integer(p.into()));
            TruncatedSeries::one(nvars, cap)
                .sub(&pz)
                .and_then(|d| d.recip())
                .expect("1 − p·z is a unit")
        };
        let geos: Vec<_> = (1..=nvars).map(geometric).collect();
        let g = geos
            .iter()
            .fold(TruncatedSeries::one(nvars, cap), |acc, s| acc.mul(s).expect("same shape"));
        let x = geos
            .iter()
            .enumerate()
            .map(|(j, s)| TruncatedSeries::z(nvars, cap, j + 1).mul(s).expect("same shape"))
            .collect();
        RiordanBasis { g, x }
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn x(&self) -> &[TruncatedSeries] {
        &self.x
    }

    pub fn nvars(&self) -> usize {
        self.g.nvars()
    }

    pub fn cap(&self) -> u32 {
        self.g.cap()
    }
}

/// `(G, X) ⋆ (H, Y) = (G·H(X), Y(X))`.
pub fn riordan_product(a: &RiordanBasis, b: &RiordanBasis) -> Result<RiordanBasis> {
    if a.nvars() != b.nvars() || a.cap() != b.cap() {
        return Err(Error::ShapeMismatch(format!(
            "bases of shape ({}, {}) and ({}, {})",
            a.nvars(),
            a.cap(),
            b.nvars(),
            b.cap()
        )));
    }
    let g = a.g.mul(&ts_compose(&b.g, &a.x)?)?;
    let x = b.x.iter().map(|y| ts_compose(y, &a.x)).collect::<Result<_>>()?;
    Ok(RiordanBasis { g, x })
}

/// `(1/G(X̄), X̄)` where `X̄` is the compositional inverse of `X`.
pub fn riordan_inverse(a: &RiordanBasis) -> Result<RiordanBasis> {
    let xbar = ts_comp_inverse(&a.x)?;
    let g = ts_compose(&a.g, &xbar)?.recip()?;
    Ok(RiordanBasis { g, x: xbar })
}

/// Entry `(i, j)` is the coefficient of `Z^i` in `G·X^j`, for `i, j` in `window`.
pub fn riordan_matrix(basis: &RiordanBasis, window: &PointSet) -> Result<ExactMatrix<BigRational>> {
    check_dim(basis.nvars(), window.dim())?;
    let top = window.max_degree();
    if !window.is_empty() && top > basis.cap() {
        return Err(Error::WindowExceedsCap {
            degree: top,
            cap: basis.cap(),
        });
    }
    let mut cache = PowerCache::new(&basis.x);
    let columns: Vec<TruncatedSeries> = window
        .iter()
        .map(|j| basis.g.mul(&cache.power(j)))
        .collect::<Result<_>>()?;
    let axis = Axis::Points(window.clone());
    Ok(ExactMatrix::from_fn(axis.clone(), axis, |i, j| {
        columns[j].coeff(&window.points()[i])
    }))
}

/// Integer view of a Riordan matrix, when every entry is integral.
pub fn riordan_matrix_integer(basis: &RiordanBasis, window: &PointSet) -> Result<ExactMatrix<BigInt>> {
    riordan_matrix(basis, window)?.to_integer()
}

/// Outcome of comparing one coefficient in a truncated lemma check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaMismatch {
    pub lemma: &'static str,
    pub row: MultiIndex,
    pub coeff: MultiIndex,
    pub expected: BigRational,
    pub actual: BigRational,
}

/// Which infinite-matrix row identity to check on a window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowLemma {
    /// Row `k` of `U` against `z^k · Π(1 − z_j)^{−(k_j+1)}`.
    UpperOnMonomials,
    /// Row `k` of `U` on divided powers against `(z^k/k!)·e^{z1+⋯+zn}`.
    UpperOnDividedPowers,
    /// Row `k` of `S` against `Π(1 − z_j)^{−(k_j+1)}`.
    SymmetricOnMonomials,
}

impl RowLemma {
    pub const ALL: [RowLemma; 3] = [
        RowLemma::UpperOnMonomials,
        RowLemma::UpperOnDividedPowers,
        RowLemma::SymmetricOnMonomials,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RowLemma::UpperOnMonomials => "U on monomials",
            RowLemma::UpperOnDividedPowers => "U on divided powers",
            RowLemma::SymmetricOnMonomials => "S on monomials",
        }
    }
}

fn inv_one_minus_pow(n: usize, cap: u32, k: &MultiIndex) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(n, cap);
    for j in 0..n {
        let base = TruncatedSeries::one(n, cap)
            .sub(&TruncatedSeries::z(n, cap, j + 1))
            .expect("same shape")
            .pow(k.get(j) + 1)
            .recip()
            .expect("unit");
        out = out.mul(&base).expect("same shape");
    }
    out
}

fn exp_of_sum(n: usize, cap: u32) -> TruncatedSeries {
    let terms = degree_window(n, cap)
        .iter()
        .map(|m| (m.clone(), BigRational::new(BigInt::one(), m.factorial())))
        .collect::<Vec<_>>();
    TruncatedSeries::from_terms(n, cap, terms).expect("matching dimension")
}

/// Checks a row identity of `U` or `S` on `degree_window(n, window)`, comparing
/// every coefficient up to the window degree.
///
/// Rows of a full degree window are complete up to its top degree, so the
/// comparison is exact without dropping a guard band of high-degree terms.
pub fn check_row_lemma(lemma: RowLemma, n: usize, window: u32) -> Vec<LemmaMismatch> {
    let w = degree_window(n, window);
    let matrix = match lemma {
        RowLemma::SymmetricOnMonomials => build_s(&w),
        _ => build_u(&w),
    };
    let exp = exp_of_sum(n, window);
    let mut bad = Vec::new();
    for (r, k) in w.iter().enumerate() {
        let (expected, actual) = match lemma {
            RowLemma::UpperOnMonomials | RowLemma::SymmetricOnMonomials => {
                let mut target = inv_one_minus_pow(n, window, k);
                if lemma == RowLemma::UpperOnMonomials {
                    target = TruncatedSeries::monomial(window, k.clone(), BigRational::one())
                        .mul(&target)
                        .expect("same shape");
                }
                let row = w
                    .iter()
                    .zip(matrix.row(r))
                    .map(|(c, v)| (c.clone(), BigRational::from_integer(v.clone())));
                (target, TruncatedSeries::from_terms(n, window, row).expect("matching dimension"))
            }
            RowLemma::UpperOnDividedPowers => {
                let scale = BigRational::new(BigInt::one(), k.factorial());
                let target = TruncatedSeries::monomial(window, k.clone(), scale)
                    .mul(&exp)
                    .expect("same shape");
                let row = w
                    .iter()
                    .map(|c| (c.clone(), BigRational::new(multi_binom_unchecked(c, k), c.factorial())));
                (target, TruncatedSeries::from_terms(n, window, row).expect("matching dimension"))
            }
        };
        for c in w.iter() {
            let (e, a) = (expected.coeff(c), actual.coeff(c));
            if e != a {
                bad.push(LemmaMismatch {
                    lemma: lemma.name(),
                    row: k.clone(),
                    coeff: c.clone(),
                    expected: e,
                    actual: a,
                });
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_rational_expr;
    use crate::pascal::build_l_power;

    fn basis(g: &str, xs: &[&str], n: usize, cap: u32) -> RiordanBasis {
        let g = parse_rational_expr(g, n, cap).unwrap();
        let x = xs.iter().map(|s| parse_rational_expr(s, n, cap).unwrap()).collect();
        RiordanBasis::new(g, x).unwrap()
    }

    fn int_rows(m: &ExactMatrix<BigRational>) -> Vec<Vec<i64>> {
        m.to_integer()
            .unwrap()
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|v| i64::try_from(v).unwrap()).collect())
            .collect()
    }

    #[test]
    fn two_variable_window() {
        let b = basis("1/((1-z1)*(1-z2))", &["z1/(1-z1)", "z2/(1-z2)"], 2, 2);
        let m = riordan_matrix(&b, &degree_window(2, 2)).unwrap();
        assert_eq!(
            int_rows(&m),
            vec![
                vec![1, 0, 0, 0, 0, 0],
                vec![1, 1, 0, 0, 0, 0],
                vec![1, 0, 1, 0, 0, 0],
                vec![1, 2, 0, 1, 0, 0],
                vec![1, 1, 1, 0, 1, 0],
                vec![1, 0, 2, 0, 0, 1],
            ]
        );
        assert_eq!(b, RiordanBasis::pascal(2, 2, 1));
    }

    #[test]
    fn matrix_examples() {
        let id = RiordanBasis::identity(2, 3);
        let m = riordan_matrix(&id, &degree_window(2, 3)).unwrap();
        assert!(m.is_lower_triangular() && m.is_upper_triangular());
        assert!((0..m.nrows()).all(|i| m.get(i, i).is_one()));

        let b = basis("1/(1-z1)", &["z1/(1-z1)"], 1, 4);
        let pascal5 = vec![
            vec![1, 0, 0, 0, 0],
            vec![1, 1, 0, 0, 0],
            vec![1, 2, 1, 0, 0],
            vec![1, 3, 3, 1, 0],
            vec![1, 4, 6, 4, 1],
        ];
        assert_eq!(int_rows(&riordan_matrix(&b, &degree_window(1, 4)).unwrap()), pascal5);

        assert_eq!(
            riordan_matrix(&b, &degree_window(1, 5)),
            Err(Error::WindowExceedsCap { degree: 5, cap: 4 })
        );
    }

    #[test]
    fn pascal_family_matches_powers() {
        for n in 1..=3 {
            let cap = if n == 3 { 4 } else { 5 };
            let w = degree_window(n, cap);
            for p in [-3i64, -2, -1, 1, 2, 3] {
                let m = riordan_matrix_integer(&RiordanBasis::pascal(n, cap, p), &w).unwrap();
                assert_eq!(m, build_l_power(&w, p).unwrap(), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn group_laws() {
        let a = basis("(1+3*z1)/(1-z2)", &["2*z1 + z1*z2", "z2 - z1^2"], 2, 4);
        let id = RiordanBasis::identity(2, 4);
        assert_eq!(riordan_product(&a, &id).unwrap(), a);
        assert_eq!(riordan_product(&id, &a).unwrap(), a);
        let inv = riordan_inverse(&a).unwrap();
        assert_eq!(riordan_product(&a, &inv).unwrap(), id);
        assert_eq!(riordan_product(&inv, &a).unwrap(), id);
        assert_eq!(riordan_inverse(&id).unwrap(), id);

        let p1 = RiordanBasis::pascal(2, 5, 1);
        assert_eq!(riordan_product(&p1, &p1).unwrap(), RiordanBasis::pascal(2, 5, 2));
        assert_eq!(riordan_inverse(&p1).unwrap(), RiordanBasis::pascal(2, 5, -1));
        let expected = basis("1/((1+z1)*(1+z2))", &["z1/(1+z1)", "z2/(1+z2)"], 2, 5);
        assert_eq!(riordan_inverse(&p1).unwrap(), expected);

        let uni = basis("1/(1-z1)", &["z1/(1-z1)"], 1, 6);
        assert_eq!(riordan_inverse(&uni).unwrap(), basis("1/(1+z1)", &["z1/(1+z1)"], 1, 6));
    }

    #[test]
    fn representation_is_multiplicative() {
        let a = basis("(1+3*z1)/(1-z2)", &["2*z1 + z1*z2", "z2 - z1^2"], 2, 4);
        let b = basis("1 - z1 + 2*z2^2", &["z1 + z2", "z2/(1+z1)"], 2, 4);
        let w = degree_window(2, 4);
        let ab = riordan_matrix(&riordan_product(&a, &b).unwrap(), &w).unwrap();
        let ma = riordan_matrix(&a, &w).unwrap();
        let mb = riordan_matrix(&b, &w).unwrap();
        assert_eq!(ab, ma.mul(&mb).unwrap());
        let inv = riordan_matrix(&riordan_inverse(&a).unwrap(), &w).unwrap();
        assert_eq!(inv, ma.inverse().unwrap());
    }

    #[test]
    fn basis_validation() {
        let z = |i| TruncatedSeries::z(2, 3, i);
        let one = TruncatedSeries::one(2, 3);
        assert_eq!(RiordanBasis::new(z(1), vec![z(1), z(2)]), Err(Error::NonUnit));
        assert_eq!(
            RiordanBasis::new(one.clone(), vec![one.clone(), z(2)]),
            Err(Error::NonzeroConstantTerm)
        );
        let s = z(1).add(&z(2)).unwrap();
        assert_eq!(RiordanBasis::new(one.clone(), vec![s.clone(), s]), Err(Error::SingularJacobian));
        assert!(RiordanBasis::new(one, vec![z(1)]).is_err());
    }

    #[test]
    fn row_lemmas_hold() {
        for lemma in RowLemma::ALL {
            for n in 1..=2 {
                for d in 0..=6 {
                    assert!(check_row_lemma(lemma, n, d).is_empty(), "{} n={n} D={d}", lemma.name());
                }
            }
        }
    }
}

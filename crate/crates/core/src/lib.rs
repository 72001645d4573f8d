//! Exact multivariate Pascal matrices over downward-closed multi-index sets,
//! Stirling polynomials of the second kind and the multivariate Riordan group
//! on truncated power series.

pub mod checks;
pub mod cli;
pub mod error;
pub mod expr;
pub mod io;
pub mod matrix;
pub mod mindex;
pub mod pascal;
pub mod pointset;
pub mod poly;
pub mod random;
pub mod riordan;
pub mod scalar;
pub mod series;
pub mod stirling;

pub use error::{Error, Result};
pub use matrix::{Axis, ExactMatrix};
pub use mindex::{grevlex_cmp, multi_binom, partial_leq, MultiIndex};
pub use pointset::{
    check_monomial_condition, degree_window, minimal_generators, standard_monomials, MonomialIdeal, PointSet,
};
pub use poly::Polynomial;
pub use riordan::{riordan_inverse, riordan_matrix, riordan_product, RiordanBasis};
pub use scalar::Scalar;
pub use series::{ts_comp_inverse, ts_compose, TruncatedSeries};

//! Verification suites: each runs a family of exact identity checks and tallies
//! the outcome into a report, keeping the first counterexample it meets.

use std::fmt::Display;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{Axis, ExactMatrix};
use crate::pascal::{
    binomial_transform, build_a, build_l, build_l_power, build_s, build_sign_diagonal, build_u,
    matrix_exponential_nilpotent, monomial_vector, shifted_monomial_vector, to_polynomial_matrix,
};
use crate::pointset::{degree_window, PointSet};
use crate::poly::Polynomial;
use crate::random::{random_basis, random_integer_sequence, random_polynomial_sequence};
use crate::riordan::{
    check_row_lemma, riordan_inverse, riordan_matrix, riordan_matrix_integer, riordan_product, RiordanBasis,
    RowLemma,
};
use crate::scalar::Scalar;
use crate::series::{ts_comp_inverse, TruncatedSeries};
use crate::stirling::{linear_form, stirling_poly, verify_decomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Lu,
    Inverse,
    Powers,
    Exp,
    Transform,
    Decomp,
    Riordan,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Lu,
        Suite::Inverse,
        Suite::Powers,
        Suite::Exp,
        Suite::Transform,
        Suite::Decomp,
        Suite::Riordan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lu => "lu",
            Suite::Inverse => "inverse",
            Suite::Powers => "powers",
            Suite::Exp => "exp",
            Suite::Transform => "transform",
            Suite::Decomp => "decomp",
            Suite::Riordan => "riordan",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            checks: 0,
            failures: 0,
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records one check; `detail` is only built for the first failure.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(detail());
            }
        }
    }

    /// Records `lhs = rhs` for matrices named in `check`, reporting the first differing entry.
    pub fn record_matrix<T: Scalar>(&mut self, check: &str, r: &PointSet, lhs: &ExactMatrix<T>, rhs: &ExactMatrix<T>) {
        let diff = lhs.first_difference(rhs);
        self.record(diff.is_none(), || {
            let (i, j) = diff.expect("a difference");
            json!({
                "check": check,
                "set": r,
                "row": lhs.row_axis().label(i),
                "col": lhs.col_axis().label(j),
                "lhs": lhs.get(i, j).to_string(),
                "rhs": rhs.get(i, j).to_string(),
            })
        });
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures += other.failures;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

fn scalar_detail(check: &str, r: &PointSet, expected: impl Display, actual: impl Display) -> Value {
    json!({
        "check": check,
        "set": r,
        "expected": expected.to_string(),
        "actual": actual.to_string(),
    })
}

fn identity_on(r: &PointSet) -> ExactMatrix<BigInt> {
    ExactMatrix::identity(Axis::Points(r.clone()), &BigInt::one())
}

/// `S = L·U` and unit determinants.
pub fn suite_lu(sets: &[PointSet]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("lu");
    for r in sets {
        let (l, u, s) = (build_l(r), build_u(r), build_s(r));
        rep.record_matrix("S = L*U", r, &s, &l.mul(&u)?);
        for (name, m) in [("det(L) = 1", &l), ("det(U) = 1", &u), ("det(S) = 1", &s)] {
            let d = m.determinant()?;
            rep.record(d.is_one(), || scalar_detail(name, r, 1, &d));
        }
    }
    Ok(rep)
}

/// `L⁻¹ = DLD`, `U⁻¹ = DUD` and `S⁻¹ = D·U·L·D`, each checked as a product equal to the identity.
pub fn suite_inverse(sets: &[PointSet]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("inverse");
    for r in sets {
        let (l, u, s, d) = (build_l(r), build_u(r), build_s(r), build_sign_diagonal(r));
        let id = identity_on(r);
        let l_inv = d.mul(&l)?.mul(&d)?;
        let u_inv = d.mul(&u)?.mul(&d)?;
        let s_inv = d.mul(&u)?.mul(&l)?.mul(&d)?;
        rep.record_matrix("L * (D L D) = I", r, &l.mul(&l_inv)?, &id);
        rep.record_matrix("U * (D U D) = I", r, &u.mul(&u_inv)?, &id);
        rep.record_matrix("S * (D U L D) = I", r, &s.mul(&s_inv)?, &id);
    }
    Ok(rep)
}

fn require_closed(sets: &[PointSet]) -> Result<()> {
    if sets.iter().all(PointSet::satisfies_monomial_condition) {
        Ok(())
    } else {
        Err(Error::MonomialConditionViolated)
    }
}

/// Power laws of `L` for each `p` in `powers` against each `q` in `others`, plus the
/// symbolic action on monomials.
pub fn suite_powers(sets: &[PointSet], powers: &[i64], others: &[i64]) -> Result<SuiteReport> {
    require_closed(sets)?;
    let mut rep = SuiteReport::new("powers");
    for r in sets {
        let l = build_l(r);
        let l_inv = {
            let d = build_sign_diagonal(r);
            d.mul(&l)?.mul(&d)?
        };
        for &p in powers {
            let lp = build_l_power(r, p)?;
            let repeated = if p >= 0 { l.pow(p as u32)? } else { l_inv.pow(p.unsigned_abs() as u32)? };
            rep.record_matrix(&format!("L^{p} closed form = repeated product"), r, &lp, &repeated);

            let pb = BigInt::from(p);
            let bad = (0..lp.nrows())
                .flat_map(|i| (0..lp.ncols()).map(move |j| (i, j)))
                .find(|&(i, j)| {
                    let e = lp.get(i, j);
                    i != j && !e.is_zero() && (p == 0 || !(e % &pb).is_zero())
                });
            rep.record(bad.is_none(), || {
                let (i, j) = bad.expect("a bad entry");
                json!({
                    "check": format!("{p} divides off-diagonal entries of L^{p}"),
                    "set": r,
                    "row": lp.row_axis().label(i),
                    "col": lp.col_axis().label(j),
                    "actual": lp.get(i, j).to_string(),
                })
            });

            for &q in others {
                let lhs = lp.mul(&build_l_power(r, q)?)?;
                rep.record_matrix(&format!("L^{p} * L^{q} = L^{}", p + q), r, &lhs, &build_l_power(r, p + q)?);
            }
            rep.merge(check_action(r, p)?);
        }
    }
    Ok(rep)
}

/// `L^p` applied to `(x^k)` gives `((p1 + x)^k)` as polynomials.
pub fn check_action(r: &PointSet, p: i64) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("action");
    let nvars = r.dim() + 1;
    let lp = to_polynomial_matrix(&build_l_power(r, p)?, nvars);
    let got = lp.mul_vec(&monomial_vector(r))?;
    let want = shifted_monomial_vector(r, p);
    let bad = got.iter().zip(&want).position(|(a, b)| a != b);
    rep.record(bad.is_none(), || {
        let i = bad.expect("a mismatch");
        json!({
            "check": format!("L^{p} * x^k = ({p} + x)^k"),
            "set": r,
            "row": r.points()[i].to_string(),
            "expected": want[i].to_string(),
            "actual": got[i].to_string(),
        })
    });
    Ok(rep)
}

/// `exp(pA) = L^p` and nilpotency of `A` past the top degree.
pub fn suite_exp(sets: &[PointSet], powers: &[i64]) -> Result<SuiteReport> {
    require_closed(sets)?;
    let mut rep = SuiteReport::new("exp");
    for r in sets {
        let a = build_a(r);
        let top = a.pow(r.max_degree() + 1)?;
        rep.record(top.is_zero(), || {
            json!({"check": "A^(max|k|+1) = 0", "set": r})
        });
        for &p in powers {
            let e = matrix_exponential_nilpotent(&a, p)?;
            rep.record_matrix(&format!("exp({p} A) = L^{p}"), r, &e, &build_l_power(r, p)?);
        }
    }
    Ok(rep)
}

/// Round trips of the binomial transform on random integer and polynomial
/// sequences, and the two closed-form transforms on monomials and Stirling rows.
pub fn suite_transform(sets: &[PointSet], ells: &[u32], rng: &mut impl Rng) -> Result<SuiteReport> {
    require_closed(sets)?;
    let mut rep = SuiteReport::new("transform");
    for r in sets {
        let ints = random_integer_sequence(rng, r);
        let there = binomial_transform(r, &ints, false)?;
        let back = binomial_transform(r, &there, true)?;
        rep.record(back == ints, || json!({"check": "inverse(forward(a)) = a on integers", "set": r}));
        let back = binomial_transform(r, &binomial_transform(r, &ints, true)?, false)?;
        rep.record(back == ints, || json!({"check": "forward(inverse(a)) = a on integers", "set": r}));

        let polys = random_polynomial_sequence(rng, r);
        let back = binomial_transform(r, &binomial_transform(r, &polys, false)?, true)?;
        rep.record(back == polys, || json!({"check": "inverse(forward(a)) = a on polynomials", "set": r}));

        let monos = r.iter().cloned().zip(monomial_vector(r)).collect();
        let shifted: Vec<Polynomial> = shifted_monomial_vector(r, 1);
        let got = binomial_transform(r, &monos, false)?;
        rep.record(got.values().eq(shifted.iter()), || {
            json!({"check": "forward(x^k) = (1 + x)^k", "set": r})
        });

        for &ell in ells {
            let seq = r
                .iter()
                .map(|k| (k.clone(), stirling_poly(k, ell).scale_int(&k.factorial())))
                .collect();
            let got = binomial_transform(r, &seq, false)?;
            let ok = r.iter().all(|k| got[k] == linear_form(k).pow(ell));
            rep.record(ok, || {
                json!({"check": format!("forward(k! S_k^({ell})) = A_k^{ell}"), "set": r})
            });
        }
    }
    Ok(rep)
}

/// `L · 𝒮_{R,ℓ} = V_{R,ℓ}` for each `ℓ`.
pub fn suite_decomp(sets: &[PointSet], ells: &[u32]) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("decomp");
    for r in sets {
        for &ell in ells {
            rep.record(verify_decomposition(r, ell), || {
                json!({"check": format!("L * Stirling(ell={ell}) = Vandermonde(ell={ell})"), "set": r})
            });
        }
    }
    Ok(rep)
}

/// Group and representation laws on degree windows.
pub fn suite_riordan(n: usize, degree: u32, powers: &[i64], random: usize, rng: &mut impl Rng) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("riordan");
    let w = degree_window(n, degree);
    for &p in powers {
        let m = riordan_matrix_integer(&RiordanBasis::pascal(n, degree, p), &w)?;
        rep.record_matrix(&format!("Riordan matrix of the p={p} Pascal basis = L^{p}"), &w, &m, &build_l_power(&w, p)?);
    }

    let mut bases: Vec<RiordanBasis> = powers.iter().map(|&p| RiordanBasis::pascal(n, degree, p)).collect();
    bases.extend((0..random).map(|_| random_basis(rng, n, degree)));
    for pair in bases.windows(2) {
        rep.merge(check_homomorphism(&pair[0], &pair[1], &w)?);
    }
    if bases.len() == 1 {
        rep.merge(check_homomorphism(&bases[0], &bases[0], &w)?);
    }

    let xs: Vec<TruncatedSeries> = RiordanBasis::pascal(n, degree, 1).x().to_vec();
    let expected = RiordanBasis::pascal(n, degree, -1);
    let inv = ts_comp_inverse(&xs)?;
    rep.record(inv == expected.x(), || {
        json!({"check": "compositional inverse of z/(1-z) = z/(1+z)", "n": n, "degree": degree})
    });

    for lemma in RowLemma::ALL {
        let bad = check_row_lemma(lemma, n, degree);
        rep.record(bad.is_empty(), || {
            let m = &bad[0];
            json!({
                "check": m.lemma,
                "n": n,
                "degree": degree,
                "row": m.row.to_string(),
                "coeff": m.coeff.to_string(),
                "expected": m.expected.to_string(),
                "actual": m.actual.to_string(),
            })
        });
    }
    Ok(rep)
}

/// `M(a ⋆ b) = M(a)·M(b)` and `M(a⁻¹) = M(a)⁻¹` on a window.
pub fn check_homomorphism(a: &RiordanBasis, b: &RiordanBasis, w: &PointSet) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("riordan");
    let ma = riordan_matrix(a, w)?;
    let product = riordan_matrix(&riordan_product(a, b)?, w)?;
    rep.record_matrix("M(a * b) = M(a) M(b)", w, &product, &ma.mul(&riordan_matrix(b, w)?)?);
    let inv = riordan_matrix(&riordan_inverse(a)?, w)?;
    rep.record_matrix("M(inverse(a)) = M(a)^-1", w, &inv, &ma.inverse()?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_downset, rng};

    fn set(points: &[[u32; 2]]) -> PointSet {
        PointSet::from_exps(&points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn lu_passes_and_fails_where_expected() {
        let good = suite_lu(&[set(&[[0, 0], [0, 1], [1, 0], [0, 2]])]).unwrap();
        assert!(good.passed());
        assert_eq!(good.checks, 4);
        let bad = suite_lu(&[set(&[[0, 0], [1, 0], [0, 2]])]).unwrap();
        assert!(!bad.passed());
        let ce = bad.counterexample.unwrap();
        assert_eq!(ce["check"], "S = L*U");
    }

    #[test]
    fn sign_conjugate_of_s_is_not_its_inverse() {
        let r = PointSet::from_exps(&[vec![0], vec![1]]).unwrap();
        let (s, d) = (build_s(&r), build_sign_diagonal(&r));
        let dsd = d.mul(&s).unwrap().mul(&d).unwrap();
        assert_ne!(s.mul(&dsd).unwrap(), identity_on(&r));
        assert!(suite_inverse(&[r]).unwrap().passed());
    }

    #[test]
    fn all_suites_pass_on_random_sets() {
        let mut g = rng(5);
        let sets: Vec<_> = (0..6).map(|i| random_downset(&mut g, 1 + i % 3, 15)).collect();
        let ps = [-2, -1, 1, 2];
        assert!(suite_lu(&sets).unwrap().passed());
        assert!(suite_inverse(&sets).unwrap().passed());
        assert!(suite_powers(&sets, &ps, &ps).unwrap().passed());
        assert!(suite_exp(&sets, &ps).unwrap().passed());
        assert!(suite_transform(&sets, &[2], &mut g).unwrap().passed());
        assert!(suite_decomp(&sets, &[3]).unwrap().passed());
        assert!(suite_riordan(2, 3, &[1], 2, &mut g).unwrap().passed());
    }

    #[test]
    fn closed_sets_required() {
        let bad = set(&[[0, 0], [1, 1]]);
        assert_eq!(suite_powers(std::slice::from_ref(&bad), &[2], &[2]), Err(Error::MonomialConditionViolated));
        assert_eq!(suite_exp(&[bad], &[1]), Err(Error::MonomialConditionViolated));
    }

    #[test]
    fn report_json_shape() {
        let rep = suite_decomp(&[set(&[[0, 0], [0, 1]])], &[1, 2]).unwrap();
        assert_eq!(
            serde_json::to_string(&rep).unwrap(),
            r#"{"suite":"decomp","checks":2,"failures":0}"#
        );
    }
}

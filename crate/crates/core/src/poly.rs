//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Slot 0 is the variable `x0`; the exponents of a multi-index of dimension `n`
//! live in slots `1..=n`, so a polynomial over that ambient ring has `n + 1` variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Result};
use crate::mindex::{binom, MultiIndex};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn from_int(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    /// The variable `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range for {nvars} variables");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(exps, BigRational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: BigRational) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { nvars, terms }
    }

    /// `x1^{k1} ⋯ xn^{kn}` in the ring with `x0`, i.e. `k.dim() + 1` variables.
    pub fn x_pow(k: &MultiIndex) -> Self {
        let mut exps = Vec::with_capacity(k.dim() + 1);
        exps.push(0);
        exps.extend_from_slice(k.exps());
        Self::monomial(exps, BigRational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            check_dim(nvars, exps.len())?;
            p.add_term(exps, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Polynomial {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation at `point` (one value per variable).
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        check_dim(self.nvars, point.len())?;
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow(x.clone(), k as usize);
                }
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Divided derivative `(1/k!) ∂^k` in the variables `x1..xn`; `k` has dimension
    /// `nvars − 1` and leaves `x0` untouched.
    pub fn hasse_derivative(&self, k: &MultiIndex) -> Result<Polynomial> {
        check_dim(self.nvars, k.dim() + 1)?;
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut factor = BigInt::one();
            let mut reduced = e.clone();
            let mut vanishes = false;
            for (j, &kj) in k.exps().iter().enumerate() {
                let ej = e[j + 1];
                if kj > ej {
                    vanishes = true;
                    break;
                }
                factor *= binom(ej, kj);
                reduced[j + 1] = ej - kj;
            }
            if !vanishes {
                out.add_term(reduced, c * BigRational::from_integer(factor));
            }
        }
        Ok(out)
    }

    /// Terms in canonical order: grevlex descending on the full exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&[u32], &BigRational)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|a, b| grevlex_desc(a.0, b.0));
        v
    }
}

fn grevlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    db.cmp(&da).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return if x > y { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    })
}

/// `Π_j base_j^{k_j}`.
pub fn monomial_power(base: &[Polynomial], k: &MultiIndex) -> Result<Polynomial> {
    check_dim(base.len(), k.dim())?;
    let nvars = base[0].nvars();
    let mut acc = Polynomial::one(nvars);
    for (b, &e) in base.iter().zip(k.exps()) {
        check_dim(nvars, b.nvars())?;
        if e > 0 {
            acc = acc.try_mul(&b.pow(e))?;
        }
    }
    Ok(acc)
}

/// The vector `(p + x_1, …, p + x_n)` in the ring with `x0`.
pub fn shifted_variables(n: usize, p: i64) -> Vec<Polynomial> {
    (1..=n)
        .map(|j| &Polynomial::var(n + 1, j) + &Polynomial::from_int(n + 1, p))
        .collect()
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &[u32]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{i}")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    /// Canonical text, e.g. `2*x0*x2 + x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (exps, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let constant = exps.iter().all(|&e| e == 0);
            if constant {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, exps)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({self})", self.nvars)
    }
}

// Operator forms panic on a variable-count mismatch; use the `try_*` methods to get an error.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial variable counts differ")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial variable counts differ")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial variable counts differ")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Scalar for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.nvars)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        // scalar fast path: matrices of constants times polynomial vectors
        if self.terms.len() == 1 && other.nvars == self.nvars {
            if let Some(c) = self.terms.get(&vec![0; self.nvars]) {
                return other.scale(c);
            }
        }
        self * other
    }
    fn neg_ref(&self) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
    fn int_like(&self, v: &BigInt) -> Self {
        Polynomial::from_int(self.nvars, v.clone())
    }
}

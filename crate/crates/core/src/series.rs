//! Multivariate power series over the rationals, truncated by total degree.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{check_dim, Error, Result};
use crate::matrix::invert_rows;
use crate::mindex::{homogeneous, MultiIndex};

/// A power series in `z1, …, zn` kept modulo all terms of total degree above `cap`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    nvars: usize,
    cap: u32,
    coeffs: BTreeMap<MultiIndex, BigRational>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, cap: u32) -> Self {
        assert!(nvars > 0, "series need at least one variable");
        TruncatedSeries {
            nvars,
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, cap: u32, c: BigRational) -> Self {
        let mut s = Self::zero(nvars, cap);
        s.add_term(MultiIndex::zero(nvars), c);
        s
    }

    pub fn one(nvars: usize, cap: u32) -> Self {
        Self::constant(nvars, cap, BigRational::one())
    }

    pub fn from_int(nvars: usize, cap: u32, c: impl Into<BigInt>) -> Self {
        Self::constant(nvars, cap, BigRational::from_integer(c.into()))
    }

    /// The variable `z_i`, `1 ≤ i ≤ nvars`.
    pub fn z(nvars: usize, cap: u32, i: usize) -> Self {
        assert!((1..=nvars).contains(&i), "variable z{i} out of range");
        Self::monomial(cap, MultiIndex::unit(nvars, i - 1), BigRational::one())
    }

    pub fn monomial(cap: u32, k: MultiIndex, c: BigRational) -> Self {
        let mut s = Self::zero(k.dim(), cap);
        s.add_term(k, c);
        s
    }

    /// Builds a series from terms; terms beyond the cap are dropped.
    pub fn from_terms(
        nvars: usize,
        cap: u32,
        terms: impl IntoIterator<Item = (MultiIndex, BigRational)>,
    ) -> Result<Self> {
        let mut s = Self::zero(nvars, cap);
        for (k, c) in terms {
            check_dim(nvars, k.dim())?;
            s.add_term(k, c);
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeff(&self, k: &MultiIndex) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&MultiIndex::zero(self.nvars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, k: MultiIndex, c: BigRational) {
        if c.is_zero() || k.degree() > self.cap {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    fn check_shape(&self, other: &TruncatedSeries) -> Result<()> {
        if self.nvars != other.nvars || self.cap != other.cap {
            return Err(Error::ShapeMismatch(format!(
                "series with {} variables, cap {} vs {} variables, cap {}",
                self.nvars, self.cap, other.nvars, other.cap
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> TruncatedSeries {
        if c.is_zero() {
            return Self::zero(self.nvars, self.cap);
        }
        TruncatedSeries {
            nvars: self.nvars,
            cap: self.cap,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_shape(other)?;
        let mut acc: HashMap<MultiIndex, BigRational> = HashMap::new();
        for (a, ca) in &self.coeffs {
            let room = self.cap - a.degree();
            for (b, cb) in other.coeffs.iter().take_while(|(b, _)| b.degree() <= room) {
                let k = a.checked_add(b)?;
                *acc.entry(k).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Self::from_terms(self.nvars, self.cap, acc)
    }

    pub fn pow(&self, mut e: u32) -> TruncatedSeries {
        let mut acc = Self::one(self.nvars, self.cap);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same shape");
            }
        }
        acc
    }

    /// Multiplicative inverse up to the cap.
    pub fn recip(&self) -> Result<TruncatedSeries> {
        let a0 = self.constant_term();
        if a0.is_zero() {
            return Err(Error::NonUnit);
        }
        let inv0 = a0.recip();
        let mut out: BTreeMap<MultiIndex, BigRational> = BTreeMap::new();
        out.insert(MultiIndex::zero(self.nvars), inv0.clone());
        // b_k = −(1/a_0) Σ_{0 < i ≤ k} a_i b_{k−i}, visiting k in grevlex order
        for d in 1..=self.cap {
            for k in homogeneous(self.nvars, d) {
                let mut sum = BigRational::zero();
                for (i, ai) in self.coeffs.iter().filter(|(i, _)| !i.is_zero() && i.divides(&k)) {
                    let rest = k.checked_sub(i)?.expect("i ≤ k");
                    if let Some(b) = out.get(&rest) {
                        sum += ai * b;
                    }
                }
                if !sum.is_zero() {
                    out.insert(k, -(sum * &inv0));
                }
            }
        }
        Self::from_terms(self.nvars, self.cap, out)
    }

    /// Keeps only terms of degree `≤ cap`, lowering the cap.
    pub fn truncate(&self, cap: u32) -> TruncatedSeries {
        let cap = cap.min(self.cap);
        TruncatedSeries {
            nvars: self.nvars,
            cap,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.degree() <= cap)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same coefficients under a larger or equal cap; only sound when the caller
    /// knows the missing higher terms vanish.
    pub fn with_cap(&self, cap: u32) -> TruncatedSeries {
        let mut s = self.truncate(cap);
        s.cap = cap;
        s
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> TruncatedSeries {
        TruncatedSeries {
            nvars: self.nvars,
            cap: self.cap,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| k.degree() == d)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

/// Memoized monomials `X^a` in a tuple of series with zero constant terms.
pub(crate) struct PowerCache<'a> {
    xs: &'a [TruncatedSeries],
    cache: HashMap<MultiIndex, TruncatedSeries>,
}

impl<'a> PowerCache<'a> {
    pub(crate) fn new(xs: &'a [TruncatedSeries]) -> Self {
        PowerCache {
            xs,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn power(&mut self, a: &MultiIndex) -> TruncatedSeries {
        if let Some(p) = self.cache.get(a) {
            return p.clone();
        }
        let x0 = &self.xs[0];
        let p = match (0..a.dim()).find(|&j| a.get(j) > 0) {
            None => TruncatedSeries::one(x0.nvars, x0.cap),
            Some(j) => {
                let prev = a.predecessor(j).expect("a_j > 0");
                self.power(&prev).mul(&self.xs[j]).expect("same shape")
            }
        };
        self.cache.insert(a.clone(), p.clone());
        p
    }
}

fn check_substitution(n: usize, xs: &[TruncatedSeries]) -> Result<()> {
    check_dim(n, xs.len())?;
    let first = xs.first().ok_or(Error::DimensionMismatch { left: n, right: 0 })?;
    for x in xs {
        first.check_shape(x)?;
        if !x.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
    }
    Ok(())
}

/// `G(X)`: substitutes `z_i ↦ X_i`. The result lives in the ring of the `X_i`.
pub fn ts_compose(g: &TruncatedSeries, xs: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    check_substitution(g.nvars(), xs)?;
    let (nvars, cap) = (xs[0].nvars, xs[0].cap);
    let mut cache = PowerCache::new(xs);
    let mut out = TruncatedSeries::zero(nvars, cap);
    for (a, c) in g.terms().filter(|(a, _)| a.degree() <= cap) {
        out = out.add(&cache.power(a).scale(c))?;
    }
    Ok(out)
}

/// Matrix `J[i][j] = ∂X_j/∂z_i (0)`, the coefficient of `z_i` in `X_j`.
pub fn jacobian_at_origin(xs: &[TruncatedSeries]) -> Vec<Vec<BigRational>> {
    let n = xs.len();
    (0..n)
        .map(|i| {
            xs.iter()
                .map(|x| x.coeff(&MultiIndex::unit(x.nvars, i)))
                .collect()
        })
        .collect()
}

/// Compositional inverse `X̄` with `X(X̄) = X̄(X) = Z` up to the cap, solved one
/// degree at a time against the linear part.
pub fn ts_comp_inverse(xs: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
    let n = xs.first().map(|x| x.nvars).unwrap_or(0);
    check_substitution(n, xs)?;
    let cap = xs[0].cap;
    let jinv = invert_rows(jacobian_at_origin(xs)).map_err(|_| Error::SingularJacobian)?;
    let z: Vec<TruncatedSeries> = (1..=n).map(|i| TruncatedSeries::z(n, cap, i)).collect();
    // apply v ↦ v·J⁻¹ to a tuple of series
    let apply_jinv = |v: &[TruncatedSeries]| -> Result<Vec<TruncatedSeries>> {
        (0..n)
            .map(|i| {
                (0..n).try_fold(TruncatedSeries::zero(n, cap), |acc, m| acc.add(&v[m].scale(&jinv[m][i])))
            })
            .collect()
    };
    let mut y = apply_jinv(&z)?;
    for d in 2..=cap {
        let residual: Vec<TruncatedSeries> = xs
            .iter()
            .zip(&z)
            .map(|(x, zi)| Ok(ts_compose(x, &y)?.sub(zi)?.homogeneous_part(d)))
            .collect::<Result<_>>()?;
        let delta = apply_jinv(&residual)?;
        for (yi, di) in y.iter_mut().zip(&delta) {
            *yi = yi.sub(di)?;
        }
    }
    Ok(y)
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 + O({})", self.cap + 1);
        }
        for (idx, (k, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if k.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let mut first = true;
            for (j, &e) in k.exps().iter().enumerate().filter(|(_, e)| **e > 0) {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "z{}", j + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[n={}, cap={}]({self})", self.nvars, self.cap)
    }
}

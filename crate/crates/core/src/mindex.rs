//! Multi-indices `k ∈ Z^n_{≥0}`, the graded reverse lexicographic order and
//! multidimensional binomial coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};

/// A point of `Z^n_{≥0}`.
///
/// `Ord` compares the dimension first and then uses [`grevlex_cmp`], so
/// ordered collections of same-dimension indices iterate in grevlex order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex {
    exps: Vec<u32>,
}

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Result<Self> {
        if exps.is_empty() {
            return Err(Error::InvalidMultiIndex("dimension must be positive".into()));
        }
        Ok(MultiIndex { exps })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "dimension must be positive");
        MultiIndex { exps: vec![0; n] }
    }

    /// The unit vector `e_i` (0-based `i`).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut k = Self::zero(n);
        k.exps[i] = 1;
        k
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn get(&self, j: usize) -> u32 {
        self.exps[j]
    }

    /// Total degree `|k|`.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// `k! = k_1! ⋯ k_n!`.
    pub fn factorial(&self) -> BigInt {
        self.exps.iter().map(|&e| factorial(e)).product()
    }

    pub fn checked_add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        check_dim(self.dim(), other.dim())?;
        Ok(MultiIndex {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        })
    }

    /// `self − other`, or `None` when `other ≰ self`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Result<Option<MultiIndex>> {
        check_dim(self.dim(), other.dim())?;
        let mut exps = Vec::with_capacity(self.dim());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            match a.checked_sub(*b) {
                Some(d) => exps.push(d),
                None => return Ok(None),
            }
        }
        Ok(Some(MultiIndex { exps }))
    }

    /// `k − e_j` when `k_j > 0`.
    pub fn predecessor(&self, j: usize) -> Option<MultiIndex> {
        if self.exps[j] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[j] -= 1;
        Some(MultiIndex { exps })
    }

    pub fn successor(&self, j: usize) -> MultiIndex {
        let mut exps = self.exps.clone();
        exps[j] += 1;
        MultiIndex { exps }
    }

    pub fn grevlex_cmp(&self, other: &MultiIndex) -> Result<Ordering> {
        grevlex_cmp(self, other)
    }

    pub fn partial_leq(&self, other: &MultiIndex) -> Result<bool> {
        partial_leq(self, other)
    }

    /// Same as [`partial_leq`] for indices already known to share a dimension.
    pub(crate) fn divides(&self, other: &MultiIndex) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| grevlex_unchecked(&self.exps, &other.exps))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Parses the comma-separated form, e.g. `"1,0,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let exps = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidMultiIndex(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(exps)
    }
}

impl TryFrom<Vec<u32>> for MultiIndex {
    type Error = Error;

    fn try_from(exps: Vec<u32>) -> Result<Self> {
        MultiIndex::new(exps)
    }
}

/// Equal-degree ties are broken so that `a < b` iff the right-most nonzero entry of
/// `a − b` is positive; in two variables this enumerates
/// `(0,0), (0,1), (1,0), (0,2), (1,1), (2,0), …`.
fn grevlex_unchecked(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return if x > y { Ordering::Less } else { Ordering::Greater };
            }
        }
        Ordering::Equal
    })
}

/// Graded reverse lexicographic comparison.
pub fn grevlex_cmp(a: &MultiIndex, b: &MultiIndex) -> Result<Ordering> {
    check_dim(a.dim(), b.dim())?;
    Ok(grevlex_unchecked(&a.exps, &b.exps))
}

/// Componentwise `a ≤ b`.
pub fn partial_leq(a: &MultiIndex, b: &MultiIndex) -> Result<bool> {
    check_dim(a.dim(), b.dim())?;
    Ok(a.divides(b))
}

/// Univariate binomial `C(n, k)` by the multiplicative formula; zero when `k > n`.
pub fn binom(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 1..=k {
        // acc = C(n-k+t, t) stays integral at every step
        acc = acc * BigInt::from(n - k + t) / BigInt::from(t);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Multidimensional binomial `C(k, i) = Π_j C(k_j, i_j)`, zero unless `i ≤ k`.
pub fn multi_binom(k: &MultiIndex, i: &MultiIndex) -> Result<BigInt> {
    check_dim(k.dim(), i.dim())?;
    Ok(multi_binom_unchecked(k, i))
}

pub(crate) fn multi_binom_unchecked(k: &MultiIndex, i: &MultiIndex) -> BigInt {
    if !i.divides(k) {
        return BigInt::from(0);
    }
    k.exps
        .iter()
        .zip(&i.exps)
        .map(|(&kj, &ij)| binom(kj, ij))
        .product()
}

/// All multi-indices of dimension `n` and total degree exactly `d`, grevlex ascending.
pub fn homogeneous(n: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(MultiIndex { exps: prefix.clone() });
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    assert!(n > 0, "dimension must be positive");
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

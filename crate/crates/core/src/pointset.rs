//! Finite grevlex-sorted point sets, the monomial condition and standard monomials.

use std::collections::HashMap;

use serde::{Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::mindex::{homogeneous, MultiIndex};

/// A finite set `R ⊆ Z^n_{≥0}`, stored in ascending grevlex order.
#[derive(Clone, Debug)]
pub struct PointSet {
    n: usize,
    points: Vec<MultiIndex>,
    positions: HashMap<MultiIndex, usize>,
    monomial_condition: bool,
}

impl PointSet {
    /// Sorts and deduplicates `points`; every point must have dimension `n`.
    pub fn new(n: usize, mut points: Vec<MultiIndex>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMultiIndex("dimension must be positive".into()));
        }
        for p in &points {
            check_dim(n, p.dim())?;
        }
        points.sort();
        points.dedup();
        let positions = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect::<HashMap<_, _>>();
        let monomial_condition = points
            .iter()
            .all(|k| (0..n).all(|j| k.predecessor(j).is_none_or(|p| positions.contains_key(&p))));
        Ok(PointSet {
            n,
            points,
            positions,
            monomial_condition,
        })
    }

    /// Infers the dimension from the first point.
    pub fn from_points(points: Vec<MultiIndex>) -> Result<Self> {
        let n = points
            .first()
            .map(MultiIndex::dim)
            .ok_or_else(|| Error::InvalidMultiIndex("cannot infer dimension of an empty set".into()))?;
        Self::new(n, points)
    }

    pub fn from_exps(points: &[Vec<u32>]) -> Result<Self> {
        let points = points
            .iter()
            .map(|e| MultiIndex::new(e.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_points(points)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[MultiIndex] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiIndex> {
        self.points.iter()
    }

    pub fn position(&self, k: &MultiIndex) -> Option<usize> {
        self.positions.get(k).copied()
    }

    pub fn contains(&self, k: &MultiIndex) -> bool {
        self.positions.contains_key(k)
    }

    /// Whether the set is downward closed under the componentwise order.
    pub fn satisfies_monomial_condition(&self) -> bool {
        self.monomial_condition
    }

    pub fn max_degree(&self) -> u32 {
        self.points.iter().map(MultiIndex::degree).max().unwrap_or(0)
    }

    pub fn to_exps(&self) -> Vec<Vec<u32>> {
        self.points.iter().map(|p| p.exps().to_vec()).collect()
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.points == other.points
    }
}

impl Eq for PointSet {}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(serializer)
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a MultiIndex;
    type IntoIter = std::slice::Iter<'a, MultiIndex>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<MultiIndex>,
}

impl MonomialIdeal {
    /// Drops non-minimal and duplicate generators; the rest are kept in grevlex order.
    pub fn new(n: usize, generators: Vec<MultiIndex>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMultiIndex("dimension must be positive".into()));
        }
        for g in &generators {
            check_dim(n, g.dim())?;
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let minimal = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        Ok(MonomialIdeal {
            n,
            generators: minimal,
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[MultiIndex] {
        &self.generators
    }

    pub fn contains(&self, k: &MultiIndex) -> bool {
        self.generators.iter().any(|g| g.divides(k))
    }

    /// Exponent of the pure-power generator `x_j^a`, if there is one.
    fn pure_power(&self, j: usize) -> Option<u32> {
        self.generators
            .iter()
            .filter(|g| (0..self.n).all(|i| i == j || g.get(i) == 0))
            .map(|g| g.get(j))
            .min()
    }
}

/// Criterion (i): every `i ≤ k` of every member `k` is a member.
pub fn check_monomial_condition(points: &[MultiIndex]) -> Result<bool> {
    let Some(first) = points.first() else {
        return Ok(true);
    };
    Ok(PointSet::new(first.dim(), points.to_vec())?.satisfies_monomial_condition())
}

/// The standard monomials of `ideal`, optionally restricted to total degree `≤ degree_bound`.
pub fn standard_monomials(ideal: &MonomialIdeal, degree_bound: Option<u32>) -> Result<PointSet> {
    let n = ideal.dim();
    let candidates: Vec<MultiIndex> = match degree_bound {
        Some(bound) => (0..=bound).flat_map(|d| homogeneous(n, d)).collect(),
        None => {
            let mut limits = Vec::with_capacity(n);
            for j in 0..n {
                limits.push(ideal.pure_power(j).ok_or(Error::InfiniteSet { var: j + 1 })?);
            }
            box_points(&limits)
        }
    };
    let points = candidates.into_iter().filter(|k| !ideal.contains(k)).collect();
    PointSet::new(n, points)
}

/// All `k` with `0 ≤ k_j < limits[j]`.
fn box_points(limits: &[u32]) -> Vec<MultiIndex> {
    let mut out = vec![Vec::with_capacity(limits.len())];
    for &lim in limits {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..lim).map(move |e| {
                    let mut v = prefix.clone();
                    v.push(e);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|e| MultiIndex::new(e).expect("nonempty")).collect()
}

/// The minimal generators of the monomial ideal whose standard monomials are `set`.
pub fn minimal_generators(set: &PointSet) -> Result<MonomialIdeal> {
    if !set.satisfies_monomial_condition() {
        return Err(Error::MonomialConditionViolated);
    }
    let n = set.dim();
    if set.is_empty() {
        return MonomialIdeal::new(n, vec![MultiIndex::zero(n)]);
    }
    // a minimal non-member has all of its immediate predecessors in the set
    let mut gens = Vec::new();
    for k in set {
        for j in 0..n {
            let m = k.successor(j);
            if !set.contains(&m) && (0..n).all(|i| m.predecessor(i).is_none_or(|p| set.contains(&p))) {
                gens.push(m);
            }
        }
    }
    MonomialIdeal::new(n, gens)
}

/// All `k ∈ Z^n_{≥0}` with `|k| ≤ degree`.
pub fn degree_window(n: usize, degree: u32) -> PointSet {
    let points = (0..=degree).flat_map(|d| homogeneous(n, d)).collect();
    PointSet::new(n, points).expect("window points share the dimension")
}

//! Seeded generators for randomized checks. Everything is driven by a
//! `ChaCha8Rng`, so a seed reproduces the same cases on every platform.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::mindex::MultiIndex;
use crate::pointset::{degree_window, standard_monomials, MonomialIdeal, PointSet};
use crate::poly::Polynomial;
use crate::riordan::RiordanBasis;
use crate::series::TruncatedSeries;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random nonempty downward-closed set in `n` variables with at most
/// `max_size` points: the standard monomials of a random ideal that contains a
/// pure power of every variable.
pub fn random_downset(rng: &mut impl Rng, n: usize, max_size: usize) -> PointSet {
    assert!(n > 0 && max_size > 0);
    let reach = match n {
        1 => max_size.min(40) as u32,
        2 => 7,
        3 => 4,
        _ => 3,
    };
    loop {
        let mut gens: Vec<MultiIndex> = (0..n)
            .map(|j| {
                let mut e = vec![0; n];
                e[j] = rng.gen_range(1..=reach);
                MultiIndex::new(e).expect("n > 0")
            })
            .collect();
        for _ in 0..rng.gen_range(0..=3) {
            let e = (0..n).map(|_| rng.gen_range(0..reach)).collect();
            gens.push(MultiIndex::new(e).expect("n > 0"));
        }
        let ideal = MonomialIdeal::new(n, gens).expect("consistent dimension");
        let set = standard_monomials(&ideal, None).expect("pure powers bound the set");
        if !set.is_empty() && set.len() <= max_size {
            return set;
        }
    }
}

/// A random set in `1..=3` variables, as used by the identity suites.
pub fn random_small_downset(rng: &mut impl Rng, max_size: usize) -> PointSet {
    let n = rng.gen_range(1..=3);
    random_downset(rng, n, max_size)
}

fn small_rational(rng: &mut impl Rng) -> BigRational {
    let num = rng.gen_range(-4i64..=4);
    let den = rng.gen_range(1i64..=3);
    BigRational::new(num.into(), den.into())
}

/// A series with random small rational coefficients on a few low-degree terms.
fn random_terms(rng: &mut impl Rng, n: usize, cap: u32, from_degree: u32) -> TruncatedSeries {
    let mut terms = Vec::new();
    for k in degree_window(n, cap).iter().filter(|k| k.degree() >= from_degree) {
        if rng.gen_bool(0.4) {
            terms.push((k.clone(), small_rational(rng)));
        }
    }
    TruncatedSeries::from_terms(n, cap, terms).expect("matching dimension")
}

/// A random valid Riordan basis: `G` with a nonzero constant term and `X` whose
/// linear part is an invertible small-integer matrix.
pub fn random_basis(rng: &mut impl Rng, n: usize, cap: u32) -> RiordanBasis {
    loop {
        let mut g = random_terms(rng, n, cap, 1);
        let c = loop {
            let c = rng.gen_range(-3i64..=3);
            if c != 0 {
                break c;
            }
        };
        g = g.add(&TruncatedSeries::from_int(n, cap, c)).expect("same shape");
        let x: Vec<TruncatedSeries> = (1..=n)
            .map(|_| {
                let linear = (1..=n).fold(TruncatedSeries::zero(n, cap), |acc, i| {
                    let v = BigRational::from_integer(rng.gen_range(-2i64..=2).into());
                    acc.add(&TruncatedSeries::z(n, cap, i).scale(&v)).expect("same shape")
                });
                linear.add(&random_terms(rng, n, cap, 2)).expect("same shape")
            })
            .collect();
        if let Ok(b) = RiordanBasis::new(g, x) {
            return b;
        }
    }
}

/// Random integer values on every point of `r`.
pub fn random_integer_sequence(rng: &mut impl Rng, r: &PointSet) -> BTreeMap<MultiIndex, BigInt> {
    r.iter().map(|k| (k.clone(), BigInt::from(rng.gen_range(-50i64..=50)))).collect()
}

/// Random polynomials in `x0, …, xn` (degree ≤ 2) on every point of `r`.
pub fn random_polynomial_sequence(rng: &mut impl Rng, r: &PointSet) -> BTreeMap<MultiIndex, Polynomial> {
    let nvars = r.dim() + 1;
    let monos = degree_window(nvars, 2);
    r.iter()
        .map(|k| {
            let mut terms = Vec::new();
            for m in monos.iter() {
                if rng.gen_bool(0.5) {
                    terms.push((m.exps().to_vec(), small_rational(rng)));
                }
            }
            (k.clone(), Polynomial::from_terms(nvars, terms).expect("matching dimension"))
        })
        .collect()
}

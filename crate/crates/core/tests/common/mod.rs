#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use monoid_idempotents::generator::{
    catalan_monoid, random_r_trivial_transformation_monoid, CatalanParams, GeneratedMonoid,
};
use monoid_idempotents::ring::CoefficientRing;
use monoid_idempotents::{AlgebraElement, FiniteMonoid};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EXAMPLE_TABLE: [[usize; 5]; 5] = [
    [0, 1, 2, 3, 4],
    [1, 1, 1, 1, 1],
    [2, 3, 4, 4, 4],
    [3, 3, 3, 3, 3],
    [4, 4, 4, 4, 4],
];

pub fn example() -> Arc<FiniteMonoid> {
    let rows = EXAMPLE_TABLE.iter().map(|r| r.to_vec()).collect();
    Arc::new(FiniteMonoid::new(rows, 0).unwrap())
}

/// Distinct Catalan closures with at most 12 elements, in seed order.
pub fn catalan_corpus(count: usize) -> Vec<GeneratedMonoid> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for seed in 0u64.. {
        let params = CatalanParams {
            chain: 4 + (seed % 3) as usize,
            generators: 1 + (seed % 4) as usize,
            max_size: 12,
        };
        let g = catalan_monoid(seed, params).unwrap();
        if seen.insert(g.monoid.rows()) {
            out.push(g);
        }
        if out.len() == count {
            break;
        }
        assert!(seed < 100_000, "generator produced too few distinct monoids");
    }
    out
}

/// R-trivial transformation monoids that are not L-trivial.
pub fn non_l_trivial_corpus(count: usize) -> Vec<GeneratedMonoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for attempt in 0.. {
        let degree = 3 + attempt % 2;
        if let Some(g) = random_r_trivial_transformation_monoid(&mut rng, degree, 2, 12) {
            if !g.monoid.is_l_trivial() && seen.insert(g.monoid.rows()) {
                out.push(g);
            }
        }
        if out.len() == count {
            break;
        }
        assert!(attempt < 100_000, "too few non-L-trivial monoids");
    }
    out
}

/// Dense coefficient vector.
pub fn dense<R: CoefficientRing>(x: &AlgebraElement<R>) -> Vec<R::Elem> {
    (0..x.host().size()).map(|a| x.coefficient(a)).collect()
}

/// Convolution straight from the table, independent of the library's product.
pub fn convolve<R: CoefficientRing>(
    m: &FiniteMonoid,
    ring: &R,
    x: &[R::Elem],
    y: &[R::Elem],
) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); m.size()];
    for (a, ca) in x.iter().enumerate() {
        for (b, cb) in y.iter().enumerate() {
            let k = m.mul(a, b);
            out[k] = ring.add(&out[k], &ring.mul(ca, cb));
        }
    }
    out
}

/// Nonzero, idempotent, pairwise orthogonal, summing to the unit, checked
/// with dense arithmetic under `m`'s multiplication. Returns the first failure.
pub fn independent_axioms<R: CoefficientRing>(
    m: &FiniteMonoid,
    ring: &R,
    elements: &[Vec<R::Elem>],
) -> Result<(), String> {
    let zero = vec![ring.zero(); m.size()];
    let mut sum = zero.clone();
    for (i, x) in elements.iter().enumerate() {
        if *x == zero {
            return Err(format!("element {i} is zero"));
        }
        for (j, y) in elements.iter().enumerate() {
            let p = convolve(m, ring, x, y);
            if i == j && p != *x {
                return Err(format!("element {i} is not idempotent"));
            }
            if i != j && p != zero {
                return Err(format!("elements {i} and {j} are not orthogonal"));
            }
        }
        sum = sum.iter().zip(x).map(|(a, b)| ring.add(a, b)).collect();
    }
    let mut unit = zero;
    unit[m.unit()] = ring.one();
    if sum != unit {
        return Err("elements do not sum to the unit".into());
    }
    Ok(())
}

/// Loop sets computed from the table alone.
pub fn loop_sets(m: &FiniteMonoid) -> Vec<BTreeSet<usize>> {
    m.elements()
        .map(|a| m.elements().filter(|&t| m.mul(a, t) == a).collect())
        .collect()
}

/// Elements grouped by equal loop sets.
pub fn full_loop_partition(m: &FiniteMonoid) -> BTreeSet<Vec<usize>> {
    let mut groups: BTreeMap<BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
    for (a, l) in loop_sets(m).into_iter().enumerate() {
        groups.entry(l).or_default().push(a);
    }
    groups.into_values().collect()
}

/// Primitive idempotents of Z/m by brute force: nontrivial-or-one idempotents
/// that are not a sum of two orthogonal nonzero idempotents.
pub fn brute_force_mod_idempotents(m: u64) -> Vec<u64> {
    let idem: Vec<u64> = (1..m).filter(|&x| x * x % m == x).collect();
    idem.iter()
        .copied()
        .filter(|&e| {
            !idem
                .iter()
                .any(|&f| f != e && f * e % m == f)
        })
        .collect()
}

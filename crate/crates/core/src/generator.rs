//! Seeded generation of R-trivial test monoids.
//!
//! The main source is the Catalan monoid of a `k`-chain: all maps
//! `f: {0..k-1} -> {0..k-1}` that are monotone and satisfy `f(i) <= i`.
//! A random handful of them is closed under composition, the result is
//! checked for R-triviality, and rejected on failure.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, GeneratingSet};

const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalanParams {
    /// Length `k` of the chain the maps act on.
    pub chain: usize,
    /// Number of random maps to close under composition.
    pub generators: usize,
    /// Closures larger than this are rejected and redrawn.
    pub max_size: usize,
}

impl Default for CatalanParams {
    fn default() -> Self {
        CatalanParams {
            chain: 4,
            generators: 2,
            max_size: 12,
        }
    }
}

/// A generated monoid together with the indices of the maps it was generated from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedMonoid {
    pub monoid: FiniteMonoid,
    pub generators: Vec<usize>,
}

/// All order-preserving, order-decreasing self-maps of a `k`-chain, in lexicographic order.
pub fn catalan_maps(chain: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, chain: usize, out: &mut Vec<Vec<usize>>) {
        let i = prefix.len();
        if i == chain {
            out.push(prefix.clone());
            return;
        }
        let low = prefix.last().copied().unwrap_or(0);
        for v in low..=i {
            prefix.push(v);
            extend(prefix, chain, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(chain), chain, &mut out);
    out
}

/// Apply `f` first, then `g`.
fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&x| g[x]).collect()
}

/// Closes `maps` (plus the identity) under composition and tabulates the
/// result. `None` if the closure exceeds `max_size` elements.
pub fn transformation_monoid(
    degree: usize,
    maps: &[Vec<usize>],
    max_size: usize,
) -> Option<GeneratedMonoid> {
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity.clone());
    queue.push_back(identity);
    while let Some(f) = queue.pop_front() {
        for g in maps {
            let h = compose(&f, g);
            if seen.insert(h.clone()) {
                if seen.len() > max_size {
                    return None;
                }
                queue.push_back(h);
            }
        }
    }
    let elements: Vec<Vec<usize>> = seen.into_iter().collect();
    let index: HashMap<&Vec<usize>, usize> =
        elements.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let table: Vec<Vec<usize>> = elements
        .iter()
        .map(|f| elements.iter().map(|g| index[&compose(f, g)]).collect())
        .collect();
    let unit = index[&(0..degree).collect::<Vec<_>>()];
    let mut generators: Vec<usize> = maps.iter().map(|g| index[g]).collect();
    generators.sort_unstable();
    generators.dedup();
    let monoid = FiniteMonoid::new(table, unit).expect("composition tables are monoids");
    Some(GeneratedMonoid { monoid, generators })
}

/// One R-trivial submonoid of the Catalan monoid, drawn from `rng`.
pub fn random_catalan_monoid<R: Rng>(rng: &mut R, params: CatalanParams) -> Result<GeneratedMonoid> {
    if params.chain == 0 || params.max_size == 0 {
        return Err(Error::PreconditionViolated(
            "chain length and maximum size must be positive".into(),
        ));
    }
    let maps = catalan_maps(params.chain);
    let identity: Vec<usize> = (0..params.chain).collect();
    let candidates: Vec<&Vec<usize>> = maps.iter().filter(|f| **f != identity).collect();
    for _ in 0..MAX_ATTEMPTS {
        let chosen: Vec<Vec<usize>> = if candidates.is_empty() {
            Vec::new()
        } else {
            (0..params.generators)
                .map(|_| (*candidates.choose(rng).expect("nonempty")).clone())
                .collect()
        };
        if let Some(generated) = transformation_monoid(params.chain, &chosen, params.max_size) {
            if generated.monoid.is_r_trivial() {
                return Ok(generated);
            }
        }
    }
    Err(Error::PreconditionViolated(format!(
        "no Catalan closure within {} elements after {MAX_ATTEMPTS} attempts",
        params.max_size
    )))
}

/// Deterministic for a given seed and parameters.
pub fn catalan_monoid(seed: u64, params: CatalanParams) -> Result<GeneratedMonoid> {
    random_catalan_monoid(&mut ChaCha8Rng::seed_from_u64(seed), params)
}

/// Random full-transformation monoids on `degree` points, kept only when
/// R-trivial. These need not be L-trivial, unlike Catalan closures.
pub fn random_r_trivial_transformation_monoid<R: Rng>(
    rng: &mut R,
    degree: usize,
    generators: usize,
    max_size: usize,
) -> Option<GeneratedMonoid> {
    for _ in 0..MAX_ATTEMPTS {
        let maps: Vec<Vec<usize>> = (0..generators)
            .map(|_| (0..degree).map(|_| rng.gen_range(0..degree)).collect())
            .collect();
        if let Some(generated) = transformation_monoid(degree, &maps, max_size) {
            if generated.monoid.is_r_trivial() {
                return Some(generated);
            }
        }
    }
    None
}

/// Greedily drops elements in random order while the rest still generates.
/// The unit is never included.
pub fn minimal_generating_set<R: Rng>(monoid: &FiniteMonoid, rng: &mut R) -> GeneratingSet {
    let mut members: Vec<usize> = monoid.elements().filter(|&a| a != monoid.unit()).collect();
    let mut order = members.clone();
    order.shuffle(rng);
    for a in order {
        let rest: Vec<usize> = members.iter().copied().filter(|&b| b != a).collect();
        if monoid.is_generating(&rest).expect("valid indices") {
            members = rest;
        }
    }
    GeneratingSet::new(monoid, members).expect("still generating")
}

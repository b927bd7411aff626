//! Loop sets `L_a = {t | a t = a}` and the loop-type partition.
//!
//! Two elements have the same loop-type when their loop sets agree. For an
//! R-trivial monoid it is enough to compare loop sets restricted to any
//! generating set, which is what [`partition`] does.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::monoid::{FiniteMonoid, GeneratingSet};

/// `L_a`. Always contains the unit.
pub fn loop_set(monoid: &FiniteMonoid, a: usize) -> Result<BTreeSet<usize>> {
    monoid.check_index(a)?;
    Ok(monoid.elements().filter(|&t| monoid.mul(a, t) == a).collect())
}

/// `L_a` intersected with the generating set.
pub fn restricted_loop_set(
    monoid: &FiniteMonoid,
    generators: &GeneratingSet,
    a: usize,
) -> Result<BTreeSet<usize>> {
    monoid.check_index(a)?;
    Ok(generators
        .members()
        .iter()
        .copied()
        .filter(|&t| monoid.mul(a, t) == a)
        .collect())
}

/// Loop-type classes of a monoid together with the data the idempotent
/// construction needs from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoopTypePartition {
    classes: Vec<Vec<usize>>,
    representatives: Vec<usize>,
    restricted_loop_sets: Vec<BTreeSet<usize>>,
    class_of: Vec<usize>,
}

impl LoopTypePartition {
    /// Number of classes `p`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Members of each class, in ascending index order.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn representative(&self, i: usize) -> usize {
        self.representatives[i]
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_size(&self, i: usize) -> usize {
        self.classes[i].len()
    }

    pub fn restricted_loop_sets(&self) -> &[BTreeSet<usize>] {
        &self.restricted_loop_sets
    }

    pub fn restricted_loop_set(&self, i: usize) -> &BTreeSet<usize> {
        &self.restricted_loop_sets[i]
    }

    /// Class index of an element.
    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// The classes as a set of sets, for order-free comparison.
    pub fn as_set_partition(&self) -> BTreeSet<Vec<usize>> {
        self.classes.iter().cloned().collect()
    }
}

/// Loop-type partition of an R-trivial monoid.
///
/// Representatives are the class members earliest in the triangular order, and
/// classes are listed in triangular order of their representatives.
pub fn partition(monoid: &FiniteMonoid, generators: &GeneratingSet) -> Result<LoopTypePartition> {
    let order = monoid.triangular_order()?;
    check_generating(monoid, generators)?;
    Ok(group_by_loop_sets(monoid, generators, &order))
}

/// Same grouping without the R-triviality gate. Elements are visited in index
/// order. Only meaningful as a diagnostic for monoids that are not R-trivial.
pub fn partition_diagnostic(
    monoid: &FiniteMonoid,
    generators: &GeneratingSet,
) -> Result<LoopTypePartition> {
    check_generating(monoid, generators)?;
    let order: Vec<usize> = monoid.elements().collect();
    Ok(group_by_loop_sets(monoid, generators, &order))
}

fn check_generating(monoid: &FiniteMonoid, generators: &GeneratingSet) -> Result<()> {
    let closure = monoid.closure(generators.members())?;
    if closure.len() != monoid.size() {
        return Err(Error::NotGenerating {
            closure: closure.len(),
            size: monoid.size(),
        });
    }
    Ok(())
}

fn group_by_loop_sets(
    monoid: &FiniteMonoid,
    generators: &GeneratingSet,
    order: &[usize],
) -> LoopTypePartition {
    let mut index_of_set: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut representatives = Vec::new();
    let mut restricted_loop_sets = Vec::new();
    let mut class_of = vec![0; monoid.size()];
    for &a in order {
        let loops = generators
            .members()
            .iter()
            .copied()
            .filter(|&t| monoid.mul(a, t) == a)
            .collect::<BTreeSet<_>>();
        let class = *index_of_set.entry(loops.clone()).or_insert_with(|| {
            classes.push(Vec::new());
            representatives.push(a);
            restricted_loop_sets.push(loops);
            classes.len() - 1
        });
        classes[class].push(a);
        class_of[a] = class;
    }
    for class in &mut classes {
        class.sort_unstable();
    }
    LoopTypePartition {
        classes,
        representatives,
        restricted_loop_sets,
        class_of,
    }
}

//! Finite monoids given by full multiplication tables.
//!
//! Elements are dense indices `0..n`. The unit sits at a declared index, which
//! need not be zero.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Tables up to this size are checked for associativity on construction.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssociativityCheck {
    /// Check when `n <= ASSOCIATIVITY_CHECK_LIMIT`.
    UpToLimit,
    Always,
    Skip,
}

/// A finite monoid stored as its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    unit: usize,
    // row-major: table[i * size + j] = i * j
    table: Vec<usize>,
    names: Vec<String>,
}

impl FiniteMonoid {
    /// Validates a raw table and declared unit.
    pub fn new(raw_table: Vec<Vec<usize>>, unit: usize) -> Result<Self> {
        Self::with_check(raw_table, unit, AssociativityCheck::UpToLimit)
    }

    pub fn with_check(
        raw_table: Vec<Vec<usize>>,
        unit: usize,
        check: AssociativityCheck,
    ) -> Result<Self> {
        let size = raw_table.len();
        if size == 0 {
            return Err(Error::EmptyTable);
        }
        let mut table = Vec::with_capacity(size * size);
        for (row, entries) in raw_table.into_iter().enumerate() {
            if entries.len() != size {
                return Err(Error::NotSquare {
                    row,
                    len: entries.len(),
                    expected: size,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= size {
                    return Err(Error::IndexOutOfRange {
                        row,
                        col,
                        value,
                        size,
                    });
                }
            }
            table.extend(entries);
        }
        let monoid = FiniteMonoid {
            size,
            unit,
            table,
            names: default_names(size),
        };
        monoid.check_unit()?;
        let run_assoc = match check {
            AssociativityCheck::UpToLimit => size <= ASSOCIATIVITY_CHECK_LIMIT,
            AssociativityCheck::Always => true,
            AssociativityCheck::Skip => false,
        };
        if run_assoc {
            if let Some((i, j, k)) = monoid.associativity_witness() {
                return Err(Error::NotAssociative { i, j, k });
            }
        }
        Ok(monoid)
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        FiniteMonoid {
            size: 1,
            unit: 0,
            table: vec![0],
            names: default_names(1),
        }
    }

    /// Replaces the display names. Names must be distinct, non-empty, must not
    /// start with a sign and may not contain whitespace, `,`, `#` or `*`.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::PreconditionViolated(format!(
                "expected {} names, got {}",
                self.size,
                names.len()
            )));
        }
        if let Some(bad) = names
            .iter()
            .find(|s| {
                s.is_empty()
                    || s.starts_with(['+', '-'])
                    || s.chars().any(|c| c.is_whitespace() || matches!(c, ',' | '#' | '*'))
            })
        {
            return Err(Error::PreconditionViolated(format!(
                "invalid element name {bad:?}"
            )));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != names.len() {
            return Err(Error::PreconditionViolated("element names must be distinct".into()));
        }
        self.names = names;
        Ok(self)
    }

    fn check_unit(&self) -> Result<()> {
        if self.unit >= self.size {
            return Err(Error::NoUnit {
                unit: self.unit,
                size: self.size,
            });
        }
        match (0..self.size)
            .find(|&i| self.mul(self.unit, i) != i || self.mul(i, self.unit) != i)
        {
            Some(witness) => Err(Error::WrongUnit {
                unit: self.unit,
                witness,
            }),
            None => Ok(()),
        }
    }

    /// First triple `(i, j, k)` in lexicographic order with `(ij)k != i(jk)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul(i, j);
                for k in 0..n {
                    if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.size..(a + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    /// Index of the element with the given display name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn check_index(&self, a: usize) -> Result<()> {
        if a < self.size {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                index: a,
                size: self.size,
            })
        }
    }

    /// Equal tables and units; display names are ignored.
    pub fn same_structure(&self, other: &FiniteMonoid) -> bool {
        self.size == other.size && self.unit == other.unit && self.table == other.table
    }

    /// The right ideal `aM`.
    pub fn right_ideal(&self, a: usize) -> Result<BTreeSet<usize>> {
        self.check_index(a)?;
        Ok(self.row(a).iter().copied().collect())
    }

    /// The left ideal `Ma`.
    pub fn left_ideal(&self, a: usize) -> Result<BTreeSet<usize>> {
        self.check_index(a)?;
        Ok(self.elements().map(|m| self.mul(m, a)).collect())
    }

    /// A pair of distinct elements with equal right ideals, if any.
    pub fn r_triviality_witness(&self) -> Option<(usize, usize)> {
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(self.size);
        for a in self.elements() {
            let ideal = sorted_dedup(self.row(a).to_vec());
            if let Some(&b) = seen.get(&ideal) {
                return Some((b, a));
            }
            seen.insert(ideal, a);
        }
        None
    }

    pub fn is_r_trivial(&self) -> bool {
        self.r_triviality_witness().is_none()
    }

    pub fn l_triviality_witness(&self) -> Option<(usize, usize)> {
        self.opposite().r_triviality_witness()
    }

    pub fn is_l_trivial(&self) -> bool {
        self.l_triviality_witness().is_none()
    }

    pub fn require_r_trivial(&self) -> Result<()> {
        match self.r_triviality_witness() {
            Some((a, b)) => Err(Error::NotRTrivial(a, b)),
            None => Ok(()),
        }
    }

    pub fn require_l_trivial(&self) -> Result<()> {
        match self.l_triviality_witness() {
            Some((a, b)) => Err(Error::NotLTrivial(a, b)),
            None => Ok(()),
        }
    }

    /// The opposite monoid, `a *op b = b * a`.
    pub fn opposite(&self) -> FiniteMonoid {
        let n = self.size;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.mul(b, a);
            }
        }
        FiniteMonoid {
            size: n,
            unit: self.unit,
            table,
            names: self.names.clone(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Submonoid generated by `set` together with the unit.
    pub fn closure(&self, set: &[usize]) -> Result<BTreeSet<usize>> {
        for &s in set {
            self.check_index(s)?;
        }
        let mut member = vec![false; self.size];
        member[self.unit] = true;
        let mut queue = vec![self.unit];
        while let Some(a) = queue.pop() {
            for &s in set {
                let b = self.mul(a, s);
                if !member[b] {
                    member[b] = true;
                    queue.push(b);
                }
            }
        }
        Ok(self.elements().filter(|&a| member[a]).collect())
    }

    pub fn is_generating(&self, set: &[usize]) -> Result<bool> {
        Ok(self.closure(set)?.len() == self.size)
    }

    /// Elements that satisfy the two-sided unit law.
    pub fn unit_candidates(raw_table: &[Vec<usize>]) -> Vec<usize> {
        let n = raw_table.len();
        if raw_table.iter().any(|r| r.len() != n) {
            return Vec::new();
        }
        (0..n)
            .filter(|&u| (0..n).all(|i| raw_table[u][i] == i && raw_table[i][u] == i))
            .collect()
    }

    /// Ordering with non-increasing `|aM|`, ties broken by ascending index.
    /// Under it every right-multiplication matrix is upper triangular.
    pub fn triangular_order(&self) -> Result<Vec<usize>> {
        self.require_r_trivial()?;
        let sizes: Vec<usize> = self
            .elements()
            .map(|a| sorted_dedup(self.row(a).to_vec()).len())
            .collect();
        let mut order: Vec<usize> = self.elements().collect();
        order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
        Ok(order)
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn sorted_dedup(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v.dedup();
    v
}

/// A validated generating set, stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet(Vec<usize>);

impl GeneratingSet {
    pub fn new(monoid: &FiniteMonoid, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members = sorted_dedup(members.into_iter().collect());
        let closure = monoid.closure(&members)?;
        if closure.len() != monoid.size() {
            return Err(Error::NotGenerating {
                closure: closure.len(),
                size: monoid.size(),
            });
        }
        Ok(GeneratingSet(members))
    }

    /// `S = M`.
    pub fn all(monoid: &FiniteMonoid) -> Self {
        GeneratingSet(monoid.elements().collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, a: usize) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

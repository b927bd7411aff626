//! Dense matrix realization of `RM`, used as an independent oracle.
//!
//! `U_s` is the matrix of right multiplication by `s`: entry `(t, k)` is one
//! exactly when `t s = k`. Rows and columns are indexed by positions in a
//! chosen element order; with the triangular order every `U_s` is upper
//! triangular for an R-trivial monoid.

use std::fmt;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::idempotents::IdempotentSystem;
use crate::monoid::FiniteMonoid;
use crate::ring::CoefficientRing;

#[derive(Clone, PartialEq)]
pub struct SquareMatrix<R: CoefficientRing> {
    ring: R,
    dim: usize,
    entries: Vec<R::Elem>,
}

impl<R: CoefficientRing> fmt::Debug for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareMatrix[{}]\n{}", self.ring.selector(), self.render())
    }
}

impl<R: CoefficientRing> SquareMatrix<R> {
    pub fn zero(ring: R, dim: usize) -> Self {
        let entries = vec![ring.zero(); dim * dim];
        SquareMatrix { ring, dim, entries }
    }

    pub fn identity(ring: R, dim: usize) -> Self {
        let mut m = Self::zero(ring, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = m.ring.one();
        }
        m
    }

    pub fn from_fn(ring: R, dim: usize, f: impl Fn(usize, usize) -> R::Elem) -> Self {
        let entries = (0..dim * dim).map(|idx| f(idx / dim, idx % dim)).collect();
        SquareMatrix { ring, dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn get(&self, row: usize, col: usize) -> &R::Elem {
        &self.entries[row * self.dim + col]
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch(self.dim, other.dim));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(SquareMatrix {
            ring: self.ring.clone(),
            dim: self.dim,
            entries,
        })
    }

    pub fn scale(&self, r: &R::Elem) -> Self {
        SquareMatrix {
            ring: self.ring.clone(),
            dim: self.dim,
            entries: self.entries.iter().map(|a| self.ring.mul(r, a)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        let n = self.dim;
        let mut out = Self::zero(self.ring.clone(), n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if self.ring.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if self.ring.is_zero(b) {
                        continue;
                    }
                    let idx = i * n + j;
                    out.entries[idx] = self.ring.add(&out.entries[idx], &self.ring.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn power(&self, k: u64) -> Self {
        let mut result = Self::identity(self.ring.clone(), self.dim);
        for _ in 0..k {
            result = result.mul(self).expect("square");
        }
        result
    }

    pub fn diagonal(&self) -> Vec<R::Elem> {
        (0..self.dim).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.ring.is_zero(self.get(i, j))))
    }

    pub fn render(&self) -> String {
        let cells: Vec<String> = self.entries.iter().map(|e| self.ring.format_elem(e)).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        cells
            .chunks(self.dim.max(1))
            .map(|row| {
                row.iter()
                    .map(|c| format!("{c:>width$}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Position of each element in `order`. Panics unless `order` is a permutation.
pub fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![usize::MAX; order.len()];
    for (i, &a) in order.iter().enumerate() {
        assert!(a < order.len() && pos[a] == usize::MAX, "order is not a permutation");
        pos[a] = i;
    }
    pos
}

/// `U_s` for right multiplication by `s`.
pub fn u_matrix<R: CoefficientRing>(
    monoid: &FiniteMonoid,
    order: &[usize],
    s: usize,
    ring: R,
) -> SquareMatrix<R> {
    let n = monoid.size();
    let pos = positions(order);
    let mut m = SquareMatrix::zero(ring, n);
    for t in monoid.elements() {
        let k = monoid.mul(t, s);
        m.entries[pos[t] * n + pos[k]] = m.ring.one();
    }
    m
}

/// `sum_m r_m U_m`.
pub fn psi<R: CoefficientRing>(x: &AlgebraElement<R>, order: &[usize]) -> SquareMatrix<R> {
    let monoid = x.host();
    let n = monoid.size();
    let pos = positions(order);
    let ring = x.ring();
    let mut m = SquareMatrix::zero(ring.clone(), n);
    for (s, c) in x.terms() {
        for t in monoid.elements() {
            let idx = pos[t] * n + pos[monoid.mul(t, s)];
            m.entries[idx] = ring.add(&m.entries[idx], c);
        }
    }
    m
}

/// Reads the coefficients back from the unit's row.
pub fn unit_row_coefficients<R: CoefficientRing>(
    matrix: &SquareMatrix<R>,
    monoid: &FiniteMonoid,
    order: &[usize],
) -> Vec<R::Elem> {
    let pos = positions(order);
    let row = pos[monoid.unit()];
    monoid
        .elements()
        .map(|k| matrix.get(row, pos[k]).clone())
        .collect()
}

/// Diagonal of `psi(x)` re-indexed by element rather than position.
pub fn diagonal_by_element<R: CoefficientRing>(
    matrix: &SquareMatrix<R>,
    order: &[usize],
) -> Vec<R::Elem> {
    let pos = positions(order);
    (0..order.len())
        .map(|a| matrix.get(pos[a], pos[a]).clone())
        .collect()
}

/// Cross-checks a system through the matrix realization of its working
/// monoid under the triangular order. Returns one message per failed check.
pub fn oracle_check<R: CoefficientRing>(system: &IdempotentSystem<R>) -> Result<Vec<String>> {
    let working = system.working_monoid();
    let order = working.triangular_order()?;
    let ring = system.ring().clone();
    let n = working.size();
    let mut failures = Vec::new();
    let mut total = SquareMatrix::zero(ring.clone(), n);
    for entry in system.entries() {
        let label = system.label(entry);
        let x = entry.element.rehost(working.clone())?;
        let m = psi(&x, &order);
        if m.mul(&m)? != m {
            failures.push(format!("psi({label}) is not idempotent"));
        }
        if !m.is_upper_triangular() {
            failures.push(format!("psi({label}) is not upper triangular"));
        }
        let expected: Vec<R::Elem> = working.elements().map(|a| x.diagonal_entry(a)).collect();
        if diagonal_by_element(&m, &order) != expected {
            failures.push(format!("psi({label}) diagonal disagrees with loop-set sums"));
        }
        let read_back: Vec<R::Elem> = working.elements().map(|a| x.coefficient(a)).collect();
        if unit_row_coefficients(&m, &working, &order) != read_back {
            failures.push(format!("psi({label}) unit row does not reproduce the coefficients"));
        }
        total = total.add(&m)?;
    }
    if total != SquareMatrix::identity(ring, n) {
        failures.push("psi images do not sum to the identity".into());
    }
    Ok(failures)
}

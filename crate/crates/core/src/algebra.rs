//! The monoid algebra `RM` as sparse formal sums.
//!
//! Diagonal information of the matrix realization is read off directly from
//! loop sets, so the production path never builds an `n x n` matrix.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::loops::LoopTypePartition;
use crate::monoid::FiniteMonoid;
use crate::ring::{theta, CoefficientRing};

/// A formal sum `sum_m r_m * m` with all stored coefficients nonzero.
#[derive(Clone)]
pub struct AlgebraElement<R: CoefficientRing> {
    host: Arc<FiniteMonoid>,
    ring: R,
    coeffs: BTreeMap<usize, R::Elem>,
}

impl<R: CoefficientRing> PartialEq for AlgebraElement<R> {
    fn eq(&self, other: &Self) -> bool {
        same_host(&self.host, &other.host) && self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl<R: CoefficientRing> fmt::Debug for AlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement[{}]({})", self.ring.selector(), self.render())
    }
}

impl<R: CoefficientRing> fmt::Display for AlgebraElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn same_host(a: &Arc<FiniteMonoid>, b: &Arc<FiniteMonoid>) -> bool {
    Arc::ptr_eq(a, b) || a.same_structure(b)
}

impl<R: CoefficientRing> AlgebraElement<R> {
    pub fn zero(host: Arc<FiniteMonoid>, ring: R) -> Self {
        AlgebraElement {
            host,
            ring,
            coeffs: BTreeMap::new(),
        }
    }

    /// `1 * e`.
    pub fn unit(host: Arc<FiniteMonoid>, ring: R) -> Self {
        let e = host.unit();
        Self::basis(host, ring, e)
    }

    /// `1 * a`. Panics if `a` is out of range.
    pub fn basis(host: Arc<FiniteMonoid>, ring: R, a: usize) -> Self {
        assert!(a < host.size(), "element {a} out of range");
        let one = ring.one();
        let mut coeffs = BTreeMap::new();
        if !ring.is_zero(&one) {
            coeffs.insert(a, one);
        }
        AlgebraElement { host, ring, coeffs }
    }

    /// Builds an element from `(element, coefficient)` pairs; repeated elements are summed.
    pub fn from_terms(
        host: Arc<FiniteMonoid>,
        ring: R,
        terms: impl IntoIterator<Item = (usize, R::Elem)>,
    ) -> Result<Self> {
        let mut x = Self::zero(host, ring);
        for (a, c) in terms {
            x.host.check_index(a)?;
            x.add_term(a, &c);
        }
        Ok(x)
    }

    /// Like [`from_terms`](Self::from_terms) with integer coefficients mapped into the ring.
    pub fn from_int_terms(host: Arc<FiniteMonoid>, ring: R, terms: &[(usize, i64)]) -> Result<Self> {
        let mapped: Vec<_> = terms.iter().map(|&(a, z)| (a, theta(&ring, z))).collect();
        Self::from_terms(host, ring, mapped)
    }

    fn add_term(&mut self, a: usize, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.coeffs.get_mut(&a) {
            Some(existing) => {
                let sum = self.ring.add(existing, c);
                if self.ring.is_zero(&sum) {
                    self.coeffs.remove(&a);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.coeffs.insert(a, c.clone());
            }
        }
    }

    pub fn host(&self) -> &Arc<FiniteMonoid> {
        &self.host
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coefficient(&self, a: usize) -> R::Elem {
        self.coeffs
            .get(&a)
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    /// Nonzero terms in ascending element order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.coeffs.iter().map(|(&a, c)| (a, c))
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, R::Elem> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !same_host(&self.host, &other.host) {
            return Err(Error::HostMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| self.ring.neg(c))
    }

    /// `r * x`.
    pub fn scalar_mul_left(&self, r: &R::Elem) -> Self {
        self.map_coefficients(|c| self.ring.mul(r, c))
    }

    /// `x * r`.
    pub fn scalar_mul_right(&self, r: &R::Elem) -> Self {
        self.map_coefficients(|c| self.ring.mul(c, r))
    }

    fn map_coefficients(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&a, c)| (a, f(c)))
            .filter(|(_, c)| !self.ring.is_zero(c))
            .collect();
        AlgebraElement {
            host: self.host.clone(),
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// Convolution product over the monoid table.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.host.clone(), self.ring.clone());
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(self.host.mul(a, b), &self.ring.mul(x, y));
            }
        }
        Ok(out)
    }

    fn mul_same(&self, other: &Self) -> Self {
        self.mul(other).expect("operands share host and ring")
    }

    /// `x^k` by repeated squaring; `x^0` is the unit.
    pub fn power(&self, k: u64) -> Self {
        let mut result = Self::unit(self.host.clone(), self.ring.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_same(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_same(&base);
            }
        }
        result
    }

    /// `e - (e - x^a)^b`.
    pub fn p_map(&self, a: u64, b: u64) -> Self {
        let unit = Self::unit(self.host.clone(), self.ring.clone());
        let inner = unit.sub(&self.power(a)).expect("same algebra");
        unit.sub(&inner.power(b)).expect("same algebra")
    }

    /// Diagonal entry of the matrix realization at `a`: the sum of the
    /// coefficients over the loop set of `a`.
    pub fn diagonal_entry(&self, a: usize) -> R::Elem {
        self.terms()
            .filter(|&(m, _)| self.host.mul(a, m) == a)
            .fold(self.ring.zero(), |acc, (_, c)| self.ring.add(&acc, c))
    }

    /// Common diagonal value on each loop-type class.
    pub fn diagonal_profile(&self, partition: &LoopTypePartition) -> Result<Vec<R::Elem>> {
        partition
            .classes()
            .iter()
            .enumerate()
            .map(|(i, class)| {
                let value = self.diagonal_entry(class[0]);
                if let Some(&other) = class[1..]
                    .iter()
                    .find(|&&a| self.diagonal_entry(a) != value)
                {
                    return Err(Error::InternalInconsistency(format!(
                        "diagonal entries of {} and {} differ within loop-type class {}",
                        self.host.name(class[0]),
                        self.host.name(other),
                        i + 1
                    )));
                }
                Ok(value)
            })
            .collect()
    }

    /// Applies a ring map to every coefficient.
    pub fn map_ring<S: CoefficientRing>(
        &self,
        ring: S,
        f: impl Fn(&R::Elem) -> S::Elem,
    ) -> AlgebraElement<S> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&a, c)| (a, f(c)))
            .filter(|(_, c)| !ring.is_zero(c))
            .collect();
        AlgebraElement {
            host: self.host.clone(),
            ring,
            coeffs,
        }
    }

    /// Same coefficient vector over another monoid on the same element set.
    pub fn rehost(&self, host: Arc<FiniteMonoid>) -> Result<Self> {
        if host.size() != self.host.size() {
            return Err(Error::HostMismatch);
        }
        Ok(AlgebraElement {
            host,
            ring: self.ring.clone(),
            coeffs: self.coeffs.clone(),
        })
    }

    /// Renders as e.g. `1 - 3*3 + 2*5`, using the host's element names.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let one = self.ring.one();
        let mut out = String::new();
        for (k, (a, c)) in self.terms().enumerate() {
            let name = self.host.name(a);
            let (negative, magnitude) = if self.ring.neg(c) == one && *c != one {
                (true, None)
            } else if *c == one {
                (false, None)
            } else {
                let shown = self.ring.format_elem(c);
                match shown.strip_prefix('-') {
                    Some(rest) if !rest.is_empty() => (true, Some(rest.to_string())),
                    _ => (false, Some(shown)),
                }
            };
            match (k, negative) {
                (0, false) => {}
                (0, true) => out.push('-'),
                (_, false) => out.push_str(" + "),
                (_, true) => out.push_str(" - "),
            }
            if let Some(m) = magnitude {
                out.push_str(&m);
                out.push('*');
            }
            out.push_str(name);
        }
        out
    }
}

impl<R: CoefficientRing> AlgebraElement<R> {
    /// Inverse of [`render`](Self::render): terms such as `1 - 3*3 + 2*5`
    /// separated by ` + ` or ` - `, coefficients in the ring's own notation.
    pub fn parse(host: Arc<FiniteMonoid>, ring: R, text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut rest = text;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let len = rest[start..].find(char::is_whitespace).unwrap_or(rest.len() - start);
            let column = text[..offset + start].chars().count() + 1;
            tokens.push((column, &rest[start..start + len]));
            offset += start + len;
            rest = &text[offset..];
        }
        if tokens.is_empty() {
            return Err(Error::parse(1, 1, "empty expression"));
        }
        if tokens.len() == 1 && tokens[0].1 == "0" && host.index_of("0").is_none() {
            return Ok(Self::zero(host, ring));
        }
        let mut x = Self::zero(host.clone(), ring.clone());
        let mut negative = false;
        for (k, &(column, tok)) in tokens.iter().enumerate() {
            if k % 2 == 1 {
                negative = match tok {
                    "+" => false,
                    "-" => true,
                    _ => return Err(Error::parse(1, column, format!("expected + or -, found {tok:?}"))),
                };
                continue;
            }
            let mut body = tok;
            let mut column = column;
            if k == 0 {
                if let Some(rest) = body.strip_prefix('-') {
                    negative = true;
                    body = rest;
                    column += 1;
                }
            }
            let (coeff, name) = match body.rsplit_once('*') {
                Some((c, name)) => {
                    let value = ring.parse_elem(c).ok_or_else(|| {
                        Error::parse(
                            1,
                            column,
                            format!("invalid coefficient {c:?} for ring {}", ring.selector()),
                        )
                    })?;
                    (value, name)
                }
                None => (ring.one(), body),
            };
            let a = host
                .index_of(name)
                .ok_or_else(|| Error::parse(1, column, format!("unknown element {name:?}")))?;
            let coeff = if negative { ring.neg(&coeff) } else { coeff };
            x.add_term(a, &coeff);
        }
        if tokens.len() % 2 == 0 {
            return Err(Error::parse(1, text.chars().count() + 1, "expression ends with an operator"));
        }
        Ok(x)
    }
}

/// Lifts an integer element along the canonical map into another ring.
pub fn lift<S: CoefficientRing>(
    x: &AlgebraElement<crate::ring::Integers>,
    ring: S,
) -> AlgebraElement<S> {
    let target = ring.clone();
    x.map_ring(ring, |z| target.from_integer(z))
}

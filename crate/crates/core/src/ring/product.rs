use num_bigint::BigInt;

use super::{BuiltinElem, BuiltinRing, CoefficientRing};

/// Finite direct product of built-in rings, with componentwise arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRing {
    factors: Vec<BuiltinRing>,
}

impl ProductRing {
    /// Panics on an empty factor list.
    pub fn new(factors: Vec<BuiltinRing>) -> Self {
        assert!(!factors.is_empty(), "product ring needs at least one factor");
        ProductRing { factors }
    }

    pub fn factors(&self) -> &[BuiltinRing] {
        &self.factors
    }

    fn zip_with(
        &self,
        a: &[BuiltinElem],
        b: &[BuiltinElem],
        f: impl Fn(&BuiltinRing, &BuiltinElem, &BuiltinElem) -> BuiltinElem,
    ) -> Vec<BuiltinElem> {
        self.factors
            .iter()
            .zip(a.iter().zip(b))
            .map(|(r, (x, y))| f(r, x, y))
            .collect()
    }
}

impl CoefficientRing for ProductRing {
    type Elem = Vec<BuiltinElem>;

    fn zero(&self) -> Self::Elem {
        self.factors.iter().map(|r| r.zero()).collect()
    }

    fn one(&self) -> Self::Elem {
        self.factors.iter().map(|r| r.one()).collect()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.zip_with(a, b, |r, x, y| r.add(x, y))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.factors.iter().zip(a).map(|(r, x)| r.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.zip_with(a, b, |r, x, y| r.mul(x, y))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.factors.iter().zip(a).all(|(r, x)| r.is_zero(x))
    }

    fn from_integer(&self, z: &BigInt) -> Self::Elem {
        self.factors.iter().map(|r| r.from_integer(z)).collect()
    }

    /// For each factor in turn, its idempotents placed in that slot with zeros elsewhere.
    fn idempotent_system(&self) -> Vec<Self::Elem> {
        let zero = self.zero();
        let mut system = Vec::new();
        for (slot, factor) in self.factors.iter().enumerate() {
            for eps in factor.idempotent_system() {
                let mut e = zero.clone();
                e[slot] = eps;
                system.push(e);
            }
        }
        system
    }

    fn is_commutative(&self) -> bool {
        self.factors.iter().all(CoefficientRing::is_commutative)
    }

    fn selector(&self) -> String {
        self.factors
            .iter()
            .map(CoefficientRing::selector)
            .collect::<Vec<_>>()
            .join("x")
    }

    fn format_elem(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .zip(a)
            .map(|(r, x)| r.format_elem(x))
            .collect();
        format!("({})", parts.join(","))
    }

    fn parse_elem(&self, s: &str) -> Option<Self::Elem> {
        let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
        let parts = split_top_level(inner);
        if parts.len() != self.factors.len() {
            return None;
        }
        self.factors
            .iter()
            .zip(parts)
            .map(|(r, p)| r.parse_elem(p))
            .collect()
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_ring, tests::sample_elem};

    #[test]
    fn system_is_concatenated_slots() {
        let BuiltinRing::Product(p) = parse_ring("Z/6xZ").unwrap() else {
            panic!("expected a product");
        };
        let shown: Vec<String> = p.idempotent_system().iter().map(|e| p.format_elem(e)).collect();
        assert_eq!(shown, vec!["(3,0)", "(4,0)", "(0,1)"]);
    }

    #[test]
    fn componentwise_against_factors() {
        let BuiltinRing::Product(p) = parse_ring("QxZ/6xZ").unwrap() else {
            panic!("expected a product");
        };
        for a in -5..5 {
            for b in -3..3 {
                let x: Vec<BuiltinElem> = p
                    .factors()
                    .iter()
                    .map(|r| sample_elem(r, a, b))
                    .collect();
                let y: Vec<BuiltinElem> = p
                    .factors()
                    .iter()
                    .map(|r| sample_elem(r, b * 7 + 1, a))
                    .collect();
                let sum = p.add(&x, &y);
                let prod = p.mul(&x, &y);
                for (k, r) in p.factors().iter().enumerate() {
                    assert_eq!(sum[k], r.add(&x[k], &y[k]));
                    assert_eq!(prod[k], r.mul(&x[k], &y[k]));
                }
            }
        }
    }

    #[test]
    fn parse_rejects_wrong_arity() {
        let p = parse_ring("ZxZ/2").unwrap();
        assert!(p.parse_elem("(1,1)").is_some());
        assert!(p.parse_elem("(1,1,1)").is_none());
        assert!(p.parse_elem("(1,2)").is_none());
        assert!(p.parse_elem("1,1").is_none());
    }
}

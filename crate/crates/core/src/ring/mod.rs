//! Exact coefficient rings.
//!
//! A [`CoefficientRing`] is a ring descriptor: a value that knows how to do
//! arithmetic on its element type, how to embed the integers, and which
//! complete system of primitive orthogonal idempotents it carries.

mod builtin;
mod integers;
mod modular;
mod product;
mod rationals;

use std::fmt::Debug;

use num_bigint::BigInt;

pub use builtin::{BuiltinElem, BuiltinRing};
pub use integers::Integers;
pub use modular::{modular_idempotent_system, IntegersMod, MODULAR_SEARCH_LIMIT};
pub use product::ProductRing;
pub use rationals::Rationals;

pub trait CoefficientRing: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Eq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// The canonical map from the integers.
    #[allow(clippy::wrong_self_convention)]
    fn from_integer(&self, z: &BigInt) -> Self::Elem;

    /// The declared complete system of primitive orthogonal idempotents.
    fn idempotent_system(&self) -> Vec<Self::Elem>;

    fn is_commutative(&self) -> bool;

    /// Selector string in CLI syntax, e.g. `Z/6` or `ZxZ/2`.
    fn selector(&self) -> String;

    fn format_elem(&self, a: &Self::Elem) -> String;

    fn parse_elem(&self, s: &str) -> Option<Self::Elem>;
}

/// Image of an integer in `ring`.
pub fn theta<R: CoefficientRing>(ring: &R, z: impl Into<BigInt>) -> R::Elem {
    ring.from_integer(&z.into())
}

/// `1 + 1 + ... + 1`, literally. Only used to cross-check [`theta`] on small inputs.
pub fn theta_by_repeated_addition<R: CoefficientRing>(ring: &R, z: i64) -> R::Elem {
    let one = ring.one();
    let mut acc = ring.zero();
    for _ in 0..z.unsigned_abs() {
        acc = ring.add(&acc, &one);
    }
    if z < 0 {
        ring.neg(&acc)
    } else {
        acc
    }
}

/// Checks that the declared idempotents are nonzero, idempotent, pairwise
/// orthogonal and sum to one.
pub fn check_idempotent_system<R: CoefficientRing>(ring: &R) -> Result<(), String> {
    let system = ring.idempotent_system();
    if ring.one() == ring.zero() {
        return Err("ring has 1 = 0".into());
    }
    if system.is_empty() {
        return Err("idempotent system is empty".into());
    }
    let mut sum = ring.zero();
    for (i, e) in system.iter().enumerate() {
        if ring.is_zero(e) {
            return Err(format!("idempotent {} is zero", i + 1));
        }
        if ring.mul(e, e) != *e {
            return Err(format!(
                "idempotent {} = {} is not idempotent",
                i + 1,
                ring.format_elem(e)
            ));
        }
        for (j, f) in system.iter().enumerate() {
            if i != j && !ring.is_zero(&ring.mul(e, f)) {
                return Err(format!("idempotents {} and {} are not orthogonal", i + 1, j + 1));
            }
        }
        sum = ring.add(&sum, e);
    }
    if sum != ring.one() {
        return Err(format!(
            "idempotents sum to {}, not 1",
            ring.format_elem(&sum)
        ));
    }
    Ok(())
}

pub(crate) fn format_bigint(z: &BigInt) -> String {
    z.to_string()
}

pub(crate) fn parse_bigint(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses a selector such as `Z`, `Q`, `Z/4` or `Z/2xZ/3`.
pub fn parse_ring(selector: &str) -> crate::error::Result<BuiltinRing> {
    BuiltinRing::parse(selector)
}

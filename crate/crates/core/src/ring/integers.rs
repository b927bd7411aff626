use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{format_bigint, parse_bigint, CoefficientRing};

/// Arbitrary-precision integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Integers;

impl CoefficientRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn from_integer(&self, z: &BigInt) -> BigInt {
        z.clone()
    }

    fn idempotent_system(&self) -> Vec<BigInt> {
        vec![BigInt::one()]
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn selector(&self) -> String {
        "Z".into()
    }

    fn format_elem(&self, a: &BigInt) -> String {
        format_bigint(a)
    }

    fn parse_elem(&self, s: &str) -> Option<BigInt> {
        parse_bigint(s)
    }
}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{parse_bigint, CoefficientRing};

/// Exact rationals, always in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl CoefficientRing for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn from_integer(&self, z: &BigInt) -> BigRational {
        BigRational::from_integer(z.clone())
    }

    fn idempotent_system(&self) -> Vec<BigRational> {
        vec![BigRational::one()]
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn selector(&self) -> String {
        "Q".into()
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse_elem(&self, s: &str) -> Option<BigRational> {
        match s.trim().split_once('/') {
            None => parse_bigint(s).map(BigRational::from_integer),
            Some((num, den)) => {
                let num = parse_bigint(num)?;
                let den = parse_bigint(den)?;
                if den.is_zero() {
                    return None;
                }
                Some(BigRational::new(num, den))
            }
        }
    }
}

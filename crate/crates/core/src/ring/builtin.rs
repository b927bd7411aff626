use num_bigint::BigInt;
use num_rational::BigRational;

use super::{CoefficientRing, Integers, IntegersMod, ProductRing, Rationals};
use crate::error::{Error, Result};

/// Any of the shipped rings, chosen at runtime from a selector string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuiltinRing {
    Integers,
    Rationals,
    Modular(IntegersMod),
    Product(ProductRing),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuiltinElem {
    Int(BigInt),
    Rat(BigRational),
    Mod(u64),
    Tuple(Vec<BuiltinElem>),
}

impl BuiltinRing {
    /// Selector grammar: factors `Z`, `Q` or `Z/m` (m >= 2) joined by `x`.
    pub fn parse(selector: &str) -> Result<Self> {
        let selector = selector.trim();
        let mut factors = Vec::new();
        let mut column = 1;
        for token in selector.split('x') {
            factors.push(parse_factor(token, column)?);
            column += token.chars().count() + 1;
        }
        Ok(if factors.len() == 1 {
            factors.pop().expect("one factor")
        } else {
            BuiltinRing::Product(ProductRing::new(factors))
        })
    }

    /// A deterministic element built from two integers, for tests and examples.
    pub fn sample(&self, a: i64, b: i64) -> BuiltinElem {
        match self {
            BuiltinRing::Integers => BuiltinElem::Int(BigInt::from(a)),
            BuiltinRing::Rationals => BuiltinElem::Rat(BigRational::new(
                BigInt::from(a),
                BigInt::from(b.unsigned_abs() + 1),
            )),
            BuiltinRing::Modular(r) => BuiltinElem::Mod(r.reduce(a)),
            BuiltinRing::Product(p) => BuiltinElem::Tuple(
                p.factors()
                    .iter()
                    .enumerate()
                    .map(|(i, r)| r.sample(a + 3 * i as i64, b - i as i64))
                    .collect(),
            ),
        }
    }
}

fn parse_factor(token: &str, column: usize) -> Result<BuiltinRing> {
    match token {
        "Z" => Ok(BuiltinRing::Integers),
        "Q" => Ok(BuiltinRing::Rationals),
        _ => {
            let Some(modulus) = token.strip_prefix("Z/") else {
                return Err(Error::parse(
                    1,
                    column,
                    format!("unknown ring factor {token:?}; expected Z, Q or Z/m"),
                ));
            };
            if modulus.is_empty() || !modulus.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::parse(
                    1,
                    column + 2,
                    format!("modulus {modulus:?} is not a positive integer"),
                ));
            }
            let Ok(m) = modulus.parse::<u64>() else {
                return Err(Error::InvalidModulus(modulus.to_string()));
            };
            if m == 0 {
                return Err(Error::InvalidModulus("0 (write Z for the integers)".into()));
            }
            Ok(BuiltinRing::Modular(IntegersMod::new(m)?))
        }
    }
}

fn int(e: &BuiltinElem) -> &BigInt {
    match e {
        BuiltinElem::Int(z) => z,
        other => panic!("expected an integer, got {other:?}"),
    }
}

fn rat(e: &BuiltinElem) -> &BigRational {
    match e {
        BuiltinElem::Rat(q) => q,
        other => panic!("expected a rational, got {other:?}"),
    }
}

fn residue(e: &BuiltinElem) -> &u64 {
    match e {
        BuiltinElem::Mod(r) => r,
        other => panic!("expected a residue, got {other:?}"),
    }
}

fn tuple(e: &BuiltinElem) -> &Vec<BuiltinElem> {
    match e {
        BuiltinElem::Tuple(t) => t,
        other => panic!("expected a tuple, got {other:?}"),
    }
}

macro_rules! dispatch_binary {
    ($self:expr, $a:expr, $b:expr, $op:ident) => {
        match $self {
            BuiltinRing::Integers => BuiltinElem::Int(Integers.$op(int($a), int($b))),
            BuiltinRing::Rationals => BuiltinElem::Rat(Rationals.$op(rat($a), rat($b))),
            BuiltinRing::Modular(r) => BuiltinElem::Mod(r.$op(residue($a), residue($b))),
            BuiltinRing::Product(p) => BuiltinElem::Tuple(p.$op(tuple($a), tuple($b))),
        }
    };
}

impl CoefficientRing for BuiltinRing {
    type Elem = BuiltinElem;

    fn zero(&self) -> BuiltinElem {
        match self {
            BuiltinRing::Integers => BuiltinElem::Int(Integers.zero()),
            BuiltinRing::Rationals => BuiltinElem::Rat(Rationals.zero()),
            BuiltinRing::Modular(r) => BuiltinElem::Mod(r.zero()),
            BuiltinRing::Product(p) => BuiltinElem::Tuple(p.zero()),
        }
    }

    fn one(&self) -> BuiltinElem {
        match self {
            BuiltinRing::Integers => BuiltinElem::Int(Integers.one()),
            BuiltinRing::Rationals => BuiltinElem::Rat(Rationals.one()),
            BuiltinRing::Modular(r) => BuiltinElem::Mod(r.one()),
            BuiltinRing::Product(p) => BuiltinElem::Tuple(p.one()),
        }
    }

    fn add(&self, a: &BuiltinElem, b: &BuiltinElem) -> BuiltinElem {
        dispatch_binary!(self, a, b, add)
    }

    fn neg(&self, a: &BuiltinElem) -> BuiltinElem {
        match self {
            BuiltinRing::Integers => BuiltinElem::Int(Integers.neg(int(a))),
            BuiltinRing::Rationals => BuiltinElem::Rat(Rationals.neg(rat(a))),
            BuiltinRing::Modular(r) => BuiltinElem::Mod(r.neg(residue(a))),
            BuiltinRing::Product(p) => BuiltinElem::Tuple(p.neg(tuple(a))),
        }
    }

    fn mul(&self, a: &BuiltinElem, b: &BuiltinElem) -> BuiltinElem {
        dispatch_binary!(self, a, b, mul)
    }

    fn is_zero(&self, a: &BuiltinElem) -> bool {
        match self {
            BuiltinRing::Integers => Integers.is_zero(int(a)),
            BuiltinRing::Rationals => Rationals.is_zero(rat(a)),
            BuiltinRing::Modular(r) => r.is_zero(residue(a)),
            BuiltinRing::Product(p) => p.is_zero(tuple(a)),
        }
    }

    fn from_integer(&self, z: &BigInt) -> BuiltinElem {
        match self {
            BuiltinRing::Integers => BuiltinElem::Int(Integers.from_integer(z)),
            BuiltinRing::Rationals => BuiltinElem::Rat(Rationals.from_integer(z)),
            BuiltinRing::Modular(r) => BuiltinElem::Mod(r.from_integer(z)),
            BuiltinRing::Product(p) => BuiltinElem::Tuple(p.from_integer(z)),
        }
    }

    fn idempotent_system(&self) -> Vec<BuiltinElem> {
        match self {
            BuiltinRing::Integers => vec![self.one()],
            BuiltinRing::Rationals => vec![self.one()],
            BuiltinRing::Modular(r) => r
                .idempotent_system()
                .into_iter()
                .map(BuiltinElem::Mod)
                .collect(),
            BuiltinRing::Product(p) => p
                .idempotent_system()
                .into_iter()
                .map(BuiltinElem::Tuple)
                .collect(),
        }
    }

    fn is_commutative(&self) -> bool {
        match self {
            BuiltinRing::Product(p) => p.is_commutative(),
            _ => true,
        }
    }

    fn selector(&self) -> String {
        match self {
            BuiltinRing::Integers => Integers.selector(),
            BuiltinRing::Rationals => Rationals.selector(),
            BuiltinRing::Modular(r) => r.selector(),
            BuiltinRing::Product(p) => p.selector(),
        }
    }

    fn format_elem(&self, a: &BuiltinElem) -> String {
        match self {
            BuiltinRing::Integers => Integers.format_elem(int(a)),
            BuiltinRing::Rationals => Rationals.format_elem(rat(a)),
            BuiltinRing::Modular(r) => r.format_elem(residue(a)),
            BuiltinRing::Product(p) => p.format_elem(tuple(a)),
        }
    }

    fn parse_elem(&self, s: &str) -> Option<BuiltinElem> {
        match self {
            BuiltinRing::Integers => Integers.parse_elem(s).map(BuiltinElem::Int),
            BuiltinRing::Rationals => Rationals.parse_elem(s).map(BuiltinElem::Rat),
            BuiltinRing::Modular(r) => r.parse_elem(s).map(BuiltinElem::Mod),
            BuiltinRing::Product(p) => p.parse_elem(s).map(BuiltinElem::Tuple),
        }
    }
}

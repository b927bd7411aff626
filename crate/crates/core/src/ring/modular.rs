use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::CoefficientRing;
use crate::error::{Error, Result};

/// Largest modulus for which the idempotent system is found by exhaustive search.
pub const MODULAR_SEARCH_LIMIT: u64 = 1_000_000;

/// The integers modulo `m`, `m >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegersMod {
    modulus: u64,
    system: Vec<u64>,
}

impl IntegersMod {
    pub fn new(modulus: u64) -> Result<Self> {
        let system = modular_idempotent_system(modulus)?;
        Ok(IntegersMod { modulus, system })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, z: i64) -> u64 {
        z.rem_euclid(self.modulus as i64) as u64
    }
}

/// All primitive idempotents of `Z/mZ`, ascending.
///
/// Every idempotent is enumerated by brute force; an idempotent `e != 0` is
/// primitive when no other nonzero idempotent `f != e` satisfies `f e = f`.
pub fn modular_idempotent_system(modulus: u64) -> Result<Vec<u64>> {
    if modulus <= 1 {
        return Err(Error::InvalidModulus(modulus.to_string()));
    }
    if modulus > MODULAR_SEARCH_LIMIT {
        return Err(Error::InvalidModulus(format!(
            "{modulus} exceeds the search limit {MODULAR_SEARCH_LIMIT}"
        )));
    }
    let m = modulus as u128;
    let idempotents: Vec<u64> = (1..modulus)
        .filter(|&e| (e as u128 * e as u128) % m == e as u128)
        .collect();
    Ok(idempotents
        .iter()
        .copied()
        .filter(|&e| {
            !idempotents
                .iter()
                .any(|&f| f != e && (f as u128 * e as u128) % m == f as u128)
        })
        .collect())
}

impl CoefficientRing for IntegersMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    fn from_integer(&self, z: &BigInt) -> u64 {
        z.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits in u64")
    }

    fn idempotent_system(&self) -> Vec<u64> {
        self.system.clone()
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn selector(&self) -> String {
        format!("Z/{}", self.modulus)
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Option<u64> {
        let s = s.trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse::<u64>().ok().filter(|&r| r < self.modulus)
    }
}

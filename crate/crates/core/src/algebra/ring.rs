use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The residue ring Z/nZ. Elements are integers in `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RingSpec {
    n: u64,
}

impl RingSpec {
    pub fn new(n: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidRingModulus);
        }
        Ok(RingSpec { n })
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn elem(&self, x: u64) -> Result<u64> {
        if x < self.n {
            Ok(x)
        } else {
            Err(Error::ElementOutOfRange {
                value: x,
                order: self.n,
            })
        }
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        ((x as u128 + y as u128) % self.n as u128) as u64
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.n as u128) as u64
    }

    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.n as i128) as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.n
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}Z", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        assert_eq!(RingSpec::new(0), Err(Error::InvalidRingModulus));
        let r = RingSpec::new(6).unwrap();
        assert_eq!(r.add(4, 5), 3);
        assert_eq!(r.mul(4, 5), 2);
        assert_eq!(r.reduce(-1), 5);
        assert!(r.elem(6).is_err());
        let trivial = RingSpec::new(1).unwrap();
        assert_eq!(trivial.elements().collect::<Vec<_>>(), vec![0]);
    }
}

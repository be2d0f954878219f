//! D = F_q^*: peel off the solutions in which some coordinate is 0.
//!
//! Splitting full-domain solutions on whether 0 appears, and at which
//! position, gives `N_F(a; b) = N_{F*}(a; b) + sum_i N_{F*}(a drop i; b)`.
//! Solving for `N_{F*}` recurses over sub-multisets of the coefficients. The
//! full-domain counts of every sub-multiset come from one sieve table.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::recurrence::DeltaKey;
use super::sieve::{count_from_weight, sieve_table};
use super::{Budgets, CountResult, Instance, Method};
use crate::algebra::{Domain, Elem, Field};
use crate::error::{Error, Result};

struct Reduction<'a> {
    field: &'a Field,
    coeffs: &'a [Elem],
    target: Elem,
    weights: Vec<BigInt>,
    memo: HashMap<DeltaKey, BigInt>,
}

impl Reduction<'_> {
    fn full_count(&self, mask: usize) -> Result<BigInt> {
        let size = mask.count_ones() as usize;
        if size == 0 {
            return Ok(BigInt::from(self.target.is_zero() as u8));
        }
        if size > self.field.order() as usize {
            return Ok(BigInt::zero());
        }
        count_from_weight(self.field, size, self.target, &self.weights[mask])
    }

    fn units_count(&mut self, mask: usize) -> Result<BigInt> {
        let members: Vec<Elem> = (0..self.coeffs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.coeffs[i])
            .collect();
        if members.len() >= self.field.order() as usize {
            return Ok(BigInt::zero());
        }
        let key = DeltaKey::new(&members);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let mut value = self.full_count(mask)?;
        if mask != 0 {
            for i in 0..self.coeffs.len() {
                if mask >> i & 1 == 1 {
                    value -= self.units_count(mask & !(1 << i))?;
                }
            }
        }
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

pub fn count_units(inst: &Instance<'_>, budgets: &Budgets) -> Result<CountResult> {
    if inst.domain != Domain::Units {
        return Err(Error::NotApplicable {
            method: "units-reduction".into(),
            reason: "requires domain = units".into(),
        });
    }
    if inst.pigeonholed() {
        return Ok(CountResult::new(0, Method::Units));
    }
    let k = inst.k();
    if k > budgets.units_k || k > budgets.sieve_k {
        return Err(Error::BudgetExceeded {
            engine: "units-reduction",
            needed: format!("k = {k}"),
            budget: format!("k <= {}", budgets.units_k.min(budgets.sieve_k)),
        });
    }
    let mut reduction = Reduction {
        field: inst.field,
        coeffs: &inst.coeffs,
        target: inst.target,
        weights: sieve_table(&inst.coeffs, inst.field)?,
        memo: HashMap::new(),
    };
    let n = reduction.units_count((1 << k) - 1)?;
    Ok(CountResult::new(n, Method::Units))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units(q: &str, coeffs: &[u64], b: u64) -> BigInt {
        let field = Field::new(q.parse().unwrap());
        let inst = Instance::from_encodings(&field, coeffs, b, Domain::Units).unwrap();
        count_units(&inst, &Budgets::default()).unwrap().count
    }

    #[test]
    fn spec_examples() {
        assert_eq!(units("5", &[1, 4], 1), BigInt::from(3));
        assert_eq!(units("5", &[1, 4], 0), BigInt::from(0));
        assert_eq!(units("5", &[1], 2), BigInt::from(1));
        assert_eq!(units("5", &[0], 0), BigInt::from(4));
        assert_eq!(units("5", &[1, 1, 1, 1, 1], 0), BigInt::from(0));
    }

    #[test]
    fn rejects_full_domain() {
        let field = Field::prime(5).unwrap();
        let inst = Instance::from_encodings(&field, &[1], 1, Domain::Full).unwrap();
        assert!(count_units(&inst, &Budgets::default()).is_err());
    }
}

//! The difference kernel d(a) = N_{F*}(a; 1) - N_{F*}(a; 0) and the count
//! it determines.
//!
//! d depends only on the multiset of coefficients, so it is memoized on the
//! sorted encodings. That collapses the k! expansion of the naive
//! recursion to at most one evaluation per sub-multiset.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{exact_div, nu, uniform_share, CountResult, Instance, Method};
use crate::algebra::{Elem, Field, FieldSpec};
use crate::error::Result;

/// Canonical multiset key: coefficient encodings in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaKey(Vec<u32>);

impl DeltaKey {
    pub fn new(coeffs: &[Elem]) -> Self {
        let mut v: Vec<u32> = coeffs.iter().map(|a| a.encoding()).collect();
        v.sort_unstable();
        DeltaKey(v)
    }

    pub fn encodings(&self) -> &[u32] {
        &self.0
    }
}

/// Memo table for [`delta`]. Bound to one field; handing it a different
/// field clears it.
#[derive(Clone, Debug, Default)]
pub struct DeltaMemo {
    spec: Option<FieldSpec>,
    table: HashMap<DeltaKey, BigInt>,
}

impl DeltaMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    fn bind(&mut self, field: &Field) {
        if self.spec.as_ref() != Some(field.spec()) {
            self.spec = Some(field.spec().clone());
            self.table.clear();
        }
    }
}

/// d(a_1, ..., a_k). The empty multiset gets d() = 0 - 1 = -1, which the
/// k = 1, a_1 = 0 count needs.
pub fn delta(coeffs: &[Elem], field: &Field, memo: &mut DeltaMemo) -> BigInt {
    memo.bind(field);
    delta_sorted(DeltaKey::new(coeffs), field, memo)
}

fn delta_sorted(key: DeltaKey, field: &Field, memo: &mut DeltaMemo) -> BigInt {
    if let Some(v) = memo.table.get(&key) {
        return v.clone();
    }
    let enc = key.encodings();
    let k = enc.len();
    let value = match k {
        0 => BigInt::from(-1),
        1 => BigInt::from(-nu(Elem::from_encoding(enc[0]), field)),
        _ => {
            let sum = field.sum(enc.iter().map(|&e| Elem::from_encoding(e)));
            if sum.is_zero() {
                // Every drop gives the same value here; take the largest encoding.
                let rest = DeltaKey(enc[..k - 1].to_vec());
                (field.order() as i64 - k as i64) * delta_sorted(rest, field, memo)
            } else {
                let mut total = BigInt::zero();
                let mut i = 0;
                while i < k {
                    let mut j = i;
                    while j < k && enc[j] == enc[i] {
                        j += 1;
                    }
                    let mut rest = enc.to_vec();
                    rest.remove(i);
                    total += (j - i) * delta_sorted(DeltaKey(rest), field, memo);
                    i = j;
                }
                -total
            }
        }
    };
    memo.table.insert(key, value.clone());
    value
}

/// Count via the d(·) recurrence. Full domain only.
pub fn count_recurrence(inst: &Instance<'_>) -> Result<CountResult> {
    inst.require_full("recurrence")?;
    if inst.pigeonholed() {
        return Ok(CountResult::new(0, Method::Recurrence));
    }
    let field = inst.field;
    let share = uniform_share(field.order(), inst.k())?;
    if !inst.coeff_sum().is_zero() {
        return Ok(CountResult::new(share, Method::Recurrence));
    }
    let mut memo = DeltaMemo::new();
    let mut bracket = delta(&inst.coeffs, field, &mut memo);
    for i in 0..inst.k() {
        let mut dropped = inst.coeffs.clone();
        dropped.remove(i);
        bracket += delta(&dropped, field, &mut memo);
    }
    let correction = exact_div(
        &(bracket * nu(inst.target, field)),
        &BigInt::from(field.order()),
        "v(b) (d(a) + sum d(a drop i)) / q",
    )?;
    Ok(CountResult::new(share - correction, Method::Recurrence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Domain;

    fn elems(field: &Field, xs: &[u64]) -> Vec<Elem> {
        xs.iter().map(|&x| field.elem(x).unwrap()).collect()
    }

    #[test]
    fn delta_examples() {
        let f5 = Field::prime(5).unwrap();
        let mut memo = DeltaMemo::new();
        assert_eq!(delta(&elems(&f5, &[0]), &f5, &mut memo), BigInt::from(-4));
        assert_eq!(delta(&elems(&f5, &[1, 4]), &f5, &mut memo), BigInt::from(3));
        assert_eq!(delta(&elems(&f5, &[1, 1]), &f5, &mut memo), BigInt::from(-2));
        assert_eq!(delta(&[], &f5, &mut memo), BigInt::from(-1));
    }

    #[test]
    fn memo_rebinds_on_field_change() {
        let f5 = Field::prime(5).unwrap();
        let f7 = Field::prime(7).unwrap();
        let mut memo = DeltaMemo::new();
        assert_eq!(delta(&elems(&f5, &[0]), &f5, &mut memo), BigInt::from(-4));
        assert_eq!(delta(&elems(&f7, &[0]), &f7, &mut memo), BigInt::from(-6));
    }

    #[test]
    fn key_is_permutation_invariant() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(
            DeltaKey::new(&elems(&f7, &[3, 1, 2])),
            DeltaKey::new(&elems(&f7, &[2, 3, 1]))
        );
    }

    #[test]
    fn recurrence_examples() {
        let f5 = Field::prime(5).unwrap();
        let run = |c: &[u64], b: u64| {
            let inst = Instance::from_encodings(&f5, c, b, Domain::Full).unwrap();
            count_recurrence(&inst).unwrap().count
        };
        assert_eq!(run(&[1, 4], 0), BigInt::from(0));
        assert_eq!(run(&[1, 4], 2), BigInt::from(5));
        assert_eq!(run(&[1, 1], 0), BigInt::from(4));
        assert_eq!(run(&[0], 0), BigInt::from(5));
        assert_eq!(run(&[0], 3), BigInt::from(0));
    }
}

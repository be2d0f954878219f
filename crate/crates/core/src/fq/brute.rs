use num_bigint::BigInt;

use super::{Budgets, CountResult, Instance, Method};
use crate::algebra::{Domain, Elem, Field};
use crate::combinatorics::falling_factorial;
use crate::error::{Error, Result};

struct Search<'a> {
    field: &'a Field,
    domain: Vec<Elem>,
    used: Vec<bool>,
    // coefficients of the enumerated positions
    free: Vec<Elem>,
    target: Elem,
    // inverse of the solved-for coefficient, and whether it may take 0
    pivot: Option<(Elem, bool)>,
    count: u64,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, partial: Elem) {
        if depth == self.free.len() {
            self.leaf(partial);
            return;
        }
        let a = self.free[depth];
        for idx in 0..self.domain.len() {
            let x = self.domain[idx];
            if self.used[x.encoding() as usize] {
                continue;
            }
            self.used[x.encoding() as usize] = true;
            let next = self.field.add(partial, self.field.mul(a, x));
            self.run(depth + 1, next);
            self.used[x.encoding() as usize] = false;
        }
    }

    fn leaf(&mut self, partial: Elem) {
        match self.pivot {
            None => {
                if partial == self.target {
                    self.count += 1;
                }
            }
            Some((inv, zero_allowed)) => {
                let x = self.field.mul(self.field.sub(self.target, partial), inv);
                if (zero_allowed || !x.is_zero()) && !self.used[x.encoding() as usize] {
                    self.count += 1;
                }
            }
        }
    }
}

/// Ground truth by enumeration. One coordinate whose coefficient is nonzero
/// is solved for; the rest range over injective tuples of D.
pub fn count_brute(inst: &Instance<'_>, budgets: &Budgets) -> Result<CountResult> {
    if inst.pigeonholed() {
        return Ok(CountResult::new(0, Method::Brute));
    }
    let field = inst.field;
    let k = inst.k();
    let size = field.domain_size(inst.domain) as i64;
    let pivot_index = inst.coeffs.iter().rposition(|a| !a.is_zero());
    let enumerated = if pivot_index.is_some() { k - 1 } else { k };
    let cost = falling_factorial(size, enumerated as i64)?;
    if cost > BigInt::from(budgets.brute_tuples) {
        return Err(Error::BudgetExceeded {
            engine: "brute",
            needed: format!("{cost} tuples"),
            budget: budgets.brute_tuples.to_string(),
        });
    }
    let mut free = inst.coeffs.clone();
    let pivot = match pivot_index {
        Some(i) => {
            let a = free.remove(i);
            Some((field.inv(a)?, inst.domain == Domain::Full))
        }
        None => None,
    };
    let mut search = Search {
        field,
        domain: field.elements(inst.domain).collect(),
        used: vec![false; field.order() as usize],
        free,
        target: inst.target,
        pivot,
        count: 0,
    };
    search.run(0, Elem::ZERO);
    Ok(CountResult::new(search.count, Method::Brute))
}

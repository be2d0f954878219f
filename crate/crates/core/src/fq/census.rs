//! Permutation polynomials of reduced degree at most q - 3.
//!
//! Writing `x_i = f(ω^{i-1})` for a bijection f of F_q with f(0) = 0, the
//! degree condition is `Σ_c c f(c) = 0`, so the census equals
//! N_{F*}(1, ω, ..., ω^{q-2}; 0).

use num_bigint::BigInt;

use super::{count_units, Budgets, Instance};
use crate::algebra::{Domain, Elem, Field};
use crate::error::{Error, Result};

pub const MAX_CENSUS_Q: u32 = 13;
/// (q-1)! bijections are enumerated by the interpolation cross-check.
const MAX_INTERPOLATION_Q: u32 = 9;

fn check_q(field: &Field, limit: u32, engine: &'static str) -> Result<()> {
    let q = field.order();
    if q < 3 {
        return Err(Error::Unsupported(format!(
            "census needs q >= 3 (degree q - 3 is negative for q = {q})"
        )));
    }
    if q > limit {
        return Err(Error::BudgetExceeded {
            engine,
            needed: format!("q = {q}"),
            budget: format!("q <= {limit}"),
        });
    }
    Ok(())
}

/// Bijections f of F_q with f(0) = 0 and reduced degree <= q - 3, counted
/// as a units-domain distinct-coordinate count.
pub fn perm_poly_census(field: &Field, budgets: &Budgets) -> Result<BigInt> {
    check_q(field, MAX_CENSUS_Q, "census")?;
    let omega = field.primitive_element();
    let coeffs: Vec<Elem> = (0..field.order() as u64 - 1).map(|i| field.pow(omega, i)).collect();
    let inst = Instance::new(field, coeffs, Elem::ZERO, Domain::Units)?;
    let budgets = Budgets {
        units_k: budgets.units_k.max(MAX_CENSUS_Q as usize),
        sieve_k: budgets.sieve_k.max(MAX_CENSUS_Q as usize),
        ..*budgets
    };
    Ok(count_units(&inst, &budgets)?.count)
}

fn next_permutation(a: &mut [Elem]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// The same census by brute force: interpolate every bijection fixing 0 and
/// read off its degree.
pub fn perm_poly_census_by_interpolation(field: &Field) -> Result<BigInt> {
    check_q(field, MAX_INTERPOLATION_Q, "interpolation census")?;
    let q = field.order() as usize;
    // basis[c] = coefficients of 1 - (x - c)^{q-1}, the indicator of c
    let basis: Vec<Vec<Elem>> = field
        .elements(Domain::Full)
        .map(|c| {
            let mut poly = vec![Elem::ONE];
            let minus_c = field.neg(c);
            for _ in 0..q - 1 {
                let mut next = vec![Elem::ZERO; poly.len() + 1];
                for (i, &coef) in poly.iter().enumerate() {
                    next[i + 1] = field.add(next[i + 1], coef);
                    next[i] = field.add(next[i], field.mul(coef, minus_c));
                }
                poly = next;
            }
            let mut indicator: Vec<Elem> = poly.iter().map(|&x| field.neg(x)).collect();
            indicator[0] = field.add(indicator[0], Elem::ONE);
            indicator
        })
        .collect();
    let mut images: Vec<Elem> = field.elements(Domain::Units).collect();
    let mut count = 0u64;
    loop {
        let mut coeffs = vec![Elem::ZERO; q];
        // f(0) = 0 contributes nothing
        for (c, &image) in images.iter().enumerate() {
            for (slot, &b) in coeffs.iter_mut().zip(&basis[c + 1]) {
                *slot = field.add(*slot, field.mul(image, b));
            }
        }
        let degree = coeffs.iter().rposition(|x| !x.is_zero()).unwrap_or(0);
        if degree + 3 <= q {
            count += 1;
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    Ok(BigInt::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q5_has_four() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(perm_poly_census(&f5, &Budgets::default()).unwrap(), BigInt::from(4));
        assert_eq!(perm_poly_census_by_interpolation(&f5).unwrap(), BigInt::from(4));
    }

    #[test]
    fn q3_has_none() {
        // Reduced degree <= 0 means constant, never a bijection.
        let f3 = Field::prime(3).unwrap();
        assert_eq!(perm_poly_census(&f3, &Budgets::default()).unwrap(), BigInt::from(0));
        assert_eq!(perm_poly_census_by_interpolation(&f3).unwrap(), BigInt::from(0));
    }

    #[test]
    fn q2_is_unsupported() {
        let f2 = Field::prime(2).unwrap();
        assert!(matches!(
            perm_poly_census(&f2, &Budgets::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn too_large() {
        let f16 = Field::with_params(2, 4, None).unwrap();
        assert!(perm_poly_census(&f16, &Budgets::default()).unwrap_err().is_budget());
    }
}

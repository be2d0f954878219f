use num_traits::Zero;

use super::{count_sieve, Budgets, Instance};
use crate::error::Result;

/// Whether a distinct-coordinate solution exists (full domain).
///
/// For b ≠ 0 and q ≥ 3 this is decided structurally: a solution exists
/// unless all coefficients vanish (k < q), or k = q and all coefficients
/// are equal. Otherwise the count is computed.
pub fn exists_distinct(inst: &Instance<'_>, budgets: &Budgets) -> Result<bool> {
    inst.require_full("exists")?;
    let q = inst.field.order() as usize;
    let k = inst.k();
    if k > q {
        return Ok(false);
    }
    if !inst.target.is_zero() && q >= 3 {
        let first = inst.coeffs[0];
        let all_equal = inst.coeffs.iter().all(|&a| a == first);
        let blocked = (k < q && all_equal && first.is_zero()) || (k == q && all_equal);
        return Ok(!blocked);
    }
    Ok(!count_sieve(inst, budgets)?.count.is_zero())
}

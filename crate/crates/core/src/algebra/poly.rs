//! Dense polynomials over a prime field, coefficients stored low degree first.
//!
//! These routines back field construction (irreducibility, default modulus)
//! and serve as the slow reference multiplication that the table-driven
//! field arithmetic is checked against.

/// Strip trailing zero coefficients.
fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn inv_mod_p(x: u32, p: u32) -> u32 {
    // p is prime, so x^(p-2) is the inverse.
    let (mut base, mut exp, mut acc) = (x as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// Remainder of `a` divided by `b` over F_p. `b` must be nonzero.
pub fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod_p(b[db], p) as u64;
    let p64 = p as u64;
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let factor = r[dr] as u64 * lead_inv % p64;
        let shift = dr - db;
        for (i, &c) in b.iter().enumerate().take(db + 1) {
            let sub = factor * c as u64 % p64;
            let slot = &mut r[shift + i];
            *slot = ((*slot as u64 + p64 - sub) % p64) as u32;
        }
        r = trim(r);
    }
    r
}

/// Product of `a` and `b` reduced modulo `modulus` over F_p.
pub fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    rem(&prod, modulus, p)
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..=deg/2.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let Some(m) = degree(f) else {
        return false;
    };
    if m == 0 {
        return false;
    }
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                g.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            g.push(1);
            if degree(&rem(f, &g, p)).is_none() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `m`, scanning the tuple
/// `(c_0, ..., c_{m-1})` in lexicographic order (c_0 most significant).
pub fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let m = m as usize;
    let total = (p as u64).pow(m as u32);
    for idx in 0..total {
        let mut coeffs = vec![0u32; m + 1];
        let mut rest = idx;
        for slot in (0..m).rev() {
            coeffs[slot] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[m] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_for_small_fields() {
        assert_eq!(default_modulus(3, 1), vec![0, 1]);
        assert_eq!(default_modulus(3, 2), vec![1, 0, 1]);
        assert_eq!(default_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(default_modulus(2, 3), vec![1, 0, 1, 1]);
        assert_eq!(default_modulus(2, 4), vec![1, 0, 0, 1, 1]);
    }

    #[test]
    fn reducible_examples() {
        // t^2 + 1 = (t + 1)^2 over F_2
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // t^2 + 1 over F_5 has roots 2, 3
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(is_irreducible(&[2, 1], 7));
    }

    #[test]
    fn t_squared_is_minus_one_mod_t2_plus_1() {
        assert_eq!(mul_mod(&[0, 1], &[0, 1], &[1, 0, 1], 3), vec![2]);
    }
}

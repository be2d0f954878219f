/// Greedy reduction of a failing `(coeffs, target)` pair over integer
/// encodings: drop coefficients, lower each encoding, then lower the target,
/// repeating until no single step keeps the failure.
pub fn shrink<F>(mut coeffs: Vec<u64>, mut target: u64, fails: F) -> (Vec<u64>, u64)
where
    F: Fn(&[u64], u64) -> bool,
{
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < coeffs.len() && coeffs.len() > 1 {
            let mut candidate = coeffs.clone();
            candidate.remove(i);
            if fails(&candidate, target) {
                coeffs = candidate;
                changed = true;
            } else {
                i += 1;
            }
        }
        for i in 0..coeffs.len() {
            for v in 0..coeffs[i] {
                let mut candidate = coeffs.clone();
                candidate[i] = v;
                if fails(&candidate, target) {
                    coeffs = candidate;
                    changed = true;
                    break;
                }
            }
        }
        if let Some(t) = (0..target).find(|&t| fails(&coeffs, t)) {
            target = t;
            changed = true;
        }
        if !changed {
            return (coeffs, target);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reaches_a_local_minimum() {
        // fails whenever some coefficient is at least 3 and the target is odd
        let fails = |c: &[u64], t: u64| c.iter().any(|&x| x >= 3) && t % 2 == 1;
        let (c, t) = shrink(vec![1, 7, 0, 5], 9, fails);
        assert_eq!((c, t), (vec![3], 1));
    }

    #[test]
    fn keeps_one_coefficient() {
        let (c, t) = shrink(vec![4, 4], 0, |_: &[u64], _| true);
        assert_eq!((c, t), (vec![0], 0));
    }
}

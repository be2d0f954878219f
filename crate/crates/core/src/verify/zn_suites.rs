use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{shrink, Record, Suite, Tally, VerifyConfig};
use crate::algebra::{Domain, Field, RingSpec};
use crate::error::{Error, Result};
use crate::fq::{self, Instance};
use crate::zn::{self, ZInstance};

/// Largest k drawn by the closed-form suite.
const BIBAK_MAX_K: u64 = 4;
/// k up to this is swept exhaustively; one more is sampled.
const EXHAUSTIVE_K: usize = 3;

type Counts = Vec<(&'static str, Result<BigInt>)>;

fn describe(inst: &ZInstance) -> String {
    let coeffs: Vec<String> = inst.coeffs.iter().map(u64::to_string).collect();
    format!("ring {} coeffs [{}] target {}", inst.ring, coeffs.join(","), inst.target)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn sieve_counts(inst: &ZInstance, cfg: &VerifyConfig, prime_field: Option<&Field>) -> Counts {
    let mut counts = vec![
        ("partition", zn::count_partition_sieve_zn(inst, &cfg.budgets)),
        ("brute", zn::count_brute_zn(inst, &cfg.budgets)),
    ];
    if let Some(field) = prime_field {
        let as_field = Instance::from_encodings(field, &inst.coeffs, inst.target, Domain::Full)
            .and_then(|fi| fq::count_sieve(&fi, &cfg.budgets))
            .map(|r| r.count);
        counts.push(("fq-sieve", as_field));
    }
    counts
}

fn reproducer(
    tally: &Tally,
    ring: RingSpec,
    coeffs: Vec<u64>,
    target: u64,
    counts: &dyn Fn(&ZInstance) -> Counts,
) -> Result<Record> {
    let fails = |c: &[u64], t: u64| {
        ZInstance::new(ring, c.to_vec(), t)
            .and_then(|inst| tally.record(String::new(), counts(&inst)))
            .is_ok_and(|r| !r.agree)
    };
    let (c, t) = shrink(coeffs, target, fails);
    let inst = ZInstance::new(ring, c, t)?;
    tally.record(describe(&inst), counts(&inst))
}

fn check(
    tally: &mut Tally,
    inst: &ZInstance,
    counts: &dyn Fn(&ZInstance) -> Counts,
) -> Result<()> {
    let ok = tally.check(|| describe(inst), counts(inst))?;
    if !ok && tally.wants_reproducer() {
        let r = reproducer(tally, inst.ring, inst.coeffs.clone(), inst.target, counts)?;
        tally.set_reproducer(r);
    }
    Ok(())
}

pub(crate) fn bibak(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let mut rng = cfg.sampler(Suite::Bibak);
    let counts = |inst: &ZInstance| -> Counts {
        let closed = zn::count_bibak(inst).and_then(|r| {
            r.ok_or_else(|| Error::NotApplicable {
                method: "closed".into(),
                reason: "precondition rejected".into(),
            })
        });
        vec![
            ("bibak", closed),
            ("partition", zn::count_partition_sieve_zn(inst, &cfg.budgets)),
            ("brute", zn::count_brute_zn(inst, &cfg.budgets)),
        ]
    };
    // k cycles through 1..=4 so every size gets the same share; n and the
    // coefficients are redrawn until the precondition holds
    let max_attempts = cfg.bibak_samples.saturating_mul(1000).max(1000);
    let (mut accepted, mut attempts) = (0usize, 0usize);
    while accepted < cfg.bibak_samples && attempts < max_attempts {
        attempts += 1;
        let k = 1 + (accepted as u64 % BIBAK_MAX_K);
        let n = 1 + rng.below(cfg.bibak_max_n.max(1));
        if k > n {
            continue;
        }
        let coeffs = rng.vec_below(k as usize, n);
        let target = rng.below(n);
        if !zn::bibak_precondition(&coeffs, n) {
            continue;
        }
        accepted += 1;
        let g = coeffs.iter().fold(0u64, |s, &a| (s + a) % n).gcd(&n);
        tally.cover(if target.is_multiple_of(g) { "g-divides-b" } else { "g-not-divides-b" });
        tally.cover(format!("k{k}"));
        check(tally, &ZInstance::new(RingSpec::new(n)?, coeffs, target)?, &counts)?;
    }
    tally.check(
        || "accepted draws".into(),
        vec![
            ("accepted", Ok(BigInt::from(accepted))),
            ("requested", Ok(BigInt::from(cfg.bibak_samples))),
        ],
    )?;
    Ok(())
}

/// Advance `digits` as a base-`n` counter; false after the last value.
fn odometer(digits: &mut [u64], n: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < n {
            return true;
        }
        *d = 0;
    }
    false
}

pub(crate) fn zn_sieve(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let mut rng = cfg.sampler(Suite::ZnSieve);
    for n in 1..=cfg.max_n {
        let ring = RingSpec::new(n)?;
        let field = if is_prime(n) { Some(Field::prime(n)?) } else { None };
        let counts = |inst: &ZInstance| sieve_counts(inst, cfg, field.as_ref());
        for k in 1..=EXHAUSTIVE_K {
            let mut coeffs = vec![0u64; k];
            loop {
                let mut mass = BigInt::zero();
                for target in 0..n {
                    let inst = ZInstance::new(ring, coeffs.clone(), target)?;
                    check(tally, &inst, &counts)?;
                    mass += zn::count_partition_sieve_zn(&inst, &cfg.budgets)?;
                    tally.cover(format!("exhaustive-k{k}"));
                    if field.is_some() {
                        tally.cover("prime-cross-check");
                    }
                }
                let falling = crate::combinatorics::falling_factorial(n as i64, k as i64);
                let inst = ZInstance::new(ring, coeffs.clone(), 0)?;
                tally.check(
                    || format!("total-mass: {}", describe(&inst)),
                    vec![("sum-over-b", Ok(mass)), ("falling", falling)],
                )?;
                if !odometer(&mut coeffs, n) {
                    break;
                }
            }
        }
        let k = EXHAUSTIVE_K + 1;
        for _ in 0..cfg.samples {
            let inst = ZInstance::new(ring, rng.vec_below(k, n), rng.below(n))?;
            check(tally, &inst, &counts)?;
            tally.cover(format!("sampled-k{k}"));
        }
    }
    Ok(())
}

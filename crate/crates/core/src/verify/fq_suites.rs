use num_bigint::BigInt;
use num_traits::Zero;

use super::{shrink, Fault, Record, Suite, Tally, VerifyConfig};
use crate::algebra::{Domain, Elem, Field, FieldSpec};
use crate::combinatorics::factorial;
use crate::error::{Error, Result};
use crate::fq::{self, ClosedForm, CountResult, Instance, Method};

/// Every field of order at most `max_q`, with default moduli.
pub(crate) fn fields_up_to(max_q: u32) -> Result<Vec<Field>> {
    Ok((2..=max_q as u64)
        .filter_map(|q| FieldSpec::with_order(q).ok())
        .map(Field::new)
        .collect())
}

fn fields(orders: &[u64]) -> Result<Vec<Field>> {
    orders.iter().map(|&q| Ok(Field::new(FieldSpec::with_order(q)?))).collect()
}

fn join(values: impl IntoIterator<Item = u64>) -> String {
    values.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn describe(inst: &Instance<'_>) -> String {
    format!(
        "field {} coeffs [{}] target {} domain {}",
        inst.field.spec(),
        join(inst.coeffs.iter().map(|a| a.encoding() as u64)),
        inst.target.encoding(),
        inst.domain
    )
}

fn encodings(coeffs: &[Elem]) -> Vec<u64> {
    coeffs.iter().map(|a| a.encoding() as u64).collect()
}

type Counts = Vec<(&'static str, Result<BigInt>)>;

fn sieve_count(inst: &Instance<'_>, cfg: &VerifyConfig) -> Result<BigInt> {
    let n = fq::count_sieve(inst, &cfg.budgets)?.count;
    match cfg.fault {
        // share + c becomes share - c
        Some(Fault::FlipSieveSign) => {
            Ok(fq::uniform_share(inst.field.order(), inst.k())? * 2 - n)
        }
        None => Ok(n),
    }
}

fn full_counts(inst: &Instance<'_>, cfg: &VerifyConfig) -> Counts {
    let b = &cfg.budgets;
    let mut counts = vec![
        ("brute", fq::count_brute(inst, b).map(|r| r.count)),
        ("recurrence", fq::count_recurrence(inst).map(|r| r.count)),
        ("sieve-dp", sieve_count(inst, cfg)),
        ("partition", fq::count_partition_oracle(inst, b).map(|r| r.count)),
    ];
    match fq::count_closed_form(inst) {
        Ok(Some(r)) => counts.push(("closed", Ok(r.count))),
        Ok(None) => {}
        Err(e) => counts.push(("closed", Err(e))),
    }
    counts
}

fn units_counts(inst: &Instance<'_>, cfg: &VerifyConfig) -> Counts {
    vec![
        ("brute", fq::count_brute(inst, &cfg.budgets).map(|r| r.count)),
        ("units-reduction", fq::count_units(inst, &cfg.budgets).map(|r| r.count)),
    ]
}

/// Shrink a failing sampled instance and render it.
fn reproducer(
    tally: &Tally,
    field: &Field,
    domain: Domain,
    coeffs: Vec<u64>,
    target: u64,
    counts: &dyn Fn(&Instance<'_>) -> Counts,
) -> Result<Record> {
    let fails = |c: &[u64], t: u64| {
        Instance::from_encodings(field, c, t, domain)
            .and_then(|inst| tally.record(String::new(), counts(&inst)))
            .is_ok_and(|r| !r.agree)
    };
    let (c, t) = shrink(coeffs, target, fails);
    let inst = Instance::from_encodings(field, &c, t, domain)?;
    tally.record(describe(&inst), counts(&inst))
}

fn sampled(
    cfg: &VerifyConfig,
    tally: &mut Tally,
    suite: Suite,
    domain: Domain,
    counts: &dyn Fn(&Instance<'_>) -> Counts,
) -> Result<()> {
    let mut rng = cfg.sampler(suite);
    for field in fields_up_to(cfg.max_q)? {
        let q = field.order() as u64;
        for k in 1..=cfg.max_k {
            for _ in 0..cfg.samples {
                let coeffs = rng.vec_below(k, q);
                let target = rng.below(q);
                let inst = Instance::from_encodings(&field, &coeffs, target, domain)?;
                if domain == Domain::Full {
                    if let Ok(Some(r)) = fq::count_closed_form(&inst) {
                        tally.cover(r.method.to_string());
                    }
                    tally.cover(if inst.coeff_sum().is_zero() { "sum-zero" } else { "sum-nonzero" });
                } else if k >= q as usize {
                    tally.cover("pigeonhole");
                }
                let ok = tally.check(|| describe(&inst), counts(&inst))?;
                if !ok && tally.wants_reproducer() {
                    let r = reproducer(tally, &field, domain, coeffs, target, counts)?;
                    tally.set_reproducer(r);
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn cross_method(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    sampled(cfg, tally, Suite::CrossMethod, Domain::Full, &|inst| full_counts(inst, cfg))
}

pub(crate) fn units(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    sampled(cfg, tally, Suite::Units, Domain::Units, &|inst| units_counts(inst, cfg))
}

pub(crate) fn invariants(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let mut rng = cfg.sampler(Suite::Invariants);
    let budgets = &cfg.budgets;
    for field in fields_up_to(cfg.max_q)? {
        let q = field.order() as u64;
        let full = |a: &[Elem], b: Elem| -> Result<BigInt> {
            let inst = Instance::new(&field, a.to_vec(), b, Domain::Full)?;
            Ok(fq::count_sieve(&inst, budgets)?.count)
        };
        let units = |a: &[Elem], b: Elem| -> Result<BigInt> {
            if a.is_empty() {
                return Ok(BigInt::from(b.is_zero() as u8));
            }
            let inst = Instance::new(&field, a.to_vec(), b, Domain::Units)?;
            Ok(fq::count_units(&inst, budgets)?.count)
        };
        let drop = |a: &[Elem], i: usize| -> Vec<Elem> {
            let mut v = a.to_vec();
            v.remove(i);
            v
        };
        for k in 1..=cfg.max_k {
            for _ in 0..cfg.samples {
                let a: Vec<Elem> = rng.vec_below(k, q).into_iter().map(|x| field.elem(x)).collect::<Result<_>>()?;
                let b = field.elem(rng.below(q))?;
                let inst = Instance::new(&field, a.clone(), b, Domain::Full)?;
                let label = |name: &str| format!("{name}: {}", describe(&inst));
                let n = full(&a, b);

                let mut mass = Ok(BigInt::zero());
                for t in field.elements(Domain::Full) {
                    mass = mass.and_then(|m| Ok(m + full(&a, t)?));
                }
                let falling = crate::combinatorics::falling_factorial(q as i64, k as i64);
                tally.check(|| label("total-mass"), vec![("sum-over-b", mass), ("falling", falling)])?;
                tally.cover("total-mass");

                let c = field.elem(rng.below(q))?;
                let shifted = field.add(b, field.mul(inst.coeff_sum(), c));
                tally.check(
                    || label(&format!("shift by {}", c.encoding())),
                    vec![("n", n.clone()), ("shifted", full(&a, shifted))],
                )?;
                tally.cover("shift");

                let lambda = field.elem(1 + rng.below(q - 1))?;
                let scaled: Vec<Elem> = a.iter().map(|&x| field.mul(lambda, x)).collect();
                tally.check(
                    || label(&format!("scale by {}", lambda.encoding())),
                    vec![("n", n.clone()), ("scaled", full(&scaled, field.mul(lambda, b)))],
                )?;
                tally.cover("scale");

                let mut permuted = a.clone();
                permuted.reverse();
                permuted.rotate_left(rng.below(k as u64) as usize);
                tally.check(
                    || label(&format!("permuted to [{}]", join(encodings(&permuted)))),
                    vec![("n", n.clone()), ("permuted", full(&permuted, b))],
                )?;
                tally.cover("permutation");

                let mut split = units(&a, b);
                for i in 0..k {
                    split = split.and_then(|s| Ok(s + units(&drop(&a, i), b)?));
                }
                tally.check(|| label("zero-split"), vec![("full", n.clone()), ("units-split", split)])?;
                tally.cover("zero-split");

                if inst.coeff_sum().is_zero() {
                    for i in 0..k {
                        let times_q = units(&drop(&a, i), b).map(|u| u * q);
                        tally.check(
                            || label(&format!("zero-sum drop {i}")),
                            vec![("full", n.clone()), ("q-times-units", times_q)],
                        )?;
                    }
                    tally.cover("zero-sum-drop");
                }

                let exists = fq::exists_distinct(&inst, budgets).map(|e| BigInt::from(e as u8));
                let positive = n.as_ref().map(|v| BigInt::from((*v > BigInt::zero()) as u8)).map_err(Clone::clone);
                tally.check(|| label("existence"), vec![("predicate", exists), ("count-positive", positive)])?;
                tally.cover("existence");
            }
        }
    }
    Ok(())
}

/// Count through the dispatcher, insisting on a particular closed form.
fn closed_as(inst: &Instance<'_>, expected: impl Fn(ClosedForm) -> bool) -> Result<BigInt> {
    match fq::count_closed_form(inst)? {
        Some(CountResult {
            count,
            method: Method::ClosedForm(c),
        }) if expected(c) => Ok(count),
        other => Err(Error::NotApplicable {
            method: "closed".into(),
            reason: match other {
                Some(r) => format!("dispatcher chose {}", r.method),
                None => "dispatcher found no closed form".into(),
            },
        }),
    }
}

pub(crate) fn all_equal(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let budgets = &cfg.budgets;
    for field in fields(&[4, 5, 8, 9])? {
        let (q, p) = (field.order() as usize, field.p() as usize);
        for k in 1..=q.min(6) {
            for lambda in field.elements(Domain::Units) {
                for b in field.elements(Domain::Full) {
                    let inst = Instance::new(&field, vec![lambda; k], b, Domain::Full)?;
                    let scaled = field.div(b, lambda)?;
                    tally.check(
                        || describe(&inst),
                        vec![
                            ("formula", fq::count_all_ones(&field, k, scaled)),
                            ("dispatcher", closed_as(&inst, |c| c == ClosedForm::AllEqual)),
                            ("brute", fq::count_brute(&inst, budgets).map(|r| r.count)),
                        ],
                    )?;
                    tally.cover(if k % p == 0 { "p-divides-k" } else { "p-not-divides-k" });
                }
            }
        }
    }
    for (q, k, expected) in [(4u64, 2usize, 0u64), (5, 5, 120)] {
        let field = &fields(&[q])?[0];
        let inst = Instance::new(field, vec![Elem::ONE; k], Elem::ZERO, Domain::Full)?;
        tally.check(
            || describe(&inst),
            vec![
                ("expected", Ok(BigInt::from(expected))),
                ("formula", fq::count_all_ones(field, k, Elem::ZERO)),
            ],
        )?;
        tally.cover("worked-example");
    }
    Ok(())
}

pub(crate) fn two_exceptional(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let budgets = &cfg.budgets;
    for field in fields(&[3, 4, 5, 8, 9])? {
        let p = field.p() as u64;
        for k in 3..=5usize {
            for a1 in field.elements(Domain::Full) {
                for a2 in field.elements(Domain::Full) {
                    let mut coeffs = vec![a1, a2];
                    coeffs.resize(k, Elem::ONE);
                    let case = fq::two_exceptional_case(&field, a1, a2, k);
                    let mut keys = vec![format!("case{case}")];
                    if case == 3 {
                        let (x1, x2) = (a1.encoding() as u64, a2.encoding() as u64);
                        if x1 != 1 && x2 != 1 {
                            let s = (p + 1 - x1) % p + (p + 1 - x2) % p;
                            keys.push(if s <= p { "case3-in-A" } else { "case3-outside-A" }.into());
                            if s == p {
                                keys.push("case3-boundary".into());
                                if (k as u64).is_multiple_of(p) {
                                    keys.push("case3-boundary-p-divides-k".into());
                                }
                            }
                        } else {
                            keys.push("case3-coefficient-one".into());
                        }
                    }
                    for b in [Elem::ZERO, Elem::ONE] {
                        let inst = Instance::new(&field, coeffs.clone(), b, Domain::Full)?;
                        tally.check(
                            || describe(&inst),
                            vec![
                                (
                                    "formula",
                                    fq::count_two_exceptional(&field, a1, a2, k, b).map(|r| r.0),
                                ),
                                ("brute", fq::count_brute(&inst, budgets).map(|r| r.count)),
                            ],
                        )?;
                        for key in &keys {
                            tally.cover(key.clone());
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Nondecreasing sequences of length `len` over `0..bound`.
fn multisets(len: usize, bound: u64) -> Vec<Vec<u64>> {
    fn extend(cur: &mut Vec<u64>, len: usize, from: u64, bound: u64, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in from..bound {
            cur.push(v);
            extend(cur, len, v, bound, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(len), len, 0, bound, &mut out);
    out
}

pub(crate) fn subset_sums(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    let budgets = &cfg.budgets;
    for field in fields(&[2, 3, 5, 7, 11, 13])? {
        let p = field.order() as i64;
        for k in 1..=5usize {
            let share = fq::uniform_share(field.order(), k)?;
            let signed = factorial(k as u64 - 1) * if k % 2 == 1 { 1 } else { -1 };
            for coeffs in multisets(k, p as u64) {
                let a: Vec<Elem> = coeffs.iter().map(|&x| field.elem(x)).collect::<Result<_>>()?;
                if !fq::subset_sums_nonzero(&a, &field) {
                    continue;
                }
                for (b, name, value) in [
                    (Elem::ZERO, "schonemann", &share + &signed * (p - 1)),
                    (Elem::ONE, "formula", &share - &signed),
                ] {
                    let inst = Instance::new(&field, a.clone(), b, Domain::Full)?;
                    tally.check(
                        || describe(&inst),
                        vec![
                            (name, Ok(value)),
                            ("dispatcher", fq::count_closed_form(&inst).and_then(|r| {
                                r.map(|r| r.count).ok_or_else(|| Error::NotApplicable {
                                    method: "closed".into(),
                                    reason: "dispatcher found no closed form".into(),
                                })
                            })),
                            ("brute", fq::count_brute(&inst, budgets).map(|r| r.count)),
                        ],
                    )?;
                    tally.cover(format!("k{k}-{}", if b.is_zero() { "b-zero" } else { "b-nonzero" }));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn census(cfg: &VerifyConfig, tally: &mut Tally) -> Result<()> {
    for field in fields(&[3, 4, 5, 7, 8, 9])? {
        let q = field.order();
        let mut counts = vec![
            ("census", fq::perm_poly_census(&field, &cfg.budgets)),
            ("interpolation", fq::perm_poly_census_by_interpolation(&field)),
        ];
        if q == 5 {
            // hand enumeration of the 24 bijections of F_5 fixing 0
            counts.push(("expected", Ok(BigInt::from(4))));
        }
        tally.check(|| format!("census field {}", field.spec()), counts)?;
        tally.cover(format!("q{q}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_lists() {
        let orders: Vec<u32> = fields_up_to(9).unwrap().iter().map(Field::order).collect();
        assert_eq!(orders, vec![2, 3, 4, 5, 7, 8, 9]);
    }

    #[test]
    fn multiset_counts() {
        // C(n + k - 1, k)
        assert_eq!(multisets(2, 3).len(), 6);
        assert_eq!(multisets(5, 13).len(), 6188);
    }
}

//! Counting engines for N_D(a_1, ..., a_k; b) over F_q, D = F_q or F_q^*.
//!
//! Every engine returns the same exact integer; they differ in cost and in
//! which facts they rely on, which is what makes them useful as checks on
//! one another:
//!
//! * [`count_brute`]: injective-tuple enumeration, the ground truth.
//! * [`count_recurrence`]: the `d(·)` recurrence over coefficient multisets.
//! * [`count_sieve`]: signed sum over zero-sum cycle structures, evaluated by
//!   a 3^k subset DP.
//! * [`count_partition_oracle`]: the same signed sum, evaluated by walking
//!   set partitions directly.
//! * [`count_closed_form`]: closed formulas for special coefficient shapes.
//! * [`count_units`]: D = F_q^*, reduced to full-domain counts.

mod brute;
mod census;
mod closed;
mod existence;
mod recurrence;
mod sieve;
mod units;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Domain, Elem, Field};
use crate::error::{Error, Result};

pub use brute::count_brute;
pub use census::{perm_poly_census, perm_poly_census_by_interpolation, MAX_CENSUS_Q};
pub use closed::{
    count_all_ones, count_closed_form, count_two_exceptional, subset_sums_nonzero,
    two_exceptional_case,
};
pub use existence::exists_distinct;
pub use recurrence::{count_recurrence, delta, DeltaKey, DeltaMemo};
pub use sieve::{count_partition_oracle, count_sieve, sieve_table, sieve_weight};
pub use units::count_units;

/// One counting problem over a finite field.
#[derive(Clone, Debug)]
pub struct Instance<'f> {
    pub field: &'f Field,
    pub coeffs: Vec<Elem>,
    pub target: Elem,
    pub domain: Domain,
}

impl<'f> Instance<'f> {
    pub fn new(field: &'f Field, coeffs: Vec<Elem>, target: Elem, domain: Domain) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyCoefficients);
        }
        for x in coeffs.iter().chain(std::iter::once(&target)) {
            field.elem(x.encoding() as u64)?;
        }
        Ok(Instance {
            field,
            coeffs,
            target,
            domain,
        })
    }

    /// Build from raw integer encodings.
    pub fn from_encodings(
        field: &'f Field,
        coeffs: &[u64],
        target: u64,
        domain: Domain,
    ) -> Result<Self> {
        let coeffs = coeffs
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        let target = field.elem(target)?;
        Instance::new(field, coeffs, target, domain)
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn with_target(&self, target: Elem) -> Self {
        Instance {
            target,
            ..self.clone()
        }
    }

    pub fn with_domain(&self, domain: Domain) -> Self {
        Instance {
            domain,
            ..self.clone()
        }
    }

    /// k exceeds |D|, so no injective tuple exists.
    pub(crate) fn pigeonholed(&self) -> bool {
        self.k() > self.field.domain_size(self.domain) as usize
    }

    pub(crate) fn coeff_sum(&self) -> Elem {
        self.field.sum(self.coeffs.iter().copied())
    }

    fn require_full(&self, engine: &str) -> Result<()> {
        if self.domain != Domain::Full {
            return Err(Error::NotApplicable {
                method: engine.to_string(),
                reason: "requires domain = full".into(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    Pigeonhole,
    AllEqual,
    TwoExceptional { case: u8 },
    SubsetSumsNonzero,
    /// Z/nZ with every nonempty proper subset sum a unit.
    Bibak,
}

/// Provenance of a count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Recurrence,
    SieveDp,
    Partition,
    Units,
    ClosedForm(ClosedForm),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Brute => f.write_str("brute"),
            Method::Recurrence => f.write_str("recurrence"),
            Method::SieveDp => f.write_str("sieve-dp"),
            Method::Partition => f.write_str("partition"),
            Method::Units => f.write_str("units-reduction"),
            Method::ClosedForm(c) => match c {
                ClosedForm::Pigeonhole => f.write_str("closed-form:pigeonhole"),
                ClosedForm::AllEqual => f.write_str("closed-form:all-equal"),
                ClosedForm::TwoExceptional { case } => {
                    write!(f, "closed-form:two-exceptional-case{case}")
                }
                ClosedForm::SubsetSumsNonzero => f.write_str("closed-form:subset-sums-nonzero"),
                ClosedForm::Bibak => f.write_str("closed-form:bibak"),
            },
        }
    }
}

impl Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub count: BigInt,
    pub method: Method,
}

impl CountResult {
    pub(crate) fn new(count: impl Into<BigInt>, method: Method) -> Self {
        CountResult {
            count: count.into(),
            method,
        }
    }
}

/// Engine cost ceilings. Exceeding one is an error, never a silent fallback.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Injective tuples the brute-force engines may enumerate.
    pub brute_tuples: u64,
    /// Largest k for the 3^k sieve DP.
    pub sieve_k: usize,
    /// Largest k for set-partition enumeration.
    pub partition_k: usize,
    /// Largest k for the F_q^* reduction.
    pub units_k: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            brute_tuples: 100_000_000,
            sieve_k: 18,
            partition_k: 12,
            units_k: 16,
        }
    }
}

/// Engine selection for [`count`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MethodChoice {
    Auto,
    Brute,
    Recurrence,
    Sieve,
    Partition,
    Closed,
}

impl FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => MethodChoice::Auto,
            "brute" => MethodChoice::Brute,
            "recurrence" => MethodChoice::Recurrence,
            "sieve" | "sieve-dp" => MethodChoice::Sieve,
            "partition" => MethodChoice::Partition,
            "closed" => MethodChoice::Closed,
            other => return Err(Error::Parse(format!("unknown method {other:?}"))),
        })
    }
}

impl fmt::Display for MethodChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodChoice::Auto => "auto",
            MethodChoice::Brute => "brute",
            MethodChoice::Recurrence => "recurrence",
            MethodChoice::Sieve => "sieve",
            MethodChoice::Partition => "partition",
            MethodChoice::Closed => "closed",
        })
    }
}

/// v(b): `q - 1` at b = 0, `-1` elsewhere.
pub fn nu(b: Elem, field: &Field) -> i64 {
    if b.is_zero() {
        field.order() as i64 - 1
    } else {
        -1
    }
}

pub(crate) fn exact_div(num: &BigInt, den: &BigInt, context: &'static str) -> Result<BigInt> {
    let (quot, rem) = num.div_rem(den);
    if !rem.is_zero() {
        return Err(Error::InexactDivision {
            numerator: num.to_string(),
            denominator: den.to_string(),
            context,
        });
    }
    Ok(quot)
}

/// `(q)_k / q`, the count every target gets when the coefficients do not
/// sum to zero.
pub(crate) fn uniform_share(q: u32, k: usize) -> Result<BigInt> {
    let falling = crate::combinatorics::falling_factorial(q as i64, k as i64)?;
    exact_div(&falling, &BigInt::from(q), "(q)_k / q")
}

/// Dispatch to an engine. `Auto` picks a closed form when one applies,
/// otherwise the sieve DP (full domain) or the F_q^* reduction (units).
pub fn count(inst: &Instance<'_>, method: MethodChoice, budgets: &Budgets) -> Result<CountResult> {
    match (method, inst.domain) {
        (MethodChoice::Brute, _) => count_brute(inst, budgets),
        (MethodChoice::Auto, Domain::Units) => count_units(inst, budgets),
        (MethodChoice::Auto, Domain::Full) => match count_closed_form(inst)? {
            Some(r) => Ok(r),
            None => count_sieve(inst, budgets),
        },
        (_, Domain::Units) => Err(Error::NotApplicable {
            method: method.to_string(),
            reason: "only auto and brute support domain = units".into(),
        }),
        (MethodChoice::Recurrence, Domain::Full) => count_recurrence(inst),
        (MethodChoice::Sieve, Domain::Full) => count_sieve(inst, budgets),
        (MethodChoice::Partition, Domain::Full) => count_partition_oracle(inst, budgets),
        (MethodChoice::Closed, Domain::Full) => {
            count_closed_form(inst)?.ok_or_else(|| Error::NotApplicable {
                method: "closed".into(),
                reason: "no closed form covers these coefficients".into(),
            })
        }
    }
}

//! Cross-validation sweeps: every engine against every other, closed forms
//! against brute force, and the combinatorial identities the engines rest on.
//!
//! Each suite draws from its own [`Sampler`](crate::Sampler), seeded with the
//! run seed XOR a fixed per-suite salt, so selecting a subset of suites does
//! not change what any one suite checks.

mod fq_suites;
mod lemmas;
mod shrink;
mod zn_suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fq::Budgets;

pub use shrink::shrink;

/// Deliberate defects for checking that the harness notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Negate the v(b) W / q correction inside the sieve-dp path.
    FlipSieveSign,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "flip-sieve-sign" => Ok(Fault::FlipSieveSign),
            other => Err(Error::Parse(format!("unknown fault {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Sampled F_q instances, full domain: brute, recurrence, sieve-dp,
    /// partition and any applicable closed form.
    CrossMethod,
    /// Sampled F_q^* instances: brute against the units reduction.
    Units,
    /// Shift, scale and permutation invariance, total mass, zero-coordinate
    /// splitting and the existence predicate.
    Invariants,
    /// All-equal coefficients, every λ and b.
    AllEqual,
    /// `[a_1, a_2, 1, ..., 1]`, exhaustive over (a_1, a_2).
    TwoExceptional,
    /// Zero total with no vanishing proper subset sum, prime fields.
    SubsetSums,
    /// Z/nZ closed form under the coprime subset-sum precondition.
    Bibak,
    /// Z/nZ partition sieve, exhaustive for k <= 3 and sampled for k = 4.
    ZnSieve,
    /// Stirling, binomial and cycle-count identities against S_k enumeration.
    Lemmas,
    /// Permutation-polynomial census against direct interpolation.
    Census,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::CrossMethod,
        Suite::Units,
        Suite::Invariants,
        Suite::AllEqual,
        Suite::TwoExceptional,
        Suite::SubsetSums,
        Suite::Bibak,
        Suite::ZnSieve,
        Suite::Lemmas,
        Suite::Census,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CrossMethod => "cross-method",
            Suite::Units => "units",
            Suite::Invariants => "invariants",
            Suite::AllEqual => "all-equal",
            Suite::TwoExceptional => "two-exceptional",
            Suite::SubsetSums => "subset-sums",
            Suite::Bibak => "bibak",
            Suite::ZnSieve => "zn-sieve",
            Suite::Lemmas => "lemmas",
            Suite::Census => "census",
        }
    }

    fn salt(self) -> u64 {
        0x9e37_79b9_7f4a_7c15u64.wrapping_mul(self as u64 + 1)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Sweep parameters. Only the sampled F_q suites read `max_q`, `max_k` and
/// `samples`; the closed-formula suites have fixed ranges.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_q: u32,
    pub max_n: u64,
    pub max_k: usize,
    pub samples: usize,
    pub seed: u64,
    pub bibak_max_n: u64,
    pub bibak_samples: usize,
    /// Keep a record for every check, not just the mismatches.
    pub full_report: bool,
    pub fault: Option<Fault>,
    pub budgets: Budgets,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_q: 9,
            max_n: 12,
            max_k: 5,
            samples: 200,
            seed: 42,
            bibak_max_n: 30,
            bibak_samples: 500,
            full_report: false,
            fault: None,
            budgets: Budgets::default(),
        }
    }
}

impl VerifyConfig {
    fn sampler(&self, suite: Suite) -> crate::Sampler {
        crate::Sampler::new(self.seed ^ suite.salt())
    }
}

/// One check: an instance and the value each method produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub suite: Suite,
    pub instance: String,
    pub counts: BTreeMap<String, String>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub instances: u64,
    pub mismatches: u64,
    /// How often each branch or special case was exercised.
    pub coverage: BTreeMap<String, u64>,
}

impl SuiteReport {
    pub fn covered(&self, key: &str) -> u64 {
        self.coverage.get(key).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: u64,
    pub mismatches: u64,
    /// Smallest failing instance found for the first mismatch.
    pub reproducer: Option<Record>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.mismatches == 0
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == suite)
    }
}

/// Accumulates checks for one suite.
pub(crate) struct Tally {
    report: SuiteReport,
    records: Vec<Record>,
    keep_all: bool,
    reproducer: Option<Record>,
}

impl Tally {
    fn new(suite: Suite, keep_all: bool) -> Self {
        Tally {
            report: SuiteReport {
                suite,
                instances: 0,
                mismatches: 0,
                coverage: BTreeMap::new(),
            },
            records: Vec::new(),
            keep_all,
            reproducer: None,
        }
    }

    pub(crate) fn cover(&mut self, key: impl Into<String>) {
        *self.report.coverage.entry(key.into()).or_insert(0) += 1;
    }

    /// Build a record. Budget errors propagate; any other engine error is
    /// rendered into the record and counts as disagreement.
    pub(crate) fn record(
        &self,
        instance: String,
        counts: Vec<(&str, Result<BigInt>)>,
    ) -> Result<Record> {
        let mut rendered = BTreeMap::new();
        let mut values = Vec::with_capacity(counts.len());
        let mut errored = false;
        for (name, value) in counts {
            let text = match value {
                Ok(v) => {
                    let s = v.to_string();
                    values.push(v);
                    s
                }
                Err(e) if e.is_budget() => return Err(e),
                Err(e) => {
                    errored = true;
                    format!("error: {e}")
                }
            };
            rendered.insert(name.to_string(), text);
        }
        let agree = !errored && values.windows(2).all(|w| w[0] == w[1]);
        Ok(Record {
            suite: self.report.suite,
            instance,
            counts: rendered,
            agree,
        })
    }

    /// Record a check; returns whether every value agreed.
    pub(crate) fn check(
        &mut self,
        instance: impl FnOnce() -> String,
        counts: Vec<(&str, Result<BigInt>)>,
    ) -> Result<bool> {
        let record = self.record(String::new(), counts)?;
        let agree = record.agree;
        self.report.instances += 1;
        if !agree {
            self.report.mismatches += 1;
        }
        if !agree || self.keep_all {
            self.records.push(Record {
                instance: instance(),
                ..record
            });
        }
        Ok(agree)
    }

    /// True until a reproducer has been attached.
    pub(crate) fn wants_reproducer(&self) -> bool {
        self.reproducer.is_none()
    }

    pub(crate) fn set_reproducer(&mut self, record: Record) {
        if self.reproducer.is_none() {
            self.reproducer = Some(record);
        }
    }

    fn finish(mut self) -> (SuiteReport, Vec<Record>, Option<Record>) {
        if self.reproducer.is_none() {
            self.reproducer = self.records.iter().find(|r| !r.agree).cloned();
        }
        (self.report, self.records, self.reproducer)
    }
}

fn run_one(suite: Suite, cfg: &VerifyConfig) -> Result<Tally> {
    let mut tally = Tally::new(suite, cfg.full_report);
    match suite {
        Suite::CrossMethod => fq_suites::cross_method(cfg, &mut tally)?,
        Suite::Units => fq_suites::units(cfg, &mut tally)?,
        Suite::Invariants => fq_suites::invariants(cfg, &mut tally)?,
        Suite::AllEqual => fq_suites::all_equal(cfg, &mut tally)?,
        Suite::TwoExceptional => fq_suites::two_exceptional(cfg, &mut tally)?,
        Suite::SubsetSums => fq_suites::subset_sums(cfg, &mut tally)?,
        Suite::Bibak => zn_suites::bibak(cfg, &mut tally)?,
        Suite::ZnSieve => zn_suites::zn_sieve(cfg, &mut tally)?,
        Suite::Lemmas => lemmas::lemmas(cfg, &mut tally)?,
        Suite::Census => fq_suites::census(cfg, &mut tally)?,
    }
    Ok(tally)
}

/// Run the given suites in order.
pub fn run_suites(suites: &[Suite], cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report {
        seed: cfg.seed,
        suites: Vec::new(),
        records: Vec::new(),
        summary: Summary {
            instances: 0,
            mismatches: 0,
            reproducer: None,
        },
    };
    for &suite in suites {
        let (summary, records, reproducer) = run_one(suite, cfg)?.finish();
        report.summary.instances += summary.instances;
        report.summary.mismatches += summary.mismatches;
        if report.summary.reproducer.is_none() {
            report.summary.reproducer = reproducer;
        }
        report.suites.push(summary);
        report.records.extend(records);
    }
    Ok(report)
}

/// Run every suite.
pub fn run(cfg: &VerifyConfig) -> Result<Report> {
    run_suites(&Suite::ALL, cfg)
}

use std::error::Error as StdError;
use std::io::Write;
use std::time::Instant;

use dcount_core::fq::{perm_poly_census, perm_poly_census_by_interpolation};
use dcount_core::verify::{run_suites, Suite, VerifyConfig};
use dcount_core::{
    count, count_zn, Budgets, CountResult, Domain, Error, Field, FieldSpec, Instance,
    MethodChoice, RingSpec, Sampler, ZInstance,
};
use serde::Serialize;

use crate::args::{BenchArgs, CensusArgs, CountArgs, Format, StructureArgs, TableArgs, VerifyArgs};

pub type CliResult<T> = Result<T, Box<dyn StdError>>;

/// Successful runs either agree or report a verification mismatch.
pub enum Outcome {
    Clean,
    Mismatch,
}

/// The census cross-check is printed up to this order.
const CENSUS_INTERPOLATION_Q: u32 = 7;

enum Structure {
    Field(Field),
    Ring(RingSpec),
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum StructureOut {
    Field {
        spec: String,
        p: u32,
        m: u32,
        q: u32,
        modulus: Vec<u32>,
    },
    Ring {
        n: u64,
    },
}

impl Structure {
    fn from_args(args: &StructureArgs) -> CliResult<Self> {
        match (&args.field, args.ring) {
            (Some(spec), None) => Ok(Structure::Field(Field::new(spec.clone()))),
            (None, Some(n)) => Ok(Structure::Ring(RingSpec::new(n)?)),
            _ => Err(Error::Parse("exactly one of --field and --ring is required".into()).into()),
        }
    }

    fn out(&self) -> StructureOut {
        match self {
            Structure::Field(f) => StructureOut::Field {
                spec: f.spec().to_string(),
                p: f.p(),
                m: f.m(),
                q: f.order(),
                modulus: f.spec().modulus().to_vec(),
            },
            Structure::Ring(r) => StructureOut::Ring { n: r.modulus() },
        }
    }

    fn label(&self) -> String {
        match self {
            Structure::Field(f) => f.spec().to_string(),
            Structure::Ring(r) => r.to_string(),
        }
    }

    fn order(&self) -> u64 {
        match self {
            Structure::Field(f) => f.order() as u64,
            Structure::Ring(r) => r.modulus(),
        }
    }

    fn count(
        &self,
        coeffs: &[u64],
        target: u64,
        domain: Domain,
        method: MethodChoice,
        budgets: &Budgets,
    ) -> CliResult<CountResult> {
        Ok(match self {
            Structure::Field(f) => {
                count(&Instance::from_encodings(f, coeffs, target, domain)?, method, budgets)?
            }
            Structure::Ring(r) => {
                if domain != Domain::Full {
                    return Err(Error::NotApplicable {
                        method: method.to_string(),
                        reason: "rings support domain = full only".into(),
                    }
                    .into());
                }
                count_zn(&ZInstance::new(*r, coeffs.to_vec(), target)?, method, budgets)?
            }
        })
    }
}

fn join(coeffs: &[u64]) -> String {
    coeffs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

#[derive(Serialize)]
struct CountOut<'a> {
    structure: StructureOut,
    coeffs: &'a [u64],
    target: u64,
    domain: Domain,
    method: String,
    count: String,
}

#[derive(Serialize)]
struct CountRow {
    structure: String,
    coeffs: String,
    target: u64,
    domain: Domain,
    method: String,
    count: String,
}

pub fn count_cmd(args: &CountArgs, out: &mut dyn Write) -> CliResult<Outcome> {
    let structure = Structure::from_args(&args.structure)?;
    let r = structure.count(&args.coeffs, args.target, args.domain, args.method, &args.budgets.budgets())?;
    match args.format {
        Format::Json => {
            let doc = CountOut {
                structure: structure.out(),
                coeffs: &args.coeffs,
                target: args.target,
                domain: args.domain,
                method: r.method.to_string(),
                count: r.count.to_string(),
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.serialize(CountRow {
                structure: structure.label(),
                coeffs: join(&args.coeffs),
                target: args.target,
                domain: args.domain,
                method: r.method.to_string(),
                count: r.count.to_string(),
            })?;
            w.flush()?;
        }
    }
    Ok(Outcome::Clean)
}

#[derive(Serialize)]
struct TableRow {
    b: u64,
    count: String,
}

#[derive(Serialize)]
struct TableJsonRow {
    b: u64,
    count: String,
    method: String,
}

#[derive(Serialize)]
struct TableOut<'a> {
    structure: StructureOut,
    coeffs: &'a [u64],
    domain: Domain,
    rows: Vec<TableJsonRow>,
}

pub fn table_cmd(args: &TableArgs, out: &mut dyn Write) -> CliResult<Outcome> {
    if args.domain != Domain::Full {
        return Err(Error::Unsupported("table requires --domain full".into()).into());
    }
    let structure = Structure::from_args(&args.structure)?;
    let budgets = args.budgets.budgets();
    let mut rows = Vec::new();
    for b in 0..structure.order() {
        let r = structure.count(&args.coeffs, b, args.domain, args.method, &budgets)?;
        rows.push(TableJsonRow {
            b,
            count: r.count.to_string(),
            method: r.method.to_string(),
        });
    }
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(TableRow {
                    b: row.b,
                    count: row.count,
                })?;
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = TableOut {
                structure: structure.out(),
                coeffs: &args.coeffs,
                domain: args.domain,
                rows,
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(Outcome::Clean)
}

pub fn verify_cmd(args: &VerifyArgs, out: &mut dyn Write) -> CliResult<Outcome> {
    let cfg = VerifyConfig {
        max_q: args.max_q,
        max_n: args.max_n,
        max_k: args.max_k,
        samples: args.samples,
        seed: args.seed,
        bibak_max_n: args.bibak_max_n,
        bibak_samples: args.bibak_samples,
        full_report: args.full_report,
        fault: args.inject_fault,
        budgets: args.budgets.budgets(),
    };
    let suites: &[Suite] = if args.suite.is_empty() { &Suite::ALL } else { &args.suite };
    let report = run_suites(suites, &cfg)?;
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    Ok(if report.passed() { Outcome::Clean } else { Outcome::Mismatch })
}

#[derive(Serialize)]
struct CensusOut {
    q: u32,
    field: String,
    census: String,
    interpolation: Option<String>,
}

pub fn census_cmd(args: &CensusArgs, out: &mut dyn Write) -> CliResult<Outcome> {
    let field = Field::new(FieldSpec::with_order(args.q)?);
    let census = perm_poly_census(&field, &args.budgets.budgets())?;
    let interpolation = if field.order() <= CENSUS_INTERPOLATION_Q {
        Some(perm_poly_census_by_interpolation(&field)?)
    } else {
        None
    };
    let agree = interpolation.as_ref().is_none_or(|i| *i == census);
    let doc = CensusOut {
        q: field.order(),
        field: field.spec().to_string(),
        census: census.to_string(),
        interpolation: interpolation.map(|i| i.to_string()),
    };
    match args.format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.serialize(doc)?;
            w.flush()?;
        }
    }
    Ok(if agree { Outcome::Clean } else { Outcome::Mismatch })
}

#[derive(Serialize)]
struct BenchRow {
    method: String,
    k: usize,
    millis: String,
    count: String,
}

fn engine_label(method: MethodChoice) -> String {
    match method {
        MethodChoice::Sieve => "sieve-dp".into(),
        other => other.to_string(),
    }
}

pub fn bench_cmd(args: &BenchArgs, out: &mut dyn Write) -> CliResult<Outcome> {
    let field = Field::new(args.field.clone());
    let budgets = args.budgets.budgets();
    let mut w = csv::Writer::from_writer(out);
    for k in args.min_k.max(1)..=args.max_k {
        let coeffs = Sampler::new(args.seed ^ k as u64).zero_sum(&field, k);
        let inst = Instance::from_encodings(&field, &coeffs, 0, Domain::Full)?;
        for &method in &args.methods {
            let start = Instant::now();
            let row = match count(&inst, method, &budgets) {
                Ok(r) => BenchRow {
                    method: engine_label(method),
                    k,
                    millis: format!("{:.3}", start.elapsed().as_secs_f64() * 1e3),
                    count: r.count.to_string(),
                },
                Err(e @ (Error::BudgetExceeded { .. } | Error::NotApplicable { .. })) => BenchRow {
                    method: engine_label(method),
                    k,
                    millis: String::new(),
                    count: if e.is_budget() { "budget-exceeded" } else { "not-applicable" }.into(),
                },
                Err(e) => return Err(e.into()),
            };
            w.serialize(row)?;
            w.flush()?;
        }
    }
    Ok(Outcome::Clean)
}

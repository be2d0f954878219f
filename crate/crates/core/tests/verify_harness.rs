use dcount_core::verify::{run_suites, Fault, Suite, VerifyConfig};

fn small() -> VerifyConfig {
    VerifyConfig {
        max_q: 5,
        max_k: 4,
        samples: 30,
        max_n: 6,
        bibak_samples: 60,
        ..VerifyConfig::default()
    }
}

#[test]
fn small_sweep_passes() {
    let report = run_suites(&Suite::ALL, &small()).unwrap();
    assert!(report.passed(), "{:?}", report.summary);
    assert!(report.records.is_empty());
    assert_eq!(report.suites.len(), Suite::ALL.len());
    assert!(report.suites.iter().all(|s| s.instances > 0));
}

#[test]
fn runs_are_deterministic() {
    let cfg = small();
    let a = run_suites(&[Suite::CrossMethod, Suite::Bibak], &cfg).unwrap();
    let b = run_suites(&[Suite::CrossMethod, Suite::Bibak], &cfg).unwrap();
    assert_eq!(a, b);
    let other = VerifyConfig { seed: 7, ..cfg };
    let c = run_suites(&[Suite::Bibak], &other).unwrap();
    assert_ne!(a.suite(Suite::Bibak), c.suite(Suite::Bibak));
}

#[test]
fn injected_fault_is_caught_and_shrunk() {
    let cfg = VerifyConfig {
        fault: Some(Fault::FlipSieveSign),
        ..small()
    };
    let report = run_suites(&[Suite::CrossMethod], &cfg).unwrap();
    assert!(!report.passed());
    assert_eq!(report.records.len() as u64, report.summary.mismatches);
    let repro = report.summary.reproducer.expect("a reproducer is attached");
    assert!(!repro.agree);
    // the smallest instance with a nonzero correction is one zero coefficient
    assert!(repro.instance.starts_with("field 2 coeffs [0] target 0"), "{}", repro.instance);
}

#[test]
fn full_report_keeps_every_record() {
    let cfg = VerifyConfig {
        full_report: true,
        ..small()
    };
    let report = run_suites(&[Suite::Census], &cfg).unwrap();
    assert_eq!(report.records.len() as u64, report.summary.instances);
    assert!(report.records.iter().all(|r| r.agree));
}

//! Criterion benchmarks for `dcount-core`; the targets live in `benches/`.

use dcount_core::{Domain, Field, Instance, Sampler};

/// Fixed seed so every run times the same instances.
pub const SEED: u64 = 42;

/// Zero-sum coefficient encodings of length `k` over `field`.
pub fn zero_sum_coeffs(field: &Field, k: usize) -> Vec<u64> {
    Sampler::new(SEED ^ k as u64).zero_sum(field, k)
}

pub fn instance<'f>(field: &'f Field, coeffs: &[u64]) -> Instance<'f> {
    Instance::from_encodings(field, coeffs, 0, Domain::Full).expect("encodings drawn below q")
}

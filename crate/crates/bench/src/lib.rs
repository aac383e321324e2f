//! Shared fixtures for the criterion benchmarks in `benches/`.

use hetsnet_core::instance::{generate_instance, GeometryConfig, Instance, Seed};

/// A reproducible Rayleigh-faded instance sized for benchmarking.
pub fn fixture(num_sbs: usize, num_su: usize, seed: u64) -> Instance {
    generate_instance(
        &GeometryConfig::default(),
        num_sbs,
        num_su,
        10.0,
        0.0,
        Seed::new(seed),
    )
    .expect("benchmark fixture dimensions are valid")
}

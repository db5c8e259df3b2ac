//! Benchmark-only crate; see `benches/core_ops.rs`.
//!
//! Shared fixtures for the benchmarks live here so the bench target stays
//! small.

use staudt_core::ring::{build_ring, parse_ring_spec};
use staudt_core::{Caps, Ring};

pub fn ring(spec: &str) -> Ring {
    build_ring(
        &parse_ring_spec(spec).expect("valid spec"),
        &Caps::default(),
    )
    .expect("buildable ring")
}

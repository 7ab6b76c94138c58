//! Criterion benchmarks for the twinheart engine.
//!
//! This crate contains no library code; run `cargo bench -p twinheart-bench`
//! to exercise the benchmarks in `benches/engine.rs`.

//! Benchmarks for the twistlab kernels live in `benches/kernels.rs`.

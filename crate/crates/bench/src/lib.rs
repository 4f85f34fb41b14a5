//! Criterion benchmarks for the orthokernel crate live in `benches/`.

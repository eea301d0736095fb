//! Criterion benchmarks for the exhaustive searches live in `benches/`.

//! Criterion benchmarks for the stabbing solvers; see `benches/`.

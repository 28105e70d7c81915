//! Criterion benchmarks for `riordan-core`, under `benches/`.

//! Criterion benchmarks for `syzygy-core` live under `benches/`.

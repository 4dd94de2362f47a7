//! Benchmarks for `bratteli-core`; see `benches/`.

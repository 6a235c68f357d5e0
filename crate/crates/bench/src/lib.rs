//! Criterion benchmarks for `betti-split`; see `benches/`.

//! Benchmarks live in `benches/pipeline.rs`; run `cargo bench -p gpdcoh-bench`.

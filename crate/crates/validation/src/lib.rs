//! Holds the `acceptance` test target only; run it with
//! `cargo test -p firefly-validation --test acceptance -- --nocapture`.

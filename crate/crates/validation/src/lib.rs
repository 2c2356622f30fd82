//! Holds the `acceptance` test target; run it with
//! `cargo test -p chromabound-validation --test acceptance`.

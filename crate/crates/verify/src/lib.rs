//! Holds the `acceptance` test target; run it with
//! `cargo test -p nu-forge-verify --test acceptance`.

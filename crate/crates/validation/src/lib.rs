//! Hosts the `acceptance` test target. Run it with
//! `cargo test -p validation --test acceptance`.

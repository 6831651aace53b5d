//! Exact construction and verification of elliptic root systems R(k,g)
//! and the finite presentations of their Lie superalgebras.

pub mod ambient;
pub mod base_system;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod presentation;
pub mod quantum_torus;
pub mod unfold;
pub mod roots;

pub use error::{Error, Result};

/// Rationals serialize as strings such as `"3/2"`.
pub(crate) fn ser_q<S: serde::Serializer>(q: &ambient::Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

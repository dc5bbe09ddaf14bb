//! Identification codes built from concatenated Reed-Solomon codes.
//!
//! An identity is a message of the outer code `(q^k, q^(k-δ))` over
//! GF(q^k); its tagging function maps randomness `j in [0, q^(k+1))` to one
//! symbol of the concatenation with the inner `(q, k)` code over GF(q). Tags
//! are computed one at a time by polynomial evaluation, so parameter sets
//! whose codebooks could never be stored remain usable.

pub mod analysis;
pub mod concat;
pub mod error;
pub mod field;
pub mod protocol;
pub mod rng;
pub mod rs;

pub use concat::{derive_params, tag, ConcatParams, Identity};
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use rs::{Caps, Message, RsParams};

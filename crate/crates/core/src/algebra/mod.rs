//! Finite fields F_{p^m} and residue rings Z/nZ with integer element encodings.

mod field;
pub mod poly;
mod ring;

pub use field::{Domain, Elem, Field, FieldSpec, MAX_FIELD_ORDER};
pub use ring::RingSpec;


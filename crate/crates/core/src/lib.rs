//! Exact counts of distinct-coordinate solutions of linear equations
//! `a_1 x_1 + ... + a_k x_k = b` over finite fields and residue rings.
//!
//! ```
//! use dcount_core::{count, Budgets, Domain, Field, Instance, MethodChoice};
//!
//! let f5 = Field::prime(5).unwrap();
//! let inst = Instance::from_encodings(&f5, &[1, 4], 1, Domain::Full).unwrap();
//! let r = count(&inst, MethodChoice::Auto, &Budgets::default()).unwrap();
//! assert_eq!(r.count, 5.into());
//! ```

pub mod algebra;
pub mod combinatorics;
mod error;
pub mod fq;
pub mod sampling;
pub mod verify;
pub mod zn;

pub use algebra::{Domain, Elem, Field, FieldSpec, RingSpec};
pub use error::{Error, Result};
pub use fq::{count, Budgets, ClosedForm, CountResult, Instance, Method, MethodChoice};
pub use num_bigint::BigInt;
pub use sampling::Sampler;
pub use zn::{count_zn, ZInstance};

//! Locally cartesian closed structure of the category of finite sets.
//!
//! The crate builds, out of explicit tables, the pieces that make finite sets
//! a locally cartesian closed category: slice categories, canonical
//! pullbacks, exponentials (plain and fiberwise), and the adjoint triple
//! `f_! ⊣ f^* ⊣ f_*`. A generic harness certifies adjunctions by
//! enumeration, and a small dependent-type language evaluates `Sum`, `Pi`
//! and `Pull` through these functors.

pub mod adjunction;
pub mod category;
pub mod depprod;
pub mod dtt;
mod error;
pub mod exponentials;
pub mod finset;
pub mod instances;
pub mod limits;
pub mod slice;

pub use category::{Category, Functor, Pairs, Sets};
pub use error::{Error, Result};
pub use finset::{Element, FinMap, FinSet, DEFAULT_LIMIT};
pub use slice::{Slice, SliceFunctor, SliceMor, SliceObj};

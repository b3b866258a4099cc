//! Exact computations with planes of PG(5, q), q even, that meet the nucleus
//! plane of the Veronese surface, and the corresponding nets of conics.

#![allow(clippy::needless_range_loop)]

pub mod action;
pub mod atlas;
pub mod error;
pub mod expr;
pub mod gf;
pub mod invariants;
pub mod par;
pub mod projgeom;
pub mod verify;
pub mod veronese;

pub use error::{Error, Result};
pub use gf::{Field, FieldSpec, Gf};
pub use projgeom::{Point, Subspace};

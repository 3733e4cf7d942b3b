//! Upper bounds on the genus of curves over a finite field whose Frobenius
//! angles are confined to a prescribed finite set.
//!
//! Three independent routes are provided:
//!
//! * closed-form bounds from the angle set ([`bounds::bound_b1`],
//!   [`bounds::bound_b2`]),
//! * the trigonometric-polynomial bound with its canonical auxiliary
//!   polynomial ([`bounds::lemma_bound_canonical`]),
//! * exact linear and integer programming over the nonnegativity of place
//!   counts ([`places`], [`lpsolve`]).
//!
//! All arithmetic is exact or rigorously outward-rounded.

pub mod bounds;
pub mod error;
pub mod exactnum;
pub mod lpsolve;
pub mod places;
pub mod reproduce;
pub mod weil;

pub use error::{Error, Result};

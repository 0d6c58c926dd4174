//! Matrices over finite fields under the twisted congruence
//! `A -> tT A T^(q)`: normal forms with replayable certificates, and the
//! geometry of the hypersurfaces `sum a_ij x_i x_j^q = 0`.

pub mod classify;
pub mod error;
pub mod fullrank;
pub mod geometry;
pub mod gf;
pub mod linalg;
pub mod random;
pub mod verify;
pub mod wire;

pub use error::{Error, Result};

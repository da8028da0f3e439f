//! Steady-state elevation of individual internal gravity wave modes excited
//! by a point source moving uniformly through a channel of constant
//! buoyancy frequency.
//!
//! The crate evaluates the exact traverse integral for one mode, its
//! near-critical Macdonald-function asymptotic and its far-field Airy
//! asymptotic, together with the numerical machinery they need.

pub mod cli;
pub mod dispersion;
pub mod field;
pub mod quadrature;
pub mod specfun;

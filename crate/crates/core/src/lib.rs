//! Exact continued fractions of cubic Laurent series and of real cubic irrationals.
//!
//! The crate derives generalized continued fractions from Riccati equations, checks them
//! against an independent Laurent-series oracle, evaluates effective approximation bounds
//! with certified intervals, and expands real cubic numbers exactly.

pub mod error;
pub mod par;
pub mod cfrac;
pub mod qexact;
pub mod riccati;
pub mod families;
pub mod interval;
pub mod realcf;
pub mod bounds;
pub mod approx;
pub mod moebius;

pub use error::{Error, Result};

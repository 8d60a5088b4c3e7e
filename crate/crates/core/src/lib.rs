//! Numerical tensor calculus for metric f-structures and S-manifolds.
//!
//! Fields live on coordinate charts and carry exact first and second
//! derivatives ([`diffcore`]). On top of that sit tensor fields
//! ([`tensorfield`]), metric f-structures ([`fstructure`]), the Riemannian and
//! semi-symmetric connections ([`connections`]), their curvature
//! ([`curvature`]), concrete S-manifolds ([`examples`]) and a seeded
//! verification runner with JSON reports ([`report`]).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod connections;
pub mod curvature;
pub mod diffcore;
pub mod error;
pub mod examples;
pub mod fstructure;
pub mod report;
pub mod tensorfield;
pub mod theorems;

pub use check::{Check, Expect, ValidationReport};
pub use error::{GeometryError, Result};

//! Plane geometry for triangle centers, with a focus on the first
//! isodynamic point.
//!
//! The crate is layered: [`kernel`] holds points, lines, circles, fitted
//! conics and cubics and the incidence predicates; [`centers`] adds the
//! triangle model and trilinear centers; [`constructions`] the classical
//! parts of a triangle; [`formulas`] the closed-form metric relations.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod centers;
pub mod constructions;
pub mod error;
pub mod formulas;
pub mod kernel;

pub use error::{GeomError, Result};

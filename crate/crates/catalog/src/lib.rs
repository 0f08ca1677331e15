//! Figure programs, the machine-checkable property catalog for the first
//! isodynamic point, and the seeded runner that verifies it.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod dsl;
pub mod sampler;

//! Grün's Sylow-structure and trivial-action theorems for `GL_n(F_q)`,
//! checked against explicitly enumerated matrix groups, and their use as a
//! deduction engine for class groups of normal extensions.
//!
//! - [`arith`]: exact number theory (orders, valuations, `|GL_n(F_q)|`).
//! - [`matgroup`]: brute-force matrix groups, Sylow subgroups, derived series.
//! - [`gruen`]: predictions computed from parameters alone, and their
//!   verification against [`matgroup`].
//! - [`classgrp`]: class-group descent deductions with justification chains.

pub mod arith;
pub mod classgrp;
pub mod error;
pub mod gruen;
pub mod matgroup;

pub use error::{Error, Result};

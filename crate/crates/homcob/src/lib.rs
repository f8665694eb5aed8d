//! Equivariant cobordism invariants of homogeneous spaces `G/H` with `rk H = rk G`,
//! computed exactly from root data.

pub mod error;
pub mod exactalg;
pub mod cobordism;
pub mod rootdata;
pub mod structures;
pub mod toricgenus;
pub mod hirzebruch;
pub mod catalog;
pub mod cli;

pub use error::{Error, Result};

//! Path-like trees: lattice enumeration, linear configurations and the
//! divisibility characterizations of trees of maximum degree 3 and 4.

pub mod canon;
pub mod classify;
pub mod cli;
pub mod config;
pub mod decision;
pub mod degree4;
pub mod hchar;
pub mod hn;
pub mod lattice;
pub mod params;
pub mod tree;
pub mod verify;

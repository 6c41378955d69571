//! Exact construction and verification of Yang–Baxter operators.

pub mod exactnum;
pub mod tensorlin;
pub mod structures;
pub mod operators;
pub mod verify;

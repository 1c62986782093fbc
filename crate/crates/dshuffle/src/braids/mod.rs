//! Braid and moduli layer for M_{0,4} and M_{0,5}.

pub mod artin;
pub mod diagrams;
pub mod fixtures;
pub mod p5group;
pub mod up5;

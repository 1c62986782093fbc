//! Exact workbench for double shuffle theory: harmonic coproducts on the
//! de Rham and Betti sides, their braid-group realisation, associators and
//! the double shuffle torsor.

pub mod error;
pub mod battery;
pub mod betti_side;
pub mod braids;
pub mod dmr;
pub mod dr_side;
pub mod lin;
pub mod linalg;
pub mod loc;
pub mod mzv;
pub mod ncalg;
pub mod par;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{Coeff, Q};

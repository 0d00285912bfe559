pub mod cli;
pub mod error;
pub mod fci;
pub mod gates;
pub mod integrals;
pub mod io;
pub mod linalg;
pub mod magic;
pub mod majorana;
pub mod mo;
pub mod par;
pub mod scan;
pub mod scf;

pub use error::{Error, Result};

pub mod cli;
pub mod combinatorics;
pub mod conjugate;
pub mod error;
pub mod linalg;
pub mod ncalg;
pub mod operators;
pub mod qfock;
pub mod scalar;

pub use error::{Error, Result};

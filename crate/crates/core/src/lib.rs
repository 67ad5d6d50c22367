pub mod arrow;
pub mod chain;
pub mod cliio;
pub mod dgalg;
pub mod error;
pub mod gen;
pub mod kerco;
pub mod linalg;
pub mod modelstr;

pub use error::{Error, Result};

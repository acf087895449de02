pub mod binary_cubic;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod homotopy;
mod linalg;
pub mod poly;
pub mod search;
pub mod spectrum;
pub mod tensor;
pub mod verify;
pub mod zeig;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub mod elliptic;
pub mod error;
pub mod linalg;
pub mod params;
pub mod sklyanin;
pub mod sos;
pub mod thermo;
pub mod transfer;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use params::ModelParams;

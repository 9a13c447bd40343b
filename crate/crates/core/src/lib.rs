pub mod error;
pub mod gamma_star;
pub mod identities;
mod lanczos_coeffs;
pub mod bessel;
pub mod numerics;
pub mod oracles;
pub mod quadrature;
pub mod sum;

pub use error::{Error, Result};

//! Exact computations in the Temperley–Lieb category.

pub mod braidcenter;
pub mod crystal;
pub mod diagram;
pub mod error;
pub mod fusiondata;
pub mod linalg;
pub mod polysolve;
pub mod primes;
pub mod qarith;
pub mod stability;
pub mod tlcat;

pub use error::{Error, Result};

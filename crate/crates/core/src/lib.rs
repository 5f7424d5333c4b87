pub mod arith;
pub mod dsl;
pub mod euler;
pub mod error;
pub mod padic;
mod render;
pub mod series;
pub mod umbral;

pub use error::{Error, Result};
pub use series::{Order, Series};
pub use umbral::{ShefferPair, XPolynomial};

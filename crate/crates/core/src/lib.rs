pub mod arith;
pub mod carriers;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod matrices;
pub mod polynomials;
pub mod scan;

pub use carriers::{Carrier, ExactElem, ExactRing, Family, FuzzyNC, ModElem, ModFamily, ModRing, Ring};
pub use error::{Error, Result};

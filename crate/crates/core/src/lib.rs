pub mod antipodality;
pub mod cli;
pub mod combinatorics;
pub mod construction;
pub mod discrimination;
pub mod error;
pub mod geometry;
pub mod hashcodes;
pub mod io;
pub mod lp;
pub mod rational;

pub use error::{Error, Result};
pub use rational::Rational;

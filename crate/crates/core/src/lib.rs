pub mod brauer;
pub mod cli;
pub mod coeff;
pub mod error;
pub mod osp;
pub mod report;
pub mod ssv;
pub mod superspace;
pub mod uea;

pub use error::{Error, Result};

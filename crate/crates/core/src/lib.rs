#![allow(clippy::excessive_precision)]

pub mod error;
pub mod laws;
pub mod mlfun;
pub mod mvtpl;
pub mod paths;
pub mod quad;
pub mod samplers;
pub mod verify;

pub use error::{Result, TplError};

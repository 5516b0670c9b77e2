#![allow(clippy::needless_range_loop)]

pub mod bbs;
pub mod crystal;
pub mod enumerate;
pub mod error;
pub mod kkr;
pub mod rigged;
pub mod scattering;
pub mod tau;
pub mod verify;

pub use error::{Error, Result};

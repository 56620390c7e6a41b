#![allow(clippy::needless_range_loop)]

pub mod certify;
pub mod darboux;
pub mod error;
pub mod exactla;
pub mod field_forms;
pub mod hamiltonian;
pub mod invariance;
pub mod io;
pub mod numeric;
pub mod polyring;
pub mod sample;

pub use error::{Error, Result};

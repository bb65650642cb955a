#![allow(clippy::len_without_is_empty)]

pub mod cli;
pub mod error;
pub mod eval_maps;
pub mod exactalg;
pub mod iso_maps;
pub mod kernel_lab;
pub mod matform;
pub mod quiver_rel;
pub mod sigma_ring;
pub mod wordalg;

pub use error::{Error, Result};

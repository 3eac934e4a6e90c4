//! Point-line and point-plane incidence experiments over finite fields.

pub mod apps;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod ffield;
pub mod geom;
pub mod harness;
pub mod io;
pub mod reductions;
pub mod setsys;

pub use error::{Error, Result};

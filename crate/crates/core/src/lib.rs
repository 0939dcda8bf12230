//! Exact rank computations for matrices over tracts.

pub mod config;
pub mod error;
pub mod fmatroids;
pub mod golden;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod matroids;
pub mod ranks;
pub mod realize;
pub mod tracts;

pub use config::Guards;
pub use error::{Error, Result};
pub use tracts::{FormalSum, TractElement, TractHom, TractId};

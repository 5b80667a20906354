//! Rate-2 fast-decodable space-time block codes for multiple-input double-output channels.
//!
//! The crate builds the codes from exact number-field data, verifies their algebraic
//! properties, decodes them (exhaustively or with the conditional group decoder) and
//! estimates codeword error rates over quasi-static Rayleigh fading.

pub mod algebra;
pub mod channel_sim;
pub mod analysis;
pub mod cli;
pub mod codes;
pub mod decoder;
pub mod error;
pub mod linalg;
pub mod verify;

pub use error::{Error, Result};

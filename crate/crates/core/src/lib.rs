//! Generalized Euler characteristics on spaces glued from classifying spaces
//! of finite groups, and their decomposition in K₀.

pub mod cli;
pub mod error;
pub mod groups;
pub mod invariants;
pub mod limits;
pub mod posets;
pub mod rational;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
pub use limits::Limits;
pub use rational::Rat;

pub mod cyclic;
pub mod endo;
pub mod error;
pub mod orbit;
pub mod rigid;
pub mod tiling;
pub mod verify;

pub use error::{Error, Result};

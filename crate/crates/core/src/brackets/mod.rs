mod gerstenhaber;
mod hkr;
mod mc;
mod schouten;

pub use gerstenhaber::*;
pub use hkr::*;
pub use mc::*;
pub use schouten::*;

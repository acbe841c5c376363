//! File formats, error reporting and rendering behind the `stdpairs` binary.

pub mod failure;
pub mod formats;
pub mod render;
pub mod verify;

//! Exact computation with representations of finite quivers and of finite
//! cores with rays attached.

pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod order;
pub mod quiver;
pub mod reflection;
pub mod rep;
pub mod roots;

pub use error::{Error, Result};

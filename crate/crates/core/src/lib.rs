//! Windowed octonion linear canonical transforms on sampled 3D fields.

pub mod cli;
pub mod config;
pub mod error;
pub mod field_io;
pub mod grid;
pub mod inequality;
pub mod kernel;
pub mod octonion;
pub mod report;
pub mod signal;
pub mod special;
pub mod suite;
pub mod transform;
pub mod verify;

pub use config::{Check, RunConfig};
pub use error::{Error, Result};
pub use grid::{Grid3D, GridAxis, Grids, SampledField3D, WindowSpec, WoclctResult};
pub use kernel::LctParams;
pub use octonion::{Axis, Octonion, Quaternion};
pub use signal::{generate_signal, SignalSpec};

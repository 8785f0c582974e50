//! Archive file format, benchmarking, and parallel pipelines for the LDCL
//! codec. The in-memory algorithms live in `ldcl-core`; this crate adds
//! everything that touches the filesystem.

pub mod bench;
pub mod container;
pub mod parallel;

pub use container::{archive_size, read_archive, write_archive, ContainerError};

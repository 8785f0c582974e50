//! Core of the LDCL lossy codec.
//!
//! The codec turns a bit stream into a decimal digit stream (bit pairs
//! `00/01/10/11` become digits `2/3/4/5`), tokenizes long runs with the
//! four-digit `1xn1` format, splits the stream into fixed-size sets, and
//! reduces each set against a repunit-of-nines default number `D`. What is
//! stored per set is the subtraction count `m` and `log_D(r)` of the residue,
//! truncated to `p` fraction digits. `p` is the rate/distortion knob: with
//! enough fraction digits the residue is recovered exactly and the codec is
//! lossless; with fewer, reconstruction is approximate and a deterministic
//! repair pass makes the inverse stages total.
//!
//! This crate is `no_std` (with `alloc`) and holds only the in-memory
//! algorithms. File format and CLI live in the companion `ldcl` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bits;
pub mod error;
pub mod matrix;
pub mod metrics;
pub mod numeric;
pub mod oracle;
pub mod sequence;

pub use bits::BitSequence;
pub use error::CodecError;
pub use matrix::{Archive, CodecParams, LogMatrix, MultiplierProfile, SetRecord};
pub use numeric::{DefaultNumber, GiantNumber, LogFraction};
pub use sequence::{MappedDigits, RleDigits};

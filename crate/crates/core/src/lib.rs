//! Block-DCT quantum image compression with an LSB position-qubit swap.
//!
//! The pipeline quantizes 8×8 DCT blocks, keeps only nonzero coefficients,
//! strips the least significant column bit of every coefficient into a
//! transmitted ones list, and prepares each block as a NEQR-style state. A
//! gate-budget rate model (gates per pixel) sits next to a classical bit
//! stream, and a dense statevector simulator checks the circuits.

pub mod circuit;
pub mod cli;
pub mod codec;
pub mod corpus;
pub mod costmodel;
pub mod error;
pub mod image;
pub mod lsbswap;
pub mod payload;
pub mod simulator;
pub mod transform;

pub use codec::{decode, encode, encode_with, rd_sweep, to_csv, EncodeOptions, EncodeResult};
pub use costmodel::{CostModel, GateBudget, Method, RdPoint, SignModel, StateModel};
pub use error::{Error, PayloadError, Result};
pub use image::{read_pgm, write_pgm, GrayImage};

//! Fixed-length unary-family integer codes.
//!
//! Classic unary spends one bit per unit counted. The spread unary code
//! (`su`) fixes the word length and marks a value by the position of a run
//! of `k` ones; the two extended codes reuse the zeros around that run to
//! count quadratically many values in the same word:
//!
//! * `eu-ik` counts in cycles of growing run length, reaching `n(n+1)/2`.
//! * `eu-fk` keeps the spread fixed and adds an isolated marker bit at
//!   growing cyclic distance from the run, reaching `(n-k)^2 - 1`.
//!
//! The crate provides the codecs themselves ([`codecs`]), exhaustive
//! enumeration oracles for verification ([`oracle`]), code metrics and
//! parameter selection ([`analysis`]), and a packed binary stream format
//! ([`bitstream`]).
//!
//! The heavy enumeration kernels run on rayon when the default `parallel`
//! feature is enabled and fall back to plain loops without it; `*_seq`
//! variants expose the sequential path directly.

pub mod analysis;
pub mod bitstream;
pub mod codecs;
pub mod codeword;
pub mod error;
pub mod oracle;
pub mod params;

pub use codeword::{Codeword, ParseCodewordError, Run};
pub use error::{CodeError, StreamError, TableError};
pub use params::{Capacity, CodecParams, Scheme};

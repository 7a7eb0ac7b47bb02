//! Error types for the codec, oracle, and stream layers.

use std::fmt;
use std::io;

use crate::params::Scheme;

/// Parameter validation and codec errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    /// The spread `k` is out of range for the scheme.
    InvalidK { scheme: Scheme, k: u16 },
    /// The word length `n` is too small for the scheme.
    InvalidN { scheme: Scheme, n: u16 },
    /// Fixed-spread extended coding needs a spread of at least 2; with a
    /// single 1 the run and the cycle marker cannot be told apart.
    KRequiredAtLeast2 { k: u16 },
    /// The value exceeds the capacity of the parameters.
    OutOfRange { value: u64, max: u64 },
    /// The word is not a codeword under the given parameters.
    InvalidCodeword { reason: &'static str },
    /// The word does not have exactly `n` bits.
    LengthMismatch { expected: usize, found: usize },
    /// The operation is not defined for the scheme.
    UnsupportedScheme { scheme: Scheme },
    /// No valid word length exists for the requested target maximum.
    InvalidTarget { target: u64 },
}

impl CodeError {
    /// Stable error name, used by the CLI when reporting failures.
    pub fn name(&self) -> &'static str {
        match self {
            CodeError::InvalidK { .. } => "InvalidK",
            CodeError::InvalidN { .. } => "InvalidN",
            CodeError::KRequiredAtLeast2 { .. } => "KRequiredAtLeast2",
            CodeError::OutOfRange { .. } => "OutOfRange",
            CodeError::InvalidCodeword { .. } => "InvalidCodeword",
            CodeError::LengthMismatch { .. } => "LengthMismatch",
            CodeError::UnsupportedScheme { .. } => "UnsupportedScheme",
            CodeError::InvalidTarget { .. } => "InvalidTarget",
        }
    }
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::InvalidK { scheme, k } => {
                write!(f, "spread k={k} is out of range for scheme {scheme}")
            }
            CodeError::InvalidN { scheme, n } => {
                write!(f, "word length n={n} is too small for scheme {scheme}")
            }
            CodeError::KRequiredAtLeast2 { k } => {
                write!(f, "fixed-spread coding requires k >= 2, got k={k}")
            }
            CodeError::OutOfRange { value, max } => {
                write!(f, "value {value} exceeds capacity {max}")
            }
            CodeError::InvalidCodeword { reason } => write!(f, "invalid codeword: {reason}"),
            CodeError::LengthMismatch { expected, found } => {
                write!(f, "codeword has {found} bits, expected {expected}")
            }
            CodeError::UnsupportedScheme { scheme } => {
                write!(f, "operation is not defined for scheme {scheme}")
            }
            CodeError::InvalidTarget { target } => {
                write!(f, "no valid word length for target maximum {target}")
            }
        }
    }
}

impl std::error::Error for CodeError {}

/// Errors from exhaustive table generation and checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableError {
    /// The enumeration would exceed the configured entry bound.
    TooLarge { entries: u64, bound: u64 },
    /// The scheme has no fixed capacity, so it cannot be enumerated.
    Unbounded { scheme: Scheme },
    /// Two values encoded to the same codeword.
    DuplicateCodeword { first: u64, second: u64 },
    /// An underlying codec error.
    Code(CodeError),
}

impl TableError {
    pub fn name(&self) -> &'static str {
        match self {
            TableError::TooLarge { .. } => "TableTooLarge",
            TableError::Unbounded { .. } => "UnboundedScheme",
            TableError::DuplicateCodeword { .. } => "DuplicateCodeword",
            TableError::Code(e) => e.name(),
        }
    }
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::TooLarge { entries, bound } => {
                write!(f, "table of {entries} entries exceeds the bound of {bound}")
            }
            TableError::Unbounded { scheme } => {
                write!(f, "scheme {scheme} has no fixed capacity to enumerate")
            }
            TableError::DuplicateCodeword { first, second } => {
                write!(f, "values {first} and {second} share one codeword")
            }
            TableError::Code(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for TableError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            TableError::Code(e) => Some(e),
            _ => None,
        }
    }
}

impl From<CodeError> for TableError {
    fn from(e: CodeError) -> Self {
        TableError::Code(e)
    }
}

/// Errors from the packed stream format.
#[derive(Debug)]
pub enum StreamError {
    /// The stream does not start with the expected magic bytes.
    BadMagic { found: [u8; 4] },
    /// The header is present but malformed.
    CorruptHeader { detail: String },
    /// The payload ended before `count` codewords were read.
    TruncatedStream,
    /// Padding bits after the final codeword are not all zero.
    NonzeroPadding,
    /// A codeword in the payload failed to decode.
    InvalidCodeword { index: u64, source: CodeError },
    /// A value passed to `pack` exceeds the capacity of the parameters.
    OutOfRange { index: usize, value: u64, max: u64 },
    /// Bytes remain after the packed stream.
    TrailingData { bytes: usize },
    /// Parameter validation failed.
    Code(CodeError),
    Io(io::Error),
}

impl StreamError {
    pub fn name(&self) -> &'static str {
        match self {
            StreamError::BadMagic { .. } => "BadMagic",
            StreamError::CorruptHeader { .. } => "CorruptHeader",
            StreamError::TruncatedStream => "TruncatedStream",
            StreamError::NonzeroPadding => "NonzeroPadding",
            StreamError::InvalidCodeword { .. } => "InvalidCodeword",
            StreamError::OutOfRange { .. } => "OutOfRange",
            StreamError::TrailingData { .. } => "TrailingData",
            StreamError::Code(e) => e.name(),
            StreamError::Io(_) => "Io",
        }
    }
}

impl fmt::Display for StreamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StreamError::BadMagic { found } => {
                write!(f, "bad magic bytes {found:02x?}")
            }
            StreamError::CorruptHeader { detail } => write!(f, "corrupt header: {detail}"),
            StreamError::TruncatedStream => write!(f, "stream ended inside a codeword"),
            StreamError::NonzeroPadding => write!(f, "padding bits are not all zero"),
            StreamError::InvalidCodeword { index, source } => {
                write!(f, "codeword {index} is invalid: {source}")
            }
            StreamError::OutOfRange { index, value, max } => {
                write!(f, "value {value} at index {index} exceeds capacity {max}")
            }
            StreamError::TrailingData { bytes } => {
                write!(f, "{bytes} trailing bytes after the packed stream")
            }
            StreamError::Code(e) => e.fmt(f),
            StreamError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for StreamError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            StreamError::InvalidCodeword { source, .. } => Some(source),
            StreamError::Code(e) => Some(e),
            StreamError::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<io::Error> for StreamError {
    fn from(e: io::Error) -> Self {
        StreamError::Io(e)
    }
}

impl From<CodeError> for StreamError {
    fn from(e: CodeError) -> Self {
        StreamError::Code(e)
    }
}

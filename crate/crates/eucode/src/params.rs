//! Coding schemes, their parameters, and capacity formulas.

use std::fmt;
use std::str::FromStr;

use crate::error::CodeError;

/// The supported coding schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Variable-length unary: `i` ones followed by a terminating zero.
    ClassicUnary,
    /// Fixed-length word with a single one marking the value; spread unary
    /// with k = 1.
    SpatialUnary,
    /// Fixed-length word with a run of k ones; the value is the position of
    /// the rightmost one, plus one.
    SpreadUnary,
    /// Extended unary with increasing spread: counting proceeds in cycles,
    /// cycle m sliding a run of m ones across the word.
    ExtendedIncreasingK,
    /// Extended unary with fixed spread: cycles beyond the first add an
    /// isolated marker one at growing cyclic distance from the k-run.
    ExtendedFixedK,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::ClassicUnary,
        Scheme::SpatialUnary,
        Scheme::SpreadUnary,
        Scheme::ExtendedIncreasingK,
        Scheme::ExtendedFixedK,
    ];

    /// Canonical name, also used by the CLI and the table text format.
    pub fn name(self) -> &'static str {
        match self {
            Scheme::ClassicUnary => "unary",
            Scheme::SpatialUnary => "spatial",
            Scheme::SpreadUnary => "su",
            Scheme::ExtendedIncreasingK => "eu-ik",
            Scheme::ExtendedFixedK => "eu-fk",
        }
    }

    /// True for every scheme with n-bit codewords; false for classic unary.
    pub fn is_fixed_length(self) -> bool {
        !matches!(self, Scheme::ClassicUnary)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseSchemeError {
    pub input: String,
}

impl fmt::Display for ParseSchemeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown scheme {:?}; expected unary, spatial, su, eu-ik, or eu-fk",
            self.input
        )
    }
}

impl std::error::Error for ParseSchemeError {}

impl FromStr for Scheme {
    type Err = ParseSchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|scheme| scheme.name() == s)
            .ok_or_else(|| ParseSchemeError { input: s.to_string() })
    }
}

/// A scheme together with its word length `n` and spread `k`.
///
/// `n` and `k` carry scheme-specific constraints checked by [`validate`]
/// (CodecParams::validate): classic unary ignores both, spatial requires
/// k = 1, the increasing-spread code stores k = 0, and the fixed-spread
/// code requires k >= 2 and n > k + 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodecParams {
    pub scheme: Scheme,
    pub n: u16,
    pub k: u16,
}

/// The largest encodable value; the representable range is `0..=N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Bounded(u64),
    Unbounded,
}

impl Capacity {
    pub fn bounded(self) -> Option<u64> {
        match self {
            Capacity::Bounded(max) => Some(max),
            Capacity::Unbounded => None,
        }
    }

    pub fn contains(self, value: u64) -> bool {
        match self {
            Capacity::Bounded(max) => value <= max,
            Capacity::Unbounded => true,
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Bounded(max) => write!(f, "{max}"),
            Capacity::Unbounded => write!(f, "no fixed capacity"),
        }
    }
}

impl CodecParams {
    pub fn classic_unary() -> Self {
        CodecParams { scheme: Scheme::ClassicUnary, n: 0, k: 0 }
    }

    pub fn spatial(n: u16) -> Self {
        CodecParams { scheme: Scheme::SpatialUnary, n, k: 1 }
    }

    pub fn spread(n: u16, k: u16) -> Self {
        CodecParams { scheme: Scheme::SpreadUnary, n, k }
    }

    pub fn eu_ik(n: u16) -> Self {
        CodecParams { scheme: Scheme::ExtendedIncreasingK, n, k: 0 }
    }

    pub fn eu_fk(n: u16, k: u16) -> Self {
        CodecParams { scheme: Scheme::ExtendedFixedK, n, k }
    }

    /// Checks the per-scheme constraints on `n` and `k`.
    pub fn validate(&self) -> Result<(), CodeError> {
        let scheme = self.scheme;
        match scheme {
            Scheme::ClassicUnary => Ok(()),
            Scheme::SpatialUnary => {
                if self.n == 0 {
                    Err(CodeError::InvalidN { scheme, n: self.n })
                } else if self.k != 1 {
                    Err(CodeError::InvalidK { scheme, k: self.k })
                } else {
                    Ok(())
                }
            }
            Scheme::SpreadUnary => {
                if self.n == 0 {
                    Err(CodeError::InvalidN { scheme, n: self.n })
                } else if self.k == 0 || self.k > self.n {
                    Err(CodeError::InvalidK { scheme, k: self.k })
                } else {
                    Ok(())
                }
            }
            Scheme::ExtendedIncreasingK => {
                if self.n == 0 {
                    Err(CodeError::InvalidN { scheme, n: self.n })
                } else if self.k != 0 {
                    // The spread varies by cycle, so a configured k is
                    // meaningless; accepting one silently would invite misuse.
                    Err(CodeError::InvalidK { scheme, k: self.k })
                } else {
                    Ok(())
                }
            }
            Scheme::ExtendedFixedK => {
                if self.k < 2 {
                    Err(CodeError::KRequiredAtLeast2 { k: self.k })
                } else if u32::from(self.n) <= u32::from(self.k) + 1 {
                    Err(CodeError::InvalidN { scheme, n: self.n })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// The largest encodable value for validated parameters.
    pub fn capacity(&self) -> Result<Capacity, CodeError> {
        self.validate()?;
        let n = u64::from(self.n);
        let k = u64::from(self.k);
        Ok(match self.scheme {
            Scheme::ClassicUnary => Capacity::Unbounded,
            Scheme::SpatialUnary | Scheme::SpreadUnary => Capacity::Bounded(n - k + 1),
            Scheme::ExtendedIncreasingK => Capacity::Bounded(n * (n + 1) / 2),
            Scheme::ExtendedFixedK => {
                let d = n - k;
                Capacity::Bounded(d * d - 1)
            }
        })
    }

    pub fn word_len(&self) -> usize {
        usize::from(self.n)
    }
}

impl fmt::Display for CodecParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "scheme={} n={} k={}", self.scheme, self.n, self.k)
    }
}

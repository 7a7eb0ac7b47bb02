//! Code metrics and parameter selection.
//!
//! [`select_params`] inverts the capacity formulas: given a target maximum
//! N it finds the smallest word length that can represent `0..=N`.
//! [`weight_census`] counts ones and zeros over a value range,
//! [`hamming_spectrum`] computes the exact pairwise distance histogram of a
//! full code table, and [`compare_lengths`] puts the word lengths of all
//! schemes side by side for one target.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use std::collections::BTreeMap;

use crate::codecs;
use crate::codeword::Codeword;
use crate::error::{CodeError, TableError};
use crate::oracle::{self, DEFAULT_TABLE_BOUND};
use crate::params::{Capacity, CodecParams, Scheme};

/// A request for the smallest parameters covering `0..=target_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamQuery {
    pub scheme: Scheme,
    /// Largest value that must be representable; at least 1.
    pub target_max: u64,
    /// Spread; required for the spread-unary and fixed-spread schemes.
    pub k: Option<u16>,
}

/// Returns the smallest valid `n` (for the scheme and spread) whose
/// capacity reaches `target_max`.
///
/// Spread and spatial unary have the closed form `n = N + k - 1`. The two
/// extended schemes seed `n` from an integer square root and settle with a
/// linear scan; capacity is monotone in `n`, so the first satisfying `n` is
/// minimal.
pub fn select_params(query: &ParamQuery) -> Result<CodecParams, CodeError> {
    let target = query.target_max;
    if target == 0 {
        return Err(CodeError::InvalidTarget { target });
    }
    let params = match query.scheme {
        Scheme::ClassicUnary => {
            return Err(CodeError::UnsupportedScheme { scheme: Scheme::ClassicUnary });
        }
        Scheme::SpatialUnary => {
            if let Some(k) = query.k {
                if k != 1 {
                    return Err(CodeError::InvalidK { scheme: Scheme::SpatialUnary, k });
                }
            }
            CodecParams::spatial(word_len_for(target)?)
        }
        Scheme::SpreadUnary => {
            let k = query.k.filter(|&k| k >= 1).ok_or(CodeError::InvalidK {
                scheme: Scheme::SpreadUnary,
                k: query.k.unwrap_or(0),
            })?;
            CodecParams::spread(word_len_for(target + u64::from(k) - 1)?, k)
        }
        Scheme::ExtendedIncreasingK => {
            if let Some(k) = query.k {
                if k != 0 {
                    return Err(CodeError::InvalidK { scheme: Scheme::ExtendedIncreasingK, k });
                }
            }
            // Smallest n with n(n+1)/2 >= N.
            let seed = (2 * target).isqrt().saturating_sub(1).max(1);
            let n = scan_min_n(seed, target, |n| Some(CodecParams::eu_ik(word_len_for(n).ok()?)))?;
            CodecParams::eu_ik(n)
        }
        Scheme::ExtendedFixedK => {
            let k = query.k.ok_or(CodeError::KRequiredAtLeast2 { k: 0 })?;
            if k < 2 {
                return Err(CodeError::KRequiredAtLeast2 { k });
            }
            // Smallest n > k + 1 with (n-k)^2 - 1 >= N.
            let seed = (u64::from(k) + target.isqrt()).max(u64::from(k) + 2);
            let n = scan_min_n(seed, target, |n| {
                Some(CodecParams::eu_fk(word_len_for(n).ok()?, k))
            })?;
            CodecParams::eu_fk(n, k)
        }
    };
    debug_assert!(params.validate().is_ok());
    debug_assert!(params.capacity().is_ok_and(|c| c.contains(target)));
    Ok(params)
}

fn word_len_for(n: u64) -> Result<u16, CodeError> {
    u16::try_from(n).map_err(|_| CodeError::InvalidTarget { target: n })
}

fn scan_min_n(
    seed: u64,
    target: u64,
    make: impl Fn(u64) -> Option<CodecParams>,
) -> Result<u16, CodeError> {
    // Walk the seed back while the predecessor still reaches the target,
    // then forward to the first n that does.
    let reaches = |n: u64| -> bool {
        make(n)
            .and_then(|p| p.capacity().ok())
            .is_some_and(|c| c.contains(target))
    };
    let mut n = seed;
    while n > 1 && reaches(n - 1) {
        n -= 1;
    }
    loop {
        if reaches(n) {
            return word_len_for(n);
        }
        if n >= u64::from(u16::MAX) {
            return Err(CodeError::InvalidTarget { target });
        }
        n += 1;
    }
}

/// Exact ones/zeros counts over the encodings of `0..=range_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightCensus {
    pub params: CodecParams,
    pub range_max: u64,
    pub total_ones: u64,
    pub total_zeros: u64,
    /// Popcount of each codeword, indexed by value.
    pub per_value_weights: Vec<u32>,
}

/// Counts ones and zeros over `encode(0)..=encode(range_max)`.
///
/// The range is bounded by the scheme capacity and by the default table
/// bound on entry count.
pub fn weight_census(params: &CodecParams, range_max: u64) -> Result<WeightCensus, TableError> {
    if let Capacity::Bounded(max) = params.capacity()? {
        if range_max > max {
            return Err(CodeError::OutOfRange { value: range_max, max }.into());
        }
    }
    let entries = range_max + 1;
    if entries > DEFAULT_TABLE_BOUND {
        return Err(TableError::TooLarge { entries, bound: DEFAULT_TABLE_BOUND });
    }
    #[cfg(feature = "parallel")]
    let stats = (0..entries)
        .into_par_iter()
        .map(|value| weight_of(params, value))
        .collect::<Result<Vec<_>, _>>()?;
    #[cfg(not(feature = "parallel"))]
    let stats = (0..entries)
        .map(|value| weight_of(params, value))
        .collect::<Result<Vec<_>, _>>()?;
    let total_ones: u64 = stats.iter().map(|&(ones, _)| u64::from(ones)).sum();
    let total_bits: u64 = stats.iter().map(|&(_, len)| len as u64).sum();
    Ok(WeightCensus {
        params: *params,
        range_max,
        total_ones,
        total_zeros: total_bits - total_ones,
        per_value_weights: stats.into_iter().map(|(ones, _)| ones).collect(),
    })
}

fn weight_of(params: &CodecParams, value: u64) -> Result<(u32, usize), CodeError> {
    let word = codecs::encode(params, value)?;
    Ok((word.count_ones(), word.len()))
}

/// Histogram of pairwise Hamming distances over a set of codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSpectrum {
    /// Distance -> number of unordered pairs at that distance.
    pub histogram: BTreeMap<u32, u64>,
    pub min_distance: Option<u32>,
    pub pairs: u64,
}

/// Exact brute-force distance spectrum of a full code table.
pub fn hamming_spectrum(params: &CodecParams) -> Result<DistanceSpectrum, TableError> {
    let table = oracle::generate_table(params)?;
    Ok(spectrum_of_words(table.words()))
}

/// Distance spectrum over an explicit set of equal-length words.
pub fn spectrum_of_words(words: &[Codeword]) -> DistanceSpectrum {
    #[cfg(feature = "parallel")]
    {
        let width = words.first().map_or(0, |w| w.len());
        let counts = (0..words.len())
            .into_par_iter()
            .fold(
                || vec![0u64; width + 1],
                |mut counts, i| {
                    tally_row(words, i, &mut counts);
                    counts
                },
            )
            .reduce(
                || vec![0u64; width + 1],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        spectrum_from_counts(&counts)
    }
    #[cfg(not(feature = "parallel"))]
    {
        spectrum_of_words_seq(words)
    }
}

/// Sequential variant of [`spectrum_of_words`].
pub fn spectrum_of_words_seq(words: &[Codeword]) -> DistanceSpectrum {
    let width = words.first().map_or(0, |w| w.len());
    let mut counts = vec![0u64; width + 1];
    for i in 0..words.len() {
        tally_row(words, i, &mut counts);
    }
    spectrum_from_counts(&counts)
}

fn tally_row(words: &[Codeword], i: usize, counts: &mut [u64]) {
    let word = &words[i];
    for other in &words[i + 1..] {
        counts[word.hamming(other) as usize] += 1;
    }
}

fn spectrum_from_counts(counts: &[u64]) -> DistanceSpectrum {
    let histogram: BTreeMap<u32, u64> = counts
        .iter()
        .enumerate()
        .filter(|&(_, &count)| count > 0)
        .map(|(distance, &count)| (distance as u32, count))
        .collect();
    DistanceSpectrum {
        min_distance: histogram.keys().next().copied(),
        pairs: histogram.values().sum(),
        histogram,
    }
}

/// Word lengths every scheme needs to represent `0..=target_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthComparison {
    pub target_max: u64,
    pub k: u16,
    /// Classic unary codeword length for the largest value: N + 1 bits.
    pub classic_unary_bits: u64,
    /// Spatial unary word length: n = N.
    pub spatial_bits: u64,
    /// Spread unary word length for the given k: n = N + k - 1.
    pub spread_bits: u64,
    /// Smallest increasing-spread word length.
    pub eu_ik_bits: u16,
    /// Smallest fixed-spread word length for the given k; `None` when
    /// k < 2, where the fixed-spread code is undefined.
    pub eu_fk_bits: Option<u16>,
}

/// Side-by-side word lengths for a target maximum and spread.
pub fn compare_lengths(target_max: u64, k: u16) -> Result<LengthComparison, CodeError> {
    if target_max == 0 {
        return Err(CodeError::InvalidTarget { target: 0 });
    }
    if k == 0 {
        return Err(CodeError::InvalidK { scheme: Scheme::SpreadUnary, k });
    }
    let eu_ik = select_params(&ParamQuery {
        scheme: Scheme::ExtendedIncreasingK,
        target_max,
        k: None,
    })?;
    let eu_fk = if k >= 2 {
        Some(
            select_params(&ParamQuery { scheme: Scheme::ExtendedFixedK, target_max, k: Some(k) })?
                .n,
        )
    } else {
        None
    };
    Ok(LengthComparison {
        target_max,
        k,
        classic_unary_bits: target_max + 1,
        spatial_bits: target_max,
        spread_bits: target_max + u64::from(k) - 1,
        eu_ik_bits: eu_ik.n,
        eu_fk_bits: eu_fk,
    })
}

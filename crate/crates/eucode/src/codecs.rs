//! Stateless encode and decode for every scheme, plus the cycle arithmetic
//! behind the two extended codes.
//!
//! All functions are pure; parameters are validated on entry and values are
//! range-checked against the scheme capacity. Encoding beyond capacity is a
//! hard error, never a silent wrap.

use crate::codeword::Codeword;
use crate::error::CodeError;
use crate::params::{Capacity, CodecParams, Scheme};

/// Position of a value inside the cycle structure of an extended code.
///
/// For the increasing-spread code, `cycle` is the run length m and `offset`
/// the slide position j within cycle m (1-based, `1 <= j <= n - m + 1`).
/// For the fixed-spread code, `cycle` is the cycle index c and `offset` the
/// shift position j within the cycle (1-based, `1 <= j <= n - k + 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleCoordinates {
    pub cycle: u32,
    pub offset: u32,
}

/// Values counted by cycles 1..=t of the increasing-spread code:
/// `t*n - t*(t-1)/2`.
fn increasing_cumulative(n: u64, t: u64) -> u64 {
    t * n - t * t.saturating_sub(1) / 2
}

/// Cycle coordinates of `value` in the increasing-spread code.
///
/// Returns the smallest run length m whose cumulative count reaches `value`,
/// and the slide offset within that cycle.
pub fn euik_coords(n: u16, value: u64) -> Result<CycleCoordinates, CodeError> {
    CodecParams::eu_ik(n).validate()?;
    let n = u64::from(n);
    let max = n * (n + 1) / 2;
    if value < 1 || value > max {
        return Err(CodeError::OutOfRange { value, max });
    }
    // Seed m from the quadratic closed form, then settle with the exact
    // integer predicate.
    let b = 2 * n + 1;
    let mut m = (b - (b * b - 8 * value).isqrt()) / 2;
    m = m.clamp(1, n);
    while increasing_cumulative(n, m) < value {
        m += 1;
    }
    while m > 1 && increasing_cumulative(n, m - 1) >= value {
        m -= 1;
    }
    let offset = value - increasing_cumulative(n, m - 1);
    debug_assert!(offset >= 1 && offset <= n - m + 1);
    Ok(CycleCoordinates { cycle: m as u32, offset: offset as u32 })
}

/// Cycle coordinates of `value` in the fixed-spread code.
///
/// Every cycle counts `n - k + 1` values and there are `n - k - 1` cycles.
pub fn eufk_coords(n: u16, k: u16, value: u64) -> Result<CycleCoordinates, CodeError> {
    CodecParams::eu_fk(n, k).validate()?;
    let d = u64::from(n - k);
    let max = d * d - 1;
    if value < 1 || value > max {
        return Err(CodeError::OutOfRange { value, max });
    }
    let per_cycle = d + 1;
    let cycle = value.div_ceil(per_cycle);
    let offset = value - (cycle - 1) * per_cycle;
    debug_assert!(cycle >= 1 && cycle < d);
    Ok(CycleCoordinates { cycle: cycle as u32, offset: offset as u32 })
}

/// Encodes `value` as a codeword.
///
/// Fixed-length schemes produce exactly `n` bits, with the all-zeros word
/// for 0. Classic unary produces `value` ones followed by one terminating
/// zero.
pub fn encode(params: &CodecParams, value: u64) -> Result<Codeword, CodeError> {
    if let Capacity::Bounded(max) = params.capacity()? {
        if value > max {
            return Err(CodeError::OutOfRange { value, max });
        }
    }
    let n = params.word_len();
    let k = usize::from(params.k);
    Ok(match params.scheme {
        Scheme::ClassicUnary => {
            let ones = usize::try_from(value).expect("unary codeword length overflows usize");
            let mut word = Codeword::zeros(ones + 1);
            if ones > 0 {
                word.set_run(1, ones);
            }
            word
        }
        Scheme::SpatialUnary | Scheme::SpreadUnary => {
            let mut word = Codeword::zeros(n);
            if value > 0 {
                let lo = value as usize - 1;
                word.set_run(lo, lo + k - 1);
            }
            word
        }
        Scheme::ExtendedIncreasingK => {
            let mut word = Codeword::zeros(n);
            if value > 0 {
                let coords = euik_coords(params.n, value)?;
                let lo = coords.offset as usize - 1;
                word.set_run(lo, lo + coords.cycle as usize - 1);
            }
            word
        }
        Scheme::ExtendedFixedK => {
            if value == 0 {
                Codeword::zeros(n)
            } else {
                let coords = eufk_coords(params.n, params.k, value)?;
                let mut base = Codeword::zeros(n);
                base.set_run(0, k - 1);
                if coords.cycle >= 2 {
                    base.set(k + coords.cycle as usize - 1);
                }
                base.cyclic_shift_left(u64::from(coords.offset) - 1)
            }
        }
    })
}

/// Decodes a codeword back to its value, rejecting every word outside the
/// image of [`encode`].
pub fn decode(params: &CodecParams, word: &Codeword) -> Result<u64, CodeError> {
    params.validate()?;
    if params.scheme == Scheme::ClassicUnary {
        return decode_classic(word);
    }
    let n = params.word_len();
    if word.len() != n {
        return Err(CodeError::LengthMismatch { expected: n, found: word.len() });
    }
    if word.is_zero() {
        return Ok(0);
    }
    match params.scheme {
        Scheme::SpatialUnary | Scheme::SpreadUnary => decode_spread(params.k, word),
        Scheme::ExtendedIncreasingK => decode_increasing(params.n, word),
        Scheme::ExtendedFixedK => decode_fixed(params.n, params.k, word),
        Scheme::ClassicUnary => unreachable!(),
    }
}

fn invalid(reason: &'static str) -> CodeError {
    CodeError::InvalidCodeword { reason }
}

fn decode_spread(k: u16, word: &Codeword) -> Result<u64, CodeError> {
    let runs = word.runs();
    if runs.len() != 1 {
        return Err(invalid("ones must form a single contiguous run"));
    }
    if runs[0].len() != usize::from(k) {
        return Err(invalid("run length must equal the spread k"));
    }
    Ok(runs[0].lo as u64 + 1)
}

fn decode_increasing(n: u16, word: &Codeword) -> Result<u64, CodeError> {
    let runs = word.runs();
    if runs.len() != 1 {
        return Err(invalid("ones must form a single contiguous run"));
    }
    let m = runs[0].len() as u64;
    Ok(increasing_cumulative(u64::from(n), m - 1) + runs[0].lo as u64 + 1)
}

fn decode_fixed(n: u16, k: u16, word: &Codeword) -> Result<u64, CodeError> {
    let popcount = word.count_ones() as usize;
    let k_len = usize::from(k);
    let runs = word.runs();
    if popcount == k_len {
        // First cycle: a bare k-run, no marker.
        if runs.len() != 1 {
            return Err(invalid("ones must form a single contiguous run"));
        }
        return Ok(runs[0].lo as u64 + 1);
    }
    if popcount != k_len + 1 {
        return Err(invalid("population count must be k or k+1"));
    }
    if runs.len() != 2 {
        return Err(invalid("ones must form a k-run plus one isolated marker"));
    }
    if runs[0].lo == 0 && runs[1].hi == word.len() - 1 {
        return Err(invalid("marker touches the run across the word boundary"));
    }
    let (krun, marker) = if runs[0].len() == k_len && runs[1].len() == 1 {
        (runs[0], runs[1])
    } else if runs[0].len() == 1 && runs[1].len() == k_len {
        (runs[1], runs[0])
    } else {
        return Err(invalid("ones must split into a k-run and a single marker"));
    };
    // Cyclic distance from the run start to the marker is k + c - 1.
    let cycle = (marker.lo as i64 - krun.lo as i64 - i64::from(k))
        .rem_euclid(i64::from(n)) as u64
        + 1;
    let cycles = u64::from(n - k) - 1;
    if cycle < 2 || cycle > cycles {
        return Err(invalid("marker distance out of range"));
    }
    let per_cycle = u64::from(n - k) + 1;
    Ok((cycle - 1) * per_cycle + krun.lo as u64 + 1)
}

fn decode_classic(word: &Codeword) -> Result<u64, CodeError> {
    // Canonical form: value ones, then the terminating zero as the last bit.
    if word.get(0) {
        return Err(invalid("missing terminating zero"));
    }
    let ones = word.count_ones() as usize;
    if ones != word.len() - 1 {
        return Err(invalid("ones must be contiguous before the terminating zero"));
    }
    Ok(ones as u64)
}

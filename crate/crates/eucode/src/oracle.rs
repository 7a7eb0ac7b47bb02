//! Exhaustive enumeration of code tables, used as ground truth for the
//! codecs and for adjudicating external reference listings.
//!
//! A [`CodeTable`] materializes `encode` for every value `0..=capacity`.
//! Generation is deterministic, bails out above a configurable entry bound,
//! and treats a duplicate codeword as a hard error. The table doubles as a
//! reverse decoder for differential testing: [`exhaustive_decode_check`]
//! sweeps every possible n-bit word and confirms that `decode` accepts
//! exactly the words in the table, with the same values.

use std::collections::HashMap;
use std::fmt;
use std::io;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::codecs;
use crate::codeword::Codeword;
use crate::error::TableError;
use crate::params::{Capacity, CodecParams, Scheme};

/// Default cap on enumerated entries; guards against accidental huge
/// enumerations from CLI misuse. Overridable per call.
pub const DEFAULT_TABLE_BOUND: u64 = 1 << 20;

/// Largest word length accepted by [`exhaustive_decode_check`], which
/// enumerates all `2^n` words.
pub const MAX_SWEEP_BITS: u16 = 24;

/// The exhaustive value -> codeword map for one set of parameters.
///
/// Entries are dense: index `i` holds the codeword of value `i`. A reverse
/// index supports codeword lookup.
#[derive(Debug, Clone)]
pub struct CodeTable {
    params: CodecParams,
    words: Vec<Codeword>,
    index: HashMap<Codeword, u64>,
}

impl CodeTable {
    pub fn params(&self) -> &CodecParams {
        &self.params
    }

    /// Number of entries (`capacity + 1`).
    pub fn len(&self) -> u64 {
        self.words.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn codeword(&self, value: u64) -> Option<&Codeword> {
        usize::try_from(value).ok().and_then(|i| self.words.get(i))
    }

    /// Reverse lookup: the value whose codeword is `word`, if any.
    pub fn lookup(&self, word: &Codeword) -> Option<u64> {
        self.index.get(word).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &Codeword)> {
        self.words.iter().enumerate().map(|(i, w)| (i as u64, w))
    }

    pub fn words(&self) -> &[Codeword] {
        &self.words
    }
}

/// Enumerates the full table with the default entry bound.
pub fn generate_table(params: &CodecParams) -> Result<CodeTable, TableError> {
    generate_table_bounded(params, DEFAULT_TABLE_BOUND)
}

/// Enumerates the full table, refusing to build more than `max_entries`
/// entries.
pub fn generate_table_bounded(
    params: &CodecParams,
    max_entries: u64,
) -> Result<CodeTable, TableError> {
    let entries = checked_entry_count(params, max_entries)?;
    #[cfg(feature = "parallel")]
    let words = (0..entries)
        .into_par_iter()
        .map(|value| codecs::encode(params, value))
        .collect::<Result<Vec<_>, _>>()?;
    #[cfg(not(feature = "parallel"))]
    let words = (0..entries)
        .map(|value| codecs::encode(params, value))
        .collect::<Result<Vec<_>, _>>()?;
    build_table(*params, words)
}

/// Sequential variant of [`generate_table_bounded`].
pub fn generate_table_bounded_seq(
    params: &CodecParams,
    max_entries: u64,
) -> Result<CodeTable, TableError> {
    let entries = checked_entry_count(params, max_entries)?;
    let words = (0..entries)
        .map(|value| codecs::encode(params, value))
        .collect::<Result<Vec<_>, _>>()?;
    build_table(*params, words)
}

fn checked_entry_count(params: &CodecParams, max_entries: u64) -> Result<u64, TableError> {
    let capacity = params.capacity()?;
    let max = match capacity {
        Capacity::Bounded(max) => max,
        Capacity::Unbounded => {
            return Err(TableError::Unbounded { scheme: params.scheme });
        }
    };
    let entries = max + 1;
    if entries > max_entries {
        return Err(TableError::TooLarge { entries, bound: max_entries });
    }
    Ok(entries)
}

fn build_table(params: CodecParams, words: Vec<Codeword>) -> Result<CodeTable, TableError> {
    let mut index = HashMap::with_capacity(words.len());
    for (value, word) in words.iter().enumerate() {
        if let Some(first) = index.insert(word.clone(), value as u64) {
            return Err(TableError::DuplicateCodeword { first, second: value as u64 });
        }
    }
    Ok(CodeTable { params, words, index })
}

/// Oracle decode: pure table lookup, independent of the parsing decoder.
pub fn decode_via_table(table: &CodeTable, word: &Codeword) -> Option<u64> {
    table.lookup(word)
}

/// Result of checking a table against the closed-form counting theorems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub distinct_codewords: u64,
    /// Codewords shared by more than one value, with the values.
    pub duplicates: Vec<(String, Vec<u64>)>,
    /// Entry count the capacity formula predicts (`capacity + 1`).
    pub expected_distinct: u64,
    pub count_matches_theorem: bool,
}

/// Counts distinct codewords and compares against the capacity formula.
pub fn verify_bijection(table: &CodeTable) -> BijectionReport {
    let mut by_word: HashMap<&Codeword, Vec<u64>> = HashMap::new();
    for (value, word) in table.entries() {
        by_word.entry(word).or_default().push(value);
    }
    let distinct = by_word.len() as u64;
    let mut duplicates: Vec<(String, Vec<u64>)> = by_word
        .into_iter()
        .filter(|(_, values)| values.len() > 1)
        .map(|(word, values)| (word.to_string(), values))
        .collect();
    duplicates.sort_by(|a, b| a.1.cmp(&b.1));
    let expected = match table.params().capacity() {
        Ok(Capacity::Bounded(max)) => max + 1,
        _ => 0,
    };
    BijectionReport {
        distinct_codewords: distinct,
        duplicates,
        expected_distinct: expected,
        count_matches_theorem: distinct == expected,
    }
}

/// One disagreement found by [`exhaustive_decode_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepMismatch {
    pub word: String,
    pub decoded: Option<u64>,
    pub in_table: Option<u64>,
}

/// Result of sweeping every n-bit word through the decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub words_checked: u64,
    /// Words the decoder accepted.
    pub accepted: u64,
    pub mismatch_count: u64,
    /// At most [`SweepReport::MAX_EXAMPLES`] sample disagreements.
    pub examples: Vec<SweepMismatch>,
}

impl SweepReport {
    pub const MAX_EXAMPLES: usize = 16;

    pub fn is_consistent(&self) -> bool {
        self.mismatch_count == 0
    }
}

/// Differentially tests the decoder against the table on every possible
/// n-bit word: `decode` must accept exactly the table's codewords, with the
/// table's values, and reject everything else.
pub fn exhaustive_decode_check(table: &CodeTable) -> Result<SweepReport, TableError> {
    let (params, total) = sweep_range(table)?;
    #[cfg(feature = "parallel")]
    let report = {
        let merged = (0..total)
            .into_par_iter()
            .fold(SweepTally::default, |mut tally, bits| {
                tally.check(&params, table, bits);
                tally
            })
            .reduce(SweepTally::default, SweepTally::merge);
        merged.into_report(total)
    };
    #[cfg(not(feature = "parallel"))]
    let report = {
        let mut tally = SweepTally::default();
        for bits in 0..total {
            tally.check(&params, table, bits);
        }
        tally.into_report(total)
    };
    Ok(report)
}

/// Sequential variant of [`exhaustive_decode_check`].
pub fn exhaustive_decode_check_seq(table: &CodeTable) -> Result<SweepReport, TableError> {
    let (params, total) = sweep_range(table)?;
    let mut tally = SweepTally::default();
    for bits in 0..total {
        tally.check(&params, table, bits);
    }
    Ok(tally.into_report(total))
}

fn sweep_range(table: &CodeTable) -> Result<(CodecParams, u64), TableError> {
    let params = *table.params();
    if params.n > MAX_SWEEP_BITS {
        return Err(TableError::TooLarge {
            entries: 1u64 << MAX_SWEEP_BITS.min(params.n),
            bound: 1u64 << MAX_SWEEP_BITS,
        });
    }
    Ok((params, 1u64 << params.n))
}

#[derive(Default)]
struct SweepTally {
    accepted: u64,
    mismatch_count: u64,
    examples: Vec<SweepMismatch>,
}

impl SweepTally {
    fn check(&mut self, params: &CodecParams, table: &CodeTable, bits: u64) {
        let word = Codeword::from_uint(bits, params.word_len());
        let decoded = codecs::decode(params, &word).ok();
        let in_table = table.lookup(&word);
        if decoded.is_some() {
            self.accepted += 1;
        }
        if decoded != in_table {
            self.mismatch_count += 1;
            if self.examples.len() < SweepReport::MAX_EXAMPLES {
                self.examples.push(SweepMismatch { word: word.to_string(), decoded, in_table });
            }
        }
    }

    #[cfg(feature = "parallel")]
    fn merge(mut self, other: SweepTally) -> SweepTally {
        self.accepted += other.accepted;
        self.mismatch_count += other.mismatch_count;
        for example in other.examples {
            if self.examples.len() >= SweepReport::MAX_EXAMPLES {
                break;
            }
            self.examples.push(example);
        }
        self
    }

    fn into_report(self, words_checked: u64) -> SweepReport {
        SweepReport {
            words_checked,
            accepted: self.accepted,
            mismatch_count: self.mismatch_count,
            examples: self.examples,
        }
    }
}

/// One row where an external reference listing disagrees with enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowDiff {
    pub value: u64,
    pub reference: String,
    /// What enumeration produces for the value; `None` when the value lies
    /// beyond the scheme capacity.
    pub enumerated: Option<String>,
}

/// Discrepancies between a generated table and a reference listing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyReport {
    pub params: CodecParams,
    pub rows_checked: usize,
    pub matching_rows: usize,
    pub mismatches: Vec<RowDiff>,
    /// Codewords appearing under more than one value in the reference.
    pub reference_duplicates: Vec<(String, Vec<u64>)>,
}

impl DiscrepancyReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty() && self.reference_duplicates.is_empty()
    }

    pub fn mismatched_values(&self) -> Vec<u64> {
        self.mismatches.iter().map(|d| d.value).collect()
    }
}

impl fmt::Display for DiscrepancyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "reference check: {}", self.params)?;
        writeln!(
            f,
            "rows={} matching={} mismatching={}",
            self.rows_checked,
            self.matching_rows,
            self.mismatches.len()
        )?;
        for diff in &self.mismatches {
            match &diff.enumerated {
                Some(word) => writeln!(
                    f,
                    "value {}: reference={} enumerated={}",
                    diff.value, diff.reference, word
                )?,
                None => writeln!(
                    f,
                    "value {}: reference={} enumerated=<beyond capacity>",
                    diff.value, diff.reference
                )?,
            }
        }
        for (word, values) in &self.reference_duplicates {
            let values = values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            writeln!(f, "duplicate codeword in reference: {word} at values {values}")?;
        }
        Ok(())
    }
}

/// Compares a generated table against raw reference rows `(value, bits)`.
///
/// Rows are compared textually, so a malformed reference row simply shows
/// up as a mismatch. Values beyond the enumerated capacity are reported
/// with no enumerated counterpart.
pub fn diff_against_reference(table: &CodeTable, rows: &[(u64, String)]) -> DiscrepancyReport {
    let mut mismatches = Vec::new();
    let mut matching = 0usize;
    for (value, bits) in rows {
        let enumerated = table.codeword(*value).map(|w| w.to_string());
        match &enumerated {
            Some(word) if word == bits => matching += 1,
            _ => mismatches.push(RowDiff {
                value: *value,
                reference: bits.clone(),
                enumerated,
            }),
        }
    }
    mismatches.sort_by_key(|d| d.value);
    let mut by_word: HashMap<&str, Vec<u64>> = HashMap::new();
    for (value, bits) in rows {
        by_word.entry(bits.as_str()).or_default().push(*value);
    }
    let mut reference_duplicates: Vec<(String, Vec<u64>)> = by_word
        .into_iter()
        .filter(|(_, values)| values.len() > 1)
        .map(|(word, mut values)| {
            values.sort_unstable();
            (word.to_string(), values)
        })
        .collect();
    reference_duplicates.sort_by(|a, b| a.1.cmp(&b.1));
    DiscrepancyReport {
        params: *table.params(),
        rows_checked: rows.len(),
        matching_rows: matching,
        mismatches,
        reference_duplicates,
    }
}

/// Writes the table in the text export format: a `# scheme=<s> n=<n> k=<k>`
/// comment line, then one `<value><TAB><bitstring>` line per entry.
pub fn write_table_text(table: &CodeTable, out: &mut impl io::Write) -> io::Result<()> {
    let p = table.params();
    writeln!(out, "# scheme={} n={} k={}", p.scheme, p.n, p.k)?;
    for (value, word) in table.entries() {
        writeln!(out, "{value}\t{word}")?;
    }
    Ok(())
}

pub fn table_to_string(table: &CodeTable) -> String {
    let mut buf = Vec::new();
    write_table_text(table, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("table text is ASCII")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableTextError {
    MissingHeader,
    BadHeader { detail: String },
    BadRow { line: usize, content: String },
}

impl fmt::Display for TableTextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableTextError::MissingHeader => {
                write!(f, "missing '# scheme=<s> n=<n> k=<k>' header line")
            }
            TableTextError::BadHeader { detail } => write!(f, "bad header: {detail}"),
            TableTextError::BadRow { line, content } => {
                write!(f, "bad row at line {line}: {content:?}")
            }
        }
    }
}

impl std::error::Error for TableTextError {}

/// Parses the table text format back into parameters and raw rows.
///
/// Rows are not checked against the table invariants, so reference listings
/// with duplicate or out-of-range rows parse fine; adjudicate them with
/// [`diff_against_reference`].
pub fn parse_table_text(text: &str) -> Result<(CodecParams, Vec<(u64, String)>), TableTextError> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) if line.trim().is_empty() => continue,
            Some((_, line)) => break line,
            None => return Err(TableTextError::MissingHeader),
        }
    };
    let header = header.strip_prefix('#').ok_or(TableTextError::MissingHeader)?;
    let mut scheme: Option<Scheme> = None;
    let mut n: Option<u16> = None;
    let mut k: Option<u16> = None;
    for field in header.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(|| TableTextError::BadHeader {
            detail: format!("expected key=value, got {field:?}"),
        })?;
        let bad = |detail: String| TableTextError::BadHeader { detail };
        match key {
            "scheme" => {
                scheme = Some(value.parse().map_err(|e| bad(format!("{e}")))?);
            }
            "n" => n = Some(value.parse().map_err(|_| bad(format!("bad n {value:?}")))?),
            "k" => k = Some(value.parse().map_err(|_| bad(format!("bad k {value:?}")))?),
            other => {
                return Err(bad(format!("unknown header field {other:?}")));
            }
        }
    }
    let params = CodecParams {
        scheme: scheme.ok_or_else(|| TableTextError::BadHeader {
            detail: "missing scheme".into(),
        })?,
        n: n.unwrap_or(0),
        k: k.unwrap_or(0),
    };
    params.validate().map_err(|e| TableTextError::BadHeader { detail: e.to_string() })?;
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad_row = || TableTextError::BadRow { line: idx + 1, content: line.to_string() };
        let mut fields = line.split_whitespace();
        let value = fields
            .next()
            .and_then(|v| v.parse::<u64>().ok())
            .ok_or_else(bad_row)?;
        let bits = fields.next().ok_or_else(bad_row)?;
        if fields.next().is_some() {
            return Err(bad_row());
        }
        rows.push((value, bits.to_string()));
    }
    Ok((params, rows))
}

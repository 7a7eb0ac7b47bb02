//! Command-line front end for the eucode library.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on domain errors
//! (validation failures, out-of-range values, invalid codewords, malformed
//! streams). Domain errors are reported on stderr with the library error
//! name. `-` names stdin or stdout in `--in`/`--out`.

use std::fs::File;
use std::io::{self, Read, Write};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use eucode::analysis::{self, ParamQuery};
use eucode::bitstream;
use eucode::codecs;
use eucode::oracle::{self, DEFAULT_TABLE_BOUND};
use eucode::{Capacity, CodecParams, Codeword, Scheme};

/// Parses `args` and executes the command, writing to the given streams.
/// Returns the process exit code.
pub fn run<O: Write, E: Write>(
    args: impl IntoIterator<Item = std::ffi::OsString>,
    out: &mut O,
    err: &mut E,
) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return 1;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(CliError::Usage(message)) => {
            let _ = writeln!(err, "usage error: {message}");
            1
        }
        Err(CliError::Domain { name, message }) => {
            let _ = writeln!(err, "error: {name}: {message}");
            2
        }
    }
}

#[derive(Parser)]
#[command(name = "eucode", version, about = "Fixed-length unary-family integer codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode values to codewords
    Encode {
        #[command(flatten)]
        codec: CodecArgs,
        /// Values to encode
        #[arg(value_name = "VALUE")]
        values: Vec<String>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Decode codewords to values
    Decode {
        #[command(flatten)]
        codec: CodecArgs,
        /// Codewords as 0/1 strings, leftmost bit first
        #[arg(value_name = "CODEWORD")]
        words: Vec<String>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Print the full value/codeword table
    Table {
        #[command(flatten)]
        codec: CodecArgs,
        /// Refuse tables with more entries than this
        #[arg(long, default_value_t = DEFAULT_TABLE_BOUND)]
        max_entries: u64,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Print the largest encodable value
    Capacity {
        #[command(flatten)]
        codec: CodecArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Find the smallest word length for a target maximum
    Select {
        /// Coding scheme: spatial, su, eu-ik or eu-fk
        #[arg(long, value_parser = parse_scheme)]
        scheme: Scheme,
        /// Largest value that must be representable
        #[arg(long)]
        target: u64,
        /// Spread (required for su and eu-fk)
        #[arg(long)]
        k: Option<u16>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Count ones and zeros over a value range
    Census {
        #[command(flatten)]
        codec: CodecArgs,
        /// Largest value to include (default: full capacity)
        #[arg(long)]
        max: Option<u64>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Pairwise Hamming-distance histogram of the full table
    Spectrum {
        #[command(flatten)]
        codec: CodecArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Pack values into the binary stream format
    Pack {
        #[command(flatten)]
        codec: CodecArgs,
        /// Values to pack
        #[arg(value_name = "VALUE")]
        values: Vec<String>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Unpack a binary stream (parameters come from its header)
    Unpack {
        /// Stream file to read, or - for stdin
        #[arg(long = "in", value_name = "FILE")]
        input: String,
        /// Output file, or - for stdout
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check the enumerated table against the counting theorems
    Verify {
        #[command(flatten)]
        codec: CodecArgs,
        /// Diff the enumeration against a reference table file
        #[arg(long, value_name = "FILE")]
        reference: Option<String>,
        /// Refuse tables with more entries than this
        #[arg(long, default_value_t = DEFAULT_TABLE_BOUND)]
        max_entries: u64,
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Args)]
struct CodecArgs {
    /// Coding scheme: unary, spatial, su, eu-ik or eu-fk
    #[arg(long, value_parser = parse_scheme)]
    scheme: Scheme,
    /// Word length in bits
    #[arg(long)]
    n: Option<u16>,
    /// Spread: number of ones in the basic run
    #[arg(long)]
    k: Option<u16>,
}

#[derive(Args)]
struct IoArgs {
    /// Read inputs from a file instead of the command line, - for stdin
    #[arg(long = "in", value_name = "FILE")]
    input: Option<String>,
    /// Output file, or - for stdout
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Default, PartialEq, Eq)]
enum Format {
    #[default]
    Text,
    Machine,
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|e| format!("{e}"))
}

enum CliError {
    Usage(String),
    Domain { name: &'static str, message: String },
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn domain(name: &'static str, error: impl std::fmt::Display) -> CliError {
    CliError::Domain { name, message: error.to_string() }
}

impl From<eucode::CodeError> for CliError {
    fn from(e: eucode::CodeError) -> Self {
        domain(e.name(), e)
    }
}

impl From<eucode::TableError> for CliError {
    fn from(e: eucode::TableError) -> Self {
        domain(e.name(), e)
    }
}

impl From<eucode::StreamError> for CliError {
    fn from(e: eucode::StreamError) -> Self {
        domain(e.name(), e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        domain("Io", e)
    }
}

impl CodecArgs {
    fn to_params(&self) -> Result<CodecParams, CliError> {
        let params = match self.scheme {
            Scheme::ClassicUnary => CodecParams::classic_unary(),
            scheme => {
                let n = self.n.ok_or_else(|| usage("--n is required for this scheme"))?;
                let k = match scheme {
                    Scheme::SpreadUnary | Scheme::ExtendedFixedK => {
                        self.k.ok_or_else(|| usage("--k is required for su and eu-fk"))?
                    }
                    Scheme::SpatialUnary => self.k.unwrap_or(1),
                    Scheme::ExtendedIncreasingK => self.k.unwrap_or(0),
                    Scheme::ClassicUnary => unreachable!(),
                };
                CodecParams { scheme, n, k }
            }
        };
        params.validate()?;
        Ok(params)
    }
}

fn execute(command: Command, out: &mut impl Write) -> Result<(), CliError> {
    match command {
        Command::Encode { codec, values, io } => {
            let params = codec.to_params()?;
            let values = parse_values(&gather_inputs(&values, &io.input)?)?;
            let mut sink = open_sink(&io.out, out)?;
            for value in values {
                let word = codecs::encode(&params, value)?;
                match io.format {
                    Format::Text => writeln!(sink, "{word}")?,
                    Format::Machine => writeln!(sink, "{value}={word}")?,
                }
            }
            Ok(())
        }
        Command::Decode { codec, words, io } => {
            let params = codec.to_params()?;
            let words = parse_words(&gather_inputs(&words, &io.input)?)?;
            let mut sink = open_sink(&io.out, out)?;
            for word in words {
                let value = codecs::decode(&params, &word)?;
                match io.format {
                    Format::Text => writeln!(sink, "{value}")?,
                    Format::Machine => writeln!(sink, "{word}={value}")?,
                }
            }
            Ok(())
        }
        Command::Table { codec, max_entries, io } => {
            let params = codec.to_params()?;
            let table = oracle::generate_table_bounded(&params, max_entries)?;
            let mut sink = open_sink(&io.out, out)?;
            match io.format {
                Format::Text => oracle::write_table_text(&table, &mut sink)?,
                Format::Machine => {
                    write_params_machine(&mut sink, &params)?;
                    writeln!(sink, "entries={}", table.len())?;
                    for (value, word) in table.entries() {
                        writeln!(sink, "{value}={word}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Capacity { codec, io } => {
            let params = codec.to_params()?;
            let capacity = params.capacity()?;
            let mut sink = open_sink(&io.out, out)?;
            match io.format {
                Format::Text => writeln!(sink, "{capacity}")?,
                Format::Machine => match capacity {
                    Capacity::Bounded(max) => writeln!(sink, "capacity={max}")?,
                    Capacity::Unbounded => writeln!(sink, "capacity=unbounded")?,
                },
            }
            Ok(())
        }
        Command::Select { scheme, target, k, io } => {
            let params = analysis::select_params(&ParamQuery { scheme, target_max: target, k })?;
            let mut sink = open_sink(&io.out, out)?;
            match io.format {
                Format::Text => writeln!(sink, "n={}", params.n)?,
                Format::Machine => {
                    write_params_machine(&mut sink, &params)?;
                    if let Capacity::Bounded(max) = params.capacity()? {
                        writeln!(sink, "capacity={max}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Census { codec, max, io } => {
            let params = codec.to_params()?;
            let range_max = match (max, params.capacity()?) {
                (Some(max), _) => max,
                (None, Capacity::Bounded(max)) => max,
                (None, Capacity::Unbounded) => {
                    return Err(usage("--max is required for unary (no fixed capacity)"));
                }
            };
            let census = analysis::weight_census(&params, range_max)?;
            let mut sink = open_sink(&io.out, out)?;
            match io.format {
                Format::Text => {
                    writeln!(sink, "{params} range=0..{range_max}")?;
                    writeln!(sink, "{:>12} {:>8}", "value", "weight")?;
                    for (value, weight) in census.per_value_weights.iter().enumerate() {
                        writeln!(sink, "{value:>12} {weight:>8}")?;
                    }
                    writeln!(sink, "total ones:  {}", census.total_ones)?;
                    writeln!(sink, "total zeros: {}", census.total_zeros)?;
                }
                Format::Machine => {
                    write_params_machine(&mut sink, &params)?;
                    writeln!(sink, "range_max={range_max}")?;
                    writeln!(sink, "total_ones={}", census.total_ones)?;
                    writeln!(sink, "total_zeros={}", census.total_zeros)?;
                    for (value, weight) in census.per_value_weights.iter().enumerate() {
                        writeln!(sink, "weight_{value}={weight}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Spectrum { codec, io } => {
            let params = codec.to_params()?;
            let spectrum = analysis::hamming_spectrum(&params)?;
            let mut sink = open_sink(&io.out, out)?;
            match io.format {
                Format::Text => {
                    writeln!(sink, "{params}")?;
                    writeln!(sink, "{:>8} {:>12}", "distance", "pairs")?;
                    for (distance, pairs) in &spectrum.histogram {
                        writeln!(sink, "{distance:>8} {pairs:>12}")?;
                    }
                    match spectrum.min_distance {
                        Some(d) => writeln!(sink, "min distance: {d}")?,
                        None => writeln!(sink, "min distance: none (fewer than two codewords)")?,
                    }
                    writeln!(sink, "pairs: {}", spectrum.pairs)?;
                }
                Format::Machine => {
                    write_params_machine(&mut sink, &params)?;
                    writeln!(sink, "pairs={}", spectrum.pairs)?;
                    match spectrum.min_distance {
                        Some(d) => writeln!(sink, "min_distance={d}")?,
                        None => writeln!(sink, "min_distance=none")?,
                    }
                    for (distance, pairs) in &spectrum.histogram {
                        writeln!(sink, "dist_{distance}={pairs}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Pack { codec, values, io } => {
            let params = codec.to_params()?;
            let values = parse_values(&gather_inputs(&values, &io.input)?)?;
            if io.out == "-" {
                bitstream::pack(&params, &values, out)?;
            } else {
                let mut file = File::create(&io.out)?;
                let bytes = bitstream::pack(&params, &values, &mut file)?;
                match io.format {
                    Format::Text => writeln!(out, "wrote {bytes} bytes to {}", io.out)?,
                    Format::Machine => writeln!(out, "bytes_written={bytes}")?,
                }
            }
            Ok(())
        }
        Command::Unpack { input, out: out_path, format } => {
            let bytes = read_binary(&input)?;
            let (params, values) = bitstream::unpack_bytes(&bytes)?;
            let mut sink = open_sink(&out_path, out)?;
            match format {
                Format::Text => {
                    writeln!(sink, "{params} count={}", values.len())?;
                    for value in values {
                        writeln!(sink, "{value}")?;
                    }
                }
                Format::Machine => {
                    write_params_machine(&mut sink, &params)?;
                    writeln!(sink, "count={}", values.len())?;
                    for value in values {
                        writeln!(sink, "value={value}")?;
                    }
                }
            }
            Ok(())
        }
        Command::Verify { codec, reference, max_entries, io } => {
            let params = codec.to_params()?;
            let table = oracle::generate_table_bounded(&params, max_entries)?;
            let report = oracle::verify_bijection(&table);
            let sweep = if params.n <= 16 {
                Some(oracle::exhaustive_decode_check(&table)?)
            } else {
                None
            };
            let reference = match reference {
                Some(path) => {
                    let text = read_text(&path)?;
                    let (ref_params, rows) = oracle::parse_table_text(&text)
                        .map_err(|e| domain("BadReference", e))?;
                    if ref_params != params {
                        return Err(domain(
                            "BadReference",
                            format!("reference header ({ref_params}) disagrees with requested parameters ({params})"),
                        ));
                    }
                    Some(oracle::diff_against_reference(&table, &rows))
                }
                None => None,
            };
            let mut sink = open_sink(&io.out, out)?;
            let ok = report.count_matches_theorem
                && sweep.as_ref().is_none_or(|s| s.is_consistent());
            match io.format {
                Format::Text => {
                    writeln!(sink, "{params}")?;
                    writeln!(sink, "distinct codewords: {}", report.distinct_codewords)?;
                    writeln!(sink, "expected (capacity + 1): {}", report.expected_distinct)?;
                    writeln!(
                        sink,
                        "count matches theorem: {}",
                        if report.count_matches_theorem { "yes" } else { "no" }
                    )?;
                    match &sweep {
                        Some(s) => writeln!(
                            sink,
                            "decode sweep: {} words checked, {} accepted, {} mismatches",
                            s.words_checked, s.accepted, s.mismatch_count
                        )?,
                        None => writeln!(sink, "decode sweep: skipped (n > 16)")?,
                    }
                    if let Some(diff) = &reference {
                        write!(sink, "{diff}")?;
                    }
                }
                Format::Machine => {
                    write_params_machine(&mut sink, &params)?;
                    writeln!(sink, "distinct={}", report.distinct_codewords)?;
                    writeln!(sink, "expected={}", report.expected_distinct)?;
                    writeln!(sink, "count_matches_theorem={}", report.count_matches_theorem)?;
                    if let Some(s) = &sweep {
                        writeln!(sink, "sweep_words={}", s.words_checked)?;
                        writeln!(sink, "sweep_accepted={}", s.accepted)?;
                        writeln!(sink, "sweep_mismatches={}", s.mismatch_count)?;
                    }
                    if let Some(diff) = &reference {
                        writeln!(sink, "reference_rows={}", diff.rows_checked)?;
                        writeln!(sink, "reference_matching={}", diff.matching_rows)?;
                        writeln!(sink, "reference_mismatching={}", diff.mismatches.len())?;
                        writeln!(sink, "reference_duplicates={}", diff.reference_duplicates.len())?;
                    }
                }
            }
            if !ok {
                return Err(CliError::Domain {
                    name: "VerifyFailed",
                    message: "enumeration disagrees with the counting theorems".to_string(),
                });
            }
            Ok(())
        }
    }
}

fn write_params_machine(sink: &mut impl Write, params: &CodecParams) -> io::Result<()> {
    writeln!(sink, "scheme={}", params.scheme)?;
    writeln!(sink, "n={}", params.n)?;
    writeln!(sink, "k={}", params.k)
}

/// Positional arguments or newline-separated `--in` lines, but not both.
fn gather_inputs(
    positionals: &[String],
    input: &Option<String>,
) -> Result<Vec<String>, CliError> {
    match (positionals.is_empty(), input) {
        (false, None) => Ok(positionals.to_vec()),
        (true, Some(path)) => {
            let text = read_text(path)?;
            Ok(text
                .lines()
                .map(str::trim)
                .filter(|line| !line.is_empty() && !line.starts_with('#'))
                .map(str::to_string)
                .collect())
        }
        (false, Some(_)) => Err(usage("give positional inputs or --in, not both")),
        (true, None) => Err(usage("no input given; pass positional inputs or --in FILE")),
    }
}

fn parse_values(inputs: &[String]) -> Result<Vec<u64>, CliError> {
    inputs
        .iter()
        .map(|s| s.parse::<u64>().map_err(|_| usage(format!("not a nonnegative integer: {s:?}"))))
        .collect()
}

fn parse_words(inputs: &[String]) -> Result<Vec<Codeword>, CliError> {
    inputs
        .iter()
        .map(|s| s.parse::<Codeword>().map_err(|e| domain("InvalidCodeword", e)))
        .collect()
}

fn read_text(path: &str) -> Result<String, CliError> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        File::open(path)?.read_to_string(&mut text)?;
    }
    Ok(text)
}

fn read_binary(path: &str) -> Result<Vec<u8>, CliError> {
    let mut bytes = Vec::new();
    if path == "-" {
        io::stdin().read_to_end(&mut bytes)?;
    } else {
        File::open(path)?.read_to_end(&mut bytes)?;
    }
    Ok(bytes)
}

fn open_sink<'a>(path: &str, out: &'a mut impl Write) -> Result<Box<dyn Write + 'a>, CliError> {
    if path == "-" {
        Ok(Box::new(out))
    } else {
        Ok(Box::new(File::create(path)?))
    }
}

//! End-to-end tests of the command-line surface: outputs, formats, exit
//! codes, file I/O, and the checked-in packed stream fixture.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::Command;

fn run_cli(args: &[&str]) -> (u8, Vec<u8>, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eucode")
        .chain(args.iter().copied())
        .map(OsString::from);
    let code = eucode_cli::run(argv, &mut out, &mut err);
    (code, out, String::from_utf8(err).unwrap())
}

fn run_ok(args: &[&str]) -> String {
    let (code, out, err) = run_cli(args);
    assert_eq!(code, 0, "args {args:?} failed: {err}");
    String::from_utf8(out).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

#[test]
fn encode_prints_one_codeword_per_line() {
    assert_eq!(run_ok(&["encode", "--scheme", "eu-fk", "--n", "11", "--k", "2", "58"]), "00110001000\n");
    assert_eq!(
        run_ok(&["encode", "--scheme", "su", "--n", "10", "--k", "2", "5", "7"]),
        "0000110000\n0011000000\n"
    );
    assert_eq!(run_ok(&["encode", "--scheme", "unary", "5"]), "111110\n");
}

#[test]
fn encode_machine_format_keys_by_value() {
    assert_eq!(
        run_ok(&["encode", "--scheme", "eu-ik", "--n", "11", "46", "47", "48", "--format", "machine"]),
        "46=00000111111\n47=00001111110\n48=00011111100\n"
    );
}

#[test]
fn decode_prints_values() {
    assert_eq!(run_ok(&["decode", "--scheme", "eu-fk", "--n", "11", "--k", "2", "00110001000"]), "58\n");
    assert_eq!(
        run_ok(&["decode", "--scheme", "eu-ik", "--n", "3", "110", "--format", "machine"]),
        "110=5\n"
    );
    assert_eq!(run_ok(&["decode", "--scheme", "unary", "111110"]), "5\n");
}

#[test]
fn domain_errors_exit_2_with_the_library_error_name() {
    let (code, _, err) = run_cli(&["decode", "--scheme", "eu-fk", "--n", "7", "--k", "3", "1111111"]);
    assert_eq!(code, 2);
    assert!(err.contains("InvalidCodeword"), "{err}");

    // Codeword length must equal --n exactly; no implicit padding.
    let (code, _, err) = run_cli(&["decode", "--scheme", "eu-fk", "--n", "7", "--k", "3", "111"]);
    assert_eq!(code, 2);
    assert!(err.contains("LengthMismatch"), "{err}");

    let (code, _, err) = run_cli(&["decode", "--scheme", "su", "--n", "4", "--k", "2", "01x1"]);
    assert_eq!(code, 2);
    assert!(err.contains("InvalidCodeword"), "{err}");

    let (code, _, err) = run_cli(&["encode", "--scheme", "su", "--n", "10", "--k", "2", "10"]);
    assert_eq!(code, 2);
    assert!(err.contains("OutOfRange"), "{err}");

    // Validation failures: n too small for eu-fk.
    let (code, _, err) = run_cli(&["capacity", "--scheme", "eu-fk", "--n", "4", "--k", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("InvalidN"), "{err}");

    let (code, _, err) = run_cli(&["encode", "--scheme", "eu-fk", "--n", "7", "--k", "1", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("KRequiredAtLeast2"), "{err}");
}

#[test]
fn usage_errors_exit_1() {
    // Missing --n for a fixed-length scheme.
    let (code, _, err) = run_cli(&["encode", "--scheme", "su", "--k", "2", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("--n"), "{err}");

    // Missing --k for su / eu-fk.
    let (code, _, _) = run_cli(&["encode", "--scheme", "eu-fk", "--n", "7", "3"]);
    assert_eq!(code, 1);

    // Unknown scheme name.
    let (code, _, _) = run_cli(&["encode", "--scheme", "eu-xx", "--n", "7", "3"]);
    assert_eq!(code, 1);

    // Value that is not a nonnegative integer.
    let (code, _, _) = run_cli(&["encode", "--scheme", "eu-ik", "--n", "3", "abc"]);
    assert_eq!(code, 1);

    // No input at all.
    let (code, _, _) = run_cli(&["encode", "--scheme", "eu-ik", "--n", "3"]);
    assert_eq!(code, 1);

    // Unknown flag.
    let (code, _, _) = run_cli(&["encode", "--scheme", "eu-ik", "--n", "3", "--bogus", "1"]);
    assert_eq!(code, 1);
}

#[test]
fn help_and_version_exit_0() {
    let (code, out, _) = run_cli(&["--help"]);
    assert_eq!(code, 0);
    assert!(String::from_utf8(out).unwrap().contains("encode"));
    let (code, _, _) = run_cli(&["--version"]);
    assert_eq!(code, 0);
}

#[test]
fn capacity_reports_bounded_and_unbounded() {
    assert_eq!(run_ok(&["capacity", "--scheme", "eu-fk", "--n", "11", "--k", "2"]), "80\n");
    assert_eq!(run_ok(&["capacity", "--scheme", "unary"]), "no fixed capacity\n");
    assert_eq!(
        run_ok(&["capacity", "--scheme", "unary", "--format", "machine"]),
        "capacity=unbounded\n"
    );
    assert_eq!(
        run_ok(&["capacity", "--scheme", "su", "--n", "10", "--k", "2", "--format", "machine"]),
        "capacity=9\n"
    );
}

#[test]
fn select_prints_the_word_length() {
    assert_eq!(run_ok(&["select", "--scheme", "eu-fk", "--target", "99", "--k", "2"]), "n=12\n");
    assert_eq!(run_ok(&["select", "--scheme", "eu-ik", "--target", "10"]), "n=4\n");
    assert_eq!(
        run_ok(&["select", "--scheme", "eu-fk", "--target", "63", "--k", "5", "--format", "machine"]),
        "scheme=eu-fk\nn=13\nk=5\ncapacity=63\n"
    );
}

#[test]
fn table_respects_the_entry_bound_flag() {
    let out = run_ok(&["table", "--scheme", "eu-fk", "--n", "5", "--k", "2"]);
    assert_eq!(out.lines().count(), 10); // header + 9 entries
    let (code, _, err) = run_cli(&["table", "--scheme", "eu-ik", "--n", "3", "--max-entries", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("TableTooLarge"), "{err}");
}

#[test]
fn census_and_spectrum_reports() {
    let out = run_ok(&["census", "--scheme", "su", "--n", "10", "--k", "2", "--format", "machine"]);
    assert!(out.contains("total_ones=18\n"), "{out}");
    assert!(out.contains("total_zeros=82\n"), "{out}");
    assert!(out.contains("weight_9=2\n"), "{out}");

    let out = run_ok(&["census", "--scheme", "eu-fk", "--n", "7", "--k", "3"]);
    assert!(out.contains("total ones:  55"), "{out}");

    // Unary census needs an explicit range.
    let (code, _, _) = run_cli(&["census", "--scheme", "unary"]);
    assert_eq!(code, 1);
    let out = run_ok(&["census", "--scheme", "unary", "--max", "4", "--format", "machine"]);
    assert!(out.contains("total_ones=10\n"), "{out}");

    let out = run_ok(&["spectrum", "--scheme", "su", "--n", "10", "--k", "2", "--format", "machine"]);
    assert!(out.contains("min_distance=2\n"), "{out}");
    assert!(out.contains("dist_2=17\n"), "{out}");
    assert!(out.contains("dist_4=28\n"), "{out}");
}

#[test]
fn values_can_come_from_a_file_or_stdin_marker() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("values.txt");
    std::fs::write(&input, "4\n\n# comment\n5\n6\n").unwrap();
    let out = run_ok(&["encode", "--scheme", "eu-ik", "--n", "3", "--in", input.to_str().unwrap()]);
    assert_eq!(out, "011\n110\n111\n");

    // Both positional and --in is a usage error.
    let (code, _, _) = run_cli(&[
        "encode", "--scheme", "eu-ik", "--n", "3", "4", "--in", input.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
}

#[test]
fn output_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.tsv");
    run_ok(&["table", "--scheme", "eu-ik", "--n", "3", "--out", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# scheme=eu-ik n=3 k=0\n"));
    assert_eq!(text.lines().count(), 8);
}

#[test]
fn pack_and_unpack_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("stream.euc");
    let out = run_ok(&[
        "pack", "--scheme", "eu-fk", "--n", "11", "--k", "2", "43", "46", "58", "77", "80",
        "--out", path.to_str().unwrap(), "--format", "machine",
    ]);
    assert_eq!(out, "bytes_written=24\n");
    let out = run_ok(&["unpack", "--in", path.to_str().unwrap()]);
    assert_eq!(out, "scheme=eu-fk n=11 k=2 count=5\n43\n46\n58\n77\n80\n");
    let out = run_ok(&["unpack", "--in", path.to_str().unwrap(), "--format", "machine"]);
    assert!(out.starts_with("scheme=eu-fk\nn=11\nk=2\ncount=5\n"), "{out}");
    assert!(out.ends_with("value=80\n"), "{out}");
}

#[test]
fn pack_to_stdout_emits_the_raw_stream() {
    let (code, out, _) = run_cli(&["pack", "--scheme", "eu-ik", "--n", "3", "4", "5", "6"]);
    assert_eq!(code, 0);
    assert_eq!(&out[..4], b"EUC1");
    assert_eq!(&out[17..], &[0x7B, 0x80]);
}

#[test]
fn unpack_rejects_non_streams() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.bin");
    std::fs::write(&path, b"not a stream").unwrap();
    let (code, _, err) = run_cli(&["unpack", "--in", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("BadMagic"), "{err}");
}

#[test]
fn packed_fixture_is_stable_and_unpacks_to_the_sample_values() {
    let path = fixture("packed_eufk_n11_k2.euc");
    let expected = std::fs::read(&path).unwrap();

    let out = run_ok(&["unpack", "--in", path.to_str().unwrap()]);
    assert_eq!(out, "scheme=eu-fk n=11 k=2 count=5\n43\n46\n58\n77\n80\n");

    // Re-packing the same values reproduces the committed bytes exactly.
    let (code, repacked, _) =
        run_cli(&["pack", "--scheme", "eu-fk", "--n", "11", "--k", "2", "43", "46", "58", "77", "80"]);
    assert_eq!(code, 0);
    assert_eq!(repacked, expected);
}

#[test]
fn verify_passes_for_consistent_params_and_diffs_references() {
    let out = run_ok(&["verify", "--scheme", "eu-fk", "--n", "11", "--k", "2"]);
    assert!(out.contains("count matches theorem: yes"), "{out}");
    assert!(out.contains("2048 words checked, 81 accepted, 0 mismatches"), "{out}");

    let out = run_ok(&[
        "verify", "--scheme", "su", "--n", "10", "--k", "2",
        "--reference", fixture("su_n10_k2.ref.tsv").to_str().unwrap(),
        "--format", "machine",
    ]);
    assert!(out.contains("count_matches_theorem=true"), "{out}");
    assert!(out.contains("reference_rows=11"), "{out}");
    assert!(out.contains("reference_matching=8"), "{out}");
    assert!(out.contains("reference_mismatching=3"), "{out}");
    assert!(out.contains("reference_duplicates=1"), "{out}");

    // A reference whose header disagrees with the requested params.
    let (code, _, err) = run_cli(&[
        "verify", "--scheme", "su", "--n", "9", "--k", "2",
        "--reference", fixture("su_n10_k2.ref.tsv").to_str().unwrap(),
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("BadReference"), "{err}");
}

#[test]
fn the_installed_binary_behaves_like_the_library_entry_point() {
    let output = Command::new(env!("CARGO_BIN_EXE_eucode"))
        .args(["encode", "--scheme", "eu-fk", "--n", "11", "--k", "2", "58"])
        .output()
        .unwrap();
    assert!(output.status.success());
    assert_eq!(output.stdout, b"00110001000\n");

    // stdin via the "-" file name.
    let mut child = Command::new(env!("CARGO_BIN_EXE_eucode"))
        .args(["decode", "--scheme", "eu-fk", "--n", "11", "--k", "2", "--in", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(b"00110001000\n11010000000\n").unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success());
    assert_eq!(output.stdout, b"58\n80\n");

    let status = Command::new(env!("CARGO_BIN_EXE_eucode"))
        .args(["decode", "--scheme", "eu-fk", "--n", "7", "--k", "3", "1111111"])
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

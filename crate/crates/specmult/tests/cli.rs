//! End-to-end tests of the `specmult` binary: output shape, exit codes,
//! file round trips, and the grid cap environment variable.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_specmult"))
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/torus1_heat.symbol")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn partition_prints_level_table() {
    let out = bin()
        .args(["partition", "--manifold", "torus2", "--cutoff", "5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("levels 5"), "{text}");
    assert!(text.contains("level 4 lambda 5.0000000000000000e0 dim 8"), "{text}");
    // deterministic output
    let again = bin()
        .args(["partition", "--manifold", "torus2", "--cutoff", "5"])
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn partition_rejects_unknown_manifold() {
    let out = bin()
        .args(["partition", "--manifold", "sphere", "--cutoff", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_reads_the_checked_in_fixture() {
    let out = bin()
        .args(["analyze", "--file"])
        .arg(fixture())
        .args(["--l2", "--schatten", "1", "--trace"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    // heat symbol: operator norm 1, trace = 1 + 2(e^-1 + e^-4 + e^-9)
    assert!(text.contains("l2_bound 1.0000000000000000e0"), "{text}");
    assert!(text.contains("trace 1.7726369797285264e0"), "{text}");
    assert!(text.contains("slow_decay false"), "{text}");
}

#[test]
fn nuclearity_rejects_exponent_above_one() {
    let out = bin()
        .args(["nuclearity", "--file"])
        .arg(fixture())
        .args(["--r", "1.5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside (0, 1]"));
}

#[test]
fn convert_round_trips_byte_for_byte() {
    let dir = std::env::temp_dir().join("specmult-cli-convert");
    std::fs::create_dir_all(&dir).unwrap();
    let tau_path = dir.join("tau.gsym");
    let sigma_path = dir.join("sigma.symbol");
    let back_path = dir.join("back.gsym");
    std::fs::write(
        &tau_path,
        "specmult-group-symbol 1\nmanifold su2\nreps 2\nrep 0 dim 1\n\
         1.25 -0.5\nrep 1 dim 2\n0.5 0.0 0.125 0.0\n0.0 -0.25 0.5 0.0\n",
    )
    .unwrap();
    let to_sigma = bin()
        .args(["convert", "--input"])
        .arg(&tau_path)
        .arg("--output")
        .arg(&sigma_path)
        .output()
        .unwrap();
    assert!(to_sigma.status.success(), "{}", String::from_utf8_lossy(&to_sigma.stderr));
    let to_tau = bin()
        .args(["convert", "--input"])
        .arg(&sigma_path)
        .arg("--output")
        .arg(&back_path)
        .output()
        .unwrap();
    assert!(to_tau.status.success());
    // the values survive both conversions bit-exactly
    let text = std::fs::read_to_string(&back_path).unwrap();
    assert!(text.contains("1.2500000000000000e0 -5.0000000000000000e-1"), "{text}");
    assert!(text.contains("1.2500000000000000e-1"), "{text}");

    // converting back again reproduces the symbol file byte for byte
    let sigma2_path = dir.join("sigma2.symbol");
    let again = bin()
        .args(["convert", "--input"])
        .arg(&back_path)
        .arg("--output")
        .arg(&sigma2_path)
        .output()
        .unwrap();
    assert!(again.status.success());
    assert_eq!(std::fs::read(&sigma_path).unwrap(), std::fs::read(&sigma2_path).unwrap());
}

#[test]
fn convert_rejects_non_block_symbol() {
    // the torus fixture has no SU(2) block structure to contract
    let dir = std::env::temp_dir().join("specmult-cli-reject");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("out.gsym");
    let out = bin()
        .args(["convert", "--input"])
        .arg(fixture())
        .arg("--output")
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn kernel_exports_parseable_binary() {
    let dir = std::env::temp_dir().join("specmult-cli-kernel");
    std::fs::create_dir_all(&dir).unwrap();
    let bin_path = dir.join("k.bin");
    let out = bin()
        .args(["kernel", "--file"])
        .arg(fixture())
        .args(["--mixed-norm", "2", "2", "--ffb2", "2"])
        .arg("--out")
        .arg(&bin_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("ffb2_ok true"), "{text}");
    let bytes = std::fs::read(&bin_path).unwrap();
    let parsed = specmult::io::read_kernel_binary(&bytes).unwrap();
    assert_eq!(parsed.manifold, specmult::manifold::ManifoldId::Torus(1));
    assert_eq!(parsed.values.len(), parsed.nodes.len() * parsed.nodes.len());
}

#[test]
fn grid_cap_env_var_limits_kernel_synthesis() {
    let out = bin()
        .args(["kernel", "--file"])
        .arg(fixture())
        .env("SPECMULT_MAX_GRID", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap is 3"));
}

#[test]
fn invariance_accepts_serialized_symbol() {
    let out = bin().args(["invariance", "--file"]).arg(fixture()).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict true"), "{text}");
}

#[test]
fn fixture_matches_library_serialization() {
    use num_complex::Complex64;
    use specmult::manifold::{enumerate_partition, ManifoldId};
    use specmult::symbol::Symbol;
    use std::sync::Arc;

    let text = std::fs::read_to_string(fixture()).unwrap();
    let parsed = specmult::io::parse_symbol(&text).unwrap();
    let p = Arc::new(enumerate_partition(ManifoldId::Torus(1), 9.0).unwrap());
    let expect = Symbol::from_spectral_function(p, |lam| Complex64::new((-lam).exp(), 0.0)).unwrap();
    for (a, b) in parsed.matrices().iter().zip(expect.matrices()) {
        assert_eq!(a, b);
    }
    assert_eq!(text, specmult::io::write_symbol(&expect, 9.0));
}

use std::path::PathBuf;
use std::process::{Command, Output};

use minlab::alphabet::Alphabet;
use minlab::io::{extract_region, read_fasta, read_regions};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn minlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minlab")).args(args).output().expect("spawn minlab")
}

#[test]
fn fixtures_load() {
    let seqs = read_fasta(data("telomere.fa")).unwrap();
    assert_eq!(seqs.keys().collect::<Vec<_>>(), ["chrT", "ctrl"]);
    assert_eq!(seqs["chrT"].len(), 5040);
    assert_eq!(seqs["chrT"].gap_count(), 40);
    let regions = read_regions(data("telomere.bed")).unwrap();
    assert_eq!(regions.len(), 6);
    assert_eq!(regions[0].label, "Ta");
    for r in &regions {
        assert_eq!(extract_region(&seqs, r).unwrap().len(), r.end - r.start);
    }
    // the lower-cased first lines fold to upper case
    let head = extract_region(&seqs, &regions[0]).unwrap().slice(0, 6).render(&Alphabet::dna(), 'N');
    assert_eq!(head, "CCCTAA");
}

#[test]
fn telomere_command() {
    let out = minlab(&[
        "telomere",
        "--fasta",
        data("telomere.fa").to_str().unwrap(),
        "--regions",
        data("telomere.bed").to_str().unwrap(),
        "--trials",
        "20",
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert!(csv.starts_with("group,scheme,metric,mean,stderr,trials,seed\n"));
    assert_eq!(csv.lines().count(), 1 + 12);
    assert!(csv.contains("tiny,gaussian,density,insufficient_length,NA,20,1\n"));
}

#[test]
fn sweep_row_count() {
    let out = minlab(&["sweep", "--trials", "2", "--length", "200"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1 + 30 * 2 * 3);
}

#[test]
fn density_command() {
    let out = minlab(&["density", "--sequence", "ACGTTGCAACGGTACCA", "--k", "3", "--w", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("inline\tdensity\t1\n"), "{text}");
}

#[test]
fn validate_smoke_and_exit_codes() {
    let ok = minlab(&["validate", "equivalence", "--trials", "20"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().starts_with("PASS equivalence"));

    // far too few trials for the probability tolerances
    let weak = minlab(&["validate", "thm2", "--trials", "50"]);
    assert_eq!(weak.status.code(), Some(1));

    assert_eq!(minlab(&["validate", "lemma9"]).status.code(), Some(2));
    assert_eq!(minlab(&["sweep", "--ties", "middle"]).status.code(), Some(2));
    assert_eq!(minlab(&["sweep", "--repeat-lengths", "5-1"]).status.code(), Some(2));
    assert_eq!(
        minlab(&["telomere", "--fasta", "/nonexistent.fa", "--regions", "/nonexistent.bed"]).status.code(),
        Some(3)
    );
}

#[test]
fn malformed_region_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let bed = dir.path().join("bad.bed");
    std::fs::write(&bed, "# header\nchrT\t10\t5\tbad\n").unwrap();
    let out = minlab(&[
        "telomere",
        "--fasta",
        data("telomere.fa").to_str().unwrap(),
        "--regions",
        bed.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.bed:2:"), "{err}");
}

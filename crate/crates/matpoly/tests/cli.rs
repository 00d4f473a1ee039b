//! End-to-end tests of the matpoly binary: output shapes, exit codes,
//! format switches, and stdout determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_matpoly"));
    cmd.env_remove("MATPOLY_THREADS");
    cmd
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

#[test]
fn compute_params_line_matches_the_profile() {
    let out = run(&["compute", "--input", fixture("fano.txt").to_str().unwrap(),
                    "--what", "params"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "n=7 k=3 d=4 d*=3 simple=true cosimple=true\n"
    );
}

#[test]
fn compute_chi_listing_ends_at_the_top_coefficient() {
    let out = run(&["compute", "--uniform", "2,4", "--what", "chi"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "n=4 k=2 d=3 d*=3 simple=true cosimple=true\n\
         chi_0 = 3 - 4*T + T^2\n\
         chi_1 = -4 + 4*T\n\
         chi_2 = 0\n\
         chi_3 = 0\n\
         chi_4 = 1\n"
    );
}

#[test]
fn compute_zeta_of_a_uniform_matroid_is_one() {
    let out = run(&["compute", "--uniform", "2,4", "--what", "zeta"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(
        text.ends_with("r=0, P_0 = 1\n"),
        "unexpected zeta rendering:\n{text}"
    );
}

#[test]
fn zeta_subcommand_prints_fano_coefficients() {
    let out = run(&["zeta", "--input", fixture("fano.txt").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "n=7 k=3 d=4 d*=3 simple=true cosimple=true\n\
         r=2, P_0 = 1/5, P_1 = 4/5 - 1/5*T, P_2 = 1/5*T\n"
    );
}

#[test]
fn dual_prints_the_hamming_weight_data() {
    let out = run(&["dual", "--input", fixture("fano.txt").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "n=7 k=4 d=3 d*=4 simple=true cosimple=true\n\
         chi_0 = 13 - 28*T + 21*T^2 - 7*T^3 + T^4\n\
         chi_1 = -42 + 77*T - 42*T^2 + 7*T^3\n\
         chi_2 = 42 - 63*T + 21*T^2\n\
         chi_3 = -7 + 7*T\n\
         chi_4 = -7 + 7*T\n\
         chi_5 = 0\n\
         chi_6 = 0\n\
         chi_7 = 1\n"
    );
    // Cross-check: computing chi of the dual representation directly gives
    // the same listing.
    let direct = run(&["compute", "--input",
                       fixture("fano_dual.txt").to_str().unwrap(),
                       "--what", "chi"]);
    assert_eq!(stdout_of(&out), stdout_of(&direct));
}

#[test]
fn emitted_mu_documents_feed_reconstruct() {
    let dir = tempfile::tempdir().unwrap();
    let mu_path = dir.path().join("mu.json");
    let mu_dual_path = dir.path().join("mu_dual.json");

    let mu = run(&["compute", "--input", fixture("fano.txt").to_str().unwrap(),
                   "--what", "mu", "--format", "json"]);
    assert!(mu.status.success());
    std::fs::write(&mu_path, &mu.stdout).unwrap();
    let mu_dual = run(&["compute", "--input",
                        fixture("fano_dual.txt").to_str().unwrap(),
                        "--what", "mu", "--format", "json"]);
    assert!(mu_dual.status.success());
    std::fs::write(&mu_dual_path, &mu_dual.stdout).unwrap();

    let rec = run(&["reconstruct", "--mu", mu_path.to_str().unwrap(),
                    "--mu-dual", mu_dual_path.to_str().unwrap(),
                    "--method", "both"]);
    assert!(rec.status.success());
    let text = stdout_of(&rec);
    assert!(text.contains("method: linear"), "missing linear report:\n{text}");
    assert!(text.contains("method: zeta"), "missing zeta report:\n{text}");
    assert_eq!(text.matches("outcome: unique, verified").count(), 2);
    assert!(text.contains("methods agree: true"));
    assert!(text.contains("chi_0 = -8 + 14*T - 7*T^2 + T^3"));

    let rec_json = run(&["reconstruct", "--mu", mu_path.to_str().unwrap(),
                         "--mu-dual", mu_dual_path.to_str().unwrap(),
                         "--method", "both", "--format", "json"]);
    assert!(rec_json.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&stdout_of(&rec_json)).unwrap();
    assert_eq!(doc["methods_agree"], true);
    assert_eq!(doc["chi"]["n"], 7);
    assert_eq!(doc["reports"][0]["outcome"]["kind"], "unique");
}

#[test]
fn verify_passes_fano_and_rejects_the_corrupt_table() {
    let good = run(&["verify", "--input", fixture("fano.txt").to_str().unwrap()]);
    assert!(good.status.success());
    assert!(stdout_of(&good).contains("overall: PASS"));

    let bad = run(&["verify", "--input",
                    fixture("corrupt_ranks.txt").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1));
    let text = stdout_of(&bad);
    assert!(
        text.contains("submodularity"),
        "the violated axiom must be named:\n{text}"
    );
}

#[test]
fn compute_rejects_non_simple_input_with_exit_one() {
    let out = run(&["compute", "--input",
                    fixture("corrupt_ranks.txt").to_str().unwrap(),
                    "--what", "chi"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not simple"), "stderr was: {err}");
}

#[test]
fn unknown_flags_exit_one() {
    let out = run(&["compute", "--uniform", "2,4", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));

    let missing = run(&["compute"]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn search_with_zero_trials_is_an_empty_success() {
    let out = run(&["search", "--q", "5", "--k", "2", "--n", "4", "--d", "3",
                    "--dstar", "3", "--trials", "0", "--seed", "9"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["trials"], 0);
    assert_eq!(doc["attempted"], 0);
    assert_eq!(doc["counterexamples"], serde_json::json!([]));
}

#[test]
fn search_stdout_is_deterministic_and_timing_stays_on_stderr() {
    let args = ["search", "--q", "5", "--k", "2", "--n", "4", "--d", "3",
                "--dstar", "3", "--trials", "4", "--seed", "31"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout, "summary must be byte-identical");
    assert!(!stdout_of(&first).contains("ms"), "timing leaked into stdout");
    assert!(String::from_utf8(first.stderr).unwrap().contains("search finished"));

    // A capped thread pool must not change the output.
    let mut capped = bin();
    capped.args(args).env("MATPOLY_THREADS", "1");
    let third = capped.output().unwrap();
    assert_eq!(first.stdout, third.stdout);

    let mut bad_env = bin();
    bad_env.args(["compute", "--uniform", "2,4"]).env("MATPOLY_THREADS", "lots");
    assert_eq!(bad_env.output().unwrap().status.code(), Some(1));
}

#[test]
fn compute_json_exposes_all_invariants() {
    let out = run(&["compute", "--input", fixture("u24_f5.txt").to_str().unwrap(),
                    "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(doc["n"], 4);
    assert_eq!(doc["k"], 2);
    assert_eq!(doc["params"]["d"], 3);
    assert_eq!(doc["chi"][4], serde_json::json!(["1"]));
    assert_eq!(doc["mu"].as_array().unwrap().len(), 3);
    assert_eq!(doc["zeta"]["r"], 0);
    assert_eq!(doc["zeta"]["coeffs"][0]["coeffs"], serde_json::json!(["1"]));
    assert_eq!(doc["tutte"].as_array().unwrap().len(), 3);
}

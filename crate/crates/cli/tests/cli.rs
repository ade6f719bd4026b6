mod common;

use common::{casimir, casimir_stdin, Alg};

const SO3_FILE: &str = r#"{
  "version": 1,
  "name": "so3",
  "dim": 3,
  "basis": ["X1", "X2", "X3"],
  "brackets": [
    {"i": 1, "j": 2, "terms": [{"k": 3, "c": 1}]},
    {"i": 2, "j": 3, "terms": [{"k": 1, "c": 1}]},
    {"i": 1, "j": 3, "terms": [{"k": 2, "c": -1}]}
  ]
}"#;

#[test]
fn count_of_a_catalog_entry() {
    let run = casimir(&["count", "catalog:sl2_A33"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert!(run.stdout.contains("N = 0"), "{}", run.stdout);
    assert!(run.stdout.contains("generic rank = 6 of dim 6"));
}

#[test]
fn count_reads_standard_input() {
    let run = casimir_stdin(&["count", "-", "--output", "json"], Some(SO3_FILE));
    assert_eq!(run.code, 0, "{}", run.stderr);
    let v = run.json();
    assert_eq!(v["N"], 1);
    assert_eq!(v["name"], "so3");
}

#[test]
fn emitted_file_round_trips_through_check_and_count() {
    let dir = tempfile::tempdir().unwrap();
    let show = casimir(&["catalog", "show", "sl2_h1", "--emit"]);
    assert_eq!(show.code, 0);
    let path = dir.path().join("h1.json");
    std::fs::write(&path, &show.stdout).unwrap();
    let path = path.to_str().unwrap();

    let check = casimir(&["check", path]);
    assert_eq!(check.code, 0, "{}{}", check.stdout, check.stderr);
    assert!(check.stdout.contains("jacobi: ok"));
    assert!(check.stdout.contains("levi: ok"));

    let count = casimir(&["count", path, "--output", "json"]);
    assert_eq!(count.json()["N"], 2);
}

#[test]
fn verify_exit_codes() {
    let yes = casimir(&["verify", "catalog:sl2_h1", "--poly", "x6"]);
    assert_eq!(yes.code, 0);
    assert!(yes.stdout.starts_with("invariant"));

    let no = casimir(&["verify", "catalog:sl2_h1", "--poly", "x5"]);
    assert_eq!(no.code, 1);
    assert!(no.stdout.contains("not invariant"));

    let bad = casimir(&["verify", "catalog:sl2_h1", "--poly", "x9 +"]);
    assert_eq!(bad.code, 2);
}

#[test]
fn verify_json_lists_residuals() {
    let run = casimir(&["verify", "catalog:so3_ad_3L1", "--poly", "x1^2 + x4", "--output", "json"]);
    assert_eq!(run.code, 1);
    let v = run.json();
    assert_eq!(v["invariant"], false);
}

#[test]
fn unreadable_and_malformed_inputs_exit_2() {
    let missing = casimir(&["count", "/nonexistent/algebra.json"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("casimir:"));

    let malformed = casimir_stdin(&["count", "-"], Some("{\"version\": 1, \"dim\": 2"));
    assert_eq!(malformed.code, 2);

    let not_lie = casimir_stdin(
        &["check", "-"],
        Some(
            r#"{"name": "broken", "dim": 3, "basis": ["A", "B", "C"],
                "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": 1}, {"k": 1, "c": 1}]},
                             {"i": 2, "j": 3, "terms": [{"k": 1, "c": 1}]},
                             {"i": 3, "j": 1, "terms": [{"k": 2, "c": 1}]}]}"#,
        ),
    );
    assert_eq!(not_lie.code, 2, "{}", not_lie.stdout);
    assert!(not_lie.stdout.contains("jacobi"));
}

#[test]
fn radical_subsystem_is_listed_first() {
    let run = casimir(&["invariants", "catalog:so3_ad_3L1", "--radical-only", "--max-degree", "2"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let radical = run.stdout.find("radical subsystem").expect("radical section");
    let casimir2 = run.stdout.find("x4^2 + x5^2 + x6^2").expect("quadratic");
    let full = run.stdout.find("polynomial invariants").expect("full section");
    assert!(radical < casimir2 && casimir2 < full);
}

#[test]
fn radical_only_needs_levi_metadata() {
    let run = casimir_stdin(&["invariants", "-", "--radical-only"], Some(SO3_FILE));
    assert_eq!(run.code, 2);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["invariants", "catalog:sl2_h1", "--max-degree", "3", "--output", "json", "--seed", "7"];
    let a = casimir(&args);
    let b = casimir(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v = a.json();
    assert_eq!(v["N"], 2);
    let found: Vec<&str> = v["polynomial_invariants"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert!(found.contains(&"x6"));
}

#[test]
fn seeds_do_not_change_the_count() {
    for seed in ["0", "1", "12345"] {
        let run = casimir(&["count", "catalog:L10_27", "--seed", seed, "--output", "json"]);
        assert_eq!(run.json()["N"], 4, "seed {seed}");
    }
}

#[test]
fn paranoid_mode_doubles_the_trials() {
    let run = casimir(&["count", "catalog:sl2_h1", "--paranoid", "--trials", "3", "--output", "json"]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json()["trial_ranks"].as_array().unwrap().len(), 6);
}

#[test]
fn zero_trials_are_rejected() {
    assert_eq!(casimir(&["count", "catalog:sl2_h1", "--trials", "0"]).code, 2);
}

#[test]
fn unknown_catalog_name_suggests_neighbours() {
    let run = casimir(&["catalog", "show", "sl2_h2"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("sl2_h1"), "{}", run.stderr);

    let none = casimir(&["catalog", "show", "nope"]);
    assert_eq!(none.code, 2);
    assert!(none.stderr.contains("unknown catalog entry"));
}

#[test]
fn catalog_list_has_every_entry() {
    let run = casimir(&["catalog", "list", "--output", "json"]);
    let entries = run.json();
    let names: Vec<&str> = entries.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    for expected in ["so3_ad_3L1", "T1_1", "T1_8", "L10_30", "schrodinger_3p1", "sa_n"] {
        assert!(names.contains(&expected), "{expected} missing");
    }
    let text = casimir(&["catalog", "list"]);
    assert!(text.stdout.lines().next().unwrap().starts_with("name"));
}

#[test]
fn parameters_reach_the_algebra() {
    let default = Alg::catalog("T1_5", &[]);
    let other = Alg::catalog("T1_5", &["p=2"]);
    assert_ne!(default.c, other.c);

    let flagged = casimir(&["count", "catalog:T1_3", "--param", "p=0", "--output", "json"]);
    assert_eq!(flagged.code, 0);
    let v = flagged.json();
    assert_eq!(v["N"], 2);
    assert!(!v["warnings"].as_array().unwrap().is_empty());

    assert_eq!(casimir(&["count", "catalog:T1_3", "--param", "p=abc"]).code, 2);
    assert_eq!(casimir(&["count", "catalog:T1_3", "--param", "q=1"]).code, 2);
    assert_eq!(casimir(&["count", "catalog:sa_n", "--param", "n=3", "--output", "json"]).json()["dim"], 11);
}

#[test]
fn parameters_substitute_into_files() {
    let file = r#"{"name": "heisenberg_p", "dim": 3, "basis": ["A", "B", "C"],
        "params": {"p": "1"},
        "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": {"param": "p"}}]}]}"#;
    let generic = casimir_stdin(&["count", "-", "--output", "json"], Some(file));
    assert_eq!(generic.code, 0, "{}", generic.stderr);
    assert_eq!(generic.json()["N"], 1);
    let abelian = casimir_stdin(&["count", "-", "--param", "p=0", "--output", "json"], Some(file));
    assert_eq!(abelian.json()["N"], 3);

    let unbound = file.replace(r#""params": {"p": "1"},"#, "");
    assert_eq!(casimir_stdin(&["count", "-"], Some(&unbound)).code, 2);
}

use pivot_vote::cli::{exit, main_with};

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut full = vec!["pivot-vote"];
    full.extend_from_slice(args);
    let code = main_with(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn derive_prints_every_level() {
    let (code, out, _) = run(&["derive", "--election", &data("figure2.txt"), "--model", "emd:1%,3%,7%,17%"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains("w-b"), "{out}");
    assert!(out.matches("H").count() >= 4, "{out}");
}

#[test]
fn dominate_reports_the_undominated_ballot() {
    let fig2 = data("figure2.txt");
    let (code, out, _) = run(&["dominate", "--election", &fig2, "--model", "emd:1%,3%,7%,17%"]);
    assert_eq!(code, exit::OK);
    assert!(out.contains('b'), "{out}");
    let (code, _, _) = run(&[
        "dominate", "--election", &fig2, "--model", "emd:1%,3%,7%,17%", "--ballot", "e", "--against", "e",
    ]);
    assert_eq!(code, exit::OK);
}

#[test]
fn exit_codes_are_distinct_per_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let bad_election = dir.path().join("bad.txt");
    std::fs::write(&bad_election, "candidates a b\na>c\n").unwrap();
    let (code, _, err) = run(&["derive", "--election", bad_election.to_str().unwrap(), "--model", "full"]);
    assert_eq!(code, exit::PARSE, "{err}");

    let (code, _, _) = run(&["derive", "--election", &data("figure2.txt"), "--model", "cosine:3"]);
    assert_eq!(code, exit::CONFIG);

    let bad_config = dir.path().join("c.toml");
    std::fs::write(&bad_config, "nonsense = 1\n").unwrap();
    let (code, _, _) = run(&["--config", bad_config.to_str().unwrap(), "verify", "--list"]);
    assert_eq!(code, exit::PARSE);

    let (code, _, _) = run(&["--cap", "3", "derive", "--election", &data("figure2.txt"), "--model", "emd:17%"]);
    assert_eq!(code, exit::CAPACITY);

    let (code, out, _) = run(&["verify", "--quick", "prop-justify-not-last"]);
    assert_eq!(code, exit::VERIFICATION, "{out}");
    assert!(out.starts_with("FAIL prop-justify-not-last"), "{out}");

    let (code, _, _) = run(&["verify", "no-such-target"]);
    assert_eq!(code, exit::CONFIG);

    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, exit::USAGE);

    let codes = [exit::PARSE, exit::CONFIG, exit::CAPACITY, exit::VERIFICATION, exit::USAGE];
    for (i, a) in codes.iter().enumerate() {
        assert!(codes[i + 1..].iter().all(|b| a != b));
    }
}

#[test]
fn quick_verify_of_a_passing_target_exits_zero() {
    let (code, out, _) = run(&["verify", "--quick", "lemma-partial-order"]);
    assert_eq!(code, exit::OK);
    assert!(out.starts_with("PASS lemma-partial-order"));
}

#[test]
fn run_writes_a_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, err) = run(&[
        "--out",
        dir.path().to_str().unwrap(),
        "run",
        "--election",
        &data("five_voters.txt"),
        "--model",
        "linf:1,2",
    ]);
    assert_eq!(code, exit::OK, "{err}");
    assert!(out.contains("converged after 2 steps"), "{out}");
    assert!(dir.path().join("trajectory.json").exists());
}

use asl_kit::eval;
use asl_kit::parse::{parse_group_spec, unparse, GroupSpec};
use asl_kit::run_with_threads;
use asl_core::Caps;

fn argv(args: &[&str]) -> Vec<String> {
    std::iter::once("asl-kit").chain(args.iter().copied()).map(String::from).collect()
}

fn run(args: &[&str]) -> (asl_kit::Report, i32) {
    run_with_threads(&argv(args), None)
}

#[test]
fn length_of_s4() {
    let (r, code) = run(&["length", "S4"]);
    assert_eq!(code, 0);
    assert!(r.text.lines().any(|l| l == "l = 3"), "{}", r.text);
}

#[test]
fn series_of_s3() {
    let (r, code) = run(&["series", "S3", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["orders"], serde_json::json!([6, 3, 1]));
    let labels: Vec<&str> = r.result["factors"].as_array().unwrap().iter().map(|f| f["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["C2", "C3"]);
}

#[test]
fn derived_series_of_a5_stabilizes() {
    let (r, _) = run(&["series", "--derived", "A5"]);
    assert_eq!(r.result["terminates"], false);
    assert_eq!(r.result["orders"], serde_json::json!([60]));
}

#[test]
fn normals_are_sorted_label_lists() {
    let (r, code) = run(&["normals", "S3"]);
    assert_eq!(code, 0);
    let list = r.result["normal_subgroups"].as_array().unwrap();
    assert_eq!(list.len(), 3);
    assert_eq!(list[1]["members"], serde_json::json!(["()", "(1 2 3)", "(1 3 2)"]));
}

#[test]
fn factors_of_a_mixed_group() {
    let (r, code) = run(&["factors", "C2 x A5"]);
    assert_eq!(code, 0, "{}", r.text);
    assert_eq!(r.result["top_factor"]["label"], "C2 x A5");
    assert_eq!(r.result["d_order"], 1);
}

#[test]
fn wreath_with_action_file() {
    let dir = std::env::temp_dir().join(format!("asl-kit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("inversion.txt");
    std::fs::write(&path, "# C3 inverted by the transposition\n(1 2 3) ^ (1 2) = (1 3 2)\n").unwrap();
    let p = path.to_str().unwrap();
    let (r, code) = run(&["wreath", "--a", "C3", "--g", "S3", "--g0", "(1 2)", "--action", p]);
    assert_eq!(code, 0, "{}", r.text);
    assert_eq!(r.result["order"], 162);
    assert_eq!(r.result["action_trivial"], false);
    assert_eq!(r.result["chain_indices"], serde_json::json!([3, 2, 3, 9]));

    // not an automorphism
    std::fs::write(&path, "(1 2 3) ^ (1 2) = ()\n").unwrap();
    assert_eq!(run(&["wreath", "--a", "C3", "--g", "S3", "--g0", "(1 2)", "--action", p]).1, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn msigma_and_vchain() {
    let (r, code) = run(&["msigma", "--a", "C2", "--g", "S4", "--g0", "(1 2)", "-m", "1"]);
    assert_eq!(code, 0, "{}", r.text);
    assert_eq!(r.result["hypothesis"], true);
    assert!(r.result["witness"].is_string());

    let (r, code) = run(&["vchain", "--g", "S4", "--x", "coset:(1 2)", "-p", "2", "-d", "3"]);
    assert_eq!(code, 0, "{}", r.text);
    assert_eq!(r.result["dimensions"][0], 12);
    assert_eq!(r.result["consistent"], true);
}

#[test]
fn kernelcheck_and_lp() {
    let (r, code) = run(&["kernelcheck", "-n", "2", "-l", "2", "-k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r.result["kernel_order"], 16);

    let (r, code) = run(&["lp", "SL(2,3)", "-l", "3", "-J", "12"]);
    assert_eq!(code, 0, "{}", r.text);
    assert_eq!(r.result["filtration"]["orders"], serde_json::json!([2, 2, 1]));
    assert_eq!(r.result["decomposition"]["length"], 3);

    let (r, code) = run(&["lp", "SL(2,3)", "-l", "3", "-J", "2"]);
    assert_eq!(code, 0);
    assert!(r.result["filtration"].is_null());
    assert_eq!(r.result["decomposition"]["available"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["length", "S4 x"]).1, 2);
    assert_eq!(run(&["length", "W3"]).1, 2);
    assert_eq!(run(&[]).1, 2);
    assert_eq!(run(&["verify", "no-such-suite"]).1, 2);
    assert_eq!(run(&["normals", "S7", "--closure-cap", "100"]).1, 3);
    assert_eq!(run(&["--help"]).1, 0);
}

#[test]
fn verify_all_is_deterministic() {
    let args = ["verify", "all", "--max-order", "200", "--json"];
    let (first, code) = run_with_threads(&argv(&args), None);
    assert_eq!(code, 0, "{}", first.text);
    let json = first.to_json(false);
    for threads in [Some(1), Some(3)] {
        let (again, _) = run_with_threads(&argv(&args), threads);
        assert_eq!(again.to_json(false), json, "threads {threads:?}");
    }
    let suites = first.result["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 17);
}

/// Example specs listed in fenced `spec` blocks of the grammar document.
fn documented_specs() -> Vec<String> {
    let doc = include_str!("../../../docs/grammar.md");
    let mut out = Vec::new();
    let mut inside = false;
    for line in doc.lines() {
        match line.trim() {
            "```spec" => inside = true,
            "```" => inside = false,
            l if inside && !l.is_empty() => out.push(l.to_string()),
            _ => {}
        }
    }
    out
}

#[test]
fn documented_examples_round_trip() {
    let specs = documented_specs();
    assert!(specs.len() >= 10);
    for s in specs {
        let ast = parse_group_spec(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
        let text = unparse(&ast);
        assert_eq!(parse_group_spec(&text).unwrap(), ast, "{s}");
        assert_eq!(unparse(&parse_group_spec(&text).unwrap()), text);
        let g = eval::eval(&ast, Caps::default()).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert!(g.order() >= 1);
    }
}

#[test]
fn spec_parse_examples() {
    assert_eq!(parse_group_spec("S4").unwrap(), GroupSpec::Symmetric(4));
    assert!(matches!(parse_group_spec("perm(5; (1 2 3 4 5), (1 2))").unwrap(), GroupSpec::Perm { degree: 5, .. }));
    assert!(matches!(parse_group_spec("C2 x A5").unwrap(), GroupSpec::Product(..)));
}

use std::process::Command;

use eccentra::verify::enumerate_connected;
use eccentra::{parse_graph6, to_graph6, StarParams};
use eccentra_cli::{parse_star_params, run, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, REPORT_SCHEMA};
use serde_json::Value;

fn eccentra(args: &[&str]) -> (i32, String, String) {
    let mut full = vec!["eccentra"];
    full.extend_from_slice(args);
    let (o, err) = run(full);
    (o.code, o.stdout, err)
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = eccentra(args);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).expect("stdout is JSON"))
}

#[test]
fn parses_literal_forms() {
    let cases = [("S(5,-3)", (5, 3, vec![])), ("S(3,-1,2,2,2,2)", (3, 1, vec![(2, 4)])), ("S(2,1,1,3)", (2, 2, vec![(3, 1)]))];
    for (text, (t0, p, parts)) in cases {
        let sp = parse_star_params(text).unwrap();
        assert_eq!((sp.t0(), sp.p(), sp.parts().to_vec()), (t0, p, parts), "{text}");
        assert_eq!(parse_star_params(&sp.to_string()).unwrap(), sp);
    }
    assert_eq!(parse_star_params("S(3,-1,2^4)").unwrap(), parse_star_params("S(3,-1,2,2,2,2)").unwrap());
    for bad in ["S(", "T(1,2)", "S(a)"] {
        assert!(parse_star_params(bad).is_err(), "{bad}");
    }
}

#[test]
fn graph6_round_trips() {
    assert_eq!(to_graph6(&parse_graph6("D?{").unwrap()), "D?{");
    for n in 2..=6 {
        for g in enumerate_connected(n, None).unwrap() {
            assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }
    let p4 = eccentra::Graph::path(4);
    assert_eq!(parse_graph6(&to_graph6(&p4)).unwrap(), p4);
    assert!(parse_graph6("ZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZZ").is_err());
    assert!(parse_graph6("D?").is_err());
}

#[test]
fn build_emits_graph6_of_the_star() {
    let (code, v) = json(&["build", "--params", "S(2,1,1,3)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["params"], "S(2,-2,3)");
    assert_eq!(v["n"], 7);
    let g = parse_graph6(v["graph6"].as_str().unwrap()).unwrap();
    let sp: StarParams = "S(2,-2,3)".parse().unwrap();
    assert_eq!(g, eccentra::star_extension(&sp));
}

#[test]
fn classify_reports_violation() {
    let (code, v) = json(&["classify", "--params", "S(5,-3)"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["verdict"], false);
    let witnesses: Vec<&str> = v["report"]["witnesses"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect();
    assert!(witnesses.contains(&"violates 1.1(v)"), "{witnesses:?}");
    let (code, v) = json(&["classify", "--params", "S(2,-1,2)"]);
    assert_eq!((code, v["verdict"].as_bool()), (EXIT_OK, Some(true)));
    for g6 in ["BW", "Bw", "C^", "C~"] {
        let (_, v) = json(&["classify", "--g6", g6, "--theorem", "theorem2"]);
        assert_eq!(v["report"]["agree"], true, "{g6}");
    }
    let c4 = to_graph6(&eccentra::Graph::complete_multipartite(&[2, 2]));
    let (code, v) = json(&["classify", "--g6", &c4, "--theorem", "least-2"]);
    assert_eq!((code, &v["report"]["form"]), (EXIT_OK, &Value::from("(i)")));
    // K1 joined to a coclique has least eigenvalue -2 but l = 1 is outside the structural list.
    let (code, v) = json(&["classify", "--g6", "BW", "--theorem", "least-2"]);
    assert_eq!((code, &v["report"]["spectral"], &v["report"]["structural"]), (EXIT_NEGATIVE, &Value::Bool(true), &Value::Bool(false)));
}

#[test]
fn spectrum_of_p3() {
    let (code, v) = json(&["spectrum", "--g6", "BW"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["n"], 3);
    let exact: Vec<&str> = v["exact"].as_array().unwrap().iter().map(|e| e.as_str().unwrap()).collect();
    assert_eq!(exact, ["1+sqrt(3)", "1-sqrt(3)", "-2"]);
    let vals: Vec<f64> = v["spectrum"]["values"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let s3 = 3f64.sqrt();
    for (a, b) in vals.iter().zip([1.0 + s3, 1.0 - s3, -2.0]) {
        assert!((a - b).abs() < 1e-10);
    }
    assert_eq!(v["char_poly"], "x^3 - 6x - 4");
}

#[test]
fn spectrum_of_first_fixture_has_surd() {
    let (_, v) = json(&["spectrum", "--params", "S(5,-3)"]);
    assert_eq!(v["exact"][1], "4-sqrt(15)");
}

#[test]
fn hl_exit_code_tracks_agreement() {
    let (code, v) = json(&["hl", "--params", "S(2,-1,2)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["numeric"]["regime"], "1.3(ii)");
    let (code, v) = json(&["hl", "--params", "S(1,-2)"]);
    assert_eq!(code, EXIT_NEGATIVE);
    assert_eq!(v["numeric"]["agreement"], false);
    let (code, v) = json(&["hl", "--g6", "C^"]);
    assert_eq!(code, EXIT_OK);
    assert!(v["numeric"]["r"].as_f64().unwrap() >= 0.0);
}

#[test]
fn table1_csv_has_twelve_rows() {
    let (code, out, _) = eccentra(&["table1", "--csv"]);
    assert_eq!(code, EXIT_OK);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["label", "params", "n", "printed", "xi2", "exact", "matches"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| &r[6] == "true"));
}

#[test]
fn verify_theorem1_n6_passes() {
    let (code, v) = json(&["verify", "theorem1", "--n", "6"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["pass"], true);
    assert_eq!(v["scope"]["n_max"], 6);
}

#[test]
fn verify_output_is_deterministic() {
    for args in [&["verify", "theorem2", "--n", "5"][..], &["verify", "interlacing", "--samples", "30", "--seed", "7", "--n", "8"][..]] {
        let a = eccentra(args);
        let b = eccentra(args);
        assert_eq!(a, b);
    }
    let one = eccentra(&["verify", "smith", "--n", "5", "--workers", "1"]);
    let three = eccentra(&["verify", "smith", "--n", "5", "--workers", "3"]);
    assert_eq!(one, three);
}

#[test]
fn reports_match_schema() {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let runs: [&[&str]; 8] = [
        &["verify", "theorem1", "--n", "5"],
        &["verify", "theorem2", "--n", "5", "--dedup"],
        &["verify", "smith", "--n", "5", "--timing"],
        &["verify", "closed-forms"],
        &["verify", "hl"],
        &["verify", "table1"],
        &["verify", "interlacing", "--samples", "20", "--n", "8"],
        &["verify", "nullity", "--n", "6"],
    ];
    for args in runs {
        let (code, v) = json(args);
        assert_eq!(code, EXIT_OK, "{args:?}");
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    let bad = serde_json::json!({"version": 2});
    assert!(!validator.is_valid(&bad));
}

#[test]
fn enumerate_shards_partition_the_listing() {
    let (_, all) = json(&["enumerate", "--n", "5"]);
    let mut joined = Vec::new();
    for i in 0..4 {
        let (_, part) = json(&["enumerate", "--n", "5", "--shard", &format!("{i}/4")]);
        joined.extend(part["graph6"].as_array().unwrap().clone());
    }
    assert_eq!(&joined, all["graph6"].as_array().unwrap());
    assert_eq!(all["count"], 728);
    let (_, dedup) = json(&["enumerate", "--n", "5", "--dedup"]);
    assert_eq!(dedup["count"], 21);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["classify"][..],
        &["classify", "--g6", "BW", "--params", "S(1,-2)"],
        &["spectrum", "--g6", "!!"],
        &["build", "--params", "S(1"],
        &["verify", "theorem1", "--n", "8"],
        &["enumerate", "--n", "4", "--shard", "4/4"],
        &["spectrum", "--g6", "BW", "--tolerance", "0"],
    ] {
        let (code, out, err) = eccentra(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
}

#[test]
fn binary_sets_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_eccentra");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["classify", "--params", "S(5,-3)", "--text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("violates 1.1(v)"));
    assert_eq!(status(&["build", "--params", "S(2,-1,2)", "--text"]).status.code(), Some(0));
    let o = status(&["build"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let file = std::env::temp_dir().join(format!("eccentra-cli-{}.g6", std::process::id()));
    std::fs::write(&file, "BW\n").unwrap();
    let out = file.with_extension("json");
    let o = status(&["spectrum", "--g6-file", file.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    let written = std::fs::read_to_string(&out).unwrap();
    std::fs::remove_file(&file).ok();
    std::fs::remove_file(&out).ok();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(written.contains("1+sqrt(3)"));
}

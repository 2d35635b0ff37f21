//! Commands driven through the library entry point with in-memory streams.

use std::io::Write;

use gogmagog_cli::{run, Io, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

const SAMPLE_MAGOG: &str = "magog 8 0\n1 1 2 4 4 5 7\n1 2 2 4 4 6 7 7\n";

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn call(args: &[&str], stdin: &str) -> Outcome {
    let mut input = stdin.as_bytes();
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = {
        let mut io = Io {
            stdin: &mut input,
            stdout: &mut stdout,
            stderr: &mut stderr,
        };
        run(std::iter::once("gogmagog").chain(args.iter().copied()), &mut io)
    };
    Outcome {
        code,
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

#[test]
fn validate_reports_rules() {
    let ok = call(&["validate"], SAMPLE_MAGOG);
    assert_eq!((ok.code, ok.stdout.as_str()), (EXIT_OK, "valid\n"));

    let bad = call(&["validate", "--format", "json"], "gog 3 0\n1 3 3\n2 3\n");
    assert_eq!(bad.code, EXIT_INVALID);
    let v: serde_json::Value = serde_json::from_str(&bad.stdout).unwrap();
    assert_eq!(v["valid"], false);
    let rules: Vec<_> = v["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["rule"].clone())
        .collect();
    assert_eq!(rules, ["G3", "G2"]);

    assert_eq!(call(&["validate"], "magog 3 0\n1 1\n").code, EXIT_USAGE);
    assert_eq!(call(&["validate", "/no/such/file"], "").code, EXIT_USAGE);
}

#[test]
fn map_there_and_back() {
    let there = call(&["map"], SAMPLE_MAGOG);
    assert_eq!(there.code, EXIT_OK);
    assert_eq!(there.stdout, "gog 8 0\n1 1 2 2 2 2 3 5\n2 3 4 4 6 7 7\n");
    assert_eq!(there.stderr, "case: Case1(3)\n");
    let back = call(&["map", "--direction", "gog-to-magog"], &there.stdout);
    assert_eq!(back.stdout, SAMPLE_MAGOG);

    let wrong = call(&["map", "--direction", "gog-to-magog"], SAMPLE_MAGOG);
    assert_eq!(wrong.code, EXIT_USAGE);
    let invalid = call(&["map"], "magog 3 0\n2 2\n1 1 1\n");
    assert_eq!(invalid.code, EXIT_INVALID);
    assert!(invalid.stdout.is_empty());
}

#[test]
fn map_keeps_json() {
    let doc = "{\"kind\":\"magog\",\"n\":3,\"ell\":0,\"row1\":[1,1],\"row2\":[1,1,1]}\n";
    let there = call(&["map"], doc);
    assert_eq!(
        there.stdout,
        "{\"kind\":\"gog\",\"n\":3,\"ell\":0,\"row1\":[1,1,2],\"row2\":[2,2]}\n"
    );
    assert_eq!(call(&["map"], &there.stdout).stdout, doc);
    let as_text = call(&["map", "--format", "text"], doc);
    assert_eq!(as_text.stdout, "gog 3 0\n1 1 2\n2 2\n");
}

#[test]
fn counting_and_enumeration() {
    assert_eq!(call(&["count", "--kind", "gog", "--n", "3"], "").stdout, "7\n");
    let by_walk = call(
        &[
            "count",
            "--kind",
            "magog",
            "--n",
            "5",
            "--ell",
            "1",
            "--method",
            "enumerate",
        ],
        "",
    );
    assert_eq!(by_walk.stdout, "1594\n");

    let all = call(&["enumerate", "--kind", "magog", "--n", "4", "--ell", "1"], "");
    assert_eq!(all.stdout.lines().count(), 219 * 3);
    let mut shards = String::new();
    for i in 0..3 {
        let part = format!("{i}/3");
        shards += &call(
            &[
                "enumerate",
                "--kind",
                "magog",
                "--n",
                "4",
                "--ell",
                "1",
                "--partition",
                &part,
            ],
            "",
        )
        .stdout;
    }
    assert_eq!(shards, all.stdout);

    let limited = call(
        &[
            "enumerate",
            "--kind",
            "gog",
            "--n",
            "3",
            "--format",
            "json",
            "--limit",
            "2",
        ],
        "",
    );
    assert_eq!(limited.stdout.lines().count(), 2);
    assert_eq!(
        call(&["enumerate", "--kind", "gog", "--n", "3", "--partition", "3/3"], "").code,
        EXIT_USAGE
    );
}

#[test]
fn rank_and_unrank() {
    let r = call(&["rank"], SAMPLE_MAGOG);
    assert_eq!(r.code, EXIT_OK);
    let idx = r.stdout.trim();
    let back = call(&["unrank", "--kind", "magog", "--n", "8", "--index", idx], "");
    assert_eq!(back.stdout, SAMPLE_MAGOG);
    assert_eq!(
        call(&["unrank", "--kind", "gog", "--n", "3", "--index", "7"], "").code,
        EXIT_USAGE
    );
    assert_eq!(
        call(&["unrank", "--kind", "gog", "--n", "3", "--index", "-1"], "").code,
        EXIT_USAGE
    );
}

#[test]
fn stats_single_and_family() {
    let one = call(&["stats", "-", "--stat", "bc"], SAMPLE_MAGOG);
    assert_eq!(one.stdout, "penult_row1,last_row1,penult_row2,last_row2\n5,7,7,7\n");
    let json = call(
        &["stats", "-", "--stat", "ones_row1,last_row2", "--format", "json"],
        SAMPLE_MAGOG,
    );
    assert_eq!(json.stdout, "{\"ones_row1\":2,\"last_row2\":7}\n");

    let dist = call(&["stats", "--kind", "magog", "--n", "4", "--stat", "ones_row2"], "");
    assert_eq!(dist.stdout, "ones_row2,count\n1,19\n2,12\n3,3\n4,1\n");
    assert_eq!(call(&["stats", "--stat", "mrr"], "").code, EXIT_USAGE);
    assert_eq!(
        call(&["stats", "-", "--stat", "nonsense"], SAMPLE_MAGOG).code,
        EXIT_USAGE
    );
}

#[test]
fn counterexample_search() {
    let found = call(&["counterexample", "--n", "4", "--pairing", "bc"], "");
    assert_eq!(found.code, EXIT_OK);
    assert_eq!(found.stdout.lines().count(), 6);
    let none = call(&["counterexample", "--n", "4", "--pairing", "constant"], "");
    assert!(none.stdout.is_empty());
    assert!(none.stderr.contains("preserved"));
}

#[test]
fn verify_emits_reports() {
    let out = call(&["verify", "--n", "4", "--ell", "2"], "");
    assert_eq!(out.code, EXIT_OK);
    let reports: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let reports = reports.as_array().unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r["status"] == "passed"));
    assert_eq!(reports[3]["counts"]["gog"], "816");

    let capped = call(&["verify", "--n", "5", "--cap", "10"], "");
    let reports: serde_json::Value = serde_json::from_str(&capped.stdout).unwrap();
    assert_eq!(reports[0]["status"], "skipped");
    assert_eq!(capped.code, EXIT_OK);
}

#[test]
fn render_from_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(SAMPLE_MAGOG.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let out = call(&["render", path, "--mark-bug"], "");
    assert_eq!(out.stdout, "1 1 2\\4 4 5 7\n1 2 2\\4 4 6 7 7\nbug k=3\n");
}

#[test]
fn usage_errors() {
    assert_eq!(call(&[], "").code, EXIT_USAGE);
    assert_eq!(call(&["count", "--kind", "tog", "--n", "3"], "").code, EXIT_USAGE);
    assert_eq!(call(&["count", "--kind", "gog", "--n", "2"], "").code, EXIT_USAGE);
    assert_eq!(
        call(&["count", "--kind", "gog", "--n", "3", "--ell", "-1"], "").code,
        EXIT_USAGE
    );
    let help = call(&["--help"], "");
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("enumerate"));
}

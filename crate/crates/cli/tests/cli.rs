use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/v1")
}

fn run_with(args: &[&str], verbose: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_weilmono"));
    cmd.args(args);
    match verbose {
        Some(v) => cmd.env("WEILMONO_VERBOSE", v),
        None => cmd.env_remove("WEILMONO_VERBOSE"),
    };
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> (i32, String) {
    let out = run_with(args, None);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{args:?} exited {code}: {out}");
    serde_json::from_str(&out).unwrap()
}

struct LocalSchemas;

impl jsonschema::Retrieve for LocalSchemas {
    fn retrieve(&self, uri: &jsonschema::Uri<String>) -> Result<Value, Box<dyn std::error::Error + Send + Sync>> {
        let name = uri.path().as_str().rsplit('/').next().unwrap_or_default().to_string();
        Ok(serde_json::from_str(&std::fs::read_to_string(schema_dir().join(name))?)?)
    }
}

fn validator(name: &str) -> jsonschema::Validator {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap()).unwrap();
    jsonschema::options().with_retriever(LocalSchemas).build(&schema).unwrap_or_else(|e| panic!("schema {name}: {e}"))
}

fn assert_valid(name: &str, v: &Value) {
    let errors: Vec<String> = validator(name).iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{v}");
}

#[test]
fn documented_examples() {
    let (_, out) = run(&["rz", "bn", "--n", "1"]);
    assert_eq!(out.trim_end(), r#"{"h":[1,0,1]}"#);
    let (_, out) = run(&["building", "apartment", "--d", "3", "--check"]);
    assert_eq!(out.trim_end(), r#"{"in_kernel":true,"self_pairing":6}"#);

    let sp2 = run_json(&["wd", "tau", "--d", "2", "--I", ""]);
    assert_eq!(sp2["decomposition"], json!([{"length": 2, "start_tag": {"c": "1", "m": 0}}]));
    assert_eq!(sp2["rep"]["blocks"].as_array().unwrap().len(), 2);
    assert_eq!(sp2["rep"]["N"][0]["matrix"], json!([["1"]]));
}

#[test]
fn blow_up_values() {
    // B^2 is P^2 blown up at its q^2 + q + 1 rational points, so h^2 = q^2 + q + 2.
    assert_eq!(run_json(&["rz", "bn", "--n", "2"]), json!({"h": [1, 0, [2, 1, 1], 0, 1]}));
    assert_eq!(run_json(&["rz", "bn", "--n", "0"]), json!({"h": [1]}));
}

#[test]
fn verbose_reports_carry_checks() {
    let out = run_with(&["wd", "ladder", "--d", "4", "--I", "1,3"], Some("1"));
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid("report", &v);
    assert_eq!(v["checks"]["isomorphic"], json!(true));
    assert_eq!(v["command"], json!(["wd", "ladder", "--d", "4", "--I", "1,3"]));

    let v: Value = serde_json::from_slice(&run_with(&["building", "apartment", "--d", "4", "--check"], Some("2")).stdout).unwrap();
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["result"]["self_pairing"], json!(24));
    for k in ["alcoves_is_factorial", "bipartite", "parity_is_sign", "in_kernel"] {
        assert_eq!(v["checks"][k], json!(true), "{k}");
    }
}

#[test]
fn exit_codes() {
    let (code, out) = run(&["wd", "tau", "--d", "3", "--I", "7"]);
    assert_eq!(code, 2);
    assert_valid("error", &serde_json::from_str(&out).unwrap());

    let (code, out) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["error"]["kind"], json!("usage"));

    let (code, _) = run(&["filt", "monodromy", "--in", "/nonexistent/rep.json"]);
    assert_eq!(code, 2);

    let dir = std::env::temp_dir().join(format!("weilmono-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"blocks":[{"c":"1","m":0,"dim":1}],"bogus":true}"#).unwrap();
    let (code, out) = run(&["wd", "op", "--op", "dual", "--in", bad.to_str().unwrap()]);
    assert_eq!(code, 2, "{out}");
    assert!(out.contains("bogus"));

    let (code, _) = run(&["wd", "op", "--op", "tensor", "--in", &fixture("sp3.json")]);
    assert_eq!(code, 2);
    let (code, _) = run(&["homalg", "split", "--complex", &fixture("ss_complex.json"), "--phi", &fixture("ss_phi.json")]);
    assert_eq!(code, 2);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn unmet_preconditions_are_validation_errors() {
    // x does not annihilate the identity on H^0.
    let dir = std::env::temp_dir().join(format!("weilmono-cli3-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let polys = dir.join("polys.json");
    std::fs::write(&polys, r#"{"0":["0","1"]}"#).unwrap();
    let (code, out) = run(&[
        "homalg", "split", "--complex", &fixture("ss_complex.json"), "--phi", &fixture("ss_phi.json"), "--polys",
        polys.to_str().unwrap(),
    ]);
    assert_eq!(code, 2, "{out}");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn invariant_failures_map_to_exit_three() {
    let err = anyhow::Error::new(weilmono_core::Error::Invariant("broken".into()));
    assert_eq!(weilmono_cli::exit_code(&err), 3);
    assert_eq!(weilmono_cli::error_value(&err)["error"]["kind"], json!("invariant"));
    let err = anyhow::Error::new(weilmono_core::Error::Precondition("unmet".into()));
    assert_eq!(weilmono_cli::exit_code(&err), 2);
    let report = weilmono_cli::Report::new(vec![], json!(null)).check("a", true).check("b", false);
    assert!(!report.passed());
    assert_eq!(report.to_value(1)["passed"], json!(false));
}

#[test]
fn file_commands() {
    let dual = run_json(&["wd", "op", "--op", "dual", "--in", &fixture("sp3.json")]);
    assert_eq!(dual["decomposition"], json!([{"length": 3, "start_tag": {"c": "1", "m": -4}}]));
    let sum = run_json(&["wd", "op", "--op", "sum", "--in", &fixture("sp3.json"), &fixture("unram2.json")]);
    assert_eq!(sum["decomposition"].as_array().unwrap().len(), 3);
    let tw = run_json(&["wd", "op", "--op", "twist", "--in", &fixture("sp3.json"), "--tag", "-1,2"]);
    assert_eq!(tw["decomposition"][0]["start_tag"], json!({"c": "-1", "m": 2}));
    let tw2 = run_json(&["wd", "op", "--op", "twist", "--in", &fixture("sp3.json"), &fixture("tag.json")]);
    assert_eq!(tw2["decomposition"][0]["start_tag"], json!({"c": "1/2", "m": 1}));
    for v in [&dual, &sum, &tw] {
        assert_valid("wdrep", &v["rep"]);
    }

    let m = run_json(&["filt", "monodromy", "--in", &fixture("sp3.json"), "--bases"]);
    assert_valid("filtration", &m["filtration"]);
    assert_eq!(m["filtration"]["jumps"], json!([{"dim": 1, "k": -2}, {"dim": 1, "k": 0}, {"dim": 1, "k": 2}]));
    let mw = run_json(&["filt", "mw", "--in", &fixture("sp3.json"), "--j", "2"]);
    assert_eq!(mw["holds"], json!(true));

    let ladder = fixture("ladder3.json");
    let ext = |a: &str, b: &str| run_json(&["homalg", "ext", "--algebra", &ladder, "--from", &fixture(a), "--to", &fixture(b), "--kmax", "3"])["dims"].clone();
    assert_eq!(ext("s0.json", "s0.json"), json!([1, 0, 0, 0]));
    assert_eq!(ext("s1.json", "s0.json"), json!([0, 1, 0, 0]));
    assert_eq!(ext("s2.json", "s0.json"), json!([0, 0, 1, 0]));
    assert_eq!(ext("s0.json", "s2.json"), json!([0, 0, 0, 0]));

    let split = run_json(&["homalg", "split", "--complex", &fixture("dual_complex.json")]);
    assert_eq!(split["splittable"], json!(false));
    let split = run_json(&[
        "homalg", "split", "--complex", &fixture("ss_complex.json"), "--phi", &fixture("ss_phi.json"), "--polys", &fixture("ss_polys.json"),
    ]);
    assert_eq!(split["splittable"], json!(true));
    assert_eq!(split["actionphi"]["splitting"]["unique"], json!(true));

    let tri = run_json(&["rz", "nnonnul", "--config", &fixture("triangle.json")]);
    assert_eq!((tri["ker_dim"].clone(), tri["n_power_nonzero"].clone()), (json!(1), json!(true)));
    let chain = run_json(&["rz", "nnonnul", "--config", &fixture("chain2.json")]);
    assert_eq!(chain["n_power_nonzero"], json!(false));
    let e1 = run_json(&["rz", "e1", "--config", &fixture("triangle.json")]);
    assert_eq!(e1["e2"]["complete"], json!(true));
}

#[test]
fn graph_command_matches_genus() {
    for (edges, genus) in [("0-1", 0), ("0-1,0-1", 1), ("0-1,0-1,0-1", 2), ("0-1,1-2,2-0", 1), ("0-1,1-2,2-3,3-0,0-2", 2)] {
        let v = run_json(&["rz", "graph", "--edges", edges]);
        assert_eq!(v["genus"], json!(genus), "{edges}");
        assert_eq!(v["nnonnul"]["ker_dim"], json!(genus), "{edges}");
        assert_eq!(v["nnonnul"]["n_power_nonzero"], json!(genus > 0), "{edges}");
    }
}

#[test]
fn fixtures_and_outputs_match_schemas() {
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().trim_end_matches(".schema.json").to_string();
        validator(&name);
    }
    let read = |f: &str| -> Value { serde_json::from_str(&std::fs::read_to_string(fixture(f)).unwrap()).unwrap() };
    for (schema, file) in [
        ("wdrep", "sp3.json"), ("wdrep", "unram2.json"), ("tag", "tag.json"), ("algebra", "ladder3.json"), ("module", "s0.json"),
        ("module", "s1.json"), ("module", "s2.json"), ("complex", "dual_complex.json"), ("complex", "ss_complex.json"),
        ("chainmap", "ss_phi.json"), ("polys", "ss_polys.json"), ("config", "triangle.json"), ("config", "chain2.json"),
    ] {
        assert_valid(schema, &read(file));
    }
    assert_valid("betti", &run_json(&["rz", "bn", "--n", "3"]));
    let tau = run_json(&["wd", "tau", "--d", "4", "--I", "2"]);
    assert_valid("wdrep", &tau["rep"]);
    for s in tau["decomposition"].as_array().unwrap() {
        assert_valid("summand", s);
    }
    let split = run_json(&["homalg", "split", "--complex", &fixture("ss_complex.json")]);
    assert_valid("chainmap", &split["witness"]);
    assert!(!validator("wdrep").is_valid(&json!({"blocks": [{"c": 0.5, "m": 0, "dim": 1}]})));
}

fn leaves(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(m) => m.values().for_each(|x| leaves(x, out)),
        Value::Array(a) => a.iter().for_each(|x| leaves(x, out)),
        Value::String(s) => out.push(s.clone()),
        other => out.push(other.to_string()),
    }
}

fn md_tokens(md: &str) -> Vec<String> {
    let mut out = Vec::new();
    for line in md.lines() {
        let t = line.trim_start().trim_start_matches('-').trim();
        if t.starts_with("|---") {
            continue;
        }
        // Drop the key label of `- **key**: value` lines.
        let body = match t.strip_prefix("**").and_then(|r| r.split_once("**")) {
            Some((_, rest)) => rest.trim_start_matches(':').trim(),
            None => t,
        };
        out.extend(
            body.split(|c: char| c == '|' || c == ',' || c == '[' || c == ']' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(str::to_string),
        );
    }
    out
}

fn numeric(tokens: Vec<String>) -> Vec<String> {
    tokens
        .into_iter()
        .filter(|t| {
            let s = t.strip_prefix('-').unwrap_or(t);
            !s.is_empty() && s.split('/').all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit()))
                || t == "true"
                || t == "false"
        })
        .collect()
}

#[test]
fn markdown_carries_the_json_values() {
    let cases: Vec<Vec<String>> = vec![
        vec!["wd", "tau", "--d", "4", "--I", "1,3"],
        vec!["wd", "op", "--op", "twist", "--in", &fixture("sp3.json"), &fixture("tag.json")],
        vec!["filt", "mw", "--in", &fixture("sp3.json"), "--j", "0"],
        vec!["filt", "monodromy", "--in", &fixture("unram2.json"), "--bases"],
        vec!["rz", "e1", "--config", &fixture("triangle.json")],
        vec!["rz", "graph", "--edges", "0-1,0-1,1-2"],
        vec!["rz", "bn", "--n", "4"],
        vec!["homalg", "split", "--complex", &fixture("ss_complex.json"), "--phi", &fixture("ss_phi.json"), "--polys", &fixture("ss_polys.json")],
        vec!["building", "apartment", "--d", "4"],
    ]
    .into_iter()
    .map(|c| c.into_iter().map(String::from).collect())
    .collect();
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let v = run_json(&args);
        let mut json_leaves = Vec::new();
        leaves(&v, &mut json_leaves);
        let mut md_args = args.clone();
        md_args.extend(["--format", "md"]);
        let (code, md) = run(&md_args);
        assert_eq!(code, 0);
        assert_eq!(numeric(md_tokens(&md)), numeric(json_leaves), "{args:?}\n{md}");
    }
}

#[test]
fn output_is_deterministic() {
    let cases: [&[&str]; 4] = [
        &["wd", "tau", "--d", "5", "--I", "1,2,4"],
        &["rz", "graph", "--edges", "0-1,1-2,2-0,0-1"],
        &["building", "apartment", "--d", "4", "--check"],
        &["homalg", "ext", "--algebra", &fixture("ladder3.json"), "--from", &fixture("s2.json"), "--to", &fixture("s0.json"), "--kmax", "4"],
    ];
    for args in cases {
        let a = run_with(args, Some("1")).stdout;
        let b = run_with(args, Some("1")).stdout;
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn acceptance_subset_via_cli() {
    let v = run_json(&["suite", "acceptance", "--only", "10,11"]);
    assert_eq!(v["total"], json!(2));
    assert_eq!(v["passed"], json!(2));
    for row in v["criteria"].as_array().unwrap() {
        assert!(row["elapsed_ms"].is_u64());
    }
    let (code, md) = run(&["suite", "acceptance", "--only", "12", "--format", "md"]);
    assert_eq!(code, 0);
    let row = md.lines().find(|l| l.contains("poset machinery")).unwrap();
    let bare = row.replace("\\|", "");
    assert_eq!(bare.matches('|').count(), 7, "{row}");
}

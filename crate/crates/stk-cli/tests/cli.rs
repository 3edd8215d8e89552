use std::io::Write;
use std::process::{Command, Output, Stdio};

use stk_graph::Graph;
use stk_whitehead::{EndoMap, WhiteheadAuto};

const EX: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/example_3_1.json");
const EX_EDGES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/example_3_1.edges");
const NULL2: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/null2.edges");

fn stk(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stk"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(stk(&["analyze", EX], None).status.code(), Some(0));
    assert_eq!(stk(&["analyze", "/no/such/file"], None).status.code(), Some(2));
    assert_eq!(stk(&["analyze", "-"], Some("a b c\n")).status.code(), Some(2));
    assert_eq!(stk(&["analyze", "-"], Some("a b\nb a\n")).status.code(), Some(3));
    assert_eq!(stk(&["analyze", "-"], Some(r#"{"vertices":["a"],"edges":[["a","q"]]}"#)).status.code(), Some(3));
    assert_eq!(stk(&["decompose", EX, "tau a"], None).status.code(), Some(2));
    assert_eq!(stk(&["decompose", EX, "tau a i"], None).status.code(), Some(3));
    assert_eq!(stk(&["certify", EX, "--class", "e", "inv:e"], None).status.code(), Some(3));
    assert_eq!(stk(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn stdin_and_formats_agree() {
    let text = std::fs::read_to_string(EX_EDGES).unwrap();
    let a = stdout(&stk(&["analyze", "--format", "json", "-"], Some(&text)));
    let b = stdout(&stk(&["analyze", "--format", "json", EX_EDGES], None));
    assert_eq!(a, b);
    let j: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(j["height"], 3);
    assert!(stdout(&stk(&["analyze", "--format", "dot", EX], None)).contains("->"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["present", "--format", "json", EX],
        vec!["present", "--format", "gap", NULL2],
        vec!["decompose", EX, "tau a d; inv e; tau i h"],
        vec!["certify", "--format", "json", EX, "--class", "c", "tau:c:e (tau:c:e)^-1"],
    ] {
        assert_eq!(stdout(&stk(&args, None)), stdout(&stk(&args, None)), "{args:?}");
    }
}

#[test]
fn emitted_presentation_verifies_independently() {
    let g = {
        let j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(EX).unwrap()).unwrap();
        let vs: Vec<String> = j["vertices"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
        let es: Vec<(String, String)> = j["edges"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| (e[0].as_str().unwrap().to_string(), e[1].as_str().unwrap().to_string()))
            .collect();
        Graph::new(&vs, &es).unwrap()
    };
    let j: serde_json::Value = serde_json::from_str(&stdout(&stk(&["present", "--format", "json", EX], None))).unwrap();
    let mut maps = std::collections::HashMap::new();
    for gen in j["generators"].as_array().unwrap() {
        let a = WhiteheadAuto::parse(&g, gen["binding"].as_str().unwrap()).unwrap();
        maps.insert(gen["symbol"].as_str().unwrap().to_string(), (a.to_map(&g), a.inverse().to_map(&g)));
    }
    let rels = j["relators"].as_array().unwrap();
    assert!(!rels.is_empty());
    for r in rels {
        let mut m = EndoMap::identity(&g);
        for f in r.as_array().unwrap() {
            let (fwd, inv) = &maps[f[0].as_str().unwrap()];
            let e = f[1].as_i64().unwrap();
            for _ in 0..e.abs() {
                m = m.then(&g, if e > 0 { fwd } else { inv });
            }
        }
        assert!(m.is_identity(), "{r}");
    }
    assert_eq!(j["classes"].as_array().unwrap().len(), 7);
}

#[test]
fn certify_outcomes() {
    let not = stdout(&stk(&["certify", EX, "--class", "i", "tau:i:c"], None));
    assert_eq!(not, "NotIdentity: moves i\n");
    let empty: serde_json::Value =
        serde_json::from_str(&stdout(&stk(&["certify", "--format", "json", EX, "--class", "c", ""], None))).unwrap();
    assert_eq!(empty["identity"], true);
    assert_eq!(empty["certificate"]["steps"].as_array().unwrap().len(), 0);
    let rel = stdout(&stk(&["certify", EX, "--class", "c", "inv:c inv:c"], None));
    assert!(rel.starts_with("identity:"), "{rel}");
}

#[test]
fn null_graph_and_single_vertex_presentations() {
    let p = stdout(&stk(&["present", NULL2], None));
    assert!(p.contains("class x (free)"));
    let one = stdout(&stk(&["present", "-"], Some("v\n")));
    assert!(one.ends_with("< inv:v | inv:v^2 >\n"), "{one}");
}

#[test]
fn transversal_override_changes_representatives() {
    let out = stdout(&stk(&["analyze", "--transversal", "b,g", EX], None));
    assert!(out.contains("[b] = {a,b}"));
    assert!(out.contains("[g] = {f,g}"));
    stdout(&stk(&["present", "--transversal", "b,g", EX], None));
}

#[test]
fn wh_apply_prints_images() {
    assert_eq!(stdout(&stk(&["wh", "apply", EX, "tau i h; inv h", "i"], None)), "h^-1 i\n");
    let j: serde_json::Value =
        serde_json::from_str(&stdout(&stk(&["wh", "apply", "--format", "json", EX, "tau a d", "a b"], None))).unwrap();
    assert_eq!(j["conjugacy_length"], 3);
}

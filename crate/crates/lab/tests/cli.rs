use std::process::Command;

fn minorlab(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_minorlab")).args(args).env_remove("MINORLAB_BUDGET").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn gen_emits_graph6_dot_edges_and_tags() {
    let (code, g6, _) = minorlab(&["gen", "--family", "dyck", "--k", "2", "--h", "1", "--c", "0"]);
    assert_eq!(code, 0);
    let g = minorlab_core::graph6::decode_str(g6.trim()).unwrap();
    assert_eq!((g.n(), g.m()), (32, 52));
    let (_, dot, _) = minorlab(&["gen", "--family", "vortex", "--k", "1", "--emit", "dot"]);
    assert!(dot.starts_with("graph"));
    let (_, edges, _) = minorlab(&["gen", "--family", "complete", "--n", "4", "--emit", "edges"]);
    assert_eq!(edges.lines().next(), Some("4"));
    let dir = std::env::temp_dir().join(format!("minorlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("d.g6");
    let (code, _, _) = minorlab(&["gen", "--family", "dyck", "--k", "2", "--c", "1", "--tags", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let tags = json(&std::fs::read_to_string(dir.join("d.tags.json")).unwrap());
    assert!(tags["tags"]["vertices"]["simple_cycle"].is_array());
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn analysis_verbs() {
    let (code, out, _) = minorlab(&["minor", "--pattern", "k4", "--host", "petersen"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["found"], true);
    let (_, out, _) = minorlab(&["genus", "--in", "k7"]);
    assert_eq!(json(&out)["orientable_genus"], 1);
    let (_, out, _) = minorlab(&["embeds", "--in", "k33", "--surface", "0,1"]);
    assert_eq!(json(&out)["embeds"], true);
    let (_, out, _) = minorlab(&["disk", "--in", "k4", "--x", "0,1,2,3"]);
    assert_eq!(json(&out)["disk_embeddable"], false);
    let (_, out, _) = minorlab(&["kc", "--in", "j"]);
    assert_eq!(json(&out)["kuratowski_connected"], false);
    let (_, out, _) = minorlab(&["pack", "--z", "k3", "--host", "k6", "--k", "2"]);
    assert_eq!(json(&out)["found"], true);
    let (_, out, _) = minorlab(&["cover", "--z", "k5,k33", "--host", "k6", "--cap", "4"]);
    assert_eq!(json(&out)["size"], 2);
    let (_, out, _) = minorlab(&["ep", "--z", "k5", "--host", "k6", "--kmax", "2"]);
    assert!(json(&out)["value"].is_u64());
    let file = std::env::temp_dir().join(format!("minorlab-k5-pendant-{}.txt", std::process::id()));
    std::fs::write(&file, "6\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n0 5\n").unwrap();
    let path = file.to_str().unwrap();
    let (code, out, _) = minorlab(&["core", "--in", path, "--a", "0,1,2,3,4", "--b", "0,5"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["status"]["Found"], serde_json::json!([1, 2, 3, 4]));
    let (code, _, _) = minorlab(&["core", "--in", path, "--a", "0,1,2,3", "--b", "0,4,5"]);
    assert_eq!(code, 3);
    let _ = std::fs::remove_file(file);
}

#[test]
fn sobs_prints_tokens_or_json() {
    let (code, out, _) = minorlab(&["sobs", "--z", "k5,k33"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "S(0,1) S(1,0)");
    let (_, out, _) = minorlab(&["sobs", "--z", "k7", "--emit", "json"]);
    assert_eq!(json(&out), serde_json::json!({"sobs": [{"h": 1, "c": 0}]}));
    let (_, out, _) = minorlab(&["sobs", "--members", "empty 0,0"]);
    assert_eq!(out.split_whitespace().count(), 2);
}

#[test]
fn exit_codes() {
    let (code, _, _) = minorlab(&["verify", "--suite", "nightly"]);
    assert_eq!(code, 3);
    let (code, _, _) = minorlab(&["gen", "--family", "wall", "--k", "1"]);
    assert_eq!(code, 3);
    let (code, _, _) = minorlab(&["genus", "--in", "k5", "--emit", "dot"]);
    assert_eq!(code, 3);
    let (code, _, err) = minorlab(&["--budget", "1", "minor", "--pattern", "k6", "--host", "petersen"]);
    assert_eq!(code, 2, "{err}");
    let (code, out, _) = minorlab(&["verify", "--suite", "smoke", "--emit", "csv"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("claim_id,status"));
}

#[test]
fn budget_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_minorlab"))
        .args(["minor", "--pattern", "k6", "--host", "petersen"])
        .env("MINORLAB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let bad = Command::new(env!("CARGO_BIN_EXE_minorlab")).args(["genus", "--in", "k4"]).env("MINORLAB_BUDGET", "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(3));
}

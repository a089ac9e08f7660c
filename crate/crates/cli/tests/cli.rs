use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn kk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kk"))
        .args(args)
        .env_remove("KK_SIZE_CAP")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = kk(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_and_check() {
    let dir = TempDir::new().unwrap();
    let c4 = gen(&dir, "c4.json", &["group-cyclic", "4", "--p", "2"]);
    let out = kk(&["check", s(&c4)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["dim_center"], 4);
    assert_eq!(v["symmetric"], true);
    assert_eq!(v["kind"], "C4");

    let y = gen(&dir, "y.json", &["truncated-poly", "2", "--p", "2"]);
    let t = gen(&dir, "t.json", &["trivial-extension", s(&y)]);
    assert_eq!(json(&kk(&["check", s(&t)]))["dim"], 4);
    let m = gen(&dir, "m.json", &["matrix", s(&y), "2"]);
    let v = json(&kk(&["check", s(&m)]));
    assert_eq!(v["dim"], 8);
    assert_eq!(v["dim_center"], 2);
    let g = gen(&dir, "g4.json", &["group-klein", "--p", "2", "--e", "2"]);
    assert_eq!(json(&kk(&["check", s(&g)]))["field"]["e"], 2);
}

#[test]
fn signature_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let c4 = gen(&dir, "c4.json", &["group-cyclic", "4", "--p", "2"]);
    let a = kk(&["signature", s(&c4)]);
    let b = kk(&["signature", s(&c4), "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["schema_version"], 1);
    let perps: Vec<u64> = v["kulshammer"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["dim_t_perp"].as_u64().unwrap())
        .collect();
    assert_eq!(perps, vec![2, 1, 1]);
    assert_eq!(v["stabilization_index"], 2);
    assert_eq!(v["gram_fingerprint"].as_str().unwrap().len(), 64);
}

#[test]
fn signature_options_and_text() {
    let dir = TempDir::new().unwrap();
    let y = gen(&dir, "y.json", &["truncated-poly", "2", "--p", "2"]);
    let v = json(&kk(&["signature", s(&y), "--n-max", "2", "--m-max", "4", "--kappa", "1,1", "0,3"]));
    assert_eq!(v["kulshammer"].as_array().unwrap().len(), 2);
    assert_eq!(v["hochschild"].as_array().unwrap().len(), 5);
    let hk = v["higher_kappa"].as_array().unwrap();
    assert_eq!(hk.len(), 2);
    assert_eq!((hk[1]["m"].as_u64(), hk[1]["n"].as_u64()), (Some(0), Some(3)));

    let out = kk(&["signature", s(&y), "--text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("stabilization_index: 1\n"), "{text}");
    assert!(text.contains("hochschild[3].dim_cohomology: 2\n"), "{text}");

    assert_eq!(kk(&["signature", s(&y), "--kappa", "1"]).status.code(), Some(2));
}

#[test]
fn compare_exit_codes() {
    let dir = TempDir::new().unwrap();
    let c4 = gen(&dir, "c4.json", &["group-cyclic", "4", "--p", "2"]);
    let v4 = gen(&dir, "v4.json", &["group-klein", "--p", "2"]);
    let c3 = gen(&dir, "c3.json", &["group-cyclic", "3", "--p", "3"]);

    let same = kk(&["compare", s(&c4), s(&c4)]);
    assert_eq!(same.status.code(), Some(0));
    let v = json(&same);
    assert_eq!(v["verdict"], "INCONCLUSIVE");
    assert!(v["differences"].as_array().unwrap().is_empty());

    let ab = kk(&["compare", s(&c4), s(&v4)]);
    let ba = kk(&["compare", s(&v4), s(&c4)]);
    assert_eq!(ab.status.code(), Some(10));
    assert_eq!(ba.status.code(), Some(10));
    let keys: Vec<String> = json(&ab)["differences"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["key"].as_str().unwrap().to_string())
        .collect();
    assert!(keys.contains(&"kulshammer[1].dim_t_perp".to_string()));
    assert!(keys.contains(&"stabilization_index".to_string()));

    let inc = kk(&["compare", s(&c4), s(&c3)]);
    assert_eq!(inc.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&inc.stderr).contains("incomparable"));
}

#[test]
fn compare_accepts_saved_signatures() {
    let dir = TempDir::new().unwrap();
    let c4 = gen(&dir, "c4.json", &["group-cyclic", "4", "--p", "2"]);
    let m2 = gen(&dir, "m2.json", &["matrix", s(&c4), "2"]);
    let sig = dir.path().join("c4.sig.json");
    std::fs::write(&sig, kk(&["signature", s(&c4)]).stdout).unwrap();
    let out = kk(&["compare", s(&sig), s(&m2)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_eq!(v["verdict"], "INCONCLUSIVE");
    assert!(!v["not_compared"].as_array().unwrap().is_empty());

    let text = std::fs::read_to_string(&sig).unwrap();
    let bumped = dir.path().join("v2.json");
    std::fs::write(&bumped, text.replacen("\"schema_version\": 1", "\"schema_version\": 2", 1)).unwrap();
    let out = kk(&["compare", s(&bumped), s(&c4)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema version"));
}

#[test]
fn input_and_cap_errors() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(kk(&["check", s(&missing)]).status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"field\": {\"p\": 2}, \"dim\": 1, \"basis\": [\"1\"], \"unit\": [1], \"mult\": [[0, 0, [[0, 1]]]], \"colour\": 1}").unwrap();
    let out = kk(&["check", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));

    let c4 = gen(&dir, "c4.json", &["group-cyclic", "4", "--p", "2"]);
    let capped = Command::new(env!("CARGO_BIN_EXE_kk"))
        .args(["hh", s(&c4), "-m", "3"])
        .env("KK_SIZE_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    let garbage = Command::new(env!("CARGO_BIN_EXE_kk"))
        .args(["hh", s(&c4), "-m", "1"])
        .env("KK_SIZE_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(garbage.status.code(), Some(2));
    assert_eq!(kk(&["gen", "group-klein"]).status.code(), Some(2));
}

#[test]
fn signature_marks_capped_entries() {
    let dir = TempDir::new().unwrap();
    let c4 = gen(&dir, "c4.json", &["group-cyclic", "4", "--p", "2"]);
    let out = Command::new(env!("CARGO_BIN_EXE_kk"))
        .args(["signature", s(&c4)])
        .env("KK_SIZE_CAP", "2000")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hochschild"][3]["dim_cohomology"], "skipped: cap");
    assert_eq!(v["hochschild"][0]["dim_cohomology"], 4);
}

#[test]
fn per_invariant_subcommands() {
    let dir = TempDir::new().unwrap();
    let y = gen(&dir, "y.json", &["truncated-poly", "2", "--p", "2"]);

    let hh = json(&kk(&["hh", s(&y), "-m", "3"]));
    assert_eq!(hh["homology"]["dim"], 2);
    assert_eq!(hh["cohomology"]["dim"], 2);
    let only = json(&kk(&["hh", s(&y), "-m", "2", "--homology"]));
    assert!(only.get("cohomology").is_none());

    let z = json(&kk(&["zeta", s(&y), "-n", "1"]));
    assert_eq!(z["report"], "zeta");
    assert_eq!(z["image_equals_t_perp"], true);
    assert_eq!(z["operator"]["twist"], 0);

    let k = json(&kk(&["kappa", s(&y), "-n", "1"]));
    assert_eq!(k["dim_a_mod_ka"], 2);
    assert_eq!(k["image_equals_t_center_perp"], true);
    assert_eq!(k["kernel_equals_p_perp"], true);

    let out = kk(&["kappam", s(&y), "-m", "1", "-n", "1", "--verify", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let km = json(&out);
    assert_eq!(km["source_degree"], 2);
    assert_eq!(km["properties"]["composition"], true);

    let out = kk(&["gerst", s(&y), "--check-restricted"]);
    assert_eq!(out.status.code(), Some(0));
    let g = json(&out);
    assert_eq!(g["bracket_sign"], -1);
    assert_eq!(g["dim"], 2);
    assert_eq!(g["derived_dim"], 1);
    assert_eq!(g["restricted"]["all_pass"], true);

    let t = gen(&dir, "t.json", &["truncated-poly", "3", "--p", "3"]);
    let g = json(&kk(&["gerst", s(&t), "--degree", "2"]));
    assert!(g["sigma"]["undefined"].is_string());
}

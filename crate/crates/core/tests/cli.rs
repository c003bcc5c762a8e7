//! Runs the `eqlines` binary and checks exit codes, file round trips, and
//! every JSON payload against the schemas in `schemas/`.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqlines")).args(args).output().unwrap()
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn check(schema: &str, out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    let path = schema_dir().join(schema);
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let base = format!("file://{}/", schema_dir().display());
    let v = jsonschema::options().with_base_uri(base).build(&s).unwrap();
    let errors: Vec<String> = v.iter_errors(&value).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{text}");
    value
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn schemas_are_well_formed() {
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let s: Value = serde_json::from_str(&std::fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        assert!(jsonschema::meta::is_valid(&s));
    }
}

#[test]
fn angle_commands() {
    let o = bin(&["korder", "--alpha", "1/5", "--nmax", "6"]);
    assert_eq!(code(&o), 0);
    let v = check("korder.schema.json", &o);
    assert_eq!(v["k"], 3);
    assert_eq!(v["witness"]["n"], 3);

    let o = bin(&["korder", "--lambda-minpoly", "-2,0,1", "--lo", "1", "--hi", "2", "--nmax", "5"]);
    assert_eq!(check("korder.schema.json", &o)["k"], 3);

    let o = bin(&["korder", "--alpha", "1/7", "--nmax", "3"]);
    assert_eq!(code(&o), 3);
    assert_eq!(check("korder.schema.json", &o)["k"], "exceeded");

    let o = bin(&["nalpha", "--alpha", "1/7", "--d", "10", "--nmax", "5"]);
    assert_eq!(check("nalpha.schema.json", &o)["n_alpha"], 12);
    let o = bin(&["gerzon", "--d", "23"]);
    assert_eq!(check("gerzon.schema.json", &o)["bound"], 276);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["gerzon"][..],
        &["nosuch"],
        &["korder", "--alpha", "3/2"],
        &["korder"],
        &["construct", "--alpha", "1/7", "--d", "2"],
        &["cayley-aff", "--p", "9"],
        &["measure", "--graph", "/does/not/exist"],
    ] {
        let o = bin(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn construct_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (alpha, d, n) in [("1/3", 15, 28), ("1/5", 10, 13), ("1/7", 13, 16)] {
        let csv = dir.path().join(format!("{}.csv", alpha.replace('/', "_")));
        let c = csv.to_str().unwrap();
        let o = bin(&["construct", "--alpha", alpha, "--d", &d.to_string(), "--out", c]);
        assert_eq!(code(&o), 0);
        let v = check("construct.schema.json", &o);
        assert_eq!(v["n"], n);

        let o = bin(&["verify", "--family", c, "--alpha", alpha]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(check("verify.schema.json", &o)["valid"], true);

        // the CSV reader and writer agree to the last bit
        let text = std::fs::read_to_string(&csv).unwrap();
        let f = eqlines::lines::LineFamily::from_csv(&text).unwrap();
        assert_eq!(f.to_csv(), text);
    }

    // without --out the CSV itself is the payload
    let o = bin(&["construct", "--alpha", "1/5", "--d", "4"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("4,2.0000000000000001e-1,4\n"));

    let o = bin(&["verify", "--family", dir.path().join("1_5.csv").to_str().unwrap(), "--alpha", "1/7"]);
    assert_eq!(code(&o), 1);
    assert_eq!(check("verify.schema.json", &o)["valid"], false);
}

#[test]
fn json_family_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ico.json");
    let fam = eqlines::lines::icosahedron_family();
    std::fs::write(&path, serde_json::to_string(&fam).unwrap()).unwrap();
    let written: Value = serde_json::to_value(&fam).unwrap();
    let s: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_dir().join("family.schema.json")).unwrap()).unwrap();
    let base = format!("file://{}/", schema_dir().display());
    assert!(jsonschema::options().with_base_uri(base).build(&s).unwrap().is_valid(&written));

    let p = path.to_str().unwrap();
    let o = bin(&["verify", "--family", p]);
    assert_eq!(code(&o), 0);
    assert_eq!(check("verify.schema.json", &o)["n"], 6);
    let o = bin(&["switch", "--family", p, "--alpha", "1/sqrt5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn graph_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("cay.json");
    let gs = g.to_str().unwrap();
    let o = bin(&["cayley-aff", "--p", "7", "--out", gs]);
    assert_eq!(code(&o), 0);
    assert_eq!(check("written.schema.json", &o)["n"], 126);
    let graph: Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    let s: Value =
        serde_json::from_str(&std::fs::read_to_string(schema_dir().join("graph.schema.json")).unwrap()).unwrap();
    assert!(jsonschema::validator_for(&s).unwrap().is_valid(&graph));

    let m = check("measure.schema.json", &bin(&["measure", "--graph", gs]));
    assert_eq!(m["mult"], 6);

    let o = bin(&["multbound", "--graph", gs, "--lambda", "second", "--r", "2", "--s", "2"]);
    assert_eq!(code(&o), 0);
    let b = check("multbound.schema.json", &o);
    assert_eq!(b["measured"], 6);
    assert!(b["bound"].as_u64().unwrap() >= 6);

    let o = bin(&["multbound", "--graph", gs, "--lambda", "second"]);
    assert_eq!(code(&o), 0);
    assert!(check("multbound.schema.json", &o)["c"].is_number());

    let net = check("net.schema.json", &bin(&["net", "--graph", gs, "--r", "3", "--root", "5"]));
    assert_eq!(net["covers"], true);
    assert!(net["members"].as_array().unwrap().len() <= net["size_bound"].as_u64().unwrap() as usize);

    let spec = String::from_utf8(bin(&["spectrum", "--graph", gs]).stdout).unwrap();
    let values: Vec<f64> = spec.lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(values.len(), 126);
    // 42 type_i edges and 42 shift edges cut into 3
    assert!((values.iter().map(|x| x * x).sum::<f64>() - 336.0).abs() < 1e-8);
    assert!(values.windows(2).all(|w| w[0] >= w[1]));

    let f = dir.path().join("comb.json");
    let o = bin(&["fixture", "--kind", "comb", "--m", "5", "--out", f.to_str().unwrap()]);
    assert_eq!(check("written.schema.json", &o)["n"], 15);
    let o = bin(&["switch", "--graph", f.to_str().unwrap(), "--alpha", "1/5"]);
    let sw = check("switch.schema.json", &o);
    assert_eq!(sw["signs"].as_array().unwrap().len(), 15);

    let a = bin(&["--seed", "11", "fixture", "--kind", "random", "--n", "30", "--max-degree", "5"]);
    let b = bin(&["fixture", "--kind", "random", "--n", "30", "--max-degree", "5", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let rg: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(jsonschema::validator_for(&s).unwrap().is_valid(&rg));
}

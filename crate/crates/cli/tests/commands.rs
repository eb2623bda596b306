use std::io::Write;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-gw")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_base_fans() {
    let o = bin(&["build", "p3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("v1: [-1, -1, -1]"));
    assert!(s.contains("rays: 4\n"));
    let o = bin(&["build", "cube"]);
    assert!(stdout(&o).contains("maximal_cones: 8\n"));
}

#[test]
fn transform_examples() {
    let o = bin(&["transform", "cremona-p3", "P3(k=4): d=1; a=0,0,0,0"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("output: P3(k=4): d=3; a=1,1,1,1\n"));
    let o = bin(&["transform", "cube-point-involution", "CUBE(k=4): d=0,0,1; a=0,0,1,0"]);
    assert!(stdout(&o).contains("output: CUBE(k=4): d=1,1,1; a=1,1,0,1\n"));
    let o = bin(&["transform", "basis-change", "P3(k=4): d=0; a=0,0,0,0; b=-1,0,0,0,0,0"]);
    assert!(stdout(&o).contains("output_terms: h23 - e246 + f46\n"), "{}", stdout(&o));
}

#[test]
fn printed_classes_reparse() {
    let o = bin(&["--format", "json", "transform", "p3-to-cube", "P3(k=7): d=4; a=2,1,1,1,1,1,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let printed = v["output"].as_str().unwrap();
    let again = bin(&["--format", "json", "transform", "p3-to-cube", "P3(k=7): d=4; a=2,1,1,1,1,1,1"]);
    assert_eq!(o.stdout, again.stdout);
    let class = toric_gw::parse_class(printed).unwrap();
    assert_eq!(toric_gw::format_class(&class), printed);
}

#[test]
fn exit_codes() {
    let parse = bin(&["transform", "p3-to-cube", "P3(k=6): d=3; a=1,1"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("column"));
    let wrong_model = bin(&["transform", "cremona-cube", "P3(k=4): d=1; a=0,0,0,0"]);
    assert_eq!(wrong_model.status.code(), Some(2));
    let vdim = bin(&["reduce", "--genus", "0", "--points", "0", "P3(k=0): d=1"]);
    assert_eq!(vdim.status.code(), Some(1));
    let usage = bin(&["verify", "nonsense"]);
    assert_eq!(usage.status.code(), Some(2));
    let line = bin(&["reduce", "--genus", "0", "--points", "2", "P3(k=0): d=1"]);
    assert_eq!(line.status.code(), Some(0));
    assert!(stdout(&line).contains("value: 1\n"));
}

#[test]
fn custom_table() {
    let dir = std::env::temp_dir().join(format!("toric-gw-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "# only the line").unwrap();
    writeln!(f, "P3 0 d=1;n=2 1 elementary").unwrap();
    drop(f);
    let p = path.to_str().unwrap();
    // the cube-side cubic also crosses to the line through two points
    let cubic = bin(&["reduce", "--points", "3", "--table", p, "CUBE(k=0): d=1,1,1"]);
    assert_eq!(cubic.status.code(), Some(0));
    assert!(stdout(&cubic).contains("key: P3 0 d=1;n=2"));
    std::fs::write(&path, "P3 0 d=3;n=6 1 cited\n").unwrap();
    let miss = bin(&["reduce", "--points", "2", "--table", p, "P3(k=0): d=1"]);
    assert_eq!(miss.status.code(), Some(1));
    assert!(stdout(&miss).contains("outcome: unresolved"));
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "P3 zero d=1;n=2 1 x\n").unwrap();
    let o = bin(&["reduce", "--points", "2", "--table", bad.to_str().unwrap(), "P3(k=0): d=1"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let a = bin(&["--seed", "5", "--trials", "50", "verify", "all"]);
    let b = bin(&["--seed", "5", "--trials", "50", "verify", "all"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

use std::process::{Command, Output};

fn daha(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_daha")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Vec<&'a str> {
    text.lines().filter_map(|l| l.strip_prefix(key)?.strip_prefix('=')).collect()
}

#[test]
fn minuscule_polynomial() {
    let o = daha(&["compute-p", "--type", "A1", "--weight", "-1", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "p"), vec!["[([-1] ; 1), ([1] ; 1)]"]);
    assert_eq!(field(&text, "mode"), vec!["generic"]);
}

#[test]
fn second_a1_polynomial_has_constant_term() {
    let o = daha(&["compute-p", "--type", "A1", "--weight", "-2", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "m[-2]"), vec!["1"]);
    assert_eq!(field(&text, "m[0]").len(), 1);
}

#[test]
fn duality_prints_three_equal_values() {
    let o = daha(&["duality", "--type", "A1", "--b", "-1", "--c", "-2", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let (l, p, r) = (field(&text, "lhs"), field(&text, "pairing"), field(&text, "rhs"));
    assert_eq!(l.len(), 1);
    assert_eq!(l, p);
    assert_eq!(p, r);
    assert_eq!(field(&text, "status"), vec!["pass"]);
}

#[test]
fn a2_relations_pass() {
    let o = daha(&["relations", "--type", "A2", "--height", "2", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let status = field(&text, "status");
    assert_eq!(status.len(), 8);
    assert!(status.iter().all(|s| *s == "pass"));
}

#[test]
fn corrupted_generator_is_an_identity_failure() {
    for c in ["drop-delta-t0", "flip-t:1", "pi-without-delta:1"] {
        let o = daha(&["relations", "--type", "A2", "--height", "1", "--corrupt", c]);
        assert_eq!(o.status.code(), Some(2), "{c}");
    }
}

#[test]
fn specialized_evaluation_on_a_wall() {
    let o = daha(&["evaluate", "--type", "B2", "--weight", "-1,0", "--k", "0,1", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(field(&text, "value"), field(&text, "closed_form"));
}

#[test]
fn shift_and_chi() {
    let o = daha(&["shift", "--type", "B2", "--weight=-1,-1", "--v", "short", "--restrict"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = daha(&["chi", "--type", "A2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors() {
    for args in [
        vec!["compute-p", "--type", "A1", "--weight", "1"],
        vec!["compute-p", "--type", "X9", "--weight", "-1"],
        vec!["compute-p", "--type", "A2", "--weight", "-1"],
        vec!["compute-p", "--type", "A1", "--weight", "-1", "--mode", "specialized"],
        vec!["compute-p", "--type", "A1", "--weight", "-1", "--k", "-1"],
        vec!["shift", "--type", "A1", "--weight", "-1", "--v", "short"],
        vec!["relations", "--type", "A1", "--corrupt", "nonsense"],
        vec!["frobnicate"],
        vec![],
    ] {
        let o = daha(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["compute-p", "--type", "B2", "--weight", "-1,-1", "--format", "structured"];
    let a = daha(&args);
    let b = daha(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn full_verify_a1() {
    let o = daha(&["full-verify", "--type", "A1", "--format", "structured"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(field(&text, "status").iter().all(|s| *s == "pass"));
    assert_eq!(field(&text, "record").len(), 9);
}

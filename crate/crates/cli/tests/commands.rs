use std::process::{Command, Output};

fn qmf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qmf(args);
    assert!(
        out.status.success(),
        "qmf {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout)
        .unwrap()
        .trim_end()
        .to_string()
}

#[test]
fn expand_examples() {
    assert_eq!(
        stdout(&["expand", "E4", "--order", "3"]),
        "1 + 240*q + 2160*q^2 + O(q^3)"
    );
    assert_eq!(
        stdout(&["expand", "j", "--order", "2"]),
        "q^-1 + 744 + O(q)"
    );
    assert_eq!(
        stdout(&["expand", "Delta/E4^2", "--order", "3"]),
        "q - 504*q^2 + 180252*q^3 + O(q^4)"
    );
    assert_eq!(
        stdout(&["expand", "E2", "--order", "3"]),
        "1 - 24*q - 72*q^2 + O(q^3)"
    );
    assert_eq!(
        stdout(&["expand", "E6", "--order", "2"]),
        "1 - 504*q + O(q^2)"
    );
    assert_eq!(
        stdout(&["expand", "Delta", "--order", "3"]),
        "q - 24*q^2 + 252*q^3 + O(q^4)"
    );
}

#[test]
fn integrate_examples() {
    assert_eq!(stdout(&["integrate", "1/q", "q"]), "t - 1");
    assert_eq!(stdout(&["integrate", "q", "1/q"]), "-t");
    assert_eq!(stdout(&["integrate", "1", "1"]), "t^2/2");
    assert_eq!(
        stdout(&["integrate", "E4", "--order", "3"]),
        "t + 240*q + 1080*q^2 + O(q^3)"
    );
    assert_eq!(stdout(&["integrate", "Ir(q^2; 2)"]), "q^2/8");
}

#[test]
fn decompose_example() {
    let text = stdout(&["decompose", "E2^2"]);
    assert!(text.contains("g     = 12 * E2"), "{text}");
    assert!(text.contains("m     = 0"), "{text}");
    assert!(text.contains("tilde = E4"), "{text}");
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["decompose", "E2^2", "--json"])).unwrap();
    assert_eq!(json["g"], "12 * E2");
    assert_eq!(json["tilde"], "E4");
    assert_eq!(json["m"], "0");
}

#[test]
fn dims_example() {
    let text = stdout(&["dims", "--k", "2..24", "--support", "inf,i,rho"]);
    assert_eq!(text.lines().count(), 1 + 12 + 1);
    assert!(text.ends_with("all rows match"));
    assert!(!text.contains("NO"));
}

#[test]
fn independence_example() {
    let text = stdout(&[
        "independence",
        "Delta/E4^2",
        "E4*Delta/E6^2",
        "E6*Delta/E4^3",
    ]);
    assert!(text.contains("rank 3 of 3"), "{text}");
    assert!(
        text.lines().last().unwrap().starts_with("independent"),
        "{text}"
    );
    let text = stdout(&["independence", "E2^2", "12*D(E2) + E4"]);
    assert!(text.contains("rank 1 of 2"), "{text}");
    assert!(
        text.lines().last().unwrap().starts_with("dependent"),
        "{text}"
    );
}

#[test]
fn shuffle_commands() {
    let text = stdout(&["lyndon", "--alphabet", "a,b", "--maxlen", "3"]);
    assert!(text.contains("length 3: 2 words"), "{text}");
    assert!(text.contains("aab abb"), "{text}");
    assert!(text.ends_with("total 5"));
    assert_eq!(
        stdout(&["radford", "[b|a]"]),
        "[b|a] = (a) ⧢ (b) - (ab)\nround trip: exact"
    );
    assert_eq!(
        stdout(&["radford", "[a|a]"]),
        "[a|a] = 1/2*(a)^2\nround trip: exact"
    );
    assert_eq!(
        stdout(&["radford", "[a|b]"]),
        "[a|b] = (ab)\nround trip: exact"
    );
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["expand", "E4 + Foo"],
        vec!["expand", "(E4"],
        vec!["decompose", "E4 + E6"],
        vec!["decompose", "q"],
        vec!["expand", "E4", "--order", "0"],
        vec!["frobnicate"],
        vec!["dims", "--support", "rho"],
    ] {
        let out = qmf(&args);
        assert_eq!(out.status.code(), Some(2), "qmf {args:?}");
    }
    let out = qmf(&["expand", "1 +\n  Foo"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2, column 3"), "{err}");
    let out = qmf(&["decompose", "E4 + E6"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not weight-homogeneous"), "{err}");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["expand", "E4*E6/Delta", "--json"],
        vec!["decompose", "E2^3 + E2*E4", "--json"],
        vec!["independence", "1", "Delta/E4^2", "--json"],
        vec!["dims", "--k", "12", "--support", "inf,j=2"],
        vec!["selftest", "--only", "1,5,10"],
    ] {
        let a = qmf(&args);
        let b = qmf(&args);
        assert!(a.status.success(), "qmf {args:?}");
        assert_eq!(a.stdout, b.stdout, "qmf {args:?}");
    }
}

#[test]
fn selftest_subset() {
    let text = stdout(&["selftest", "--only", "1,5"]);
    assert!(text.starts_with("PASS [ 1]"), "{text}");
    assert!(
        text.ends_with("2 of 2 criteria passed (seed 20240611)"),
        "{text}"
    );
    assert_eq!(qmf(&["selftest", "--only", "99"]).status.code(), Some(2));
}

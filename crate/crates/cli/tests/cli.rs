use std::process::{Command, Output};

fn ufact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ufact"))
        .args(args)
        .env_remove("UF_NODE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn length_profile_of_a_block_element() {
    let o = ufact(&["lengths", "--monoid", "bg:c3", "--element", "[1],[1],[1],[2],[2],[2]", "--max-len", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), r#"{"schema":"v1","lengths":{"2":1,"3":1}}"#);
}

#[test]
fn davenport_of_klein_four() {
    let o = ufact(&["davenport", "--group", "c2xc2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), r#"{"schema":"v1","group":"c2xc2","davenport":3}"#);
    let o = ufact(&["--output", "text", "davenport", "--group", "c2xc2"]);
    assert_eq!(stdout(&o), "3");
}

#[test]
fn prime_power_ramp_is_never_an_atom() {
    let o = ufact(&["ultra", "is-atom", "--family", "prime_power_ramp:2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), r#"{"schema":"v1","mode":"frechet","verdict":"forall","value":false}"#);
}

#[test]
fn periodic_family_depends_on_the_ultrafilter() {
    let o = ufact(&["ultra", "is-unit", "--monoid", "int", "--pre", "2", "--period", "-1;2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), r#"{"schema":"v1","mode":"frechet","verdict":"depends","candidates":[false,true]}"#);
    let o = ufact(&["ultra", "is-unit", "--monoid", "int", "--pre", "2", "--period", "-1;2", "--mode", "principal:3:1"]);
    assert_eq!(stdout(&o), r#"{"schema":"v1","mode":"principal","verdict":"point","value":true}"#);
}

#[test]
fn sentence_evaluation() {
    let o = ufact(&["fol", "eval", "--sentence", "forall x. x * x = 1", "--group", "c2xc2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with(r#""value":true}"#));
}

#[test]
fn usage_errors_exit_3() {
    for args in [
        vec!["frobnicate"],
        vec!["davenport", "--group", "zz"],
        vec!["lengths", "--monoid", "bg:c3", "--element", "[1],[1"],
        vec!["lengths", "--monoid", "nope", "--element", "1"],
        vec!["fol", "eval", "--sentence", "forall x. x +", "--group", "c2"],
        vec!["fol", "eval", "--sentence", "x = 1", "--group", "c2"],
        vec!["ultra", "is-unit", "--family", "prime_power_ramp:4"],
        vec!["--budget", "0", "davenport", "--group", "c2"],
    ] {
        let o = ufact(&args);
        assert_eq!(code(&o), 3, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty());
    }
}

#[test]
fn help_exits_0() {
    assert_eq!(code(&ufact(&["--help"])), 0);
    assert_eq!(code(&ufact(&["ultra", "--help"])), 0);
}

#[test]
fn domain_errors_exit_1() {
    let o = ufact(&["lengths", "--monoid", "bg:c3", "--element", "[1],[1]"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero"));
}

#[test]
fn exhausted_budget_exits_2() {
    let o = ufact(&["--budget", "5", "realize", "--group", "c3", "--lengths", "2,3"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains(r#""outcome":"budget_exceeded""#));
    let o = Command::new(env!("CARGO_BIN_EXE_ufact"))
        .args(["realize", "--group", "c3", "--lengths", "2,3"])
        .env("UF_NODE_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["--seed", "7", "los", "--groups", "c2,c3,c2xc2", "--sentences", "10"];
    let a = ufact(&args);
    let b = ufact(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let t1 = ufact(&["--threads", "1", "exceptional", "--lengths", "2,3", "--order-bound", "6"]);
    let t4 = ufact(&["--threads", "4", "exceptional", "--lengths", "2,3", "--order-bound", "6"]);
    assert_eq!(t1.stdout, t4.stdout);
}

#[test]
fn gcd_cover_reports_the_uncovered_letter() {
    let o = ufact(&["proto", "gcd", "--group", "c2"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains(r#""holds":false"#));
    assert_eq!(code(&ufact(&["proto", "gcd", "--group", "c3"])), 0);
}

#[test]
fn single_selftest_criterion() {
    let o = ufact(&["selftest", "--criterion", "4"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains(r#""pass":true"#));
    assert_eq!(code(&ufact(&["selftest", "--criterion", "12"])), 3);
}

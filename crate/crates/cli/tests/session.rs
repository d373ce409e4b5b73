//! Session-level behavior: the spec'd command examples, environment
//! semantics, rendering identities and the JSON envelope.

use tuniv_cli::eval::{CliError, Session};
use tuniv_core::system::SystemConfig;

fn session() -> Session {
    Session::new(SystemConfig::default())
}

fn run(s: &mut Session, line: &str) -> String {
    s.run_line(line).unwrap_or_else(|e| panic!("{line}: {e}")).text
}

#[test]
fn documented_examples() {
    let mut s = session();
    assert_eq!(run(&mut s, "rankv 3"), "4");
    assert_eq!(run(&mut s, "dim 2"), "3");
    assert_eq!(run(&mut s, "eq inf({}) inf({{}})"), "true");
    assert_eq!(run(&mut s, "regular inf({})"), "fails");
    assert_eq!(run(&mut s, "classify inf({})"), "TNWF");
    assert_eq!(run(&mut s, "rankt {inf({}), 1}"), "w+1");
    assert_eq!(run(&mut s, "bisim inf({}) inf(2)"), "true");
    assert_eq!(run(&mut s, "eq inf({}) inf(2)"), "false");
}

#[test]
fn environment_binds_and_shadows() {
    let mut s = session();
    run(&mut s, "let x = {0, 1}");
    assert_eq!(run(&mut s, "x"), "{{},{{}}}");
    run(&mut s, "let x = 3");
    assert_eq!(run(&mut s, "rankv x"), "4");
    let err = s.run_line("rankv y").unwrap_err();
    assert!(matches!(err, CliError::Eval(_)), "{err}");
}

#[test]
fn nullity_and_splice_forms() {
    let mut s = session();
    assert_eq!(run(&mut s, "null"), "*{}");
    assert_eq!(run(&mut s, "{null}"), "{}");
    assert_eq!(run(&mut s, "{1, null}"), "{{{}}}");
    assert_eq!(run(&mut s, "*2"), "{},{{}}");
    assert_eq!(run(&mut s, "{*2, 2}"), "{{},{{}},{{},{{}}}}"); // splice plus plain
}

#[test]
fn splice_is_not_a_set_argument() {
    let mut s = session();
    let err = s.run_line("rankv *2").unwrap_err();
    assert!(err.to_string().contains("not a set"), "{err}");
    let err = s.run_line("*null").unwrap_err();
    assert!(err.to_string().contains("nullity"), "{err}");
}

#[test]
fn parse_then_render_is_identity_on_canonical_text() {
    let mut s = session();
    let texts = [
        "{}",
        "{{}}",
        "{{},{{}}}",
        "{{},{{}},{{},{{}}}}",
        "inf({})",
        "inf({{},{{}}})",
        "semi({{}};{})",
        "semi({{},{{}}};{{}})",
        "quasi([{{}},{{},{{}}}];{};0)",
        "quasi([{{}},{{},{{}}}];{};1)",
        "quasi([{},{{}},{{},{{}}}];{{}};2)",
        "{inf({}),{{}}}",
    ];
    for text in texts {
        assert_eq!(run(&mut s, text), text, "not fixed: {text}");
    }
}

#[test]
fn assertion_command() {
    let mut s = session();
    assert_eq!(run(&mut s, "assert rankv 3 == 4"), "ok");
    let err = s.run_line("assert rankv 3 == 5").unwrap_err();
    assert_eq!(err.exit_code(), 1);
    match err {
        CliError::Assertion { got, want } => {
            assert_eq!(got, "4");
            assert_eq!(want, "5");
        }
        other => panic!("wrong error {other}"),
    }
}

#[test]
fn numeral_bound_is_configurable() {
    let mut s = Session::new(SystemConfig { max_numeral: 3, ..SystemConfig::default() });
    assert_eq!(run(&mut s, "rankv 3"), "4");
    let err = s.run_line("rankv 4").unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn json_envelope_shape() {
    let mut s = session();
    let out = s.run_line("let x = {0, inf({})}").unwrap();
    let env = s.envelope("let x = {0, inf({})}", &out);
    assert_eq!(env["result"], "{{},inf({})}");
    assert_eq!(env["classification"], "NWF");
    assert_eq!(env["ranks"]["rank_t"], "w+1");
    assert_eq!(env["ranks"]["rank_v"], serde_json::Value::Null);
    assert_eq!(env["ranks"]["dimension"], "aleph0");

    let out = s.run_line("rankv 3").unwrap();
    let env = s.envelope("rankv 3", &out);
    assert_eq!(env["result"], "4");
    assert_eq!(env["ranks"], serde_json::Value::Null);
    assert_eq!(env["classification"], serde_json::Value::Null);
}

#[test]
fn load_runs_a_file_in_session() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("defs.tu");
    std::fs::write(&path, "# definitions\nlet a = {0}\nassert rankv a == 3\n").unwrap();
    let mut s = session();
    let out = run(&mut s, &format!("load {}", path.display()));
    assert!(out.contains("{{}}"));
    assert_eq!(run(&mut s, "a"), "{{}}");
}

#[test]
fn errors_carry_positions() {
    let mut s = session();
    let err = s.run_line("semi({1} 0)").unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("column"), "{msg}");
    assert!(msg.contains(";"), "{msg}");
}

#[test]
fn quasi_phase_defaults_to_zero() {
    let mut s = session();
    let a = run(&mut s, "quasi([1,2];{})");
    let b = run(&mut s, "quasi([1,2];{};0)");
    assert_eq!(a, b);
}

#[test]
fn unfold_and_hom_queries() {
    let mut s = session();
    assert_eq!(run(&mut s, "unfold inf({}) 3"), "{{{{}}}}");
    assert_eq!(run(&mut s, "hom semi({{}};{}) 3 4"), "true");
    assert_eq!(run(&mut s, "hom quasi([1,2];{}) 2 3"), "false");
    assert_eq!(run(&mut s, "hom quasi([1,2];{}) 2 4"), "true");
    let err = s.run_line("hom {0,1} 2 4").unwrap_err();
    assert!(err.to_string().contains("generated set"), "{err}");
}

#[test]
fn set_algebra_commands() {
    let mut s = session();
    assert_eq!(run(&mut s, "union {0} {1}"), "{{},{{}}}");
    assert_eq!(run(&mut s, "inter {0,1} {1,2}"), "{{{}}}");
    assert_eq!(run(&mut s, "diff {0,1} {1}"), "{{}}");
    assert_eq!(run(&mut s, "prod {0} {}"), "{}");
    assert_eq!(run(&mut s, "bigunion 2 3"), "{{}}");
    assert_eq!(run(&mut s, "tc {{{}}}"), "{{},{{}}}");
    assert_eq!(run(&mut s, "transitive 4"), "true");
    assert_eq!(run(&mut s, "omegainv inf({})"), "true");
    assert_eq!(run(&mut s, "base {{2}}"), "{{},{{}}}");
}

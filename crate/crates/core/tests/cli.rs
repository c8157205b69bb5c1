use std::fs;
use std::process::{Command, Output};

fn fhier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fhier")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let o = fhier(&["forest", "cmp", "--rel", "h", "0(1)", "1(0(1))"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "true\n"));
    let o = fhier(&["ord", "add", "w^{1}*1", "1"]);
    assert_eq!(stdout(&o), "w^{1}*1 + 1\n");
}

#[test]
fn ordinal_commands() {
    assert_eq!(stdout(&fhier(&["ord", "cmp", "w^{1}*1 + 1", "w^{1}*1"])), ">\n");
    assert_eq!(stdout(&fhier(&["ord", "mul", "2", "w^{1}*1"])), "w^{1}*1\n");
    assert_eq!(stdout(&fhier(&["ord", "pow", "2", "w^{1}*1"])), "w^{1}*1\n");
    assert_eq!(fhier(&["ord", "add", "w^{", "1"]).status.code(), Some(2));
}

#[test]
fn forest_commands() {
    assert_eq!(stdout(&fhier(&["forest", "canon", "0,0(0),1"])), "0,1\n");
    assert_eq!(stdout(&fhier(&["forest", "op", "plus", "0", "1"])), "0(1)\n");
    assert_eq!(stdout(&fhier(&["forest", "op", "oplus", "0", "1"])), "0,1\n");
    assert_eq!(stdout(&fhier(&["forest", "op", "p1", "0,1"])), "1(0,1)\n");
    assert_eq!(stdout(&fhier(&["forest", "op", "s", "0(1)"])), "[0(1)]\n");
    assert_eq!(stdout(&fhier(&["forest", "enum", "--k", "2", "--max", "2"])).lines().count(), 5);
    assert_eq!(stdout(&fhier(&["forest", "cmp", "--rel", "0", "0(1)", "1(0)"])), "true\n");
    assert_eq!(fhier(&["forest", "op", "q1", "0"]).status.code(), Some(2));
}

#[test]
fn word_commands() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("set.txt");
    fs::write(&set, "alphabet ab\naa\nab\naab\n").unwrap();
    let s = set.to_str().unwrap();
    assert_eq!(stdout(&fhier(&["word", "minimal", s])), "aa\nab\n");
    let aut = dir.path().join("up.dfa");
    let o = fhier(&["word", "closure", s, "-o", aut.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(fs::read_to_string(&aut).unwrap().starts_with("alphabet ab\n"));
    assert_eq!(stdout(&fhier(&["word", "leq", "--rel", "infix", "ab", "aab"])), "true\n");
    assert_eq!(stdout(&fhier(&["word", "leq", "--rel", "infix", "ba", "aab"])), "false\n");
}

#[test]
fn acceptor_and_degree_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.aut");
    let spec = "k 2\nstates q0 q1\ninitial q0\ntrans q0 0 q0\ntrans q0 1 q1\ntrans q1 0 q0\ntrans q1 1 q1\ncolor {q1} 1\ncolor {q0 q1} 1\ndefault 0\n";
    fs::write(&a, spec).unwrap();
    let a = a.to_str().unwrap();
    assert_eq!(stdout(&fhier(&["aut", "cycles", a])), "{q0} 0\n{q1} 1\n{q0 q1} 1\n");
    assert_eq!(stdout(&fhier(&["aut", "eval", a, "--word", "1,0"])), "0\n");
    assert_eq!(stdout(&fhier(&["wagner", "degree", a])), "[1(0)]\n");
    assert_eq!(stdout(&fhier(&["wagner", "degree", "--search", "--cap", "3", a])), "[1(0)]\n");
    assert_eq!(stdout(&fhier(&["wagner", "ord", a])), "w^{1}*1\n");
    assert_eq!(stdout(&fhier(&["wagner", "level", a, "[0(1)]"])), "false\n");
    assert_eq!(fhier(&["--exit-code", "wagner", "level", a, "[0(1)]"]).status.code(), Some(1));

    let built = dir.path().join("b.aut");
    let o = fhier(&["wagner", "build", "[1(0)]", "-o", built.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let b = built.to_str().unwrap();
    let strat = dir.path().join("s.txt");
    let o = fhier(&["wagner", "leq", a, b, "--via", "both", "--strategy", strat.to_str().unwrap()]);
    assert_eq!(stdout(&o), "true\n");
    assert!(fs::read_to_string(&strat).unwrap().starts_with("winner II\n"));
    assert_eq!(stdout(&fhier(&["wagner", "leq", a, a])), "true\n");
    assert_eq!(stdout(&fhier(&["--json", "wagner", "ord", a])), "{\"ordinal\":\"w^{1}*1\",\"self_dual\":false}\n");
}

#[test]
fn seeded_output_is_deterministic() {
    let one = stdout(&fhier(&["--seed", "9", "aut", "random", "--states", "4"]));
    let two = stdout(&fhier(&["--seed", "9", "aut", "random", "--states", "4"]));
    assert_eq!(one, two);
    assert!(one.parse::<fhier::muller::Acceptor>().is_ok());
}

#[test]
fn errors_and_usage() {
    let o = fhier(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("Usage"));
    assert_eq!(fhier(&["aut", "cycles", "/nonexistent/file"]).status.code(), Some(2));
    let o = fhier(&["--json", "forest", "canon", "(("]);
    assert!(stdout(&o).starts_with("{\"code\":2,\"error\":"));
}

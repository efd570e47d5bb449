use std::process::{Command, Output};

use quadrics::monoid::{classify, StepKind};
use quadrics::poset::PosetExport;
use quadrics::{build_poset, Composition, WeakOrderPoset};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadrics"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn poset_json_round_trips() {
    for mu in ["3,1", "2,2,1", "5"] {
        let text = stdout(&["poset", "--mu", mu, "--format", "json"]);
        let reread = WeakOrderPoset::from_json(&text).unwrap();
        let built = build_poset(&mu.parse::<Composition>().unwrap()).unwrap();
        assert_eq!(reread.nodes(), built.nodes());
        assert_eq!(reread.edges(), built.edges());
        let export: PosetExport = serde_json::from_str(&text).unwrap();
        assert_eq!(export.nodes.len(), built.len());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["poset", "--mu", "3,2"][..],
        &["poset", "--mu", "4", "--format", "json"],
        &["enumerate", "--mu", "2,1,2"],
        &["chains", "--mu", "3,1", "--list"],
        &["restrict", "--mu", "3,2"],
    ] {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
}

#[test]
fn dot_export_has_one_node_per_element() {
    let dot = stdout(&["poset", "--mu", "3,1"]);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("rankdir=BT"));
    let poset = build_poset(&"3,1".parse().unwrap()).unwrap();
    let inserts = poset
        .edges()
        .iter()
        .filter(|e| classify(e.label, &poset.node(e.source)) == Ok(StepKind::InsertTwoCycle))
        .count();
    assert!(inserts > 0);
    assert_eq!(dot.matches("mult=double").count(), inserts);
    for id in 0..poset.len() {
        assert!(
            dot.contains(&format!("\"{}\"", poset.node(id))),
            "{}",
            poset.node(id)
        );
    }
}

#[test]
fn small_reports() {
    assert_eq!(stdout(&["chains", "--mu", "3,1"]), "11\n");
    assert_eq!(stdout(&["dset", "--n", "3"]), "[231]\n[312]\n");
    assert_eq!(
        stdout(&["dset", "--mu", "4,2"]),
        "[5463|21]\n[5634|21]\n[6354|21]\n"
    );
    assert_eq!(stdout(&["wset", "--pi", "432|1"]), "[3421]\n[4231]\n");
    assert_eq!(stdout(&["schubert", "--w", "321"]), "x1^2*x2\n");
    assert_eq!(stdout(&["restrict", "--mu", "3"]), "2*x1^2 + 2*x1*x2\n");
    assert!(stdout(&["verify", "--n", "5"]).ends_with("ALL PASS\n"));
    assert!(stdout(&["conjecture", "--n", "6"]).starts_with("PASS: "));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["enumerate", "--mu", "3,x"]).status.code(), Some(2));
    assert_eq!(
        run(&["wset", "--pi", "12|3", "--mu", "1,2"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n", "11"]).status.code(), Some(3));
    assert_eq!(run(&["conjecture", "--n", "9"]).status.code(), Some(3));
    assert_eq!(
        run(&["chains", "--mu", "5", "--list", "--limit", "3"])
            .status
            .code(),
        Some(3)
    );
}

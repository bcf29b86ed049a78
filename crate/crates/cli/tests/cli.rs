use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use idlab_cli::{run, run_with, Hooks};
use idlab_core::family::LanguageFamily;
use idlab_core::schemas::{novelty_in, semantic_transformativeness, transformativeness, SemanticVerdict, Situation};
use idlab_core::scientists;
use idlab_core::{make_fate, Experience, LanguageRepr, TextStrategy};
use serde_json::Value;

fn idlab(args: &[&str]) -> (i32, String, String) {
    idlab_hooked(args, &Hooks::default())
}

fn idlab_hooked(args: &[&str], hooks: &Hooks) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("idlab").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err, hooks);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn records(jsonl: &str) -> Vec<Value> {
    jsonl.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn config(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "configs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn trace_is_byte_deterministic() {
    for strategy in ["canonical", "padded(0.25)", "shuffled-window(4)", "repetition-heavy(0.25)"] {
        let args = ["trace", "--seed", "11", "--horizon", "40", "--language", "evens", "--strategy", strategy];
        let a = idlab(&args);
        let b = idlab(&args);
        assert_eq!(a.0, 0);
        assert_eq!(a, b, "{strategy}");
    }
}

#[test]
fn memorizer_trace_on_cycled_pair() {
    let (code, out, _) = idlab(&["trace", "--horizon", "5"]);
    assert_eq!(code, 0);
    let recs = records(&out);
    assert_eq!(recs.len(), 6);
    let changed: Vec<bool> = recs.iter().map(|r| r["hyp_changed"].as_bool().unwrap()).collect();
    assert_eq!(changed, [true, true, false, false, false, false]);
    let keys: Vec<&str> = recs[0].as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(
        keys,
        [
            "step",
            "datum",
            "hyp_index",
            "hyp_set",
            "hyp_changed",
            "novel",
            "transformative",
            "semantically_transformative"
        ]
    );
    assert_eq!(recs[5]["hyp_set"], "{2,4}");
}

#[test]
fn visionary_trace_never_changes() {
    let (_, out, _) =
        idlab(&["trace", "--scientist", "dumb_visionary(evens)", "--language", "evens", "--horizon", "30"]);
    for r in records(&out) {
        assert_eq!(r["hyp_changed"], false);
        assert_eq!(r["hyp_index"], 0);
        assert_eq!(r["transformative"], 0);
    }
}

#[test]
fn pauses_have_null_flags() {
    let (_, out, _) = idlab(&["trace", "--language", "{}", "--horizon", "4", "--scientist", "ever_changing"]);
    for r in records(&out) {
        assert_eq!(r["datum"], "#");
        assert!(r["novel"].is_null() && r["transformative"].is_null() && r["semantically_transformative"].is_null());
        assert_eq!(r["hyp_changed"], true);
    }
}

/// Flags recomputed from the library schemas on the raw prefix.
#[test]
fn trace_flags_match_schemas() {
    let family = Arc::new(LanguageFamily::evens_odds());
    let cases = [
        ("last_novel", scientists::last_novel(&family)),
        ("confidence_annotating(memorizer)", {
            let s: Arc<dyn idlab_core::Scientist> =
                scientists::confidence_annotating(scientists::memorizer(&family), 3).unwrap();
            s
        }),
    ];
    for (name, m) in cases {
        let (_, out, _) =
            idlab(&["trace", "--scientist", name, "--language", "{1,2,3}", "--strategy", "padded(0.3)", "--seed", "5"]);
        let fate = make_fate(
            &LanguageRepr::parse("{1,2,3}", family.universe()).unwrap(),
            TextStrategy::Padded { pause_density: 0.3 },
            5,
        )
        .unwrap();
        let recs = records(&out);
        assert_eq!(recs.len(), 65);
        for (n, r) in recs.iter().enumerate() {
            let prefix = fate.prefix(n as u64);
            let datum = fate.at(n as u64);
            assert_eq!(r["hyp_index"].to_string(), m.conjecture(&prefix).to_string());
            let Some(a) = datum.artefact() else {
                assert!(r["novel"].is_null());
                continue;
            };
            let s = Situation::new(Arc::clone(&m), Experience::new(prefix.to_vec()));
            assert_eq!(r["novel"], u8::from(novelty_in(a, &prefix)));
            assert_eq!(r["transformative"], u8::from(transformativeness(a, &s)));
            let sem = match semantic_transformativeness(a, &s) {
                SemanticVerdict::Holds => Value::from(1),
                SemanticVerdict::Fails => Value::from(0),
                SemanticVerdict::Indeterminate => Value::from("indeterminate"),
            };
            assert_eq!(r["semantically_transformative"], sem);
        }
    }
}

#[test]
fn trace_csv_and_pretty() {
    let (code, out, _) = idlab(&["trace", "--horizon", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "step,datum,hyp_index,hyp_set,hyp_changed,novel,transformative,semantically_transformative");
    assert_eq!(lines[1], "0,2,2,{},true,1,1,1");
    assert_eq!(lines[3], "2,2,22,\"{2,4}\",false,0,0,0");
    let (_, pretty, _) = idlab(&["trace", "--horizon", "3", "--format", "pretty"]);
    assert!(pretty.starts_with("scientist: memorizer"));
}

#[test]
fn identify_memorizer_over_finite_class() {
    let (code, out, err) = idlab(&["--config", &config("memorizer_finite.toml"), "identify"]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 144);
    assert!(rows.iter().all(|r| r.contains(",identified,")));
    assert!(err.contains("144/144"), "{err}");
    // one seed set
    let (_, out, _) = idlab(&["--config", &config("memorizer_finite.toml"), "--format", "jsonl", "identify"]);
    let recs = records(&out);
    assert_eq!(recs.len(), 145);
    assert_eq!(recs[144]["summary"], "class identified at horizon: 144/144 cells identified");
}

#[test]
fn identify_visionary_fails_on_odds() {
    let (code, out, _) = idlab(&["--config", &config("visionary_evens_odds.toml"), "identify"]);
    assert_eq!(code, 0);
    let evens = out.lines().filter(|l| l.starts_with("evens ") && l.contains(" identified ")).count();
    let odds = out.lines().filter(|l| l.starts_with("odds ") && l.contains("wrong-language")).count();
    assert_eq!((evens, odds), (3, 3));
    assert!(out.contains("3/6 cells failed"));
}

#[test]
fn identify_empty_class_is_vacuous() {
    let (code, out, err) = idlab(&["identify"]);
    assert_eq!(code, 0);
    assert_eq!(out, "language,strategy,seed,horizon,verdict,last_change_step\n");
    assert!(err.contains("vacuously identifiable"));
}

#[test]
fn theorems_pass() {
    let (code, out, _) = idlab(&["theorems", "--trials", "500"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("[PASS]")).count(), 4);
    assert!(out.contains("4/4 passed"));
    let (code, out, _) = idlab(&["theorems", "--trials", "1", "--format", "jsonl"]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(report["items"].as_array().unwrap().len(), 4);
    assert_eq!(report["trials"], 1);
}

#[test]
fn broken_set_driven_claim_fails_suite() {
    let family = Arc::new(LanguageFamily::evens_odds());
    let hooks = Hooks { extra_set_driven: vec![scientists::ever_changing(&family)] };
    let (code, out, _) = idlab_hooked(&["theorems", "--trials", "200"], &hooks);
    assert_eq!(code, 1);
    assert!(out.contains("[FAIL] set-driven-implies-novelty-necessary"), "{out}");
    assert!(out.contains("3/4 passed"));
}

#[test]
fn usage_and_config_errors_exit_2() {
    assert_eq!(idlab(&["frobnicate"]).0, 2);
    assert_eq!(idlab(&["trace", "--format", "xml"]).0, 2);
    assert_eq!(idlab(&["trace", "--scientist", "oracle"]).0, 2);
    assert_eq!(idlab(&["trace", "--strategy", "padded(1.5)"]).0, 2);
    assert_eq!(idlab(&["trace", "--horizon", "0"]).0, 2);
    assert_eq!(idlab(&["theorems", "--trials", "0"]).0, 2);
    assert_eq!(idlab(&["--config", "/nonexistent/x.toml", "list"]).0, 2);
    let dir = std::env::temp_dir().join(format!("idlab-bad-{}.toml", std::process::id()));
    std::fs::write(&dir, "horizon = \"long\"").unwrap();
    let (code, _, err) = idlab(&["--config", dir.to_str().unwrap(), "list"]);
    std::fs::remove_file(&dir).ok();
    assert_eq!(code, 2);
    assert!(err.contains("config error"));
}

#[test]
fn help_exits_0_and_list_names_everything() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["idlab", "--help"], &mut out, &mut err), 0);
    let (code, out, _) = idlab(&["list"]);
    assert_eq!(code, 0);
    for name in ["naturals", "evens", "primes", "memorizer", "last_novel", "set_driven", "shuffled-window(w)"] {
        assert!(out.contains(name), "{name}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_idlab");
    let ok = Command::new(bin).args(["trace", "--horizon", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap().lines().count(), 3);
    let bad = Command::new(bin).args(["trace", "--scientist", "nobody"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

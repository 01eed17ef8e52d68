use codesign_cli::run;
use serde_json::Value;

const EV: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/ev.json");

fn doc(args: &[&str]) -> Value {
    let out = run(std::iter::once("codesign").chain(args.iter().copied()));
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", out.stdout, out.stderr))
}

#[test]
fn documents_keep_their_key_order() {
    let d = doc(&["decide", EV, "--config", "ev_worst"]);
    let keys: Vec<&str> = d.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "inputs", "rows", "chosen", "version"]);
    let d = doc(&["check-laws", "identity", "--seed", "5"]);
    let keys: Vec<&str> = d.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "inputs", "rows", "seed", "version"]);
    assert_eq!(d["seed"], 5);
}

#[test]
fn decimals_are_display_only() {
    let plain = doc(&["bayes", EV, "--config", "battery_posterior"]);
    let shown = doc(&["bayes", EV, "--config", "battery_posterior", "--render-decimal"]);
    let (p, s) = (&plain["rows"][0]["prior"], &shown["rows"][0]["prior"]);
    assert_eq!(p["num"], s["num"]);
    assert_eq!(p["den"], s["den"]);
    assert!(p.get("decimal").is_none());
    assert_eq!(s["decimal"], "0.250000");
}

#[test]
fn empty_data_echoes_the_prior() {
    let d = doc(&["bayes", EV, "--config", "ev_prior"]);
    for row in d["rows"].as_array().unwrap() {
        assert_eq!(row["prior"], row["posterior"]);
    }
}

#[test]
fn errors_are_structured() {
    let out = run(["codesign", "decide", EV, "--cell", "ev_dist", "--fun", "(v=1,l=2)", "--objective", "worst_case"]);
    assert_eq!(out.code, 1);
    let d: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(d["error"]["kind"], "objective_monad_mismatch");
    assert!(d.get("rows").is_none());
}

#[test]
fn help_is_not_an_error() {
    let out = run(["codesign", "--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("check-laws"));
}

#[test]
fn eval_lists_every_parameter() {
    let d = doc(&["eval", EV, "--cell", "ev_powerset"]);
    assert_eq!(d["rows"].as_array().unwrap().len(), 6);
    assert!(d["rows"][0]["value"]["set"].is_array());
}

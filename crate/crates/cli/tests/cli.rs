use std::process::{Command, Output};

fn modvis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modvis"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = modvis(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn visible_reports_witness() {
    assert_eq!(
        stdout(&["visible", "(8+i)/13"]),
        "invisible witness (a,b,d) = (1,1,2) point (1+i)/2\n"
    );
    assert_eq!(stdout(&["visible", "(23+i)/53"]), "visible\n");
}

#[test]
fn count_table_rows() {
    let xs = (1..=10)
        .map(|k| (1000 * k).to_string())
        .collect::<Vec<_>>()
        .join(",");
    let out = stdout(&["count", "--x", &xs, "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "x,H,visible,invisible,error,approx,delta_star");
    assert_eq!(lines.len(), 11);
    assert!(lines[1].starts_with("1000,1496,1436,60,"));
    assert!(lines[10].starts_with("10000,15064,14880,184,"));
}

#[test]
fn count_exact_trace() {
    let out = stdout(&["count", "--exact-trace", "3,1000", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["H"], 4);
    assert_eq!(v[1]["visible"], 1436);
}

#[test]
fn orchard_fib_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["orchard-fib", "--n", "1"])).unwrap();
    assert_eq!(v["trace_product"], -2);
    assert_eq!(v["w"]["trace"], 699);
    assert_eq!(v["sinh2_product"]["numer"], "1");
}

#[test]
fn orchard_block_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["orchard-block"])).unwrap();
    assert_eq!(v["blocked"], true);
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["orchard-block", "--eps", "0.88"])).unwrap();
    assert_eq!(v["blocked"], false);
    assert!(v["witness"]["point"].is_string());
}

#[test]
fn orchard_min_outputs() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["orchard-min", "--x", "50"])).unwrap();
    assert_eq!(v["bound_holds"], true);
    let csv = stdout(&["orchard-min", "--exact-trace", "5", "--pairs", "3"]);
    assert_eq!(
        csv.lines().next().unwrap(),
        "z_B,z_D,w_B,w_D,T,sinh2_eps_min"
    );
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn euclid_and_delta() {
    assert_eq!(stdout(&["euclid", "--radius", "2"]), "8\n");
    let out = stdout(&[
        "delta",
        "--x-min",
        "10",
        "--x-max",
        "100",
        "--samples",
        "4",
        "--grid",
        "geometric",
    ]);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().last().unwrap().starts_with("100,"));
}

#[test]
fn exit_codes() {
    assert_eq!(modvis(&["bogus"]).status.code(), Some(1));
    assert_eq!(modvis(&["visible", "(8+i)/12"]).status.code(), Some(1));
    assert_eq!(modvis(&["visible", "eight"]).status.code(), Some(1));
    assert_eq!(
        modvis(&["enumerate", "--exact-trace", "99999999999999"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(modvis(&["--help"]).status.code(), Some(0));
    let e = String::from_utf8(modvis(&["visible", "eight"]).stderr).unwrap();
    assert!(e.contains("cannot parse point"));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("modvis-test-{}.csv", std::process::id()));
    let p = path.to_str().unwrap();
    assert_eq!(
        stdout(&["enumerate", "--exact-trace", "3", "--output", p]),
        ""
    );
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(
        text,
        "B,D,A,trace\n0,1,1,2\n-1,1,2,3\n-1,2,1,3\n1,1,2,3\n1,2,1,3\n"
    );
}

#[test]
fn deterministic_output() {
    for args in [
        &["enumerate", "--exact-trace", "2000", "--classify"][..],
        &["count", "--x", "1000,5000", "--format", "csv"][..],
        &["orchard-min", "--exact-trace", "60", "--pairs", "50"][..],
    ] {
        assert_eq!(stdout(args), stdout(args));
    }
}

#[test]
fn enumerate_then_visible_round_trip() {
    let out = stdout(&[
        "enumerate",
        "--exact-trace",
        "300",
        "--classify",
        "--no-origin",
    ]);
    for line in out.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let point = format!("{}/{}", cols[0], cols[1]);
        let verdict = stdout(&["visible", &point]);
        assert_eq!(verdict == "visible\n", cols[4] == "true", "{point}");
    }
}

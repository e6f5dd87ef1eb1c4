use std::path::Path;
use std::process::{Command, Output};

use modarr::arrangement::period_data;
use modarr::athanasiadis::bma_spec;
use modarr::charqp::characteristic_quasipoly;
use modarr::oracle::count_complement;
use modarr::Limits;
use tempfile::TempDir;

fn modarr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modarr"))
        .args(args)
        .env_remove("MODARR_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const THREE_FOUR: &str = r#"{"m":1,"n":2,"columns":[[3],[4]],"b":[0,0]}"#;
const TWO_POINTS: &str = r#"{"m":1,"n":2,"columns":[[1],[1]],"b":[1,-1]}"#;

#[test]
fn charpoly_has_six_constituents() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.json", THREE_FOUR);
    let o = modarr(&["charpoly", &f]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        concat!(
            r#"{"rho0":12,"q0":0,"constituents":["#,
            r#"{"gcd":1,"coeffs":["-1","1"]},{"gcd":2,"coeffs":["-2","1"]},{"gcd":3,"coeffs":["-3","1"]},"#,
            r#"{"gcd":4,"coeffs":["-4","1"]},{"gcd":6,"coeffs":["-4","1"]},{"gcd":12,"coeffs":["-6","1"]}]}"#,
            "\n"
        )
    );
}

#[test]
fn count_single_and_range() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.json", TWO_POINTS);
    let o = modarr(&["count", &f, "--q", "5"]);
    assert_eq!(stdout(&o), "{\"q\":5,\"count\":3}\n");
    let o = modarr(&["count", &f, "--range", "1..4"]);
    assert_eq!(stdout(&o), "q,count\n1,0\n2,1\n3,1\n4,2\n");
    let o = modarr(&["count", &f, "--range", "2..3", "--format", "json"]);
    assert_eq!(stdout(&o), "[{\"q\":2,\"count\":1},{\"q\":3,\"count\":1}]\n");
}

#[test]
fn period_and_posets() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.json", THREE_FOUR);
    assert_eq!(
        stdout(&modarr(&["period", &f])),
        "{\"rho0\":12,\"q0\":0,\"q1\":0,\"qstar\":4}\n"
    );
    assert_eq!(
        stdout(&modarr(&["period", &f, "--format", "csv"])),
        "rho0,q0,q1,qstar\n12,0,0,4\n"
    );
    let o = modarr(&["poset", &f, "--q", "14"]);
    assert_eq!(
        stdout(&o),
        "{\"q\":14,\"n\":2,\"elements\":[[],[2],[1,2]],\"covers\":[[0,1],[1,2]],\"bottom\":[],\"top\":[1,2]}\n"
    );
    let o = modarr(&["poset-period", &f, "--window", "24"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["period"], 6);
    assert_eq!(v["qstar"], 4);
    assert_eq!(v["rho0"], 12);
    assert_eq!(v["verified_rho0_period"], true);
}

#[test]
fn snf_reports() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.json", TWO_POINTS);
    assert_eq!(
        stdout(&modarr(&["snf", &f, "--augmented"])),
        "{\"rows\":2,\"cols\":2,\"rank\":2,\"divisors\":[\"1\",\"2\"]}\n"
    );
    let f = write(&d, "b.json", THREE_FOUR);
    assert_eq!(
        stdout(&modarr(&["snf", &f, "--subset", "1", "--q", "6"])),
        "{\"rows\":1,\"cols\":1,\"rank\":1,\"divisors\":[\"3\"],\"modular\":{\"q\":6,\"divisors\":[3]}}\n"
    );
    assert_eq!(modarr(&["snf", &f, "--subset", "3"]).status.code(), Some(2));
}

#[test]
fn bma_table_row() {
    let o = modarr(&["bma", "--m", "4", "--a", "3", "--table"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "m,a,q0,bound,qbar\n4,3,30,28,21\n");
}

#[test]
fn bma_closed_form() {
    let o = modarr(&["bma", "--m", "1", "--a", "2", "--closed-form"]);
    assert_eq!(
        stdout(&o),
        "{\"m\":1,\"a\":2,\"odd_q\":[\"-3\",\"1\"],\"even_q\":[\"-3\",\"1\"]}\n"
    );
}

#[test]
fn invalid_input_exits_two_with_field_name() {
    let d = TempDir::new().unwrap();
    let cases = [
        (r#"{"m":1,"n":2,"columns":[[1],[0]],"b":[0,0]}"#, "columns[1]"),
        (r#"{"m":2,"n":1,"columns":[[1]],"b":[0]}"#, "columns[0]"),
        (r#"{"m":1,"n":1,"columns":[[1]],"b":[0,1]}"#, "b"),
        (r#"{"m":1,"n":1,"columns":[[1]]"#, "malformed"),
    ];
    for (i, (text, field)) in cases.iter().enumerate() {
        let f = write(&d, &format!("bad{i}.json"), text);
        let o = modarr(&["count", &f, "--q", "3"]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.contains(field), "{err}");
    }
    let f = write(&d, "ok.json", TWO_POINTS);
    assert_eq!(modarr(&["count", &f, "--q", "0"]).status.code(), Some(2));
    assert_eq!(modarr(&["count", &f, "--range", "5..2"]).status.code(), Some(2));
    assert_eq!(modarr(&["charpoly", &f, "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn resource_limits_exit_three() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.json", r#"{"m":3,"n":1,"columns":[[1,1,1]],"b":[0]}"#);
    let o = modarr(&["count", &f, "--q", "100", "--point-cap", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    let o = modarr(&["bma", "--m", "5", "--a", "3", "--qbar"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn spec_out_round_trip() {
    let d = TempDir::new().unwrap();
    let path = d.path().join("b.json");
    let p = path.to_str().unwrap();
    let o = modarr(&["bma", "--m", "2", "--a", "2", "--spec-out", p]);
    assert!(o.status.success());
    let spec = bma_spec(2, 2).unwrap();
    assert_eq!(std::fs::read_to_string(&path).unwrap(), spec.to_json() + "\n");

    let l = Limits::default();
    let pd = period_data(&spec, &l).unwrap();
    assert_eq!(
        stdout(&modarr(&["period", p])),
        serde_json::to_string(&pd).unwrap() + "\n"
    );
    let qp = characteristic_quasipoly(&spec, &l).unwrap();
    assert_eq!(
        stdout(&modarr(&["charpoly", p])),
        serde_json::to_string(&qp.to_report()).unwrap() + "\n"
    );
    let c = count_complement(&spec, 11, &l).unwrap();
    assert_eq!(
        stdout(&modarr(&["count", p, "--q", "11"])),
        format!("{{\"q\":11,\"count\":{c}}}\n")
    );
    let poset = modarr::poset::intersection_poset(&spec, 7, &l).unwrap();
    assert_eq!(
        stdout(&modarr(&["poset", p, "--q", "7"])),
        serde_json::to_string(&poset.to_report()).unwrap() + "\n"
    );
    assert!(modarr(&["poset-period", p]).status.success());
    assert!(modarr(&["snf", p]).status.success());
}

#[test]
fn output_is_stable_across_thread_counts() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "a.json", &bma_spec(2, 3).unwrap().to_json());
    for cmd in [
        vec!["charpoly", f.as_str()],
        vec!["count", f.as_str(), "--range", "1..30"],
        vec!["poset-period", f.as_str()],
    ] {
        let one = modarr(&[&cmd[..], &["--threads", "1"]].concat());
        let four = modarr(&[&cmd[..], &["--threads", "4"]].concat());
        let again = modarr(&[&cmd[..], &["--threads", "4"]].concat());
        assert!(one.status.success());
        assert_eq!(one.stdout, four.stdout);
        assert_eq!(four.stdout, again.stdout);
    }
}

#[test]
fn reads_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_modarr"))
        .args(["period", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(TWO_POINTS.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "{\"rho0\":1,\"q0\":2,\"q1\":0,\"qstar\":2}\n");
    assert!(Path::new(env!("CARGO_BIN_EXE_modarr")).exists());
}

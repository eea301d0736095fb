use std::io::Write;
use std::process::{Command, Output, Stdio};

fn chromram(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chromram"))
        .args(args)
        .env_remove("CHROMRAM_JOBS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(args: &[&str], stdin: &str) -> String {
    let out = chromram(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn k5() -> String {
    let mut s = String::from("3 5\n");
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                s.push_str(&format!("{a} {b} {c}\n"));
            }
        }
    }
    s
}

#[test]
fn chi_of_k5() {
    assert_eq!(stdout(&["chi"], &k5()), "chi 3\ncoloring 1 1 2 2 3\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["chi", "--format", "json"], &k5())).unwrap();
    assert_eq!(json["chi"], 3);
}

#[test]
fn igraph_of_k5_is_petersen() {
    let text = stdout(&["igraph"], &k5());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("2 10"));
    assert_eq!(lines.count(), 15);
}

#[test]
fn decompose_b3() {
    assert_eq!(stdout(&["decompose"], "3 5\n0 1 2\n0 1 3\n0 1 4\n"), "B base 0 1 edges 0 1 2\n");
}

#[test]
fn extremal_coloring_avoids_matchings() {
    let file = stdout(&["witness", "matching-extremal", "--r", "3", "--k", "2", "--t", "2"], "");
    assert_eq!(stdout(&["oracle", "mono", "--pattern", "matching", "--k", "2"], &file), "none\n");
    let out = chromram(&["find", "matching2", "--k", "2"], &file);
    assert_eq!(out.status.code(), Some(1), "K_6^3 is only 3-chromatic");
}

#[test]
fn avoiding_partition_feeds_back_into_the_oracle() {
    let file = stdout(&["oracle", "avoid", "--pattern", "star", "--k", "2", "--t", "3"], &k5());
    assert!(file.contains("colors 3"));
    assert_eq!(stdout(&["oracle", "mono", "--pattern", "star", "--k", "2"], &file), "none\n");
}

#[test]
fn star_finder_outputs_a_valid_witness() {
    let file = format!("{}colors 1\n{}", k5(), "1\n".repeat(10));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["find", "star", "--k", "2", "--format", "json"], &file)).unwrap();
    assert_eq!(json["kind"], "star");
    assert_eq!(json["edge_indices"].as_array().unwrap().len(), 2);
}

#[test]
fn lift_certificate_separates_colors() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&["lift", "--format", "json"], &k5())).unwrap();
    assert_eq!(json["t"], 3);
    assert_eq!(json["route"], "lift");
    let colors = json["coloring"].as_array().unwrap();
    for pair in json["certificate"].as_array().unwrap() {
        let (a, b) = (pair[0].as_u64().unwrap() as usize, pair[1].as_u64().unwrap() as usize);
        assert_ne!(colors[a], colors[b]);
    }
}

#[test]
fn skeleton_of_a_k_component() {
    let text = stdout(&["skeleton"], "3 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\ncolors 2\n1\n1\n1\n1\n");
    assert_eq!(text, "skeleton n 4 t 2\n0 1 M1 kpair 0\n2 3 M1 kpair 0\nbad 0 switches 0\n");
}

#[test]
fn campaigns_repeat_byte_for_byte() {
    let args =
        ["verify", "bounds", "--bound", "star", "--hosts", "20", "--partitions", "2", "--n-max", "7", "--seed", "9"];
    let one = stdout(&args, "");
    assert_eq!(stdout(&args, ""), one);
    let mut two_jobs = args.to_vec();
    two_jobs.extend(["--jobs", "2"]);
    assert_eq!(stdout(&two_jobs, ""), one);
    assert!(one.contains("failures 0"));
}

#[test]
fn enumeration_counts() {
    assert_eq!(stdout(&["enum", "--r", "3", "--n", "5", "--count"], ""), "1023\n");
    assert_eq!(stdout(&["enum", "--r", "3", "--n", "4", "--dedup", "--count"], ""), "4\n");
}

#[test]
fn exit_codes() {
    assert_eq!(chromram(&["chi"], "3 4\n0 1\n").status.code(), Some(1));
    assert_eq!(chromram(&["enum", "--r", "3", "--n", "7"], "").status.code(), Some(3));
    assert_eq!(chromram(&["chi", "--cap", "3"], &k5()).status.code(), Some(3));
    assert_eq!(chromram(&["witness", "two-factor", "--k", "4"], "").status.code(), Some(1));
}

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_homlab"));
    c.env_remove("HOMLAB_BUDGET_MS");
    c
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("homlab-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(c: &mut Command) -> (i32, String) {
    let Output { status, stdout, stderr } = c.output().unwrap();
    let text = String::from_utf8(stdout).unwrap();
    if status.code() == Some(1) {
        eprintln!("{}", String::from_utf8_lossy(&stderr));
    }
    (status.code().unwrap(), text)
}

const C4: &str = "n 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n";
const K4: &str = "n 4\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n";

#[test]
fn whom_reports_optimum_threshold_and_witness() {
    let dir = scratch("whom");
    let g = dir.join("k4.graph");
    fs::write(&g, K4).unwrap();
    let (code, out) = run(bin()
        .args(["solve", "whom", "--weights", "maxcut", "--threshold", "4", "-g"])
        .arg(&g));
    assert_eq!(code, 0);
    assert!(out.starts_with("optimum 4\nthreshold 4\nmeets yes\n"), "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("m ")).count(), 4);

    let (code, out) = run(bin()
        .args(["solve", "whom", "--weights", "maxcut", "--threshold", "5", "-g"])
        .arg(&g));
    assert_eq!(code, 2);
    assert!(out.contains("meets no"));

    let (code, out) = run(bin().args(["oracle", "whom", "--weights", "maxcut", "-g"]).arg(&g));
    assert_eq!(code, 0);
    assert!(out.starts_with("optimum 4\n"));
}

#[test]
fn whom_with_weight_file_and_infeasible_lists() {
    let dir = scratch("lists");
    let g = dir.join("c4.graph");
    fs::write(&g, C4).unwrap();
    let w = dir.join("c4.weights");
    // Every map sends edge {0,1} onto {0,1}, so only vertex weights can differ.
    fs::write(&w, "vw 0 1 3\nvw 1 1 -inf\n").unwrap();
    let (code, out) = run(bin()
        .args(["solve", "whom", "--target", "K2", "--weights"])
        .arg(&w)
        .arg("-g")
        .arg(&g));
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("optimum 3\n"), "{out}");

    let l = dir.join("c4.lists");
    fs::write(&l, "l 0 0\nl 1 0\n").unwrap();
    let (code, out) = run(bin()
        .args(["solve", "whom", "--target", "K2", "--lists"])
        .arg(&l)
        .arg("-g")
        .arg(&g));
    assert_eq!((code, out.as_str()), (2, "infeasible\n"));
}

#[test]
fn local_variants_and_exit_codes() {
    let dir = scratch("local");
    let g = dir.join("c4.graph");
    fs::write(&g, C4).unwrap();
    let (code, out) = run(bin().args(["solve", "lbhom", "--target", "C4", "-g"]).arg(&g));
    assert_eq!(code, 0);
    assert!(out.starts_with("yes\n"));
    let (code, out) = run(bin()
        .args(["solve", "local", "--variant", "inj", "--target", "K3", "-g"])
        .arg(&g));
    assert_eq!((code, out.as_str()), (2, "no\n"));
    let (code, _) = run(bin().args(["oracle", "lshom", "--target", "Pk:3", "-g"]).arg(&g));
    assert_eq!(code, 0);
    // Surjective solving is limited to P3 and C4.
    let (code, _) = run(bin().args(["solve", "lshom", "--target", "K3", "-g"]).arg(&g));
    assert_eq!(code, 1);
    let (code, _) = run(bin().args(["solve", "local", "--target", "K3", "-g"]).arg(&g));
    assert_eq!(code, 1);
}

#[test]
fn budget_exhaustion_exits_with_three() {
    let dir = scratch("budget");
    let g = dir.join("c9.graph");
    let edges: String = (0..9).map(|i| format!("e {i} {}\n", (i + 1) % 9)).collect();
    fs::write(&g, format!("n 9\n{edges}")).unwrap();
    let (code, _) = run(bin()
        .args(["oracle", "whom", "--weights", "oct", "--steps", "1", "-g"])
        .arg(&g));
    assert_eq!(code, 3);
    let (code, _) = run(bin()
        .env("HOMLAB_BUDGET_MS", "0")
        .args(["solve", "whom", "--weights", "oct", "-g"])
        .arg(&g));
    assert_eq!(code, 3);
}

#[test]
fn generate_writes_consistent_files() {
    let dir = scratch("generate");
    let g = dir.join("p3.graph");
    fs::write(&g, "n 3\ne 0 1\ne 1 2\n").unwrap();
    let prefix = dir.join("oct");
    let (code, out) = run(bin()
        .args(["generate", "oct", "-k", "2", "--graph"])
        .arg(&g)
        .arg("-o")
        .arg(&prefix));
    assert_eq!(code, 0, "{out}");
    let meta = fs::read_to_string(dir.join("oct.meta")).unwrap();
    assert!(meta.contains("slopes 2\n"));
    let threshold: i64 = meta
        .lines()
        .find_map(|l| l.strip_prefix("threshold "))
        .unwrap()
        .parse()
        .unwrap();

    // The segment file realises the graph file.
    let (code, from_seg) = run(bin().arg("segments-to-graph").arg(dir.join("oct.seg")));
    assert_eq!(code, 0);
    let graph = fs::read_to_string(dir.join("oct.graph")).unwrap();
    assert_eq!(from_seg, format!("# slopes 2\n{graph}"));

    // The written instance solves to the expected answer.
    let (code, out) = run(bin()
        .args(["solve", "whom", "--threshold", &threshold.to_string(), "-g"])
        .arg(dir.join("oct.graph"))
        .arg("--target-file")
        .arg(dir.join("oct.target"))
        .arg("--weights")
        .arg(dir.join("oct.weights")));
    assert_eq!(code, 0, "{out}");
}

#[test]
fn generate_is_byte_reproducible() {
    let dir = scratch("repro");
    let cnf = dir.join("f.cnf");
    fs::write(&cnf, "c toy\np cnf 3 2\n1 2 -3 0\n-1 -2 3 0\n").unwrap();
    let a = run(bin().args(["generate", "lshom-path", "-k", "5", "--cnf"]).arg(&cnf));
    let b = run(bin().args(["generate", "lshom-path", "-k", "5", "--cnf"]).arg(&cnf));
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn verify_agrees_on_small_sources() {
    let dir = scratch("verify");
    let g = dir.join("c4.graph");
    fs::write(&g, C4).unwrap();
    for (kind, k) in [
        ("bisection", "4"),
        ("bisection", "5"),
        ("c4-grid", "2"),
        ("c4-grid", "3"),
    ] {
        let (code, out) = run(bin().args(["verify", kind, "-k", k, "--graph"]).arg(&g));
        assert_eq!(code, 0, "{kind} {k}: {out}");
        assert!(out.ends_with("agree yes\n"));
    }
    let cnf = dir.join("nae.cnf");
    fs::write(&cnf, "p cnf 3 1\n1 2 3 0\n").unwrap();
    let (code, out) = run(bin().args(["verify", "nae-maxcut", "--cnf"]).arg(&cnf));
    assert_eq!(code, 0);
    assert!(out.contains("source yes\ninstance yes\n"));
    let unsat = dir.join("unsat.cnf");
    let all: String = (0..8)
        .map(|m| {
            let lit = |i: i64| if m >> (i - 1) & 1 == 1 { -i } else { i };
            format!("{} {} {} 0\n", lit(1), lit(2), lit(3))
        })
        .collect();
    fs::write(&unsat, format!("p cnf 3 8\n{all}")).unwrap();
    let (code, out) = run(bin().args(["verify", "lshom-loop", "--cnf"]).arg(&unsat));
    assert_eq!(code, 0);
    assert!(out.contains("source no\ninstance no\n"), "{out}");
}

#[test]
fn malformed_inputs_exit_with_one() {
    let dir = scratch("bad");
    let g = dir.join("bad.graph");
    fs::write(&g, "n 2\ne 0 5\n").unwrap();
    assert_eq!(run(bin().args(["solve", "whom", "--target", "K2", "-g"]).arg(&g)).0, 1);
    assert_eq!(run(bin().args(["check-star", "Zz:9"])).0, 1);
    let good = dir.join("c4.graph");
    fs::write(&good, C4).unwrap();
    assert_eq!(run(bin().args(["solve", "whom", "-g"]).arg(&good)).0, 1);
    assert_eq!(run(bin().args(["generate", "oct", "--graph"]).arg(&good)).0, 1);
}

#[test]
fn inspection_commands() {
    assert_eq!(run(bin().args(["check-star", "Pk:4"])), (0, "true\n".into()));
    let (code, out) = run(bin().args(["check-star", "loop-edge"]));
    assert_eq!(code, 2);
    assert!(out.starts_with("false\nwitness ("));

    let dir = scratch("inspect");
    let g = dir.join("c4.graph");
    fs::write(&g, C4).unwrap();
    let (code, out) = run(bin().args(["separator", "--max-size", "1"]).arg(&g));
    assert_eq!((code, out.as_str()), (2, "none\n"));
    let (code, out) = run(bin().arg("separator").arg(&g));
    assert_eq!(code, 0);
    assert!(out.starts_with("size 2\n"));
    assert_eq!(run(bin().arg("induced-path").arg(&g)), (0, "longest 3\n".into()));
    assert_eq!(
        run(bin().args(["induced-path", "--cap", "2"]).arg(&g)),
        (0, "longest >2\n".into())
    );
}

#[test]
fn solver_and_oracle_agree_on_reference_examples() {
    let dir = scratch("reference");
    let c5 = dir.join("c5.graph");
    fs::write(&c5, "n 5\ne 0 1\ne 1 2\ne 2 3\ne 3 4\ne 4 0\n").unwrap();
    let k2 = dir.join("k2.graph");
    fs::write(&k2, "n 2\ne 0 1\n").unwrap();
    let star = dir.join("star3.graph");
    fs::write(&star, "n 4\ne 0 1\ne 0 2\ne 0 3\n").unwrap();
    for cmd in ["solve", "oracle"] {
        let (code, out) = run(bin()
            .args([cmd, "whom", "--target", "loop-edge", "--weights", "maxcut", "-g"])
            .arg(&c5));
        assert_eq!(code, 0);
        assert!(out.starts_with("optimum 4\n"), "{out}");
        assert_eq!(
            run(bin().args([cmd, "lshom", "--target", "P3", "-g"]).arg(&k2)),
            (2, "no\n".into())
        );
        assert_eq!(
            run(bin().args([cmd, "lihom", "--target", "K3", "-g"]).arg(&star)),
            (2, "no\n".into())
        );
    }
}

//! End-to-end runs of the `chromatic-lab` binary.

use std::path::Path;
use std::process::Command;

use chromatic_lab::hyperbolic::{hyp_distance, spindle_h2, HPoint, SPINDLE_EDGES};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_chromatic-lab"))
        .args(args)
        .env("CHROMATIC_LAB_THREADS", "2")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write_graph(dir: &Path, name: &str, n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("{n} {}\n", edges.len());
    for (i, j) in edges {
        s.push_str(&format!("{i} {j}\n"));
    }
    let path = dir.join(name);
    std::fs::write(&path, s).unwrap();
    path.to_string_lossy().into_owned()
}

fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

fn header_value(stdout: &str, key: &str) -> String {
    let prefix = format!("# {key} = ");
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no '{key}' line in {stdout}"))
        .to_string()
}

#[test]
fn metric_eval() {
    let r = run(&[
        "metric-eval",
        "--metric",
        "builtin:rho1",
        "--p",
        "0,0",
        "--q",
        "3,4",
    ]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "0.833333333333\n"));
    let r = run(&[
        "metric-eval",
        "--metric",
        "max(axis(1),bound(axis(2)))",
        "--p",
        "0,0",
        "--q",
        "1,9",
    ]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "1.000000000000\n"));
    let r = run(&[
        "metric-eval",
        "--metric",
        "cap(euclid,-1)",
        "--p",
        "0,0",
        "--q",
        "1,1",
    ]);
    assert_eq!(r.code, 2);
    assert!(!r.stderr.is_empty());
}

#[test]
fn help_lists_subcommands() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    for sub in ["metric-eval", "verify", "chi", "bounds", "embed"] {
        assert!(r.stdout.contains(sub), "{sub} missing from help");
    }
    assert_eq!(run(&["verify", "--help"]).code, 0);
    assert_eq!(run(&["chi"]).code, 2);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("report.csv");
    let csv = csv.to_str().unwrap();
    let r = run(&[
        "verify",
        "--space",
        "hyperbolic",
        "--coloring",
        "high-curvature",
        "--d",
        "4",
        "--samples",
        "1000000",
        "--seed",
        "7",
        "--out",
        csv,
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("violations=0"));
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("stream,index,px,py,qx,qy,distance,label\n"));
    assert!(text.trim_end().ends_with("result=PASS"));

    let r = run(&[
        "verify",
        "--space",
        "hyperbolic",
        "--coloring",
        "low-curvature",
        "--d",
        "0.6",
        "--samples",
        "1000000",
        "--seed",
        "7",
    ]);
    assert_eq!(r.code, 0);
    let r = run(&[
        "verify",
        "--space",
        "plane",
        "--metric",
        "builtin:rho2",
        "--coloring",
        "strip",
        "--d",
        "1",
    ]);
    assert_eq!(r.code, 0);
    let r = run(&[
        "verify",
        "--space",
        "plane",
        "--coloring",
        "grid:eps=0.7071067811865476,n=4",
        "--interval",
        "1,2",
        "--samples",
        "100000",
    ]);
    assert_eq!(r.code, 0);
    let r = run(&[
        "verify",
        "--space",
        "plane",
        "--coloring",
        "product:2,3",
        "--metric",
        "builtin:product:1,2",
        "--d",
        "1",
        "--samples",
        "100000",
    ]);
    assert_eq!(r.code, 0);
    let r = run(&[
        "verify",
        "--space",
        "plane",
        "--metric",
        "builtin:rhoinf",
        "--coloring",
        "squares:side=0.7",
        "--d",
        "1",
        "--samples",
        "100000",
    ]);
    assert_eq!(r.code, 0);

    let r = run(&[
        "verify",
        "--space",
        "plane",
        "--coloring",
        "constant",
        "--d",
        "1",
        "--samples",
        "1000",
    ]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.lines().count() > 2);
    assert_eq!(
        run(&["verify", "--space", "plane", "--coloring", "strip"]).code,
        2
    );
    assert_eq!(
        run(&[
            "verify",
            "--space",
            "sphere",
            "--coloring",
            "strip",
            "--d",
            "1"
        ])
        .code,
        2
    );
    assert_eq!(
        run(&[
            "verify",
            "--space",
            "plane",
            "--coloring",
            "squares:side=0.8",
            "--d",
            "1"
        ])
        .code,
        2
    );
    assert_eq!(
        run(&[
            "verify",
            "--space",
            "hyperbolic",
            "--coloring",
            "low-curvature",
            "--d",
            "1"
        ])
        .code,
        2
    );
}

#[test]
fn chi_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.txt");
    let r = run(&[
        "chi",
        "--construct",
        "moser-h2:1",
        "--out",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("# chi = 4\n"));
    assert_eq!(std::fs::read_to_string(&cert).unwrap(), r.stdout);
    assert_eq!(r.stdout.lines().filter(|l| !l.starts_with('#')).count(), 7);

    assert!(run(&["chi", "--construct", "grid-clique:1,2"])
        .stdout
        .starts_with("# chi = 6\n"));
    let r = run(&["chi", "--construct", "circle-clique:5,0.2"]);
    assert!(r.stdout.starts_with("# chi = 4\n"));
    assert_eq!(header_value(&r.stdout, "clique").split(' ').count(), 4);

    let k = dir.path().join("k.txt");
    std::fs::write(
        &k,
        "4 6\n1 0\n-1 0\n0 1\n0 -1\n0 0\n1 0\n2 0\n0 1\n1 1\n2 1\n",
    )
    .unwrap();
    let r = run(&["chi", "--construct", &format!("finite-k:{}", k.display())]);
    assert_eq!((r.code, r.stdout.lines().next()), (0, Some("# chi = 2")));

    let g = write_graph(dir.path(), "k4.txt", 4, &complete_edges(4));
    assert!(run(&["chi", "--graph", &g])
        .stdout
        .starts_with("# chi = 4\n"));

    let big = write_graph(dir.path(), "k60.txt", 60, &complete_edges(60)[..1700]);
    let r = run(&["chi", "--graph", &big, "--budget", "5"]);
    assert_eq!(r.code, 3, "{}", r.stdout);
    assert!(r.stdout.contains("# inexact: "));

    let huge = write_graph(dir.path(), "e201.txt", 201, &[(0, 1)]);
    assert_eq!(run(&["chi", "--graph", &huge]).code, 2);
}

#[test]
fn bounds_table_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("plot.svg");
    let r = run(&[
        "bounds",
        "--family",
        "euclid-interval",
        "--d-min",
        "2",
        "--d-max",
        "4",
        "--step",
        "1",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "d,lower,lower_kind,upper,upper_kind,note");
    assert_eq!(lines[1], "2,7,hex-packing-clique,16,grid-mod-coloring,");
    assert_eq!(lines.len(), 4);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let r = run(&[
        "bounds",
        "--family",
        "hyperbolic",
        "--d-min",
        "2",
        "--d-max",
        "4",
        "--step",
        "2",
    ]);
    assert_eq!(
        r.stdout,
        "d,lower,lower_kind,upper,upper_kind,note\n2,4,moser-spindle,,,no theorem applies\n4,4,moser-spindle,20,high-curvature-checkerboard,\n"
    );
    assert_eq!(
        run(&[
            "bounds",
            "--family",
            "hyperbolic",
            "--d-min",
            "2",
            "--d-max",
            "1",
            "--step",
            "0.1"
        ])
        .code,
        2
    );
    assert_eq!(
        run(&[
            "bounds",
            "--family",
            "hyperbolic",
            "--d-min",
            "1",
            "--d-max",
            "2",
            "--step",
            "-0.1"
        ])
        .code,
        2
    );
    assert_eq!(
        run(&[
            "bounds",
            "--family",
            "spherical",
            "--d-min",
            "1",
            "--d-max",
            "2",
            "--step",
            "0.1"
        ])
        .code,
        2
    );
}

fn positions(stdout: &str) -> Vec<(f64, f64)> {
    stdout
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let (x, y) = l.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

fn sorted_distances(points: &[HPoint]) -> Vec<f64> {
    let mut v: Vec<f64> = points
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| points[i + 1..].iter().map(move |&q| hyp_distance(p, q)))
        .collect();
    v.sort_by(f64::total_cmp);
    v
}

#[test]
fn embed_spindle_and_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let spindle = write_graph(dir.path(), "spindle.txt", 7, &SPINDLE_EDGES);
    let r = run(&[
        "embed",
        "--target",
        &spindle,
        "--space",
        "hyperbolic",
        "--d",
        "1",
        "--seed",
        "0",
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(
        header_value(&r.stdout, "max_residual")
            .parse::<f64>()
            .unwrap()
            < 1e-8
    );
    let found: Vec<HPoint> = positions(&r.stdout)
        .into_iter()
        .map(|(x, y)| HPoint::new(x, y).unwrap())
        .collect();
    let reference = spindle_h2(1.0).unwrap().points;
    for (a, b) in sorted_distances(&found)
        .iter()
        .zip(sorted_distances(&reference))
    {
        assert!((a - b).abs() < 1e-6, "{a} vs {b}");
    }

    let triangle = write_graph(dir.path(), "triangle.txt", 3, &complete_edges(3));
    let r = run(&[
        "embed",
        "--target",
        &triangle,
        "--space",
        "plane",
        "--metric",
        "builtin:rhostar:2",
        "--d",
        "1",
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn embed_k5_in_the_plane_does_not_converge() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write_graph(dir.path(), "k5.txt", 5, &complete_edges(5));
    let r = run(&[
        "embed", "--target", &k5, "--space", "plane", "--metric", "euclid", "--d", "1", "--seed",
        "1",
    ]);
    assert_eq!(r.code, 1);
    assert_eq!(header_value(&r.stdout, "converged"), "false");
    let residuals: Vec<f64> = header_value(&r.stdout, "restart_residuals")
        .split(' ')
        .map(|v| v.parse().unwrap())
        .collect();
    assert_eq!(residuals.len(), 64);
    assert!(residuals.iter().all(|&v| v > 1e-3));
}

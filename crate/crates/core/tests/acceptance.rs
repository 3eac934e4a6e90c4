//! Acceptance criteria, one test per criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line.

use fq_incidence::apps::{bisector_audit, sphere_line_scan, trace_pairs};
use fq_incidence::ffield::{Fe, FieldSpec};
use fq_incidence::geom::{all_points3, is_zero3, CountMethod, Line2, Line3, Point, Point3};
use fq_incidence::harness::{emit, run_suite, ExperimentConfig, SuiteReport};
use fq_incidence::reductions::count_solutions;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

fn suite(name: &str, q: u32, alpha: f64, trials: usize, seed: u64) -> SuiteReport {
    run_suite(&ExperimentConfig {
        suite: name.into(),
        q,
        alpha,
        trials,
        seed,
        out: None,
    })
    .unwrap_or_else(|e| panic!("{name} at q={q}: {e}"))
}

fn out_dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn report(n: u32, pass: bool, detail: &str) {
    println!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" });
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut configs = 0;
    for q in [3, 4, 5, 7, 8, 9, 11, 13] {
        let r = suite("oracle-equivalence", q, 0.5, 100, 1);
        configs += r.rows.len();
        if r.rows.len() < 100 || r.failures() > 0 {
            bad.push(q);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let pass = bad.is_empty() && secs < 60.0;
    report(1, pass, &format!("{configs} configs, mismatching q: {bad:?}, {secs:.2}s"));
    assert!(pass);
}

#[test]
fn criterion_2_unconditional_inequalities() {
    let mut configs = 0;
    let mut violations = 0;
    for q in [3, 5, 7, 9, 11] {
        let r = suite("unconditional", q, 0.5, 100, 2);
        emit(&r, &out_dir().join(format!("unconditional_q{q}.csv"))).unwrap();
        configs += r.rows.len();
        violations += r.failures() + r.budget_exceeded();
    }
    let pass = configs >= 500 && violations == 0;
    report(2, pass, &format!("{configs} configs, {violations} violations"));
    assert!(pass);
}

#[test]
fn criterion_3_reduction_identity() {
    let mut failures = 0;
    let mut configs = 0;
    for q in [3, 5, 7, 9] {
        let r = suite("reduction-identity", q, 0.5, 50, 3);
        configs += r.rows.len();
        failures += r.failures();
    }
    let mut uniform = true;
    for q in [3u32, 5] {
        let f = FieldSpec::of_order(q).unwrap();
        let lines: Vec<Line2> = Line2::all(&f).into_iter().filter(|l| !matches!(l, Line2::Vertical { .. })).collect();
        let a: Vec<Fe> = f.elements().collect();
        let want = (q as u64).pow(5);
        for m in [CountMethod::Fast, CountMethod::Oracle] {
            uniform &= count_solutions(&f, &lines, &a, m).unwrap() == want;
        }
    }
    let pass = failures == 0 && configs >= 200 && uniform;
    report(3, pass, &format!("{configs} configs, {failures} identity failures, full-lines count = q^5: {uniform}"));
    assert!(pass);
}

#[test]
fn criterion_4_vc_bound() {
    let mut notes = Vec::new();
    let mut pass = true;
    for q in [3, 4, 5] {
        let r = suite("vc-plane", q, 0.5, 1, 4);
        let row = &r.rows[0];
        pass &= row.get("config") == Some("full") && row.pass == Some(true);
        notes.push(format!(
            "q={q} full vc={}/{} shatter=[{}]",
            row.get("vc_by_point").unwrap_or("?"),
            row.get("vc_by_plane").unwrap_or("?"),
            row.get("shatter_values").unwrap_or("")
        ));
    }
    for q in [7, 9, 11] {
        let r = suite("vc-plane", q, 0.5, 20, 4);
        pass &= r.rows.len() >= 20 && r.failures() == 0 && r.budget_exceeded() == 0;
        let max_vc = r
            .column_values("vc_by_plane")
            .chain(r.column_values("vc_by_point"))
            .filter_map(|v| v.parse::<usize>().ok())
            .max()
            .unwrap_or(0);
        notes.push(format!("q={q} random max vc={max_vc}"));
    }
    report(4, pass, &notes.join("; "));
    assert!(pass);
}

#[test]
fn criterion_5_q3mod4_geometry() {
    let mut spheres_empty = true;
    let mut sphere_notes = Vec::new();
    for q in [3u32, 7, 11] {
        let f = FieldSpec::of_order(q).unwrap();
        for r in f.nonzero_elements() {
            let lines = sphere_line_scan(&f, r).unwrap();
            if !lines.is_empty() {
                spheres_empty = false;
                sphere_notes.push(format!("q={q} r={} has {} lines", r.0, lines.len()));
            }
        }
    }
    let mut injective = true;
    let mut collisions = 0usize;
    let mut example = String::new();
    for q in [3u32, 7] {
        let f = FieldSpec::of_order(q).unwrap();
        for x in all_points3(&f) {
            let a = bisector_audit(&f, &x).unwrap();
            if !a.injective() {
                injective = false;
                collisions += a.collisions.len();
                if example.is_empty() {
                    let (y, z) = a.collisions[0];
                    example = format!("q={q} x={:?} y={:?} y'={:?}", x.0, y.0, z.0);
                }
            }
        }
    }
    let f5 = FieldSpec::of_order(5).unwrap();
    let witness = Line3::new(&f5, Point::from_indices([0, 0, 1]), [Fe(1), Fe(2), Fe(0)]).unwrap();
    let q5_ok = sphere_line_scan(&f5, Fe::ONE).unwrap().contains(&witness);
    let pass = spheres_empty && injective && q5_ok;
    report(
        5,
        pass,
        &format!(
            "spheres empty: {spheres_empty} [{}]; bisector injective: {injective} ({collisions} collisions, e.g. {example}); q=5 witness: {q5_ok}",
            sphere_notes.join(", ")
        ),
    );
    assert!(spheres_empty, "lines found on nonzero-radius spheres: {sphere_notes:?}");
    assert!(injective, "bisector map not injective: {collisions} collisions, e.g. {example}");
    assert!(q5_ok);
}

#[test]
fn criterion_6_regular_subset() {
    let mut pass = true;
    let mut notes = Vec::new();
    for q in [8u32, 9] {
        let r = suite("regular-subset", q, 0.5, 1, 6);
        pass &= r.rows[0].get("full_exact") == Some("true") && r.rows[0].pass == Some(true);
        notes.push(format!("q={q} full u1={}", r.rows[0].get("u1").unwrap_or("?")));
    }
    for q in [9u32, 11] {
        let r = suite("regular-subset", q, 0.5, 11, 6);
        let random: Vec<_> = r.rows.iter().filter(|row| row.get("config") == Some("random")).collect();
        pass &= random.len() >= 10;
        pass &= random.iter().all(|row| row.hypotheses_ok == Some(true) && row.pass == Some(true));
        let min_frac = random
            .iter()
            .filter_map(|row| row.get("u1_fraction")?.parse::<f64>().ok())
            .fold(f64::INFINITY, f64::min);
        notes.push(format!("q={q} {} random, min |U1|/|U| = {min_frac:.3}", random.len()));
    }
    report(6, pass, &notes.join("; "));
    assert!(pass);
}

#[test]
fn criterion_7_theorem_calibration() {
    let mut failures = 0;
    let mut met: BTreeMap<String, (usize, f64)> = BTreeMap::new();
    for q in [5u32, 7, 9, 11, 13] {
        for alpha in [1.0 / 3.0, 0.5] {
            let r = suite("thm-calibration", q, alpha, 20, 7);
            emit(&r, &out_dir().join(format!("calibration_q{q}_a{:.3}.csv", alpha))).unwrap();
            failures += r.failures() + r.budget_exceeded();
            for row in r.rows.iter().filter(|row| row.hypotheses_ok == Some(true)) {
                let ratio: f64 = row.get("ratio").unwrap().parse().unwrap();
                let e = met.entry(row.get("theorem").unwrap().to_string()).or_insert((0, 0.0));
                e.0 += 1;
                e.1 = e.1.max(ratio);
            }
        }
    }
    let covered = ["thm_line", "thm13_by_planes", "thm13_by_points", "thm14"].iter().all(|t| met.get(*t).is_some_and(|e| e.0 > 0));
    let pass = failures == 0 && covered;
    let summary: Vec<String> = met.iter().map(|(k, (n, m))| format!("{k}: {n} trials, max ratio {m:.4}")).collect();
    report(7, pass, &format!("C=2, {failures} trials above 2x; {}", summary.join("; ")));
    assert!(pass);
}

#[test]
fn criterion_8_trace_pairs() {
    let f = FieldSpec::of_order(3).unwrap();
    let u: Vec<Point3> = all_points3(&f).into_iter().filter(|p| !is_zero3(&p.0)).collect();
    let r = trace_pairs(&f, &u, &[Point::from_indices([1, 0, 0])]).unwrap();
    let pass = r.pair_count == 370 && r.cs_holds;
    report(
        8,
        pass,
        &format!(
            "pair_count={} classes={:?} |U|^2/|U'|^3={} ratio={:.4}",
            r.pair_count,
            r.class_sizes,
            r.bound_value,
            r.ratio()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_9_preset_audit() {
    let csv_path = out_dir().join("preset_audit.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_fqinc"))
        .args(["suite", "--name", "preset-audit", "--q", "2", "--seed", "9", "--out"])
        .arg(&csv_path)
        .output()
        .unwrap();
    let code = status.status.code();
    let mut rdr = csv::Reader::from_path(&csv_path).unwrap();
    let headers = rdr.headers().unwrap().clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let presets: Vec<&str> = rows.iter().map(|r| &r[col("preset")]).collect();
    let line1 = rows.iter().find(|r| &r[col("preset")] == "line-1").unwrap();
    let line1_flag = &line1[col("hypotheses_ok")];
    let all_flagged = rows.iter().all(|r| matches!(&r[col("hypotheses_ok")], "true" | "false"));
    let qs: Vec<&str> = rows.iter().map(|r| &r[col("preset_q")]).collect();
    let pass = code == Some(2) && presets.len() == 7 && line1_flag == "false" && all_flagged;
    report(9, pass, &format!("exit={code:?} presets={presets:?} q={qs:?} line-1 hypotheses_ok={line1_flag}"));
    assert!(pass);
}

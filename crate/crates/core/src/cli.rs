//! The `fqinc` command line.
//!
//! `--config FILE` reads `key = value` lines (`#` starts a comment) and
//! supplies them as `--key value` for every flag not given on the command
//! line; a `command` key names the subcommand. Exit codes: 0 success, 2 when
//! only theorem hypotheses failed, 1 on any error or failed check.

use crate::apps::{
    bisector_collinear_k, distance_chain_check, distance_set, dot_plane_collinear_k, dot_product_set, trace_pairs,
};
use crate::bounds::{eval_set_lower, regime_report};
use crate::error::{Error, Result};
use crate::ffield::{FieldSpec, MAX_DEGREE};
use crate::geom::{count_line_incidences, count_plane_incidences, CountMethod};
use crate::harness::{preset, run_suite, to_csv_string, ExperimentConfig, PresetConfig};
use crate::io;
use crate::reductions::{build_point_plane_sets, cs_upper};
use crate::setsys::{neighborhood_system, vc_dimension, Side};
use clap::{CommandFactory, Parser, Subcommand};
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "fqinc", version, about = "Incidence experiments over finite fields")]
pub struct Cli {
    /// key=value file supplying defaults for the flags
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Describe GF(p^n)
    FieldInfo {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Count point-line or point-plane incidences
    Count {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, conflicts_with = "planes", required_unless_present = "planes")]
        lines: Option<PathBuf>,
        #[arg(long)]
        planes: Option<PathBuf>,
        #[arg(long, default_value = "fast")]
        method: CountMethod,
    },
    /// VC dimension of the incidence neighbourhood system
    Vcdim {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        planes: PathBuf,
        #[arg(long, default_value = "by_plane")]
        side: Side,
        #[arg(long, default_value_t = 4)]
        max_d: usize,
    },
    /// Energy count and its point-plane encoding
    Reduce {
        #[arg(long)]
        lines: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: Option<PathBuf>,
    },
    /// Distance set of E and F in F_q^3
    Distance {
        #[arg(long)]
        e: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Dot-product set of E and F
    Dotprod {
        #[arg(long)]
        e: PathBuf,
        #[arg(long)]
        f: PathBuf,
    },
    /// Trace classes of U on U'
    Traces {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        uprime: PathBuf,
    },
    /// Run a verification suite and write CSV
    Suite {
        #[arg(long)]
        name: String,
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realize a preset configuration and write its files
    Preset {
        #[arg(long)]
        name: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Parses a `key = value` file into `(key, value)` pairs in file order.
pub fn parse_config(text: &str, path: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
            path: path.to_path_buf(),
            line: i + 1,
            msg: "expected key = value".into(),
        })?;
        out.push((k.trim().replace('_', "-"), v.trim().to_string()));
    }
    Ok(out)
}

fn config_path(args: &[String]) -> Option<PathBuf> {
    args.iter().enumerate().find_map(|(i, a)| {
        if a == "--config" {
            args.get(i + 1).map(PathBuf::from)
        } else {
            a.strip_prefix("--config=").map(PathBuf::from)
        }
    })
}

/// Merges config-file entries into `args` (program name first).
pub fn expand_args(args: Vec<String>) -> Result<Vec<String>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let entries = parse_config(&std::fs::read_to_string(&path)?, &path)?;
    let mut out = args;
    let names: Vec<String> = Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect();
    let has_command = out.iter().skip(1).any(|a| names.contains(a));
    for (k, v) in entries {
        if k == "command" {
            if !has_command {
                out.insert(1, v);
            }
            continue;
        }
        let flag = format!("--{k}");
        let given = out.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if !given {
            out.push(flag);
            out.push(v);
        }
    }
    Ok(out)
}

fn same_field(a: &FieldSpec, b: &FieldSpec, what: &str) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "{what}: field GF({}^{}) differs from GF({}^{})",
            b.p(),
            b.n(),
            a.p(),
            a.n()
        )))
    }
}

fn fmt_set(xs: &[crate::ffield::Fe]) -> String {
    let v: Vec<String> = xs.iter().map(|x| x.0.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Runs one command, printing to stdout; returns the exit code.
pub fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::FieldInfo { p, n } => {
            let f = FieldSpec::new(p, n)?;
            println!("field: GF({p}^{n})");
            println!("q: {}", f.q());
            let m: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
            println!("modulus (c0..cn): {}", m.join(" "));
            println!("q mod 4: {}", f.q_mod4());
            println!("max degree: {MAX_DEGREE}");
            Ok(0)
        }
        Command::Count { points, lines, planes, method } => {
            if let Some(lp) = lines {
                let (f, pts) = io::read_points2(&points)?;
                let (g, ls) = io::read_lines(&lp)?;
                same_field(&f, &g, "lines")?;
                let c = count_line_incidences(&f, &pts, &ls, method)?;
                println!("points: {}\nlines: {}\nincidences: {}", pts.len(), ls.len(), c.count);
            } else {
                let (f, pts) = io::read_points3(&points)?;
                let (g, pls) = io::read_planes(planes.as_ref().expect("clap requires lines or planes"))?;
                same_field(&f, &g, "planes")?;
                let c = count_plane_incidences(&f, &pts, &pls, method)?;
                println!("points: {}\nplanes: {}\nincidences: {}", pts.len(), pls.len(), c.count);
            }
            Ok(0)
        }
        Command::Vcdim { points, planes, side, max_d } => {
            let (f, pts) = io::read_points3(&points)?;
            let (g, pls) = io::read_planes(&planes)?;
            same_field(&f, &g, "planes")?;
            let sys = neighborhood_system(&f, &pts, &pls, side)?;
            let r = vc_dimension(&sys, max_d)?;
            println!("members: {}\nground: {}", sys.len(), sys.ground_size());
            println!("vc_dimension: {}{}", r.dimension, if r.saturated { " (reached max-d)" } else { "" });
            println!("witness: {:?}", r.witness);
            Ok(0)
        }
        Command::Reduce { lines, a, b } => {
            let (f, ls) = io::read_lines(&lines)?;
            let (g, a_set) = io::read_scalars(&a)?;
            same_field(&f, &g, "A")?;
            let out = build_point_plane_sets(&f, &ls, &a_set)?;
            println!("solutions: {}", out.solution_count);
            println!("points3: {}\nplanes3: {}", out.points3.len(), out.planes3.len());
            println!("plane convention: {}", out.convention);
            println!("k_bound: {}", out.k_bound);
            if let Some(k) = out.k_observed {
                println!("k_observed: {k}");
            }
            if let Some(bp) = b {
                let (h, b_set) = io::read_scalars(&bp)?;
                same_field(&f, &h, "B")?;
                let c = cs_upper(&f, &ls, &a_set, &b_set)?;
                println!("incidences(AxB, L): {}\ncs_upper: {}\ncs_holds: {}", c.actual, c.value, c.holds);
                if !c.holds {
                    return Ok(1);
                }
            }
            Ok(0)
        }
        Command::Distance { e, f: fpath, alpha } => {
            let (f, es) = io::read_points3(&e)?;
            let (g, fs) = io::read_points3(&fpath)?;
            same_field(&f, &g, "F")?;
            let d = distance_set(&f, &es, &fs)?;
            let ch = distance_chain_check(&f, &es, &fs)?;
            println!("distances: {} {}", d.distances.len(), fmt_set(&d.distances));
            println!("zero_pairs: {}\nT: {}", d.zero_pairs, ch.t);
            println!("chain: {} >= {}: {}", ch.lhs, ch.rhs, ch.holds);
            println!("zero-pair hypothesis: {}", ch.hypothesis_ok);
            match bisector_collinear_k(&f, &es, &fs) {
                Ok(k) => {
                    println!("k: {k}");
                    if k == 0 {
                        println!("k = 0: |F| > 2k q^alpha holds for every alpha");
                    }
                    if let Some(a) = alpha {
                        let lb = eval_set_lower(f.q() as f64, a, es.len() as f64, k as f64);
                        println!("lower bound shape: {}", lb.value);
                    }
                }
                Err(Error::BudgetExceeded { needed, budget, .. }) => println!("k: skipped (needs {needed}, budget {budget})"),
                Err(err) => return Err(err),
            }
            Ok(if !ch.holds { 1 } else if ch.hypothesis_ok { 0 } else { 2 })
        }
        Command::Dotprod { e, f: fpath } => {
            let (f, es) = io::read_points3(&e)?;
            let (g, fs) = io::read_points3(&fpath)?;
            same_field(&f, &g, "F")?;
            let d = dot_product_set(&f, &es, &fs)?;
            println!("dots: {} {}", d.dots.len(), fmt_set(&d.dots));
            println!("orthogonal_pairs: {}", d.orthogonal_pairs);
            println!("best_lambda: {} (M = {})", d.best_lambda, d.best_count());
            let ok = 2 * d.orthogonal_pairs as u128 <= es.len() as u128 * fs.len() as u128;
            println!("orthogonal-pair hypothesis: {ok}");
            match dot_plane_collinear_k(&f, &es, &fs) {
                Ok(k) => println!("k: {} (per lambda {:?})", k.global, &k.per_lambda[1..]),
                Err(Error::BudgetExceeded { needed, budget, .. }) => println!("k: skipped (needs {needed}, budget {budget})"),
                Err(err) => return Err(err),
            }
            Ok(if ok { 0 } else { 2 })
        }
        Command::Traces { u, uprime } => {
            let (f, us) = io::read_points3(&u)?;
            let (g, up) = io::read_points3(&uprime)?;
            same_field(&f, &g, "U'")?;
            let r = trace_pairs(&f, &us, &up)?;
            println!("classes: {}\nclass_sizes: {:?}", r.classes, r.class_sizes);
            println!("pair_count: {}\nbound_value: {}\nratio: {}", r.pair_count, r.bound_value, r.ratio());
            Ok(if r.cs_holds { 0 } else { 1 })
        }
        Command::Suite { name, q, alpha, trials, seed, out } => {
            let report = run_suite(&ExperimentConfig { suite: name, q, alpha, trials, seed, out: out.clone() })?;
            println!("suite: {}\nrows: {}", report.suite, report.rows.len());
            println!("failures: {}", report.failures());
            println!("hypothesis violations: {}", report.hypothesis_violations());
            println!("budget exceeded: {}", report.budget_exceeded());
            if let Some(p) = out {
                println!("csv: {}", p.display());
            } else if report.rows.len() <= 50 {
                print!("{}", to_csv_string(&report)?);
            }
            Ok(report.exit_code())
        }
        Command::Preset { name, q, out, seed } => {
            let p = preset(&name, q, seed)?;
            let report = regime_report(&p.params)?;
            println!("preset: {} q={} alpha={}", p.name, p.q, p.alpha);
            for (n, nominal, real) in &p.sizes {
                println!("  {n}: {real} (q^e = {nominal:.4})");
            }
            println!("incidences: {}", p.incidences()?);
            for b in &report.bounds {
                println!("  {}: {:.4} hypotheses_ok={}", b.bound_name, b.value, b.hypotheses_ok());
            }
            println!("winner: {}\nhypotheses_ok: {}", report.winner, report.hypotheses_ok);
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                let f = &p.field;
                match &p.config {
                    PresetConfig::Line { lines, a, b, .. } => {
                        io::write_text(dir.join("lines.txt"), &io::format_lines(f, lines))?;
                        io::write_text(dir.join("a.txt"), &io::format_scalars(f, a))?;
                        io::write_text(dir.join("b.txt"), &io::format_scalars(f, b))?;
                    }
                    PresetConfig::Plane { points, planes, .. } => {
                        io::write_text(dir.join("points.txt"), &io::format_points(f, points))?;
                        io::write_text(dir.join("planes.txt"), &io::format_planes(f, planes))?;
                    }
                }
                println!("written to {}", dir.display());
            }
            Ok(if report.hypotheses_ok { 0 } else { 2 })
        }
    }
}

/// Full entry point: expands `--config`, parses, runs, reports errors.
pub fn run(args: Vec<String>) -> i32 {
    let args = match expand_args(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

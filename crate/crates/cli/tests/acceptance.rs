//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! observed numbers. Runs without the libtest harness so that every line is
//! printed; exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use antiramsey::claimcheck::verify_interval_extent;
use antiramsey::construct::{construct_forest_avoider, construct_matching, star_cover};
use antiramsey::detect::{find_rainbow, find_rainbow_oracle, DetectBudget, DetectOutcome};
use antiramsey::exact::{exists_avoiding_coloring, Decision, ExactBudget};
use antiramsey::formulas::{ar_linear_forest, ar_matching, ParamTriple};
use antiramsey::model::edge_count;
use antiramsey::{EdgeColoring, LinearForest};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_antiramsey");

type Check = Result<String, String>;
type Criterion = (u32, &'static str, Box<dyn Fn() -> Check>);

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> Result<(Value, i32), String> {
    let out = run(args);
    let text = String::from_utf8_lossy(&out.stdout);
    let v = serde_json::from_str(text.trim()).map_err(|e| {
        format!(
            "{args:?}: bad JSON ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok((v, out.status.code().unwrap_or(-1)))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("{what} took {took:.1?}, limit {limit:?}"))
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

fn exact_value(n: usize, forest: &str, extra: &[&str]) -> Result<(u64, String), String> {
    let n_text = n.to_string();
    let mut args = vec!["--json", "exact", "--n", &n_text, "--forest", forest];
    args.extend_from_slice(extra);
    let (v, _) = run_json(&args)?;
    let value = v["value"].as_u64().ok_or("missing value")?;
    let status = v["status"].as_str().ok_or("missing status")?.to_owned();
    Ok((value, status))
}

fn criterion_1() -> Check {
    let mut notes = Vec::new();
    for n in [5usize, 6] {
        let start = Instant::now();
        let (value, status) = exact_value(n, "2xP2", &[])?;
        let formula = ar_matching(&big(n), &big(2)).map_err(|e| e.to_string())?;
        ensure(status == "exact" && BigInt::from(value) == formula, || {
            format!("n={n}: exact {value} ({status}) vs formula {formula}")
        })?;
        within(start, Duration::from_secs(600), &format!("exact n={n}"))?;
        notes.push(format!("AR({n},2P2)={value}"));
    }
    let start = Instant::now();
    let r =
        exists_avoiding_coloring(5, &"2xP2".parse().unwrap(), 2, ExactBudget::default()).map_err(|e| e.to_string())?;
    ensure(r.decision == Decision::Infeasible, || "n=5 c=2 not infeasible".into())?;
    within(start, Duration::from_secs(5), "n=5 c=2 decision")?;
    notes.push(format!("n=5 c=2 infeasible after {} nodes", r.nodes));
    Ok(notes.join(", "))
}

fn criterion_2(dir: &Path) -> Check {
    let mut notes = Vec::new();
    for n in [5usize, 6] {
        let start = Instant::now();
        let (value, status) = exact_value(n, "P3+P2", &[])?;
        ensure(value == 2 && status == "exact", || {
            format!("AR({n},P3+P2) = {value} ({status})")
        })?;
        within(start, Duration::from_secs(600), "exact P3+P2")?;
        notes.push(format!("AR({n},P3+P2)=2"));
    }

    let start = Instant::now();
    let cert = dir.join("p3_2p2_n7.txt");
    let cert_text = cert.to_str().unwrap();
    let (v, code) = run_json(&[
        "--json", "search", "--n", "7", "--forest", "P3+2xP2", "--seed", "1", "-o", cert_text,
    ])?;
    ensure(code == 0 && v["best_colors"].as_u64() == Some(7), || {
        format!("search gave {v}")
    })?;
    within(start, Duration::from_secs(60), "search n=7")?;
    let (d, _) = run_json(&["--json", "detect", "--coloring", cert_text, "--forest", "P3+2xP2"])?;
    ensure(d["found"] == Value::Bool(false), || {
        "search certificate has a rainbow copy".into()
    })?;
    notes.push("search certifies AR(7,P3+2P2)>=7".into());

    // The upper bound is attempted under a one-minute wall budget.
    let (value, status) = exact_value(7, "P3+2xP2", &["--wall-secs", "60"])?;
    ensure(value <= 7 && (status != "exact" || value == 7), || {
        format!("exact n=7 reported {value} ({status})")
    })?;
    notes.push(format!("exact n=7: {value} ({status})"));
    Ok(notes.join(", "))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let mut cells = 0;
    for t in 2..=12usize {
        for n in 2 * t + 1..=60 {
            let c = construct_matching(n, t).map_err(|e| e.to_string())?;
            let f = ar_matching(&big(n), &big(t)).map_err(|e| e.to_string())?;
            ensure(BigInt::from(c.color_count()) == f, || {
                format!("n={n} t={t}: {} colors vs formula {f}", c.color_count())
            })?;
            cells += 1;
        }
    }
    within(start, Duration::from_secs(30), "count grid")?;

    let start = Instant::now();
    let mut verified = 0;
    for t in 2..=8usize {
        let forest = LinearForest::matching(t).unwrap();
        for n in 2 * t + 1..=24 {
            let c = construct_matching(n, t).unwrap();
            let out = find_rainbow(&c, &forest, DetectBudget::unlimited()).map_err(|e| e.to_string())?;
            ensure(out.is_absent(), || format!("n={n} t={t}: {out:?}"))?;
            verified += 1;
        }
    }
    within(start, Duration::from_secs(600), "detector subgrid")?;
    Ok(format!(
        "{cells} count cells equal; {verified} constructions rainbow-free"
    ))
}

fn criterion_4() -> Check {
    // Color counts listed for the four points, in order.
    let stated = [11u32, 19, 55, 71];
    let points = [(1usize, 2usize, 8usize), (1, 2, 12), (2, 2, 16), (2, 2, 20)];
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for ((k, t, n), listed) in points.into_iter().zip(stated) {
        let start = Instant::now();
        let p = ParamTriple::new(k, t, n).unwrap();
        let formula = match ar_linear_forest(&p) {
            Ok(f) => f,
            Err(e) => {
                let s = 2 * k + t;
                let star = star_cover(n, s).unwrap();
                let clean = find_rainbow(&star, &LinearForest::p4_p2(k, t).unwrap(), DetectBudget::unlimited())
                    .map_err(|e| e.to_string())?
                    .is_absent();
                failures.push(format!(
                    "({k},{t},{n}): no formula value ({e}); star cover gives {} colors, rainbow-free: {clean}",
                    star.color_count()
                ));
                continue;
            }
        };
        let c = construct_forest_avoider(&p).map_err(|e| e.to_string())?;
        let forest = LinearForest::p4_p2(k, t).unwrap();
        let out = find_rainbow(&c, &forest, DetectBudget::unlimited()).map_err(|e| e.to_string())?;
        let count = c.color_count();
        if BigInt::from(count) != formula || !out.is_absent() {
            failures.push(format!(
                "({k},{t},{n}): {count} colors, formula {formula}, detector {out:?}"
            ));
        } else if count != listed {
            failures.push(format!(
                "({k},{t},{n}): construction and formula give {count}, listed value is {listed}"
            ));
        } else {
            notes.push(format!("({k},{t},{n})={count}"));
        }
        within(start, Duration::from_secs(300), &format!("({k},{t},{n})"))?;
    }
    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(format!("{}; ok: {}", failures.join("; "), notes.join(", ")))
    }
}

fn region_rows() -> Result<(Value, Duration), String> {
    let start = Instant::now();
    let (v, _) = run_json(&["--json", "verify", "region", "--k-max", "40", "--t-max", "40"])?;
    Ok((v, start.elapsed()))
}

fn row<'a>(report: &'a Value, family: &str) -> Result<&'a Value, String> {
    report["rows"]
        .as_array()
        .and_then(|rows| rows.iter().find(|r| r["family"] == family))
        .ok_or_else(|| format!("row {family} missing"))
}

fn row_passes(report: &Value, family: &str) -> Result<u64, String> {
    let r = row(report, family)?;
    let checked = r["checked"].as_u64().unwrap_or(0);
    ensure(
        r["status"] == "pass" && r["violations"].as_u64() == Some(0) && checked > 0,
        || format!("{family}: {}", r),
    )?;
    Ok(checked)
}

fn criterion_5() -> Check {
    let (report, took) = region_rows()?;
    ensure(took < Duration::from_secs(60), || {
        format!("region scan took {took:.1?}")
    })?;
    let points = row_passes(&report, "mu_gt_beta1_on_region")?;
    row_passes(&report, "mu_gt_beta2_on_region")?;
    row_passes(&report, "cutoff_example_k2_t2")?;
    Ok(format!(
        "{points} integer points, no violations; mu-beta1 = 1 at (2,2,41), 0 at (2,2,42)"
    ))
}

fn criterion_6() -> Check {
    let start = Instant::now();
    let (report, code) = run_json(&[
        "--json",
        "verify",
        "claim8",
        "--k-max",
        "7",
        "--t-max",
        "6",
        "--vprime-extra",
        "12",
    ])?;
    within(start, Duration::from_secs(60), "claim8")?;
    let checked = row_passes(&report, "claim8_all_ones_maximizes_omega")?;
    ensure(code == 0, || format!("exit code {code}"))?;
    Ok(format!("{checked} compositions checked, no violations"))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let extent = verify_interval_extent(200).map_err(|e| e.to_string())?;
    ensure(extent.passed(), || format!("{:?}", extent.rows))?;
    let (report, _) = region_rows()?;
    within(start, Duration::from_secs(60), "interval checks")?;
    row_passes(&report, "f_monotone_k_ge_t_plus_3")?;
    let stated = row_passes(&report, "g_difference_equals_2l");
    let observed = row_passes(&report, "g_difference_equals_4l");
    match (stated, observed) {
        (Ok(_), _) => Ok("largest nonempty k matches the square-root bound for t <= 200; g-difference and f-monotonicity hold".into()),
        (Err(e), Ok(n)) => Err(format!(
            "g-difference identity as stated fails ({e}); all {n} pairs give 4l instead; square-root bound and f-monotonicity pass"
        )),
        (Err(e), Err(e2)) => Err(format!("{e}; {e2}")),
    }
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let forests = ["2xP2", "3xP2", "P4", "P4+P2"];
    let (mut cells, mut found, mut absent) = (0, 0, 0);
    for n in 2..=7usize {
        for spec in forests {
            let forest: LinearForest = spec.parse().unwrap();
            if forest.total_vertices() > n {
                continue;
            }
            cells += 1;
            let m = edge_count(n);
            let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0000 + (n as u64) * 16 + cells as u64);
            for i in 0..500 {
                let palette = rng.random_range(1..=m as u32);
                let labels: Vec<u32> = (0..m).map(|_| rng.random_range(0..palette)).collect();
                let c = EdgeColoring::from_labels(n, &labels).unwrap();
                let fast = find_rainbow(&c, &forest, DetectBudget::unlimited()).map_err(|e| e.to_string())?;
                let slow = find_rainbow_oracle(&c, &forest).map_err(|e| e.to_string())?;
                match (&fast, &slow) {
                    (DetectOutcome::Found(e), Some(_)) => {
                        e.validate(&c, &forest).map_err(|e| e.to_string())?;
                        found += 1;
                    }
                    (DetectOutcome::Absent, None) => absent += 1,
                    _ => return Err(format!("n={n} {spec} sample {i}: detector {fast:?}, oracle {slow:?}")),
                }
            }
        }
    }
    within(start, Duration::from_secs(300), "oracle equivalence")?;
    Ok(format!(
        "{cells} cells x 500 colorings agree ({found} with a copy, {absent} without)"
    ))
}

fn criterion_9(dir: &Path) -> Check {
    let mut runs: Vec<(Vec<u8>, Vec<u8>, Vec<u8>)> = Vec::new();
    for (i, threads) in ["1", "1", "4"].into_iter().enumerate() {
        let file = dir.join(format!("search_{i}.txt"));
        let file_text = file.to_str().unwrap();
        let s = run(&[
            "--json",
            "--threads",
            threads,
            "search",
            "--n",
            "10",
            "--forest",
            "P4+P2",
            "--seed",
            "42",
            "--restarts",
            "4",
            "--moves",
            "120",
            "-o",
            file_text,
        ]);
        ensure(s.status.success(), || String::from_utf8_lossy(&s.stderr).into_owned())?;
        let p = run(&[
            "--json",
            "--threads",
            threads,
            "probe",
            "--k",
            "1",
            "--t",
            "1",
            "--n",
            "7",
            "--seed",
            "42",
        ]);
        ensure(p.status.success(), || String::from_utf8_lossy(&p.stderr).into_owned())?;
        runs.push((s.stdout, std::fs::read(&file).unwrap(), p.stdout));
    }
    ensure(runs[0] == runs[1], || "two runs with one thread differ".into())?;
    ensure(runs[0] == runs[2], || "one thread and four threads differ".into())?;

    let file = dir.join("search_0.txt");
    let (d, _) = run_json(&[
        "--json",
        "detect",
        "--coloring",
        file.to_str().unwrap(),
        "--forest",
        "P4+P2",
    ])?;
    ensure(d["found"] == Value::Bool(false), || {
        "search certificate fails detection".into()
    })?;

    let probe: Value = serde_json::from_slice(&runs[0].2).map_err(|e| e.to_string())?;
    for (key, forest) in [("forest", "P4+P2"), ("matching", "3xP2")] {
        let colors: Vec<u32> = probe[key]["coloring"]
            .as_array()
            .ok_or("probe coloring missing")?
            .iter()
            .map(|c| c.as_u64().unwrap() as u32)
            .collect();
        let c = EdgeColoring::new(7, colors).map_err(|e| e.to_string())?;
        let out = find_rainbow(&c, &forest.parse().unwrap(), DetectBudget::unlimited()).map_err(|e| e.to_string())?;
        ensure(out.is_absent(), || format!("probe {key} certificate fails detection"))?;
    }
    let search: Value = serde_json::from_slice(&runs[0].0).map_err(|e| e.to_string())?;
    Ok(format!(
        "byte-identical over 2 runs and threads {{1,4}}; search best {} colors, probe {} / {} colors; certificates re-verify",
        search["best_colors"], probe["forest"]["colors"], probe["matching"]["colors"]
    ))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().to_path_buf();
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "matching formula vs exact search, smallest hosts",
            Box::new(criterion_1),
        ),
        (
            2,
            "known small values for P3+P2 and P3+2P2",
            Box::new({
                let p = path.clone();
                move || criterion_2(&p)
            }),
        ),
        (3, "matching construction vs formula grid", Box::new(criterion_3)),
        (4, "forest avoider witnesses", Box::new(criterion_4)),
        (5, "mu > max(beta1, beta2) on the region", Box::new(criterion_5)),
        (6, "all-ones composition maximizes omega", Box::new(criterion_6)),
        (7, "interval extent and identities", Box::new(criterion_7)),
        (8, "detector vs enumeration oracle", Box::new(criterion_8)),
        (
            9,
            "search and probe reproducibility",
            Box::new({
                let p = path.clone();
                move || criterion_9(&p)
            }),
        ),
    ];

    let mut failed = 0;
    for (id, name, check) in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(format!(
                "panicked: {:?}",
                e.downcast_ref::<String>()
                    .map(String::as_str)
                    .or(e.downcast_ref::<&str>().copied())
            ))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {id} PASS [{name}] ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} FAIL [{name}] ({secs:.1}s): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

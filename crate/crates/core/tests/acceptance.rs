//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.

mod common;

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use cuspfill::filling::{self, hk_window, min_admissible_twist, FILLING_GATE};
use cuspfill::verify;
use cuspfill::{cusp, twist_slope, Complex64, CuspShape, TheoremInput};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::frozen;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_budget(elapsed: Duration, budget: Duration) -> Result<(), String> {
    ensure(elapsed < budget, || {
        format!("runtime {elapsed:?} exceeds {budget:?}")
    })
}

fn ac1_thresholds() -> Outcome {
    let start = Instant::now();
    let mut thresholds = Vec::new();
    for g in 2..=50 {
        thresholds.push((g, min_admissible_twist(g).map_err(|e| e.to_string())?));
    }
    let elapsed = start.elapsed();
    for (g, n) in thresholds {
        let want = if g == 2 { 21 } else { 14 };
        ensure(n == want, || {
            format!("genus {g}: min twist {n}, want {want}")
        })?;
    }
    let r3 = common::r_eps(3);
    let at14 = filling::worst_case_l_squared_lo(14, r3);
    let at13 = filling::worst_case_l_squared_lo(13, r3);
    ensure(
        (at14 - 64.70).abs() < 0.01 && at14 > frozen::GATE_SQUARED,
        || format!("L² at n=14 is {at14}"),
    )?;
    ensure(
        (at13 - 54.22).abs() < 0.01 && at13 < frozen::GATE_SQUARED,
        || format!("L² at n=13 is {at13}"),
    )?;
    ensure(
        common::close(at14, frozen::L2_LO_G3_N14, 1e-14)
            && common::close(at13, frozen::L2_LO_G3_N13, 1e-14),
        || "frozen L² values drifted".into(),
    )?;
    within_budget(elapsed, Duration::from_millis(1))?;
    Ok(format!(
        "g=2 -> 21, g in 3..=50 -> 14; L²(14)={at14:.4}, L²(13)={at13:.4}; {elapsed:?}"
    ))
}

fn ac2_intro_containment() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    let mut tightest = f64::INFINITY;
    for g in 3..=20i64 {
        for n in 14..=200i64 {
            let input = TheoremInput::new(g, n).map_err(|e| e.to_string())?;
            let b = filling::theorem_bounds(input).map_err(|e| e.to_string())?;
            let (lo, hi) = (0.7 / (g * g * n * n) as f64, 34.3 / (n * n) as f64);
            ensure(lo < b.lo && b.hi < hi, || {
                format!("g={g} n={n}: ({}, {}) not inside ({lo}, {hi})", b.lo, b.hi)
            })?;
            tightest = tightest.min((hi - b.hi) / hi);
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    // 18 genera x 187 twist powers.
    ensure(cases == 3366, || format!("{cases} cases"))?;
    within_budget(elapsed, Duration::from_millis(100))?;
    Ok(format!(
        "{cases} cases strictly inside; tightest upper gap {tightest:.2e} relative; {elapsed:?}"
    ))
}

fn ac3_window_gate() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10_000 {
        let l = rng.random_range(FILLING_GATE..=1e3);
        let w = hk_window(l).map_err(|e| format!("L={l}: {e}"))?;
        let (lo, hi) = common::window(l);
        ensure(w.lo < w.hi, || format!("L={l}: empty window"))?;
        ensure(
            common::close(w.lo, lo, 1e-12) && common::close(w.hi, hi, 1e-12),
            || format!("L={l}: window off oracle"),
        )?;
        let below = rng.random_range(0.0..FILLING_GATE);
        ensure(hk_window(below).is_err(), || format!("L={below} accepted"))?;
    }
    ensure(hk_window(FILLING_GATE.next_down()).is_err(), || {
        "just below the gate accepted".into()
    })?;
    let w = hk_window(FILLING_GATE).map_err(|e| e.to_string())?;
    ensure(
        (w.lo - 0.08121).abs() <= 1e-6 && (w.hi - 0.19381).abs() <= 1e-6,
        || format!("gate window {w:?}"),
    )?;
    ensure(
        common::close(w.lo, frozen::WINDOW_AT_GATE.0, 1e-14)
            && common::close(w.hi, frozen::WINDOW_AT_GATE.1, 1e-14),
        || "frozen gate window drifted".into(),
    )?;
    Ok(format!("10^4 random L accepted with lo < hi, 10^4 below gate rejected; window at gate ({:.6}, {:.6})", w.lo, w.hi))
}

fn ac4_sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let start = Instant::now();
    let mut checked = 0u64;
    let mut shapes = 0;
    while shapes < 10_000 {
        let r = if shapes % 2 == 0 {
            common::r_eps(3)
        } else {
            common::r_eps(2)
        };
        let height = rng.random_range(0.5..2.0);
        let a = rng.random_range(2.0 * r..12.0);
        let tau_alpha = Complex64::from_polar(a * height, rng.random_range(0.0..2.0 * PI));
        let tau_beta = tau_alpha / a
            * Complex64::from_polar(
                rng.random_range(0.3..12.0),
                rng.random_range(0.05..PI - 0.05),
            );
        let Ok(shape) = CuspShape::new(tau_alpha, tau_beta, height) else {
            continue;
        };
        if shape.torus_area() < 2.0 * 3f64.sqrt() * r * r {
            continue;
        }
        shapes += 1;
        let (a, b) = shape.flat_lengths();
        for n in 1..=100 {
            let s = cusp::sandwich_eq2(a, b, r, n).map_err(|e| e.to_string())?;
            let l2 = shape.normalized_length(twist_slope(n)).powi(2);
            ensure(
                s.lo <= l2 * (1.0 + 1e-12) && l2 <= s.hi * (1.0 + 1e-12),
                || format!("shape {shape:?} n={n}: {l2} outside [{}, {}]", s.lo, s.hi),
            )?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    within_budget(elapsed, Duration::from_secs(2))?;
    Ok(format!(
        "{shapes} shapes x n in 1..=100 ({checked} checks), zero violations; {elapsed:?}"
    ))
}

fn ac5_lemma_campaign() -> Outcome {
    let start = Instant::now();
    let report = verify::lemma_campaign(10_000, 5);
    let elapsed = start.elapsed();
    ensure(report.trials == 10_000 && report.failures == 0, || {
        format!("{report:?}")
    })?;
    let again = verify::lemma_campaign(10_000, 5);
    ensure(report == again, || "campaign is not deterministic".into())?;
    // Per-chain detail on a sample: base case and loop separation.
    let mut worst_base: f64 = 0.0;
    let mut worst_shadow: f64 = 0.0;
    for i in 0..500u64 {
        let segments = 1 + (i % 10) as usize;
        let chain =
            verify::sample_chain(segments, verify::ALPHA_THRESHOLD, verify::derive_seed(5, i))
                .map_err(|e| e.to_string())?;
        let check = verify::inspect_chain(&chain);
        ensure(check.passed(), || format!("chain {i}: {check:?}"))?;
        worst_base = worst_base.max(check.max_base_case_error);
        worst_shadow = worst_shadow.max(check.max_shadow_distance);
    }
    ensure(worst_base <= 1e-9, || {
        format!("base case error {worst_base}")
    })?;
    ensure(worst_shadow <= 0.5 + 1e-9, || {
        format!("shadow distance {worst_shadow}")
    })?;
    within_budget(elapsed, Duration::from_secs(30))?;
    Ok(format!(
        "10^4 chains, 0 failures, worst margin {:.3e}; base error {worst_base:.1e}, max shadow {worst_shadow:.4}; deterministic; {elapsed:?}",
        report.worst_margin
    ))
}

fn ac6_fact_sweeps() -> Outcome {
    let shadows = verify::shadow_sweep(10_000, 6);
    ensure(shadows.trials == 10_000 && shadows.failures == 0, || {
        format!("shadow sweep {shadows:?}")
    })?;
    let crossings = verify::crossing_sweep(10_000, 6);
    ensure(
        crossings.trials == 10_000 && crossings.failures == 0,
        || format!("crossing sweep {crossings:?}"),
    )?;
    Ok(format!(
        "shadow pairs 0/10^4 failures (min 1/2 - radius {:.3e}); crossing pairs 0/10^4 misses",
        shadows.worst_margin
    ))
}

fn ac7_torus_area() -> Outcome {
    let start = Instant::now();
    let (report, scans) = verify::torus_area_suite(300).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.failures == 0, || format!("{report:?}"))?;
    for (r, scan) in &scans {
        let floor = 2.0 * 3f64.sqrt() * r * r;
        ensure(scan.min_area >= floor - 1e-6, || {
            format!("r={r}: {} below {floor}", scan.min_area)
        })?;
        ensure((scan.min_area - floor).abs() <= 1e-4, || {
            format!("r={r}: {} misses {floor}", scan.min_area)
        })?;
        // Either corner of the reduced domain gives the hexagonal lattice.
        let hex = Complex64::from_polar(1.0, PI / 3.0);
        ensure(
            (scan.argmin - hex).norm() <= 1e-6 || (scan.argmin + hex.conj()).norm() <= 1e-6,
            || format!("r={r}: argmin {}", scan.argmin),
        )?;
    }
    within_budget(elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "r in {{0.25, 0.5, 1}}: min area equals 2√3 r² at the hexagonal corner; {elapsed:?}"
    ))
}

fn ac8_cusp_identity() -> Outcome {
    let report = verify::cusp_area_suite(1_000, 8);
    ensure(report.failures == 0, || format!("{report:?}"))?;
    for g in 2..=30i64 {
        let (cap_a, cap_b) = filling::proposition_caps(g).map_err(|e| e.to_string())?;
        ensure(cap_a == 2.0 * PI * (g - 1) as f64 && cap_b == 5.0, || {
            format!("caps for g={g}: ({cap_a}, {cap_b})")
        })?;
        let r = common::r_eps(g);
        for n in [21i64, 50, 400] {
            let hi = filling::worst_case_l_squared_hi(g, n, r);
            let want = (cap_a * n as f64 + cap_b).powi(2) / (2.0 * 3f64.sqrt() * r * r);
            ensure(common::close(hi, want, 1e-12), || {
                format!("g={g} n={n}: L² hi {hi} vs {want}")
            })?;
        }
    }
    Ok(format!(
        "10^3 cusps: |area - length| <= 1e-12 (margin {:.2e}); caps (2π(g-1), 5) feed the pipeline",
        report.worst_margin
    ))
}

fn ac9_lattice_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for i in 0..10_000 {
        let height = rng.random_range(0.25..4.0);
        let phase = rng.random_range(0.0..2.0 * PI);
        let tau_alpha = Complex64::from_polar(rng.random_range(0.5..2.0) * height, phase);
        let angle = rng.random_range(0.1..PI - 0.1);
        let tau_beta = Complex64::from_polar(rng.random_range(0.5..2.0) * height, phase + angle);
        let shape = CuspShape::new(tau_alpha, tau_beta, height).map_err(|e| e.to_string())?;
        let brute = 0.5 * common::brute_systole(tau_alpha, tau_beta, height, 50);
        let rel = (shape.injectivity_radius() - brute).abs() / brute;
        ensure(rel <= 1e-9, || {
            format!("shape {i}: {} vs brute {brute}", shape.injectivity_radius())
        })?;
        worst = worst.max(rel);
    }
    Ok(format!(
        "10^4 shapes match brute force over |p|,|q| <= 50; worst relative gap {worst:.1e}"
    ))
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_cuspfill"))
        .args(args)
        .env_remove("CUSPFILL_PRECISION_DIGITS")
        .output()
        .expect("binary runs")
}

fn ac10_cli() -> Outcome {
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let goldens: &[(&[&str], &str, i32)] = &[
        (
            &["bounds", "--genus", "3", "--n", "14", "--format", "json"],
            "bounds_g3_n14.json",
            0,
        ),
        (
            &["bounds", "--genus", "2", "--n", "20"],
            "bounds_g2_n20.txt",
            2,
        ),
        (
            &[
                "cusp",
                "--tau-alpha",
                "1+0i",
                "--tau-beta",
                "0+1i",
                "--height",
                "1",
                "--slope",
                "3,4",
                "--format",
                "json",
            ],
            "cusp_square.json",
            0,
        ),
        (
            &["verify", "torus-area", "--trials", "300"],
            "verify_torus_area.txt",
            0,
        ),
        (
            &[
                "verify", "lemma", "--trials", "200", "--seed", "7", "--format", "json",
            ],
            "verify_lemma.json",
            0,
        ),
        (
            &["table", "--genus", "3..3", "--n", "14..16"],
            "table_g3.csv",
            0,
        ),
        (
            &["table", "--genus", "2..2", "--n", "19..21"],
            "table_g2.csv",
            0,
        ),
    ];
    for (args, name, code) in goldens {
        let out = cli(args);
        ensure(out.status.code() == Some(*code), || {
            format!("{args:?}: exit {:?}", out.status.code())
        })?;
        let want = std::fs::read(golden_dir.join(name)).map_err(|e| format!("{name}: {e}"))?;
        ensure(out.stdout == want, || {
            format!("{args:?} differs from {name}")
        })?;
    }
    let usage: &[&[&str]] = &[
        &["bounds", "--genus", "1", "--n", "14"],
        &[
            "cusp",
            "--tau-alpha",
            "1+0i",
            "--tau-beta",
            "0+1i",
            "--height",
            "1",
            "--slope",
            "2,4",
        ],
        &[
            "cusp",
            "--tau-alpha",
            "1+0i",
            "--tau-beta",
            "2+0i",
            "--height",
            "1",
            "--slope",
            "1,0",
        ],
        &["table", "--genus", "1..3", "--n", "14..16"],
        &[
            "table",
            "--genus",
            "3..3",
            "--n",
            "14..16",
            "--out",
            "/nonexistent-dir/t.csv",
        ],
    ];
    for args in usage {
        ensure(cli(args).status.code() == Some(1), || {
            format!("{args:?} should exit 1")
        })?;
    }
    let ok = cuspfill::TrialReport {
        trials: 1,
        failures: 0,
        worst_margin: 0.0,
        seed: 0,
        wall_ms: None,
    };
    let bad = cuspfill::TrialReport { failures: 1, ..ok };
    ensure(cuspfill::cli::verify_exit_code(&[ok, bad]) == 3, || {
        "failing report does not map to exit 3".into()
    })?;
    let args = ["verify", "all", "--trials", "1000", "--seed", "1"];
    let (a, b) = (cli(&args), cli(&args));
    ensure(a.status.code() == Some(0), || "verify all failed".into())?;
    ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || {
        "verify all reruns differ".into()
    })?;
    Ok(format!(
        "{} goldens byte-identical, exit codes 0/1/2/3 honored, verify all reruns identical",
        goldens.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("threshold reproduction", ac1_thresholds),
        ("intro-bound containment", ac2_intro_containment),
        ("filling-window gate", ac3_window_gate),
        ("sandwich soundness", ac4_sandwich),
        ("lemma campaign", ac5_lemma_campaign),
        ("fact sweeps", ac6_fact_sweeps),
        ("torus minimal area", ac7_torus_area),
        ("cusp identity", ac8_cusp_identity),
        ("lattice oracle equivalence", ac9_lattice_oracle),
        ("cli end-to-end", ac10_cli),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("AC{:<2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("AC{:<2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

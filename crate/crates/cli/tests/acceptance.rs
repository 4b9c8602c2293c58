//! Acceptance gate. One test per criterion; each prints a single
//! `[PASS]` / `[FAIL]` line (run with `--nocapture` to see them).

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use agip_core::reference::{Model, APPENDIX, DOMAIN_IDS};
use agip_core::report::KeyScores;
use agip_core::{
    agi_auc, agi_p, apply_scenario, auc, power_mean, rollup_domain, sample_curve,
    weighted_power_mean, Curve, CurveSample, EpsilonFloor, Exponent, PGrid,
    ScenarioEdit, Score,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EPS: EpsilonFloor = EpsilonFloor::DEFAULT;

fn report(id: u32, title: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("[PASS] criterion {id}: {title}");
    } else {
        println!("[FAIL] criterion {id}: {title}");
        for f in failures {
            println!("       - {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:#?}");
}

#[test]
fn criterion_1_key_score_table() {
    let start = Instant::now();
    let grid = PGrid::default();
    let mut failures = Vec::new();
    let labels = ["AGI_1", "AGI_0.5", "AGI_0", "AGI_-0.5", "AGI_-1", "AGI_AUC"];
    for m in Model::ALL {
        let ks = KeyScores::compute(&m.profile(), &grid, EPS).unwrap();
        for ((label, got), want) in labels.iter().zip(ks.columns()).zip(m.printed_key_scores()) {
            let want = want as f64;
            if got.round() != want || (got - want).abs() > 0.5 {
                failures.push(format!(
                    "{} {label}: computed {got:.4}% (rounds to {}), printed {want}",
                    m.name(),
                    got.round()
                ));
            }
        }
    }
    if start.elapsed() >= Duration::from_secs(1) {
        failures.push(format!("runtime {:?} >= 1s", start.elapsed()));
    }
    report(1, "key-score table reproduced at integer percent", &failures);
}

#[test]
fn criterion_2_appendix_tables() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let names = ["AM", "WAM", "GM", "WGM"];
    for table in &APPENDIX {
        for m in [Model::Gpt4, Model::Gpt5] {
            let t = table.subdomain_table(m).unwrap();
            let row = table.row(m).unwrap();
            let a = rollup_domain(&t, EPS).unwrap();
            let got = [a.am, a.wam, a.gm, a.wgm];
            for ((name, g), want) in names.iter().zip(got).zip(row.printed) {
                if (g - want).abs() > 0.05 {
                    failures.push(format!(
                        "{} {} {name}: computed {g:.4}, printed {want}",
                        table.domain_id,
                        m.name()
                    ));
                }
            }
        }
    }
    // Rows called out explicitly.
    let check = |domain: &str, m: Model, idx: usize, want: f64, failures: &mut Vec<String>| {
        let t = APPENDIX
            .iter()
            .find(|t| t.domain_id == domain)
            .unwrap()
            .subdomain_table(m)
            .unwrap();
        let a = rollup_domain(&t, EPS).unwrap();
        let got = [a.am, a.wam, a.gm, a.wgm][idx];
        if (got - want).abs() > 0.05 {
            failures.push(format!("{domain} {}: {got} vs {want}", m.name()));
        }
    };
    check("S", Model::Gpt4, 2, 0.01, &mut failures);
    check("S", Model::Gpt5, 3, 0.01, &mut failures);
    check("K", Model::Gpt4, 2, 6.3, &mut failures);
    check("RW", Model::Gpt4, 3, 16.0, &mut failures);
    check("R", Model::Gpt5, 3, 19.0, &mut failures);
    // Closed form for the speed tables: three subdomains at 100, seven at 0.
    let s = APPENDIX[9].subdomain_table(Model::Gpt4).unwrap();
    let a = rollup_domain(&s, EPS).unwrap();
    let closed = 100.0 * 1e-6f64.powf(0.7);
    if (a.gm - closed).abs() > 1e-12 || (a.wgm - closed).abs() > 1e-12 {
        failures.push(format!("speed GM {} / WGM {} vs closed form {closed}", a.gm, a.wgm));
    }
    if start.elapsed() >= Duration::from_secs(1) {
        failures.push(format!("runtime {:?} >= 1s", start.elapsed()));
    }
    report(2, "appendix AM/WAM/GM/WGM within 0.05 points", &failures);
}

#[test]
fn criterion_3_quadrature_convergence() {
    let mut failures = Vec::new();
    let fine = PGrid::new(-1.0, 1.0, 401).unwrap();
    for m in Model::ALL {
        let p = m.profile();
        let a = agi_auc(&p, &PGrid::default(), EPS).unwrap().value();
        let b = agi_auc(&p, &fine, EPS).unwrap().value();
        if (a - b).abs() >= 1e-4 {
            failures.push(format!("{}: |{a} - {b}| >= 1e-4", m.name()));
        }
    }
    for n in [2usize, 3, 10, 201, 401, 1000] {
        for (slope, intercept) in [(0.5, 0.5), (-0.25, 0.6), (0.0, 0.3), (0.1, 0.45)] {
            let g = PGrid::new(-1.0, 1.0, n).unwrap();
            let samples = g
                .points()
                .map(|p| CurveSample {
                    p,
                    value: intercept + slope * p,
                })
                .collect();
            let got = auc(&Curve::new("affine", samples).unwrap()).unwrap().value();
            if (got - intercept).abs() >= 1e-12 {
                failures.push(format!("affine n={n} slope={slope}: {got} vs {intercept}"));
            }
        }
    }
    report(3, "grid doubling < 1e-4 and trapezoid exact on affine curves", &failures);
}

// Independent textbook formulas for the oracle checks.
fn oracle(v: &[f64], p: f64) -> f64 {
    let f: Vec<f64> = v.iter().map(|x| x.max(1e-6)).collect();
    let n = f.len() as f64;
    if p == 0.0 {
        (f.iter().map(|x| x.ln()).sum::<f64>() / n).exp()
    } else if p == 1.0 {
        f.iter().sum::<f64>() / n
    } else if p == -1.0 {
        n / f.iter().map(|x| 1.0 / x).sum::<f64>()
    } else {
        (f.iter().map(|x| x.powf(p)).sum::<f64>() / n).powf(1.0 / p)
    }
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

#[test]
fn criterion_4_power_mean_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let grid: Vec<f64> = PGrid::new(-1.0, 1.0, 41).unwrap().points().collect();
    let mut failures = Vec::new();
    let mut fail = |msg: String| {
        if failures.len() < 20 {
            failures.push(msg);
        }
    };
    const CASES: usize = 1000;
    for case in 0..CASES {
        let n = rng.gen_range(1..=12);
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(0..=100) as f64 / 100.0).collect();
        let s: Vec<Score> = v.iter().map(|&x| Score::new(x).unwrap()).collect();
        let pm = |s: &[Score], p: f64| power_mean(s, Exponent::new(p).unwrap(), EPS).unwrap().value();

        let floored: Vec<f64> = v.iter().map(|x| x.max(1e-6)).collect();
        let lo = floored.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = floored.iter().copied().fold(0.0, f64::max);
        let all_equal = lo == hi;

        let curve: Vec<f64> = grid.iter().map(|&p| pm(&s, p)).collect();
        for (k, w) in curve.windows(2).enumerate() {
            let ok = if all_equal { w[1] == w[0] } else { w[1] > w[0] };
            if !ok {
                fail(format!("case {case}: monotonicity at p={} ({v:?})", grid[k + 1]));
            }
        }
        for (&p, &m) in grid.iter().zip(&curve) {
            if !(lo <= m && m <= hi) {
                fail(format!("case {case}: bounds at p={p}"));
            }
        }

        let mut shuffled: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            shuffled.swap(i, rng.gen_range(0..=i));
        }
        let perm: Vec<Score> = shuffled.iter().map(|&i| s[i]).collect();
        let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(1..=40) as f64).collect();
        let perm_w: Vec<f64> = shuffled.iter().map(|&i| weights[i]).collect();
        for &p in &grid {
            let e = Exponent::new(p).unwrap();
            if pm(&s, p).to_bits() != pm(&perm, p).to_bits() {
                fail(format!("case {case}: permutation changed result at p={p}"));
            }
            let a = weighted_power_mean(&s, &weights, e, EPS).unwrap();
            let b = weighted_power_mean(&perm, &perm_w, e, EPS).unwrap();
            if a.value().to_bits() != b.value().to_bits() {
                fail(format!("case {case}: weighted permutation changed result at p={p}"));
            }
        }

        let positive: Vec<Score> = v
            .iter()
            .map(|&x| Score::new(x.max(0.01)).unwrap())
            .collect();
        let c: f64 = rng.gen_range(0.01..=1.0);
        let scaled: Vec<Score> = positive
            .iter()
            .map(|x| Score::new(x.value() * c).unwrap())
            .collect();
        for &p in &grid {
            if !rel_close(pm(&scaled, p), c * pm(&positive, p), 1e-12) {
                fail(format!("case {case}: homogeneity at p={p}, c={c}"));
            }
        }

        let equal = vec![rng.gen_range(1..=40) as f64; n];
        for p in [Exponent::ARITHMETIC, Exponent::GEOMETRIC] {
            let w = weighted_power_mean(&s, &equal, p, EPS).unwrap().value();
            let u = power_mean(&s, p, EPS).unwrap().value();
            if !rel_close(w, u, 1e-12) {
                fail(format!("case {case}: equal-weight collapse at p={}", p.value()));
            }
        }

        for p in [1.0, 0.0, -1.0] {
            if !rel_close(pm(&s, p), oracle(&v, p), 1e-12) {
                fail(format!("case {case}: oracle mismatch at p={p}"));
            }
        }
    }
    report(
        4,
        &format!("power-mean properties over {CASES} random profiles"),
        &failures,
    );
}

fn trapezoid_oracle(v: &[f64], n: usize) -> f64 {
    let ps: Vec<f64> = (0..n).map(|k| -1.0 + 2.0 * k as f64 / (n - 1) as f64).collect();
    let ys: Vec<f64> = ps.iter().map(|&p| oracle(v, p)).collect();
    let area: f64 = (0..n - 1)
        .map(|k| (ps[k + 1] - ps[k]) * (ys[k] + ys[k + 1]) / 2.0)
        .sum();
    area / 2.0
}

#[test]
fn criterion_5_gpt6_scenario() {
    let mut failures = Vec::new();
    let grid = PGrid::default();
    let gpt5 = Model::Gpt5.profile();
    let gpt6 = apply_scenario(
        &gpt5,
        &[ScenarioEdit::new("MS", Score::from_percent(30.0).unwrap())],
    )
    .unwrap();

    let a1 = agi_p(&gpt6, Exponent::ARITHMETIC, EPS).unwrap().percent();
    if a1.round() != 61.0 || (a1 - 61.0).abs() > 1e-9 {
        failures.push(format!("AGI_1 = {a1}, expected 61"));
    }
    let v6: Vec<f64> = gpt6.scores().iter().map(|s| s.value()).collect();
    let oracle_auc = trapezoid_oracle(&v6, 201) * 100.0;
    let got_auc = agi_auc(&gpt6, &grid, EPS).unwrap().percent();
    if (got_auc - 55.0).abs() > 1.0 || (oracle_auc - 55.0).abs() > 1.0 {
        failures.push(format!("AGI_AUC {got_auc}, oracle {oracle_auc}, expected 55 ± 1"));
    }
    if (got_auc - oracle_auc).abs() > 1e-8 {
        failures.push(format!("AGI_AUC {got_auc} disagrees with oracle {oracle_auc}"));
    }
    let base_auc = agi_auc(&gpt5, &grid, EPS).unwrap().percent();
    let base_a1 = agi_p(&gpt5, Exponent::ARITHMETIC, EPS).unwrap().percent();
    if !(got_auc > base_auc && a1 > base_a1) {
        failures.push("scenario did not raise both metrics".into());
    }

    for m in Model::ALL {
        let base = m.profile();
        let base_curve = sample_curve(&base, &grid, EPS).unwrap();
        let base_area = auc(&base_curve).unwrap();
        for id in DOMAIN_IDS {
            let cur = base.score_of(id).unwrap().value();
            for target in [0.1, 0.3, 0.5, 0.9, 1.0] {
                if target <= cur {
                    continue;
                }
                let raised = apply_scenario(
                    &base,
                    &[ScenarioEdit::new(id, Score::new(target).unwrap())],
                )
                .unwrap();
                let c = sample_curve(&raised, &grid, EPS).unwrap();
                if c
                    .samples
                    .iter()
                    .zip(&base_curve.samples)
                    .any(|(a, b)| a.value < b.value)
                    || auc(&c).unwrap() < base_area
                {
                    failures.push(format!("{} raising {id} to {target} lowered a score", m.name()));
                }
            }
        }
    }
    report(5, "GPT-6 scenario and monotone response", &failures);
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run_twice(args: &[String]) -> (Vec<u8>, Vec<u8>, bool) {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_agip"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let (a, b) = (run(), run());
    (a.stdout, b.stdout, a.status.success() && b.status.success())
}

#[test]
fn criterion_6_determinism() {
    let mut failures = Vec::new();
    let invocations: Vec<Vec<String>> = vec![
        vec!["report".into(), data("gpt4.profile"), data("gpt5.profile"), data("agi.profile")],
        vec!["curve".into(), data("gpt5.profile")],
        vec![
            "envelope".into(),
            data("gpt5.profile"),
            "--scale".into(),
            "0.05".into(),
            "--samples".into(),
            "1000".into(),
            "--seed".into(),
            "42".into(),
        ],
    ];
    for args in &invocations {
        let (a, b, ok) = run_twice(args);
        if !ok || a.is_empty() {
            failures.push(format!("`{}` failed", args[0]));
        } else if a != b {
            failures.push(format!("`{}` output differs between runs", args[0]));
        }
    }
    report(6, "report/curve/envelope byte-identical across runs", &failures);
}

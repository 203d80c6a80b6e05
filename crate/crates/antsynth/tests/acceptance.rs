//! Acceptance suite: every criterion runs, prints one PASS/FAIL line, and
//! the test fails if any criterion does.
//!
//! Run with `cargo test -p antsynth --test acceptance -- --nocapture` to see
//! the report.

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use antsynth::experiment::{compare, uniform_fitness, CONVERGENCE_FILE, SUMMARY_FILE, UNIFORM_ROW};
use antsynth::{load_config, run_experiment, ExperimentConfig};
use antsynth_core::array::{
    array_factor, compute_pattern, main_lobe_bounds, side_lobe_level, AngleGrid, ArrayGeometry, Excitation,
};
use antsynth_core::baseline::{ga_optimize, pso_optimize, GaParams, PsoParams};
use antsynth_core::mask::{build_mask, fitness, fitness_of_levels, NullSector};
use antsynth_core::noabs::{
    beam_balance, benefit_rate_no_bridge, bridge_rate, effective_foragers, even_stations, propose_bridge, NoabsParams,
    REID_ALPHA,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(condition: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message())
    }
}

fn relative_error(value: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        value.abs()
    } else {
        ((value - expected) / expected).abs()
    }
}

fn example_config(output_dir: &Path) -> ExperimentConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/nulls_50_120.toml");
    let mut config = load_config(&path).expect("example config loads");
    config.output_dir = output_dir.to_path_buf();
    config
}

/// Direct complex summation over all elements on both sides of the center.
fn oracle_magnitude(amplitudes: &[f64], theta_deg: f64) -> f64 {
    let u = theta_deg.to_radians().cos();
    let (mut re, mut im) = (0.0, 0.0);
    for (i, a) in amplitudes.iter().enumerate() {
        let d = (2 * i + 1) as f64 * 0.25;
        for side in [-1.0, 1.0] {
            let phase = std::f64::consts::TAU * side * d * u;
            re += a * phase.cos();
            im += a * phase.sin();
        }
    }
    re.hypot(im)
}

fn oracle_db(amplitudes: &[f64], theta_deg: f64, peak: f64) -> f64 {
    (20.0 * (oracle_magnitude(amplitudes, theta_deg) / peak).log10()).max(-120.0)
}

fn economics() -> Outcome {
    let cases = [
        ("rate N=10 L_T=4 L_A=1", benefit_rate_no_bridge(10, 4.0, 1.0), 2.0),
        ("rate N=30 L_T=6 L_A=0", benefit_rate_no_bridge(30, 6.0, 0.0), 5.0),
        ("rate N=100 L_T=3 L_A=2", benefit_rate_no_bridge(100, 3.0, 2.0), 20.0),
        ("foragers N=50 n_b=0", effective_foragers(50, 0, REID_ALPHA), 50.0),
        ("foragers N=50 n_b=17 alpha=1", effective_foragers(50, 17, 1.0), 33.0),
        ("foragers N=100 n_b=17", effective_foragers(100, 17, REID_ALPHA), 100.0 - 17.0 / 17.02),
        ("bridge N=40 n_b=0 f=4", bridge_rate(40, 0, REID_ALPHA, 4.0), 10.0),
        ("bridge N=100 n_b=17 f=2", bridge_rate(100, 17, REID_ALPHA, 2.0), (100.0 - 17.0 / 17.02) / 2.0),
    ];
    let mut worst: f64 = 0.0;
    for (name, value, expected) in cases {
        let value = value.map_err(|e| format!("{name}: {e}"))?;
        let err = relative_error(value, expected);
        ensure(err <= 1e-12, || format!("{name}: {value} vs {expected}"))?;
        worst = worst.max(err);
    }
    ensure(REID_ALPHA == 17.02, || format!("alpha is {REID_ALPHA}"))?;
    let rho = bridge_rate(100, 17, REID_ALPHA, 2.0).unwrap();
    ensure((rho - 49.50058).abs() < 1e-5, || format!("rho = {rho}"))?;

    // One coordinate, span 0.45, 0.1 per builder: five builders.
    let base = NoabsParams { colony_size: 40, ..NoabsParams::default() };
    let five = propose_bridge((0, &[0.0]), (1, &[0.45]), &base).map_err(|e| e.to_string())?;
    ensure(five.bridge_ants == 5 && five.accepted, || format!("{five:?}"))?;
    let err = relative_error(five.rate_with * five.span, 40.0 - 5.0 / 17.02);
    ensure(err <= 1e-12, || format!("accepted bridge rate off by {err}"))?;
    worst = worst.max(err);

    let capped = |detour_factor| NoabsParams { alpha: 1.0, detour_factor, span_per_ant: 0.01, ..base.clone() };
    let wide = propose_bridge((0, &[0.0]), (1, &[1.0]), &capped(2.0)).map_err(|e| e.to_string())?;
    ensure(wide.bridge_ants == 20 && wide.accepted, || format!("{wide:?}"))?;
    let short_detour = propose_bridge((0, &[0.0]), (1, &[1.0]), &capped(0.2)).map_err(|e| e.to_string())?;
    ensure(!short_detour.accepted, || format!("{short_detour:?}"))?;
    Ok(format!("11 examples, worst relative error {worst:.1e}; accept and reject branches hold"))
}

fn broadside_and_symmetry() -> Outcome {
    let geometry = ArrayGeometry::uniform(10, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let (mut worst_broadside, mut worst_mirror): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let amplitudes: Vec<f64> = (0..10).map(|_| rng.random_range(0.0..1.0)).collect();
        let expected = 2.0 * amplitudes.iter().sum::<f64>();
        let excitation = Excitation::from_amplitudes(amplitudes).unwrap();
        let af = array_factor(&geometry, &excitation, 90.0).map_err(|e| e.to_string())?;
        worst_broadside = worst_broadside.max(relative_error(af.norm(), expected));

        let pattern = compute_pattern(&geometry, &excitation, 0.25, -120.0).map_err(|e| e.to_string())?;
        let linear = pattern.af_linear();
        let n = linear.len() - 1;
        for i in 0..=n {
            worst_mirror = worst_mirror.max((linear[i] - linear[n - i]).abs());
        }
    }
    ensure(worst_broadside <= 1e-12, || format!("broadside relative error {worst_broadside:e}"))?;
    ensure(worst_mirror <= 1e-9, || format!("mirror mismatch {worst_mirror:e}"))?;
    Ok(format!("100 sets: broadside error {worst_broadside:.1e}, mirror error {worst_mirror:.1e}"))
}

fn uniform_reference() -> Outcome {
    let uniform = [1.0; 10];
    // Dense brute-force scan.
    let step = 0.01;
    let mags: Vec<f64> = (0..=18_000).map(|i| oracle_magnitude(&uniform, i as f64 * step)).collect();
    let peak_at = (0..mags.len()).max_by(|&i, &j| mags[i].total_cmp(&mags[j])).unwrap();
    let (mut low, mut high) = (peak_at, peak_at);
    while low > 0 && mags[low - 1] < mags[low] {
        low -= 1;
    }
    while high + 1 < mags.len() && mags[high + 1] < mags[high] {
        high += 1;
    }
    let lobe = (1..mags.len() - 1)
        .filter(|&i| (i < low || i > high) && mags[i] > mags[i - 1] && mags[i] > mags[i + 1])
        .map(|i| mags[i])
        .fold(0.0, f64::max);
    let oracle_sll = 20.0 * (lobe / mags[peak_at]).log10();
    let (oracle_low, oracle_high) = (low as f64 * step, high as f64 * step);
    ensure((oracle_sll - -13.2).abs() <= 0.3, || format!("oracle SLL {oracle_sll}"))?;
    ensure((oracle_low - 84.26).abs() <= 0.011 && (oracle_high - 95.74).abs() <= 0.011, || {
        format!("oracle nulls {oracle_low} / {oracle_high}")
    })?;

    let geometry = ArrayGeometry::uniform(10, 0.5).unwrap();
    let pattern = compute_pattern(&geometry, &Excitation::uniform(10), 0.25, -120.0).map_err(|e| e.to_string())?;
    let sll = side_lobe_level(&pattern).map_err(|e| e.to_string())?;
    let (lo, hi) = main_lobe_bounds(&pattern);
    ensure((sll - -13.2).abs() <= 0.3, || format!("SLL {sll}"))?;
    ensure((sll - oracle_sll).abs() <= 0.3, || format!("SLL {sll} vs oracle {oracle_sll}"))?;
    ensure((lo - 84.26).abs() <= 0.25 && (hi - 95.74).abs() <= 0.25, || format!("nulls {lo} / {hi}"))?;
    Ok(format!("SLL {sll:.3} dB (oracle {oracle_sll:.3}), first nulls {lo:.2}/{hi:.2} deg"))
}

fn fitness_functional() -> Outcome {
    let grid = AngleGrid::new(0.25).unwrap();
    let geometry = ArrayGeometry::uniform(10, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(404);

    let mut zero_cases = 0;
    for _ in 0..200 {
        let amplitudes: Vec<f64> = (0..10).map(|_| rng.random_range(0.0..1.0)).collect();
        let main = (rng.random_range(70.0..88.0), rng.random_range(92.0..110.0));
        let ceiling = rng.random_range(-20.0..0.0);
        let mask = build_mask(grid, main, ceiling, &[]).unwrap();
        let Ok(excitation) = Excitation::from_amplitudes(amplitudes) else { continue };
        let Ok(pattern) = compute_pattern(&geometry, &excitation, 0.25, -120.0) else { continue };
        let compliant = pattern.af_db().iter().zip(mask.afd_db()).all(|(a, d)| a <= d);
        let value = fitness(&pattern, &mask).unwrap();
        ensure(value >= 0.0 && (value == 0.0) == compliant, || format!("fitness {value}, compliant {compliant}"))?;
        zero_cases += usize::from(compliant);
    }
    ensure(zero_cases > 0, || "no compliant case was sampled".into())?;

    let mask = build_mask(grid, (85.0, 95.0), -20.0, &[NullSector::new(50.0, 1.0, -60.0)]).unwrap();
    for c in [0.5, 1.0, 3.5, 12.0] {
        let levels: Vec<f64> = mask.afd_db().iter().map(|d| d + c).collect();
        let value = fitness_of_levels(&levels, &mask).unwrap();
        ensure(value == c * 180.0, || format!("constant {c}: {value}"))?;
    }
    let mut worst_constant: f64 = 0.0;
    for _ in 0..100 {
        let c = rng.random_range(0.01..30.0);
        let levels: Vec<f64> = mask.afd_db().iter().map(|d| d + c).collect();
        worst_constant = worst_constant.max(relative_error(fitness_of_levels(&levels, &mask).unwrap(), c * 180.0));
    }
    ensure(worst_constant <= 1e-12, || format!("constant violation error {worst_constant:e}"))?;

    let (mut worst_oracle, mut over): (f64, usize) = (0.0, 0);
    for _ in 0..20 {
        let amplitudes: Vec<f64> = (0..10).map(|_| rng.random_range(0.05..1.0)).collect();
        let main = (rng.random_range(80.0..86.0), rng.random_range(94.0..100.0));
        let ceiling = rng.random_range(-30.0..-10.0);
        let nulls = [
            NullSector::new(rng.random_range(20.0..70.0), 1.0, -60.0),
            NullSector::new(rng.random_range(110.0..160.0), 2.0, -50.0),
        ];
        let mask = build_mask(grid, main, ceiling, &nulls).unwrap();
        let excitation = Excitation::from_amplitudes(amplitudes.clone()).unwrap();
        let value = fitness(&compute_pattern(&geometry, &excitation, 0.25, -120.0).unwrap(), &mask).unwrap();

        let peak = 2.0 * amplitudes.iter().sum::<f64>();
        let step = 0.01;
        let reference: f64 = (0..18_000)
            .map(|i| {
                let t = (i as f64 + 0.5) * step;
                let desired = if t >= main.0 && t <= main.1 {
                    0.0
                } else {
                    nulls
                        .iter()
                        .filter(|s| (t - s.center_deg).abs() <= s.half_width_deg)
                        .fold(ceiling, |c, s| c.min(s.depth_db))
                };
                (oracle_db(&amplitudes, t, peak) - desired).max(0.0) * step
            })
            .sum();
        let err = relative_error(value, reference);
        worst_oracle = worst_oracle.max(err);
        over += usize::from(err > 0.01);
    }
    ensure(worst_oracle <= 0.01, || {
        format!("{over} of 20 random pairs exceed 1% of the midpoint oracle, worst {:.2}%", 100.0 * worst_oracle)
    })?;
    Ok(format!(
        "zero iff compliant on 200 pairs ({zero_cases} compliant), c*180 exact, oracle error {:.3}%",
        100.0 * worst_oracle
    ))
}

fn force_balance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let (mut worst_fy, mut worst_moment): (f64, f64) = (0.0, 0.0);
    for _ in 0..1000 {
        let count = rng.random_range(1..=25);
        let loads: Vec<f64> = (0..count).map(|_| rng.random_range(0.0..1.0)).collect();
        let balance = beam_balance(&even_stations(count), &loads).map_err(|e| e.to_string())?;
        worst_fy = worst_fy.max(balance.sum_fy);
        worst_moment = worst_moment.max(balance.sum_moment);
        ensure(balance.sum_fx == 0.0, || "lateral residual".into())?;

        let mirrored: Vec<f64> = loads.iter().chain(loads.iter().rev()).copied().collect();
        let symmetric = beam_balance(&even_stations(mirrored.len()), &mirrored).map_err(|e| e.to_string())?;
        ensure(symmetric.reaction_a == symmetric.reaction_b, || {
            format!("symmetric reactions {} vs {}", symmetric.reaction_a, symmetric.reaction_b)
        })?;
    }
    ensure(worst_fy <= 1e-12 && worst_moment <= 1e-12, || format!("residuals {worst_fy:e} / {worst_moment:e}"))?;
    Ok(format!("1000 load sets: max |sum Fy| {worst_fy:.1e}, max |sum Ma| {worst_moment:.1e}; symmetric R_A = R_B"))
}

fn end_to_end() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let config = example_config(tmp.path());
    ensure(
        config.optimizer.name == "noabs" && config.optimizer.noabs.colony_size == 40 && config.iterations == 500,
        || "example config drifted".into(),
    )?;
    let started = Instant::now();
    let summary = run_experiment(&config).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed().as_secs_f64();

    let history: Vec<f64> = fs::read_to_string(tmp.path().join(CONVERGENCE_FILE))
        .unwrap()
        .lines()
        .skip(1)
        .map(|line| line.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    ensure(history.len() == 500, || format!("{} history entries", history.len()))?;
    ensure(history.windows(2).all(|w| w[1] <= w[0]), || "history increases".into())?;
    let sll = summary.sll_db.ok_or("no side lobes")?;
    ensure(sll <= -17.2, || format!("SLL {sll}"))?;
    for null in &summary.null_depths {
        ensure(null.depth_db <= -40.0, || format!("null at {} is {} dB", null.angle_deg, null.depth_db))?;
    }
    ensure(summary.null_depths.len() == 2, || "two nulls expected".into())?;
    ensure(elapsed < 30.0, || format!("took {elapsed:.1} s"))?;
    Ok(format!(
        "fitness {:.4}, SLL {sll:.2} dB, nulls {:.1}/{:.1} dB, {:.1} s",
        summary.best_fitness, summary.null_depths[0].depth_db, summary.null_depths[1].depth_db, elapsed
    ))
}

fn determinism() -> Outcome {
    let (a, b, c) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let mut config = example_config(a.path());
    config.iterations = 100;
    run_experiment(&config).map_err(|e| e.to_string())?;
    config.output_dir = b.path().to_path_buf();
    run_experiment(&config).map_err(|e| e.to_string())?;
    config.output_dir = c.path().to_path_buf();
    config.seed += 1;
    run_experiment(&config).map_err(|e| e.to_string())?;

    let read = |dir: &Path, file: &str| fs::read(dir.join(file)).unwrap();
    for file in [SUMMARY_FILE, CONVERGENCE_FILE] {
        ensure(read(a.path(), file) == read(b.path(), file), || format!("{file} differs between runs"))?;
        ensure(read(a.path(), file) != read(c.path(), file), || format!("{file} ignores the seed"))?;
    }
    Ok("summary.json and convergence.csv byte-identical; a new seed changes both".into())
}

fn comparison() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let config = example_config(tmp.path());
    let names: Vec<String> = ["noabs", "pso", "ga"].iter().map(|s| s.to_string()).collect();
    let rows = compare(&config, &names).map_err(|e| e.to_string())?;
    let baseline = uniform_fitness(&config).map_err(|e| e.to_string())?;
    ensure(rows[0].optimizer == UNIFORM_ROW && rows[0].best_fitness == baseline, || "missing uniform row".into())?;
    let population = config.optimizer.noabs.colony_size;
    let budget = rows[1].evaluation_count;
    let mut table = vec![format!("uniform {baseline:.3}")];
    for row in &rows[1..] {
        ensure(row.best_fitness < baseline, || {
            format!("{} fitness {} vs uniform {baseline}", row.optimizer, row.best_fitness)
        })?;
        ensure(row.evaluation_count.abs_diff(budget) <= population, || {
            format!("{} spent {} evaluations, noabs {budget}", row.optimizer, row.evaluation_count)
        })?;
        table.push(format!("{} {:.3}", row.optimizer, row.best_fitness));
    }
    ensure(tmp.path().join("comparison.csv").is_file(), || "comparison.csv missing".into())?;
    Ok(format!("{} ({budget} evaluations each)", table.join(", ")))
}

fn baseline_sanity() -> Outcome {
    let sphere = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
    let pso = PsoParams { max_iterations: 300, ..PsoParams::default() };
    let ga = GaParams { max_iterations: 300, ..GaParams::default() };
    let pso = pso_optimize(&sphere, 10, &pso, &mut ChaCha8Rng::seed_from_u64(7)).map_err(|e| e.to_string())?;
    let ga = ga_optimize(&sphere, 10, &ga, &mut ChaCha8Rng::seed_from_u64(7)).map_err(|e| e.to_string())?;
    ensure(pso.best_fitness <= 1e-6, || format!("PSO {}", pso.best_fitness))?;
    ensure(ga.best_fitness <= 1e-3, || format!("GA {}", ga.best_fitness))?;
    Ok(format!("PSO {:.2e}, GA {:.2e}", pso.best_fitness, ga.best_fitness))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("bridge economics", economics),
        ("broadside identity and mirror symmetry", broadside_and_symmetry),
        ("uniform array reference", uniform_reference),
        ("fitness functional", fitness_functional),
        ("beam force balance", force_balance),
        ("end-to-end synthesis", end_to_end),
        ("determinism", determinism),
        ("comparison harness", comparison),
        ("baseline sanity", baseline_sanity),
    ];
    let mut failures = Vec::new();
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                println!("FAIL {}. {name}: {detail}", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

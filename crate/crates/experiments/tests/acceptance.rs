//! Acceptance suite: one line per criterion, PASS or FAIL, with the checks
//! that failed. Exits nonzero if any criterion fails.

use std::f64::consts::{PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use xlink_analytic::coplanar::evaluate_coplanar_with;
use xlink_analytic::shifted::evaluate_shifted;
use xlink_analytic::single::{beam_bound, blockage_bound, evaluate_single, sir_single};
use xlink_analytic::{CoplanarGeometry, ShiftedGeometry, Visibility};
use xlink_core::geometry::{
    plane_to_gec_matrix, rise_set_metric, segment_blocked_oracle, synodic_period,
};
use xlink_core::link::{cone_gain, cone_solid_angle, friis_rx_power};
use xlink_core::{EarthModel, OrbitSpec, RadioParams, Scenario, ScenarioKind, Vec3};
use xlink_experiments::analysis::{
    circular_burst_count, curves_cross, dip_depth, dominant_period, interference_db,
    interference_onset, matches_within_one_sample, zero_onset,
};
use xlink_experiments::figures::figure_config;
use xlink_experiments::sweeps::{sweep_single_orbit, SweepContext};
use xlink_experiments::{run_sweep, ScenarioConfig, SweepTable};
use xlink_oracle::{time_sweep, TimeGrid};

// Tolerances and limits.
const SINGLE_REL_TOL: f64 = 1e-9;
const SINGLE_DB_TOL: f64 = 1e-6;
const DROP_24_25_MIN_DB: f64 = 1.5;
const DROP_95_96_MAX_DB: f64 = 0.2;
const ALPHA5_MIN_RANGE_DB: (f64, f64) = (5.5, 7.0);
const COPLANAR_MIN_DB: f64 = -25.0;
const COPLANAR_MAX_DB: f64 = 0.0;
const PERIODIC_REL_TOL: f64 = 1e-6;
const BURSTS_IN_TWO_PERIODS: usize = 4;
const THRESHOLD_BEAMWIDTH_DEG: (f64, f64) = (5.0, 7.0);
const ONSET_ALPHA20_DEG: f64 = 9.0;
const ONSET_ALPHA30_DEG: f64 = 18.0;
const ONSET_TOL_DEG: f64 = 1.5;
const DIP_WINDOW_DEG: (f64, f64) = (14.0, 17.0);
const PROPERTY_TOL: f64 = 1e-12;
const RISE_SET_PAIRS: usize = 10_000;

const LIMIT_C1_S: f64 = 30.0;
const LIMIT_C4_S: f64 = 60.0;
const LIMIT_C6_S: f64 = 120.0;
const LIMIT_C7_S: f64 = 30.0;

const ALTITUDES_KM: [f64; 3] = [500.0, 1000.0, 2000.0];
const BEAMWIDTHS_DEG: [f64; 4] = [5.0, 10.0, 20.0, 30.0];

fn deg(x: f64) -> f64 {
    x.to_radians()
}

/// Named boolean checks gathered by one criterion.
#[derive(Default)]
struct Checks(Vec<(String, bool)>);

impl Checks {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.0.push((name.into(), ok));
    }
}

fn criterion(id: u32, title: &str, limit_s: Option<f64>, body: impl FnOnce(&mut Checks)) -> bool {
    let start = Instant::now();
    let mut checks = Checks::default();
    let outcome = catch_unwind(AssertUnwindSafe(|| body(&mut checks)));
    let elapsed = start.elapsed().as_secs_f64();
    if let Err(panic) = outcome {
        let msg = panic
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        checks.check(format!("aborted: {msg}"), false);
    }
    let time_note = match limit_s {
        Some(limit) => {
            checks.check(
                format!("runtime {elapsed:.1} s < {limit} s"),
                elapsed < limit,
            );
            format!("{elapsed:.1} s, limit {limit} s")
        }
        None => format!("{elapsed:.1} s"),
    };
    let failed: Vec<&str> = checks
        .0
        .iter()
        .filter(|c| !c.1)
        .map(|c| c.0.as_str())
        .collect();
    let total = checks.0.len();
    if failed.is_empty() {
        println!("criterion {id} ({title}): PASS [{total} checks, {time_note}]");
    } else {
        println!(
            "criterion {id} ({title}): FAIL [{} of {total} checks failed, {time_note}] {}",
            failed.len(),
            failed.join("; ")
        );
    }
    failed.is_empty()
}

fn figure(name: &str) -> ScenarioConfig {
    figure_config(name)
        .expect("figure exists")
        .expect("figure parses")
}

fn sweep(config: &ScenarioConfig) -> SweepTable {
    run_sweep(config).expect("sweep runs")
}

fn sir_db_or_inf(p: &xlink_experiments::Point) -> f64 {
    if p.no_interference() {
        f64::INFINITY
    } else {
        p.sir_db()
    }
}

fn radio(alpha_deg: f64) -> RadioParams {
    RadioParams::new(1.0, 1e-3, deg(alpha_deg)).unwrap()
}

fn c1_single_orbit_oracle_equivalence(c: &mut Checks) {
    let n_values: Vec<usize> = (10..=100).collect();
    let alphas: Vec<f64> = BEAMWIDTHS_DEG.iter().map(|a| deg(*a)).collect();
    let ctx = SweepContext::new(radio(30.0), 1);
    let mut cells = 0;
    for h in ALTITUDES_KM {
        let t = sweep_single_orbit(&ctx, h, &n_values, &alphas).unwrap();
        let (mut worst_rel, mut worst_db, mut emptiness) = (0.0f64, 0.0f64, true);
        for s in &t.series {
            for (a, o) in s.analytic.iter().zip(&s.oracle) {
                cells += 1;
                if a.no_interference() || o.no_interference() {
                    emptiness &= a.no_interference() == o.no_interference()
                        && a.interference_w == 0.0
                        && o.interference_w == 0.0;
                    continue;
                }
                let scale = a.interference_w.max(o.interference_w);
                worst_rel = worst_rel.max((a.interference_w - o.interference_w).abs() / scale);
                worst_db = worst_db.max((a.sir_db() - o.sir_db()).abs());
            }
        }
        c.check(format!("h={h}: same interferer-free cells"), emptiness);
        c.check(
            format!("h={h}: E[I] relative gap {worst_rel:e} ≤ {SINGLE_REL_TOL:e}"),
            worst_rel <= SINGLE_REL_TOL,
        );
        c.check(
            format!("h={h}: S gap {worst_db:e} dB ≤ {SINGLE_DB_TOL:e}"),
            worst_db <= SINGLE_DB_TOL,
        );
    }
    c.check(format!("{cells} grid cells compared"), cells == 91 * 4 * 3);
}

fn c2_drop_points(c: &mut Checks) {
    let t = sweep(&figure("fig4"));
    let ns = &t.axis_values;
    for method in ["analytic", "oracle"] {
        let curve = |alpha: &str| -> Vec<f64> {
            let s = t
                .series(&format!("alpha={alpha}deg"))
                .expect("series exists");
            let pts = if method == "analytic" {
                &s.analytic
            } else {
                &s.oracle
            };
            pts.iter().map(sir_db_or_inf).collect()
        };
        let at = |curve: &[f64], n: f64| curve[ns.iter().position(|x| *x == n).unwrap()];
        let s30 = curve("30");
        let d1 = at(&s30, 24.0) - at(&s30, 25.0);
        let d2 = at(&s30, 95.0) - at(&s30, 96.0);
        c.check(
            format!("{method}: α=30° S(24)−S(25) = {d1:.3} dB > {DROP_24_25_MIN_DB}"),
            d1 > DROP_24_25_MIN_DB,
        );
        c.check(
            format!("{method}: α=30° S(95)−S(96) = {d2:.3} dB < {DROP_95_96_MAX_DB}"),
            d2 < DROP_95_96_MAX_DB,
        );
        let min5 = curve("5").into_iter().fold(f64::INFINITY, f64::min);
        let (lo, hi) = ALPHA5_MIN_RANGE_DB;
        c.check(
            format!("{method}: α=5° min S = {min5:.3} dB in [{lo}, {hi}]"),
            (lo..=hi).contains(&min5),
        );
    }
}

fn c3_altitude_independence(c: &mut Checks) {
    let e = EarthModel::default();
    let (mut compared, mut mismatched) = (0, Vec::new());
    for alpha in BEAMWIDTHS_DEG.map(deg) {
        for n in 10..=100usize {
            let beam_active = ALTITUDES_KM
                .iter()
                .all(|h| beam_bound(n, alpha) < blockage_bound(n, *h, &e));
            if !beam_active {
                continue;
            }
            compared += 1;
            let bits: Vec<u64> = ALTITUDES_KM
                .iter()
                .map(|h| sir_single(n, *h, alpha, &e).unwrap().to_bits())
                .collect();
            if bits.iter().any(|b| *b != bits[0]) {
                mismatched.push(format!("N={n} α={:.0}°", alpha.to_degrees()));
            }
        }
    }
    c.check(
        format!("{compared} beam-limited grid points found"),
        compared > 0,
    );
    c.check(
        format!("S bit-identical across altitudes (mismatches: {mismatched:?})"),
        mismatched.is_empty(),
    );
}

fn c4_coplanar_dynamics(c: &mut Checks) {
    let mut config = figure("fig5a");
    let per_period = config.time.samples;
    config.time.periods = Some(2.0);
    config.time.samples = 2 * per_period;
    let t = sweep(&config);
    c.check(
        "analytic and oracle traces agree",
        t.max_db_discrepancy() < SINGLE_DB_TOL,
    );

    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in &t.series {
        for p in s.analytic.iter().filter(|p| !p.no_interference()) {
            lo = lo.min(p.sir_db());
            hi = hi.max(p.sir_db());
        }
        let (first, second) = s.analytic.split_at(per_period);
        c.check(
            format!("{}: repeats after one synodic period", s.label),
            matches_within_one_sample(first, second, PERIODIC_REL_TOL),
        );
    }
    c.check(
        format!("min S = {lo:.2} dB ≤ {COPLANAR_MIN_DB}"),
        lo <= COPLANAR_MIN_DB,
    );
    c.check(
        format!("max S = {hi:.2} dB ≥ {COPLANAR_MAX_DB}"),
        hi >= COPLANAR_MAX_DB,
    );

    let sweep_cfg = config.sweep.as_ref().unwrap();
    for alpha in &sweep_cfg.series.beamwidth {
        let a = format!("{}", (alpha.to_degrees() * 1e9).round() / 1e9);
        let mut counts = sweep_cfg.series.num_satellites.clone();
        counts.sort_unstable();
        for n in &counts {
            if !counts.contains(&(2 * n)) {
                continue;
            }
            let period = |n: usize| {
                let s = t.series(&format!("N={n};alpha={a}deg")).unwrap();
                dominant_period(&interference_db(&s.analytic[..per_period]))
            };
            let (p1, p2) = (period(*n), period(2 * n));
            c.check(
                format!("α={a}°: period N={n} {p1:?} > N={} {p2:?} samples", 2 * n),
                matches!((p1, p2), (Some(x), Some(y)) if y < x),
            );
        }
    }
}

fn c5_coplanar_separation(c: &mut Checks) {
    let t = sweep(&figure("fig5b"));
    let step = t.axis_values[1] - t.axis_values[0];
    let mut curves = Vec::new();
    for s in &t.series {
        let a = zero_onset(&t.axis_values, &s.analytic);
        let o = zero_onset(&t.axis_values, &s.oracle);
        c.check(
            format!(
                "{}: E[I] reaches 0 at finite separation ({a:?} km)",
                s.label
            ),
            a.is_some(),
        );
        if let Some(a) = a {
            let k = t.axis_values.iter().position(|x| *x == a).unwrap();
            c.check(
                format!("{}: E[I] stays exactly 0 beyond {a} km", s.label),
                s.analytic[k..].iter().all(|p| p.interference_w == 0.0),
            );
        }
        c.check(
            format!(
                "{}: analytic {a:?} and oracle {o:?} thresholds within one step",
                s.label
            ),
            matches!((a, o), (Some(a), Some(o)) if (a - o).abs() <= step + 1e-9),
        );
        curves.push(
            s.analytic
                .iter()
                .map(|p| p.interference_w)
                .collect::<Vec<f64>>(),
        );
    }
    let crossing = (0..curves.len())
        .flat_map(|i| (i + 1..curves.len()).map(move |j| (i, j)))
        .any(|(i, j)| curves_cross(&curves[i], &curves[j]));
    c.check("curves for two N values cross", crossing);
}

fn c6_shifted_structure(c: &mut Checks) {
    let config = figure("fig6a");
    let t = sweep(&config);
    let s = &t.series[0];
    for (method, trace) in [("analytic", &s.analytic), ("oracle", &s.oracle)] {
        let n = circular_burst_count(trace);
        c.check(
            format!("{method}: {n} bursts in two periods, expected {BURSTS_IN_TWO_PERIODS}"),
            n == BURSTS_IN_TWO_PERIODS,
        );
        let (first, second) = trace.split_at(trace.len() / 2);
        c.check(
            format!("{method}: repeats after one orbital period"),
            matches_within_one_sample(first, second, PERIODIC_REL_TOL),
        );
    }

    let t = sweep(&figure("fig6b"));
    let (lo, hi) = THRESHOLD_BEAMWIDTH_DEG;
    for s in &t.series {
        let onset = interference_onset(&t.axis_values, &s.analytic);
        c.check(
            format!(
                "{}: threshold beamwidth {onset:?}° in [{lo}, {hi}]",
                s.label
            ),
            matches!(onset, Some(a) if (lo..=hi).contains(&a)),
        );
    }

    let t = sweep(&figure("fig6c"));
    let step = t.axis_values[1] - t.axis_values[0];
    for s in &t.series {
        let target = if s.label.ends_with("alpha=20deg") {
            ONSET_ALPHA20_DEG
        } else {
            ONSET_ALPHA30_DEG
        };
        let a = zero_onset(&t.axis_values, &s.analytic);
        let o = zero_onset(&t.axis_values, &s.oracle);
        c.check(
            format!(
                "{}: no-interference onset {a:?}° within {target} ± {ONSET_TOL_DEG}°",
                s.label
            ),
            matches!(a, Some(g) if (g - target).abs() <= ONSET_TOL_DEG),
        );
        c.check(
            format!("{}: analytic and oracle onsets within one step", s.label),
            matches!((a, o), (Some(a), Some(o)) if (a - o).abs() <= step + 1e-9),
        );
    }
    let s = t.series("N=60;alpha=30deg").expect("series exists");
    let sir: Vec<f64> = s.analytic.iter().map(sir_db_or_inf).collect();
    let (lo, hi) = DIP_WINDOW_DEG;
    let depth = dip_depth(&t.axis_values, &sir, lo, hi);
    c.check(
        format!("N=60, α=30°: SIR dip of {depth:.2} dB inside γ ∈ [{lo}°, {hi}°]"),
        depth > 0.0,
    );
}

fn c7_properties(c: &mut Checks) {
    let e = EarthModel::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let worst_gain = (1..=3600)
        .map(|k| deg(k as f64 * 0.1))
        .map(|a| (cone_gain(a).unwrap() * cone_solid_angle(a) / (4.0 * PI) - 1.0).abs())
        .fold(0.0, f64::max);
    c.check(
        format!("G·Ω = 4π (worst {worst_gain:e})"),
        worst_gain < PROPERTY_TOL,
    );

    let mut worst_rot = 0.0f64;
    for _ in 0..10_000 {
        let m = plane_to_gec_matrix(rng.gen_range(0.0..TAU), rng.gen_range(0.0..PI));
        let ortho = (m * m.transpose() - xlink_core::Mat3::identity())
            .abs()
            .max();
        worst_rot = worst_rot.max(ortho).max((m.determinant() - 1.0).abs());
    }
    c.check(
        format!("rotations orthonormal, det 1 (worst {worst_rot:e})"),
        worst_rot < PROPERTY_TOL,
    );

    for h in ALTITUDES_KM {
        let a = e.radius_km + h;
        let (mut agree, mut tested) = (0, 0);
        let point = |rng: &mut ChaCha8Rng| {
            let z: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..TAU);
            let r = (1.0 - z * z).sqrt();
            Vec3::new(r * phi.cos(), r * phi.sin(), z) * a
        };
        let mut drawn = 0;
        while drawn < RISE_SET_PAIRS {
            let (p, q) = (point(&mut rng), point(&mut rng));
            drawn += 1;
            let metric = rise_set_metric(&p, &q, &e).unwrap();
            if metric.abs() < 1e-6 * a.powi(4) {
                continue;
            }
            tested += 1;
            if (metric <= 0.0) == !segment_blocked_oracle(&p, &q, &e) {
                agree += 1;
            }
        }
        c.check(
            format!("h={h}: rise/set sign agrees with segment test ({agree}/{tested})"),
            agree == tested && tested > RISE_SET_PAIRS * 9 / 10,
        );
    }

    let r = radio(30.0);
    let g = r.gain();
    let worst_friis = [1.0, 10.0, 123.0, 1e3, 4e3]
        .iter()
        .map(|d| {
            let p1 = friis_rx_power(&r, g, g, d * 1e3).unwrap();
            let p2 = friis_rx_power(&r, g, g, 2.0 * d * 1e3).unwrap();
            (p1 / p2 / 4.0 - 1.0).abs()
        })
        .fold(0.0, f64::max);
    c.check(
        format!("inverse-square Friis (worst {worst_friis:e})"),
        worst_friis < PROPERTY_TOL,
    );

    let mut worst_scale = 0.0f64;
    let mut note = |a: f64, b: f64| {
        let gap = if a.is_infinite() || b.is_infinite() {
            if a == b {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (a / b - 1.0).abs()
        };
        worst_scale = worst_scale.max(gap);
    };
    for k in [1e-3, 7.0, 1e4] {
        let scaled = RadioParams::new(k, 1e-3, deg(30.0)).unwrap();
        for n in [12, 40, 100] {
            note(
                evaluate_single(n, 500.0, &r, &e).unwrap().sir_linear,
                evaluate_single(n, 500.0, &scaled, &e).unwrap().sir_linear,
            );
        }
        let cg = CoplanarGeometry::new(500.0, 510.0, 20, 20, 0.05).unwrap();
        note(
            evaluate_coplanar_with(&cg, &r, Visibility::Exact, &e)
                .unwrap()
                .sir_linear,
            evaluate_coplanar_with(&cg, &scaled, Visibility::Exact, &e)
                .unwrap()
                .sir_linear,
        );
        let sg = ShiftedGeometry::new(500.0, deg(3.0), deg(110.0), 80, 80, 0.0).unwrap();
        for t in [0.0, 400.0, 1500.0] {
            note(
                evaluate_shifted(&sg, &r, t, &e).unwrap().sir_linear,
                evaluate_shifted(&sg, &scaled, t, &e).unwrap().sir_linear,
            );
        }
        let sc = |radio: RadioParams| {
            Scenario::new(
                ScenarioKind::Coplanar,
                e,
                vec![
                    OrbitSpec::equatorial(500.0, 20).unwrap(),
                    OrbitSpec::equatorial(510.0, 20).unwrap(),
                ],
                radio,
            )
            .unwrap()
        };
        let grid = TimeGrid::new(0.0, synodic_period(500.0, 510.0, &e).unwrap(), 50).unwrap();
        let base = time_sweep(&sc(r), &grid).unwrap();
        let other = time_sweep(&sc(scaled), &grid).unwrap();
        for (a, b) in base.iter().zip(&other) {
            note(a.sir_linear, b.sir_linear);
        }
    }
    c.check(
        format!("SIR invariant under common power scaling (worst {worst_scale:e})"),
        worst_scale < PROPERTY_TOL,
    );

    let mut config = figure("fig5b");
    config.time.samples = 100;
    let first = sweep(&config).to_csv_string().unwrap();
    let second = sweep(&config).to_csv_string().unwrap();
    let single_thread = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| sweep(&config).to_csv_string().unwrap());
    c.check("byte-identical CSV on re-run", first == second);
    c.check("byte-identical CSV on one thread", first == single_thread);
}

fn main() {
    let results = [
        criterion(
            1,
            "single-orbit oracle equivalence",
            Some(LIMIT_C1_S),
            c1_single_orbit_oracle_equivalence,
        ),
        criterion(2, "single-orbit drop points", None, c2_drop_points),
        criterion(3, "altitude independence", None, c3_altitude_independence),
        criterion(
            4,
            "co-planar dynamics",
            Some(LIMIT_C4_S),
            c4_coplanar_dynamics,
        ),
        criterion(
            5,
            "co-planar separation threshold",
            None,
            c5_coplanar_separation,
        ),
        criterion(
            6,
            "shifted-orbit structure",
            Some(LIMIT_C6_S),
            c6_shifted_structure,
        ),
        criterion(7, "property suites", Some(LIMIT_C7_S), c7_properties),
    ];
    let passed = results.iter().filter(|r| **r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}

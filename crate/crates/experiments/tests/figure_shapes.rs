//! Shape properties of the shifted-orbit figures beyond the acceptance
//! thresholds.

use xlink_experiments::analysis::rank_correlation;
use xlink_experiments::figures::figure_config;
use xlink_experiments::{run_sweep, Point};

fn sir_db_or_inf(p: &Point) -> f64 {
    if p.no_interference() {
        f64::INFINITY
    } else {
        p.sir_db()
    }
}

#[test]
fn sir_falls_stepwise_with_beamwidth() {
    let c = figure_config("fig6b").unwrap().unwrap();
    let t = run_sweep(&c).unwrap();
    for s in &t.series {
        let sir: Vec<f64> = s.analytic.iter().map(sir_db_or_inf).collect();
        // equal steps may differ in the last bits
        assert!(
            sir.windows(2).all(|w| w[1] <= w[0] + 1e-9),
            "{}: {sir:?}",
            s.label
        );
        assert!(sir[0].is_infinite() && sir[sir.len() - 1].is_finite());
    }
}

/// Higher inclination helps in general, though not monotonically: SIR also
/// sags just below each no-interference onset. Away from the documented dip
/// the ranks of γ and SIR agree closely.
#[test]
fn sir_tends_to_rise_with_inclination() {
    let c = figure_config("fig6c").unwrap().unwrap();
    let t = run_sweep(&c).unwrap();
    let keep: Vec<usize> = (0..t.axis_values.len())
        .filter(|&i| !(14.0..=17.0).contains(&t.axis_values[i]))
        .collect();
    let gamma: Vec<f64> = keep.iter().map(|&i| t.axis_values[i]).collect();
    for s in &t.series {
        let sir: Vec<f64> = keep
            .iter()
            .map(|&i| sir_db_or_inf(&s.analytic[i]))
            .collect();
        let rho = rank_correlation(&gamma, &sir);
        assert!(rho > 0.9, "{}: rank correlation {rho}", s.label);
    }
}

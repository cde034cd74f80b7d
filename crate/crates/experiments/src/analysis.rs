//! Shape checks on sweep curves: bursts, periods, thresholds and crossings.

use crate::table::Point;

/// Half-open index ranges of consecutive samples with interference.
pub fn bursts(trace: &[Point]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, p) in trace.iter().enumerate() {
        match (p.no_interference(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, i));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, trace.len()));
    }
    out
}

/// Bursts of a trace covering whole periods, counting a burst that runs over
/// the end of the window into its start once.
pub fn circular_burst_count(trace: &[Point]) -> usize {
    let b = bursts(trace);
    let wraps = b.len() > 1 && b[0].0 == 0 && b[b.len() - 1].1 == trace.len();
    b.len() - usize::from(wraps)
}

/// Whether two traces sampled on the same grid one period apart agree, each
/// sample allowed to match its counterpart or a neighbour of it.
pub fn matches_within_one_sample(a: &[Point], b: &[Point], rel_tol: f64) -> bool {
    let same = |x: &Point, y: &Point| {
        if x.no_interference() || y.no_interference() {
            return x.no_interference() == y.no_interference();
        }
        let scale = x.interference_w.abs().max(y.interference_w.abs());
        (x.interference_w - y.interference_w).abs() <= rel_tol * scale
    };
    a.len() == b.len()
        && a.iter().enumerate().all(|(k, x)| {
            let lo = k.saturating_sub(1);
            let hi = (k + 1).min(b.len() - 1);
            (lo..=hi).any(|j| same(x, &b[j]))
        })
}

/// Interference in dB with empty samples set 10 dB below the quietest
/// non-empty one, for shape comparisons.
pub fn interference_db(trace: &[Point]) -> Vec<f64> {
    let db: Vec<Option<f64>> = trace
        .iter()
        .map(|p| (p.interference_w > 0.0).then(|| 10.0 * p.interference_w.log10()))
        .collect();
    let floor = db.iter().flatten().copied().fold(f64::INFINITY, f64::min) - 10.0;
    let floor = if floor.is_finite() { floor } else { 0.0 };
    db.into_iter().map(|x| x.unwrap_or(floor)).collect()
}

/// Fundamental period of a trace that covers a whole number of periods, in
/// samples, from its circular autocorrelation: the first lag, after the
/// correlation has dropped below one half, whose correlation reaches 90% of
/// the best seen at any later lag, refined to the local peak.
pub fn dominant_period(x: &[f64]) -> Option<usize> {
    let n = x.len();
    if n < 4 {
        return None;
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    let d: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let r0: f64 = d.iter().map(|v| v * v).sum();
    if r0 == 0.0 {
        return None;
    }
    let r: Vec<f64> = (0..=n / 2)
        .map(|lag| (0..n).map(|i| d[i] * d[(i + lag) % n]).sum::<f64>() / r0)
        .collect();
    let drop = r.iter().position(|v| *v < 0.5)?;
    let best = r[drop..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut lag = drop + r[drop..].iter().position(|v| *v >= 0.9 * best)?;
    while lag + 1 < r.len() && r[lag + 1] > r[lag] {
        lag += 1;
    }
    Some(lag)
}

/// First axis value from which every later row has no interference, if some
/// earlier row does have interference.
pub fn zero_onset(axis: &[f64], curve: &[Point]) -> Option<f64> {
    let last = curve.iter().rposition(|p| !p.no_interference())?;
    axis.get(last + 1).copied()
}

/// First axis value with interference, if earlier rows have none.
pub fn interference_onset(axis: &[f64], curve: &[Point]) -> Option<f64> {
    let first = curve.iter().position(|p| !p.no_interference())?;
    (first > 0).then(|| axis[first])
}

/// Whether `a − b` changes sign across rows where at least one has
/// interference.
pub fn curves_cross(a: &[f64], b: &[f64]) -> bool {
    let signs: Vec<f64> = a
        .iter()
        .zip(b)
        .filter(|(x, y)| **x != 0.0 || **y != 0.0)
        .map(|(x, y)| (x - y).signum())
        .filter(|s| *s != 0.0)
        .collect();
    signs.windows(2).any(|w| w[0] != w[1])
}

/// Deepest local dip of `values` within `[lo, hi]` on the axis: how far a
/// point falls below the lower of the highest points before and after it
/// inside the window. Infinite values count as very high.
pub fn dip_depth(axis: &[f64], values: &[f64], lo: f64, hi: f64) -> f64 {
    let idx: Vec<usize> = (0..axis.len())
        .filter(|&i| axis[i] >= lo && axis[i] <= hi)
        .collect();
    let mut depth: f64 = 0.0;
    for (k, &i) in idx.iter().enumerate() {
        let before = idx[..k]
            .iter()
            .map(|&j| values[j])
            .fold(f64::NEG_INFINITY, f64::max);
        let after = idx[k + 1..]
            .iter()
            .map(|&j| values[j])
            .fold(f64::NEG_INFINITY, f64::max);
        let rim = before.min(after);
        if rim > f64::NEG_INFINITY {
            depth = depth.max(rim - values[i]);
        }
    }
    depth
}

/// Pearson correlation of two equally long series.
pub fn correlation(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Spearman rank correlation; ties share their average rank, so infinite
/// values are ranked like any other.
pub fn rank_correlation(x: &[f64], y: &[f64]) -> f64 {
    correlation(&ranks(x), &ranks(y))
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut out = vec![0.0; v.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && v[order[j + 1]] == v[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0;
        for &k in &order[i..=j] {
            out[k] = rank;
        }
        i = j + 1;
    }
    out
}

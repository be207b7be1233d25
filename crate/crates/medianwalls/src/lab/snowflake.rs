//! Snowflaked metrics dist^α: the two power inequalities, collapse of
//! intervals, and the impossibility of near-median points for spread-out
//! triples.

use crate::error::{Error, Result};

const REL_TOL: f64 = 1e-12;

/// Evaluates (a+b)^β ≥ a^β + b^β and a^α + b^α − (a+b)^α ≥ b^α(2 − 2^α)
/// for a ≥ b ≥ 0, 0 < α < 1, β > 1. Both verdicts should always be true.
pub fn snowflake_inequalities(a: f64, b: f64, alpha: f64, beta: f64) -> Result<(bool, bool)> {
    if !(a >= b && b >= 0.0) {
        return Err(Error::domain("need a >= b >= 0"));
    }
    if !(0.0 < alpha && alpha < 1.0 && beta > 1.0) {
        return Err(Error::domain("need alpha in (0,1) and beta > 1"));
    }
    let superadditive = (a + b).powf(beta) >= a.powf(beta) + b.powf(beta) - REL_TOL * a.powf(beta);
    let gap = a.powf(alpha) + b.powf(alpha) - (a + b).powf(alpha);
    let floor = b.powf(alpha) * (2.0 - 2.0f64.powf(alpha));
    let concave_gap = gap >= floor - REL_TOL * (a.powf(alpha) + 1.0) && floor >= -REL_TOL;
    Ok((superadditive, concave_gap))
}

/// Result of scanning all triples of a finite sample for betweenness in
/// the snowflaked metric.
#[derive(Clone, Copy, Debug)]
pub struct SnowflakeIntervalReport {
    pub triples_checked: usize,
    pub min_defect: f64,
    /// True when every genuine intermediate point has strictly positive
    /// defect, i.e. snowflaked intervals reduce to their endpoints.
    pub all_positive: bool,
}

/// For every ordered triple (x, z, y) of distinct sample points with
/// dist(x,z) > 0 and dist(z,y) > 0, computes the betweenness defect of z
/// in dist^alpha and reports the minimum.
pub fn snowflake_interval_check(
    n: usize,
    dist: impl Fn(usize, usize) -> f64,
    alpha: f64,
) -> Result<SnowflakeIntervalReport> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::domain("snowflake exponent must lie in (0, 1)"));
    }
    let mut report = SnowflakeIntervalReport {
        triples_checked: 0,
        min_defect: f64::INFINITY,
        all_positive: true,
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                let (xz, zy) = (dist(x, z), dist(z, y));
                if xz <= 0.0 || zy <= 0.0 {
                    continue;
                }
                let defect = xz.powf(alpha) + zy.powf(alpha) - dist(x, y).powf(alpha);
                report.triples_checked += 1;
                report.min_defect = report.min_defect.min(defect);
                if defect <= 0.0 {
                    report.all_positive = false;
                }
            }
        }
    }
    Ok(report)
}

/// Outcome of the near-median impossibility search.
#[derive(Clone, Copy, Debug)]
pub struct MedianBoundReport {
    /// Pairwise base-distance threshold 2δ/(2 − 2^α) above which no
    /// δ-median point can exist.
    pub threshold: f64,
    pub spread_triples: usize,
    pub candidates_searched: usize,
    /// Smallest max-defect seen over spread-out triples; a δ-median would
    /// push this to δ or below.
    pub min_search_defect: f64,
    /// True when no candidate was δ-between all three pairs of any triple
    /// beyond the threshold.
    pub no_median_found: bool,
    /// True when every candidate δ-between a pair also satisfied the
    /// base-metric bound (2 − 2^α)·min(dist(m,x), dist(m,y)) ≤ δ.
    pub intermediate_ok: bool,
}

/// For each triple whose pairwise base distances all exceed 2δ/(2 − 2^α),
/// searches the candidate set for a point δ-between all three pairs in
/// dist^α (none should exist) and checks the pairwise base-distance bound
/// for every candidate that is δ-between some pair.
pub fn snowflake_median_bound<P>(
    dist: impl Fn(&P, &P) -> f64,
    alpha: f64,
    delta: f64,
    triples: &[[P; 3]],
    candidates: impl Fn(&[P; 3]) -> Vec<P>,
) -> Result<MedianBoundReport> {
    if !(0.0 < alpha && alpha < 1.0) {
        return Err(Error::domain("snowflake exponent must lie in (0, 1)"));
    }
    if delta < 0.0 {
        return Err(Error::domain("delta must be nonnegative"));
    }
    let shrink = 2.0 - 2.0f64.powf(alpha);
    let mut report = MedianBoundReport {
        threshold: 2.0 * delta / shrink,
        spread_triples: 0,
        candidates_searched: 0,
        min_search_defect: f64::INFINITY,
        no_median_found: true,
        intermediate_ok: true,
    };
    let snow = |a: &P, b: &P| dist(a, b).powf(alpha);
    for triple in triples {
        let pairs = [(0, 1), (1, 2), (0, 2)];
        let spread = pairs
            .iter()
            .all(|&(i, j)| dist(&triple[i], &triple[j]) > report.threshold);
        for m in candidates(triple) {
            report.candidates_searched += 1;
            let mut worst = 0.0f64;
            for &(i, j) in &pairs {
                let defect =
                    snow(&triple[i], &m) + snow(&m, &triple[j]) - snow(&triple[i], &triple[j]);
                worst = worst.max(defect);
                if defect <= delta {
                    let closer = dist(&triple[i], &m).min(dist(&m, &triple[j]));
                    if shrink * closer > delta + 1e-9 {
                        report.intermediate_ok = false;
                    }
                }
            }
            if spread {
                report.min_search_defect = report.min_search_defect.min(worst);
                if worst <= delta {
                    report.no_median_found = false;
                }
            }
        }
        if spread {
            report.spread_triples += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::hyperbolic::DiskPoint;
    use crate::lab::models::{HyperbolicDisk, ModelMetric};
    use crate::lab::sample_stream;
    use rand::Rng;

    #[test]
    fn inequality_edge_cases() {
        let (sup, gap) = snowflake_inequalities(1.0, 1.0, 0.5, 2.0).unwrap();
        assert!(sup && gap); // 4 >= 2, and 2 - sqrt(2) meets its floor
        let (sup, gap) = snowflake_inequalities(3.0, 0.0, 0.3, 1.5).unwrap();
        assert!(sup && gap); // b = 0 collapses the second to 0 >= 0
        assert!(snowflake_inequalities(1.0, 2.0, 0.5, 2.0).is_err());
        assert!(snowflake_inequalities(1.0, 0.5, 1.5, 2.0).is_err());
    }

    #[test]
    fn inequalities_hold_on_random_inputs() {
        let mut rng = sample_stream(13, 0);
        for _ in 0..100_000 {
            let b = 10.0 * rng.gen::<f64>();
            let a = b + 10.0 * rng.gen::<f64>();
            let alpha = 0.01 + 0.98 * rng.gen::<f64>();
            let beta = 1.01 + 3.0 * rng.gen::<f64>();
            let (sup, gap) = snowflake_inequalities(a, b, alpha, beta).unwrap();
            assert!(
                sup && gap,
                "failed at a={a} b={b} alpha={alpha} beta={beta}"
            );
        }
    }

    #[test]
    fn line_sample_interval_collapse() {
        let pts = [0.0f64, 0.25, 1.0];
        let report = snowflake_interval_check(3, |i, j| (pts[i] - pts[j]).abs(), 0.5).unwrap();
        assert!(report.all_positive);
        // z = 1/4 between 0 and 1: 1/2 + sqrt(3)/2 - 1
        let expect = 0.5 + 0.75f64.sqrt() - 1.0;
        assert!((report.min_defect - expect).abs() < 1e-12);
    }

    #[test]
    fn random_line_triples_collapse() {
        let mut rng = sample_stream(14, 0);
        for alpha in [0.3, 0.5, 0.8] {
            let pts: Vec<f64> = (0..12).map(|_| 100.0 * rng.gen::<f64>()).collect();
            let report =
                snowflake_interval_check(pts.len(), |i, j| (pts[i] - pts[j]).abs(), alpha).unwrap();
            assert!(report.all_positive, "alpha {alpha}");
        }
    }

    #[test]
    fn line_medians_exist_exactly_up_to_collapse_scale() {
        // Equally spaced triples {0, s, 2s}: the middle point is the best
        // candidate, with defect s^alpha (2 - 2^alpha). delta-medians thus
        // exist iff s^alpha (2 - 2^alpha) <= delta, which implies the
        // pairwise-distance threshold with room to spare.
        let alpha = 0.5;
        let delta = 0.1;
        let shrink = 2.0 - 2.0f64.powf(alpha);
        let collapse = (delta / shrink).powf(2.0); // spacing where medians stop existing
        let grid = |t: &[f64; 3]| -> Vec<f64> {
            let lo = t[0].min(t[2]);
            let hi = t[0].max(t[2]);
            (0..=2000)
                .map(|k| lo + (hi - lo) * k as f64 / 2000.0)
                .collect()
        };
        let dist = |a: &f64, b: &f64| (a - b).abs();
        let snow_defect = |x: f64, m: f64, y: f64| {
            dist(&x, &m).powf(alpha) + dist(&m, &y).powf(alpha) - dist(&x, &y).powf(alpha)
        };
        for factor in [0.5, 0.9, 1.1, 2.0, 20.0] {
            let s = collapse * factor;
            let triple = [0.0, s, 2.0 * s];
            let best = grid(&triple)
                .into_iter()
                .map(|m| {
                    [(0, 1), (1, 2), (0, 2)]
                        .into_iter()
                        .map(|(i, j)| snow_defect(triple[i], m, triple[j]))
                        .fold(0.0f64, f64::max)
                })
                .fold(f64::INFINITY, f64::min);
            if factor < 1.0 {
                assert!(best <= delta + 1e-6, "factor {factor}: best {best}");
            } else if factor > 1.05 {
                assert!(best > delta, "factor {factor}: best {best}");
            }
        }
        // triples beyond the stated pairwise threshold never admit medians
        let threshold = 2.0 * delta / shrink;
        let triples: Vec<[f64; 3]> = (1..=20)
            .map(|k| {
                let s = threshold * (1.0 + k as f64 / 4.0);
                [0.0, s, 2.0 * s]
            })
            .collect();
        let report = snowflake_median_bound(dist, alpha, delta, &triples, |t| grid(t)).unwrap();
        assert_eq!(report.spread_triples, 20);
        assert!(report.no_median_found);
        assert!(report.intermediate_ok);
    }

    #[test]
    fn hyperbolic_spread_triples_admit_no_half_median() {
        let triple = HyperbolicDisk.equilateral_triple(10.0);
        let candidates = HyperbolicDisk.candidates(10.0, 2_000);
        let dist = |a: &DiskPoint, b: &DiskPoint| HyperbolicDisk.dist(a, b);
        let report = snowflake_median_bound(dist, 0.5, 0.5, std::slice::from_ref(&triple), |_| {
            candidates.clone()
        })
        .unwrap();
        assert_eq!(report.spread_triples, 1);
        assert!(report.no_median_found);
        assert!(report.intermediate_ok);
    }

    #[test]
    fn zero_delta_means_no_exact_medians() {
        let dist = |a: &f64, b: &f64| (a - b).abs();
        let triples = [[0.0, 1.0, 2.0]];
        let report = snowflake_median_bound(dist, 0.5, 0.0, &triples, |_| {
            (0..=400).map(|k| k as f64 / 200.0).collect()
        })
        .unwrap();
        assert!(report.no_median_found);
    }
}

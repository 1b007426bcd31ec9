//! Two-sided Wilcoxon signed-rank test for paired samples.
//!
//! Zero differences are dropped; tied absolute differences receive
//! average ranks. Small samples (n <= 25) use the exact null distribution
//! of the rank sum; larger samples use the normal approximation with tie
//! and continuity corrections.

use crate::error::{Error, Result};
use statrs::distribution::{ContinuousCDF, Normal};

const EXACT_LIMIT: usize = 25;

#[derive(Debug, Clone, PartialEq)]
pub struct WilcoxonResult {
    /// Sum of ranks of the positive differences (W+).
    pub statistic: f64,
    /// Two-sided p-value.
    pub p_value: f64,
    /// Pairs remaining after zero differences are dropped.
    pub n_used: usize,
    /// Whether the exact distribution was enumerated.
    pub exact: bool,
}

/// Test whether paired samples `a` and `b` come from the same
/// distribution.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonResult> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    if diffs.is_empty() {
        return Err(Error::AllDifferencesZero);
    }
    let n = diffs.len();

    // Rank |d| ascending with average ranks for ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diffs[i].abs().partial_cmp(&diffs[j].abs()).unwrap());
    let mut ranks = vec![0.0f64; n];
    let mut tie_sizes: Vec<usize> = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && diffs[order[j + 1]].abs() == diffs[order[i]].abs() {
            j += 1;
        }
        let avg_rank = (i + j + 2) as f64 / 2.0; // ranks are 1-based
        for &k in &order[i..=j] {
            ranks[k] = avg_rank;
        }
        tie_sizes.push(j - i + 1);
        i = j + 1;
    }

    let w_plus: f64 = diffs
        .iter()
        .zip(&ranks)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| r)
        .sum();

    let p_value = if n <= EXACT_LIMIT {
        exact_two_sided_p(&ranks, w_plus)
    } else {
        normal_two_sided_p(n, &tie_sizes, w_plus)
    };
    Ok(WilcoxonResult {
        statistic: w_plus,
        p_value,
        n_used: n,
        exact: n <= EXACT_LIMIT,
    })
}

/// Exact null distribution of W+ over all 2^n sign assignments, computed
/// by convolving doubled ranks (doubling makes average ranks integral).
fn exact_two_sided_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; total + 1];
    counts[0] = 1.0;
    let mut reach = 0usize;
    for &r in &doubled {
        reach += r;
        for s in (0..=reach).rev() {
            if s >= r && counts[s - r] > 0.0 {
                counts[s] += counts[s - r];
            }
        }
    }
    let total_assignments: f64 = 2f64.powi(ranks.len() as i32);
    let w2 = (2.0 * w_plus).round() as usize;
    let p_le: f64 = counts[..=w2].iter().sum::<f64>() / total_assignments;
    let p_ge: f64 = counts[w2..].iter().sum::<f64>() / total_assignments;
    (2.0 * p_le.min(p_ge)).min(1.0)
}

/// Normal approximation with tie correction and a 0.5 continuity
/// correction toward the mean.
fn normal_two_sided_p(n: usize, tie_sizes: &[usize], w_plus: f64) -> f64 {
    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let tie_term: f64 = tie_sizes
        .iter()
        .map(|&t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum::<f64>()
        / 48.0;
    let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term;
    let delta = w_plus - mean;
    let corrected = delta.abs() - 0.5;
    if corrected <= 0.0 {
        return 1.0;
    }
    let z = corrected / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * (1.0 - normal.cdf(z))).min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples_are_rejected() {
        let a = [1.0, 2.0, 3.0];
        assert!(matches!(
            wilcoxon_signed_rank(&a, &a),
            Err(Error::AllDifferencesZero)
        ));
    }

    #[test]
    fn six_positive_differences_exact_p() {
        // All six differences positive: W+ = 21, P(W+ >= 21) = 1/64,
        // two-sided p = 2/64 = 0.03125 by exact enumeration.
        let a = [2.0, 3.0, 4.0, 5.0, 6.0, 7.0];
        let b = [1.0, 1.5, 2.0, 2.5, 3.0, 3.5];
        let r = wilcoxon_signed_rank(&a, &b).unwrap();
        assert!(r.exact);
        assert_eq!(r.n_used, 6);
        assert!((r.statistic - 21.0).abs() < 1e-12);
        assert!((r.p_value - 0.03125).abs() < 1e-12);
    }

    #[test]
    fn tied_absolute_differences_use_average_ranks() {
        // Differences +1, -1, +2: |d| ranks are 1.5, 1.5, 3, so
        // W+ = 4.5. The 8 sign assignments give W+ values
        // {0, 1.5, 1.5, 3, 3, 4.5, 4.5, 6}: P(>= 4.5) = 3/8,
        // P(<= 4.5) = 6/8, two-sided p = 0.75.
        let a = [2.0, 1.0, 5.0];
        let b = [1.0, 2.0, 3.0];
        let r = wilcoxon_signed_rank(&a, &b).unwrap();
        assert!((r.statistic - 4.5).abs() < 1e-12);
        assert!((r.p_value - 0.75).abs() < 1e-12);
    }

    #[test]
    fn zero_differences_are_dropped() {
        let a = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0];
        let b = [1.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let r = wilcoxon_signed_rank(&a, &b).unwrap();
        assert_eq!(r.n_used, 6);
    }

    #[test]
    fn normal_approximation_tracks_exact_near_the_cutoff() {
        // Compare the two routes on the same 25-pair data.
        let mut rng = crate::rng::DetRng::from_u64(99);
        for _ in 0..10 {
            let a: Vec<f64> = (0..25).map(|_| rng.standard_normal()).collect();
            let b: Vec<f64> = (0..25).map(|_| rng.standard_normal() * 0.8 + 0.3).collect();
            let exact = wilcoxon_signed_rank(&a, &b).unwrap();
            let approx_p = {
                let diffs: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
                let n = diffs.len();
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by(|&i, &j| diffs[i].abs().partial_cmp(&diffs[j].abs()).unwrap());
                let w_plus: f64 = order
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| diffs[k] > 0.0)
                    .map(|(rank0, _)| (rank0 + 1) as f64)
                    .sum();
                normal_two_sided_p(n, &[], w_plus)
            };
            assert!(
                (exact.p_value - approx_p).abs() < 0.02,
                "exact {} vs normal {}",
                exact.p_value,
                approx_p
            );
        }
    }

    #[test]
    fn large_sample_uses_normal_path() {
        let mut rng = crate::rng::DetRng::from_u64(100);
        let a: Vec<f64> = (0..60).map(|_| rng.standard_normal()).collect();
        let b: Vec<f64> = (0..60).map(|_| rng.standard_normal() + 1.0).collect();
        let r = wilcoxon_signed_rank(&a, &b).unwrap();
        assert!(!r.exact);
        assert!(r.p_value < 0.001, "p {}", r.p_value);
        // Symmetric comparison flips the statistic but not the p-value.
        let r2 = wilcoxon_signed_rank(&b, &a).unwrap();
        assert!((r.p_value - r2.p_value).abs() < 1e-12);
    }
}

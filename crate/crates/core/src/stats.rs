//! Effect size and significance tests for comparing repeated runs.

use statrs::function::erf::erfc;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("sample is empty")]
    EmptySample,
}

/// Largest per-group size for which the U test enumerates the exact null
/// distribution.
pub const EXACT_LIMIT: usize = 20;

/// Midranks (1-based) of the pooled samples, `a` first then `b`, plus the
/// tie-group sizes.
fn midranks(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&i, &j| pooled[i].total_cmp(&pooled[j]));
    let mut ranks = vec![0.0; pooled.len()];
    let mut ties = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]] == pooled[order[start]] {
            end += 1;
        }
        // Positions start..end share ranks start+1..=end.
        let mid = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = mid;
        }
        ties.push(end - start);
        start = end;
    }
    (ranks, ties)
}

fn check(a: &[f64], b: &[f64]) -> Result<(), StatsError> {
    if a.is_empty() || b.is_empty() {
        Err(StatsError::EmptySample)
    } else {
        Ok(())
    }
}

/// Vargha-Delaney Â12: probability that a value drawn from `a` exceeds one
/// drawn from `b`, counting ties as one half.
pub fn vargha_delaney_a12(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    check(a, b)?;
    let (ranks, _) = midranks(a, b);
    let (m, n) = (a.len() as f64, b.len() as f64);
    let rank_sum: f64 = ranks[..a.len()].iter().sum();
    Ok((rank_sum / m - (m + 1.0) / 2.0) / n)
}

/// Mann-Whitney U statistic of `a`.
pub fn u_statistic(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    check(a, b)?;
    let (ranks, _) = midranks(a, b);
    let m = a.len() as f64;
    Ok(ranks[..a.len()].iter().sum::<f64>() - m * (m + 1.0) / 2.0)
}

/// Two-sided Mann-Whitney U test. Uses the exact null distribution when
/// both groups have at most [`EXACT_LIMIT`] values, the tie-corrected normal
/// approximation otherwise.
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    if a.len() <= EXACT_LIMIT && b.len() <= EXACT_LIMIT {
        mann_whitney_u_exact(a, b)
    } else {
        mann_whitney_u_normal(a, b)
    }
}

/// Exact two-sided p-value, enumerating how many ways `|a|` of the pooled
/// midranks can be chosen for each rank sum. Ties are handled by working on
/// doubled midranks, which are integers.
pub fn mann_whitney_u_exact(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    check(a, b)?;
    let (ranks, _) = midranks(a, b);
    let doubled: Vec<usize> = ranks.iter().map(|r| (r * 2.0).round() as usize).collect();
    let m = a.len();
    let total: usize = doubled.iter().sum();
    let max_sum: usize = {
        let mut sorted = doubled.clone();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        sorted[..m].iter().sum()
    };
    // ways[k][s]: subsets of size k with doubled rank sum s.
    let mut ways = vec![vec![0f64; max_sum + 1]; m + 1];
    ways[0][0] = 1.0;
    for &r in &doubled {
        for k in (0..m).rev() {
            for s in (0..=max_sum.saturating_sub(r)).rev() {
                let w = ways[k][s];
                if w != 0.0 {
                    ways[k + 1][s + r] += w;
                }
            }
        }
    }
    let observed: usize = doubled[..m].iter().sum();
    // Mean of the doubled rank sum is m * total / N; compare deviations in
    // units scaled by N to stay in integers.
    let n_all = doubled.len() as i128;
    let centre = |s: usize| (s as i128 * n_all - m as i128 * total as i128).abs();
    let observed_dev = centre(observed);
    let (mut extreme, mut all) = (0.0, 0.0);
    for (s, &w) in ways[m].iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        all += w;
        if centre(s) >= observed_dev {
            extreme += w;
        }
    }
    Ok((extreme / all).min(1.0))
}

/// Two-sided p-value from the normal approximation with tie-corrected
/// variance and continuity correction.
pub fn mann_whitney_u_normal(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    check(a, b)?;
    let (ranks, ties) = midranks(a, b);
    let (m, n) = (a.len() as f64, b.len() as f64);
    let big_n = m + n;
    let u = ranks[..a.len()].iter().sum::<f64>() - m * (m + 1.0) / 2.0;
    let mean = m * n / 2.0;
    let tie_term: f64 = ties
        .iter()
        .map(|&t| (t as f64).powi(3) - t as f64)
        .sum::<f64>()
        / (big_n * (big_n - 1.0)).max(1.0);
    let variance = m * n / 12.0 * ((big_n + 1.0) - tie_term);
    if variance <= 0.0 {
        return Ok(1.0);
    }
    let z = ((u - mean).abs() - 0.5).max(0.0) / variance.sqrt();
    Ok(erfc(z / std::f64::consts::SQRT_2).min(1.0))
}

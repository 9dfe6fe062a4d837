//! Topological entropy via lap counts.
//!
//! For a piecewise monotone interval map, `h(f) = lim (1/n) log m_n`, where
//! `m_n` counts the monotone laps of `f^n`, and the limit is also the infimum
//! so the estimates approach from above. Laps are counted on the certified
//! invariant interval: the dynamics outside it is a one-way transit whose lap
//! chains inflate `m_n` without carrying entropy, and restricting to the
//! attracting interval leaves the limit unchanged.
//!
//! The partition is propagated forward: the lap endpoints of `f^{n+1}` are
//! those of `f^n` plus the preimages, inside each monotone lap of `f^n`, of
//! the critical points of `f`.

use crate::dynamics::ForelMap;
use crate::error::{Error, Result};
use serde::Serialize;

/// Partition points may not collapse closer than this.
const MIN_GAP: f64 = 1e-14;
/// Cap on the total number of partition points across all levels.
const MAX_POINTS: usize = 1_000_000;

/// Lap counts `m_1..m_K` and the running estimates `(1/k) log m_k`.
#[derive(Debug, Clone, Serialize)]
pub struct EntropyEstimate {
    pub lap_counts: Vec<u64>,
    pub estimates: Vec<f64>,
    pub final_estimate: f64,
    /// Set when the point budget stopped the computation before `n_max`.
    pub truncated: bool,
}

pub fn topological_entropy_lap(map: &ForelMap, n_max: usize) -> Result<EntropyEstimate> {
    if n_max == 0 {
        return Err(Error::Parameter {
            name: "n_max",
            value: 0.0,
            reason: "need at least one iterate",
        });
    }
    let (lo, hi) = map.invariant_interval()?;
    let folds: Vec<f64> = map
        .critical_points()
        .iter()
        .copied()
        .filter(|&c| lo < c && c < hi)
        .collect();

    // partition points of f^k on [lo, hi] and the values of f^k there
    let mut xs: Vec<f64> = Vec::with_capacity(folds.len() + 2);
    xs.push(lo);
    xs.extend(&folds);
    xs.push(hi);
    let mut vs = Vec::with_capacity(xs.len());
    for &x in &xs {
        vs.push(map.step(x)?);
    }

    let mut lap_counts: Vec<u64> = Vec::with_capacity(n_max);
    let mut truncated = false;
    for level in 1..=n_max {
        lap_counts.push((xs.len() - 1) as u64);
        if level == n_max {
            break;
        }
        // preimages of the fold points inside each monotone lap of f^level
        let mut inserts: Vec<(f64, f64)> = Vec::new();
        for i in 0..xs.len() - 1 {
            let (span_lo, span_hi) = if vs[i] <= vs[i + 1] {
                (vs[i], vs[i + 1])
            } else {
                (vs[i + 1], vs[i])
            };
            for &c in &folds {
                if span_lo < c && c < span_hi {
                    let x = preimage_on_lap(map, xs[i], xs[i + 1], vs[i], c, level)?;
                    inserts.push((x, map.step(c)?));
                }
            }
        }
        // advance stored values to f^{level+1}
        for v in &mut vs {
            *v = map.step(*v)?;
        }
        if !inserts.is_empty() {
            for (x, v) in inserts {
                let idx = xs.partition_point(|&p| p < x);
                let near_left = idx > 0 && (x - xs[idx - 1]).abs() < MIN_GAP;
                let near_right = idx < xs.len() && (xs[idx] - x).abs() < MIN_GAP;
                if near_left || near_right {
                    let neighbor = if near_left { xs[idx - 1] } else { xs[idx] };
                    return Err(Error::LapResolution { a: neighbor, b: x });
                }
                xs.insert(idx, x);
                vs.insert(idx, v);
            }
        }
        if xs.len() > MAX_POINTS {
            truncated = true;
            break;
        }
    }

    let estimates: Vec<f64> = lap_counts
        .iter()
        .enumerate()
        .map(|(i, &m)| (m as f64).ln() / (i + 1) as f64)
        .collect();
    let final_estimate = *estimates.last().expect("n_max >= 1");
    Ok(EntropyEstimate {
        lap_counts,
        estimates,
        final_estimate,
        truncated,
    })
}

/// Solve `f^level(x) = target` inside a lap where `f^level` is monotone and
/// the endpoint values straddle `target`.
fn preimage_on_lap(
    map: &ForelMap,
    mut lo: f64,
    mut hi: f64,
    v_lo: f64,
    target: f64,
    level: usize,
) -> Result<f64> {
    let iter_k = |x: f64| -> Result<f64> {
        let mut z = x;
        for _ in 0..level {
            z = map.step(z)?;
        }
        Ok(z)
    };
    let low_side = v_lo < target;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-15 || mid == lo || mid == hi {
            return Ok(mid);
        }
        let v = iter_k(mid)?;
        // keep the sub-interval whose endpoint values still straddle target
        if (v < target) == low_side {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

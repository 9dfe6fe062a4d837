//! Parameter sweeps over the demand `a`, seeded at the map's critical points,
//! with attractor-coexistence detection on the resulting point clouds.
//!
//! Each `(a, seed)` task is independent and side-effect-free; results are
//! gathered in grid order, so the dataset bytes never depend on the degree of
//! parallelism.

use crate::analysis::critical_points;
use crate::dynamics::{ForelMap, MapParams};
use crate::error::{Error, Result};
use crate::regularizers::Regularizer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Where each sweep task starts its orbits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedMode {
    /// Recompute the critical points of the map at every grid value of `a`.
    CriticalPoints,
    /// A fixed list of interior starting points.
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub regularizer: Regularizer,
    pub b: f64,
    pub a_min: f64,
    pub a_max: f64,
    /// Number of grid cells; the sweep evaluates `steps + 1` values of `a`.
    pub steps: usize,
    pub transient: usize,
    pub keep: usize,
    pub seed_mode: SeedMode,
    /// Single-threaded execution when false (for debugging; output identical).
    pub parallel: bool,
}

impl SweepConfig {
    pub fn new(regularizer: Regularizer, b: f64, a_min: f64, a_max: f64, steps: usize) -> Self {
        SweepConfig {
            regularizer,
            b,
            a_min,
            a_max,
            steps,
            transient: 4000,
            keep: 200,
            seed_mode: SeedMode::CriticalPoints,
            parallel: true,
        }
    }

    fn a_at(&self, i: usize) -> f64 {
        self.a_min + (self.a_max - self.a_min) * i as f64 / self.steps as f64
    }
}

/// Retained orbit of one seed at one grid value of `a`.
#[derive(Debug, Clone, Serialize)]
pub struct SeedCloud {
    pub label: String,
    pub seed: f64,
    pub points: Vec<f64>,
}

impl SeedCloud {
    pub fn diameter(&self) -> f64 {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &x in &self.points {
            lo = lo.min(x);
            hi = hi.max(x);
        }
        hi - lo
    }

    /// Width of the widest cluster after splitting the sorted cloud at gaps
    /// larger than `split_gap`. Multi-band attractors keep a near-constant
    /// overall diameter while their bands thicken or thin; this measures the
    /// band scale.
    pub fn max_band_width(&self, split_gap: f64) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        let mut p = self.points.clone();
        p.sort_unstable_by(f64::total_cmp);
        let mut widest = 0.0f64;
        let mut start = p[0];
        let mut prev = p[0];
        for &x in &p[1..] {
            if x - prev > split_gap {
                widest = widest.max(prev - start);
                start = x;
            }
            prev = x;
        }
        widest.max(prev - start)
    }
}

/// All seed clouds at one grid value of `a`.
#[derive(Debug, Clone, Serialize)]
pub struct ARow {
    pub a: f64,
    pub clouds: Vec<SeedCloud>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BifurcationDataset {
    pub config: SweepConfig,
    pub rows: Vec<ARow>,
}

impl BifurcationDataset {
    pub fn seed_labels(&self) -> Vec<String> {
        self.rows
            .first()
            .map(|r| r.clouds.iter().map(|c| c.label.clone()).collect())
            .unwrap_or_default()
    }
}

/// Run the sweep: `steps + 1` uniformly spaced demand values, each seed
/// iterated `transient` steps in dual coordinates with the last `keep`
/// iterates recorded.
pub fn sweep(config: &SweepConfig) -> Result<BifurcationDataset> {
    if !(config.a_min > 0.0 && config.a_min < config.a_max) {
        return Err(Error::SweepConfig(format!(
            "need 0 < a_min < a_max, got [{}, {}]",
            config.a_min, config.a_max
        )));
    }
    if config.steps == 0 || config.keep == 0 {
        return Err(Error::SweepConfig(
            "steps and keep must be positive".to_string(),
        ));
    }
    if !(config.b > 0.0 && config.b < 1.0) {
        return Err(Error::SweepConfig(format!(
            "equilibrium flow b = {} outside (0,1)",
            config.b
        )));
    }
    match &config.seed_mode {
        SeedMode::CriticalPoints => {
            // critical points persist for all larger a, so checking the low
            // end covers the whole grid; refusing here beats silently
            // switching seed strategy mid-range
            if critical_points(&config.regularizer, config.a_min).is_empty() {
                return Err(Error::SweepConfig(format!(
                    "no critical points at a_min = {}: the map is a homeomorphism there; \
                     raise a_min or provide explicit seeds",
                    config.a_min
                )));
            }
        }
        SeedMode::Explicit(seeds) => {
            if seeds.is_empty() {
                return Err(Error::SweepConfig("explicit seed list is empty".into()));
            }
            if let Some(&s) = seeds.iter().find(|s| !(0.0 < **s && **s < 1.0)) {
                return Err(Error::SweepConfig(format!(
                    "explicit seed {s} outside (0,1)"
                )));
            }
        }
    }

    let task = |i: usize| -> Result<ARow> {
        let a = config.a_at(i);
        let map = ForelMap::new(
            config.regularizer.clone(),
            MapParams::new(a, config.b).expect("validated above"),
        );
        let seeds: Vec<(String, f64)> = match &config.seed_mode {
            SeedMode::CriticalPoints => {
                let crit = map.critical_points();
                if crit.is_empty() {
                    return Err(Error::SweepConfig(format!(
                        "critical points vanished at a = {a}"
                    )));
                }
                if crit.len() == 2 {
                    vec![("left".into(), crit[0]), ("right".into(), crit[1])]
                } else {
                    crit.iter()
                        .enumerate()
                        .map(|(j, &c)| (format!("c{j}"), c))
                        .collect()
                }
            }
            SeedMode::Explicit(seeds) => seeds
                .iter()
                .enumerate()
                .map(|(j, &s)| (format!("s{j}"), s))
                .collect(),
        };
        let mut clouds = Vec::with_capacity(seeds.len());
        for (label, seed) in seeds {
            let orbit = map
                .iterate(seed, config.transient, config.keep)
                .map_err(|e| Error::SweepTask {
                    a,
                    seed: label.clone(),
                    source: Box::new(e),
                })?;
            clouds.push(SeedCloud {
                label,
                seed,
                points: orbit.points,
            });
        }
        Ok(ARow { a, clouds })
    };

    let rows: Result<Vec<ARow>> = if config.parallel {
        (0..=config.steps).into_par_iter().map(task).collect()
    } else {
        (0..=config.steps).map(task).collect()
    };
    Ok(BifurcationDataset {
        config: config.clone(),
        rows: rows?,
    })
}

/// A maximal run of grid values whose clouds stay separated.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Window {
    pub a_lo: f64,
    pub a_hi: f64,
}

/// Per-`a` symmetric cloud distance and the windows where it exceeds the
/// threshold.
#[derive(Debug, Clone, Serialize)]
pub struct AttractorComparison {
    pub a_grid: Vec<f64>,
    pub separation: Vec<f64>,
    pub windows: Vec<Window>,
    pub threshold: f64,
}

/// Separation is the symmetrized max-min distance between the two clouds
/// (Hausdorff distance of the retained point sets).
pub fn compare_attractors(
    ds: &BifurcationDataset,
    separation_threshold: f64,
) -> Result<AttractorComparison> {
    let mut a_grid = Vec::with_capacity(ds.rows.len());
    let mut separation = Vec::with_capacity(ds.rows.len());
    for row in &ds.rows {
        if row.clouds.len() != 2 {
            return Err(Error::SeedCount(row.clouds.len()));
        }
        let mut one = row.clouds[0].points.clone();
        let mut two = row.clouds[1].points.clone();
        one.sort_unstable_by(f64::total_cmp);
        two.sort_unstable_by(f64::total_cmp);
        a_grid.push(row.a);
        separation.push(hausdorff(&one, &two));
    }
    let mut windows = Vec::new();
    let mut start: Option<usize> = None;
    for i in 0..separation.len() {
        if separation[i] > separation_threshold {
            start.get_or_insert(i);
        } else if let Some(s) = start.take() {
            windows.push(Window {
                a_lo: a_grid[s],
                a_hi: a_grid[i - 1],
            });
        }
    }
    if let Some(s) = start {
        windows.push(Window {
            a_lo: a_grid[s],
            a_hi: *a_grid.last().expect("nonempty"),
        });
    }
    Ok(AttractorComparison {
        a_grid,
        separation,
        windows,
        threshold: separation_threshold,
    })
}

/// Smallest grid `a` at which any seed's retained cloud spreads past `tol`.
pub fn first_bifurcation(ds: &BifurcationDataset, tol: f64) -> Result<f64> {
    for row in &ds.rows {
        if row.clouds.iter().any(|c| c.diameter() > tol) {
            return Ok(row.a);
        }
    }
    Err(Error::NoBifurcation { tol })
}

fn hausdorff(a: &[f64], b: &[f64]) -> f64 {
    directed(a, b).max(directed(b, a))
}

/// `max_{p in a} min_{q in b} |p - q|` for sorted slices.
fn directed(a: &[f64], b: &[f64]) -> f64 {
    let mut worst = 0.0f64;
    for &p in a {
        let idx = b.partition_point(|&q| q < p);
        let mut best = f64::INFINITY;
        if idx < b.len() {
            best = best.min((b[idx] - p).abs());
        }
        if idx > 0 {
            best = best.min((p - b[idx - 1]).abs());
        }
        worst = worst.max(best);
    }
    worst
}

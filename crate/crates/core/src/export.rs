//! File formats for orbits and sweep datasets.
//!
//! CSV files start with `#`-prefixed metadata lines (regularizer spec, map
//! parameters, run lengths, tool version) so a dataset is self-describing.
//! Floating values are printed with 17 significant digits.

use crate::bifurcation::BifurcationDataset;
use crate::dynamics::{MapParams, Orbit};
use crate::regularizers::Regularizer;
use serde_json::json;
use std::io::{self, Write};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17 significant digits, enough to reproduce the f64 exactly.
pub fn fmt_g17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Orbit CSV: metadata comments, then `k,x,y` rows where `k` is the absolute
/// iterate index, `x` the primal point and `y` its dual coordinate.
pub fn write_orbit_csv<W: Write>(
    w: &mut W,
    orbit: &Orbit,
    reg: &Regularizer,
    params: MapParams,
) -> io::Result<()> {
    writeln!(w, "# regularizer = {}", reg.spec_string())?;
    writeln!(w, "# a = {}", fmt_g17(params.a))?;
    writeln!(w, "# b = {}", fmt_g17(params.b))?;
    writeln!(w, "# x0 = {}", fmt_g17(orbit.seed))?;
    writeln!(w, "# transient = {}", orbit.transient)?;
    writeln!(w, "# keep = {}", orbit.points.len())?;
    writeln!(w, "# version = {TOOL_VERSION}")?;
    writeln!(w, "k,x,y")?;
    for (j, (x, y)) in orbit.points.iter().zip(&orbit.dual_points).enumerate() {
        writeln!(
            w,
            "{},{},{}",
            orbit.transient + j,
            fmt_g17(*x),
            fmt_g17(*y)
        )?;
    }
    Ok(())
}

/// Orbit JSON: the same per-point fields plus run metadata in one document.
pub fn orbit_json(orbit: &Orbit, reg: &Regularizer, params: MapParams) -> serde_json::Value {
    let points: Vec<serde_json::Value> = orbit
        .points
        .iter()
        .zip(&orbit.dual_points)
        .enumerate()
        .map(|(j, (x, y))| json!({"k": orbit.transient + j, "x": x, "y": y}))
        .collect();
    json!({
        "regularizer": reg.spec_string(),
        "a": params.a,
        "b": params.b,
        "seed": orbit.seed,
        "transient": orbit.transient,
        "keep": orbit.points.len(),
        "version": TOOL_VERSION,
        "points": points,
    })
}

/// Dataset CSV: metadata comments, then `a,seed,k,x` rows ordered by `a`,
/// seed label, iterate index.
pub fn write_dataset_csv<W: Write>(w: &mut W, ds: &BifurcationDataset) -> io::Result<()> {
    let cfg = &ds.config;
    writeln!(w, "# regularizer = {}", cfg.regularizer.spec_string())?;
    writeln!(w, "# b = {}", fmt_g17(cfg.b))?;
    writeln!(w, "# a_min = {}", fmt_g17(cfg.a_min))?;
    writeln!(w, "# a_max = {}", fmt_g17(cfg.a_max))?;
    writeln!(w, "# steps = {}", cfg.steps)?;
    writeln!(w, "# transient = {}", cfg.transient)?;
    writeln!(w, "# keep = {}", cfg.keep)?;
    writeln!(w, "# version = {TOOL_VERSION}")?;
    writeln!(w, "a,seed,k,x")?;
    for row in &ds.rows {
        let a = fmt_g17(row.a);
        for cloud in &row.clouds {
            for (k, x) in cloud.points.iter().enumerate() {
                writeln!(w, "{},{},{},{}", a, cloud.label, cfg.transient + k, fmt_g17(*x))?;
            }
        }
    }
    Ok(())
}

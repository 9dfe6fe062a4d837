//! The verification suite: ten numbered criteria covering the reference
//! constants, stability thresholds, the period-6 certificate, coexistence,
//! Cesàro attraction, symmetric period-2 cycles, conjugacy/antisymmetry
//! properties, Schwarzian negativity, the entropy dichotomy and the
//! bifurcation-diagram reproductions.
//!
//! Each criterion runs standalone and reports one pass/fail line with its
//! measured values; `quick` shrinks iteration counts for smoke runs without
//! changing any tolerance.

use crate::analysis::{
    critical_points, lyapunov_exponent, schwarzian_psi, schwarzian_report, stability,
    symmetric_period2, topological_entropy_lap, verify_lmpy_witness, Classification,
};
use crate::bifurcation::{compare_attractors, first_bifurcation, sweep, SweepConfig, Window};
use crate::dynamics::{ForelMap, MapParams};
use crate::error::Result;
use crate::regularizers::Regularizer;
use crate::roots::{bisect, StopRule};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

pub const CRITERIA: [(usize, &str); 10] = [
    (1, "perturbed-constants"),
    (2, "stability-threshold"),
    (3, "period6-certificate"),
    (4, "coexistence"),
    (5, "cesaro"),
    (6, "symmetric-period2"),
    (7, "conjugacy-antisymmetry"),
    (8, "schwarzian"),
    (9, "entropy-dichotomy"),
    (10, "bifurcation"),
];

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
    pub millis: u128,
}

impl CriterionReport {
    pub fn summary_line(&self) -> String {
        format!(
            "{} C{:02} {} ({} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.millis,
            self.details
        )
    }
}

pub fn run_all(quick: bool) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, quick)).collect()
}

pub fn run_criterion(id: usize, quick: bool) -> CriterionReport {
    let name = CRITERIA
        .iter()
        .find(|&&(i, _)| i == id)
        .map(|&(_, n)| n)
        .unwrap_or("unknown");
    let start = Instant::now();
    let outcome = match id {
        1 => c1_perturbed_constants(),
        2 => c2_stability_threshold(),
        3 => c3_period6_certificate(),
        4 => c4_coexistence(),
        5 => c5_cesaro(quick),
        6 => c6_symmetric_period2(),
        7 => c7_conjugacy_antisymmetry(),
        8 => c8_schwarzian(),
        9 => c9_entropy_dichotomy(quick),
        10 => c10_bifurcation(quick),
        _ => Ok((false, format!("no criterion with id {id}"))),
    };
    let millis = start.elapsed().as_millis();
    let (passed, details) = match outcome {
        Ok(pd) => pd,
        Err(e) => (false, format!("errored: {e}")),
    };
    CriterionReport {
        id,
        name,
        passed,
        details,
        millis,
    }
}

struct Checks {
    ok: bool,
    notes: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Checks {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn require(&mut self, pass: bool, note: String) {
        if !pass {
            self.ok = false;
            self.notes.push(format!("FAILED {note}"));
        } else {
            self.notes.push(note);
        }
    }

    fn finish(self) -> (bool, String) {
        (self.ok, self.notes.join("; "))
    }
}

fn perturbed_map() -> ForelMap {
    ForelMap::new(
        Regularizer::perturbed_default(),
        MapParams::new(3.25, 0.61).unwrap(),
    )
}

/// Criterion 1: the 24 reference values of Ψ and ξ = Ψ + a(x-b) at the
/// perturbed instance, to 1e-9 absolute, in under a second.
fn c1_perturbed_constants() -> Result<(bool, String)> {
    // (is_xi, x, expected)
    const TABLE: [(bool, f64, f64); 24] = [
        (false, 0.063, 0.5449390463486314),
        (true, 0.956, 0.5450794481395858),
        (true, 0.9559, 0.5450836794177281),
        (false, 0.062, 0.5458384284441133),
        (false, 0.991, -1.26049734857964),
        (true, 0.062, -1.235161571555887),
        (true, 0.063, -1.232810953651368),
        (false, 0.99, -1.189231609934426),
        (false, 0.52, -0.03369120600501601),
        (true, 0.991, -0.02224734857964017),
        (true, 0.99, 0.04576839006557365),
        (false, 0.47, 0.05052025169168718),
        (false, 0.76, -0.4116261583651984),
        (true, 0.47, -0.4044797483083129),
        (true, 0.52, -0.3261912060050159),
        (false, 0.69, -0.3112461911278587),
        (false, 0.54, -0.06732925721803665),
        (true, 0.69, -0.05124619112785883),
        (true, 0.76, 0.07587384163480165),
        (false, 0.45, 0.08411125490271053),
        (false, 0.8, -0.4602943611198909),
        (true, 0.45, -0.4358887450972894),
        (true, 0.54, -0.2948292572180365),
        (false, 0.65, -0.2486392084062237),
    ];
    let start = Instant::now();
    let reg = Regularizer::perturbed_default();
    let mut worst = 0.0f64;
    for &(is_xi, x, expected) in &TABLE {
        let mut v = reg.psi(x)?;
        if is_xi {
            v += 3.25 * (x - 0.61);
        }
        worst = worst.max((v - expected).abs());
    }
    let elapsed = start.elapsed();
    let mut c = Checks::new();
    c.require(
        worst < 1e-9,
        format!("24 reference values, max |err| = {worst:.3e} (< 1e-9)"),
    );
    c.require(
        elapsed.as_secs_f64() < 1.0,
        format!("runtime {:.3} s (< 1 s)", elapsed.as_secs_f64()),
    );
    Ok(c.finish())
}

/// Criterion 2: the stability threshold -2Ψ'(0.61), the two zeros of ξ', and
/// the root of the cubic-in-z reduction, each to 1e-9.
fn c2_stability_threshold() -> Result<(bool, String)> {
    let map = perturbed_map();
    let rep = stability(&map);
    let mut c = Checks::new();
    c.require(
        (rep.threshold - 3.282596521095308).abs() < 1e-9,
        format!("threshold = {:.15} (ref 3.282596521095308)", rep.threshold),
    );
    c.require(
        rep.classification == Classification::Attracting,
        format!("classification {:?} at a = 3.25", rep.classification),
    );
    let pts = critical_points(map.regularizer(), 3.25);
    c.require(pts.len() == 2, format!("{} zeros of xi'", pts.len()));
    if pts.len() == 2 {
        c.require(
            (pts[0] - 0.0442303467050842).abs() < 1e-9
                && (pts[1] - 0.9557696532949158).abs() < 1e-9,
            format!("zeros {:.16}, {:.16}", pts[0], pts[1]),
        );
    }
    // the substitution z = (x - 1/2)^2 reduces xi' = 0 to this cubic
    let g = |z: f64| 3.25 * z * z * z - 1.3191 * z * z + 0.377874 * z - 0.050706;
    let z = bisect(
        g,
        0.0,
        0.25,
        StopRule {
            x_abs: 1e-14,
            ..StopRule::default()
        },
    )?;
    c.require(
        (z - 0.2077259768645677).abs() < 1e-9,
        format!("cubic root z = {z:.16} (ref 0.2077259768645677)"),
    );
    if pts.len() == 2 {
        c.require(
            (0.5 + z.sqrt() - pts[1]).abs() < 1e-9,
            "0.5 + sqrt(z) matches the right zero".to_string(),
        );
    }
    Ok(c.finish())
}

/// Criterion 3: the period-6 certificate on [0.9559, 0.956] with the two
/// reference enclosures, in under a second.
fn c3_period6_certificate() -> Result<(bool, String)> {
    let start = Instant::now();
    let map = perturbed_map();
    let cert = verify_lmpy_witness(&map, 2, 3, (0.9559, 0.956))?;
    let elapsed = start.elapsed();
    let mut c = Checks::new();
    match cert {
        None => c.require(false, "witness interval did not certify".to_string()),
        Some(cert) => {
            let f2 = cert.image_after(2).expect("chain covers 6 applications");
            let f6 = cert.image_after(6).expect("chain covers 6 applications");
            c.require(
                f2.0 > 0.99 && f2.1 < 0.991,
                format!("f2(J) = [{:.6}, {:.6}] inside [0.99, 0.991]", f2.0, f2.1),
            );
            c.require(
                f6.0 > 0.65 && f6.1 < 0.8,
                format!("f6(J) = [{:.4}, {:.4}] inside [0.65, 0.8]", f6.0, f6.1),
            );
            c.require(
                cert.evidence.len() == 6,
                format!("monotonicity attested on all {} applications", cert.evidence.len()),
            );
            c.require(
                cert.implied_period() == 6,
                format!("implied period {}", cert.implied_period()),
            );
        }
    }
    c.require(
        elapsed.as_secs_f64() < 1.0,
        format!("runtime {:.3} s (< 1 s)", elapsed.as_secs_f64()),
    );
    Ok(c.finish())
}

/// Criterion 4: at the same parameters, a seed near b falls into the Nash
/// equilibrium while the right critical point's orbit never comes close.
fn c4_coexistence() -> Result<(bool, String)> {
    let map = perturbed_map();
    let b = 0.61;
    let mut c = Checks::new();

    let mut x = b + 1e-3;
    let mut hit = None;
    for n in 1..=10_000usize {
        x = map.step(x)?;
        if (x - b).abs() < 1e-9 {
            hit = Some(n);
            break;
        }
    }
    c.require(
        hit.is_some(),
        format!("seed b+1e-3 reached |x - b| < 1e-9 after {hit:?} steps"),
    );

    let right = map.critical_points()[1];
    let orbit = map.iterate(right, 4000, 201)?;
    let closest = orbit
        .points
        .iter()
        .map(|&p| (p - b).abs())
        .fold(f64::INFINITY, f64::min);
    c.require(
        closest >= 1e-3,
        format!("right-critical orbit stays {closest:.6} away from b over iterates 4000..4200"),
    );
    Ok(c.finish())
}

/// Criterion 5: Cesàro attraction for the log-barrier at a = 50, b = 0.61;
/// ten seeded random starts, average within 1e-3 of b after the long run and
/// closer than after the short run.
fn c5_cesaro(quick: bool) -> Result<(bool, String)> {
    let (n_long, n_short) = if quick { (100_000, 1_000) } else { (1_000_000, 10_000) };
    let map = ForelMap::new(Regularizer::LogBarrier, MapParams::new(50.0, 0.61).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut c = Checks::new();
    let mut worst_long = 0.0f64;
    let mut monotone = true;
    for _ in 0..10 {
        let x0: f64 = rng.random_range(0.05..0.95);
        let long = map.cesaro_average(x0, n_long)?;
        let short = map.cesaro_average(x0, n_short)?;
        let dev_long = (long.average - 0.61).abs();
        let dev_short = (short.average - 0.61).abs();
        worst_long = worst_long.max(dev_long);
        monotone &= dev_long < dev_short;
    }
    c.require(
        worst_long < 1e-3,
        format!("max |avg(n={n_long}) - b| = {worst_long:.2e} over 10 seeds (< 1e-3)"),
    );
    c.require(
        monotone,
        format!("deviation at n={n_long} below deviation at n={n_short} for every seed"),
    );
    Ok(c.finish())
}

/// Criterion 6: the symmetric period-2 solver at a = 10 (cycle found, residual
/// below 1e-10, globally reached) and at a = 4 (no cycle, global convergence
/// to 1/2).
fn c6_symmetric_period2() -> Result<(bool, String)> {
    let reg = Regularizer::Shannon;
    let mut c = Checks::new();

    let sigma = symmetric_period2(&reg, 10.0);
    match sigma {
        None => c.require(false, "no sigma found at a = 10".to_string()),
        Some(s) => {
            let residual = (2.0 * reg.psi(s)? + 10.0 * (s - 0.5)).abs();
            c.require(
                residual < 1e-10,
                format!("sigma = {s:.12}, residual {residual:.2e} (< 1e-10)"),
            );
            let map = ForelMap::new(reg.clone(), MapParams::new(10.0, 0.5).unwrap());
            let swap = (map.step(s)? - (1.0 - s)).abs();
            c.require(swap < 1e-10, format!("|f(sigma) - (1-sigma)| = {swap:.2e}"));
            let mut rng = ChaCha8Rng::seed_from_u64(43);
            let mut reached = 0;
            for _ in 0..100 {
                let x0: f64 = rng.random_range(0.01..0.99);
                let orbit = map.iterate(x0, 10_000 - 16, 16)?;
                if orbit
                    .points
                    .iter()
                    .all(|&x| (x - s).abs() < 1e-6 || (x - (1.0 - s)).abs() < 1e-6)
                {
                    reached += 1;
                }
            }
            c.require(
                reached == 100,
                format!("{reached}/100 seeds reached the cycle within 1e4 iterations"),
            );
        }
    }

    c.require(
        symmetric_period2(&reg, 4.0).is_none(),
        "a = 4 returns no cycle".to_string(),
    );
    let map = ForelMap::new(reg, MapParams::new(4.0, 0.5).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut converged = 0;
    for _ in 0..100 {
        let x0: f64 = rng.random_range(0.01..0.99);
        let orbit = map.iterate(x0, 10_000 - 1, 1)?;
        if (orbit.points[0] - 0.5).abs() < 1e-6 {
            converged += 1;
        }
    }
    c.require(
        converged == 100,
        format!("{converged}/100 seeds converged to 1/2 at a = 4"),
    );
    Ok(c.finish())
}

/// Criterion 7: conjugacy `1 - f_{a,b}(x) = f_{a,1-b}(1-x)` and antisymmetry
/// of Ψ over 1e4 random draws of (regularizer, a, b, x).
fn c7_conjugacy_antisymmetry() -> Result<(bool, String)> {
    let regs = [
        Regularizer::Shannon,
        Regularizer::LogBarrier,
        Regularizer::hct(0.5)?,
        Regularizer::hct(0.3)?,
        Regularizer::renyi(0.5)?,
        Regularizer::perturbed_default(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    let mut worst_conj = 0.0f64;
    let mut worst_anti = 0.0f64;
    // x stays 2e-3 from the boundary: nearer, the rounding of the mirrored
    // argument 1-x alone costs |Ψ'| * eps/2 > 1e-10 under the log-barrier's
    // 1/x² slope
    for _ in 0..10_000 {
        let reg = &regs[rng.random_range(0..regs.len())];
        let a: f64 = rng.random_range(1e-3..=50.0);
        let b: f64 = rng.random_range(1e-3..1.0 - 1e-3);
        let x: f64 = rng.random_range(2e-3..1.0 - 2e-3);
        let map = ForelMap::new(reg.clone(), MapParams::new(a, b).unwrap());
        let mirror = ForelMap::new(reg.clone(), MapParams::new(a, 1.0 - b).unwrap());
        let conj = (1.0 - map.step(x)? - mirror.step(1.0 - x)?).abs();
        let anti = (reg.psi(1.0 - x)? + reg.psi(x)?).abs();
        worst_conj = worst_conj.max(conj);
        worst_anti = worst_anti.max(anti);
    }
    let mut c = Checks::new();
    c.require(
        worst_conj < 1e-10,
        format!("max conjugacy residual {worst_conj:.2e} (< 1e-10)"),
    );
    c.require(
        worst_anti < 1e-10,
        format!("max antisymmetry residual {worst_anti:.2e} (< 1e-10)"),
    );
    Ok(c.finish())
}

/// Criterion 8: Schwarzian negativity for the log-barrier at a = 10 on 1e3
/// non-critical points, and the closed form SΨ against the chain-rule
/// assembly to relative 1e-8.
fn c8_schwarzian() -> Result<(bool, String)> {
    let map = ForelMap::new(Regularizer::LogBarrier, MapParams::new(10.0, 0.61).unwrap());
    let report = schwarzian_report(&map, 1000)?;
    let mut c = Checks::new();
    c.require(
        report.grid.len() == 1000 && report.all_negative,
        format!(
            "Sf < 0 at {} non-critical grid points (max value {:.3e})",
            report.grid.len(),
            report.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        ),
    );
    let mut worst = 0.0f64;
    for i in 1..=1000 {
        let x = i as f64 / 1001.0;
        let closed = 6.0 / (x * x + (1.0 - x) * (1.0 - x)).powi(2);
        let assembled = schwarzian_psi(&Regularizer::LogBarrier, x);
        worst = worst.max((assembled - closed).abs() / closed.abs());
    }
    c.require(
        worst < 1e-8,
        format!("closed-form SPsi matches assembly, max rel err {worst:.2e}"),
    );
    Ok(c.finish())
}

/// Criterion 9: lap-count entropy above 0.1 at a = 150 and below 0.01 at
/// a = 10 (log-barrier, b = 0.61), with matching Lyapunov signs.
fn c9_entropy_dichotomy(quick: bool) -> Result<(bool, String)> {
    let chaotic = ForelMap::new(Regularizer::LogBarrier, MapParams::new(150.0, 0.61).unwrap());
    let quiet = ForelMap::new(Regularizer::LogBarrier, MapParams::new(10.0, 0.61).unwrap());
    let mut c = Checks::new();

    let e_hi = topological_entropy_lap(&chaotic, 12)?;
    c.require(
        e_hi.final_estimate > 0.1,
        format!("entropy estimate {:.4} at a = 150 (> 0.1)", e_hi.final_estimate),
    );
    let e_lo = topological_entropy_lap(&quiet, 200)?;
    c.require(
        !e_lo.truncated && e_lo.final_estimate < 0.01,
        format!(
            "entropy estimate {:.5} at a = 10 after k = {} (< 0.01)",
            e_lo.final_estimate,
            e_lo.lap_counts.len()
        ),
    );

    let n = if quick { 20_000 } else { 100_000 };
    let seed = chaotic.step(chaotic.critical_points()[0])?;
    let lam_hi = lyapunov_exponent(&chaotic, seed, n, 1000)?;
    let lam_lo = lyapunov_exponent(&quiet, 0.3, n, 1000)?;
    c.require(
        lam_hi > 0.0 && lam_lo < 0.0,
        format!("Lyapunov {lam_hi:.3} at a = 150 (> 0), {lam_lo:.3} at a = 10 (< 0)"),
    );
    Ok(c.finish())
}

/// Criterion 10: bifurcation-diagram reproduction — first-bifurcation
/// agreement for three regularizers, the two coexistence windows, the
/// opposite-direction attractor evolution, all inside the runtime budget.
fn c10_bifurcation(quick: bool) -> Result<(bool, String)> {
    let start = Instant::now();
    let mut c = Checks::new();
    let div = if quick { 2 } else { 1 };

    // (i) first bifurcation at -2 psi'(b), within one grid step
    for (reg, b, a_min, a_max, steps) in [
        (Regularizer::LogBarrier, 0.61, 10.0, 30.0, 400 / div),
        (Regularizer::hct(0.5)?, 0.61, 4.04, 12.0, 200 / div),
        (Regularizer::Shannon, 0.5, 4.04, 12.0, 200 / div),
    ] {
        let threshold = -2.0 * reg.psi_deriv(b, 1)?;
        let mut cfg = SweepConfig::new(reg.clone(), b, a_min, a_max, steps);
        cfg.keep = 50;
        let ds = sweep(&cfg)?;
        let a_first = first_bifurcation(&ds, 1e-3)?;
        let cell = (a_max - a_min) / steps as f64;
        c.require(
            (a_first - threshold).abs() <= cell + 1e-12,
            format!(
                "{} first bifurcation {a_first:.4} vs threshold {threshold:.4} (cell {cell:.3})",
                reg.spec_string()
            ),
        );
    }

    // (ii) coexistence windows; large clouds keep the Hausdorff noise of a
    // shared chaotic attractor well below the 1e-3 separation threshold
    let window_check = |c: &mut Checks,
                        name: &str,
                        windows: &[Window],
                        lo: f64,
                        hi: f64|
     {
        let found = windows
            .iter()
            .find(|w| w.a_hi > lo && w.a_lo < hi && w.a_lo >= lo - 1.0 && w.a_hi <= hi + 1.0);
        c.require(
            found.is_some(),
            format!(
                "{name}: window overlapping ({lo}, {hi}) within +-1, got {:?}",
                windows
                    .iter()
                    .map(|w| (w.a_lo, w.a_hi))
                    .collect::<Vec<_>>()
            ),
        );
    };

    let mut cfg = SweepConfig::new(Regularizer::LogBarrier, 0.61, 85.0, 100.0, 150 / div);
    cfg.keep = 20_000;
    let cmp = compare_attractors(&sweep(&cfg)?, 1e-3)?;
    window_check(&mut c, "logbarrier", &cmp.windows, 92.0, 96.0);

    let mut cfg = SweepConfig::new(Regularizer::hct(0.5)?, 0.61, 20.0, 28.0, 160 / div);
    cfg.keep = 20_000;
    let cmp = compare_attractors(&sweep(&cfg)?, 1e-3)?;
    window_check(&mut c, "hct", &cmp.windows, 22.5, 24.5);

    // (iii) opposite-direction evolution across [146.97, 147]: both
    // attractors are multi-band with near-constant overall extent, so the
    // collapse of one and the growth of the other show up in the band
    // widths of the two clouds over the range where the seeds ride
    // genuinely distinct attractors (separation ~3e-2 there, against
    // ~2e-3 of pre-crisis fuzz below it)
    let cfg = SweepConfig::new(Regularizer::LogBarrier, 0.61, 146.97, 147.0, 30);
    let ds = sweep(&cfg)?;
    let cmp = compare_attractors(&ds, 5e-3)?;
    let distinct: Vec<usize> = (0..ds.rows.len())
        .filter(|&i| cmp.separation[i] > 5e-3)
        .collect();
    if distinct.len() < 6 {
        c.require(
            false,
            format!("only {} grid points with distinct attractors", distinct.len()),
        );
    } else {
        let band = |i: usize, cloud: usize| ds.rows[i].clouds[cloud].max_band_width(5e-3);
        let mean = |idx: &[usize], cloud: usize| -> f64 {
            idx.iter().map(|&i| band(i, cloud)).sum::<f64>() / idx.len() as f64
        };
        let head = &distinct[..3];
        let tail = &distinct[distinct.len() - 3..];
        let (left_head, left_tail) = (mean(head, 0), mean(tail, 0));
        let (right_head, right_tail) = (mean(head, 1), mean(tail, 1));
        c.require(
            left_tail < left_head && right_tail > right_head,
            format!(
                "left attractor band width {left_head:.4} -> {left_tail:.4} (collapsing), \
                 right {right_head:.4} -> {right_tail:.4} (growing), \
                 over a in [{:.4}, {:.4}]",
                ds.rows[distinct[0]].a,
                ds.rows[*distinct.last().expect("nonempty")].a
            ),
        );
    }

    let elapsed = start.elapsed();
    c.require(
        elapsed.as_secs_f64() < 300.0,
        format!("runtime {:.1} s (< 300 s)", elapsed.as_secs_f64()),
    );
    Ok(c.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_table_is_dense() {
        for (i, &(id, _)) in CRITERIA.iter().enumerate() {
            assert_eq!(id, i + 1);
        }
    }

    #[test]
    fn unknown_criterion_fails_cleanly() {
        let r = run_criterion(99, true);
        assert!(!r.passed);
    }
}

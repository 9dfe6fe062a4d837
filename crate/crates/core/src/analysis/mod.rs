//! Stability classification, critical points, period detection and the
//! chaos diagnostics (Lyapunov exponent, lap-number entropy, Schwarzian
//! derivative, odd-period certificates).

mod certificate;
mod entropy;

pub use certificate::{lmpy_certificate, verify_lmpy_witness, ChaosCertificate, Orientation, StepEvidence};
pub use entropy::{topological_entropy_lap, EntropyEstimate};

use crate::dynamics::{ForelMap, Orbit};
use crate::error::{Error, Result};
use crate::regularizers::Regularizer;
use crate::roots::{newton_bisect, StopRule};
use serde::Serialize;

/// Stability of the interior fixed point `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Attracting,
    Neutral,
    Repelling,
}

/// Multiplier `f'(b)`, the threshold `a* = -2Ψ'(b)`, and whether the
/// global-convergence hypothesis `Ψ''' < 0` holds on a sampled grid.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub multiplier: f64,
    pub threshold: f64,
    pub classification: Classification,
    pub global_convergence_hypothesis: bool,
}

/// Ties within 1e-12 of |multiplier| = 1 are reported as neutral rather than
/// silently rounded to one side.
const NEUTRAL_BAND: f64 = 1e-12;

pub fn stability(map: &ForelMap) -> StabilityReport {
    let reg = map.regularizer();
    let p = map.params();
    let psi1_b = reg.psi_deriv_unchecked(p.b, 1);
    let multiplier = (psi1_b + p.a) / psi1_b;
    let classification = if (multiplier.abs() - 1.0).abs() <= NEUTRAL_BAND {
        Classification::Neutral
    } else if multiplier.abs() < 1.0 {
        Classification::Attracting
    } else {
        Classification::Repelling
    };
    let mut hypothesis = true;
    for i in 1..=1000 {
        let x = i as f64 / 1001.0;
        if reg.psi_deriv_unchecked(x, 3) >= 0.0 {
            hypothesis = false;
            break;
        }
    }
    StabilityReport {
        multiplier,
        threshold: -2.0 * psi1_b,
        classification,
        global_convergence_hypothesis: hypothesis,
    }
}

/// All solutions of `Ψ'(x) + a = 0` in (0,1), by sign-change scan on a
/// uniform grid refined with safeguarded Newton. Tangencies produce no sign
/// change and are deliberately not reported; an empty list means the map is
/// a homeomorphism at this demand level.
pub fn critical_points(reg: &Regularizer, a: f64) -> Vec<f64> {
    critical_points_with_grid(reg, a, 10_000)
}

pub fn critical_points_with_grid(reg: &Regularizer, a: f64, cells: usize) -> Vec<f64> {
    let cells = cells.max(16);
    let g = |x: f64| reg.psi_deriv_unchecked(x, 1) + a;
    let xs: Vec<f64> = (1..cells).map(|i| i as f64 / cells as f64).collect();
    let gs: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    let mut out = Vec::new();
    for i in 0..gs.len() - 1 {
        if gs[i] == 0.0 {
            // transversal crossing that happens to land on a grid point
            let left = if i == 0 { -1.0 } else { gs[i - 1] };
            if left * gs[i + 1] < 0.0 {
                out.push(xs[i]);
            }
            continue;
        }
        if gs[i] * gs[i + 1] < 0.0 {
            let root = newton_bisect(
                |x| (g(x), reg.psi_deriv_unchecked(x, 2)),
                xs[i],
                xs[i + 1],
                a,
                StopRule {
                    x_abs: 1e-13,
                    f_rel: 1e-13,
                    max_iter: 200,
                },
            )
            .expect("bracketed refinement of a sign change cannot fail");
            out.push(root);
        }
    }
    out
}

/// Outcome of retained-orbit period detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PeriodDetection {
    Period(usize),
    Aperiodic,
}

/// Smallest `p <= max_period` with `|x_{k+p} - x_k| < tol` along the whole
/// retained window.
pub fn detect_period(orbit: &Orbit, tol: f64, max_period: usize) -> Result<PeriodDetection> {
    let pts = &orbit.points;
    if pts.len() < 2 * max_period {
        return Err(Error::InsufficientData {
            need: 2 * max_period,
            have: pts.len(),
        });
    }
    for p in 1..=max_period {
        if (0..pts.len() - p).all(|k| (pts[k + p] - pts[k]).abs() < tol) {
            return Ok(PeriodDetection::Period(p));
        }
    }
    Ok(PeriodDetection::Aperiodic)
}

/// Solve `2Ψ(σ) + a(σ - 1/2) = 0` on (0, 1/2).
///
/// The orbit `{σ, 1-σ}` is then a symmetric period-2 cycle of `f_{a,1/2}`.
/// No solution exists at or below the symmetric threshold `-2Ψ'(1/2)`.
pub fn symmetric_period2(reg: &Regularizer, a: f64) -> Option<f64> {
    let threshold = -2.0 * reg.psi_deriv_unchecked(0.5, 1);
    if a <= threshold {
        return None;
    }
    let h = |s: f64| 2.0 * reg.psi_unchecked(s) + a * (s - 0.5);
    // h -> +inf at 0; h < 0 just left of 1/2 once a beats the threshold
    let mut lo = 0.25;
    while h(lo) <= 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return None;
        }
    }
    let mut hi = 0.5 - 0.0625;
    while h(hi) >= 0.0 {
        hi = 0.5 - (0.5 - hi) * 0.5;
        if 0.5 - hi < 1e-14 {
            return None;
        }
    }
    newton_bisect(
        |s| (h(s), 2.0 * reg.psi_deriv_unchecked(s, 1) + a),
        lo,
        hi,
        1.0,
        StopRule {
            x_abs: 1e-15,
            f_rel: 1e-13,
            max_iter: 200,
        },
    )
    .ok()
}

/// Average of `log |f'|` along an orbit after a transient.
///
/// `f'` is evaluated analytically from consecutive iterates. Samples landing
/// within `1e-12` of a critical point are excluded; more than 1% of them is a
/// degenerate orbit and an error.
pub fn lyapunov_exponent(map: &ForelMap, x0: f64, n: usize, transient: usize) -> Result<f64> {
    const CRIT_TOL: f64 = 1e-12;
    if n == 0 {
        return Err(Error::Parameter {
            name: "n",
            value: 0.0,
            reason: "need at least one sample",
        });
    }
    let reg = map.regularizer();
    let p = map.params();
    let crit = map.critical_points();
    let mut y = reg.psi(x0)?;
    let mut x = reg.psi_inv(y)?;
    for _ in 0..transient {
        y += p.a * (x - p.b);
        x = reg.psi_inv(y)?;
    }
    let mut sum = 0.0;
    let mut hits = 0usize;
    for _ in 0..n {
        let near_critical = crit.iter().any(|&c| (x - c).abs() < CRIT_TOL);
        let num = reg.psi_deriv_unchecked(x, 1) + p.a;
        y += p.a * (x - p.b);
        let next = reg.psi_inv(y)?;
        if near_critical {
            hits += 1;
        } else {
            sum += (num / reg.psi_deriv_unchecked(next, 1)).abs().ln();
        }
        x = next;
    }
    if hits * 100 > n {
        return Err(Error::DegenerateOrbit {
            hits,
            total: n,
            tol: CRIT_TOL,
        });
    }
    Ok(sum / (n - hits) as f64)
}

/// Schwarzian derivative `Sf = f'''/f' - (3/2)(f''/f')^2` of the map at `x`,
/// assembled through the composition rule: with `g = Ψ∘f = Ψ + a(x-b)`,
/// `Sf(x) = Sg(x) - f'(x)^2 (SΨ)(f(x))`.
pub fn schwarzian(map: &ForelMap, x: f64) -> Result<f64> {
    let reg = map.regularizer();
    let p = map.params();
    let d1 = reg.psi_deriv(x, 1)?;
    let g1 = d1 + p.a;
    if g1.abs() < 1e-12 * d1.abs().max(p.a) {
        return Err(Error::CriticalSingularity(x));
    }
    let sg = schwarzian_of(g1, reg.psi_deriv_unchecked(x, 2), reg.psi_deriv_unchecked(x, 3));
    let fx = map.step(x)?;
    let spsi = schwarzian_psi(reg, fx);
    let fprime = g1 / reg.psi_deriv_unchecked(fx, 1);
    Ok(sg - fprime * fprime * spsi)
}

/// `SΨ` at a point, from the analytic derivatives.
pub fn schwarzian_psi(reg: &Regularizer, x: f64) -> f64 {
    schwarzian_of(
        reg.psi_deriv_unchecked(x, 1),
        reg.psi_deriv_unchecked(x, 2),
        reg.psi_deriv_unchecked(x, 3),
    )
}

#[inline]
fn schwarzian_of(d1: f64, d2: f64, d3: f64) -> f64 {
    let r = d2 / d1;
    d3 / d1 - 1.5 * r * r
}

/// Sign survey of `Sf` over `n` non-critical grid points.
#[derive(Debug, Clone, Serialize)]
pub struct SchwarzianReport {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub all_negative: bool,
}

pub fn schwarzian_report(map: &ForelMap, n: usize) -> Result<SchwarzianReport> {
    let crit = map.critical_points().to_vec();
    let total = n + 8 * crit.len() + 8;
    let mut grid = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    let mut all_negative = true;
    for i in 1..=total {
        if grid.len() == n {
            break;
        }
        let x = i as f64 / (total + 1) as f64;
        if crit.iter().any(|&c| (x - c).abs() < 1e-6) {
            continue;
        }
        let v = schwarzian(map, x)?;
        all_negative &= v < 0.0;
        grid.push(x);
        values.push(v);
    }
    Ok(SchwarzianReport {
        grid,
        values,
        all_negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::MapParams;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn map(reg: Regularizer, a: f64, b: f64) -> ForelMap {
        ForelMap::new(reg, MapParams::new(a, b).unwrap())
    }

    #[test]
    fn stability_reference_cases() {
        let r = stability(&map(Regularizer::perturbed_default(), 3.25, 0.61));
        assert_eq!(r.classification, Classification::Attracting);
        assert!((r.threshold - 3.282596521095308).abs() < 1e-12);
        assert!(!r.global_convergence_hypothesis);

        let r = stability(&map(Regularizer::Shannon, 8.0, 0.5));
        assert_eq!(r.classification, Classification::Neutral);
        assert_eq!(r.threshold, 8.0);
        assert_eq!(r.multiplier, -1.0);
        assert!(r.global_convergence_hypothesis);

        let r = stability(&map(Regularizer::LogBarrier, 20.0, 0.61));
        assert_eq!(r.classification, Classification::Repelling);
        let expected = 2.0 * (1.0 / (0.61f64 * 0.61) + 1.0 / (0.39f64 * 0.39));
        assert!((r.threshold - expected).abs() < 1e-9);
    }

    #[test]
    fn multiplier_matches_finite_difference_of_step() {
        for (reg, a, b) in [
            (Regularizer::Shannon, 3.0, 0.5),
            (Regularizer::LogBarrier, 12.0, 0.61),
            (Regularizer::hct(0.5).unwrap(), 5.0, 0.3),
            (Regularizer::perturbed_default(), 3.25, 0.61),
        ] {
            let m = map(reg, a, b);
            let rep = stability(&m);
            let h = 1e-6;
            let fd = (m.step(b + h).unwrap() - m.step(b - h).unwrap()) / (2.0 * h);
            assert!(
                (fd - rep.multiplier).abs() < 1e-6 * rep.multiplier.abs().max(1.0),
                "fd {fd} vs analytic {}",
                rep.multiplier
            );
        }
    }

    #[test]
    fn critical_points_of_perturbed_match_reference() {
        let pts = critical_points(&Regularizer::perturbed_default(), 3.25);
        assert_eq!(pts.len(), 2);
        assert!((pts[0] - 0.0442303467050842).abs() < 1e-9, "{}", pts[0]);
        assert!((pts[1] - 0.9557696532949158).abs() < 1e-9, "{}", pts[1]);
    }

    #[test]
    fn tangency_cases_yield_no_critical_points() {
        // max Ψ' is attained at 1/2 for both; these demands only graze it
        assert!(critical_points(&Regularizer::Shannon, 4.0).is_empty());
        let pts = critical_points(&Regularizer::LogBarrier, 8.0);
        assert!(pts.iter().all(|&c| (c - 0.5).abs() < 1e-6));
        assert!(pts.len() <= 1);
    }

    #[test]
    fn critical_points_come_in_symmetric_pairs() {
        for (reg, a) in [
            (Regularizer::Shannon, 10.0),
            (Regularizer::LogBarrier, 150.0),
            (Regularizer::hct(0.5).unwrap(), 40.0),
            (Regularizer::perturbed_default(), 3.25),
        ] {
            let pts = critical_points(&reg, a);
            assert_eq!(pts.len(), 2, "{reg}");
            assert!((pts[0] + pts[1] - 1.0).abs() < 1e-9, "{reg}: {pts:?}");
        }
    }

    #[test]
    fn detect_period_fixed_point_and_two_cycle() {
        let m = map(Regularizer::Shannon, 1.0, 0.5);
        let orbit = m.iterate(0.5, 0, 64).unwrap();
        assert_eq!(
            detect_period(&orbit, 1e-9, 16).unwrap(),
            PeriodDetection::Period(1)
        );

        let m = map(Regularizer::Shannon, 10.0, 0.5);
        let orbit = m.iterate(0.3, 4000, 64).unwrap();
        assert_eq!(
            detect_period(&orbit, 1e-9, 16).unwrap(),
            PeriodDetection::Period(2)
        );
    }

    #[test]
    fn detect_period_requires_enough_points() {
        let m = map(Regularizer::Shannon, 1.0, 0.5);
        let orbit = m.iterate(0.5, 0, 8).unwrap();
        assert!(matches!(
            detect_period(&orbit, 1e-9, 16),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn perturbed_attractor_period_is_six_or_aperiodic() {
        let m = map(Regularizer::perturbed_default(), 3.25, 0.61);
        let right = m.critical_points()[1];
        let orbit = m.iterate(right, 4000, 200).unwrap();
        let det = detect_period(&orbit, 1e-6, 32).unwrap();
        assert!(
            det == PeriodDetection::Period(6) || det == PeriodDetection::Aperiodic,
            "{det:?}"
        );
    }

    #[test]
    fn symmetric_period2_below_threshold_is_none() {
        assert!(symmetric_period2(&Regularizer::Shannon, 4.0).is_none());
        // log-barrier threshold is exactly 16
        assert!(symmetric_period2(&Regularizer::LogBarrier, 16.0).is_none());
    }

    #[test]
    fn symmetric_period2_solves_the_halving_equation() {
        let reg = Regularizer::Shannon;
        let s = symmetric_period2(&reg, 10.0).unwrap();
        assert!(s > 0.0 && s < 0.5);
        let residual = 2.0 * reg.psi(s).unwrap() + 10.0 * (s - 0.5);
        assert!(residual.abs() < 1e-10, "residual {residual}");
        let m = map(reg, 10.0, 0.5);
        assert!((m.step(s).unwrap() - (1.0 - s)).abs() < 1e-10);
        assert!((m.step(1.0 - s).unwrap() - s).abs() < 1e-10);
    }

    #[test]
    fn no_period_two_below_threshold_with_concave_psi_slope() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for reg in [
            Regularizer::Shannon,
            Regularizer::hct(0.5).unwrap(),
            Regularizer::LogBarrier,
        ] {
            let b = 0.61;
            let threshold = -2.0 * reg.psi_deriv_unchecked(b, 1);
            let m = map(reg.clone(), 0.9 * threshold, b);
            for _ in 0..100 {
                let x0: f64 = rng.random_range(0.01..0.99);
                let orbit = m.iterate(x0, 4000, 32).unwrap();
                let det = detect_period(&orbit, 1e-9, 8).unwrap();
                assert_ne!(det, PeriodDetection::Period(2), "{reg} from {x0}");
            }
        }
    }

    #[test]
    fn lyapunov_negative_at_attracting_equilibrium() {
        let m = map(Regularizer::perturbed_default(), 3.25, 0.61);
        let rep = stability(&m);
        let lam = lyapunov_exponent(&m, 0.6, 20_000, 1000).unwrap();
        assert!((lam - rep.multiplier.abs().ln()).abs() < 1e-3);
    }

    #[test]
    fn lyapunov_matches_two_cycle_chain_rule() {
        let m = map(Regularizer::Shannon, 10.0, 0.5);
        let s = symmetric_period2(&Regularizer::Shannon, 10.0).unwrap();
        let expected =
            0.5 * (m.derivative(s).unwrap().abs().ln() + m.derivative(1.0 - s).unwrap().abs().ln());
        let lam = lyapunov_exponent(&m, 0.31, 20_000, 2000).unwrap();
        assert!(lam < 0.0);
        assert!((lam - expected).abs() < 1e-6, "lam {lam}, expected {expected}");
    }

    #[test]
    fn lyapunov_positive_in_chaotic_regime() {
        let m = map(Regularizer::LogBarrier, 150.0, 0.61);
        let seed = m.step(m.critical_points()[0]).unwrap();
        let lam = lyapunov_exponent(&m, seed, 100_000, 1000).unwrap();
        assert!(lam > 0.0, "lam {lam}");
    }

    #[test]
    fn schwarzian_log_barrier_closed_forms() {
        // SΨ(x) = 6 / (x² + (1-x)²)², so SΨ(1/2) = 24
        assert!((schwarzian_psi(&Regularizer::LogBarrier, 0.5) - 24.0).abs() < 1e-12);
        for i in 1..200 {
            let x = i as f64 / 200.0;
            let closed = 6.0 / ((x * x + (1.0 - x) * (1.0 - x)).powi(2));
            let assembled = schwarzian_psi(&Regularizer::LogBarrier, x);
            assert!((assembled - closed).abs() < 1e-8 * closed.abs());
        }
        // x⁴ + (1-x)⁴ attains its minimum 1/8 at the midpoint
        let q = 0.5f64.powi(4) + 0.5f64.powi(4);
        assert_eq!(q, 0.125);
    }

    #[test]
    fn schwarzian_negative_above_eight() {
        let m = map(Regularizer::LogBarrier, 10.0, 0.61);
        let report = schwarzian_report(&m, 1000).unwrap();
        assert_eq!(report.grid.len(), 1000);
        assert!(report.all_negative);
    }

    #[test]
    fn schwarzian_errors_at_critical_points() {
        let m = map(Regularizer::LogBarrier, 10.0, 0.61);
        let c = m.critical_points()[0];
        assert!(matches!(
            schwarzian(&m, c),
            Err(Error::CriticalSingularity(_))
        ));
    }

    #[test]
    fn schwarzian_matches_finite_difference_composition() {
        // direct numerical Schwarzian from five-point stencils of the step
        // map; sampled away from the boundary where the stencil truncation
        // error stays below the 1e-3 comparison tolerance
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for (reg, a, b) in [
            (Regularizer::Shannon, 12.0, 0.5),
            (Regularizer::LogBarrier, 30.0, 0.61),
            (Regularizer::hct(0.5).unwrap(), 9.0, 0.4),
        ] {
            let m = map(reg, a, b);
            let crit = m.critical_points().to_vec();
            let mut checked = 0;
            while checked < 20 {
                let x: f64 = rng.random_range(0.15..0.85);
                if crit.iter().any(|&c| (x - c).abs() < 2e-2) {
                    continue;
                }
                let h = 5e-4;
                let f = |z: f64| m.step(z).unwrap();
                let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
                let d2 = (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
                let d3 = (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h))
                    / (2.0 * h * h * h);
                let fd = d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
                let sf = schwarzian(&m, x).unwrap();
                assert!(
                    (fd - sf).abs() < 1e-3 * sf.abs().max(1.0),
                    "at x={x}: fd {fd} vs {sf}"
                );
                checked += 1;
            }
        }
    }
}

//! Odd-period witnesses for chaos.
//!
//! If `g^n(x) < x < g(x)` holds for every `x` in an interval `J`, with `n`
//! odd, then `g` has a periodic point of period `n`; applied to `g = f` or
//! `g = f²` this forces a period that is not a power of two, hence positive
//! topological entropy and Li-Yorke chaos. The certificate records the chain
//! of interval images with a monotonicity attestation at every application,
//! so the two strict inclusions can be re-verified from endpoint values alone.

use crate::dynamics::ForelMap;
use crate::error::{Error, Result};
use serde::Serialize;

/// Which side of the identity the first inspected-map image landed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `g^n(J) < J < g(J)`: the inspected map pushes `J` up, its n-th
    /// iterate pushes it below.
    GAbove,
    /// The mirror case `g(J) < J < g^n(J)`, certifying the conjugate map.
    GBelow,
}

/// One application of `f` along the witness chain.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StepEvidence {
    /// 1-based count of `f` applications so far.
    pub application: usize,
    /// Interval the map was applied to.
    pub domain: (f64, f64),
    /// Its image, spanned by the endpoint values (monotone on `domain`).
    pub image: (f64, f64),
    /// Whether `f` is increasing on `domain`.
    pub increasing: bool,
}

/// A verified odd-period witness for `g = f^inspected_map_power`.
#[derive(Debug, Clone, Serialize)]
pub struct ChaosCertificate {
    /// Odd period certified for the inspected map.
    pub base_period: u32,
    /// 1 inspects `f` itself, 2 inspects `f²`.
    pub inspected_map_power: u32,
    pub witness_interval: (f64, f64),
    pub orientation: Orientation,
    /// The full image chain; entry `inspected_map_power` is `g(J)` and the
    /// last entry is `g^base_period(J)`.
    pub evidence: Vec<StepEvidence>,
}

impl ChaosCertificate {
    /// Period implied for `f` itself.
    pub fn implied_period(&self) -> u32 {
        self.base_period * self.inspected_map_power
    }

    /// Image after `k` applications of `f`.
    pub fn image_after(&self, k: usize) -> Option<(f64, f64)> {
        self.evidence.get(k - 1).map(|e| e.image)
    }
}

/// Verify a caller-supplied witness interval. Returns `Ok(None)` when the
/// interval fails monotonicity or the strict orderings at this precision.
pub fn verify_lmpy_witness(
    map: &ForelMap,
    inspected_power: u32,
    odd_n: u32,
    witness: (f64, f64),
) -> Result<Option<ChaosCertificate>> {
    check_args(inspected_power, odd_n)?;
    let (u, v) = witness;
    if !(0.0 < u && u < v && v < 1.0) {
        return Err(Error::Parameter {
            name: "witness",
            value: u,
            reason: "witness interval must satisfy 0 < u < v < 1",
        });
    }
    let total = (inspected_power * odd_n) as usize;
    let crit = map.critical_points();
    let mut evidence = Vec::with_capacity(total);
    let mut cur = (u, v);
    let mut g_image = None;
    for application in 1..=total {
        if crit.iter().any(|&c| cur.0 < c && c < cur.1) {
            // a fold inside the interval: monotonicity cannot be attested
            return Ok(None);
        }
        let e0 = map.step(cur.0)?;
        let e1 = map.step(cur.1)?;
        let increasing = e1 >= e0;
        let image = if increasing { (e0, e1) } else { (e1, e0) };
        evidence.push(StepEvidence {
            application,
            domain: cur,
            image,
            increasing,
        });
        cur = image;
        if application == inspected_power as usize {
            g_image = Some(image);
        }
    }
    let g = g_image.expect("power >= 1");
    let gn = cur;
    let orientation = if g.0 > v && gn.1 < u {
        Orientation::GAbove
    } else if g.1 < u && gn.0 > v {
        Orientation::GBelow
    } else {
        return Ok(None);
    };
    Ok(Some(ChaosCertificate {
        base_period: odd_n,
        inspected_map_power: inspected_power,
        witness_interval: witness,
        orientation,
        evidence,
    }))
}

/// Search for a witness interval.
///
/// For the plain map the scan follows the existence proof's bracket:
/// `x0` between `max(0, 3b-1)` and `b` with `f^n(x0) < x0 < f(x0)` (mirrored
/// for `b > 1/2`). For higher powers the scan covers the whole interval and
/// tests both orientations. Around every pointwise hit, a small interval is
/// shrunk until the monotone chain verifies; `None` means nothing was found
/// at this grid resolution.
pub fn lmpy_certificate(
    map: &ForelMap,
    inspected_power: u32,
    odd_n: u32,
    search_grid: usize,
) -> Result<Option<ChaosCertificate>> {
    check_args(inspected_power, odd_n)?;
    let b = map.params().b;
    let grid = search_grid.max(16);
    let (scan_lo, scan_hi) = if inspected_power == 1 && b < 0.5 {
        ((3.0 * b - 1.0).max(0.0) + 1e-6, b - 1e-6)
    } else if inspected_power == 1 && b > 0.5 {
        (b + 1e-6, 1.0 - (3.0 * (1.0 - b) - 1.0).max(0.0) - 1e-6)
    } else {
        (1e-3, 1.0 - 1e-3)
    };
    if scan_lo >= scan_hi {
        return Ok(None);
    }
    let cell = (scan_hi - scan_lo) / grid as f64;
    let total = (inspected_power * odd_n) as usize;
    for i in 0..=grid {
        let x0 = scan_lo + cell * i as f64;
        let mut z = x0;
        let mut g_val = None;
        for k in 1..=total {
            z = map.step(z)?;
            if k == inspected_power as usize {
                g_val = Some(z);
            }
        }
        let g = g_val.expect("power >= 1");
        let hit = (z < x0 && x0 < g) || (z > x0 && x0 > g);
        if !hit {
            continue;
        }
        let mut h = cell / 8.0;
        for _ in 0..16 {
            let witness = (x0 - h, x0 + h);
            if witness.0 > 0.0 && witness.1 < 1.0 {
                if let Some(cert) = verify_lmpy_witness(map, inspected_power, odd_n, witness)? {
                    return Ok(Some(cert));
                }
            }
            h *= 0.5;
        }
    }
    Ok(None)
}

fn check_args(inspected_power: u32, odd_n: u32) -> Result<()> {
    if inspected_power == 0 {
        return Err(Error::Parameter {
            name: "inspected_power",
            value: 0.0,
            reason: "must inspect at least the first iterate",
        });
    }
    if odd_n < 3 || odd_n % 2 == 0 {
        return Err(Error::Parameter {
            name: "odd_n",
            value: odd_n as f64,
            reason: "period must be odd and at least 3",
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::MapParams;
    use crate::regularizers::Regularizer;

    fn map(reg: Regularizer, a: f64, b: f64) -> ForelMap {
        ForelMap::new(reg, MapParams::new(a, b).unwrap())
    }

    #[test]
    fn perturbed_reference_witness_verifies() {
        let m = map(Regularizer::perturbed_default(), 3.25, 0.61);
        let cert = verify_lmpy_witness(&m, 2, 3, (0.9559, 0.956))
            .unwrap()
            .expect("the reference witness must certify");
        assert_eq!(cert.orientation, Orientation::GAbove);
        assert_eq!(cert.implied_period(), 6);
        let f2 = cert.image_after(2).unwrap();
        assert!(f2.0 > 0.99 && f2.1 < 0.991, "f²(J) = {f2:?}");
        let f6 = cert.image_after(6).unwrap();
        assert!(f6.0 > 0.65 && f6.1 < 0.8, "f⁶(J) = {f6:?}");
    }

    #[test]
    fn certificate_reverifies_pointwise() {
        let m = map(Regularizer::perturbed_default(), 3.25, 0.61);
        let cert = verify_lmpy_witness(&m, 2, 3, (0.9559, 0.956))
            .unwrap()
            .unwrap();
        let (u, v) = cert.witness_interval;
        for i in 0..=1000 {
            let x = u + (v - u) * i as f64 / 1000.0;
            let mut g = x;
            for _ in 0..2 {
                g = m.step(g).unwrap();
            }
            let mut gn = g;
            for _ in 0..4 {
                gn = m.step(gn).unwrap();
            }
            assert!(gn < x && x < g, "ordering fails at {x}");
        }
    }

    #[test]
    fn no_witness_below_the_symmetric_threshold() {
        let m = map(Regularizer::Shannon, 4.0, 0.5);
        assert!(lmpy_certificate(&m, 1, 3, 1000).unwrap().is_none());
    }

    #[test]
    fn search_finds_period_three_in_the_chaotic_regime() {
        let m = map(Regularizer::LogBarrier, 150.0, 0.61);
        let cert = lmpy_certificate(&m, 1, 3, 1000)
            .unwrap()
            .expect("period-3 witness exists for large demand");
        assert_eq!(cert.base_period, 3);
        assert_eq!(cert.inspected_map_power, 1);
        // re-verify the strict ordering across the found interval
        let (u, v) = cert.witness_interval;
        for i in 0..=1000 {
            let x = u + (v - u) * i as f64 / 1000.0;
            let fx = m.step(x).unwrap();
            let f3 = m.step(m.step(fx).unwrap()).unwrap();
            match cert.orientation {
                Orientation::GAbove => assert!(f3 < x && x < fx),
                Orientation::GBelow => assert!(f3 > x && x > fx),
            }
        }
    }

    #[test]
    fn argument_validation() {
        let m = map(Regularizer::Shannon, 10.0, 0.5);
        assert!(verify_lmpy_witness(&m, 1, 4, (0.1, 0.2)).is_err());
        assert!(verify_lmpy_witness(&m, 0, 3, (0.1, 0.2)).is_err());
        assert!(verify_lmpy_witness(&m, 1, 3, (0.2, 0.1)).is_err());
    }

    #[test]
    fn witness_straddling_a_fold_is_rejected() {
        let m = map(Regularizer::LogBarrier, 150.0, 0.61);
        let c = m.critical_points()[0];
        let out = verify_lmpy_witness(&m, 1, 3, (c - 1e-3, c + 1e-3)).unwrap();
        assert!(out.is_none());
    }
}

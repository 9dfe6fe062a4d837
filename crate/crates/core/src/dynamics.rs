//! The induced interval map and its orbits.
//!
//! The recursion is exact in the dual coordinate `y = Ψ(x)`: one step is
//! `y ← y + a(Ψ⁻¹(y) - b)`. All iteration here runs in that coordinate;
//! chaotic regimes push `x` within 1e-9 of the boundary where the primal
//! coordinate has no precision left, while the dual stays a well-conditioned
//! finite value.

use crate::analysis;
use crate::error::{Error, Result};
use crate::regularizers::{Regularizer, X_MAX, X_MIN};
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Congestion-game inputs: cost slopes, total flow, learning rate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    pub alpha: f64,
    pub beta: f64,
    pub total_flow: f64,
    pub epsilon: f64,
}

impl GameParams {
    pub fn new(alpha: f64, beta: f64, total_flow: f64, epsilon: f64) -> Result<Self> {
        for (name, v) in [
            ("alpha", alpha),
            ("beta", beta),
            ("total_flow", total_flow),
            ("epsilon", epsilon),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parameter {
                    name,
                    value: v,
                    reason: "must be finite and positive",
                });
            }
        }
        let g = GameParams {
            alpha,
            beta,
            total_flow,
            epsilon,
        };
        g.check_normalization()?;
        Ok(g)
    }

    fn check_normalization(&self) -> Result<()> {
        let sum = self.alpha + self.beta;
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Normalization { sum });
        }
        Ok(())
    }

    /// Reduce to the two map parameters: `a = N*eps`, `b = beta`.
    pub fn to_map_params(&self) -> Result<MapParams> {
        self.check_normalization()?;
        MapParams::new(self.total_flow * self.epsilon, self.beta)
    }
}

/// Reduced parameter pair: normalized demand `a` and equilibrium flow `b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MapParams {
    pub a: f64,
    pub b: f64,
}

impl MapParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::Parameter {
                name: "a",
                value: a,
                reason: "normalized demand must be finite and positive",
            });
        }
        if !(b > 0.0 && b < 1.0) {
            return Err(Error::Parameter {
                name: "b",
                value: b,
                reason: "equilibrium flow must lie in (0,1)",
            });
        }
        Ok(MapParams { a, b })
    }
}

/// A stored trajectory: the last `points.len()` iterates after a transient,
/// in both coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Orbit {
    pub seed: f64,
    pub transient: usize,
    pub points: Vec<f64>,
    pub dual_points: Vec<f64>,
}

impl Orbit {
    /// Spread of the retained points.
    pub fn diameter(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &x in &self.points {
            lo = lo.min(x);
            hi = hi.max(x);
        }
        hi - lo
    }
}

/// Running average of the first `n` iterates, with the a-priori rate bound
/// `|avg - b| <= max(|Ψ(lo)-Ψ(x0)|, |Ψ(hi)-Ψ(x0)|) / (a n)` taken over the
/// certified invariant interval.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CesaroAverage {
    pub average: f64,
    pub bound: f64,
    pub n: usize,
}

/// The map `f_{a,b}` for a fixed regularizer and parameter pair.
#[derive(Debug)]
pub struct ForelMap {
    regularizer: Regularizer,
    params: MapParams,
    critical: OnceLock<Vec<f64>>,
}

impl ForelMap {
    pub fn new(regularizer: Regularizer, params: MapParams) -> Self {
        ForelMap {
            regularizer,
            params,
            critical: OnceLock::new(),
        }
    }

    pub fn regularizer(&self) -> &Regularizer {
        &self.regularizer
    }

    pub fn params(&self) -> MapParams {
        self.params
    }

    /// One step of the map. The boundary points are fixed by definition;
    /// interior output stays strictly inside (0,1).
    pub fn step(&self, x: f64) -> Result<f64> {
        if x == 0.0 {
            return Ok(0.0);
        }
        if x == 1.0 {
            return Ok(1.0);
        }
        let y = self.regularizer.psi(x)?;
        self.regularizer
            .psi_inv(y + self.params.a * (x - self.params.b))
    }

    /// The same step in the dual coordinate: `y + a(Ψ⁻¹(y) - b)`.
    pub fn step_dual(&self, y: f64) -> Result<f64> {
        let x = self.regularizer.psi_inv(y)?;
        Ok(y + self.params.a * (x - self.params.b))
    }

    /// Analytic derivative `f'(x) = (Ψ'(x) + a) / Ψ'(f(x))`.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        let num = self.regularizer.psi_deriv(x, 1)? + self.params.a;
        let fx = self.step(x)?;
        Ok(num / self.regularizer.psi_deriv(fx, 1)?)
    }

    /// Zeros of `Ψ' + a`, computed once per map (default scan grid).
    pub fn critical_points(&self) -> &[f64] {
        self.critical
            .get_or_init(|| analysis::critical_points(&self.regularizer, self.params.a))
    }

    /// Run `transient + keep` steps from `x0` in dual coordinates and retain
    /// the last `keep` iterates in both coordinates.
    pub fn iterate(&self, x0: f64, transient: usize, keep: usize) -> Result<Orbit> {
        if keep == 0 {
            return Err(Error::Parameter {
                name: "keep",
                value: 0.0,
                reason: "must retain at least one iterate",
            });
        }
        let mut y = self.regularizer.psi(x0)?;
        let total = transient + keep;
        let mut points = Vec::with_capacity(keep);
        let mut duals = Vec::with_capacity(keep);
        for k in 0..total {
            let x = self.regularizer.psi_inv(y)?;
            if k >= transient {
                points.push(x);
                duals.push(y);
            }
            y += self.params.a * (x - self.params.b);
        }
        Ok(Orbit {
            seed: x0,
            transient,
            points,
            dual_points: duals,
        })
    }

    /// Cesàro average of the first `n` iterates (compensated summation), with
    /// the a-priori bound from the certified invariant interval.
    pub fn cesaro_average(&self, x0: f64, n: usize) -> Result<CesaroAverage> {
        if n == 0 {
            return Err(Error::Parameter {
                name: "n",
                value: 0.0,
                reason: "need at least one iterate to average",
            });
        }
        let y0 = self.regularizer.psi(x0)?;
        let mut y = y0;
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for _ in 0..n {
            let x = self.regularizer.psi_inv(y)?;
            // Neumaier compensation
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
            y += self.params.a * (x - self.params.b);
        }
        let average = (sum + comp) / n as f64;
        let (lo, hi) = self.invariant_interval()?;
        let span = (self.regularizer.psi(lo)? - y0)
            .abs()
            .max((self.regularizer.psi(hi)? - y0).abs());
        Ok(CesaroAverage {
            average,
            bound: span / (self.params.a * n as f64),
            n,
        })
    }

    /// A numerically certified invariant interval `[lo, hi]` with
    /// `f([lo, hi]) ⊆ [lo, hi]`.
    ///
    /// The map is piecewise monotone, so the image of an interval is spanned
    /// exactly by its endpoint values and the critical values inside it. The
    /// enclosure starts from the hull of the fixed point, the critical points
    /// and their images, then grows by outward-rounded image hulls until
    /// inclusion holds.
    pub fn invariant_interval(&self) -> Result<(f64, f64)> {
        const PAD: f64 = 1e-12;
        const CAP: usize = 10_000;
        let b = self.params.b;
        let mut lo = b;
        let mut hi = b;
        for &c in self.critical_points() {
            let fc = self.step(c)?;
            lo = lo.min(c).min(fc);
            hi = hi.max(c).max(fc);
        }
        lo = (lo - 1e-6).max(X_MIN);
        hi = (hi + 1e-6).min(X_MAX);
        for _ in 0..CAP {
            let (ilo, ihi) = self.interval_image(lo, hi, PAD)?;
            if ilo >= lo && ihi <= hi {
                return Ok((lo, hi));
            }
            lo = lo.min(ilo);
            hi = hi.max(ihi);
        }
        Err(Error::Certification(CAP))
    }

    /// Outward-rounded hull of `f([lo, hi])` via monotone-piece decomposition.
    fn interval_image(&self, lo: f64, hi: f64, pad: f64) -> Result<(f64, f64)> {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut take = |v: f64| {
            min = min.min(v);
            max = max.max(v);
        };
        take(self.step(lo)?);
        take(self.step(hi)?);
        for &c in self.critical_points() {
            if lo < c && c < hi {
                take(self.step(c)?);
            }
        }
        Ok(((min - pad).max(X_MIN), (max + pad).min(X_MAX)))
    }
}

//! Catalog of admissible regularizers.
//!
//! Each entry exposes the decreasing homeomorphism `Ψ = -r'` on (0,1), its
//! first three analytic derivatives, and the inverse `Ψ⁻¹`. Shannon and the
//! log-barrier invert in closed form; the rest fall back to bracketed
//! Newton/bisection, which is always available because `Ψ` is strictly
//! monotone for members of the admissible class.
//!
//! Membership itself (symmetry, strict convexity of `r`, steepness at zero)
//! is checked numerically by [`Regularizer::validate`]; non-members such as
//! the Euclidean case `hct:q=2` can still be constructed and evaluated so the
//! validator has something to reject.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Smallest value an inversion may return; outputs are clamped into
/// `[X_MIN, X_MAX]` so downstream code never sees 0 or 1 from `psi_inv`.
pub const X_MIN: f64 = f64::MIN_POSITIVE;
/// Largest representable value below 1.
pub const X_MAX: f64 = 1.0 - f64::EPSILON / 2.0;

/// A named member (or candidate member) of the admissible regularizer class.
#[derive(Debug, Clone, PartialEq)]
pub enum Regularizer {
    /// Negative Shannon entropy; induces multiplicative-weights dynamics.
    Shannon,
    /// Havrda-Charvat-Tsallis entropy of degree `q`; in the class for `q` in (0,1).
    Hct { q: f64 },
    /// Renyi entropy of order `q`; in the class for `q` in (0,1).
    Renyi { q: f64 },
    /// `r(x) = -log x - log(1-x)`, with `Ψ(x) = 1/x - 1/(1-x)`.
    LogBarrier,
    /// Shannon plus a symmetric barrier `c*(1/((1+m)-x) - 1/(x+m))`, where
    /// `m = (sqrt(1+4d)-1)/2` places the barrier poles at `-m` and `1+m`.
    Perturbed { c: f64, d: f64 },
}

impl Regularizer {
    pub fn hct(q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(Regularizer::Hct { q })
    }

    pub fn renyi(q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(Regularizer::Renyi { q })
    }

    pub fn perturbed(c: f64, d: f64) -> Result<Self> {
        if !c.is_finite() || c < 0.0 {
            return Err(Error::Parameter {
                name: "c",
                value: c,
                reason: "barrier weight must be finite and nonnegative",
            });
        }
        if !d.is_finite() || d <= 0.0 {
            return Err(Error::Parameter {
                name: "d",
                value: d,
                reason: "barrier shift must be positive so -x^2+x+d > 0 on (0,1)",
            });
        }
        Ok(Regularizer::Perturbed { c, d })
    }

    /// The paper's perturbed instance: `c = 0.4167`, `d = 0.11`.
    pub fn perturbed_default() -> Self {
        Regularizer::Perturbed { c: 0.4167, d: 0.11 }
    }

    /// Canonical spec string, e.g. `hct:q=0.5`. Parsing this back gives an
    /// identical regularizer.
    pub fn spec_string(&self) -> String {
        match self {
            Regularizer::Shannon => "shannon".into(),
            Regularizer::Hct { q } => format!("hct:q={q}"),
            Regularizer::Renyi { q } => format!("renyi:q={q}"),
            Regularizer::LogBarrier => "logbarrier".into(),
            Regularizer::Perturbed { c, d } => format!("perturbed:c={c},d={d}"),
        }
    }

    /// Parse a spec string: `shannon`, `hct:q=<v>`, `renyi:q=<v>`,
    /// `logbarrier`, `perturbed:c=<v>,d=<v>`. Unknown names or keys are
    /// rejected rather than ignored.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (head, args) = match spec.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (spec, None),
        };
        let reject_args = |name: &'static str| -> Result<()> {
            match args {
                None => Ok(()),
                Some(_) => Err(Error::Spec {
                    spec: spec.to_string(),
                    reason: format!("{name} takes no parameters"),
                }),
            }
        };
        match head {
            "shannon" => {
                reject_args("shannon")?;
                Ok(Regularizer::Shannon)
            }
            "logbarrier" => {
                reject_args("logbarrier")?;
                Ok(Regularizer::LogBarrier)
            }
            "hct" => Regularizer::hct(parse_kv(spec, args, &["q"])?[0]),
            "renyi" => Regularizer::renyi(parse_kv(spec, args, &["q"])?[0]),
            "perturbed" => match args {
                None => Ok(Regularizer::perturbed_default()),
                Some(_) => {
                    let vals = parse_kv(spec, args, &["c", "d"])?;
                    Regularizer::perturbed(vals[0], vals[1])
                }
            },
            other => Err(Error::Spec {
                spec: spec.to_string(),
                reason: format!("unknown regularizer {other:?}"),
            }),
        }
    }

    /// `Ψ(x)` for `x` in the open unit interval.
    pub fn psi(&self, x: f64) -> Result<f64> {
        check_domain(x)?;
        Ok(self.psi_unchecked(x))
    }

    #[inline]
    pub(crate) fn psi_unchecked(&self, x: f64) -> f64 {
        match *self {
            Regularizer::Shannon => shannon_psi(x),
            Regularizer::Hct { q } => {
                let k = q / (1.0 - q);
                k * (x.powf(q - 1.0) - (1.0 - x).powf(q - 1.0))
            }
            Regularizer::Renyi { q } => {
                let u = x.powf(q - 1.0) - (1.0 - x).powf(q - 1.0);
                let v = x.powf(q) + (1.0 - x).powf(q);
                q / (1.0 - q) * u / v
            }
            Regularizer::LogBarrier => 1.0 / x - 1.0 / (1.0 - x),
            Regularizer::Perturbed { c, d } => {
                let m = barrier_shift(d);
                // (1+m) - x written as (1-x) + m keeps the two pole distances
                // exact mirrors of each other under x -> 1-x
                shannon_psi(x) + c * (1.0 / ((1.0 - x) + m) - 1.0 / (x + m))
            }
        }
    }

    /// Analytic derivative `Ψ^(order)(x)` for `order` in 1..=3.
    pub fn psi_deriv(&self, x: f64, order: u8) -> Result<f64> {
        check_domain(x)?;
        if order == 0 || order > 3 {
            return Err(Error::UnsupportedOrder(order));
        }
        Ok(self.psi_deriv_unchecked(x, order))
    }

    pub(crate) fn psi_deriv_unchecked(&self, x: f64, order: u8) -> f64 {
        let y = 1.0 - x;
        match *self {
            Regularizer::Shannon => shannon_deriv(x, order),
            Regularizer::Hct { q } => {
                let pow = |e: f64| x.powf(e) + if order % 2 == 1 { y.powf(e) } else { -y.powf(e) };
                match order {
                    1 => -q * pow(q - 2.0),
                    2 => -q * (q - 2.0) * pow(q - 3.0),
                    _ => -q * (q - 2.0) * (q - 3.0) * pow(q - 4.0),
                }
            }
            Regularizer::Renyi { q } => {
                let u = x.powf(q - 1.0) - y.powf(q - 1.0);
                let u1 = (q - 1.0) * (x.powf(q - 2.0) + y.powf(q - 2.0));
                let u2 = (q - 1.0) * (q - 2.0) * (x.powf(q - 3.0) - y.powf(q - 3.0));
                let u3 = (q - 1.0) * (q - 2.0) * (q - 3.0) * (x.powf(q - 4.0) + y.powf(q - 4.0));
                let v = x.powf(q) + y.powf(q);
                let (v1, v2, v3) = (q * u, q * u1, q * u2);
                // successive quotient derivatives of w = u / v via Leibniz
                let w = u / v;
                let w1 = (u1 - w * v1) / v;
                let w2 = (u2 - 2.0 * w1 * v1 - w * v2) / v;
                let w3 = (u3 - 3.0 * w2 * v1 - 3.0 * w1 * v2 - w * v3) / v;
                let k = q / (1.0 - q);
                match order {
                    1 => k * w1,
                    2 => k * w2,
                    _ => k * w3,
                }
            }
            Regularizer::LogBarrier => match order {
                1 => -1.0 / (x * x) - 1.0 / (y * y),
                2 => 2.0 / (x * x * x) - 2.0 / (y * y * y),
                _ => -6.0 / (x * x * x * x) - 6.0 / (y * y * y * y),
            },
            Regularizer::Perturbed { c, d } => {
                let m = barrier_shift(d);
                let p = x + m; // distance to the pole at -m
                let r = (1.0 - x) + m; // distance to the pole at 1+m
                let barrier = match order {
                    1 => 1.0 / (r * r) + 1.0 / (p * p),
                    2 => 2.0 / (r * r * r) - 2.0 / (p * p * p),
                    _ => 6.0 / (r * r * r * r) + 6.0 / (p * p * p * p),
                };
                shannon_deriv(x, order) + c * barrier
            }
        }
    }

    /// Inverse of the homeomorphism: the unique `x` in (0,1) with `Ψ(x) = y`.
    ///
    /// Closed form for Shannon and the log-barrier; otherwise a bracket is
    /// expanded geometrically toward the boundary and handed to the
    /// safeguarded Newton solver. Output is clamped to `[X_MIN, X_MAX]`.
    pub fn psi_inv(&self, y: f64) -> Result<f64> {
        match *self {
            Regularizer::Shannon => Ok(clamp_unit(stable_sigmoid(-y))),
            Regularizer::LogBarrier => {
                // root in (0,1) of y*x^2 - (y+2)*x + 1 = 0, in the form that
                // avoids cancellation on either side of zero
                let s = (y * y + 4.0).sqrt();
                let x = if y >= 0.0 {
                    2.0 / ((y + 2.0) + s)
                } else {
                    1.0 - 2.0 / ((2.0 - y) + s)
                };
                Ok(clamp_unit(x))
            }
            _ => self.psi_inv_numeric(y),
        }
    }

    fn psi_inv_numeric(&self, y: f64) -> Result<f64> {
        if y == 0.0 {
            // antisymmetry pins Ψ(1/2) = 0
            return Ok(0.5);
        }
        // Targets beyond the representable range of Ψ clamp to the boundary,
        // provided Ψ actually diverges there; a flat tail means the candidate
        // is not steep and y has no preimage at all.
        let top = self.psi_unchecked(X_MIN);
        if y >= top {
            return if top - self.psi_unchecked(1e-8) > 1.0 {
                Ok(X_MIN)
            } else {
                Err(Error::Convergence {
                    iterations: 0,
                    last_x: X_MIN,
                })
            };
        }
        let bottom = self.psi_unchecked(X_MAX);
        if y <= bottom {
            return if self.psi_unchecked(1.0 - 1e-8) - bottom > 1.0 {
                Ok(X_MAX)
            } else {
                Err(Error::Convergence {
                    iterations: 0,
                    last_x: X_MAX,
                })
            };
        }
        // Ψ is decreasing: push lo toward 0 until Ψ(lo) > y, and hi toward 1
        // until Ψ(hi) < y; both terminate because y is inside the range.
        let mut lo = 0.25;
        let mut hi = 0.75;
        while self.psi_unchecked(lo) <= y {
            lo *= 0.5;
            if lo < X_MIN {
                return Ok(X_MIN);
            }
        }
        while self.psi_unchecked(hi) >= y {
            hi = 1.0 - (1.0 - hi) * 0.5;
            if hi >= X_MAX {
                return Ok(X_MAX);
            }
        }
        // The root can sit hundreds of decades inside the bracket, so the
        // safeguarded Newton runs in logit coordinates t = log(x/(1-x)),
        // where a fixed t resolution means fixed relative resolution of x
        // near 0 and of 1-x near 1.
        let logit = |x: f64| (x / (1.0 - x)).ln();
        let mut t_lo = logit(lo);
        let mut t_hi = logit(hi);
        let f_tol = 1e-12 * y.abs().max(1.0);
        let mut t = 0.5 * (t_lo + t_hi);
        let mut prev_width = t_hi - t_lo;
        let mut best = (f64::INFINITY, 0.5);
        for _ in 0..200 {
            let x = stable_sigmoid(t);
            let fx = self.psi_unchecked(x) - y;
            if fx.abs() < best.0 {
                best = (fx.abs(), x);
            }
            if fx == 0.0 || fx.abs() < f_tol {
                return Ok(clamp_unit(x));
            }
            // Ψ(x(t)) decreases in t
            if fx > 0.0 {
                t_lo = t;
            } else {
                t_hi = t;
            }
            let width = t_hi - t_lo;
            // near x = 1 the grid of representable points is coarser than
            // f_tol demands; once the bracket ends map to (nearly) adjacent
            // floats, the best point seen is the correctly rounded answer
            let x_hi = stable_sigmoid(t_hi);
            let span = x_hi - stable_sigmoid(t_lo);
            if width < 1e-12 || span <= x_hi * f64::EPSILON {
                return Ok(clamp_unit(best.1));
            }
            let dft = self.psi_deriv_unchecked(x, 1) * x * (1.0 - x);
            let newton = t - fx / dft;
            // a Newton step is taken only while the bracket keeps shrinking,
            // so one-sided creep cannot dodge the bisection safeguard
            t = if dft.is_finite() && newton > t_lo && newton < t_hi && width <= 0.6 * prev_width
            {
                newton
            } else {
                0.5 * (t_lo + t_hi)
            };
            prev_width = width;
        }
        Err(Error::Convergence {
            iterations: 200,
            last_x: stable_sigmoid(t),
        })
    }

    /// Numerical membership check for the admissible class on a sampled grid.
    pub fn validate(&self, grid_size: usize) -> ValidationReport {
        let n = grid_size.max(3);
        let mut decreasing = true;
        let mut residual: f64 = 0.0;
        let mut prev = f64::INFINITY;
        for i in 1..=n {
            let x = i as f64 / (n + 1) as f64;
            let v = self.psi_unchecked(x);
            if v >= prev {
                decreasing = false;
            }
            residual = residual.max((self.psi_unchecked(1.0 - x) + v).abs());
            prev = v;
        }
        // divergence test, truncated: each decade toward 0 must still gain
        // at least +1 in Ψ, which separates every catalog member from the
        // bounded q >= 1 cases
        let mut steep = true;
        for k in 4..=12 {
            let fine = self.psi_unchecked(10f64.powi(-k));
            let coarse = self.psi_unchecked(10f64.powi(-(k - 1)));
            if fine <= coarse + 1.0 {
                steep = false;
                break;
            }
        }
        ValidationReport {
            symmetric: residual < 1e-9,
            strictly_convex: decreasing,
            steep_at_zero: steep,
            max_antisymmetry_residual: residual,
            grid_size: n,
        }
    }
}

impl std::fmt::Display for Regularizer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.spec_string())
    }
}

impl std::str::FromStr for Regularizer {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Regularizer::parse(s)
    }
}

impl Serialize for Regularizer {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.spec_string())
    }
}

impl<'de> Deserialize<'de> for Regularizer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Regularizer::parse(&s).map_err(D::Error::custom)
    }
}

/// Outcome of the membership checks; all three flags true means the candidate
/// passed on the sampled grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub symmetric: bool,
    pub strictly_convex: bool,
    pub steep_at_zero: bool,
    pub max_antisymmetry_residual: f64,
    pub grid_size: usize,
}

impl ValidationReport {
    pub fn is_member(&self) -> bool {
        self.symmetric && self.strictly_convex && self.steep_at_zero
    }
}

#[inline]
fn shannon_psi(x: f64) -> f64 {
    (-x).ln_1p() - x.ln()
}

fn shannon_deriv(x: f64, order: u8) -> f64 {
    let u = x * (1.0 - x);
    match order {
        1 => -1.0 / u,
        2 => (1.0 - 2.0 * x) / (u * u),
        _ => {
            let s = 1.0 - 2.0 * x;
            -2.0 * (u + s * s) / (u * u * u)
        }
    }
}

/// Positive root offset of `-x^2 + x + d`, so the factorization
/// `(x + m) * ((1 + m) - x)` holds.
#[inline]
fn barrier_shift(d: f64) -> f64 {
    ((1.0 + 4.0 * d).sqrt() - 1.0) * 0.5
}

#[inline]
fn stable_sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

#[inline]
fn clamp_unit(x: f64) -> f64 {
    x.clamp(X_MIN, X_MAX)
}

fn check_domain(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain { x });
    }
    Ok(())
}

fn check_q(q: f64) -> Result<()> {
    // q outside (0,1) is allowed through so the validator can reject it;
    // q <= 0 or q = 1 makes the formulas themselves meaningless
    if !q.is_finite() || q <= 0.0 || q == 1.0 {
        return Err(Error::Parameter {
            name: "q",
            value: q,
            reason: "entropy degree must be finite, positive and != 1",
        });
    }
    Ok(())
}

fn parse_kv(spec: &str, args: Option<&str>, keys: &[&str]) -> Result<Vec<f64>> {
    let args = args.ok_or_else(|| Error::Spec {
        spec: spec.to_string(),
        reason: format!("missing parameters {keys:?}"),
    })?;
    let mut vals = vec![None; keys.len()];
    for part in args.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| Error::Spec {
            spec: spec.to_string(),
            reason: format!("expected key=value, got {part:?}"),
        })?;
        let idx = keys.iter().position(|&key| key == k.trim()).ok_or_else(|| Error::Spec {
            spec: spec.to_string(),
            reason: format!("unknown key {k:?}"),
        })?;
        if vals[idx].is_some() {
            return Err(Error::Spec {
                spec: spec.to_string(),
                reason: format!("duplicate key {k:?}"),
            });
        }
        let parsed: f64 = v.trim().parse().map_err(|_| Error::Spec {
            spec: spec.to_string(),
            reason: format!("cannot parse {v:?} as a number"),
        })?;
        vals[idx] = Some(parsed);
    }
    let mut out = Vec::with_capacity(keys.len());
    for (key, v) in keys.iter().zip(vals) {
        out.push(v.ok_or_else(|| Error::Spec {
            spec: spec.to_string(),
            reason: format!("missing key {key:?}"),
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{bisect, StopRule};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn catalog() -> Vec<Regularizer> {
        vec![
            Regularizer::Shannon,
            Regularizer::hct(0.5).unwrap(),
            Regularizer::hct(0.3).unwrap(),
            Regularizer::renyi(0.5).unwrap(),
            Regularizer::LogBarrier,
            Regularizer::perturbed_default(),
        ]
    }

    #[test]
    fn psi_at_half_is_zero() {
        for reg in catalog() {
            assert_eq!(reg.psi(0.5).unwrap(), 0.0, "{reg}");
        }
    }

    #[test]
    fn psi_perturbed_matches_reference_value() {
        let reg = Regularizer::perturbed_default();
        let v = reg.psi(0.063).unwrap();
        assert!((v - 0.5449390463486314).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn psi_log_barrier_quarter() {
        // 1/x - 1/(1-x) at 1/4: 4 - 4/3
        let v = Regularizer::LogBarrier.psi(0.25).unwrap();
        assert!((v - (4.0 - 4.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn psi_rejects_boundary() {
        assert!(matches!(
            Regularizer::Shannon.psi(0.0),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            Regularizer::Shannon.psi(1.0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn first_derivative_reference_points() {
        assert_eq!(Regularizer::LogBarrier.psi_deriv(0.5, 1).unwrap(), -8.0);
        assert_eq!(Regularizer::Shannon.psi_deriv(0.5, 1).unwrap(), -4.0);
        // xi'(x) = psi'(x) + a at the paper's perturbed instance
        let reg = Regularizer::perturbed_default();
        let xi1 = reg.psi_deriv(0.9559, 1).unwrap() + 3.25;
        assert!((xi1 - -0.03051955745677404).abs() < 1e-12, "got {xi1}");
        let xi1 = reg.psi_deriv(0.956, 1).unwrap() + 3.25;
        assert!((xi1 - -0.05413532613604133).abs() < 1e-12, "got {xi1}");
    }

    #[test]
    fn derivative_order_bounds() {
        assert!(matches!(
            Regularizer::Shannon.psi_deriv(0.5, 4),
            Err(Error::UnsupportedOrder(4))
        ));
        assert!(matches!(
            Regularizer::Shannon.psi_deriv(0.5, 0),
            Err(Error::UnsupportedOrder(0))
        ));
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-5;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for reg in catalog() {
            for _ in 0..200 {
                let x: f64 = rng.random_range(0.05..0.95);
                for order in 1..=3u8 {
                    let lower = |z: f64| {
                        if order == 1 {
                            reg.psi_unchecked(z)
                        } else {
                            reg.psi_deriv_unchecked(z, order - 1)
                        }
                    };
                    let fd = (lower(x + h) - lower(x - h)) / (2.0 * h);
                    let an = reg.psi_deriv_unchecked(x, order);
                    let scale = an.abs().max(1.0);
                    assert!(
                        (fd - an).abs() < 1e-5 * scale,
                        "{reg} order {order} at {x}: analytic {an}, fd {fd}"
                    );
                }
            }
        }
    }

    #[test]
    fn antisymmetry_holds_on_random_samples() {
        // closer to the boundary the rounding of the complement 1-x alone
        // costs |Ψ'| * eps/2, which crosses 1e-10 near x ~ 1e-3 for the
        // log-barrier's 1/x² slope
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for reg in catalog() {
            for _ in 0..10_000 {
                let x: f64 = rng.random_range(2e-3..1.0 - 2e-3);
                let r = (reg.psi_unchecked(1.0 - x) + reg.psi_unchecked(x)).abs();
                assert!(r < 1e-10, "{reg} at {x}: residual {r}");
            }
        }
    }

    #[test]
    fn inverse_of_zero_is_half() {
        for reg in catalog() {
            assert_eq!(reg.psi_inv(0.0).unwrap(), 0.5, "{reg}");
        }
    }

    #[test]
    fn shannon_inverse_closed_form_against_bisection() {
        let y = 3f64.ln();
        let x = Regularizer::Shannon.psi_inv(y).unwrap();
        assert!((x - 0.25).abs() < 1e-15);
        let oracle = bisect(
            |x| Regularizer::Shannon.psi_unchecked(x) - y,
            1e-9,
            1.0 - 1e-9,
            StopRule {
                x_abs: 1e-14,
                ..StopRule::default()
            },
        )
        .unwrap();
        assert!((x - oracle).abs() < 1e-12);
    }

    #[test]
    fn hct_inverse_roundtrips_against_bisection() {
        let reg = Regularizer::hct(0.5).unwrap();
        let y = reg.psi(0.3).unwrap();
        let x = reg.psi_inv(y).unwrap();
        assert!((x - 0.3).abs() < 1e-12);
        let oracle = bisect(
            |x| reg.psi_unchecked(x) - y,
            1e-9,
            1.0 - 1e-9,
            StopRule {
                x_abs: 1e-14,
                ..StopRule::default()
            },
        )
        .unwrap();
        assert!((x - oracle).abs() < 1e-12);
    }

    #[test]
    fn inverse_roundtrip_both_directions() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for reg in catalog() {
            for _ in 0..500 {
                let x: f64 = rng.random_range(1e-6..1.0 - 1e-6);
                let back = reg.psi_inv(reg.psi_unchecked(x)).unwrap();
                assert!((back - x).abs() < 1e-10, "{reg}: x {x} -> {back}");
            }
            // y clipped against the float range of Ψ: x has only absolute
            // resolution near 1, so on the negative side the half-ulp of x
            // already costs eps/2 * |Ψ'(x)| in the dual and the 1e-8 bound
            // is meaningful only over roughly half the representable range
            let y_hi = (1e3f64).min(0.98 * reg.psi_unchecked(X_MIN));
            let y_lo = (-1e3f64).max(0.45 * reg.psi_unchecked(X_MAX));
            for _ in 0..500 {
                let y: f64 = rng.random_range(y_lo..y_hi);
                let x = reg.psi_inv(y).unwrap();
                let fwd = reg.psi_unchecked(x);
                assert!(
                    (fwd - y).abs() < 1e-8 * y.abs().max(1.0),
                    "{reg}: y {y} -> x {x} -> {fwd}"
                );
            }
        }
    }

    #[test]
    fn inverse_is_strictly_decreasing() {
        // grid spacing chosen so consecutive roots differ by much more than
        // the solver tolerance even in the steep tails
        for reg in catalog() {
            let mut prev = f64::INFINITY;
            for i in 0..400 {
                let y = -20.0 + 0.1 * i as f64;
                let x = reg.psi_inv(y).unwrap();
                assert!(x < prev, "{reg}: psi_inv not decreasing at y={y}");
                prev = x;
            }
        }
    }

    #[test]
    fn inverse_clamps_extreme_arguments() {
        // Shannon saturates the exponential range well before f64 does
        let x = Regularizer::Shannon.psi_inv(900.0).unwrap();
        assert!(x >= X_MIN && x < 1e-300);
        let x = Regularizer::Shannon.psi_inv(-900.0).unwrap();
        assert!(x <= X_MAX && x > 0.999);
    }

    #[test]
    fn non_steep_candidate_fails_inversion_outside_range() {
        // hct q=2 has Ψ bounded in [-2,2]; asking for 10 cannot bracket
        let reg = Regularizer::hct(2.0).unwrap();
        assert!(matches!(reg.psi_inv(10.0), Err(Error::Convergence { .. })));
    }

    #[test]
    fn psi3_negative_for_convergence_catalog() {
        for reg in [
            Regularizer::Shannon,
            Regularizer::hct(0.5).unwrap(),
            Regularizer::LogBarrier,
        ] {
            for i in 1..1000 {
                let x = i as f64 / 1000.0;
                assert!(reg.psi_deriv_unchecked(x, 3) < 0.0, "{reg} at {x}");
            }
        }
    }

    #[test]
    fn validation_accepts_catalog_members() {
        for reg in catalog() {
            let report = reg.validate(1001);
            assert!(report.is_member(), "{reg}: {report:?}");
            assert!(report.max_antisymmetry_residual < 1e-10);
        }
    }

    #[test]
    fn validation_rejects_euclidean_case() {
        let report = Regularizer::hct(2.0).unwrap().validate(1001);
        assert!(!report.steep_at_zero);
        assert!(report.symmetric);
        assert!(!report.is_member());
    }

    #[test]
    fn spec_strings_roundtrip() {
        for reg in catalog() {
            let parsed = Regularizer::parse(&reg.spec_string()).unwrap();
            assert_eq!(parsed, reg);
        }
        assert_eq!(
            Regularizer::parse("perturbed").unwrap(),
            Regularizer::perturbed_default()
        );
    }

    #[test]
    fn parse_rejects_unknown_and_malformed() {
        assert!(Regularizer::parse("tsallis").is_err());
        assert!(Regularizer::parse("hct:p=0.5").is_err());
        assert!(Regularizer::parse("hct").is_err());
        assert!(Regularizer::parse("hct:q=0.5,q=0.6").is_err());
        assert!(Regularizer::parse("perturbed:c=0.4").is_err());
        assert!(Regularizer::parse("shannon:q=1").is_err());
        assert!(Regularizer::parse("hct:q=zero").is_err());
    }

    #[test]
    fn parameter_bounds_enforced() {
        assert!(Regularizer::hct(0.0).is_err());
        assert!(Regularizer::hct(1.0).is_err());
        assert!(Regularizer::renyi(-0.5).is_err());
        assert!(Regularizer::perturbed(0.4, 0.0).is_err());
        assert!(Regularizer::perturbed(-0.1, 0.11).is_err());
    }
}

//! Minimum inter-port distance statistics for randomly placed ports.
//!
//! With `m` ports dropped independently and uniformly in an aperture of area
//! `A`, the number of port pairs closer than `r` is approximately Poisson
//! (Chen-Stein pair counting), which makes the minimum pairwise distance
//! `R_min` approximately Rayleigh:
//!
//! ```text
//! P(R_min > r) = exp(-alpha r²),   alpha = m(m-1)·pi / (2A),
//! sigma_R = sqrt(A / (m(m-1)·pi)),  E[R_min] = (1/2)·sqrt(2A / (m(m-1))).
//! ```
//!
//! The mean shrinks like 1/m — much more slowly than the exact 1-D result
//! `W_max/(m²-1)` for ports on a segment, so a planar aperture keeps randomly
//! chosen ports an order of magnitude better separated at practical port
//! counts. [`SpacingLaw`] evaluates the planar law and the spacing guideline
//! derived from it; [`linear_exact_ccdf`] gives the exact 1-D law;
//! [`sample_min_distances`] produces seeded Monte Carlo samples to validate
//! either against.

use crate::geometry::Aperture;
use crate::seeding::unit_rng;
use rand::Rng;
use rayon::prelude::*;
use std::fmt;

/// Errors from spacing-law evaluation and sampling.
#[derive(Debug, Clone, PartialEq)]
pub enum SpacingError {
    /// Pair statistics need at least two ports.
    TooFewPorts { m: usize },
    /// Aperture area must be positive and finite.
    InvalidArea { area: f64 },
    /// Distances are nonnegative.
    NegativeDistance { r: f64 },
    /// Port separations are nonnegative.
    NegativeSeparation { delta: f64 },
    /// The collision budget must lie strictly between 0 and 1.
    InvalidEpsilon { epsilon: f64 },
    /// A statistic of an empty sample was requested.
    EmptySample,
}

impl fmt::Display for SpacingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpacingError::TooFewPorts { m } => {
                write!(f, "minimum-distance statistics need at least 2 ports, got {m}")
            }
            SpacingError::InvalidArea { area } => {
                write!(f, "aperture area must be positive and finite, got {area}")
            }
            SpacingError::NegativeDistance { r } => {
                write!(f, "distance must be nonnegative, got {r}")
            }
            SpacingError::NegativeSeparation { delta } => {
                write!(f, "separation must be nonnegative, got {delta}")
            }
            SpacingError::InvalidEpsilon { epsilon } => {
                write!(f, "collision budget must lie in (0, 1), got {epsilon}")
            }
            SpacingError::EmptySample => write!(f, "operation is undefined on an empty sample"),
        }
    }
}

impl std::error::Error for SpacingError {}

/// Rayleigh-type law of the minimum pairwise distance of `m` uniform ports
/// in a planar aperture of area `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingLaw {
    m: usize,
    area: f64,
    alpha: f64,
    sigma: f64,
}

impl SpacingLaw {
    pub fn new(m: usize, area: f64) -> Result<Self, SpacingError> {
        if m < 2 {
            return Err(SpacingError::TooFewPorts { m });
        }
        if !(area.is_finite() && area > 0.0) {
            return Err(SpacingError::InvalidArea { area });
        }
        let pairs = (m * (m - 1)) as f64;
        let alpha = pairs * std::f64::consts::PI / (2.0 * area);
        let sigma = (area / (pairs * std::f64::consts::PI)).sqrt();
        Ok(SpacingLaw { m, area, alpha, sigma })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Exponential rate `alpha = m(m-1)·pi/(2A)`; `alpha·2·sigma² = 1`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Rayleigh scale `sigma_R = sqrt(A/(m(m-1)·pi))`, also the mode.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `P(R_min > r) = exp(-alpha r²)`.
    pub fn ccdf(&self, r: f64) -> Result<f64, SpacingError> {
        if r.is_nan() || r < 0.0 {
            return Err(SpacingError::NegativeDistance { r });
        }
        Ok((-self.alpha * r * r).exp())
    }

    /// `P(R_min ≤ r)`.
    pub fn cdf(&self, r: f64) -> Result<f64, SpacingError> {
        Ok(1.0 - self.ccdf(r)?)
    }

    /// Density `2·alpha·r·exp(-alpha r²)`.
    pub fn pdf(&self, r: f64) -> Result<f64, SpacingError> {
        if r.is_nan() || r < 0.0 {
            return Err(SpacingError::NegativeDistance { r });
        }
        Ok(2.0 * self.alpha * r * (-self.alpha * r * r).exp())
    }

    /// `E[R_min] = (1/2)·sqrt(2A/(m(m-1)))`.
    pub fn mean(&self) -> f64 {
        0.5 * (2.0 * self.area / ((self.m * (self.m - 1)) as f64)).sqrt()
    }

    /// `Var[R_min] = (4-pi)·A / (2·pi·m(m-1))`.
    pub fn variance(&self) -> f64 {
        (4.0 - std::f64::consts::PI) * self.area
            / (2.0 * std::f64::consts::PI * (self.m * (self.m - 1)) as f64)
    }

    /// Largest spacing constraint `d_min` that random placement still
    /// satisfies with probability `1 - epsilon`:
    /// `d_min = sqrt(-2A·ln(1-epsilon) / (m(m-1)·pi))`, i.e. the distance at
    /// which the CCDF has dropped to `1 - epsilon`.
    pub fn dmin_guideline(&self, epsilon: f64) -> Result<f64, SpacingError> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(SpacingError::InvalidEpsilon { epsilon });
        }
        Ok((-(1.0 - epsilon).ln() / self.alpha).sqrt())
    }
}

/// Exact CCDF of the minimum separation of `m` uniform ports on a segment of
/// length `w_max`: `P(R_min > delta) = (1 - (m-1)·delta/w_max)^m` for
/// `delta` inside the support, and 0 beyond it (`delta > w_max/(m-1)`).
pub fn linear_exact_ccdf(m: usize, w_max: f64, delta: f64) -> Result<f64, SpacingError> {
    if m < 2 {
        return Err(SpacingError::TooFewPorts { m });
    }
    if !(w_max.is_finite() && w_max > 0.0) {
        return Err(SpacingError::InvalidArea { area: w_max });
    }
    if delta.is_nan() || delta < 0.0 {
        return Err(SpacingError::NegativeSeparation { delta });
    }
    let base = 1.0 - (m - 1) as f64 * delta / w_max;
    if base <= 0.0 {
        return Ok(0.0);
    }
    Ok(base.powi(m as i32))
}

/// Which geometry the Monte Carlo sampler draws ports in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    /// Uniform points in the full rectangle.
    Planar,
    /// Uniform points on the segment `[0, wx]` (the aperture's x-extent).
    Linear,
}

/// A seeded Monte Carlo sample of minimum pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct MinDistanceSample {
    m: usize,
    seed: u64,
    dimension: Dimension,
    values: Vec<f64>,
}

/// Draws `trials` independent layouts of `m` unconstrained uniform points
/// and records each layout's minimum pairwise distance (O(m²) scan).
///
/// Trial `t` consumes the RNG stream `unit_rng(seed, t)`, drawing `x` then
/// `y` per point, so results are independent of execution order and worker
/// count.
pub fn sample_min_distances(
    m: usize,
    aperture: &Aperture,
    trials: usize,
    seed: u64,
    dimension: Dimension,
) -> Result<MinDistanceSample, SpacingError> {
    if m < 2 {
        return Err(SpacingError::TooFewPorts { m });
    }
    if trials == 0 {
        return Err(SpacingError::EmptySample);
    }
    let (wx, wy) = (aperture.wx(), aperture.wy());
    let values: Vec<f64> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = unit_rng(seed, t);
            match dimension {
                Dimension::Planar => {
                    let pts: Vec<(f64, f64)> = (0..m)
                        .map(|_| (rng.random::<f64>() * wx, rng.random::<f64>() * wy))
                        .collect();
                    let mut best = f64::INFINITY;
                    for i in 0..m {
                        for j in (i + 1)..m {
                            let dx = pts[i].0 - pts[j].0;
                            let dy = pts[i].1 - pts[j].1;
                            best = best.min(dx * dx + dy * dy);
                        }
                    }
                    best.sqrt()
                }
                Dimension::Linear => {
                    let xs: Vec<f64> = (0..m).map(|_| rng.random::<f64>() * wx).collect();
                    let mut best = f64::INFINITY;
                    for i in 0..m {
                        for j in (i + 1)..m {
                            best = best.min((xs[i] - xs[j]).abs());
                        }
                    }
                    best
                }
            }
        })
        .collect();
    Ok(MinDistanceSample { m, seed, dimension, values })
}

impl MinDistanceSample {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Unbiased sample variance (0 for a single-trial sample).
    pub fn variance(&self) -> f64 {
        let n = self.values.len();
        if n < 2 {
            return 0.0;
        }
        let mean = self.mean();
        self.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64
    }

    /// Fraction of trials with minimum distance strictly above `delta`.
    pub fn empirical_ccdf(&self, delta: f64) -> f64 {
        self.values.iter().filter(|&&v| v > delta).count() as f64 / self.values.len() as f64
    }

    /// One-sample Kolmogorov-Smirnov distance between this sample and `law`.
    pub fn ks_distance(&self, law: &SpacingLaw) -> Result<f64, SpacingError> {
        if self.values.is_empty() {
            return Err(SpacingError::EmptySample);
        }
        let mut sorted = self.values.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("distances are never NaN"));
        let n = sorted.len() as f64;
        let mut d = 0f64;
        for (i, &x) in sorted.iter().enumerate() {
            let cdf = law.cdf(x)?;
            d = d.max(cdf - i as f64 / n).max((i + 1) as f64 / n - cdf);
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel_err(a: f64, b: f64) -> f64 {
        let scale = a.abs().max(b.abs());
        if scale == 0.0 {
            0.0
        } else {
            (a - b).abs() / scale
        }
    }

    fn default_law() -> SpacingLaw {
        SpacingLaw::new(25, 4.0).unwrap()
    }

    /// Composite Simpson integration on [a, b] with 2·half_panels panels.
    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, half_panels: usize) -> f64 {
        let n = 2 * half_panels;
        let h = (b - a) / n as f64;
        let mut sum = f(a) + f(b);
        for k in 1..n {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * f(a + k as f64 * h);
        }
        sum * h / 3.0
    }

    /// Least-squares slope of y against x.
    fn slope(xs: &[f64], ys: &[f64]) -> f64 {
        let n = xs.len() as f64;
        let xb = xs.iter().sum::<f64>() / n;
        let yb = ys.iter().sum::<f64>() / n;
        let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - xb) * (y - yb)).sum();
        let den: f64 = xs.iter().map(|x| (x - xb) * (x - xb)).sum();
        num / den
    }

    #[test]
    fn construction_validates_inputs() {
        assert_eq!(SpacingLaw::new(1, 4.0), Err(SpacingError::TooFewPorts { m: 1 }));
        assert_eq!(SpacingLaw::new(25, 0.0), Err(SpacingError::InvalidArea { area: 0.0 }));
        assert!(SpacingLaw::new(25, f64::NAN).is_err());
    }

    #[test]
    fn alpha_and_sigma_are_consistent() {
        // alpha = 1/(2 sigma²) is the defining relation of a Rayleigh law.
        for (m, area) in [(2, 1.0), (5, 0.5), (25, 4.0), (100, 36.0)] {
            let law = SpacingLaw::new(m, area).unwrap();
            let product = law.alpha() * 2.0 * law.sigma() * law.sigma();
            assert!((product - 1.0).abs() < 1e-14, "alpha·2sigma² = {product}");
        }
        let law = default_law();
        assert!(rel_err(law.alpha(), 75.0 * PI) < 1e-15, "alpha = {}", law.alpha());
        assert!(rel_err(law.sigma(), (1.0 / (150.0 * PI)).sqrt()) < 1e-15);
    }

    #[test]
    fn ccdf_spot_values() {
        let law = default_law();
        assert_eq!(law.ccdf(0.0).unwrap(), 1.0);
        // At the Rayleigh scale the CCDF is exp(-1/2) regardless of (m, A).
        assert!(rel_err(law.ccdf(law.sigma()).unwrap(), (-0.5f64).exp()) < 1e-14);
        // m=25, A=4, r=0.1: exponent is 75·pi·0.01 = 0.75·pi.
        assert!(rel_err(law.ccdf(0.1).unwrap(), (-0.75 * PI).exp()) < 1e-14);
        assert_eq!(law.ccdf(-0.1), Err(SpacingError::NegativeDistance { r: -0.1 }));
        assert!(law.ccdf(f64::NAN).is_err());
    }

    #[test]
    fn cdf_complements_ccdf() {
        let law = default_law();
        for k in 0..1000 {
            let r = k as f64 * 3e-4;
            let total = law.cdf(r).unwrap() + law.ccdf(r).unwrap();
            assert!((total - 1.0).abs() < 1e-15, "cdf+ccdf = {total} at r = {r}");
        }
    }

    #[test]
    fn pdf_starts_at_zero_and_peaks_at_sigma() {
        let law = default_law();
        assert_eq!(law.pdf(0.0).unwrap(), 0.0);
        assert!(law.pdf(-1e-9).is_err());
        // Mode of a Rayleigh density is its scale parameter.
        let mut best_r = 0.0;
        let mut best = 0.0;
        for k in 0..4000 {
            let r = k as f64 * 1e-4;
            let p = law.pdf(r).unwrap();
            if p > best {
                best = p;
                best_r = r;
            }
        }
        assert!(
            (best_r - law.sigma()).abs() < 2e-4,
            "pdf peaks at {best_r}, sigma = {}",
            law.sigma()
        );
    }

    #[test]
    fn pdf_integrates_to_one_by_trapezoid_rule() {
        let law = default_law();
        let hi = 10.0 * law.sigma();
        let n = 100_000;
        let h = hi / n as f64;
        let mut integral = 0.5 * (law.pdf(0.0).unwrap() + law.pdf(hi).unwrap());
        for k in 1..n {
            integral += law.pdf(k as f64 * h).unwrap();
        }
        integral *= h;
        assert!((integral - 1.0).abs() < 1e-6, "pdf mass = {integral}");
    }

    #[test]
    fn pdf_is_derivative_of_cdf() {
        let law = default_law();
        let h = 1e-6;
        // Stay in the bulk of the law: in the far tail the CDF saturates at 1
        // and the finite difference is dominated by cancellation noise.
        for k in 1..30 {
            let r = k as f64 * 0.005;
            let fd = (law.cdf(r + h).unwrap() - law.cdf(r - h).unwrap()) / (2.0 * h);
            let pdf = law.pdf(r).unwrap();
            assert!(
                rel_err(fd, pdf) < 1e-5,
                "pdf/CDF mismatch at r = {r}: fd {fd} vs pdf {pdf}"
            );
        }
    }

    #[test]
    fn mean_spot_values_and_quadrature() {
        let law = default_law();
        // (1/2)·sqrt(2·4/600) evaluated directly.
        let expected = 0.5 * (8.0 / 600.0f64).sqrt();
        assert!(rel_err(law.mean(), expected) < 1e-15, "mean = {}", law.mean());
        // Two ports in area 4: mean = 0.5·sqrt(2·4/2) = 1 exactly.
        assert_eq!(SpacingLaw::new(2, 4.0).unwrap().mean(), 1.0);
        // First moment by quadrature over effectively the whole support.
        let hi = 12.0 * law.sigma();
        let first = simpson(|r| r * law.pdf(r).unwrap(), 0.0, hi, 50_000);
        assert!(rel_err(first, law.mean()) < 1e-8, "quadrature mean {first} vs {}", law.mean());
    }

    #[test]
    fn mean_scales_with_inverse_port_count() {
        let a = SpacingLaw::new(25, 4.0).unwrap().mean();
        let b = SpacingLaw::new(50, 4.0).unwrap().mean();
        let expected = (600.0 / 2450.0f64).sqrt();
        assert!(rel_err(b / a, expected) < 1e-12, "mean ratio = {}", b / a);
    }

    #[test]
    fn variance_spot_values_and_quadrature() {
        let law = default_law();
        let expected = (4.0 - PI) * 4.0 / (2.0 * PI * 600.0);
        assert!(rel_err(law.variance(), expected) < 1e-15);
        // Rayleigh identity: Var = (2 - pi/2)·sigma².
        let identity = (2.0 - PI / 2.0) * law.sigma() * law.sigma();
        assert!(rel_err(law.variance(), identity) < 1e-14);
        // Second moment by quadrature.
        let hi = 12.0 * law.sigma();
        let second = simpson(|r| r * r * law.pdf(r).unwrap(), 0.0, hi, 50_000);
        let second_law = law.variance() + law.mean() * law.mean();
        assert!(rel_err(second, second_law) < 1e-8, "E[R²] {second} vs {second_law}");
        // Crowded apertures leave almost no spacing variability.
        assert!(SpacingLaw::new(10_000, 1.0).unwrap().variance() < 1e-8);
    }

    #[test]
    fn dmin_guideline_inverts_the_ccdf() {
        let law = SpacingLaw::new(12, 16.0).unwrap();
        let d = law.dmin_guideline(0.05).unwrap();
        // Direct evaluation of sqrt(-2A·ln(0.95)/(m(m-1)pi)).
        let direct = (-2.0 * 16.0 * 0.95f64.ln() / (132.0 * PI)).sqrt();
        assert!(rel_err(d, direct) < 1e-14, "guideline = {d}");
        // Consistency: the CCDF at the guideline recovers 1 - epsilon.
        for eps in [1e-6, 0.01, 0.05, 0.5, 0.99] {
            let d = law.dmin_guideline(eps).unwrap();
            let survival = law.ccdf(d).unwrap();
            assert!(rel_err(survival, 1.0 - eps) < 1e-12, "P(ok) = {survival} vs {}", 1.0 - eps);
        }
        // On the violation side the round trip is only conditioned to ~eps/ulp,
        // so check it at moderate budgets.
        for eps in [0.01, 0.05, 0.5] {
            let d = law.dmin_guideline(eps).unwrap();
            let violation = law.cdf(d).unwrap();
            assert!(rel_err(violation, eps) < 1e-12, "P(violation) = {violation} vs {eps}");
        }
        // Tighter budgets demand tighter spacing, shrinking to 0.
        assert!(law.dmin_guideline(1e-12).unwrap() < law.dmin_guideline(0.5).unwrap());
        assert!(law.dmin_guideline(1e-12).unwrap() < 1e-5);
        assert!(law.dmin_guideline(0.0).is_err());
        assert!(law.dmin_guideline(1.0).is_err());
        assert!(law.dmin_guideline(-0.5).is_err());
    }

    #[test]
    fn linear_ccdf_exact_values() {
        assert_eq!(linear_exact_ccdf(25, 2.0, 0.0).unwrap(), 1.0);
        // m=25, W=2, delta=0.02: (1 - 0.24)^25.
        let expected = 0.76f64.powi(25);
        assert!(rel_err(linear_exact_ccdf(25, 2.0, 0.02).unwrap(), expected) < 1e-14);
        // Two ports: CCDF reduces to (1 - delta/W)².
        assert!(rel_err(linear_exact_ccdf(2, 1.0, 0.25).unwrap(), 0.5625) < 1e-15);
        // Support ends at W/(m-1); at and beyond it the CCDF is 0, not an error.
        assert_eq!(linear_exact_ccdf(25, 2.0, 2.0 / 24.0).unwrap(), 0.0);
        assert_eq!(linear_exact_ccdf(25, 2.0, 0.5).unwrap(), 0.0);
        assert_eq!(
            linear_exact_ccdf(25, 2.0, -0.01),
            Err(SpacingError::NegativeSeparation { delta: -0.01 })
        );
        assert!(linear_exact_ccdf(1, 2.0, 0.01).is_err());
        assert!(linear_exact_ccdf(25, 0.0, 0.01).is_err());
    }

    #[test]
    fn sampler_is_reproducible_and_stream_indexed() {
        let ap = Aperture::new(2.0, 2.0).unwrap();
        let a = sample_min_distances(25, &ap, 200, 9, Dimension::Planar).unwrap();
        let b = sample_min_distances(25, &ap, 200, 9, Dimension::Planar).unwrap();
        assert_eq!(a.values(), b.values(), "same seed must reproduce bitwise");
        let c = sample_min_distances(25, &ap, 200, 10, Dimension::Planar).unwrap();
        assert_ne!(a.values(), c.values(), "different seeds must differ");
        // A prefix of trials is unchanged by asking for more trials: trial t
        // owns stream t outright.
        let longer = sample_min_distances(25, &ap, 300, 9, Dimension::Planar).unwrap();
        assert_eq!(&longer.values()[..200], a.values());
    }

    #[test]
    fn two_port_trial_matches_hand_replayed_stream() {
        let ap = Aperture::new(2.0, 1.0).unwrap();
        let sample = sample_min_distances(2, &ap, 3, 42, Dimension::Planar).unwrap();
        // Replay trial 1's stream by hand: x then y per point.
        let mut rng = unit_rng(42, 1);
        let p0 = (rng.random::<f64>() * 2.0, rng.random::<f64>() * 1.0);
        let p1 = (rng.random::<f64>() * 2.0, rng.random::<f64>() * 1.0);
        let expected = ((p0.0 - p1.0).powi(2) + (p0.1 - p1.1).powi(2)).sqrt();
        assert_eq!(sample.values()[1], expected);
    }

    #[test]
    fn sampler_rejects_degenerate_requests() {
        let ap = Aperture::new(2.0, 2.0).unwrap();
        assert_eq!(
            sample_min_distances(1, &ap, 10, 0, Dimension::Planar).unwrap_err(),
            SpacingError::TooFewPorts { m: 1 }
        );
        assert_eq!(
            sample_min_distances(2, &ap, 0, 0, Dimension::Planar).unwrap_err(),
            SpacingError::EmptySample
        );
    }

    #[test]
    fn planar_monte_carlo_tracks_the_law() {
        // Lighter version of the acceptance run (which uses 1e5 trials).
        let ap = Aperture::new(2.0, 2.0).unwrap();
        let law = default_law();
        let sample = sample_min_distances(25, &ap, 20_000, 1, Dimension::Planar).unwrap();
        assert!(
            rel_err(sample.mean(), law.mean()) < 0.03,
            "MC mean {} vs law {}",
            sample.mean(),
            law.mean()
        );
        assert!(
            rel_err(sample.variance(), law.variance()) < 0.10,
            "MC variance {} vs law {}",
            sample.variance(),
            law.variance()
        );
        let ks = sample.ks_distance(&law).unwrap();
        assert!(ks <= 0.02, "KS distance {ks} exceeds boundary-effect budget");
    }

    #[test]
    fn linear_monte_carlo_tracks_exact_law() {
        let ap = Aperture::new(2.0, 2.0).unwrap();
        let sample = sample_min_distances(25, &ap, 10_000, 3, Dimension::Linear).unwrap();
        for delta in [0.005, 0.01, 0.02] {
            let exact = linear_exact_ccdf(25, 2.0, delta).unwrap();
            let emp = sample.empirical_ccdf(delta);
            assert!(
                (emp - exact).abs() < 0.02,
                "empirical CCDF {emp} vs exact {exact} at delta = {delta}"
            );
        }
    }

    #[test]
    fn ks_distance_calibration() {
        let law = default_law();
        // Exact Rayleigh draws via inverse CDF: KS should be pure sampling
        // noise, well under the planar boundary-effect budget.
        let mut rng = unit_rng(5, 0);
        let values: Vec<f64> = (0..100_000)
            .map(|_| {
                let u: f64 = rng.random();
                law.sigma() * (-2.0 * (1.0 - u).ln()).sqrt()
            })
            .collect();
        let sample = MinDistanceSample { m: 25, seed: 5, dimension: Dimension::Planar, values };
        let ks = sample.ks_distance(&law).unwrap();
        assert!(ks < 0.006, "KS on exact Rayleigh draws = {ks}");

        // A point mass at sigma: D = max(CDF, 1-CDF) at the atom = exp(-1/2).
        let atom = MinDistanceSample {
            m: 25,
            seed: 0,
            dimension: Dimension::Planar,
            values: vec![law.sigma()],
        };
        let ks = atom.ks_distance(&law).unwrap();
        assert!(rel_err(ks, (-0.5f64).exp()) < 1e-12, "degenerate KS = {ks}");

        let empty =
            MinDistanceSample { m: 25, seed: 0, dimension: Dimension::Planar, values: vec![] };
        assert_eq!(empty.ks_distance(&law).unwrap_err(), SpacingError::EmptySample);
    }

    #[test]
    fn scaling_exponents_separate_planar_from_linear() {
        let ms = [8usize, 16, 32, 64, 128];
        let xs: Vec<f64> = ms.iter().map(|&m| (m as f64).ln()).collect();

        // The planar law's asymptotic exponent is exactly -1: regressing the
        // leading-order form C/m recovers it to machine precision.
        let lead: Vec<f64> =
            ms.iter().map(|&m| ((0.5 * 8.0f64.sqrt()) / m as f64).ln()).collect();
        assert!((slope(&xs, &lead) + 1.0).abs() < 1e-3);

        // The finite-m planar mean carries a sqrt(m/(m-1)) correction, which
        // over this range biases the fitted slope to about -1.0217.
        let exact: Vec<f64> =
            ms.iter().map(|&m| SpacingLaw::new(m, 4.0).unwrap().mean().ln()).collect();
        let s = slope(&xs, &exact);
        assert!((s + 1.021652).abs() < 1e-3, "planar finite-m slope = {s}");

        // The exact 1-D mean W/(m²-1) regresses to ≈ -2: an order faster.
        let lin: Vec<f64> = ms.iter().map(|&m| (2.0 / ((m * m - 1) as f64)).ln()).collect();
        let s = slope(&xs, &lin);
        assert!((s + 2.0).abs() < 0.1, "1-D slope = {s}");
    }
}

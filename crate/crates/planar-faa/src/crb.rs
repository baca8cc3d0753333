//! Cramér-Rao bounds for single-source direction finding with a port layout.
//!
//! A narrowband source at elevation θ (from broadside) and azimuth φ hits
//! port `m` with phase `exp(-j·2π(x_m u + y_m v))`, `u = sin θ cos φ`,
//! `v = sin θ sin φ`. For `T` snapshots at (post-processing) SNR γ, the
//! Fisher information about (θ, φ) collapses onto the layout's inertia
//! matrix in φ-rotated coordinates:
//!
//! ```text
//! J = 8π²·T·γ · [ cos²θ·L_qq        cosθ sinθ·L_qr ]
//!               [ cosθ sinθ·L_qr    sin²θ·L_rr     ]
//! ```
//!
//! so `CRB(θ) = L_rr / (8π² T γ cos²θ det L)` and
//! `CRB(φ) = L_qq / (8π² T γ sin²θ det L)`, with
//! `det J = (8π² T γ)² cos²θ sin²θ det L`.
//!
//! [`fim_numeric_oracle`] assembles the same matrix the long way round — the
//! Slepian-Bangs form `J_ij = 2Tγ·Re{ȧ_iᴴ P⊥ ȧ_j}` with either analytic or
//! finite-difference steering derivatives and no closed-form simplification —
//! which is what the closed form is validated against in the tests.

use crate::geometry::PortLayout;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

/// Inertia determinants below `EPS_DET · trace²` are treated as singular.
const EPS_DET: f64 = 1e-12;

/// Errors from bound evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum CrbError {
    /// Elevation must lie in [0, π/2], azimuth must be finite.
    InvalidAngle { theta: f64, phi: f64 },
    /// At least one snapshot is required.
    InvalidSnapshots,
    /// SNR must be positive and finite (in linear units).
    InvalidSnr { snr: f64 },
    /// The ports are (numerically) collinear: the joint (θ, φ) FIM is singular.
    CollinearLayout { det: f64, trace: f64 },
    /// At θ = 0 or θ = π/2 one of the two bounds diverges; the joint CRB is
    /// only defined on the open interval.
    PolarElevation { theta: f64 },
    /// 1-D bound needs at least two distinct port coordinates.
    DegenerateAxis,
}

impl fmt::Display for CrbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrbError::InvalidAngle { theta, phi } => {
                write!(f, "need 0 <= theta <= pi/2 and finite phi, got ({theta}, {phi})")
            }
            CrbError::InvalidSnapshots => write!(f, "at least one snapshot is required"),
            CrbError::InvalidSnr { snr } => {
                write!(f, "linear SNR must be positive and finite, got {snr}")
            }
            CrbError::CollinearLayout { det, trace } => {
                write!(f, "ports are collinear (inertia det {det}, trace {trace}): FIM is singular")
            }
            CrbError::PolarElevation { theta } => {
                write!(f, "joint CRB is undefined at theta = {theta} (pole of the bound)")
            }
            CrbError::DegenerateAxis => {
                write!(f, "1-D bound needs at least two distinct port coordinates")
            }
        }
    }
}

impl std::error::Error for CrbError {}

/// A far-field source direction; elevation θ from broadside in [0, π/2],
/// azimuth φ in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceDirection {
    theta: f64,
    phi: f64,
}

impl SourceDirection {
    pub fn new(theta: f64, phi: f64) -> Result<Self, CrbError> {
        if !(theta.is_finite() && phi.is_finite() && (0.0..=FRAC_PI_2).contains(&theta)) {
            return Err(CrbError::InvalidAngle { theta, phi });
        }
        Ok(SourceDirection { theta, phi })
    }

    pub fn from_degrees(theta_deg: f64, phi_deg: f64) -> Result<Self, CrbError> {
        SourceDirection::new(theta_deg.to_radians(), phi_deg.to_radians())
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Direction cosine `u = sin θ cos φ`.
    pub fn u(&self) -> f64 {
        self.theta.sin() * self.phi.cos()
    }

    /// Direction cosine `v = sin θ sin φ`.
    pub fn v(&self) -> f64 {
        self.theta.sin() * self.phi.sin()
    }
}

/// Observation model: `snapshots` independent looks at linear SNR `snr`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObservationSpec {
    snapshots: usize,
    snr: f64,
}

impl ObservationSpec {
    pub fn new(snapshots: usize, snr_linear: f64) -> Result<Self, CrbError> {
        if snapshots == 0 {
            return Err(CrbError::InvalidSnapshots);
        }
        if !(snr_linear.is_finite() && snr_linear > 0.0) {
            return Err(CrbError::InvalidSnr { snr: snr_linear });
        }
        Ok(ObservationSpec { snapshots, snr: snr_linear })
    }

    /// dB-to-linear conversion happens here, at the interface boundary; all
    /// internal formulas use the linear value.
    pub fn from_snr_db(snapshots: usize, snr_db: f64) -> Result<Self, CrbError> {
        ObservationSpec::new(snapshots, 10f64.powf(snr_db / 10.0))
    }

    pub fn snapshots(&self) -> usize {
        self.snapshots
    }

    pub fn snr(&self) -> f64 {
        self.snr
    }
}

/// Per-port response `a_m = exp(-j·2π(x_m u + y_m v))` to a unit plane wave.
pub fn steering_vector(layout: &PortLayout, dir: &SourceDirection) -> Vec<Complex64> {
    steering_raw(layout, dir.theta(), dir.phi())
}

fn steering_raw(layout: &PortLayout, theta: f64, phi: f64) -> Vec<Complex64> {
    let u = theta.sin() * phi.cos();
    let v = theta.sin() * phi.sin();
    layout
        .positions()
        .iter()
        .map(|p| Complex64::from_polar(1.0, -2.0 * PI * (p.x * u + p.y * v)))
        .collect()
}

/// The 2×2 Fisher information matrix about (θ, φ), in rad⁻².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FimMatrix {
    pub j_theta_theta: f64,
    pub j_theta_phi: f64,
    pub j_phi_phi: f64,
}

impl FimMatrix {
    pub fn det(&self) -> f64 {
        self.j_theta_theta * self.j_phi_phi - self.j_theta_phi * self.j_theta_phi
    }
}

/// Closed-form FIM entries; always evaluable, singular or not.
pub fn closed_form_fim(layout: &PortLayout, dir: &SourceDirection, obs: &ObservationSpec) -> FimMatrix {
    let inertia = layout.inertia_matrix(dir.phi());
    let k = 8.0 * PI * PI * obs.snapshots() as f64 * obs.snr();
    let (sin, cos) = dir.theta().sin_cos();
    FimMatrix {
        j_theta_theta: k * cos * cos * inertia.l_qq,
        j_theta_phi: k * cos * sin * inertia.l_qr,
        j_phi_phi: k * sin * sin * inertia.l_rr,
    }
}

/// Joint elevation/azimuth bound together with the quantities it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrbResult {
    /// Minimum achievable Var(θ̂), rad².
    pub crb_theta: f64,
    /// Minimum achievable Var(φ̂), rad².
    pub crb_phi: f64,
    /// The information matrix behind the bounds.
    pub fim: FimMatrix,
    /// Determinant of the layout's inertia matrix (azimuth-invariant).
    pub det_inertia: f64,
}

/// Closed-form joint CRB.
///
/// Fails on collinear layouts (singular inertia) and at the elevation poles
/// θ = 0 and θ = π/2, where one of the two bounds diverges; near-pole angles
/// are allowed and simply give large finite bounds.
pub fn crb_closed_form(
    layout: &PortLayout,
    dir: &SourceDirection,
    obs: &ObservationSpec,
) -> Result<CrbResult, CrbError> {
    let inertia = layout.inertia_matrix(dir.phi());
    let (det, trace) = inertia.det_trace();
    if det <= EPS_DET * trace * trace {
        return Err(CrbError::CollinearLayout { det, trace });
    }
    let theta = dir.theta();
    if theta == 0.0 || theta == FRAC_PI_2 {
        return Err(CrbError::PolarElevation { theta });
    }
    let k = 8.0 * PI * PI * obs.snapshots() as f64 * obs.snr();
    let (sin, cos) = theta.sin_cos();
    Ok(CrbResult {
        crb_theta: inertia.l_rr / (k * cos * cos * det),
        crb_phi: inertia.l_qq / (k * sin * sin * det),
        fim: closed_form_fim(layout, dir, obs),
        det_inertia: det,
    })
}

/// 1-D reduction: ports on a line at coordinates `positions`, source in the
/// containing plane. `CRB(θ) = 1 / (8π² T γ cos²θ · Σ(x - x̄)²)`.
pub fn crb_1d_reduction(
    positions: &[f64],
    theta: f64,
    obs: &ObservationSpec,
) -> Result<f64, CrbError> {
    if !(theta.is_finite() && (0.0..=FRAC_PI_2).contains(&theta)) {
        return Err(CrbError::InvalidAngle { theta, phi: 0.0 });
    }
    if theta == FRAC_PI_2 {
        return Err(CrbError::PolarElevation { theta });
    }
    if positions.len() < 2 {
        return Err(CrbError::DegenerateAxis);
    }
    let n = positions.len() as f64;
    let mean = positions.iter().sum::<f64>() / n;
    let l_xx: f64 = positions.iter().map(|x| (x - mean) * (x - mean)).sum();
    let scale: f64 = positions.iter().map(|x| x * x).sum();
    if l_xx <= EPS_DET * scale {
        return Err(CrbError::DegenerateAxis);
    }
    let k = 8.0 * PI * PI * obs.snapshots() as f64 * obs.snr();
    let cos = theta.cos();
    Ok(1.0 / (k * cos * cos * l_xx))
}

/// How [`fim_numeric_oracle`] obtains steering-vector derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    /// Exact derivative of `exp(-j2π(xu + yv))` with respect to θ and φ.
    Analytic,
    /// Central differences of the steering vector with the given step (rad).
    FiniteDifference { step_rad: f64 },
}

/// Step used by [`DerivativeMode::FiniteDifference`] unless overridden:
/// balances truncation against rounding for aperture sizes of a few
/// wavelengths.
pub const DEFAULT_FD_STEP_RAD: f64 = 1e-6;

/// Slepian-Bangs assembly of the full 2×2 FIM with no closed-form shortcuts:
/// `J_ij = 2·T·γ·Re{ȧ_iᴴ ȧ_j − (ȧ_iᴴ a)(aᴴ ȧ_j)/M}` (projection of each
/// derivative off the steering vector itself).
///
/// Returns the raw matrix — possibly singular — so tests can compare it
/// entrywise against [`closed_form_fim`]. All four entries are assembled
/// independently; symmetry of the result is itself a property under test.
pub fn fim_numeric_oracle(
    layout: &PortLayout,
    dir: &SourceDirection,
    obs: &ObservationSpec,
    mode: DerivativeMode,
) -> [[f64; 2]; 2] {
    let m = layout.len() as f64;
    let a = steering_raw(layout, dir.theta(), dir.phi());

    let (da_theta, da_phi) = match mode {
        DerivativeMode::Analytic => {
            // d/dθ (xu + yv) = cosθ·(x cosφ + y sinφ) = cosθ·q
            // d/dφ (xu + yv) = sinθ·(−x sinφ + y cosφ) = sinθ·r
            let rotated = layout.rotated(dir.phi());
            let (sin, cos) = dir.theta().sin_cos();
            let dt: Vec<Complex64> = a
                .iter()
                .zip(&rotated)
                .map(|(am, &(q, _))| Complex64::new(0.0, -2.0 * PI * cos * q) * am)
                .collect();
            let dp: Vec<Complex64> = a
                .iter()
                .zip(&rotated)
                .map(|(am, &(_, r))| Complex64::new(0.0, -2.0 * PI * sin * r) * am)
                .collect();
            (dt, dp)
        }
        DerivativeMode::FiniteDifference { step_rad: h } => {
            let diff = |plus: Vec<Complex64>, minus: Vec<Complex64>| -> Vec<Complex64> {
                plus.iter().zip(&minus).map(|(p, m)| (p - m) / (2.0 * h)).collect()
            };
            let dt = diff(
                steering_raw(layout, dir.theta() + h, dir.phi()),
                steering_raw(layout, dir.theta() - h, dir.phi()),
            );
            let dp = diff(
                steering_raw(layout, dir.theta(), dir.phi() + h),
                steering_raw(layout, dir.theta(), dir.phi() - h),
            );
            (dt, dp)
        }
    };

    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 {
        x.iter().zip(y).map(|(xi, yi)| xi.conj() * yi).sum()
    };
    let derivs = [&da_theta, &da_phi];
    let mut fim = [[0.0; 2]; 2];
    for (i, di) in derivs.iter().enumerate() {
        for (j, dj) in derivs.iter().enumerate() {
            let direct = dot(di, dj);
            let through_a = dot(di, &a) * dot(&a, dj) / m;
            fim[i][j] = 2.0 * obs.snapshots() as f64 * obs.snr() * (direct - through_a).re;
        }
    }
    fim
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Aperture, Point};
    use crate::seeding::unit_rng;
    use rand::Rng;

    fn rel_err(a: f64, b: f64) -> f64 {
        let scale = a.abs().max(b.abs());
        if scale == 0.0 {
            0.0
        } else {
            (a - b).abs() / scale
        }
    }

    fn corners_layout(w: f64) -> PortLayout {
        let ap = Aperture::new(w, w).unwrap();
        PortLayout::new(ap, ap.corners().to_vec()).unwrap()
    }

    fn random_case(seed: u64) -> (PortLayout, SourceDirection) {
        let mut rng = unit_rng(seed, 0);
        let ap = Aperture::new(2.0, 2.0).unwrap();
        let m = 5 + (rng.random::<u64>() % 46) as usize; // 5..=50
        let positions =
            (0..m).map(|_| Point::new(rng.random::<f64>() * 2.0, rng.random::<f64>() * 2.0)).collect();
        let layout = PortLayout::new(ap, positions).unwrap();
        let theta = (5.0 + 80.0 * rng.random::<f64>()).to_radians();
        let phi = (360.0 * rng.random::<f64>()).to_radians();
        (layout, SourceDirection::new(theta, phi).unwrap())
    }

    #[test]
    fn direction_validation_and_cosines() {
        assert!(SourceDirection::new(-0.1, 0.0).is_err());
        assert!(SourceDirection::new(FRAC_PI_2 + 0.1, 0.0).is_err());
        assert!(SourceDirection::new(0.3, f64::NAN).is_err());
        let dir = SourceDirection::from_degrees(45.0, 30.0).unwrap();
        let expected_u = 45f64.to_radians().sin() * 30f64.to_radians().cos();
        let expected_v = 45f64.to_radians().sin() * 30f64.to_radians().sin();
        assert!(rel_err(dir.u(), expected_u) < 1e-15);
        assert!(rel_err(dir.v(), expected_v) < 1e-15);
        // u² + v² = sin²θ ≤ 1: always in the visible region.
        assert!(dir.u() * dir.u() + dir.v() * dir.v() <= 1.0);
    }

    #[test]
    fn observation_spec_converts_db_at_the_boundary() {
        let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
        assert!(rel_err(obs.snr(), 10.0) < 1e-15, "10 dB -> {}", obs.snr());
        let obs = ObservationSpec::from_snr_db(1, -10.0).unwrap();
        assert!(rel_err(obs.snr(), 0.1) < 1e-15);
        assert_eq!(ObservationSpec::new(0, 1.0), Err(CrbError::InvalidSnapshots));
        assert!(ObservationSpec::new(10, 0.0).is_err());
        assert!(ObservationSpec::new(10, -3.0).is_err());
    }

    #[test]
    fn steering_vector_spot_values() {
        // Broadside: u = v = 0, every port responds with phase 0.
        let layout = corners_layout(2.0);
        let dir = SourceDirection::new(0.0, 1.234).unwrap();
        for a in steering_vector(&layout, &dir) {
            assert!((a - Complex64::new(1.0, 0.0)).norm() < 1e-15, "broadside entry {a}");
        }
        // A port at (0.5, 0) seen from endfire (θ=90°, φ=0): phase -π.
        let ap = Aperture::new(2.0, 2.0).unwrap();
        let layout = PortLayout::new(ap, vec![Point::new(0.5, 0.0)]).unwrap();
        let dir = SourceDirection::new(FRAC_PI_2, 0.0).unwrap();
        let a = steering_vector(&layout, &dir)[0];
        assert!((a - Complex64::new(-1.0, 0.0)).norm() < 1e-15, "endfire entry {a}");
    }

    #[test]
    fn steering_vector_has_unit_magnitude_entries() {
        for seed in 0..100 {
            let (layout, dir) = random_case(3000 + seed);
            let a = steering_vector(&layout, &dir);
            assert_eq!(a.len(), layout.len());
            let norm_sq: f64 = a.iter().map(|z| z.norm_sqr()).sum();
            assert!(
                rel_err(norm_sq, layout.len() as f64) < 1e-12,
                "‖a‖² = {norm_sq} for M = {}",
                layout.len()
            );
        }
    }

    #[test]
    fn corner_layout_spot_bound() {
        // Four corners of a 2x2 aperture, θ=45°, φ=30°, T=100, SNR=10 dB:
        // L_qq = L_rr = 4, L_qr = 0, det = 16, and both bounds reduce to
        // 1/(16000·π²).
        let layout = corners_layout(2.0);
        let dir = SourceDirection::from_degrees(45.0, 30.0).unwrap();
        let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
        let result = crb_closed_form(&layout, &dir, &obs).unwrap();
        let expected = 1.0 / (16_000.0 * PI * PI);
        assert!(rel_err(result.crb_theta, expected) < 1e-12, "crb_theta = {}", result.crb_theta);
        assert!(rel_err(result.crb_phi, expected) < 1e-12, "crb_phi = {}", result.crb_phi);
        assert!(rel_err(result.crb_theta, result.crb_phi) < 1e-12);
        assert!(rel_err(result.det_inertia, 16.0) < 1e-14);
    }

    #[test]
    fn collinear_layout_is_singular() {
        let ap = Aperture::new(2.0, 2.0).unwrap();
        let positions = (0..5).map(|i| Point::new(0.4 * i as f64, 0.2 * i as f64)).collect();
        let layout = PortLayout::new(ap, positions).unwrap();
        let dir = SourceDirection::from_degrees(45.0, 30.0).unwrap();
        let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
        assert!(matches!(
            crb_closed_form(&layout, &dir, &obs),
            Err(CrbError::CollinearLayout { .. })
        ));
    }

    #[test]
    fn polar_elevations_error_instead_of_diverging() {
        let layout = corners_layout(2.0);
        let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
        for theta in [0.0, FRAC_PI_2] {
            let dir = SourceDirection::new(theta, 0.5).unwrap();
            assert_eq!(
                crb_closed_form(&layout, &dir, &obs),
                Err(CrbError::PolarElevation { theta })
            );
        }
    }

    #[test]
    fn bounds_blow_up_monotonically_toward_the_poles() {
        let layout = corners_layout(2.0);
        let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
        let mut last_phi_bound = 0.0;
        for theta_deg in [40.0, 20.0, 10.0, 5.0, 1.0] {
            let dir = SourceDirection::from_degrees(theta_deg, 30.0).unwrap();
            let r = crb_closed_form(&layout, &dir, &obs).unwrap();
            assert!(r.crb_phi > last_phi_bound, "crb_phi must grow toward θ=0");
            last_phi_bound = r.crb_phi;
        }
        let mut last_theta_bound = 0.0;
        for theta_deg in [50.0, 70.0, 80.0, 85.0, 89.0] {
            let dir = SourceDirection::from_degrees(theta_deg, 30.0).unwrap();
            let r = crb_closed_form(&layout, &dir, &obs).unwrap();
            assert!(r.crb_theta > last_theta_bound, "crb_theta must grow toward θ=90°");
            last_theta_bound = r.crb_theta;
        }
    }

    #[test]
    fn snr_and_snapshots_scale_bounds_exactly() {
        let (layout, dir) = random_case(77);
        let base = crb_closed_form(&layout, &dir, &ObservationSpec::new(100, 10.0).unwrap()).unwrap();
        // Doubling T (or γ) halves both bounds exactly in floating point.
        let double_t =
            crb_closed_form(&layout, &dir, &ObservationSpec::new(200, 10.0).unwrap()).unwrap();
        assert_eq!(double_t.crb_theta, base.crb_theta / 2.0);
        assert_eq!(double_t.crb_phi, base.crb_phi / 2.0);
        // Only the product T·γ matters.
        let swapped =
            crb_closed_form(&layout, &dir, &ObservationSpec::new(200, 5.0).unwrap()).unwrap();
        assert_eq!(swapped.crb_theta, base.crb_theta);
    }

    #[test]
    fn symmetric_layout_decouples_the_two_angles() {
        // Corners plus edge midpoints: mirror-symmetric about both axes, so
        // L_qr = 0 at φ = 0 and the joint bound on θ collapses to 1/J_θθ.
        let ap = Aperture::new(2.0, 2.0).unwrap();
        let mut positions = ap.corners().to_vec();
        positions.extend([
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 2.0),
        ]);
        let layout = PortLayout::new(ap, positions).unwrap();
        let dir = SourceDirection::from_degrees(35.0, 0.0).unwrap();
        let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
        let r = crb_closed_form(&layout, &dir, &obs).unwrap();
        assert!(r.fim.j_theta_phi.abs() < 1e-9, "cross term = {}", r.fim.j_theta_phi);
        assert!(rel_err(r.crb_theta, 1.0 / r.fim.j_theta_theta) < 1e-12);
        assert!(rel_err(r.crb_phi, 1.0 / r.fim.j_phi_phi) < 1e-12);
    }

    #[test]
    fn adding_spread_off_axis_ports_tightens_the_bound() {
        // Edge midpoints raise L_qq and L_rr while symmetry keeps L_qr = 0;
        // both bounds must strictly improve.
        let ap = Aperture::new(2.0, 2.0).unwrap();
        let base = PortLayout::new(ap, ap.corners().to_vec()).unwrap();
        let mut positions = ap.corners().to_vec();
        positions.extend([
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(2.0, 1.0),
            Point::new(1.0, 2.0),
        ]);
        let bigger = PortLayout::new(ap, positions).unwrap();
        let dir = SourceDirection::from_degrees(45.0, 30.0).unwrap();
        let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
        let a = crb_closed_form(&base, &dir, &obs).unwrap();
        let b = crb_closed_form(&bigger, &dir, &obs).unwrap();
        let ia = base.inertia_matrix(dir.phi());
        let ib = bigger.inertia_matrix(dir.phi());
        assert!(ib.l_qq > ia.l_qq && ib.l_rr > ia.l_rr);
        assert!(ib.l_qr.abs() < 1e-12 && ia.l_qr.abs() < 1e-12);
        assert!(b.crb_theta < a.crb_theta, "{} !< {}", b.crb_theta, a.crb_theta);
        assert!(b.crb_phi < a.crb_phi);
    }

    #[test]
    fn one_dimensional_reduction_spot_value() {
        let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
        let crb = crb_1d_reduction(&[0.0, 2.0], 45f64.to_radians(), &obs).unwrap();
        // L_xx = 2, cos²(45°) = 1/2: 1/(8π²·1000·0.5·2) = 1/(8000π²).
        assert!(rel_err(crb, 1.0 / (8000.0 * PI * PI)) < 1e-12, "crb = {crb}");
        assert_eq!(
            crb_1d_reduction(&[1.0, 1.0, 1.0], 0.5, &obs),
            Err(CrbError::DegenerateAxis)
        );
        assert_eq!(crb_1d_reduction(&[1.0], 0.5, &obs), Err(CrbError::DegenerateAxis));
        assert!(matches!(
            crb_1d_reduction(&[0.0, 2.0], FRAC_PI_2, &obs),
            Err(CrbError::PolarElevation { .. })
        ));
        // θ = 0 is fine for the 1-D bound (no azimuth to lose).
        assert!(crb_1d_reduction(&[0.0, 2.0], 0.0, &obs).is_ok());
    }

    #[test]
    fn one_dimensional_reduction_matches_planar_fim_entry() {
        // Ports on the x-axis inside a planar aperture, φ = 0: the planar
        // J_θθ entry is exactly the 1-D information.
        let ap = Aperture::new(2.0, 2.0).unwrap();
        let xs = [0.0, 0.3, 1.1, 1.9];
        let layout =
            PortLayout::new(ap, xs.iter().map(|&x| Point::new(x, 0.0)).collect()).unwrap();
        let theta = 35f64.to_radians();
        let dir = SourceDirection::new(theta, 0.0).unwrap();
        let obs = ObservationSpec::from_snr_db(50, 7.0).unwrap();
        let fim = closed_form_fim(&layout, &dir, &obs);
        let crb_1d = crb_1d_reduction(&xs, theta, &obs).unwrap();
        assert!(
            rel_err(crb_1d, 1.0 / fim.j_theta_theta) < 1e-12,
            "1-D bound {crb_1d} vs 1/J_θθ {}",
            1.0 / fim.j_theta_theta
        );
    }

    #[test]
    fn analytic_oracle_matches_closed_form() {
        for seed in 0..20 {
            let (layout, dir) = random_case(4000 + seed);
            let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
            let closed = closed_form_fim(&layout, &dir, &obs);
            let oracle = fim_numeric_oracle(&layout, &dir, &obs, DerivativeMode::Analytic);
            assert_eq!(oracle[0][1], oracle[1][0], "oracle asymmetric at seed {seed}");
            let pairs = [
                (closed.j_theta_theta, oracle[0][0]),
                (closed.j_theta_phi, oracle[0][1]),
                (closed.j_phi_phi, oracle[1][1]),
            ];
            for (c, o) in pairs {
                assert!(rel_err(c, o) < 1e-10, "seed {seed}: closed {c} vs oracle {o}");
            }
        }
    }

    #[test]
    fn finite_difference_oracle_matches_closed_form() {
        for seed in 0..20 {
            let (layout, dir) = random_case(5000 + seed);
            let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
            let closed = closed_form_fim(&layout, &dir, &obs);
            let oracle = fim_numeric_oracle(
                &layout,
                &dir,
                &obs,
                DerivativeMode::FiniteDifference { step_rad: DEFAULT_FD_STEP_RAD },
            );
            let pairs = [
                (closed.j_theta_theta, oracle[0][0]),
                (closed.j_theta_phi, oracle[0][1]),
                (closed.j_phi_phi, oracle[1][1]),
            ];
            for (c, o) in pairs {
                assert!(rel_err(c, o) < 1e-4, "seed {seed}: closed {c} vs FD oracle {o}");
            }
        }
    }

    #[test]
    fn oracle_at_broadside_has_no_azimuth_information() {
        let layout = corners_layout(2.0);
        let dir = SourceDirection::new(0.0, 0.7).unwrap();
        let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
        let oracle = fim_numeric_oracle(&layout, &dir, &obs, DerivativeMode::Analytic);
        assert!(oracle[1][1].abs() <= 1e-12, "J_φφ at broadside = {}", oracle[1][1]);
        assert!(oracle[0][1].abs() <= 1e-12, "J_θφ at broadside = {}", oracle[0][1]);
    }

    #[test]
    fn fim_determinant_factorizes_over_the_inertia() {
        for seed in 0..20 {
            let (layout, dir) = random_case(6000 + seed);
            let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
            let fim = closed_form_fim(&layout, &dir, &obs);
            let k = 8.0 * PI * PI * obs.snapshots() as f64 * obs.snr();
            let (sin, cos) = dir.theta().sin_cos();
            let det_l = layout.inertia_matrix(dir.phi()).det();
            let expected = k * k * cos * cos * sin * sin * det_l;
            assert!(
                rel_err(fim.det(), expected) < 1e-10,
                "seed {seed}: det(J) = {} vs factorized {expected}",
                fim.det()
            );
        }
    }
}

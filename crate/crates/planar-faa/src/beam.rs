//! Steered array-factor evaluation and peak-sidelobe-level measurement.
//!
//! The normalized array factor of a layout steered to direction cosines
//! `(u₀, v₀)` is
//!
//! ```text
//! B(u, v) = | (1/M) Σ_m exp(j·2π·[x_m (u − u₀) + y_m (v − v₀)]) |²,
//! ```
//!
//! a linear power in [0, 1] that equals 1 exactly at the steer point.
//! [`beam_map`] samples it over an `n × n` uniform grid on [−1, 1]²,
//! marking cells outside the visible region `u² + v² ≤ 1` invalid.
//! [`analyze_psl`] then delimits the main lobe as the 4-connected component
//! of half-power cells around the steer and reports the strongest cell
//! outside it, as a dB ratio against the main-lobe peak.

use crate::crb::SourceDirection;
use crate::geometry::PortLayout;
use rayon::prelude::*;
use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt;

/// Cells at or above this linear power belong to the main-lobe component
/// (the −3 dB contour).
pub const HALF_POWER: f64 = 0.5;

/// Errors from beam-map construction and sidelobe analysis.
#[derive(Debug, Clone, PartialEq)]
pub enum BeamError {
    /// The direction-cosine grid needs at least 3 points per axis.
    GridTooSmall { n_uv: usize },
    /// The main-lobe component covers every valid cell, so no sidelobe
    /// level is defined (e.g. a single-port layout's flat pattern).
    NoSidelobe,
}

impl fmt::Display for BeamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BeamError::GridTooSmall { n_uv } => {
                write!(f, "direction-cosine grid needs at least 3 points per axis, got {n_uv}")
            }
            BeamError::NoSidelobe => {
                write!(f, "main lobe covers the whole visible region; no sidelobe exists")
            }
        }
    }
}

impl std::error::Error for BeamError {}

/// Normalized steered array factor `B(u, v)`; linear power in [0, 1],
/// exactly 1 at `(u, v) = (u0, v0)`.
pub fn array_factor(layout: &PortLayout, u: f64, v: f64, u0: f64, v0: f64) -> f64 {
    let du = u - u0;
    let dv = v - v0;
    let mut c = 0.0;
    let mut s = 0.0;
    for p in layout.positions() {
        let (sin, cos) = (2.0 * PI * (p.x * du + p.y * dv)).sin_cos();
        c += cos;
        s += sin;
    }
    let m = layout.len() as f64;
    (c * c + s * s) / (m * m)
}

/// The array factor sampled on a uniform `n × n` grid over [−1, 1]².
#[derive(Debug, Clone, PartialEq)]
pub struct BeamMap {
    n_uv: usize,
    coords: Vec<f64>,
    /// Row-major over (u index, v index); `None` outside the visible region.
    power: Vec<Option<f64>>,
    steer: (f64, f64),
}

/// Evaluates the beam pattern of `layout` steered to `dir0` on an
/// `n_uv × n_uv` grid. Rows are computed in parallel; cell values are
/// independent, so the map is bit-identical for any thread count.
pub fn beam_map(
    layout: &PortLayout,
    dir0: &SourceDirection,
    n_uv: usize,
) -> Result<BeamMap, BeamError> {
    if n_uv < 3 {
        return Err(BeamError::GridTooSmall { n_uv });
    }
    let coords: Vec<f64> = (0..n_uv)
        .map(|k| -1.0 + 2.0 * k as f64 / (n_uv - 1) as f64)
        .collect();
    let (u0, v0) = (dir0.u(), dir0.v());
    let power: Vec<Option<f64>> = coords
        .par_iter()
        .flat_map_iter(|&u| {
            coords.iter().map(move |&v| {
                if u * u + v * v <= 1.0 {
                    Some((u, v))
                } else {
                    None
                }
            })
        })
        .map(|cell| cell.map(|(u, v)| array_factor(layout, u, v, u0, v0)))
        .collect();
    Ok(BeamMap { n_uv, coords, power, steer: (u0, v0) })
}

impl BeamMap {
    /// Grid points per axis.
    pub fn grid_size(&self) -> usize {
        self.n_uv
    }

    /// The u-axis sample coordinates (endpoints exactly ±1).
    pub fn u_values(&self) -> &[f64] {
        &self.coords
    }

    /// The v-axis sample coordinates (same uniform grid as the u axis).
    pub fn v_values(&self) -> &[f64] {
        &self.coords
    }

    /// Linear power at grid indices `(iu, iv)`; `None` outside the visible
    /// region.
    pub fn power(&self, iu: usize, iv: usize) -> Option<f64> {
        self.power[iu * self.n_uv + iv]
    }

    /// Steer point `(u₀, v₀)`.
    pub fn steer(&self) -> (f64, f64) {
        self.steer
    }
}

/// Main-lobe extent and peak-sidelobe level of a [`BeamMap`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PslAnalysis {
    /// `10·log₁₀(peak sidelobe power / main-lobe peak power)`; ≤ 0.
    pub psl_db: f64,
    /// Number of grid cells in the main-lobe component.
    pub main_lobe_cells: usize,
    /// Largest linear power inside the main lobe (≈ 1 near the steer).
    pub peak_power: f64,
    /// Largest linear power among valid cells outside the main lobe.
    pub peak_sidelobe_power: f64,
}

/// Delimits the main lobe as the 4-connected component of valid cells with
/// power ≥ [`HALF_POWER`] that contains the valid cell nearest the steer
/// point (that cell is included even if it falls below half power), then
/// reports the strongest valid cell outside the component.
pub fn analyze_psl(map: &BeamMap) -> Result<PslAnalysis, BeamError> {
    let n = map.n_uv;
    let (u0, v0) = map.steer;
    let mut seed = None;
    let mut seed_dist = f64::INFINITY;
    for iu in 0..n {
        for iv in 0..n {
            if map.power(iu, iv).is_some() {
                let du = map.coords[iu] - u0;
                let dv = map.coords[iv] - v0;
                let dist = du * du + dv * dv;
                if dist < seed_dist {
                    seed_dist = dist;
                    seed = Some((iu, iv));
                }
            }
        }
    }
    // A steer from a real direction satisfies u₀² + v₀² ≤ 1, so the grid
    // always holds at least one valid cell (the disk covers grid points for
    // any n ≥ 3).
    let seed = seed.expect("visible region always intersects the grid");

    let mut in_lobe = vec![false; n * n];
    in_lobe[seed.0 * n + seed.1] = true;
    let mut queue = VecDeque::from([seed]);
    let mut lobe_cells = 0usize;
    let mut peak_power = 0.0f64;
    while let Some((iu, iv)) = queue.pop_front() {
        lobe_cells += 1;
        if let Some(p) = map.power(iu, iv) {
            peak_power = peak_power.max(p);
        }
        let mut push = |nu: usize, nv: usize| {
            if !in_lobe[nu * n + nv] {
                if let Some(p) = map.power(nu, nv) {
                    if p >= HALF_POWER {
                        in_lobe[nu * n + nv] = true;
                        queue.push_back((nu, nv));
                    }
                }
            }
        };
        if iu > 0 {
            push(iu - 1, iv);
        }
        if iu + 1 < n {
            push(iu + 1, iv);
        }
        if iv > 0 {
            push(iu, iv - 1);
        }
        if iv + 1 < n {
            push(iu, iv + 1);
        }
    }

    let mut sidelobe: Option<f64> = None;
    for iu in 0..n {
        for iv in 0..n {
            if !in_lobe[iu * n + iv] {
                if let Some(p) = map.power(iu, iv) {
                    sidelobe = Some(sidelobe.map_or(p, |s| s.max(p)));
                }
            }
        }
    }
    let peak_sidelobe_power = sidelobe.ok_or(BeamError::NoSidelobe)?;
    Ok(PslAnalysis {
        psl_db: 10.0 * (peak_sidelobe_power / peak_power).log10(),
        main_lobe_cells: lobe_cells,
        peak_power,
        peak_sidelobe_power,
    })
}

/// Peak sidelobe level of a map, in dB relative to the main-lobe peak.
pub fn psl_db(map: &BeamMap) -> Result<f64, BeamError> {
    analyze_psl(map).map(|a| a.psl_db)
}

//! Port placement inside a rectangular aperture.
//!
//! The main entry point is [`greedy_select`]: starting from the four aperture
//! vertices, it grows the layout one port at a time over a regular candidate
//! grid, each stage picking the candidate that maximizes
//!
//! ```text
//! score(p) = det L(S ∪ {p}) + β · min_{s ∈ S} |p − s|²
//! ```
//!
//! where `L` is the layout's inertia matrix (whose determinant drives the
//! joint direction-finding bounds) and the second term is a spacing
//! regularizer. `β` comes from the dimensionless knob β₀ via
//! `β = β₀ · det L(corners) / area`, which makes the trade-off — and the
//! selected geometry — invariant under uniform rescaling of the aperture.
//!
//! Two reference constructions are provided for comparison:
//! [`uniform_grid_baseline`] (a near-square separable grid) and
//! [`random_baseline`] (rejection-sampled uniform ports).
//!
//! Determinism: candidate order is fixed (ascending x, then y), stage argmax
//! ties break toward the earliest candidate, and the parallel reduction is
//! order-independent, so results do not depend on thread count.

use crate::geometry::{
    spacing_threshold_sq, Aperture, GeometryError, Point, PortLayout, ScatterAccumulator,
};
use crate::seeding::unit_rng;
use rand::Rng;
use rayon::prelude::*;
use std::fmt;

/// Rejection-sampling attempts allowed per port in [`random_baseline`].
pub const RETRY_BUDGET: usize = 100_000;

/// Errors from placement configuration or search.
#[derive(Debug, Clone, PartialEq)]
pub enum PlacementError {
    /// Placement needs at least the four vertex ports.
    InvalidPortCount { m: usize },
    /// Grid spacing must satisfy `0 < delta <= d_min` with both finite.
    InvalidGrid { delta: f64, d_min: f64 },
    /// The regularizer weight must be finite and non-negative.
    InvalidBeta { beta0: f64 },
    /// No grid point keeps distance `d_min` from all four vertices.
    EmptyCandidateSet { d_min: f64 },
    /// Every remaining candidate conflicts with the ports selected so far.
    InfeasibleStage { stage: usize, selected: usize },
    /// Rejection sampling failed to place a port within the attempt budget.
    RetryBudgetExhausted { port_index: usize, attempts: usize },
    /// The assembled layout failed geometric validation.
    Geometry(GeometryError),
}

impl fmt::Display for PlacementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlacementError::InvalidPortCount { m } => {
                write!(f, "need at least 4 ports (the aperture vertices), got {m}")
            }
            PlacementError::InvalidGrid { delta, d_min } => {
                write!(f, "need 0 < grid spacing <= d_min, got spacing {delta}, d_min {d_min}")
            }
            PlacementError::InvalidBeta { beta0 } => {
                write!(f, "regularizer weight must be finite and >= 0, got {beta0}")
            }
            PlacementError::EmptyCandidateSet { d_min } => {
                write!(f, "no grid point is at least {d_min} away from all four vertices")
            }
            PlacementError::InfeasibleStage { stage, selected } => {
                write!(
                    f,
                    "no feasible candidate left at stage {stage} ({selected} ports selected)"
                )
            }
            PlacementError::RetryBudgetExhausted { port_index, attempts } => {
                write!(f, "gave up placing port {port_index} after {attempts} attempts")
            }
            PlacementError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PlacementError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            PlacementError::Geometry(e) => Some(e),
            _ => None,
        }
    }
}

impl From<GeometryError> for PlacementError {
    fn from(e: GeometryError) -> Self {
        PlacementError::Geometry(e)
    }
}

/// Validated inputs for the greedy search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlacementConfig {
    m: usize,
    aperture: Aperture,
    grid_spacing: f64,
    d_min: f64,
    beta0: f64,
}

impl PlacementConfig {
    pub fn new(
        m: usize,
        aperture: Aperture,
        grid_spacing: f64,
        d_min: f64,
        beta0: f64,
    ) -> Result<Self, PlacementError> {
        if m < 4 {
            return Err(PlacementError::InvalidPortCount { m });
        }
        if !(grid_spacing.is_finite()
            && d_min.is_finite()
            && grid_spacing > 0.0
            && grid_spacing <= d_min)
        {
            return Err(PlacementError::InvalidGrid { delta: grid_spacing, d_min });
        }
        if !(beta0.is_finite() && beta0 >= 0.0) {
            return Err(PlacementError::InvalidBeta { beta0 });
        }
        Ok(PlacementConfig { m, aperture, grid_spacing, d_min, beta0 })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn aperture(&self) -> Aperture {
        self.aperture
    }

    pub fn grid_spacing(&self) -> f64 {
        self.grid_spacing
    }

    pub fn d_min(&self) -> f64 {
        self.d_min
    }

    pub fn beta0(&self) -> f64 {
        self.beta0
    }
}

/// Grid points admissible as placement candidates, in scan order
/// (ascending x, then ascending y).
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    points: Vec<Point>,
}

impl CandidateSet {
    pub fn count(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }
}

/// Largest `n` with `n · delta <= w`, robust to the rounding of `w / delta`.
fn grid_steps(w: f64, delta: f64) -> usize {
    let mut n = (w / delta).floor() as usize;
    while (n + 1) as f64 * delta <= w {
        n += 1;
    }
    while n > 0 && n as f64 * delta > w {
        n -= 1;
    }
    n
}

/// Enumerates grid points `(i·Δ, j·Δ)` at least `d_min` from every aperture
/// vertex. The vertices themselves are excluded automatically (distance 0);
/// admissibility compares squared distances against the slacked spacing
/// threshold, so a candidate exactly `d_min` from a vertex is kept even when
/// binary rounding puts its computed distance a few ulps short.
pub fn generate_candidates(config: &PlacementConfig) -> Result<CandidateSet, PlacementError> {
    let delta = config.grid_spacing();
    let threshold = spacing_threshold_sq(config.d_min());
    let corners = config.aperture().corners();
    let nx = grid_steps(config.aperture().wx(), delta);
    let ny = grid_steps(config.aperture().wy(), delta);
    let mut points = Vec::with_capacity((nx + 1) * (ny + 1));
    for i in 0..=nx {
        let x = i as f64 * delta;
        for j in 0..=ny {
            let y = j as f64 * delta;
            let p = Point::new(x, y);
            if corners.iter().all(|&c| p.distance_sq(c) >= threshold) {
                points.push(p);
            }
        }
    }
    if points.is_empty() {
        return Err(PlacementError::EmptyCandidateSet { d_min: config.d_min() });
    }
    Ok(CandidateSet { points })
}

/// The regularizer weight actually used in the greedy score:
/// `β = β₀ · det L(vertices) / area`.
pub fn beta_from_beta0(beta0: f64, aperture: Aperture) -> f64 {
    let det = ScatterAccumulator::from_points(&aperture.corners())
        .det()
        .expect("four vertices are never empty");
    beta0 * det / aperture.area()
}

/// One step of the greedy search, for inspection and testing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreedyStage {
    /// The candidate the stage committed to.
    pub chosen: Point,
    /// Its score `det + β · min_dist²`.
    pub score: f64,
    /// Inertia determinant of the layout including `chosen`.
    pub det_after: f64,
    /// Squared distance from `chosen` to its nearest already-selected port.
    pub min_dist_sq: f64,
    /// Feasible candidates scored at this stage.
    pub candidates_evaluated: usize,
}

/// Result of the greedy search with its full stage-by-stage trace.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedySelection {
    pub layout: PortLayout,
    /// The resolved regularizer weight β (not β₀).
    pub beta: f64,
    pub stages: Vec<GreedyStage>,
}

/// Runs the greedy search and returns just the layout.
pub fn greedy_select(config: &PlacementConfig) -> Result<PortLayout, PlacementError> {
    greedy_select_detailed(config).map(|s| s.layout)
}

/// Runs the greedy search, keeping per-stage diagnostics.
///
/// Stages score candidates in parallel; the argmax reduction is
/// order-independent (ties break toward the earliest candidate in scan
/// order), so the outcome is identical for any thread count.
pub fn greedy_select_detailed(config: &PlacementConfig) -> Result<GreedySelection, PlacementError> {
    let aperture = config.aperture();
    let beta = beta_from_beta0(config.beta0(), aperture);
    let mut selected = aperture.corners().to_vec();
    let mut acc = ScatterAccumulator::from_points(&selected);
    let mut stages = Vec::with_capacity(config.m() - 4);

    let mut candidates = if config.m() > 4 {
        generate_candidates(config)?.points
    } else {
        Vec::new()
    };
    let threshold = spacing_threshold_sq(config.d_min());

    for stage in 0..config.m() - 4 {
        // Admissibility relative to the four vertices was baked into the
        // candidate set; each stage only has to drop points that conflict
        // with the port chosen in the previous stage.
        if let Some(&last) = selected.last() {
            if selected.len() > 4 {
                candidates.retain(|p| p.distance_sq(last) >= threshold);
            }
        }
        if candidates.is_empty() {
            return Err(PlacementError::InfeasibleStage { stage, selected: selected.len() });
        }

        let scored = |p: Point| -> (f64, f64, f64) {
            let det = acc.add(p).det().expect("accumulator holds at least five points");
            let min_d2 = selected
                .iter()
                .map(|s| p.distance_sq(*s))
                .fold(f64::INFINITY, f64::min);
            (det + beta * min_d2, det, min_d2)
        };
        let best = candidates
            .par_iter()
            .enumerate()
            .map(|(idx, &p)| (scored(p), idx))
            .reduce(
                || ((f64::NEG_INFINITY, 0.0, 0.0), usize::MAX),
                |a, b| {
                    if b.0 .0 > a.0 .0 || (b.0 .0 == a.0 .0 && b.1 < a.1) {
                        b
                    } else {
                        a
                    }
                },
            );
        let ((score, det_after, min_dist_sq), idx) = best;

        let chosen = candidates.remove(idx);
        acc = acc.add(chosen);
        selected.push(chosen);
        stages.push(GreedyStage {
            chosen,
            score,
            det_after,
            min_dist_sq,
            candidates_evaluated: candidates.len() + 1,
        });
    }

    let layout = PortLayout::with_min_spacing(aperture, selected, config.d_min())?;
    Ok(GreedySelection { layout, beta, stages })
}

/// Near-square separable grid with `m` ports: the four vertices plus grid
/// nodes, dropping surplus nodes closest to the aperture center first
/// (ties: smallest x, then smallest y; vertices are never dropped).
pub fn uniform_grid_baseline(m: usize, aperture: Aperture) -> Result<PortLayout, PlacementError> {
    if m < 4 {
        return Err(PlacementError::InvalidPortCount { m });
    }
    let aspect = aperture.wx() / aperture.wy();
    // The 1e-9 back-off keeps ceil() from overshooting when the square root
    // lands on an integer up to rounding (e.g. m = 25 on a square aperture).
    let mx = (((m as f64 * aspect).sqrt() - 1e-9).ceil() as usize).max(2);
    let my = (m.div_ceil(mx)).max(2);

    let coord = |index: usize, count: usize, w: f64| -> f64 {
        if index == count - 1 {
            w
        } else {
            index as f64 * w / (count - 1) as f64
        }
    };
    let mut nodes = Vec::with_capacity(mx * my);
    for i in 0..mx {
        let x = coord(i, mx, aperture.wx());
        for j in 0..my {
            let y = coord(j, my, aperture.wy());
            let is_vertex = (i == 0 || i == mx - 1) && (j == 0 || j == my - 1);
            nodes.push((Point::new(x, y), is_vertex));
        }
    }

    let excess = mx * my - m;
    if excess > 0 {
        let (cx, cy) = (aperture.wx() / 2.0, aperture.wy() / 2.0);
        let mut removable: Vec<Point> =
            nodes.iter().filter(|(_, v)| !v).map(|(p, _)| *p).collect();
        removable.sort_by(|a, b| {
            let da = (a.x - cx) * (a.x - cx) + (a.y - cy) * (a.y - cy);
            let db = (b.x - cx) * (b.x - cx) + (b.y - cy) * (b.y - cy);
            da.partial_cmp(&db)
                .unwrap()
                .then(a.x.partial_cmp(&b.x).unwrap())
                .then(a.y.partial_cmp(&b.y).unwrap())
        });
        let drop: Vec<Point> = removable.into_iter().take(excess).collect();
        nodes.retain(|(p, _)| !drop.contains(p));
    }

    let free: Vec<Point> = nodes.iter().filter(|(_, v)| !v).map(|(p, _)| *p).collect();
    Ok(PortLayout::cornered(aperture, free)?)
}

/// The four vertices plus `m − 4` ports drawn uniformly over the aperture by
/// rejection against the spacing constraint. A single counter-based RNG
/// stream drives all draws, so results depend only on `seed`.
pub fn random_baseline(
    m: usize,
    aperture: Aperture,
    d_min: f64,
    seed: u64,
) -> Result<PortLayout, PlacementError> {
    if m < 4 {
        return Err(PlacementError::InvalidPortCount { m });
    }
    if !(d_min.is_finite() && d_min >= 0.0) {
        return Err(PlacementError::InvalidGrid { delta: d_min, d_min });
    }
    let threshold = spacing_threshold_sq(d_min);
    let mut rng = unit_rng(seed, 0);
    let mut placed = aperture.corners().to_vec();
    for port_index in 4..m {
        let mut attempts = 0;
        loop {
            if attempts == RETRY_BUDGET {
                return Err(PlacementError::RetryBudgetExhausted { port_index, attempts });
            }
            attempts += 1;
            let p = Point::new(
                rng.random::<f64>() * aperture.wx(),
                rng.random::<f64>() * aperture.wy(),
            );
            if placed.iter().all(|q| p.distance_sq(*q) >= threshold) {
                placed.push(p);
                break;
            }
        }
    }
    Ok(PortLayout::with_min_spacing(aperture, placed, d_min)?)
}

/// Ports strictly farther than `margin` from every aperture edge.
pub fn count_interior_ports(layout: &PortLayout, margin: f64) -> usize {
    let (wx, wy) = (layout.aperture().wx(), layout.aperture().wy());
    layout
        .positions()
        .iter()
        .filter(|p| p.x > margin && p.x < wx - margin && p.y > margin && p.y < wy - margin)
        .count()
}

//! Numerical toolkit for finite-aperture planar fluid antenna arrays.
//!
//! A fluid antenna array places `M` movable ports inside a rectangular
//! aperture `[0, Wx] × [0, Wy]` (all lengths in wavelengths). This crate
//! covers the geometry-driven questions that come up when designing such
//! an array:
//!
//! - [`spacing`] — statistics of the minimum inter-port distance when ports
//!   are dropped uniformly at random (Rayleigh-type law, exact 1-D law,
//!   seeded Monte Carlo validation, spacing guidelines).
//! - [`geometry`] — port layouts, the azimuth-rotated second-moment
//!   ("inertia") matrix that controls direction-finding accuracy, and an
//!   O(1) incremental accumulator for its determinant.
//! - [`crb`] — closed-form Cramér-Rao bounds on elevation/azimuth estimates
//!   plus two independent numeric oracles for cross-checking them.
//! - [`placement`] — a regularized greedy port-placement optimizer with
//!   uniform-grid and random baselines.
//! - [`beam`] — steered array-factor maps over the direction-cosine plane
//!   and peak-sidelobe-level measurement.
//! - [`experiments`] — batch experiment runners with a JSON config, seeded
//!   determinism, and CSV/JSON outputs (also exposed through the `planar-faa`
//!   binary).
//!
//! # Example
//!
//! ```
//! use planar_faa::geometry::Aperture;
//! use planar_faa::placement::{greedy_select, PlacementConfig};
//! use planar_faa::crb::{crb_closed_form, ObservationSpec, SourceDirection};
//!
//! let aperture = Aperture::new(2.0, 2.0).unwrap();
//! let cfg = PlacementConfig::new(25, aperture, 0.1, 0.2, 0.0).unwrap();
//! let layout = greedy_select(&cfg).unwrap();
//!
//! let dir = SourceDirection::from_degrees(45.0, 30.0).unwrap();
//! let obs = ObservationSpec::from_snr_db(100, 10.0).unwrap();
//! let bound = crb_closed_form(&layout, &dir, &obs).unwrap();
//! assert!(bound.crb_theta > 0.0);
//! ```
//!
//! Determinism is a design requirement throughout: every randomized routine
//! takes an explicit seed, derives one RNG stream per unit of work (see
//! [`seeding`]), and produces bit-identical results regardless of how many
//! rayon worker threads happen to run it.

pub mod beam;
pub mod crb;
pub mod experiments;
pub mod geometry;
pub mod placement;
pub mod seeding;
pub mod spacing;

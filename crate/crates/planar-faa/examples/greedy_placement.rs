//! Greedy port placement: stage-by-stage trace, the resolved regularizer
//! weight, and how the result compares against uniform-grid and random
//! baselines.
//!
//! Run with `cargo run --release --example greedy_placement`.

use planar_faa::geometry::{Aperture, PortLayout};
use planar_faa::placement::{
    count_interior_ports, greedy_select_detailed, random_baseline, uniform_grid_baseline,
    PlacementConfig,
};
use planar_faa::seeding::derive_seed;

fn main() {
    let aperture = Aperture::new(2.0, 2.0).expect("valid aperture");
    let m = 25;
    let config = PlacementConfig::new(m, aperture, 0.1, 0.2, 0.8).expect("valid config");
    let selection = greedy_select_detailed(&config).expect("feasible placement");
    let det = |layout: &PortLayout| layout.inertia_matrix(0.0).det();

    println!(
        "greedy placement of {m} ports, grid 0.1, spacing 0.2, beta0 = 0.8 (beta = {:.2})",
        selection.beta
    );
    println!("\n stage   chosen            score        det       min dist   candidates");
    for (k, stage) in selection.stages.iter().enumerate() {
        println!(
            "  {k:>3}   ({:>4.2}, {:>4.2})   {:>9.3}   {:>8.3}   {:>8.3}   {:>6}",
            stage.chosen.x,
            stage.chosen.y,
            stage.score,
            stage.det_after,
            stage.min_dist_sq.sqrt(),
            stage.candidates_evaluated,
        );
    }

    println!("\nfinal layout:");
    for p in selection.layout.positions() {
        print!("({:.1}, {:.1}) ", p.x, p.y);
    }
    println!();
    println!(
        "det = {:.4}, interior ports (margin 0.1) = {}, min pairwise distance = {:.4}",
        det(&selection.layout),
        count_interior_ports(&selection.layout, 0.1),
        selection.layout.min_pairwise_distance().expect("more than one port"),
    );

    let uniform = uniform_grid_baseline(m, aperture).expect("m fits a grid");
    println!("\nuniform 5x5 grid baseline: det = {:.4}", det(&uniform));

    let best_random = (0..100u64)
        .map(|t| det(&random_baseline(m, aperture, 0.2, derive_seed(1, 2, t)).expect("feasible")))
        .fold(f64::NEG_INFINITY, f64::max);
    println!("best of 100 random baselines: det = {best_random:.4}");
}

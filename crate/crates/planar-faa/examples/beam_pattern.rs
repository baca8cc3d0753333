//! Beam patterns and peak sidelobe level: how the regularizer weight trades
//! single-lobe cleanliness against raw determinant, shown on the same
//! steering direction.
//!
//! Run with `cargo run --release --example beam_pattern`.

use planar_faa::beam::{analyze_psl, array_factor, beam_map};
use planar_faa::crb::SourceDirection;
use planar_faa::geometry::Aperture;
use planar_faa::placement::{greedy_select, PlacementConfig};

fn main() {
    let aperture = Aperture::new(2.0, 2.0).expect("valid aperture");
    let dir = SourceDirection::from_degrees(45.0, 30.0).expect("angles in range");

    println!("steer: u0 = {:.4}, v0 = {:.4}", dir.u(), dir.v());
    println!("\n beta0      det     PSL (dB)   main-lobe cells");
    for beta0 in [0.0, 5.0, 10.0, 100.0] {
        let config = PlacementConfig::new(25, aperture, 0.1, 0.2, beta0).expect("valid config");
        let layout = greedy_select(&config).expect("feasible placement");
        let map = beam_map(&layout, &dir, 301).expect("grid large enough");
        let psl = analyze_psl(&map).expect("sidelobes exist");
        println!(
            " {beta0:>5}   {:>8.3}   {:>8.3}   {:>8}",
            layout.inertia_matrix(0.0).det(),
            psl.psl_db,
            psl.main_lobe_cells,
        );
    }

    println!("\npattern cut along u at v = v0 (beta0 = 0 layout):");
    let config = PlacementConfig::new(25, aperture, 0.1, 0.2, 0.0).expect("valid config");
    let layout = greedy_select(&config).expect("feasible placement");
    let v0 = dir.v();
    for k in 0..=20 {
        let u = -1.0 + 2.0 * k as f64 / 20.0;
        if u * u + v0 * v0 > 1.0 {
            continue;
        }
        let power = array_factor(&layout, u, v0, dir.u(), v0);
        let db = 10.0 * power.log10().max(-4.0);
        let bar = "#".repeat(((db + 40.0) / 2.0).max(0.0) as usize);
        println!("  u = {u:>5.2}: {db:>7.2} dB {bar}");
    }
}
